//! Replaces one slot of the solver source, compiles the result and runs it
//! on a formula through the solver protocol.

use std::process::Command;

use satforge::materializer::{extract_region, splice_region, Materializer, SolverTemplate};
use satforge::slots::{HeuristicConfiguration, Provenance, SlotName};

const RESTART_CONDITION: &str = "fn restart_condition(s: &Solver) -> bool {
    s.stats.conflicts_since_restart >= 50
}
";

fn main() -> anyhow::Result<()> {
    let template = SolverTemplate::builtin();
    println!("current body:\n{}", extract_region(&template, SlotName::RestartCondition)?);

    let spliced = splice_region(&template, SlotName::RestartCondition, RESTART_CONDITION)?;
    assert_eq!(extract_region(&spliced, SlotName::RestartCondition)?, RESTART_CONDITION);

    let workspace = std::env::temp_dir().join("satforge-example-ws");
    let config = HeuristicConfiguration::from_template(&template).with_body(
        SlotName::RestartCondition,
        RESTART_CONDITION,
        Provenance::Proposed(0),
    )?;
    let candidate = Materializer::new(&workspace, template).compile_candidate(&config)?;
    println!("fingerprint {} status {:?}", candidate.fingerprint, candidate.status);

    if !candidate.is_compiled() {
        anyhow::bail!("compile failed: {:?}", candidate.status);
    }
    let binary = candidate.binary.expect("compiled candidates have a binary");
    let cnf = workspace.join("php4.cnf");
    std::fs::write(&cnf, satforge::cnf::serialize_dimacs(&satforge::generators::gen_pigeonhole(4)?))?;
    let out = Command::new(binary).arg(&cnf).args(["--timeout", "5"]).output()?;
    print!("{}", String::from_utf8_lossy(&out.stdout));
    println!("exit code {:?}", out.status.code());
    Ok(())
}
