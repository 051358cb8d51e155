//! Compiles the baseline, runs it over generated instances with a timeout
//! and prints per-instance penalized times and the PAR-2 score.

use satforge::evaluator::{evaluate_candidate, load_instances, par2, Answer, InstanceOutcome};
use satforge::generators::{write_instances, GeneratorSpec};
use satforge::materializer::{Materializer, SolverTemplate};
use satforge::slots::HeuristicConfiguration;

fn main() -> anyhow::Result<()> {
    // The scoring rule on its own: two answers and one timeout at T = 100.
    let scripted = [
        InstanceOutcome::scored("a", Answer::Sat, 80.0, 100.0),
        InstanceOutcome::scored("b", Answer::Sat, 120.0, 100.0),
        InstanceOutcome::scored("c", Answer::Unknown, 100.0, 100.0),
    ];
    println!("scripted PAR-2: {}", par2(&scripted)?);

    let root = std::env::temp_dir().join("satforge-example-bench");
    let specs = [
        GeneratorSpec::RandomKsat { n: 150, m: 639, k: 3, seed: 1 },
        GeneratorSpec::RandomKsat { n: 150, m: 639, k: 3, seed: 2 },
        GeneratorSpec::Pigeonhole { holes: 7 },
        GeneratorSpec::Pigeonhole { holes: 13 },
    ];
    let paths = write_instances(&root.join("instances"), &specs)?;
    let instances = load_instances(&paths)?;

    let template = SolverTemplate::builtin();
    let config = HeuristicConfiguration::from_template(&template);
    let candidate = Materializer::new(root.join("ws"), template).compile_candidate(&config)?;
    let result = evaluate_candidate(&candidate, &instances, 2.0, 2, None)?;
    for o in &result.outcomes {
        println!("{:60} {:?} t={:.3} tau={:.3}", o.instance, o.answer, o.t, o.tau);
    }
    println!("PAR-2 {:.3}, solved {}/{}", result.par2, result.solved, instances.len());
    Ok(())
}
