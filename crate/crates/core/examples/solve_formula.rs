//! Parses a DIMACS formula and solves it in-process with the baseline
//! heuristics, then with one slot swapped for a catalog variant.

use satforge::cnf::parse_dimacs;
use satforge::slots::{baseline_hooks, hooks_with_variant, SlotName};
use satforge::solver::{solve, Outcome, SolveLimits};

const FORMULA: &str = "c three pigeons, two holes
p cnf 6 9
1 2 0
3 4 0
5 6 0
-1 -3 0
-1 -5 0
-3 -5 0
-2 -4 0
-2 -6 0
-4 -6 0
";

fn main() -> anyhow::Result<()> {
    let formula = parse_dimacs(FORMULA.as_bytes())?;
    let limits = SolveLimits::new(5.0)?;

    let r = solve(&formula, baseline_hooks(), &limits);
    println!("baseline: {:?} after {} conflicts", r.outcome, r.stats.conflicts);

    let hooks = hooks_with_variant(SlotName::RestartCondition, "fixed_100")?;
    let r = solve(&formula, hooks, &limits);
    println!("restart_condition=fixed_100: {:?}", r.outcome);

    let sat = parse_dimacs(b"p cnf 3 2\n1 -2 0\n2 3 0\n")?;
    if let Outcome::Sat(model) = solve(&sat, baseline_hooks(), &limits).outcome {
        println!("model: {:?}", model.to_literals());
    }
    Ok(())
}
