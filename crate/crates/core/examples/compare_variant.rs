//! Runs the baseline and one catalog variant in-process over generated
//! random 3-SAT instances and prints conflicts and times side by side.
//!
//!   cargo run --release --example compare_variant -- reduce_condition dynamic_threshold 200 20 [first_seed]

use std::time::Instant;

use satforge::generators::gen_random_ksat;
use satforge::slots::{baseline_hooks, hooks_with_variant, SlotName};
use satforge::solver::{solve, SolveLimits};

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let slot: SlotName = args.first().map_or("reduce_condition", String::as_str).parse()?;
    let variant = args.get(1).map_or("dynamic_threshold", String::as_str);
    let n: usize = args.get(2).map_or(Ok(200), |s| s.parse())?;
    let count: u64 = args.get(3).map_or(Ok(10), |s| s.parse())?;
    let first: u64 = args.get(4).map_or(Ok(0), |s| s.parse())?;
    let m = (n as f64 * 4.26).round() as usize;
    let limits = SolveLimits::new(10.0)?;

    println!("seed  base_conflicts  base_s  var_conflicts  var_s");
    for seed in first..first + count {
        let f = gen_random_ksat(n, m, 3, seed)?;
        let t = Instant::now();
        let a = solve(&f, baseline_hooks(), &limits);
        let ta = t.elapsed().as_secs_f64();
        let t = Instant::now();
        let b = solve(&f, hooks_with_variant(slot, variant)?, &limits);
        let tb = t.elapsed().as_secs_f64();
        println!(
            "{seed:4}  {:14}  {ta:6.3}  {:13}  {tb:5.3}",
            a.stats.conflicts, b.stats.conflicts
        );
    }
    Ok(())
}
