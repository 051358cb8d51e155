//! A greedy hill-climbing campaign with the offline catalog proposer: each
//! iteration rewrites one slot, in slot order.

use satforge::config::Strategy;
use satforge::evaluator::load_instances;
use satforge::generators::{write_instances, GeneratorSpec};
use satforge::materializer::{Materializer, SolverTemplate};
use satforge::proposer::{MockProposer, Proposer};
use satforge::search::{run_search, SearchParams};
use satforge::slots::Catalog;

fn main() -> anyhow::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let root = std::env::temp_dir().join("satforge-example-ghc");
    let specs: Vec<GeneratorSpec> = (0..6)
        .map(|seed| GeneratorSpec::RandomKsat { n: 120, m: 511, k: 3, seed })
        .collect();
    let instances = load_instances(&write_instances(&root.join("instances"), &specs)?)?;

    let template = SolverTemplate::builtin();
    let materializer = Materializer::new(root.join("ws"), template.clone());
    let mut proposer = Proposer::Mock(MockProposer::new(Catalog::builtin(), 1));
    let params = SearchParams {
        strategy: Strategy::Ghc,
        budget: 9,
        timeout: 5.0,
        parallelism: 2,
        seed: 1,
    };
    let state = run_search(&params, &instances, &template, &materializer, &mut proposer, None)?;
    for r in &state.history {
        println!(
            "{:2} {:26} candidate {:>8} best {:.3}{}",
            r.i,
            r.plan.slots[0].as_str(),
            r.candidate_par2().map_or("-".into(), |p| format!("{p:.3}")),
            r.best_par2,
            if r.accepted { "  accepted" } else { "" }
        );
    }
    let summary = state.summary(Strategy::Ghc, 9);
    println!("PAR-2 {:.3} -> {:.3}", summary.initial_par2, summary.final_par2);
    Ok(())
}
