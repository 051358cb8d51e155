//! An evolutionary campaign driven by a config file, written to a campaign
//! directory that a second call resumes.

use std::fs;

use satforge::config::CampaignConfig;
use satforge::generators::{write_instances, GeneratorSpec};
use satforge::search::run_campaign;

fn main() -> anyhow::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let root = std::env::temp_dir().join("satforge-example-ea");
    let specs: Vec<GeneratorSpec> = (0..6)
        .map(|seed| GeneratorSpec::RandomKsat { n: 120, m: 511, k: 3, seed })
        .collect();
    write_instances(&root.join("bench"), &specs)?;
    fs::write(
        root.join("campaign.toml"),
        "strategy = \"ea\"\nbudget = 6\ntimeout = 5.0\ninstance_set = [\"bench\"]\nseed = 7\nparallelism = 2\n\n[proposer]\nbackend = \"mock\"\n",
    )?;

    let mut config = CampaignConfig::load(&root.join("campaign.toml"))?;
    let first = run_campaign(&config)?;
    println!("after {} iterations: best {:.3}", first.iteration, first.best_fitness());

    config.budget = 12;
    let resumed = run_campaign(&config)?;
    let summary = resumed.summary(config.strategy, config.budget);
    println!("after {} iterations: best {:.3}", resumed.iteration, resumed.best_fitness());
    for (slot, n) in summary.accepted_per_slot.iter().filter(|(_, n)| **n > 0) {
        println!("updated {slot} {n} time(s)");
    }
    println!("best source: {}", config.output_dir.join("best_source.rs").display());
    Ok(())
}
