//! Writes a small mixed benchmark set with a manifest of expected answers.
//!
//!   cargo run --example generate_instances -- /tmp/bench

use std::path::PathBuf;

use satforge::generators::{read_manifest, write_instances, GeneratorSpec};

fn main() -> anyhow::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "instances".into()));
    let mut specs: Vec<GeneratorSpec> = (0..5)
        .map(|seed| GeneratorSpec::RandomKsat { n: 100, m: 426, k: 3, seed })
        .collect();
    specs.extend((4..=7).map(|holes| GeneratorSpec::Pigeonhole { holes }));
    specs.extend((3..=8).map(|k| GeneratorSpec::Langford { k }));

    write_instances(&dir, &specs)?;
    for entry in read_manifest(&dir)? {
        println!("{:28} {:?}", entry.file, entry.expected);
    }
    Ok(())
}
