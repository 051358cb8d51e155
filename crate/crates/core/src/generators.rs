//! Benchmark families with known or cheaply checkable status.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cnf::{serialize_dimacs, Clause, CnfFormula, Literal};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("clause width {k} exceeds variable count {n}")]
    WidthExceedsVars { k: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpectedStatus {
    Sat,
    Unsat,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GeneratorSpec {
    RandomKsat { n: usize, m: usize, k: usize, seed: u64 },
    Pigeonhole { holes: usize },
    Langford { k: usize },
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<CnfFormula, GeneratorError> {
        match *self {
            GeneratorSpec::RandomKsat { n, m, k, seed } => gen_random_ksat(n, m, k, seed),
            GeneratorSpec::Pigeonhole { holes } => gen_pigeonhole(holes),
            GeneratorSpec::Langford { k } => gen_langford(k),
        }
    }

    pub fn expected_status(&self) -> ExpectedStatus {
        match *self {
            GeneratorSpec::RandomKsat { .. } => ExpectedStatus::Unknown,
            GeneratorSpec::Pigeonhole { .. } => ExpectedStatus::Unsat,
            GeneratorSpec::Langford { k } => {
                if langford_exists(k) {
                    ExpectedStatus::Sat
                } else {
                    ExpectedStatus::Unsat
                }
            }
        }
    }

    pub fn file_stem(&self) -> String {
        match *self {
            GeneratorSpec::RandomKsat { n, m, k, seed } => format!("rand{k}_n{n}_m{m}_s{seed}"),
            GeneratorSpec::Pigeonhole { holes } => format!("php_{holes}"),
            GeneratorSpec::Langford { k } => format!("langford_{k}"),
        }
    }
}

/// Langford pairings of order k exist exactly when k ≡ 0 or 3 (mod 4).
pub fn langford_exists(k: usize) -> bool {
    k % 4 == 0 || k % 4 == 3
}

fn lit(v: usize, positive: bool) -> Literal {
    if positive {
        Literal::positive(v as u32)
    } else {
        Literal::negative(v as u32)
    }
}

fn clause(lits: impl IntoIterator<Item = Literal>) -> Clause {
    Clause::new(lits).expect("generators never emit tautologies")
}

/// `m` clauses over `n` variables, each with `k` distinct variables and
/// uniformly random signs.
pub fn gen_random_ksat(n: usize, m: usize, k: usize, seed: u64) -> Result<CnfFormula, GeneratorError> {
    if k == 0 || m == 0 {
        return Err(GeneratorError::InvalidParameter("k and m must be at least 1".into()));
    }
    if k > n {
        return Err(GeneratorError::WidthExceedsVars { k, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..m)
        .map(|_| {
            let vars = sample(&mut rng, n, k);
            let lits: Vec<Literal> = vars
                .into_iter()
                .map(|v| lit(v + 1, rng.random::<bool>()))
                .collect();
            clause(lits)
        })
        .collect();
    Ok(CnfFormula::new(n, clauses).expect("variables in range"))
}

/// Pigeon p in hole h (both 1-based) is variable (p-1)*holes + h.
pub fn pigeonhole_var(holes: usize, pigeon: usize, hole: usize) -> usize {
    (pigeon - 1) * holes + hole
}

/// `holes + 1` pigeons into `holes` holes: always unsatisfiable.
pub fn gen_pigeonhole(holes: usize) -> Result<CnfFormula, GeneratorError> {
    if holes == 0 {
        return Err(GeneratorError::InvalidParameter("holes must be at least 1".into()));
    }
    let pigeons = holes + 1;
    let mut clauses = Vec::new();
    for p in 1..=pigeons {
        clauses.push(clause((1..=holes).map(|h| lit(pigeonhole_var(holes, p, h), true))));
    }
    for h in 1..=holes {
        for p in 1..=pigeons {
            for q in p + 1..=pigeons {
                clauses.push(clause([
                    lit(pigeonhole_var(holes, p, h), false),
                    lit(pigeonhole_var(holes, q, h), false),
                ]));
            }
        }
    }
    Ok(CnfFormula::new(pigeons * holes, clauses).expect("variables in range"))
}

/// Variables of the Langford encoding: `(number, start slot)` pairs in
/// variable order. Number i (1-based) occupies slots s and s+i+1 (0-based).
pub fn langford_placements(k: usize) -> Vec<(usize, usize)> {
    let len = 2 * k;
    let mut out = Vec::new();
    for i in 1..=k {
        for s in 0..len {
            if s + i + 1 < len {
                out.push((i, s));
            }
        }
    }
    out
}

/// Direct positional encoding of the Langford pairing problem L(2, k).
pub fn gen_langford(k: usize) -> Result<CnfFormula, GeneratorError> {
    if k == 0 {
        return Err(GeneratorError::InvalidParameter("k must be at least 1".into()));
    }
    let placements = langford_placements(k);
    let len = 2 * k;
    let mut clauses = Vec::new();

    for i in 1..=k {
        let vars: Vec<usize> = placements
            .iter()
            .enumerate()
            .filter(|(_, &(n, _))| n == i)
            .map(|(v, _)| v + 1)
            .collect();
        if vars.is_empty() {
            clauses.push(Clause::new([]).unwrap());
            continue;
        }
        clauses.push(clause(vars.iter().map(|&v| lit(v, true))));
        for a in 0..vars.len() {
            for b in a + 1..vars.len() {
                clauses.push(clause([lit(vars[a], false), lit(vars[b], false)]));
            }
        }
    }
    for slot in 0..len {
        let occupants: Vec<usize> = placements
            .iter()
            .enumerate()
            .filter(|(_, &(i, s))| s == slot || s + i + 1 == slot)
            .map(|(v, _)| v + 1)
            .collect();
        for a in 0..occupants.len() {
            for b in a + 1..occupants.len() {
                clauses.push(clause([lit(occupants[a], false), lit(occupants[b], false)]));
            }
        }
    }
    Ok(CnfFormula::new(placements.len(), clauses).expect("variables in range"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    #[serde(flatten)]
    pub spec: GeneratorSpec,
    pub expected: ExpectedStatus,
}

/// Writes one DIMACS file per spec into `dir` and records them in
/// `dir/manifest.json`, keeping entries for other files already listed.
pub fn write_instances(dir: &Path, specs: &[GeneratorSpec]) -> anyhow::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut manifest = if dir.join("manifest.json").exists() {
        read_manifest(dir)?
    } else {
        Vec::new()
    };
    let mut paths = Vec::new();
    for spec in specs {
        let formula = spec.generate()?;
        let file = format!("{}.cnf", spec.file_stem());
        let path = dir.join(&file);
        fs::write(&path, serialize_dimacs(&formula))?;
        manifest.retain(|e| e.file != file);
        manifest.push(ManifestEntry {
            file,
            spec: spec.clone(),
            expected: spec.expected_status(),
        });
        paths.push(path);
    }
    manifest.sort_by(|a, b| a.file.cmp(&b.file));
    fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)?)?;
    Ok(paths)
}

pub fn read_manifest(dir: &Path) -> io::Result<Vec<ManifestEntry>> {
    let text = fs::read_to_string(dir.join("manifest.json"))?;
    serde_json::from_str(&text).map_err(io::Error::other)
}
