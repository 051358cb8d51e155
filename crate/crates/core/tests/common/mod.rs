//! Shared oracles and test doubles. Nothing here uses the crate's solver.

#![allow(dead_code)]

use std::fs;
use std::os::unix::fs::PermissionsExt;
use std::path::{Path, PathBuf};

use satforge::cnf::CnfFormula;
use satforge::materializer::{
    fingerprint, CandidateBuilder, CandidateSolver, CompileStatus, MaterializeError, SolverTemplate,
};
use satforge::search::{read_log, IterationRecord};
use satforge::slots::{Catalog, HeuristicConfiguration, SlotName};

/// Plain DPLL with unit propagation over DIMACS clauses. Returns a model
/// (index 0 unused) or `None` when unsatisfiable.
pub fn dpll(num_vars: usize, clauses: &[Vec<i32>]) -> Option<Vec<bool>> {
    let mut assign: Vec<Option<bool>> = vec![None; num_vars + 1];
    if dpll_rec(clauses, &mut assign) {
        Some(assign.iter().map(|v| v.unwrap_or(false)).collect())
    } else {
        None
    }
}

fn lit_value(assign: &[Option<bool>], lit: i32) -> Option<bool> {
    assign[lit.unsigned_abs() as usize].map(|v| v == (lit > 0))
}

fn dpll_rec(clauses: &[Vec<i32>], assign: &mut Vec<Option<bool>>) -> bool {
    let mut trail = Vec::new();
    loop {
        let mut unit = None;
        for c in clauses {
            let mut unassigned = None;
            let mut count = 0;
            let mut sat = false;
            for &l in c {
                match lit_value(assign, l) {
                    Some(true) => {
                        sat = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        count += 1;
                        unassigned = Some(l);
                    }
                }
            }
            if sat {
                continue;
            }
            if count == 0 {
                for v in trail {
                    assign[v] = None;
                }
                return false;
            }
            if count == 1 {
                unit = unassigned;
                break;
            }
        }
        match unit {
            Some(l) => {
                let v = l.unsigned_abs() as usize;
                assign[v] = Some(l > 0);
                trail.push(v);
            }
            None => break,
        }
    }
    let branch = (1..assign.len()).find(|&v| assign[v].is_none());
    let Some(v) = branch else {
        return true;
    };
    for value in [true, false] {
        assign[v] = Some(value);
        if dpll_rec(clauses, assign) {
            return true;
        }
    }
    assign[v] = None;
    for v in trail {
        assign[v] = None;
    }
    false
}

/// Checks a model without any library code.
pub fn model_satisfies(clauses: &[Vec<i32>], model: &[bool]) -> bool {
    clauses.iter().all(|c| {
        c.iter()
            .any(|&l| model.get(l.unsigned_abs() as usize).copied().unwrap_or(false) == (l > 0))
    })
}

pub fn formula_clauses(f: &CnfFormula) -> Vec<Vec<i32>> {
    f.clauses()
        .iter()
        .map(|c| c.literals().iter().map(|l| l.value()).collect())
        .collect()
}

/// Whether the numbers 1..=k, each twice, fit in a row of 2k so the two
/// copies of i have exactly i numbers between them. Plain backtracking.
pub fn langford_brute(k: usize) -> bool {
    fn place(row: &mut Vec<usize>, i: usize) -> bool {
        if i == 0 {
            return true;
        }
        let len = row.len();
        for s in 0..len {
            let t = s + i + 1;
            if t < len && row[s] == 0 && row[t] == 0 {
                row[s] = i;
                row[t] = i;
                if place(row, i - 1) {
                    return true;
                }
                row[s] = 0;
                row[t] = 0;
            }
        }
        false
    }
    let mut row = vec![0; 2 * k];
    place(&mut row, k)
}

/// Writes an executable shell script.
pub fn write_script(path: &Path, body: &str) -> PathBuf {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).unwrap();
    }
    fs::write(path, format!("#!/bin/sh\n{body}")).unwrap();
    fs::set_permissions(path, fs::Permissions::from_mode(0o755)).unwrap();
    path.to_path_buf()
}

/// How a script double answers when its configuration carries a tagged body.
#[derive(Clone, Debug)]
pub enum Behaviour {
    /// `exec satforge solve` with the catalog variants the bodies match.
    Real,
    /// Instant `s SATISFIABLE` with every variable true.
    WrongModel,
    /// Instant `s UNSATISFIABLE`.
    ClaimUnsat,
    /// Compilation "fails".
    Broken,
}

/// Builds candidates as shell scripts instead of compiling them. Bodies
/// equal to a catalog variant run the real engine with that variant bound
/// in-process; bodies containing a tag from `tags` get that behaviour.
pub struct ScriptBuilder {
    pub workspace: PathBuf,
    pub template: SolverTemplate,
    pub catalog: Catalog,
    pub tags: Vec<(String, Behaviour)>,
}

pub fn satforge_bin() -> &'static str {
    env!("CARGO_BIN_EXE_satforge")
}

impl ScriptBuilder {
    pub fn new(workspace: &Path) -> Self {
        ScriptBuilder {
            workspace: workspace.to_path_buf(),
            template: SolverTemplate::builtin(),
            catalog: Catalog::builtin(),
            tags: Vec::new(),
        }
    }

    pub fn tag(mut self, tag: &str, behaviour: Behaviour) -> Self {
        self.tags.push((tag.to_string(), behaviour));
        self
    }

    fn behaviour(&self, config: &HeuristicConfiguration) -> Behaviour {
        for (tag, b) in &self.tags {
            if config.bodies.values().any(|body| body.contains(tag.as_str())) {
                return b.clone();
            }
        }
        Behaviour::Real
    }
}

impl CandidateBuilder for ScriptBuilder {
    fn build(&self, config: &HeuristicConfiguration) -> Result<CandidateSolver, MaterializeError> {
        let source = self.template.apply(config)?.program_source();
        let fp = fingerprint(&source);
        let dir = self.workspace.join(&fp);
        let binary = dir.join("binary");
        let mut candidate = CandidateSolver::from_binary(&binary, config.clone());
        candidate.fingerprint = fp;
        candidate.source = source;

        let baseline = HeuristicConfiguration::from_template(&self.template);
        let script = match self.behaviour(config) {
            Behaviour::Broken => {
                candidate.status = CompileStatus::CompileFailed {
                    log: "error: tagged as broken".into(),
                };
                candidate.binary = None;
                return Ok(candidate);
            }
            Behaviour::WrongModel => {
                "n=$(grep '^p cnf' \"$1\" | awk '{print $3}')\n\
                 printf 's SATISFIABLE\\nv'\n\
                 i=1; while [ $i -le $n ]; do printf ' %d' $i; i=$((i+1)); done\n\
                 printf ' 0\\n'\nexit 10\n"
                    .to_string()
            }
            Behaviour::ClaimUnsat => "echo 's UNSATISFIABLE'\nexit 20\n".to_string(),
            Behaviour::Real => {
                let mut args = String::new();
                for slot in SlotName::ALL {
                    let body = config.body(slot);
                    if body == baseline.body(slot) {
                        continue;
                    }
                    match self.catalog.variants(slot).iter().find(|v| v.body == body) {
                        Some(v) => args.push_str(&format!(" --variant {slot}={}", v.name)),
                        None => {
                            candidate.status = CompileStatus::CompileFailed {
                                log: format!("error: no catalog variant matches the {slot} body"),
                            };
                            candidate.binary = None;
                            return Ok(candidate);
                        }
                    }
                }
                format!("exec {} solve \"$1\" \"$2\" \"$3\"{args}\n", satforge_bin())
            }
        };
        write_script(&binary, &script);
        Ok(candidate)
    }
}

/// Checks a finished campaign directory: exactly `budget` records, indices
/// 0..budget, and monotone best fitness starting from the baseline.
pub fn check_log(dir: &Path, budget: usize) -> Vec<IterationRecord> {
    let records = read_log(&dir.join("log.jsonl")).unwrap();
    assert_eq!(records.len(), budget, "record count");
    for (k, r) in records.iter().enumerate() {
        assert_eq!(r.i, k);
    }
    records
}
