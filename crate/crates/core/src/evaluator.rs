//! Running candidate solvers over an instance set and scoring them by PAR-2:
//! the mean over instances of τ, where τ is the wall time for an answer
//! given within the timeout T and 2T for everything else.

use std::collections::HashMap;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cnf::{parse_dimacs, satisfies, Assignment, CnfError, CnfFormula};
use crate::materializer::CandidateSolver;
use crate::process::run_with_timeout;

/// Extra time a solver gets past T before it is killed.
pub const KILL_GRACE: Duration = Duration::from_secs(1);

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("PAR-2 of an empty outcome list")]
    Empty,
    #[error("reading instance {path}: {source}")]
    Unreadable { path: PathBuf, source: io::Error },
    #[error("parsing instance {path}: {source}")]
    Unparseable { path: PathBuf, source: CnfError },
    #[error("candidate {0} has no compiled binary")]
    NotCompiled(String),
    #[error("timeout must be positive")]
    BadTimeout,
    #[error("parallelism must be at least 1")]
    BadParallelism,
    #[error("spawning solver: {0}")]
    Spawn(io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Sat,
    Unsat,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verification {
    ModelOk,
    ModelBad,
    Unchecked,
    CrossCheckMismatch,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceOutcome {
    pub instance: String,
    pub answer: Answer,
    /// Wall-clock seconds.
    pub t: f64,
    /// Penalized seconds.
    pub tau: f64,
    pub verified: Verification,
    #[serde(default, skip_serializing_if = "is_false")]
    pub crashed: bool,
    #[serde(skip)]
    pub model: Option<Vec<i32>>,
}

/// τ for one run.
pub fn penalized_time(answer: Answer, t: f64, timeout: f64) -> f64 {
    if answer != Answer::Unknown && t <= timeout {
        t
    } else {
        2.0 * timeout
    }
}

impl InstanceOutcome {
    /// An outcome with τ derived from `t` and `timeout`; no model attached.
    pub fn scored(instance: impl Into<String>, answer: Answer, t: f64, timeout: f64) -> Self {
        let verified = if answer == Answer::Sat {
            Verification::ModelOk
        } else {
            Verification::Unchecked
        };
        InstanceOutcome {
            instance: instance.into(),
            answer,
            t,
            tau: penalized_time(answer, t, timeout),
            verified,
            crashed: false,
            model: None,
        }
    }

    /// Answered within the timeout and not contradicted by any check.
    pub fn is_solved(&self) -> bool {
        self.answer != Answer::Unknown
            && self.tau == self.t
            && matches!(self.verified, Verification::ModelOk | Verification::Unchecked)
    }

    pub fn poisons(&self) -> bool {
        self.crashed
            || matches!(
                self.verified,
                Verification::ModelBad | Verification::CrossCheckMismatch
            )
    }
}

pub fn par2(outcomes: &[InstanceOutcome]) -> Result<f64, EvalError> {
    if outcomes.is_empty() {
        return Err(EvalError::Empty);
    }
    Ok(outcomes.iter().map(|o| o.tau).sum::<f64>() / outcomes.len() as f64)
}

/// A benchmark file, parsed once so every run can be verified.
#[derive(Clone, Debug)]
pub struct Instance {
    pub id: String,
    pub path: PathBuf,
    pub formula: Arc<CnfFormula>,
}

impl Instance {
    pub fn load(path: &Path) -> Result<Self, EvalError> {
        let bytes = fs::read(path).map_err(|source| EvalError::Unreadable {
            path: path.to_path_buf(),
            source,
        })?;
        let formula = parse_dimacs(&bytes).map_err(|source| EvalError::Unparseable {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Instance {
            id: path.display().to_string(),
            path: path.to_path_buf(),
            formula: Arc::new(formula),
        })
    }
}

pub fn load_instances(paths: &[PathBuf]) -> Result<Vec<Instance>, EvalError> {
    paths.iter().map(|p| Instance::load(p)).collect()
}

/// `.cnf` files directly inside `dir`, sorted by name.
pub fn list_cnf_files(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "cnf"))
        .collect();
    files.sort();
    Ok(files)
}

/// Known answers by instance id, used to flag contradicting UNSAT claims.
pub type ReferenceMap = HashMap<String, Answer>;

struct ParsedOutput {
    answer: Option<Answer>,
    model: Vec<i32>,
    malformed: bool,
}

fn parse_protocol(stdout: &str) -> ParsedOutput {
    let mut out = ParsedOutput {
        answer: None,
        model: Vec::new(),
        malformed: false,
    };
    for line in stdout.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            let a = match rest.trim() {
                "SATISFIABLE" => Answer::Sat,
                "UNSATISFIABLE" => Answer::Unsat,
                "UNKNOWN" => Answer::Unknown,
                _ => {
                    out.malformed = true;
                    continue;
                }
            };
            if out.answer.replace(a).is_some() {
                out.malformed = true;
            }
        } else if let Some(rest) = line.strip_prefix("v ").or(line.strip_prefix("v\t")) {
            for tok in rest.split_whitespace() {
                match tok.parse::<i32>() {
                    Ok(0) => {}
                    Ok(l) => out.model.push(l),
                    Err(_) => out.malformed = true,
                }
            }
        }
    }
    out
}

fn verify_model(formula: &CnfFormula, model: &[i32]) -> Verification {
    let n = formula.num_vars();
    if model.iter().any(|l| l.unsigned_abs() as usize > n) {
        return Verification::ModelBad;
    }
    let mut a = Assignment::from_literals(n, model);
    for v in 1..=n as u32 {
        if a.get(v).is_none() {
            a.set(v, false);
        }
    }
    match satisfies(formula, &a) {
        Ok(true) => Verification::ModelOk,
        _ => Verification::ModelBad,
    }
}

fn expected_exit(answer: Answer) -> i32 {
    match answer {
        Answer::Sat => 10,
        Answer::Unsat => 20,
        Answer::Unknown => 0,
    }
}

/// Runs `binary <instance> --timeout T`, killing it at T plus a grace
/// second. Crashes and malformed output count as unknown with τ = 2T.
pub fn run_instance(
    binary: &Path,
    instance: &Instance,
    timeout: f64,
    reference: Option<&ReferenceMap>,
) -> Result<InstanceOutcome, EvalError> {
    if !(timeout > 0.0) {
        return Err(EvalError::BadTimeout);
    }
    let limit = Duration::from_secs_f64(timeout) + KILL_GRACE;
    let out = run_with_timeout(
        Command::new(binary)
            .arg(&instance.path)
            .arg("--timeout")
            .arg(format!("{timeout}")),
        limit,
    )
    .map_err(EvalError::Spawn)?;

    let parsed = parse_protocol(&out.stdout);
    let (answer, crashed) = if out.timed_out {
        (Answer::Unknown, false)
    } else {
        match (parsed.answer, out.exit_code()) {
            (Some(a), Some(code)) if !parsed.malformed && code == expected_exit(a) => (a, false),
            _ => (Answer::Unknown, true),
        }
    };
    if crashed {
        log::warn!(
            "{}: crash or malformed output on {} (exit {:?})",
            binary.display(),
            instance.id,
            out.exit_code()
        );
    }

    let mut outcome = InstanceOutcome::scored(instance.id.clone(), answer, out.elapsed, timeout);
    outcome.crashed = crashed;
    outcome.verified = match answer {
        Answer::Sat => verify_model(&instance.formula, &parsed.model),
        Answer::Unsat => match reference.and_then(|r| r.get(&instance.id)) {
            Some(Answer::Sat) => Verification::CrossCheckMismatch,
            _ => Verification::Unchecked,
        },
        Answer::Unknown => Verification::Unchecked,
    };
    if answer == Answer::Sat {
        outcome.model = Some(parsed.model);
    }
    Ok(outcome)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvaluationResult {
    pub outcomes: Vec<InstanceOutcome>,
    pub par2: f64,
    pub solved: usize,
    pub valid: bool,
    pub timeout: f64,
}

impl EvaluationResult {
    pub fn from_outcomes(outcomes: Vec<InstanceOutcome>, timeout: f64) -> Result<Self, EvalError> {
        let par2 = par2(&outcomes)?;
        let solved = outcomes.iter().filter(|o| o.is_solved()).count();
        let valid = !outcomes.iter().any(InstanceOutcome::poisons);
        Ok(EvaluationResult {
            outcomes,
            par2,
            solved,
            valid,
            timeout,
        })
    }

    /// Answers proven by this evaluation, for cross-checking later ones.
    pub fn reference_map(&self) -> ReferenceMap {
        self.outcomes
            .iter()
            .filter(|o| o.is_solved())
            .map(|o| (o.instance.clone(), o.answer))
            .collect()
    }

    pub fn summary(&self) -> EvaluationSummary {
        EvaluationSummary {
            par2: self.par2,
            solved: self.solved,
            instances: self.outcomes.len(),
            valid: self.valid,
            timeout: self.timeout,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvaluationSummary {
    pub par2: f64,
    pub solved: usize,
    pub instances: usize,
    pub valid: bool,
    pub timeout: f64,
}

/// Runs every instance, at most `parallelism` at a time. Outcomes keep the
/// order of `instances`.
pub fn evaluate_candidate(
    candidate: &CandidateSolver,
    instances: &[Instance],
    timeout: f64,
    parallelism: usize,
    reference: Option<&ReferenceMap>,
) -> Result<EvaluationResult, EvalError> {
    let binary = match (&candidate.binary, candidate.is_compiled()) {
        (Some(b), true) => b.clone(),
        _ => return Err(EvalError::NotCompiled(candidate.fingerprint.clone())),
    };
    if parallelism == 0 {
        return Err(EvalError::BadParallelism);
    }
    if instances.is_empty() {
        return Err(EvalError::Empty);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .expect("thread pool");
    let outcomes = pool.install(|| {
        instances
            .par_iter()
            .map(|inst| run_instance(&binary, inst, timeout, reference))
            .collect::<Result<Vec<_>, _>>()
    })?;
    EvaluationResult::from_outcomes(outcomes, timeout)
}

/// One JSON object per line: instance, answer, t, tau, verified.
pub fn write_outcomes_jsonl(path: &Path, outcomes: &[InstanceOutcome]) -> io::Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    for o in outcomes {
        serde_json::to_writer(&mut w, o)?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

pub fn read_outcomes_jsonl(path: &Path) -> io::Result<Vec<InstanceOutcome>> {
    fs::read_to_string(path)?
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(io::Error::other))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par2_worked_example() {
        let outcomes = vec![
            InstanceOutcome::scored("a", Answer::Sat, 80.0, 100.0),
            InstanceOutcome::scored("b", Answer::Unsat, 120.0, 100.0),
            InstanceOutcome::scored("c", Answer::Unknown, 100.0, 100.0),
        ];
        assert_eq!(outcomes[0].tau, 80.0);
        assert_eq!(outcomes[1].tau, 200.0);
        assert_eq!(par2(&outcomes).unwrap(), 160.0);
        let r = EvaluationResult::from_outcomes(outcomes, 100.0).unwrap();
        assert_eq!(r.solved, 1);
    }

    #[test]
    fn par2_bounds() {
        let fast: Vec<_> = (0..5)
            .map(|i| InstanceOutcome::scored(i.to_string(), Answer::Sat, 1e-4, 10.0))
            .collect();
        assert!(par2(&fast).unwrap() < 1e-3);
        let slow: Vec<_> = (0..5)
            .map(|i| InstanceOutcome::scored(i.to_string(), Answer::Unknown, 10.5, 10.0))
            .collect();
        assert_eq!(par2(&slow).unwrap(), 20.0);
        assert!(matches!(par2(&[]), Err(EvalError::Empty)));
    }

    #[test]
    fn answer_exactly_at_timeout_is_not_penalized() {
        assert_eq!(penalized_time(Answer::Sat, 100.0, 100.0), 100.0);
        assert_eq!(penalized_time(Answer::Unknown, 3.0, 100.0), 200.0);
    }

    #[test]
    fn protocol_parsing() {
        let p = parse_protocol("c hi\ns SATISFIABLE\nv 1 -2\nv 3 0\n");
        assert_eq!(p.answer, Some(Answer::Sat));
        assert_eq!(p.model, vec![1, -2, 3]);
        assert!(!p.malformed);
        assert!(parse_protocol("s MAYBE\n").malformed);
        assert!(parse_protocol("s UNKNOWN\ns UNKNOWN\n").malformed);
        assert_eq!(parse_protocol("").answer, None);
    }

    #[test]
    fn model_verification() {
        let f = parse_dimacs(b"p cnf 2 1\n1 2 0\n").unwrap();
        assert_eq!(verify_model(&f, &[1, -2]), Verification::ModelOk);
        assert_eq!(verify_model(&f, &[-1, -2]), Verification::ModelBad);
        assert_eq!(verify_model(&f, &[2]), Verification::ModelOk);
        assert_eq!(verify_model(&f, &[3]), Verification::ModelBad);
    }

    #[test]
    fn outcome_json_shape() {
        let o = InstanceOutcome::scored("x.cnf", Answer::Unsat, 0.5, 10.0);
        let v: serde_json::Value = serde_json::to_value(&o).unwrap();
        assert_eq!(v["answer"], "unsat");
        assert_eq!(v["verified"], "unchecked");
        assert_eq!(v["tau"], 0.5);
        assert!(v.get("crashed").is_none());
    }
}
