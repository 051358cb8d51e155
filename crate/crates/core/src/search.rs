//! The campaign loop: a greedy hill climber that cycles through the slots,
//! and a (1+1) EA that mutates a binomially sized random subset of them.
//! Both accept a candidate when it is valid and its PAR-2 is no worse than
//! the incumbent's.
//!
//! A campaign directory holds:
//!
//! ```text
//! log.jsonl          one IterationRecord per line, flushed every iteration
//! baseline.json      full evaluation of the starting configuration
//! best.json          incumbent configuration and fitness
//! incumbents.jsonl   every accepted incumbent, written before its log record
//! evaluations.jsonl  per-instance outcomes of every evaluated candidate
//! best_source.rs     spliced source of the incumbent
//! summary.json       final fitness and per-slot tallies
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::config::Strategy;
use crate::config::{CampaignConfig, ProposerConfig};
use crate::evaluator::{
    evaluate_candidate, load_instances, EvalError, EvaluationResult, EvaluationSummary, Instance, InstanceOutcome,
    ReferenceMap,
};
use crate::materializer::{
    CandidateBuilder, CandidateSolver, CompileStatus, MaterializeError, Materializer,
    SolverTemplate,
};
use crate::proposer::{AuditLog, HttpTransport, MockProposer, PromptRequest, Proposal, Proposer};
use crate::slots::{Catalog, HeuristicConfiguration, Provenance, SlotName};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("baseline configuration failed to compile:\n{0}")]
    BaselineCompileFailed(String),
    #[error("baseline evaluation is invalid (crash, wrong model or contradicted answer)")]
    BaselineInvalid,
    #[error(transparent)]
    Materialize(#[from] MaterializeError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("campaign directory: {0}")]
    Io(#[from] io::Error),
    #[error("campaign log: {0}")]
    Log(String),
    #[error("budget must be at least 1")]
    ZeroBudget,
}

/// Slots mutated together in one iteration; sorted, distinct, non-empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationPlan {
    pub slots: Vec<SlotName>,
}

impl MutationPlan {
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }
}

/// Slot mutated at GHC iteration `i`.
pub fn ghc_slot(i: usize) -> SlotName {
    SlotName::ALL[i % 9]
}

/// Draws l from Bin(9, 1/9), redrawing zeros, then l distinct slots
/// uniformly at random.
pub fn sample_mutation_plan<R: Rng + ?Sized>(rng: &mut R) -> MutationPlan {
    let bin = Binomial::new(9, 1.0 / 9.0).expect("valid binomial");
    let l = loop {
        let l = bin.sample(rng) as usize;
        if l >= 1 {
            break l;
        }
    };
    let mut slots: Vec<SlotName> = sample(rng, 9, l)
        .into_iter()
        .map(|i| SlotName::ALL[i])
        .collect();
    slots.sort();
    MutationPlan { slots }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ProposerStatus {
    Ok { attempts: u32 },
    Malformed { attempts: u32, reason: String },
    Failed { error: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuildStatus {
    Compiled,
    CompileFailed,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub i: usize,
    pub plan: MutationPlan,
    pub proposer_status: ProposerStatus,
    pub compile_status: BuildStatus,
    #[serde(default)]
    pub fingerprint: Option<String>,
    #[serde(default)]
    pub evaluation: Option<EvaluationSummary>,
    pub accepted: bool,
    /// Incumbent fitness after this iteration.
    pub best_par2: f64,
    /// Seconds spent on the whole iteration.
    pub wall_time: f64,
}

impl IterationRecord {
    pub fn candidate_par2(&self) -> Option<f64> {
        self.evaluation.as_ref().map(|e| e.par2)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Incumbent {
    pub config: HeuristicConfiguration,
    pub fitness: f64,
    pub fingerprint: String,
    /// Iteration that produced it; `None` for the baseline.
    pub iteration: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct CampaignState {
    pub iteration: usize,
    pub best: Incumbent,
    pub baseline: EvaluationResult,
    pub history: Vec<IterationRecord>,
}

impl CampaignState {
    pub fn best_fitness(&self) -> f64 {
        self.best.fitness
    }

    pub fn best_config(&self) -> &HeuristicConfiguration {
        &self.best.config
    }

    pub fn summary(&self, strategy: Strategy, budget: usize) -> CampaignSummary {
        CampaignSummary::from_records(strategy, budget, self.baseline.par2, &self.history)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub strategy: Strategy,
    pub budget: usize,
    pub iterations: usize,
    pub initial_par2: f64,
    pub final_par2: f64,
    pub accepted: usize,
    pub improvements: usize,
    /// Accepted records that touched each slot.
    pub accepted_per_slot: BTreeMap<SlotName, usize>,
    /// Strictly improving records that touched each slot.
    pub improvements_per_slot: BTreeMap<SlotName, usize>,
    pub compile_failures: usize,
    pub malformed_proposals: usize,
    pub invalid_candidates: usize,
}

impl CampaignSummary {
    pub fn from_records(
        strategy: Strategy,
        budget: usize,
        initial: f64,
        records: &[IterationRecord],
    ) -> Self {
        let mut s = CampaignSummary {
            strategy,
            budget,
            iterations: records.len(),
            initial_par2: initial,
            final_par2: records.last().map_or(initial, |r| r.best_par2),
            accepted: 0,
            improvements: 0,
            accepted_per_slot: SlotName::ALL.iter().map(|&s| (s, 0)).collect(),
            improvements_per_slot: SlotName::ALL.iter().map(|&s| (s, 0)).collect(),
            compile_failures: 0,
            malformed_proposals: 0,
            invalid_candidates: 0,
        };
        let mut prev = initial;
        for r in records {
            if r.accepted {
                s.accepted += 1;
                for slot in &r.plan.slots {
                    *s.accepted_per_slot.get_mut(slot).unwrap() += 1;
                }
                if r.best_par2 < prev {
                    s.improvements += 1;
                    for slot in &r.plan.slots {
                        *s.improvements_per_slot.get_mut(slot).unwrap() += 1;
                    }
                }
            }
            prev = r.best_par2;
            if r.compile_status == BuildStatus::CompileFailed {
                s.compile_failures += 1;
            }
            if !matches!(r.proposer_status, ProposerStatus::Ok { .. }) {
                s.malformed_proposals += 1;
            }
            if matches!(&r.evaluation, Some(e) if !e.valid) {
                s.invalid_candidates += 1;
            }
        }
        s
    }
}

/// Checks the acceptance invariants of a log: the incumbent fitness never
/// rises, changes only on accepted records, and ends at the minimum of the
/// initial and all accepted fitness values.
pub fn check_elitism(initial: f64, records: &[IterationRecord]) -> Result<(), String> {
    let mut best = initial;
    let mut min_accepted = initial;
    for r in records {
        if r.best_par2 > best {
            return Err(format!("iteration {}: best rose from {best} to {}", r.i, r.best_par2));
        }
        if r.accepted {
            let e = r
                .evaluation
                .as_ref()
                .ok_or_else(|| format!("iteration {}: accepted without evaluation", r.i))?;
            if !e.valid {
                return Err(format!("iteration {}: accepted an invalid candidate", r.i));
            }
            if e.par2 > best {
                return Err(format!("iteration {}: accepted a worse candidate", r.i));
            }
            if r.best_par2 != e.par2 {
                return Err(format!("iteration {}: best not updated on accept", r.i));
            }
            min_accepted = min_accepted.min(e.par2);
        } else if r.best_par2 != best {
            return Err(format!("iteration {}: best changed without accept", r.i));
        }
        best = r.best_par2;
    }
    if best != min_accepted {
        return Err(format!("final best {best} differs from minimum accepted {min_accepted}"));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchParams {
    pub strategy: Strategy,
    pub budget: usize,
    pub timeout: f64,
    pub parallelism: usize,
    pub seed: u64,
}

#[derive(Serialize, Deserialize)]
struct EvaluationLine {
    fingerprint: String,
    par2: f64,
    solved: usize,
    valid: bool,
    timeout: f64,
    outcomes: Vec<InstanceOutcome>,
}

/// Files of one campaign directory.
struct CampaignDir {
    root: PathBuf,
    log: File,
    evaluations: File,
    incumbents: File,
}

/// Cuts a partial last line left by a kill, so later appends start clean.
fn truncate_torn_tail(path: &Path) -> io::Result<()> {
    let Ok(bytes) = fs::read(path) else {
        return Ok(());
    };
    if bytes.last().is_some_and(|&b| b != b'\n') {
        let keep = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1);
        OpenOptions::new().write(true).open(path)?.set_len(keep as u64)?;
    }
    Ok(())
}

impl CampaignDir {
    fn open(root: &Path) -> io::Result<Self> {
        fs::create_dir_all(root)?;
        let append = |name: &str| {
            truncate_torn_tail(&root.join(name))?;
            OpenOptions::new().create(true).append(true).open(root.join(name))
        };
        Ok(CampaignDir {
            root: root.to_path_buf(),
            log: append("log.jsonl")?,
            evaluations: append("evaluations.jsonl")?,
            incumbents: append("incumbents.jsonl")?,
        })
    }

    fn append_incumbent(&mut self, best: &Incumbent) -> io::Result<()> {
        writeln!(self.incumbents, "{}", serde_json::to_string(best)?)?;
        self.incumbents.flush()?;
        self.incumbents.sync_data()
    }

    fn append_record(&mut self, r: &IterationRecord) -> io::Result<()> {
        writeln!(self.log, "{}", serde_json::to_string(r)?)?;
        self.log.flush()?;
        self.log.sync_data()
    }

    fn append_evaluation(&mut self, fingerprint: &str, e: &EvaluationResult) -> io::Result<()> {
        let line = EvaluationLine {
            fingerprint: fingerprint.to_string(),
            par2: e.par2,
            solved: e.solved,
            valid: e.valid,
            timeout: e.timeout,
            outcomes: e.outcomes.clone(),
        };
        writeln!(self.evaluations, "{}", serde_json::to_string(&line)?)?;
        self.evaluations.flush()
    }

    fn write_json<T: Serialize>(&self, name: &str, value: &T) -> io::Result<()> {
        let tmp = self.root.join(format!("{name}.tmp"));
        fs::write(&tmp, serde_json::to_string_pretty(value)?)?;
        fs::rename(tmp, self.root.join(name))
    }
}

/// Complete records of an existing log. A torn final line (from a kill
/// mid-write) is dropped and truncated away.
pub fn read_log(path: &Path) -> Result<Vec<IterationRecord>, SearchError> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = fs::read_to_string(path)?;
    let mut records = Vec::new();
    let mut good_len = 0;
    for line in text.split_inclusive('\n') {
        if !line.ends_with('\n') {
            break;
        }
        if line.trim().is_empty() {
            good_len += line.len();
            continue;
        }
        match serde_json::from_str::<IterationRecord>(line) {
            Ok(r) => {
                if r.i != records.len() {
                    return Err(SearchError::Log(format!(
                        "record {} found where {} was expected",
                        r.i,
                        records.len()
                    )));
                }
                records.push(r);
                good_len += line.len();
            }
            Err(e) => return Err(SearchError::Log(format!("line {}: {e}", records.len() + 1))),
        }
    }
    if good_len < text.len() {
        log::warn!("dropping torn final line of {}", path.display());
        OpenOptions::new().write(true).open(path)?.set_len(good_len as u64)?;
    }
    Ok(records)
}

fn read_incumbents(path: &Path) -> Vec<Incumbent> {
    let Ok(f) = File::open(path) else {
        return Vec::new();
    };
    BufReader::new(f)
        .lines()
        .map_while(Result::ok)
        .filter_map(|l| serde_json::from_str(&l).ok())
        .collect()
}

fn read_evaluations(path: &Path) -> HashMap<String, EvaluationResult> {
    let Ok(f) = File::open(path) else {
        return HashMap::new();
    };
    BufReader::new(f)
        .lines()
        .map_while(Result::ok)
        .filter_map(|l| serde_json::from_str::<EvaluationLine>(&l).ok())
        .map(|e| {
            (
                e.fingerprint,
                EvaluationResult {
                    outcomes: e.outcomes,
                    par2: e.par2,
                    solved: e.solved,
                    valid: e.valid,
                    timeout: e.timeout,
                },
            )
        })
        .collect()
}

struct Loop<'a> {
    params: &'a SearchParams,
    instances: &'a [Instance],
    template: &'a SolverTemplate,
    builder: &'a dyn CandidateBuilder,
    reference: ReferenceMap,
    memo: HashMap<String, EvaluationResult>,
    dir: Option<CampaignDir>,
}

impl Loop<'_> {
    /// Evaluates each distinct source once; repeated fingerprints reuse the
    /// first result.
    fn evaluate(
        &mut self,
        candidate: &CandidateSolver,
    ) -> Result<EvaluationResult, SearchError> {
        if let Some(e) = self.memo.get(&candidate.fingerprint) {
            return Ok(e.clone());
        }
        let result = match evaluate_candidate(
            candidate,
            self.instances,
            self.params.timeout,
            self.params.parallelism,
            Some(&self.reference),
        ) {
            Ok(r) => r,
            Err(EvalError::Spawn(e)) => {
                log::warn!("candidate {} could not be run: {e}", candidate.fingerprint);
                let outcomes = self
                    .instances
                    .iter()
                    .map(|inst| {
                        let mut o = InstanceOutcome::scored(
                            inst.id.clone(),
                            crate::evaluator::Answer::Unknown,
                            0.0,
                            self.params.timeout,
                        );
                        o.crashed = true;
                        o
                    })
                    .collect();
                EvaluationResult::from_outcomes(outcomes, self.params.timeout)?
            }
            Err(e) => return Err(e.into()),
        };
        if let Some(dir) = self.dir.as_mut() {
            dir.append_evaluation(&candidate.fingerprint, &result)?;
        }
        self.memo.insert(candidate.fingerprint.clone(), result.clone());
        Ok(result)
    }

    fn iterate(
        &mut self,
        i: usize,
        plan: MutationPlan,
        best: &mut Incumbent,
        proposer: &mut Proposer,
    ) -> Result<IterationRecord, SearchError> {
        let start = Instant::now();
        let mut record = IterationRecord {
            i,
            plan,
            proposer_status: ProposerStatus::Failed {
                error: String::new(),
            },
            compile_status: BuildStatus::Skipped,
            fingerprint: None,
            evaluation: None,
            accepted: false,
            best_par2: best.fitness,
            wall_time: 0.0,
        };
        let current_source = self
            .template
            .apply(&best.config)
            .map(|t| t.source().to_string())
            .unwrap_or_else(|_| self.template.source().to_string());
        let request = PromptRequest::new(record.plan.slots.iter().copied(), current_source)
            .expect("plans are never empty");

        let bodies = match proposer.propose(&request, &best.config) {
            Proposal::Bodies(r) => {
                record.proposer_status = ProposerStatus::Ok {
                    attempts: r.attempts,
                };
                Some(r.bodies)
            }
            Proposal::Malformed(m) => {
                record.proposer_status = ProposerStatus::Malformed {
                    attempts: m.attempts,
                    reason: m.reason.to_string(),
                };
                None
            }
            Proposal::Failed(error) => {
                record.proposer_status = ProposerStatus::Failed { error };
                None
            }
        };

        if let Some(bodies) = bodies {
            let mut config = best.config.clone();
            let mut empty = false;
            for (slot, body) in bodies {
                match config.clone().with_body(slot, body, Provenance::Proposed(i)) {
                    Ok(c) => config = c,
                    Err(_) => empty = true,
                }
            }
            let candidate = if empty {
                None
            } else {
                match self.builder.build(&config) {
                    Ok(c) => Some(c),
                    Err(MaterializeError::Template(e)) => {
                        log::warn!("iteration {i}: proposal breaks the template: {e}");
                        None
                    }
                    Err(e) => return Err(e.into()),
                }
            };
            match candidate {
                Some(c) if c.is_compiled() => {
                    record.compile_status = BuildStatus::Compiled;
                    record.fingerprint = Some(c.fingerprint.clone());
                    let eval = self.evaluate(&c)?;
                    if eval.valid && eval.par2 <= best.fitness {
                        record.accepted = true;
                        *best = Incumbent {
                            config,
                            fitness: eval.par2,
                            fingerprint: c.fingerprint.clone(),
                            iteration: Some(i),
                        };
                        if let Some(dir) = self.dir.as_mut() {
                            dir.append_incumbent(best)?;
                            dir.write_json("best.json", &*best)?;
                            fs::write(dir.root.join("best_source.rs"), &c.source)?;
                        }
                    }
                    record.evaluation = Some(eval.summary());
                }
                Some(c) => {
                    record.compile_status = BuildStatus::CompileFailed;
                    record.fingerprint = Some(c.fingerprint.clone());
                    if let CompileStatus::CompileFailed { log } = &c.status {
                        log::info!(
                            "iteration {i}: compile failed: {}",
                            log.lines().next().unwrap_or("")
                        );
                    }
                }
                None => record.compile_status = BuildStatus::CompileFailed,
            }
        }
        record.best_par2 = best.fitness;
        record.wall_time = start.elapsed().as_secs_f64();
        if let Some(dir) = self.dir.as_mut() {
            dir.append_record(&record)?;
        }
        log::info!(
            "iteration {i} [{}]: candidate {} best {:.3}{}",
            record
                .plan
                .slots
                .iter()
                .map(|s| s.as_str())
                .collect::<Vec<_>>()
                .join(","),
            record
                .candidate_par2()
                .map_or("-".to_string(), |p| format!("{p:.3}")),
            record.best_par2,
            if record.accepted { " (accepted)" } else { "" }
        );
        Ok(record)
    }
}

/// Runs (or resumes) a campaign. With `out` set, every iteration is logged
/// there and an existing log in that directory is continued.
pub fn run_search(
    params: &SearchParams,
    instances: &[Instance],
    template: &SolverTemplate,
    builder: &dyn CandidateBuilder,
    proposer: &mut Proposer,
    out: Option<&Path>,
) -> Result<CampaignState, SearchError> {
    if params.budget == 0 {
        return Err(SearchError::ZeroBudget);
    }
    let existing = match out {
        Some(dir) => read_log(&dir.join("log.jsonl"))?,
        None => Vec::new(),
    };
    let mut memo = out
        .map(|d| read_evaluations(&d.join("evaluations.jsonl")))
        .unwrap_or_default();

    let baseline_config = HeuristicConfiguration::from_template(template);
    let baseline_candidate = builder.build(&baseline_config)?;
    if let CompileStatus::CompileFailed { log } = &baseline_candidate.status {
        return Err(SearchError::BaselineCompileFailed(log.clone()));
    }
    let saved_baseline = out
        .and_then(|d| fs::read_to_string(d.join("baseline.json")).ok())
        .and_then(|t| serde_json::from_str::<EvaluationResult>(&t).ok());
    let baseline = match saved_baseline {
        Some(b) if !existing.is_empty() => b,
        _ => evaluate_candidate(
            &baseline_candidate,
            instances,
            params.timeout,
            params.parallelism,
            None,
        )?,
    };
    if !baseline.valid {
        return Err(SearchError::BaselineInvalid);
    }
    memo.insert(baseline_candidate.fingerprint.clone(), baseline.clone());

    let dir = match out {
        Some(d) => {
            let dir = CampaignDir::open(d)?;
            if existing.is_empty() {
                dir.write_json("baseline.json", &baseline)?;
                fs::write(d.join("best_source.rs"), &baseline_candidate.source)?;
            }
            Some(dir)
        }
        None => None,
    };

    let mut best = Incumbent {
        config: baseline_config,
        fitness: baseline.par2,
        fingerprint: baseline_candidate.fingerprint.clone(),
        iteration: None,
    };
    // The incumbent after the last logged acceptance. A kill can leave
    // incumbents.jsonl and best.json ahead of the log, never behind it.
    if let (Some(d), Some(last)) = (out, existing.iter().rev().find(|r| r.accepted)) {
        best = read_incumbents(&d.join("incumbents.jsonl"))
            .into_iter()
            .rev()
            .find(|b| b.iteration == Some(last.i))
            .ok_or_else(|| {
                SearchError::Log(format!("no saved incumbent for accepted iteration {}", last.i))
            })?;
        if best.fitness != last.best_par2 {
            return Err(SearchError::Log(format!(
                "incumbent fitness {} disagrees with log {}",
                best.fitness, last.best_par2
            )));
        }
    }
    if let (Some(d), false) = (dir.as_ref(), existing.is_empty()) {
        d.write_json("best.json", &best)?;
        let source = template
            .apply(&best.config)
            .map(|t| t.program_source())
            .map_err(|e| SearchError::Log(format!("saved incumbent does not splice: {e}")))?;
        fs::write(d.root.join("best_source.rs"), source)?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut looper = Loop {
        params,
        instances,
        template,
        builder,
        reference: baseline.reference_map(),
        memo,
        dir,
    };

    let plan_for = |i: usize, rng: &mut ChaCha8Rng| match params.strategy {
        Strategy::Ghc => MutationPlan {
            slots: vec![ghc_slot(i)],
        },
        Strategy::Ea => sample_mutation_plan(rng),
    };

    // Replay the logged prefix so the sampler and proposer resume in step.
    for r in &existing {
        let plan = plan_for(r.i, &mut rng);
        if plan != r.plan {
            return Err(SearchError::Log(format!(
                "record {} has plan {:?} but the seed gives {:?}",
                r.i, r.plan.slots, plan.slots
            )));
        }
        let request = PromptRequest::new(plan.slots, String::new()).expect("non-empty plan");
        proposer.skip(&request);
    }
    if !existing.is_empty() {
        log::info!("resuming at iteration {}", existing.len());
    }

    let mut history = existing;
    for i in history.len()..params.budget {
        let plan = plan_for(i, &mut rng);
        let record = looper.iterate(i, plan, &mut best, proposer)?;
        history.push(record);
    }

    let state = CampaignState {
        iteration: history.len(),
        best,
        baseline,
        history,
    };
    if let Some(dir) = looper.dir.as_ref() {
        dir.write_json("best.json", &state.best)?;
        dir.write_json("summary.json", &state.summary(params.strategy, params.budget))?;
    }
    Ok(state)
}

/// Builds the proposer a config asks for. LLM prompts are audited to
/// `<output_dir>/prompts.jsonl`.
pub fn proposer_from_config(config: &CampaignConfig) -> anyhow::Result<Proposer> {
    Ok(match &config.proposer {
        ProposerConfig::Mock { catalog } => {
            let catalog = match catalog {
                Some(dir) => Catalog::load_dir(dir)?,
                None => Catalog::builtin(),
            };
            Proposer::Mock(MockProposer::new(catalog, config.seed))
        }
        ProposerConfig::Llm(settings) => {
            fs::create_dir_all(&config.output_dir)?;
            let transport = HttpTransport::from_env(settings.clone())?;
            Proposer::Llm {
                settings: settings.clone(),
                transport: Box::new(transport),
                audit: Some(AuditLog::open(&config.output_dir.join("prompts.jsonl"))?),
            }
        }
    })
}

/// Runs the campaign described by `config`, compiling candidates with its
/// toolchain and logging to its output directory.
pub fn run_campaign(config: &CampaignConfig) -> anyhow::Result<CampaignState> {
    config.validate()?;
    let template = match &config.template {
        Some(p) => SolverTemplate::parse(fs::read_to_string(p)?)?,
        None => SolverTemplate::builtin(),
    };
    let mut materializer = Materializer::new(&config.workspace, template.clone())
        .with_compile_timeout(std::time::Duration::from_secs(config.compile_timeout));
    if let Some(t) = &config.toolchain {
        materializer = materializer.with_toolchain(t.clone());
    }
    let instances = load_instances(&config.instance_paths()?)?;
    let mut proposer = proposer_from_config(config)?;
    let params = SearchParams {
        strategy: config.strategy,
        budget: config.budget,
        timeout: config.timeout,
        parallelism: config.parallelism,
        seed: config.seed,
    };
    Ok(run_search(
        &params,
        &instances,
        &template,
        &materializer,
        &mut proposer,
        Some(&config.output_dir),
    )?)
}

pub fn run_ghc(config: &CampaignConfig) -> anyhow::Result<CampaignState> {
    run_campaign(&CampaignConfig {
        strategy: Strategy::Ghc,
        ..config.clone()
    })
}

pub fn run_ea(config: &CampaignConfig) -> anyhow::Result<CampaignState> {
    run_campaign(&CampaignConfig {
        strategy: Strategy::Ea,
        ..config.clone()
    })
}
