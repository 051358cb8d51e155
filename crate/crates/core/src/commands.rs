//! The bodies of the `satforge` subcommands, callable without the binary.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context};

use crate::cnf::parse_dimacs;
use crate::config::CampaignConfig;
use crate::evaluator::{
    evaluate_candidate, list_cnf_files, load_instances, write_outcomes_jsonl, EvaluationResult,
};
use crate::generators::{write_instances, GeneratorSpec};
use crate::materializer::{gc_workspace, CandidateSolver, Materializer, SolverTemplate};
use crate::report::{
    comparison_rows, comparison_svg, convergence_svg, read_campaign_log, write_comparison_csv,
    write_convergence_csv, BenchSummary, ConvergenceRow, ReportError,
};
use crate::search::{run_campaign, CampaignState, Incumbent};
use crate::slots::{
    baseline_hooks, bind_variant, Catalog, HeuristicConfiguration, Provenance, SlotName,
};
use crate::solver::{solve, Outcome, SolveLimits};

pub const EXIT_SAT: i32 = 10;
pub const EXIT_UNSAT: i32 = 20;
pub const EXIT_UNKNOWN: i32 = 0;
pub const EXIT_ERROR: i32 = 1;

// About 31 years.
const NO_TIMEOUT: f64 = 1e9;

/// Parses `slot=variant`.
pub fn parse_variant(s: &str) -> Result<(SlotName, String), String> {
    let (slot, name) = s
        .split_once('=')
        .ok_or_else(|| format!("expected <slot>=<variant>, got {s:?}"))?;
    let slot: SlotName = slot.parse().map_err(|e| format!("{e}"))?;
    Ok((slot, name.to_string()))
}

/// Solves one file in-process and prints the competition protocol to
/// `out`. Returns the exit code.
pub fn cmd_solve(
    path: &Path,
    timeout: Option<f64>,
    variants: &[(SlotName, String)],
    out: &mut dyn Write,
) -> i32 {
    match solve_inner(path, timeout, variants, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn solve_inner(
    path: &Path,
    timeout: Option<f64>,
    variants: &[(SlotName, String)],
    out: &mut dyn Write,
) -> anyhow::Result<i32> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let formula = parse_dimacs(&bytes).with_context(|| format!("parsing {}", path.display()))?;
    let mut hooks = baseline_hooks();
    for (slot, name) in variants {
        bind_variant(&mut hooks, *slot, name)?;
    }
    let limits = SolveLimits::new(timeout.unwrap_or(NO_TIMEOUT))?;
    let result = solve(&formula, hooks, &limits);
    let code = match &result.outcome {
        Outcome::Sat(model) => {
            let lits: Vec<String> = model.to_literals().iter().map(i32::to_string).collect();
            writeln!(out, "s SATISFIABLE")?;
            if lits.is_empty() {
                writeln!(out, "v 0")?;
            } else {
                writeln!(out, "v {} 0", lits.join(" "))?;
            }
            EXIT_SAT
        }
        Outcome::Unsat => {
            writeln!(out, "s UNSATISFIABLE")?;
            EXIT_UNSAT
        }
        Outcome::Unknown => {
            writeln!(out, "s UNKNOWN")?;
            EXIT_UNKNOWN
        }
    };
    let s = &result.stats;
    writeln!(
        out,
        "c conflicts {} decisions {} restarts {} time {:.3}",
        s.conflicts, s.decisions, s.restarts, result.elapsed
    )?;
    Ok(code)
}

/// Caps a requested worker count at the number of available cores.
pub fn clamp_parallelism(requested: usize) -> usize {
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    requested.clamp(1, cores)
}

#[derive(Clone, Debug)]
pub struct BenchArgs {
    pub dir: PathBuf,
    pub timeout: f64,
    pub parallelism: usize,
    /// Directory receiving `outcomes.jsonl` and `summary.json`.
    pub output: PathBuf,
    /// An executable speaking the solver protocol. The built-in engine is
    /// compiled when absent.
    pub solver: Option<PathBuf>,
    pub variants: Vec<(SlotName, String)>,
    pub workspace: PathBuf,
    pub solver_name: Option<String>,
    pub dataset: Option<String>,
}

/// Runs a solver over every `.cnf` file in a directory.
pub fn cmd_bench(args: &BenchArgs) -> anyhow::Result<(BenchSummary, EvaluationResult)> {
    let files = list_cnf_files(&args.dir).with_context(|| format!("listing {}", args.dir.display()))?;
    if files.is_empty() {
        bail!("{} has no .cnf files", args.dir.display());
    }
    let instances = load_instances(&files)?;
    let (candidate, default_name) = match &args.solver {
        Some(bin) => (
            CandidateSolver::from_binary(bin, HeuristicConfiguration::baseline()),
            bin.file_name().map_or("solver".into(), |n| n.to_string_lossy().into_owned()),
        ),
        None => {
            let template = SolverTemplate::builtin();
            let catalog = Catalog::builtin();
            let mut config = HeuristicConfiguration::from_template(&template);
            let mut label = vec!["baseline".to_string()];
            for (slot, name) in &args.variants {
                let v = catalog
                    .get(*slot, name)
                    .with_context(|| format!("no catalog variant {slot}={name}"))?;
                config = config.with_body(*slot, &v.body, Provenance::Catalog(name.clone()))?;
                label.push(format!("{slot}={name}"));
            }
            let candidate = Materializer::new(&args.workspace, template).compile_candidate(&config)?;
            if !candidate.is_compiled() {
                bail!("baseline did not compile; see {}", args.workspace.display());
            }
            (candidate, label.join("+"))
        }
    };
    let parallelism = clamp_parallelism(args.parallelism);
    let result = evaluate_candidate(&candidate, &instances, args.timeout, parallelism, None)?;
    fs::create_dir_all(&args.output)?;
    write_outcomes_jsonl(&args.output.join("outcomes.jsonl"), &result.outcomes)?;
    let dataset = args.dataset.clone().unwrap_or_else(|| {
        args.dir
            .canonicalize()
            .unwrap_or_else(|_| args.dir.clone())
            .file_name()
            .map_or("dataset".into(), |n| n.to_string_lossy().into_owned())
    });
    let summary = BenchSummary {
        solver: args.solver_name.clone().unwrap_or(default_name),
        dataset,
        summary: result.summary(),
    };
    fs::write(
        args.output.join("summary.json"),
        serde_json::to_string_pretty(&summary)? + "\n",
    )?;
    Ok((summary, result))
}

/// Runs the campaign a config file describes.
pub fn cmd_campaign(config_path: &Path) -> anyhow::Result<CampaignState> {
    let mut config = CampaignConfig::load(config_path)?;
    config.parallelism = clamp_parallelism(config.parallelism);
    run_campaign(&config)
}

/// Writes generated instances plus `manifest.json` into `dir`.
pub fn cmd_gen(dir: &Path, specs: &[GeneratorSpec]) -> anyhow::Result<Vec<PathBuf>> {
    if specs.is_empty() {
        bail!("nothing to generate");
    }
    write_instances(dir, specs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Csv,
    Svg,
    All,
}

/// What `cmd_report` wrote.
#[derive(Debug, Default)]
pub struct ReportFiles {
    pub files: Vec<PathBuf>,
    pub skipped: Vec<(PathBuf, String)>,
}

enum Input {
    Campaign(PathBuf),
    Bench(BenchSummary),
}

fn classify(path: &Path) -> anyhow::Result<Input> {
    if path.is_dir() {
        if path.join("log.jsonl").exists() {
            return Ok(Input::Campaign(path.join("log.jsonl")));
        }
        if path.join("summary.json").exists() {
            return classify(&path.join("summary.json"));
        }
        bail!("{} has neither log.jsonl nor summary.json", path.display());
    }
    if path.extension().is_some_and(|e| e == "jsonl") {
        return Ok(Input::Campaign(path.to_path_buf()));
    }
    let text = fs::read_to_string(path)?;
    Ok(Input::Bench(
        serde_json::from_str(&text).with_context(|| format!("{} is not a bench summary", path.display()))?,
    ))
}

fn stem(path: &Path) -> String {
    let p = if path.file_name().is_some_and(|n| n == "log.jsonl") {
        path.parent().unwrap_or(path)
    } else {
        path
    };
    p.file_stem()
        .map_or("campaign".into(), |s| s.to_string_lossy().into_owned())
}

/// Turns campaign logs into convergence CSVs and bench summaries into one
/// comparison table. Fails when no input yields any rows.
pub fn cmd_report(inputs: &[PathBuf], out_dir: &Path, format: ReportFormat) -> anyhow::Result<ReportFiles> {
    if inputs.is_empty() {
        return Err(ReportError::NoInputs.into());
    }
    fs::create_dir_all(out_dir)?;
    let csv = format != ReportFormat::Svg;
    let svg = format != ReportFormat::Csv;
    let mut files = ReportFiles::default();
    let mut benches = Vec::new();
    for path in inputs {
        let input = match classify(path) {
            Ok(i) => i,
            Err(e) => {
                log::warn!("skipping {}: {e:#}", path.display());
                files.skipped.push((path.clone(), format!("{e:#}")));
                continue;
            }
        };
        match input {
            Input::Bench(b) => benches.push(b),
            Input::Campaign(log) => {
                let records = match read_campaign_log(&log) {
                    Ok(r) => r,
                    Err(e) => {
                        log::warn!("skipping {}: {e}", log.display());
                        files.skipped.push((log.clone(), e.to_string()));
                        continue;
                    }
                };
                let rows: Vec<ConvergenceRow> = records.iter().map(ConvergenceRow::from).collect();
                let name = stem(&log);
                if csv {
                    let p = out_dir.join(format!("{name}.convergence.csv"));
                    write_convergence_csv(&p, &rows)?;
                    files.files.push(p);
                }
                if svg {
                    let p = out_dir.join(format!("{name}.convergence.svg"));
                    fs::write(&p, convergence_svg(&format!("{name}: PAR-2 during search"), &rows))?;
                    files.files.push(p);
                }
            }
        }
    }
    if !benches.is_empty() {
        let rows = comparison_rows(&benches);
        if csv {
            let p = out_dir.join("comparison.csv");
            write_comparison_csv(&p, &rows)?;
            files.files.push(p);
        }
        if svg {
            let p = out_dir.join("comparison.svg");
            let title = if rows.iter().any(|r| r.normalized.is_some()) {
                "normalized PAR-2 score"
            } else {
                "PAR-2 (relative to slowest)"
            };
            fs::write(&p, comparison_svg(title, &rows))?;
            files.files.push(p);
        }
    }
    if files.files.is_empty() {
        bail!("no usable input among {} path(s)", inputs.len());
    }
    Ok(files)
}

/// Deletes build directories, keeping listed fingerprints and the best
/// candidate of each listed campaign directory.
pub fn cmd_gc_workspace(workspace: &Path, keep: &[String], campaigns: &[PathBuf]) -> anyhow::Result<usize> {
    let mut keep = keep.to_vec();
    for dir in campaigns {
        let p = dir.join("best.json");
        let best: Incumbent = serde_json::from_str(
            &fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?,
        )?;
        keep.push(best.fingerprint);
    }
    Ok(gc_workspace(workspace, &keep)?)
}

/// Seconds as a duration, rejecting nonsense.
pub fn parse_seconds(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if t > 0.0 && t.is_finite() && Duration::try_from_secs_f64(t).is_ok() {
        Ok(t)
    } else {
        Err(format!("expected a positive number of seconds, got {s}"))
    }
}
