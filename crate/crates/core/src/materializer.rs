//! Splicing slot bodies into the marked solver template and compiling the
//! result into a standalone solver binary.
//!
//! Every candidate gets a workspace directory named by the SHA-256 of its
//! spliced source:
//!
//! ```text
//! <workspace>/<fingerprint>/source.rs
//! <workspace>/<fingerprint>/binary
//! <workspace>/<fingerprint>/compile.log
//! ```
//!
//! A directory with `binary` is a compiled cache entry; one with only
//! `compile.log` is a cached failure.

use std::collections::HashMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::{Arc, Mutex};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::process::run_with_timeout;
use crate::slots::{HeuristicConfiguration, SlotName};
use crate::solver::{STANDALONE_MAIN, TEMPLATE_SOURCE};

pub const COMPILE_TIMEOUT: Duration = Duration::from_secs(120);

/// `{source}` and `{binary}` are replaced by absolute paths.
pub const DEFAULT_TOOLCHAIN: &[&str] = &[
    "rustc",
    "--edition",
    "2021",
    "-C",
    "opt-level=3",
    "-C",
    "debuginfo=0",
    "-A",
    "warnings",
    "-o",
    "{binary}",
    "{source}",
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TemplateError {
    #[error("slot {slot}: missing `{marker}` line")]
    MissingMarker { slot: SlotName, marker: String },
    #[error("slot {slot}: `{marker}` appears more than once")]
    DuplicateMarker { slot: SlotName, marker: String },
    #[error("slot {0}: end marker precedes start marker")]
    Misordered(SlotName),
    #[error("slot {0} overlaps slot {1}")]
    Overlap(SlotName, SlotName),
    #[error("slot {0}: replacement body is empty")]
    EmptyBody(SlotName),
}

/// Byte offsets of one slot region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Region {
    /// First byte of the start marker line.
    start_line: usize,
    /// First byte after the start marker line.
    body_start: usize,
    /// First byte of the end marker line.
    body_end: usize,
}

/// Solver source text with nine validated marker pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverTemplate {
    source: String,
    regions: [Region; 9],
}

fn line_spans(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    let mut offset = 0;
    text.split_inclusive('\n').map(move |line| {
        let start = offset;
        offset += line.len();
        (start, offset, line)
    })
}

fn find_marker(text: &str, slot: SlotName, marker: &str) -> Result<(usize, usize), TemplateError> {
    let mut found = None;
    for (start, end, line) in line_spans(text) {
        if line.trim() == marker {
            if found.is_some() {
                return Err(TemplateError::DuplicateMarker {
                    slot,
                    marker: marker.to_string(),
                });
            }
            found = Some((start, end));
        }
    }
    found.ok_or_else(|| TemplateError::MissingMarker {
        slot,
        marker: marker.to_string(),
    })
}

/// Locates `slot`'s region in arbitrary text.
fn locate(text: &str, slot: SlotName) -> Result<Region, TemplateError> {
    let (start_line, body_start) = find_marker(text, slot, &slot.start_marker())?;
    let (body_end, _) = find_marker(text, slot, &slot.end_marker())?;
    if body_end < body_start {
        return Err(TemplateError::Misordered(slot));
    }
    Ok(Region {
        start_line,
        body_start,
        body_end,
    })
}

impl SolverTemplate {
    pub fn parse(source: impl Into<String>) -> Result<Self, TemplateError> {
        let source = source.into();
        let mut regions = [Region {
            start_line: 0,
            body_start: 0,
            body_end: 0,
        }; 9];
        for slot in SlotName::ALL {
            regions[slot.index()] = locate(&source, slot)?;
        }
        let mut order: Vec<SlotName> = SlotName::ALL.to_vec();
        order.sort_by_key(|s| regions[s.index()].start_line);
        for pair in order.windows(2) {
            let (a, b) = (regions[pair[0].index()], regions[pair[1].index()]);
            if a.body_end >= b.start_line {
                return Err(TemplateError::Overlap(pair[0], pair[1]));
            }
        }
        Ok(SolverTemplate { source, regions })
    }

    /// The engine's own source, as shipped in this crate.
    pub fn builtin() -> Self {
        Self::parse(TEMPLATE_SOURCE).expect("built-in template has nine marker pairs")
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Source of a standalone solver program: the template followed by a
    /// command-line `main`.
    pub fn program_source(&self) -> String {
        format!("{}\n{}", self.source, STANDALONE_MAIN)
    }

    /// Splices every body of `config` into this template.
    pub fn apply(&self, config: &HeuristicConfiguration) -> Result<SolverTemplate, TemplateError> {
        let mut t = self.clone();
        for slot in SlotName::ALL {
            if let Some(body) = config.bodies.get(&slot) {
                t = splice_region(&t, slot, body)?;
            }
        }
        Ok(t)
    }
}

/// Text strictly between the marker lines of `slot`.
pub fn extract_region(template: &SolverTemplate, slot: SlotName) -> Result<&str, TemplateError> {
    let r = template.regions[slot.index()];
    Ok(&template.source[r.body_start..r.body_end])
}

/// Finds `slot`'s region in text that has not been validated as a template.
pub fn extract_region_from_text(text: &str, slot: SlotName) -> Result<&str, TemplateError> {
    let r = locate(text, slot)?;
    Ok(&text[r.body_start..r.body_end])
}

/// Replaces the interior of `slot`'s region. A body without a trailing
/// newline gets one so the end marker stays on its own line.
pub fn splice_region(
    template: &SolverTemplate,
    slot: SlotName,
    body: &str,
) -> Result<SolverTemplate, TemplateError> {
    if body.trim().is_empty() {
        return Err(TemplateError::EmptyBody(slot));
    }
    let r = template.regions[slot.index()];
    let mut source = String::with_capacity(template.source.len() + body.len());
    source.push_str(&template.source[..r.body_start]);
    source.push_str(body);
    if !body.ends_with('\n') {
        source.push('\n');
    }
    source.push_str(&template.source[r.body_end..]);
    SolverTemplate::parse(source)
}

pub fn fingerprint(source: &str) -> String {
    hex::encode(Sha256::digest(source.as_bytes()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CompileStatus {
    Compiled,
    CompileFailed { log: String },
    Pending,
}

#[derive(Clone, Debug)]
pub struct CandidateSolver {
    pub config: HeuristicConfiguration,
    /// Full program source (spliced template plus `main`).
    pub source: String,
    pub fingerprint: String,
    pub binary: Option<PathBuf>,
    pub status: CompileStatus,
    pub cache_hit: bool,
}

impl CandidateSolver {
    /// Wraps an existing solver executable, bypassing the compiler. Used for
    /// external solvers and test doubles.
    pub fn from_binary(binary: impl Into<PathBuf>, config: HeuristicConfiguration) -> Self {
        let binary = binary.into();
        let source = binary.display().to_string();
        CandidateSolver {
            config,
            fingerprint: fingerprint(&source),
            source,
            binary: Some(binary),
            status: CompileStatus::Compiled,
            cache_hit: false,
        }
    }

    pub fn is_compiled(&self) -> bool {
        self.status == CompileStatus::Compiled
    }
}

#[derive(Debug, Error)]
pub enum MaterializeError {
    #[error("workspace {path}: {source}")]
    Workspace { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Template(#[from] TemplateError),
    #[error("toolchain command is empty")]
    EmptyToolchain,
}

fn ws_err(path: &Path) -> impl FnOnce(io::Error) -> MaterializeError + '_ {
    move |source| MaterializeError::Workspace {
        path: path.to_path_buf(),
        source,
    }
}

/// Compiles configurations into cached solver binaries.
pub struct Materializer {
    workspace: PathBuf,
    template: SolverTemplate,
    toolchain: Vec<String>,
    compile_timeout: Duration,
    in_flight: Mutex<HashMap<String, Arc<Mutex<()>>>>,
}

impl Materializer {
    pub fn new(workspace: impl Into<PathBuf>, template: SolverTemplate) -> Self {
        Materializer {
            workspace: workspace.into(),
            template,
            toolchain: DEFAULT_TOOLCHAIN.iter().map(|s| s.to_string()).collect(),
            compile_timeout: COMPILE_TIMEOUT,
            in_flight: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_toolchain(mut self, toolchain: Vec<String>) -> Self {
        self.toolchain = toolchain;
        self
    }

    pub fn with_compile_timeout(mut self, timeout: Duration) -> Self {
        self.compile_timeout = timeout;
        self
    }

    pub fn template(&self) -> &SolverTemplate {
        &self.template
    }

    pub fn workspace(&self) -> &Path {
        &self.workspace
    }

    pub fn compile_candidate(
        &self,
        config: &HeuristicConfiguration,
    ) -> Result<CandidateSolver, MaterializeError> {
        let spliced = self.template.apply(config)?;
        self.compile_source(config.clone(), spliced.program_source())
    }

    fn lock_for(&self, fp: &str) -> Arc<Mutex<()>> {
        let mut map = self.in_flight.lock().unwrap();
        map.entry(fp.to_string()).or_default().clone()
    }

    fn compile_source(
        &self,
        config: HeuristicConfiguration,
        source: String,
    ) -> Result<CandidateSolver, MaterializeError> {
        let fp = fingerprint(&source);
        let lock = self.lock_for(&fp);
        let _guard = lock.lock().unwrap();

        let dir = self.workspace.join(&fp);
        let binary = dir.join("binary");
        let log_path = dir.join("compile.log");
        let mut candidate = CandidateSolver {
            config,
            source,
            fingerprint: fp,
            binary: None,
            status: CompileStatus::Pending,
            cache_hit: false,
        };

        if binary.is_file() {
            candidate.binary = Some(binary);
            candidate.status = CompileStatus::Compiled;
            candidate.cache_hit = true;
            return Ok(candidate);
        }
        if log_path.is_file() {
            let log = fs::read_to_string(&log_path).map_err(ws_err(&log_path))?;
            candidate.status = CompileStatus::CompileFailed { log };
            candidate.cache_hit = true;
            return Ok(candidate);
        }

        fs::create_dir_all(&dir).map_err(ws_err(&dir))?;
        let src_path = dir.join("source.rs");
        fs::write(&src_path, &candidate.source).map_err(ws_err(&src_path))?;
        let tmp_binary = dir.join("binary.partial");

        let args: Vec<String> = self
            .toolchain
            .iter()
            .map(|a| {
                a.replace("{source}", &src_path.display().to_string())
                    .replace("{binary}", &tmp_binary.display().to_string())
            })
            .collect();
        let (program, rest) = args.split_first().ok_or(MaterializeError::EmptyToolchain)?;
        log::info!("compiling candidate {}", &candidate.fingerprint[..12]);
        let outcome = run_with_timeout(Command::new(program).args(rest), self.compile_timeout);

        let failure = match outcome {
            Err(e) => Some(format!("failed to run `{program}`: {e}\n")),
            Ok(out) if out.timed_out => Some(format!(
                "{}{}compile timed out after {} s\n",
                out.stdout,
                out.stderr,
                self.compile_timeout.as_secs()
            )),
            Ok(out) if out.status.is_some_and(|s| s.success()) && tmp_binary.is_file() => {
                fs::rename(&tmp_binary, &binary).map_err(ws_err(&binary))?;
                fs::write(&log_path, format!("{}{}", out.stdout, out.stderr))
                    .map_err(ws_err(&log_path))?;
                None
            }
            Ok(out) => {
                let mut log = format!("{}{}", out.stdout, out.stderr);
                if log.trim().is_empty() {
                    log = format!("compiler exited with {:?} and no output\n", out.status);
                }
                Some(log)
            }
        };
        match failure {
            None => {
                candidate.binary = Some(binary);
                candidate.status = CompileStatus::Compiled;
            }
            Some(log) => {
                let _ = fs::remove_file(&tmp_binary);
                fs::write(&log_path, &log).map_err(ws_err(&log_path))?;
                candidate.status = CompileStatus::CompileFailed { log };
            }
        }
        Ok(candidate)
    }
}

/// Anything that turns a configuration into a runnable candidate. The
/// campaign loop only talks to this, so tests can substitute prebuilt
/// solver doubles for the compiler.
pub trait CandidateBuilder: Sync {
    fn build(&self, config: &HeuristicConfiguration) -> Result<CandidateSolver, MaterializeError>;
}

impl CandidateBuilder for Materializer {
    fn build(&self, config: &HeuristicConfiguration) -> Result<CandidateSolver, MaterializeError> {
        self.compile_candidate(config)
    }
}

/// Removes every fingerprint directory in `workspace` not listed in `keep`.
/// Returns the number of directories removed.
pub fn gc_workspace(workspace: &Path, keep: &[String]) -> io::Result<usize> {
    let mut removed = 0;
    if !workspace.exists() {
        return Ok(0);
    }
    for entry in fs::read_dir(workspace)? {
        let entry = entry?;
        let name = entry.file_name().to_string_lossy().into_owned();
        let looks_like_fp = name.len() == 64 && name.bytes().all(|b| b.is_ascii_hexdigit());
        if entry.file_type()?.is_dir() && looks_like_fp && !keep.contains(&name) {
            fs::remove_dir_all(entry.path())?;
            removed += 1;
        }
    }
    Ok(removed)
}
