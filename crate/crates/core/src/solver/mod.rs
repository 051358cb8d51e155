//! In-process access to the CDCL engine.
//!
//! The engine lives in [`template`], which is also the source text that
//! candidates are spliced into (see [`crate::materializer`]). This module
//! wraps it with the crate's CNF types and time limits.

pub mod template;

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::cnf::{satisfies, Assignment, CnfFormula, Literal};
pub use template::{
    lit_from_dimacs, lit_to_dimacs, ClauseRef, HeuristicHooks, Lit, Solver, SolverStats, Status,
};

/// Source text of the marked solver template.
pub const TEMPLATE_SOURCE: &str = include_str!("template.rs");
/// Source of the `main` function appended to a spliced template to build a
/// standalone solver binary.
pub const STANDALONE_MAIN: &str = include_str!("standalone_main.rs");

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("wall timeout must be positive")]
    NonPositiveTimeout,
    #[error("conflict at decision level 0: the formula is unsatisfiable")]
    RootConflict,
    #[error("{0}")]
    InvalidBacktrack(String),
    #[error("all variables are assigned")]
    AllAssigned,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveLimits {
    pub wall_timeout: Duration,
    pub conflict_budget: Option<u64>,
    pub seed: u64,
}

impl SolveLimits {
    pub fn new(wall_timeout_secs: f64) -> Result<Self, SolverError> {
        if !(wall_timeout_secs > 0.0) || !wall_timeout_secs.is_finite() {
            return Err(SolverError::NonPositiveTimeout);
        }
        Ok(SolveLimits {
            wall_timeout: Duration::from_secs_f64(wall_timeout_secs),
            conflict_budget: None,
            seed: 0,
        })
    }

    pub fn with_conflict_budget(mut self, budget: u64) -> Self {
        self.conflict_budget = Some(budget);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Sat(Assignment),
    Unsat,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub outcome: Outcome,
    pub stats: SolverStats,
    /// Wall-clock seconds.
    pub elapsed: f64,
}

/// Builds an engine instance for `formula` without running it.
pub fn new_solver(formula: &CnfFormula, hooks: HeuristicHooks, seed: u64) -> Solver {
    Solver::new(formula.num_vars(), &formula.to_dimacs_clauses(), hooks, seed)
}

/// Runs the CDCL loop. SAT answers carry a model that has been checked
/// against `formula`.
pub fn solve(formula: &CnfFormula, hooks: HeuristicHooks, limits: &SolveLimits) -> SolveResult {
    let start = Instant::now();
    let mut solver = new_solver(formula, hooks, limits.seed);
    solver.set_time_limit(limits.wall_timeout);
    if let Some(b) = limits.conflict_budget {
        solver.set_conflict_budget(b);
    }
    let outcome = match solver.solve() {
        Status::Sat => {
            let model = Assignment::from_literals(formula.num_vars(), &solver.model());
            assert!(
                satisfies(formula, &model).unwrap_or(false),
                "engine produced a model that does not satisfy the formula"
            );
            Outcome::Sat(model)
        }
        Status::Unsat => Outcome::Unsat,
        Status::Unknown => Outcome::Unknown,
    };
    SolveResult {
        outcome,
        stats: solver.stats.clone(),
        elapsed: start.elapsed().as_secs_f64(),
    }
}

fn to_literal(l: Lit) -> Literal {
    Literal::new(lit_to_dimacs(l)).expect("engine literals are nonzero")
}

/// Propagates to fixpoint; returns the falsified clause on conflict.
pub fn unit_propagate(solver: &mut Solver) -> Option<Vec<Literal>> {
    solver
        .propagate()
        .map(|c| solver.clauses[c].lits.iter().map(|&l| to_literal(l)).collect())
}

/// First-UIP analysis of `conflict`: the learned clause (asserting literal
/// first) and the level to backtrack to.
pub fn analyze_conflict(
    solver: &mut Solver,
    conflict: ClauseRef,
) -> Result<(Vec<Literal>, usize), SolverError> {
    if solver.decision_level() == 0 {
        return Err(SolverError::RootConflict);
    }
    let (learnt, level) = solver.analyze(conflict);
    Ok((learnt.into_iter().map(to_literal).collect(), level))
}

pub fn backtrack(solver: &mut Solver, level: usize) -> Result<(), SolverError> {
    solver.try_backtrack(level).map_err(SolverError::InvalidBacktrack)
}

pub fn make_decision(solver: &mut Solver) -> Result<Literal, SolverError> {
    solver.decide().map(to_literal).ok_or(SolverError::AllAssigned)
}
