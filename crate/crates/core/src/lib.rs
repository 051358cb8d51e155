//! Evolving the heuristic functions of a CDCL SAT solver.
//!
//! The solver engine in [`solver`] delegates nine decisions (restart,
//! clause-database reduction, rephasing and variable bumping, with their
//! trigger conditions) to free functions that sit between marker comments
//! in its own source. A campaign asks a proposer for new versions of some
//! of those functions, splices them into the source, compiles the result,
//! runs it over a benchmark set and keeps it if its PAR-2 score is no worse.
//!
//! The runnable examples in `examples/` walk through each step.

pub mod cnf;
pub mod commands;
pub mod config;
pub mod evaluator;
pub mod generators;
pub mod materializer;
pub mod process;
pub mod proposer;
pub mod report;
pub mod search;
pub mod slots;
pub mod solver;
