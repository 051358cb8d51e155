//! CNF formulas in DIMACS format.

use std::fmt::{self, Write as _};
use std::num::NonZeroI32;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnfError {
    #[error("missing `p cnf <vars> <clauses>` header")]
    MissingHeader,
    #[error("line {line}: malformed header `{text}`")]
    BadHeader { line: usize, text: String },
    #[error("line {line}: `{token}` is not an integer")]
    NotAnInteger { line: usize, token: String },
    #[error("line {line}: literal {literal} outside declared range 1..={num_vars}")]
    LiteralOutOfRange {
        line: usize,
        literal: i64,
        num_vars: usize,
    },
    #[error("line {line}: tautological clause contains both {var} and -{var}")]
    Tautology { line: usize, var: u32 },
    #[error("literal value must be nonzero")]
    ZeroLiteral,
    #[error("assignment leaves variable {0} unassigned")]
    IncompleteAssignment(u32),
    #[error("input is not valid UTF-8")]
    Encoding,
}

/// A variable (1-based) with a polarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal(NonZeroI32);

impl Literal {
    pub fn new(value: i32) -> Result<Self, CnfError> {
        NonZeroI32::new(value).map(Literal).ok_or(CnfError::ZeroLiteral)
    }

    pub fn positive(var: u32) -> Self {
        Literal(NonZeroI32::new(var as i32).expect("variables are 1-based"))
    }

    pub fn negative(var: u32) -> Self {
        Literal(NonZeroI32::new(-(var as i32)).expect("variables are 1-based"))
    }

    pub fn value(self) -> i32 {
        self.0.get()
    }

    pub fn var(self) -> u32 {
        self.0.get().unsigned_abs()
    }

    pub fn is_negated(self) -> bool {
        self.0.get() < 0
    }
}

impl std::ops::Not for Literal {
    type Output = Literal;
    fn not(self) -> Literal {
        Literal(-self.0)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A disjunction of distinct, non-complementary literals. The empty clause
/// is falsified by every assignment.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Clause(Vec<Literal>);

impl Clause {
    /// Builds a clause, keeping the first occurrence of repeated literals.
    /// Fails with the offending variable if the clause is a tautology.
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Result<Self, u32> {
        let mut lits: Vec<Literal> = Vec::new();
        for l in literals {
            if lits.contains(&!l) {
                return Err(l.var());
            }
            if !lits.contains(&l) {
                lits.push(l);
            }
        }
        Ok(Clause(lits))
    }

    pub fn from_dimacs(values: &[i32]) -> Result<Self, CnfError> {
        let lits = values
            .iter()
            .map(|&v| Literal::new(v))
            .collect::<Result<Vec<_>, _>>()?;
        Clause::new(lits).map_err(|var| CnfError::Tautology { line: 0, var })
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_dimacs(&self) -> Vec<i32> {
        self.0.iter().map(|l| l.value()).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    /// Fails if a clause mentions a variable above `num_vars`.
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self, CnfError> {
        for c in &clauses {
            for l in c.literals() {
                if l.var() as usize > num_vars {
                    return Err(CnfError::LiteralOutOfRange {
                        line: 0,
                        literal: l.value() as i64,
                        num_vars,
                    });
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    pub fn to_dimacs_clauses(&self) -> Vec<Vec<i32>> {
        self.clauses.iter().map(Clause::to_dimacs).collect()
    }
}

/// Truth values for variables `1..=num_vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<Option<bool>>,
}

impl Assignment {
    pub fn unassigned(num_vars: usize) -> Self {
        Assignment {
            values: vec![None; num_vars],
        }
    }

    /// Builds an assignment from DIMACS model literals such as `[1, -2, 3]`.
    /// Literals outside `1..=num_vars` are ignored.
    pub fn from_literals(num_vars: usize, lits: &[i32]) -> Self {
        let mut a = Assignment::unassigned(num_vars);
        for &l in lits {
            let v = l.unsigned_abs() as usize;
            if l != 0 && v <= num_vars {
                a.values[v - 1] = Some(l > 0);
            }
        }
        a
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, var: u32) -> Option<bool> {
        self.values.get(var as usize - 1).copied().flatten()
    }

    pub fn set(&mut self, var: u32, value: bool) {
        self.values[var as usize - 1] = Some(value);
    }

    pub fn unset(&mut self, var: u32) {
        self.values[var as usize - 1] = None;
    }

    pub fn is_complete(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    pub fn literal_value(&self, lit: Literal) -> Option<bool> {
        self.get(lit.var()).map(|v| v != lit.is_negated())
    }

    pub fn to_literals(&self) -> Vec<i32> {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|b| if b { i as i32 + 1 } else { -(i as i32 + 1) }))
            .collect()
    }
}

/// Parses DIMACS CNF. Repeated literals inside a clause are dropped; a
/// header/body clause count mismatch is logged, not rejected.
pub fn parse_dimacs(input: &[u8]) -> Result<CnfFormula, CnfError> {
    let text = std::str::from_utf8(input).map_err(|_| CnfError::Encoding)?;
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut current_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        // Some generators end the body with `%` followed by a stray `0`.
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || CnfError::BadHeader {
                line: line_no,
                text: line.to_string(),
            };
            if header.is_some() || fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(bad());
            }
            let vars = fields[2].parse().map_err(|_| bad())?;
            let count = fields[3].parse().map_err(|_| bad())?;
            header = Some((vars, count));
            continue;
        }
        let (num_vars, _) = header.ok_or(CnfError::MissingHeader)?;
        for token in line.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| CnfError::NotAnInteger {
                line: line_no,
                token: token.to_string(),
            })?;
            if value == 0 {
                let lits = std::mem::take(&mut current);
                let clause = Clause::new(lits).map_err(|var| CnfError::Tautology {
                    line: current_line.max(1),
                    var,
                })?;
                clauses.push(clause);
                continue;
            }
            if value.unsigned_abs() as usize > num_vars {
                return Err(CnfError::LiteralOutOfRange {
                    line: line_no,
                    literal: value,
                    num_vars,
                });
            }
            if current.is_empty() {
                current_line = line_no;
            }
            current.push(Literal::new(value as i32)?);
        }
    }

    let (num_vars, declared) = header.ok_or(CnfError::MissingHeader)?;
    if !current.is_empty() {
        log::warn!("last clause is not terminated by 0; accepting it");
        let clause = Clause::new(current).map_err(|var| CnfError::Tautology {
            line: current_line,
            var,
        })?;
        clauses.push(clause);
    }
    if declared != clauses.len() {
        log::warn!(
            "header declares {declared} clauses but {} were read",
            clauses.len()
        );
    }
    Ok(CnfFormula { num_vars, clauses })
}

pub fn serialize_dimacs(formula: &CnfFormula) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p cnf {} {}", formula.num_vars, formula.clauses.len());
    for c in &formula.clauses {
        for l in c.literals() {
            let _ = write!(out, "{l} ");
        }
        out.push_str("0\n");
    }
    out
}

/// True iff every clause has a literal made true by `assignment`.
pub fn satisfies(formula: &CnfFormula, assignment: &Assignment) -> Result<bool, CnfError> {
    if assignment.num_vars() < formula.num_vars {
        return Err(CnfError::IncompleteAssignment(assignment.num_vars() as u32 + 1));
    }
    if let Some(v) = (1..=formula.num_vars as u32).find(|&v| assignment.get(v).is_none()) {
        return Err(CnfError::IncompleteAssignment(v));
    }
    Ok(formula.clauses.iter().all(|c| {
        c.literals()
            .iter()
            .any(|&l| assignment.literal_value(l) == Some(true))
    }))
}
