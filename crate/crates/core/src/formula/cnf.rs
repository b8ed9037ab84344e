use std::fmt;

use thiserror::Error;

use super::{Assignment, VarId};

/// A literal: a variable with a polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    var: VarId,
    positive: bool,
}

impl Lit {
    pub fn new(var: VarId, positive: bool) -> Lit {
        Lit { var, positive }
    }

    pub fn var(self) -> VarId {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    /// Signed DIMACS integer (`-3` for `¬x3`).
    pub fn to_dimacs(self) -> i64 {
        let v = self.var.index() as i64;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn from_dimacs(value: i64) -> Option<Lit> {
        if value == 0 || value.unsigned_abs() > u32::MAX as u64 {
            return None;
        }
        Some(Lit::new(VarId::new(value.unsigned_abs() as u32), value > 0))
    }

    /// Dense code `2 * index + negated`, used to index watch lists.
    pub(crate) fn code(self) -> usize {
        (self.var.index() as usize) << 1 | (!self.positive) as usize
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("clause {clause} mentions variable {var} beyond the declared {num_vars}")]
    VariableOutOfRange {
        clause: usize,
        var: u32,
        num_vars: u32,
    },
}

/// A conjunction of non-empty clauses over variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cnf {
    num_vars: u32,
    clauses: Vec<Vec<Lit>>,
}

impl Cnf {
    pub fn new(num_vars: u32, clauses: Vec<Vec<Lit>>) -> Result<Cnf, CnfError> {
        for (i, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(CnfError::EmptyClause(i));
            }
            if let Some(lit) = clause.iter().find(|l| l.var().index() > num_vars) {
                return Err(CnfError::VariableOutOfRange {
                    clause: i,
                    var: lit.var().index(),
                    num_vars,
                });
            }
        }
        Ok(Cnf { num_vars, clauses })
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Adds a unit clause per literal, e.g. to pin inputs when probing.
    pub fn with_units(&self, units: &[Lit]) -> Cnf {
        let mut clauses = self.clauses.clone();
        clauses.extend(units.iter().map(|&l| vec![l]));
        Cnf::new(self.num_vars, clauses).expect("unit literals within range")
    }

    /// Whether `a` satisfies every clause; unassigned literals count as false.
    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| a.lit_value(l) == Some(true)))
    }
}
