//! Boolean formulas, CNF, and the lowering between them.
//!
//! [`Formula`] values are built through the smart constructors
//! ([`Formula::and`], [`Formula::iff`], ...) which fold constants and
//! flatten nested conjunctions/disjunctions. The enum is public so tests can
//! build raw trees; everything downstream copes with unfolded input.

mod cnf;
pub mod dimacs;
mod tseitin;

use std::fmt;

use thiserror::Error;

pub use cnf::{Cnf, CnfError, Lit};
pub use tseitin::{tseitin, AuxMap, Tseitin};

/// A boolean variable, numbered densely from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(u32);

impl VarId {
    /// # Panics
    ///
    /// If `index` is zero.
    pub fn new(index: u32) -> VarId {
        assert!(index >= 1, "variable indices start at 1");
        VarId(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn positive(self) -> Lit {
        Lit::new(self, true)
    }

    pub fn negative(self) -> Lit {
        Lit::new(self, false)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("variable {0} is unassigned")]
    UnassignedVariable(VarId),
}

/// A (possibly partial) truth assignment indexed by [`VarId`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Assignment {
    values: Vec<Option<bool>>,
}

impl Assignment {
    /// An empty assignment with room for `num_vars` variables.
    pub fn new(num_vars: u32) -> Self {
        Assignment {
            values: vec![None; num_vars as usize + 1],
        }
    }

    /// A total assignment of variables `1..=values.len()`.
    pub fn from_values(values: &[bool]) -> Self {
        let mut a = Assignment::new(values.len() as u32);
        for (i, &v) in values.iter().enumerate() {
            a.values[i + 1] = Some(v);
        }
        a
    }

    pub fn num_vars(&self) -> u32 {
        self.values.len().saturating_sub(1) as u32
    }

    pub fn get(&self, var: VarId) -> Option<bool> {
        self.values.get(var.0 as usize).copied().flatten()
    }

    pub fn set(&mut self, var: VarId, value: bool) {
        let idx = var.0 as usize;
        if idx >= self.values.len() {
            self.values.resize(idx + 1, None);
        }
        self.values[idx] = Some(value);
    }

    pub fn lit_value(&self, lit: Lit) -> Option<bool> {
        self.get(lit.var()).map(|v| v == lit.is_positive())
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().skip(1).all(Option::is_some)
    }

    /// Assigned `(variable, value)` pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (VarId, bool)> + '_ {
        self.values
            .iter()
            .enumerate()
            .skip(1)
            .filter_map(|(i, v)| v.map(|v| (VarId(i as u32), v)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Const(bool),
    Var(VarId),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl From<VarId> for Formula {
    fn from(v: VarId) -> Self {
        Formula::Var(v)
    }
}

impl From<bool> for Formula {
    fn from(b: bool) -> Self {
        Formula::Const(b)
    }
}

impl From<Lit> for Formula {
    fn from(l: Lit) -> Self {
        if l.is_positive() {
            Formula::Var(l.var())
        } else {
            Formula::Not(Box::new(Formula::Var(l.var())))
        }
    }
}

impl Formula {
    pub const TRUE: Formula = Formula::Const(true);
    pub const FALSE: Formula = Formula::Const(false);

    pub fn var(v: VarId) -> Formula {
        Formula::Var(v)
    }

    pub fn constant(b: bool) -> Formula {
        Formula::Const(b)
    }

    pub fn as_const(&self) -> Option<bool> {
        match self {
            Formula::Const(b) => Some(*b),
            _ => None,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: impl Into<Formula>) -> Formula {
        match f.into() {
            Formula::Const(b) => Formula::Const(!b),
            Formula::Not(inner) => *inner,
            other => Formula::Not(Box::new(other)),
        }
    }

    pub fn and<I>(children: I) -> Formula
    where
        I: IntoIterator,
        I::Item: Into<Formula>,
    {
        Formula::junction(children, true)
    }

    pub fn or<I>(children: I) -> Formula
    where
        I: IntoIterator,
        I::Item: Into<Formula>,
    {
        Formula::junction(children, false)
    }

    // `is_and` selects And (identity true, absorbing false) or Or (dual).
    fn junction<I>(children: I, is_and: bool) -> Formula
    where
        I: IntoIterator,
        I::Item: Into<Formula>,
    {
        let mut kept = Vec::new();
        for child in children {
            match child.into() {
                Formula::Const(b) if b == is_and => {}
                Formula::Const(_) => return Formula::Const(!is_and),
                Formula::And(inner) if is_and => kept.extend(inner),
                Formula::Or(inner) if !is_and => kept.extend(inner),
                other => kept.push(other),
            }
        }
        match kept.len() {
            0 => Formula::Const(is_and),
            1 => kept.pop().unwrap(),
            _ if is_and => Formula::And(kept),
            _ => Formula::Or(kept),
        }
    }

    pub fn iff(left: impl Into<Formula>, right: impl Into<Formula>) -> Formula {
        match (left.into(), right.into()) {
            (Formula::Const(a), Formula::Const(b)) => Formula::Const(a == b),
            (Formula::Const(true), f) | (f, Formula::Const(true)) => f,
            (Formula::Const(false), f) | (f, Formula::Const(false)) => Formula::not(f),
            (l, r) => Formula::Iff(Box::new(l), Box::new(r)),
        }
    }

    pub fn implies(premise: impl Into<Formula>, conclusion: impl Into<Formula>) -> Formula {
        match (premise.into(), conclusion.into()) {
            (Formula::Const(false), _) | (_, Formula::Const(true)) => Formula::TRUE,
            (Formula::Const(true), c) => c,
            (p, Formula::Const(false)) => Formula::not(p),
            (p, c) => Formula::Implies(Box::new(p), Box::new(c)),
        }
    }

    /// Odd parity of the operands, written as the disjunction over every
    /// odd-sized subset `S` of "all of S true and none of the rest".
    pub fn odd_parity(operands: &[Formula]) -> Formula {
        let n = operands.len();
        assert!(n <= 16, "parity template is exponential in its arity");
        let mut terms = Vec::new();
        // Full set first, then singletons, matching the usual three-input layout.
        let mut masks: Vec<u32> = (1u32..1 << n).filter(|m| m.count_ones() % 2 == 1).collect();
        masks.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
        for mask in masks {
            let chosen = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| operands[i].clone());
            let rest: Vec<Formula> = (0..n)
                .filter(|i| mask >> i & 1 == 0)
                .map(|i| operands[i].clone())
                .collect();
            let term = if rest.is_empty() {
                Formula::and(chosen)
            } else {
                Formula::and(chosen.chain(std::iter::once(Formula::not(Formula::or(rest)))))
            };
            terms.push(term);
        }
        Formula::or(terms)
    }

    /// At least two of three operands are true.
    pub fn majority(x: &Formula, y: &Formula, z: &Formula) -> Formula {
        Formula::or([
            Formula::and([x.clone(), y.clone()]),
            Formula::and([x.clone(), z.clone()]),
            Formula::and([y.clone(), z.clone()]),
        ])
    }

    pub fn eval(&self, a: &Assignment) -> Result<bool, FormulaError> {
        Ok(match self {
            Formula::Const(b) => *b,
            Formula::Var(v) => a.get(*v).ok_or(FormulaError::UnassignedVariable(*v))?,
            Formula::Not(f) => !f.eval(a)?,
            Formula::And(fs) => {
                for f in fs {
                    if !f.eval(a)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Or(fs) => {
                for f in fs {
                    if f.eval(a)? {
                        return Ok(true);
                    }
                }
                false
            }
            Formula::Iff(l, r) => l.eval(a)? == r.eval(a)?,
            Formula::Implies(l, r) => !l.eval(a)? || r.eval(a)?,
        })
    }

    /// Number of tokens in the fully parenthesized rendering produced by
    /// [`fmt::Display`]: variables, constants, connectives and brackets each
    /// count once.
    pub fn token_count(&self) -> usize {
        match self {
            Formula::Const(_) | Formula::Var(_) => 1,
            Formula::Not(f) => 1 + f.token_count(),
            Formula::And(fs) | Formula::Or(fs) => {
                2 + fs.len() - 1 + fs.iter().map(Formula::token_count).sum::<usize>()
            }
            Formula::Iff(l, r) | Formula::Implies(l, r) => 3 + l.token_count() + r.token_count(),
        }
    }

    /// Largest variable index occurring in the formula (0 if none).
    pub fn max_var(&self) -> u32 {
        match self {
            Formula::Const(_) => 0,
            Formula::Var(v) => v.index(),
            Formula::Not(f) => f.max_var(),
            Formula::And(fs) | Formula::Or(fs) => {
                fs.iter().map(Formula::max_var).max().unwrap_or(0)
            }
            Formula::Iff(l, r) | Formula::Implies(l, r) => l.max_var().max(r.max_var()),
        }
    }

    /// Number of nodes in the tree.
    pub fn node_count(&self) -> usize {
        match self {
            Formula::Const(_) | Formula::Var(_) => 1,
            Formula::Not(f) => 1 + f.node_count(),
            Formula::And(fs) | Formula::Or(fs) => {
                1 + fs.iter().map(Formula::node_count).sum::<usize>()
            }
            Formula::Iff(l, r) | Formula::Implies(l, r) => 1 + l.node_count() + r.node_count(),
        }
    }
}

impl std::ops::Not for Formula {
    type Output = Formula;

    fn not(self) -> Formula {
        Formula::not(self)
    }
}

/// Infix rendering: every And/Or/Iff/Implies node is wrapped in one pair of
/// parentheses, negation is a prefix `¬`, variables print as `x<index>`.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Const(true) => write!(f, "⊤"),
            Formula::Const(false) => write!(f, "⊥"),
            Formula::Var(v) => write!(f, "{v}"),
            Formula::Not(inner) => write!(f, "¬{inner}"),
            Formula::And(fs) | Formula::Or(fs) => {
                let sep = if matches!(self, Formula::And(_)) {
                    "∧"
                } else {
                    "∨"
                };
                write!(f, "(")?;
                for (i, child) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "{sep}")?;
                    }
                    write!(f, "{child}")?;
                }
                write!(f, ")")
            }
            Formula::Iff(l, r) => write!(f, "({l}⟺{r})"),
            Formula::Implies(l, r) => write!(f, "({l}⟹{r})"),
        }
    }
}

#[cfg(test)]
pub(crate) mod testing {
    use super::*;
    use rand::Rng;

    /// Random unfolded formula over variables `1..=num_vars`.
    pub fn random_formula<R: Rng>(rng: &mut R, num_vars: u32, depth: u32) -> Formula {
        if depth == 0 || rng.gen_bool(0.25) {
            return if rng.gen_bool(0.05) {
                Formula::Const(rng.gen())
            } else {
                Formula::Var(VarId::new(rng.gen_range(1..=num_vars)))
            };
        }
        let child = |rng: &mut R| Box::new(random_formula(rng, num_vars, depth - 1));
        match rng.gen_range(0..5) {
            0 => Formula::Not(child(rng)),
            1 => Formula::And((0..rng.gen_range(2..=3)).map(|_| *child(rng)).collect()),
            2 => Formula::Or((0..rng.gen_range(2..=3)).map(|_| *child(rng)).collect()),
            3 => Formula::Iff(child(rng), child(rng)),
            _ => Formula::Implies(child(rng), child(rng)),
        }
    }

    /// Every total assignment of variables `1..=num_vars`.
    pub fn all_assignments(num_vars: u32) -> impl Iterator<Item = Assignment> {
        (0u64..1 << num_vars).map(move |code| {
            let values: Vec<bool> = (0..num_vars).map(|i| code >> i & 1 == 1).collect();
            Assignment::from_values(&values)
        })
    }
}
