//! End-to-end reduction: pattern (plus side conditions) to CNF.

use thiserror::Error;

use crate::conditions::{
    compile_conditions, encode_nontrivial, ConditionError, ConditionExpr, IntervalMode,
};
use crate::formula::{AuxMap, Cnf, Formula, Tseitin};
use crate::pattern::BitPattern;
use crate::tableau::{Constraint, ConstraintKind, RowRef, Tableau, TableauError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Condition(#[from] ConditionError),
}

/// A compiled instance. The CNF is satisfiable iff some completion of the
/// pattern is `A · B` with `A, B ≥ 2` inside the tableau widths and every
/// side condition holds.
#[derive(Debug, Clone)]
pub struct Encoding {
    pattern: BitPattern,
    tableau: Tableau,
    constraints: Vec<Constraint>,
    conditions: Vec<Formula>,
    cnf: Cnf,
    aux: AuxMap,
}

impl Encoding {
    pub fn pattern(&self) -> &BitPattern {
        &self.pattern
    }

    pub fn tableau(&self) -> &Tableau {
        &self.tableau
    }

    /// Multiplication constraints and fixed-digit units.
    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Nontriviality followed by the caller's side conditions.
    pub fn conditions(&self) -> &[Formula] {
        &self.conditions
    }

    pub fn cnf(&self) -> &Cnf {
        &self.cnf
    }

    pub fn aux_map(&self) -> &AuxMap {
        &self.aux
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.constraints
            .iter()
            .map(|c| &c.formula)
            .chain(&self.conditions)
    }

    /// Total tokens over every formula handed to the CNF lowering.
    pub fn token_count(&self) -> usize {
        self.formulas().map(Formula::token_count).sum()
    }

    /// Largest multiplication constraint; side conditions are excluded
    /// since their size depends on operand widths.
    pub fn max_constraint_tokens(&self) -> usize {
        self.constraints
            .iter()
            .map(|c| c.formula.token_count())
            .max()
            .unwrap_or(0)
    }

    pub fn max_tokens_of(&self, kind: ConstraintKind) -> Option<usize> {
        self.constraints
            .iter()
            .filter(|c| c.kind == kind)
            .map(|c| c.formula.token_count())
            .max()
    }

    /// Role string for every CNF variable: tableau roles, then `AUX<k>`.
    pub fn roles(&self) -> Vec<String> {
        let mut roles: Vec<String> = self
            .tableau
            .roles()
            .iter()
            .map(ToString::to_string)
            .collect();
        let aux_count = self.cnf.num_vars() as usize - roles.len();
        roles.extend((1..=aux_count).map(|k| format!("AUX{k}")));
        roles
    }
}

/// Reduces "some completion of `pattern` is composite" plus `extra`
/// formulas over the tableau variables (see [`Tableau::build`] for their
/// numbering).
pub fn encode_composite(pattern: &BitPattern, extra: &[Formula]) -> Result<Encoding, EncodeError> {
    let tableau = Tableau::build(pattern)?;
    Ok(assemble(pattern, tableau, extra.to_vec()))
}

pub fn encode_with_conditions(
    pattern: &BitPattern,
    conditions: &[ConditionExpr],
) -> Result<Encoding, EncodeError> {
    let tableau = Tableau::build(pattern)?;
    let compiled = compile_conditions(conditions, &tableau)?;
    Ok(assemble(pattern, tableau, vec![compiled]))
}

/// Divisor search: some completion has a nontrivial divisor in the interval.
pub fn encode_factoring(
    pattern: &BitPattern,
    lower: u64,
    upper: u64,
    mode: IntervalMode,
) -> Result<Encoding, EncodeError> {
    let condition = ConditionExpr::divisor_in_range(lower, upper, mode)?;
    encode_with_conditions(pattern, &[condition])
}

fn assemble(pattern: &BitPattern, tableau: Tableau, extra: Vec<Formula>) -> Encoding {
    let constraints = tableau.multiplication_constraints(pattern);
    let mut conditions = vec![
        encode_nontrivial(RowRef::Multiplicand, &tableau),
        encode_nontrivial(RowRef::Multiplier, &tableau),
    ];
    conditions.extend(extra.into_iter().filter(|f| *f != Formula::TRUE));

    let mut lowering = Tseitin::new(tableau.num_vars());
    for f in constraints.iter().map(|c| &c.formula).chain(&conditions) {
        lowering.assert(f);
    }
    let (cnf, aux) = lowering.finish();
    Encoding {
        pattern: pattern.clone(),
        tableau,
        constraints,
        conditions,
        cnf,
        aux,
    }
}
