//! Definitional (Tseitin) lowering of formulas to CNF.
//!
//! Every compound subformula below the top level gets one auxiliary
//! variable `t` with clauses for both directions of `t ⟺ node`, so any
//! assignment of the input variables extends to exactly one assignment of
//! the auxiliaries. Negation never allocates: it flips the child literal.
//! Structurally equal subformulas share one auxiliary.

use std::collections::HashMap;

use super::{Cnf, Formula, Lit, VarId};

/// Auxiliary variable allocated for each lowered subformula.
pub type AuxMap = HashMap<Formula, VarId>;

pub struct Tseitin {
    next_var: u32,
    clauses: Vec<Vec<Lit>>,
    aux: AuxMap,
}

impl Tseitin {
    /// Auxiliary variables are numbered from `num_input_vars + 1`.
    pub fn new(num_input_vars: u32) -> Self {
        Tseitin {
            next_var: num_input_vars,
            clauses: Vec::new(),
            aux: AuxMap::new(),
        }
    }

    fn fresh(&mut self) -> VarId {
        self.next_var += 1;
        VarId::new(self.next_var)
    }

    /// Adds clauses forcing `f` to hold.
    pub fn assert(&mut self, f: &Formula) {
        assert!(
            f.max_var() <= self.next_var || self.aux.is_empty(),
            "input variables must be declared before auxiliaries are allocated"
        );
        self.next_var = self.next_var.max(f.max_var());
        match f {
            Formula::Const(true) => {}
            Formula::Const(false) => {
                // A fresh variable pinned both ways keeps every clause non-empty.
                let x = self.fresh();
                self.clauses.push(vec![x.positive()]);
                self.clauses.push(vec![x.negative()]);
            }
            Formula::And(children) => {
                for child in children {
                    self.assert(child);
                }
            }
            Formula::Or(children) => {
                let clause = children.iter().map(|c| self.lower(c)).collect();
                self.clauses.push(clause);
            }
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Or(children) => {
                    for child in children {
                        self.assert(&Formula::not(child.clone()));
                    }
                }
                Formula::And(children) => {
                    let clause = children.iter().map(|c| !self.lower(c)).collect();
                    self.clauses.push(clause);
                }
                _ => {
                    let lit = self.lower(f);
                    self.clauses.push(vec![lit]);
                }
            },
            Formula::Iff(l, r) => {
                let (a, b) = (self.lower(l), self.lower(r));
                self.clauses.push(vec![!a, b]);
                self.clauses.push(vec![a, !b]);
            }
            Formula::Implies(l, r) => {
                let (a, b) = (self.lower(l), self.lower(r));
                self.clauses.push(vec![!a, b]);
            }
            Formula::Var(v) => self.clauses.push(vec![v.positive()]),
        }
    }

    /// A literal equivalent to `f` under the clauses emitted so far.
    fn lower(&mut self, f: &Formula) -> Lit {
        match f {
            Formula::Var(v) => return v.positive(),
            Formula::Not(inner) => return !self.lower(inner),
            _ => {}
        }
        if let Some(&t) = self.aux.get(f) {
            return t.positive();
        }
        let t = match f {
            Formula::Const(b) => {
                let t = self.fresh();
                self.clauses.push(vec![Lit::new(t, *b)]);
                t
            }
            Formula::And(children) => {
                let lits: Vec<Lit> = children.iter().map(|c| self.lower(c)).collect();
                let t = self.fresh();
                for &l in &lits {
                    self.clauses.push(vec![t.negative(), l]);
                }
                let mut back = vec![t.positive()];
                back.extend(lits.iter().map(|&l| !l));
                self.clauses.push(back);
                t
            }
            Formula::Or(children) => {
                let lits: Vec<Lit> = children.iter().map(|c| self.lower(c)).collect();
                let t = self.fresh();
                for &l in &lits {
                    self.clauses.push(vec![t.positive(), !l]);
                }
                let mut forward = vec![t.negative()];
                forward.extend(lits);
                self.clauses.push(forward);
                t
            }
            Formula::Iff(l, r) => {
                let (a, b) = (self.lower(l), self.lower(r));
                let t = self.fresh();
                self.clauses.push(vec![t.negative(), !a, b]);
                self.clauses.push(vec![t.negative(), a, !b]);
                self.clauses.push(vec![t.positive(), a, b]);
                self.clauses.push(vec![t.positive(), !a, !b]);
                t
            }
            Formula::Implies(l, r) => {
                let (a, b) = (self.lower(l), self.lower(r));
                let t = self.fresh();
                self.clauses.push(vec![t.negative(), !a, b]);
                self.clauses.push(vec![t.positive(), a]);
                self.clauses.push(vec![t.positive(), !b]);
                t
            }
            Formula::Var(_) | Formula::Not(_) => unreachable!(),
        };
        self.aux.insert(f.clone(), t);
        t.positive()
    }

    pub fn finish(self) -> (Cnf, AuxMap) {
        let cnf =
            Cnf::new(self.next_var, self.clauses).expect("lowering emits well-formed clauses");
        (cnf, self.aux)
    }
}

/// Lowers the conjunction of `formulas`, placing auxiliaries above the
/// largest variable that occurs in them.
pub fn tseitin(formulas: &[Formula]) -> (Cnf, AuxMap) {
    let base = formulas.iter().map(Formula::max_var).max().unwrap_or(0);
    let mut t = Tseitin::new(base);
    for f in formulas {
        t.assert(f);
    }
    t.finish()
}
