//! A deterministic DPLL solver.
//!
//! Two-watched-literal unit propagation, chronological backtracking, and a
//! fixed branching rule: the lowest-numbered unassigned variable, tried
//! `true` first. No learning and no restarts, so the same CNF always yields
//! the same model.

mod witness;

use thiserror::Error;

use crate::formula::{Assignment, Cnf, Lit, VarId};

pub use witness::{decode_witness, FactorWitness, WitnessError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Sat(Assignment),
    Unsat,
}

impl Verdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Sat(_))
    }

    pub fn model(&self) -> Option<&Assignment> {
        match self {
            Verdict::Sat(a) => Some(a),
            Verdict::Unsat => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("decision budget exhausted after {0} decisions")]
    BudgetExceeded(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
}

/// Solves with no decision limit.
pub fn solve(cnf: &Cnf) -> Verdict {
    solve_with_budget(cnf, u64::MAX).expect("unbounded search cannot exceed its budget")
}

pub fn solve_with_budget(cnf: &Cnf, budget: u64) -> Result<Verdict, SolveError> {
    Dpll::new(cnf).run(budget).0
}

/// Like [`solve_with_budget`], also reporting search statistics.
pub fn solve_with_stats(cnf: &Cnf, budget: u64) -> (Result<Verdict, SolveError>, SolveStats) {
    Dpll::new(cnf).run(budget)
}

struct Level {
    trail_start: usize,
    decision: Lit,
    flipped: bool,
}

struct Dpll<'a> {
    cnf: &'a Cnf,
    clauses: Vec<Vec<Lit>>,
    /// Clause indices watching each literal code; the watched literals of a
    /// clause are its first two.
    watches: Vec<Vec<usize>>,
    values: Vec<Option<bool>>,
    trail: Vec<Lit>,
    head: usize,
    levels: Vec<Level>,
    units: Vec<Lit>,
    stats: SolveStats,
}

impl<'a> Dpll<'a> {
    fn new(cnf: &'a Cnf) -> Self {
        let n = cnf.num_vars() as usize;
        let mut watches = vec![Vec::new(); 2 * (n + 1)];
        let mut clauses = Vec::with_capacity(cnf.num_clauses());
        let mut units = Vec::new();
        for clause in cnf.clauses() {
            let mut c = clause.clone();
            c.sort();
            c.dedup();
            if c.windows(2).any(|w| w[0].var() == w[1].var()) {
                continue; // tautology
            }
            if c.len() == 1 {
                units.push(c[0]);
                continue;
            }
            let idx = clauses.len();
            watches[c[0].code()].push(idx);
            watches[c[1].code()].push(idx);
            clauses.push(c);
        }
        Dpll {
            cnf,
            clauses,
            watches,
            values: vec![None; n + 1],
            trail: Vec::with_capacity(n),
            head: 0,
            levels: Vec::new(),
            units,
            stats: SolveStats::default(),
        }
    }

    fn value(&self, lit: Lit) -> Option<bool> {
        self.values[lit.var().index() as usize].map(|v| v == lit.is_positive())
    }

    /// Assigns `lit` true; returns false if it is already false.
    fn enqueue(&mut self, lit: Lit) -> bool {
        match self.value(lit) {
            Some(v) => v,
            None => {
                self.values[lit.var().index() as usize] = Some(lit.is_positive());
                self.trail.push(lit);
                true
            }
        }
    }

    /// Returns false on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let falsified = !self.trail[self.head];
            self.head += 1;
            self.stats.propagations += 1;
            let mut watching = std::mem::take(&mut self.watches[falsified.code()]);
            let mut i = 0;
            let mut ok = true;
            while i < watching.len() {
                let ci = watching[i];
                let clause = &mut self.clauses[ci];
                if clause[0] == falsified {
                    clause.swap(0, 1);
                }
                let other = clause[0];
                let other_value =
                    self.values[other.var().index() as usize].map(|v| v == other.is_positive());
                if other_value == Some(true) {
                    i += 1;
                    continue;
                }
                let replacement = (2..clause.len()).find(|&k| {
                    let l = clause[k];
                    self.values[l.var().index() as usize].map(|v| v == l.is_positive())
                        != Some(false)
                });
                if let Some(k) = replacement {
                    clause.swap(1, k);
                    let new_watch = clause[1].code();
                    self.watches[new_watch].push(ci);
                    watching.swap_remove(i);
                    continue;
                }
                i += 1;
                if other_value == Some(false) || !self.enqueue(other) {
                    ok = false;
                    break;
                }
            }
            self.watches[falsified.code()] = watching;
            if !ok {
                self.stats.conflicts += 1;
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, trail_len: usize) {
        for lit in self.trail.drain(trail_len..) {
            self.values[lit.var().index() as usize] = None;
        }
        self.head = trail_len;
    }

    /// Flips the most recent unflipped decision; false when none is left.
    fn backtrack(&mut self) -> bool {
        while let Some(level) = self.levels.pop() {
            self.undo_to(level.trail_start);
            if !level.flipped {
                let flipped = !level.decision;
                self.levels.push(Level {
                    trail_start: self.trail.len(),
                    decision: flipped,
                    flipped: true,
                });
                self.enqueue(flipped);
                return true;
            }
        }
        false
    }

    fn run(mut self, budget: u64) -> (Result<Verdict, SolveError>, SolveStats) {
        let n = self.cnf.num_vars();
        if self.cnf.num_clauses() == 0 {
            // Vacuously satisfiable; by convention every variable is false.
            return (
                Ok(Verdict::Sat(Assignment::from_values(&vec![
                    false;
                    n as usize
                ]))),
                self.stats,
            );
        }
        for lit in std::mem::take(&mut self.units) {
            if !self.enqueue(lit) {
                return (Ok(Verdict::Unsat), self.stats);
            }
        }
        // Every variable below `cursor` is assigned.
        let mut cursor = 1u32;
        loop {
            if !self.propagate() {
                if !self.backtrack() {
                    return (Ok(Verdict::Unsat), self.stats);
                }
                cursor = self.levels.last().map_or(1, |l| l.decision.var().index());
                continue;
            }
            while cursor <= n && self.values[cursor as usize].is_some() {
                cursor += 1;
            }
            if cursor > n {
                return (Ok(Verdict::Sat(self.model())), self.stats);
            }
            if self.stats.decisions >= budget {
                return (
                    Err(SolveError::BudgetExceeded(self.stats.decisions)),
                    self.stats,
                );
            }
            self.stats.decisions += 1;
            let decision = VarId::new(cursor).positive();
            self.levels.push(Level {
                trail_start: self.trail.len(),
                decision,
                flipped: false,
            });
            self.enqueue(decision);
        }
    }

    fn model(&self) -> Assignment {
        let values: Vec<bool> = self.values[1..].iter().map(|v| v.expect("total")).collect();
        let model = Assignment::from_values(&values);
        assert!(
            self.cnf.is_satisfied_by(&model),
            "solver produced a non-model"
        );
        model
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lit(v: i64) -> Lit {
        Lit::from_dimacs(v).unwrap()
    }

    fn cnf(num_vars: u32, clauses: &[&[i64]]) -> Cnf {
        Cnf::new(
            num_vars,
            clauses
                .iter()
                .map(|c| c.iter().map(|&v| lit(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn brute_force_sat(c: &Cnf) -> bool {
        let n = c.num_vars();
        (0u64..1 << n).any(|code| {
            let values: Vec<bool> = (0..n).map(|i| code >> i & 1 == 1).collect();
            c.is_satisfied_by(&Assignment::from_values(&values))
        })
    }

    fn random_3cnf(rng: &mut ChaCha8Rng, n: u32, m: usize) -> Cnf {
        let clauses = (0..m)
            .map(|_| {
                (0..3)
                    .map(|_| {
                        let v = rng.gen_range(1..=n as i64);
                        lit(if rng.gen() { v } else { -v })
                    })
                    .collect()
            })
            .collect();
        Cnf::new(n, clauses).unwrap()
    }

    #[test]
    fn empty_formula_is_all_false() {
        let c = Cnf::new(3, vec![]).unwrap();
        assert_eq!(
            solve(&c),
            Verdict::Sat(Assignment::from_values(&[false, false, false]))
        );
    }

    #[test]
    fn direct_contradiction() {
        assert_eq!(solve(&cnf(1, &[&[1], &[-1]])), Verdict::Unsat);
    }

    #[test]
    fn decides_true_first() {
        let v = solve(&cnf(3, &[&[1, 2, 3], &[-1, -2]]));
        assert_eq!(
            v,
            Verdict::Sat(Assignment::from_values(&[true, false, true]))
        );
    }

    #[test]
    fn random_3cnf_against_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let (mut sat, mut unsat) = (0, 0);
        for i in 0..500 {
            // around the phase transition so both verdicts occur
            let m = 40 + (i % 30);
            let c = random_3cnf(&mut rng, 12, m);
            let verdict = solve(&c);
            assert_eq!(verdict.is_sat(), brute_force_sat(&c), "instance {i}");
            if let Verdict::Sat(model) = &verdict {
                assert!(c.is_satisfied_by(model));
                sat += 1;
            } else {
                unsat += 1;
            }
        }
        assert!(sat > 50 && unsat > 50, "sat={sat} unsat={unsat}");
    }

    #[test]
    fn small_cnfs_up_to_fourteen_vars() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for n in 1..=14u32 {
            for _ in 0..10 {
                let m = rng.gen_range(1..=(5 * n as usize));
                let clauses = (0..m)
                    .map(|_| {
                        let len = rng.gen_range(1..=4);
                        (0..len)
                            .map(|_| {
                                let v = rng.gen_range(1..=n as i64);
                                lit(if rng.gen() { v } else { -v })
                            })
                            .collect()
                    })
                    .collect();
                let c = Cnf::new(n, clauses).unwrap();
                assert_eq!(solve(&c).is_sat(), brute_force_sat(&c));
            }
        }
    }

    #[test]
    fn deterministic_models() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let c = random_3cnf(&mut rng, 20, 60);
            assert_eq!(solve(&c), solve(&c));
        }
    }

    #[test]
    fn budget() {
        // pigeonhole 4 into 3 needs many decisions
        let hole = |p: i64, h: i64| p * 3 + h + 1;
        let mut clauses: Vec<Vec<i64>> = (0..4)
            .map(|p| (0..3).map(|h| hole(p, h)).collect())
            .collect();
        for h in 0..3 {
            for p in 0..4 {
                for q in p + 1..4 {
                    clauses.push(vec![-hole(p, h), -hole(q, h)]);
                }
            }
        }
        let refs: Vec<&[i64]> = clauses.iter().map(Vec::as_slice).collect();
        let c = cnf(12, &refs);
        assert_eq!(solve_with_budget(&c, 2), Err(SolveError::BudgetExceeded(2)));
        assert_eq!(solve(&c), Verdict::Unsat);
    }
}
