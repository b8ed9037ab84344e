//! Encoder-plus-solver verdicts checked against the brute-force oracle.

use std::io::Write;

use factorsat_core::oracle::{oracle_expcomposite, oracle_factoring};
use factorsat_core::{
    decode_witness, encode_composite, encode_factoring, solve_with_budget, BitPattern, Digit,
    EncodeError, Encoding, IntervalMode, TableauError, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{ProblemKind, RunConfig};
use crate::error::{CliError, Status};

/// Widest pattern enumerated exhaustively (3^12 instances).
pub const MAX_EXHAUSTIVE_BITS: usize = 12;
/// Widest sampled pattern; the oracle enumerates up to 2^20 completions.
pub const MAX_SAMPLED_BITS: usize = 20;
pub const MAX_FACTORING_BITS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Disagreement {
    pub problem: &'static str,
    pub instance: String,
    pub encoder: String,
    pub oracle: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub instances: usize,
    pub sat: usize,
    pub unsat: usize,
    /// SAT models that failed to decode into a valid witness.
    pub witness_violations: usize,
    pub disagreements: Vec<Disagreement>,
}

impl VerifyReport {
    /// The header row is written even when there are no disagreements.
    pub fn write_csv(&self, out: &mut dyn Write) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["problem", "instance", "encoder", "oracle", "detail"])?;
        for d in &self.disagreements {
            w.write_record([d.problem, &d.instance, &d.encoder, &d.oracle, &d.detail])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn summary(&self) -> String {
        format!(
            "{} instances, {} sat, {} unsat, {} witness violations, {} disagreements",
            self.instances,
            self.sat,
            self.unsat,
            self.witness_violations,
            self.disagreements.len()
        )
    }

    fn merge(mut self, other: VerifyReport) -> VerifyReport {
        self.instances += other.instances;
        self.sat += other.sat;
        self.unsat += other.unsat;
        self.witness_violations += other.witness_violations;
        self.disagreements.extend(other.disagreements);
        self
    }
}

/// One factoring instance: does `n` have a divisor in the interval?
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactoringCase {
    pub n: u64,
    pub lower: u64,
    pub upper: u64,
    pub mode: IntervalMode,
}

impl FactoringCase {
    fn label(&self) -> String {
        let (open, close) = match self.mode {
            IntervalMode::Closed => ('[', ']'),
            IntervalMode::Open => ('(', ')'),
        };
        format!("{} {open}{} {}{close}", self.n, self.lower, self.upper)
    }

    fn contains(&self, d: u64) -> bool {
        match self.mode {
            IntervalMode::Closed => self.lower <= d && d <= self.upper,
            IntervalMode::Open => self.lower < d && d < self.upper,
        }
    }
}

/// Every pattern over `{0, 1, -}` of length `1..=max_bits`.
pub fn all_patterns(max_bits: usize) -> Vec<BitPattern> {
    const DIGITS: [Digit; 3] = [Digit::Zero, Digit::One, Digit::Free];
    let mut out = Vec::new();
    for len in 1..=max_bits {
        for mut code in 0..3usize.pow(len as u32) {
            let digits = (0..len)
                .map(|_| {
                    let d = DIGITS[code % 3];
                    code /= 3;
                    d
                })
                .collect();
            out.push(BitPattern::new(digits).expect("nonempty"));
        }
    }
    out
}

pub fn sample_patterns(samples: usize, max_bits: usize, seed: u64) -> Vec<BitPattern> {
    const DIGITS: [Digit; 3] = [Digit::Zero, Digit::One, Digit::Free];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let len = rng.gen_range(2..=max_bits.max(2));
            BitPattern::new((0..len).map(|_| DIGITS[rng.gen_range(0..3)]).collect())
                .expect("nonempty")
        })
        .collect()
}

/// Random `n < 2^max_n` with a random interval `lower < upper <= n`.
pub fn sample_factoring(samples: usize, max_n: u32, seed: u64) -> Vec<FactoringCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let n = rng.gen_range(2..1u64 << max_n);
            let lower = rng.gen_range(0..n);
            let upper = rng.gen_range(lower + 1..=n);
            let mode = if rng.gen() {
                IntervalMode::Closed
            } else {
                IntervalMode::Open
            };
            FactoringCase {
                n,
                lower,
                upper,
                mode,
            }
        })
        .collect()
}

enum Outcome {
    Sat(Result<(), String>),
    Unsat,
    Unknown,
}

fn run_encoding(
    e: &Encoding,
    budget: u64,
    check: impl Fn(u64, u64, u64) -> Result<(), String>,
) -> Outcome {
    match solve_with_budget(e.cnf(), budget) {
        Ok(Verdict::Sat(model)) => Outcome::Sat(
            decode_witness(&model, e.tableau(), e.pattern())
                .map_err(|err| err.to_string())
                .and_then(|w| check(w.product, w.multiplicand, w.multiplier)),
        ),
        Ok(Verdict::Unsat) => Outcome::Unsat,
        Err(_) => Outcome::Unknown,
    }
}

fn tally(
    problem: &'static str,
    instance: String,
    outcome: Outcome,
    expected: bool,
) -> VerifyReport {
    let mut r = VerifyReport {
        instances: 1,
        ..VerifyReport::default()
    };
    let yes_no = |b: bool| if b { "SAT" } else { "UNSAT" }.to_string();
    let mut disagree = |encoder: &str, detail: String| {
        r.disagreements.push(Disagreement {
            problem,
            instance: instance.clone(),
            encoder: encoder.to_string(),
            oracle: yes_no(expected),
            detail,
        })
    };
    match outcome {
        Outcome::Sat(check) => {
            if let Err(detail) = check {
                disagree("SAT", detail);
                r.witness_violations += 1;
            } else if !expected {
                disagree("SAT", String::new());
            }
            r.sat += 1;
        }
        Outcome::Unsat => {
            if expected {
                disagree("UNSAT", String::new());
            }
            r.unsat += 1;
        }
        Outcome::Unknown => disagree("UNKNOWN", "decision budget exhausted".into()),
    }
    r
}

/// A one-digit pattern has no tableau; no one-digit number is composite,
/// so the encoder's answer is UNSAT.
pub fn check_composite(p: &BitPattern, budget: u64) -> VerifyReport {
    let expected = oracle_expcomposite(p)
        .expect("free digits within the enumeration guard")
        .answer;
    let outcome = match encode_composite(p, &[]) {
        Ok(e) => run_encoding(&e, budget, |_, _, _| Ok(())),
        Err(EncodeError::Tableau(TableauError::WidthTooSmall(_))) => Outcome::Unsat,
        Err(err) => unreachable!("composite encoding of {p} failed: {err}"),
    };
    tally("composite", p.to_string(), outcome, expected)
}

/// An empty interval or a one-digit `n` cannot produce a divisor, so
/// the encoder's answer is UNSAT.
pub fn check_factoring(case: &FactoringCase, budget: u64) -> VerifyReport {
    let expected = oracle_factoring(case.n, case.lower, case.upper, case.mode).answer;
    let pattern = BitPattern::of_number(case.n);
    let outcome = match encode_factoring(&pattern, case.lower, case.upper, case.mode) {
        Ok(e) => run_encoding(&e, budget, |product, a, b| {
            if product != case.n {
                Err(format!("product {product} != {}", case.n))
            } else if !case.contains(a) && !case.contains(b) {
                Err(format!("neither {a} nor {b} lies in the interval"))
            } else {
                Ok(())
            }
        }),
        Err(EncodeError::Tableau(TableauError::WidthTooSmall(_)) | EncodeError::Condition(_)) => {
            Outcome::Unsat
        }
    };
    tally("factoring", case.label(), outcome, expected)
}

pub fn verify_patterns(patterns: &[BitPattern], budget: u64) -> VerifyReport {
    finish(patterns.par_iter().map(|p| check_composite(p, budget)))
}

pub fn verify_factoring(cases: &[FactoringCase], budget: u64) -> VerifyReport {
    finish(cases.par_iter().map(|c| check_factoring(c, budget)))
}

fn finish(reports: impl ParallelIterator<Item = VerifyReport>) -> VerifyReport {
    let mut r = reports.reduce(VerifyReport::default, VerifyReport::merge);
    r.disagreements.sort();
    r
}

pub fn run_verify(cfg: &RunConfig, out: &mut dyn Write) -> Result<Status, CliError> {
    let budget = cfg.budget.unwrap_or(u64::MAX);
    let report = match cfg.problem {
        ProblemKind::Composite => {
            cfg.bounds()?;
            let patterns = if cfg.exhaustive {
                if cfg.max_bits > MAX_EXHAUSTIVE_BITS {
                    return Err(CliError::input(format!(
                        "--max-bits {} exceeds {MAX_EXHAUSTIVE_BITS} for --exhaustive",
                        cfg.max_bits
                    )));
                }
                all_patterns(cfg.max_bits)
            } else {
                if cfg.max_bits > MAX_SAMPLED_BITS {
                    return Err(CliError::input(format!(
                        "--max-bits {} exceeds {MAX_SAMPLED_BITS}",
                        cfg.max_bits
                    )));
                }
                sample_patterns(cfg.samples, cfg.max_bits, cfg.seed)
            };
            verify_patterns(&patterns, budget)
        }
        ProblemKind::Factoring => {
            if cfg.exhaustive {
                return Err(CliError::input(
                    "--exhaustive applies to --problem composite only",
                ));
            }
            if cfg.lower.is_some() || cfg.upper.is_some() {
                return Err(CliError::input(
                    "verify draws its own intervals; drop --lower/--upper",
                ));
            }
            if !(2..=MAX_FACTORING_BITS).contains(&cfg.max_bits) {
                return Err(CliError::input(format!(
                    "--max-n {} must lie within 2..={MAX_FACTORING_BITS}",
                    cfg.max_bits
                )));
            }
            verify_factoring(
                &sample_factoring(cfg.samples, cfg.max_bits as u32, cfg.seed),
                budget,
            )
        }
    };
    match &cfg.output {
        Some(path) => {
            let mut file = std::fs::File::create(path).map_err(|err| CliError::io(path, err))?;
            report
                .write_csv(&mut file)
                .map_err(|err| CliError::input(format!("{}: {err}", path.display())))?;
            writeln!(out, "{}", report.summary())?;
        }
        None => {
            report
                .write_csv(out)
                .map_err(|err| CliError::input(err.to_string()))?;
            eprintln!("{}", report.summary());
        }
    }
    if let Some(first) = report.disagreements.first() {
        return Err(CliError::new(
            Status::Disagreement,
            format!(
                "{} disagreement(s); first: {} {}",
                report.disagreements.len(),
                first.problem,
                first.instance
            ),
        ));
    }
    Ok(Status::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_counts() {
        assert_eq!(all_patterns(3).len(), 3 + 9 + 27);
        assert!(sample_patterns(50, 6, 1)
            .iter()
            .all(|p| (2..=6).contains(&p.len())));
    }

    #[test]
    fn sampled_intervals_are_nonempty() {
        for c in sample_factoring(200, 10, 3) {
            assert!(c.lower < c.upper && c.upper <= c.n && c.n < 1 << 10);
        }
    }

    #[test]
    fn csv_quotes_details() {
        let report = VerifyReport {
            disagreements: vec![Disagreement {
                problem: "composite",
                instance: "1-0".into(),
                encoder: "SAT".into(),
                oracle: "UNSAT".into(),
                detail: "2 x 3, \"bad\"".into(),
            }],
            ..VerifyReport::default()
        };
        let mut out = Vec::new();
        report.write_csv(&mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "problem,instance,encoder,oracle,detail\ncomposite,1-0,SAT,UNSAT,\"2 x 3, \"\"bad\"\"\"\n"
        );
    }

    #[test]
    fn one_digit_patterns_agree() {
        for p in all_patterns(1) {
            assert!(check_composite(&p, u64::MAX).disagreements.is_empty());
        }
    }
}
