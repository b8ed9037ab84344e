use std::path::PathBuf;

use factorsat_core::{
    encode_with_conditions, parse_condition, BitPattern, ConditionExpr, EncodeError, Encoding,
    IntervalMode,
};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum ProblemKind {
    /// Some completion of the pattern is composite.
    #[default]
    Composite,
    /// Some completion has a nontrivial divisor in [L, U] or (L, U).
    Factoring,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum SolverChoice {
    #[default]
    Internal,
    /// Decode a model produced by another solver from the emitted DIMACS.
    External,
}

/// Everything a subcommand needs, already checked for consistency.
#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    pub pattern: Option<BitPattern>,
    pub problem: ProblemKind,
    pub lower: Option<u64>,
    pub upper: Option<u64>,
    pub interval: IntervalMode,
    pub conditions: Vec<String>,
    pub output: Option<PathBuf>,
    pub solver: SolverChoice,
    pub model: Option<PathBuf>,
    pub emit_model: Option<PathBuf>,
    pub budget: Option<u64>,
    pub exhaustive: bool,
    pub max_bits: usize,
    pub samples: usize,
    pub bench_range: (usize, usize),
    pub timing: bool,
    pub seed: u64,
}

impl RunConfig {
    pub fn pattern_from_args(
        pattern: Option<&str>,
        vector: Option<&str>,
    ) -> Result<Option<BitPattern>, CliError> {
        match (pattern, vector) {
            (Some(_), Some(_)) => Err(CliError::input(
                "--pattern and --pattern-vector are mutually exclusive",
            )),
            (Some(text), None) => BitPattern::parse(text)
                .map(Some)
                .map_err(|e| CliError::input(format!("--pattern {text:?}: {e}"))),
            (None, Some(text)) => BitPattern::parse_vector(text)
                .map(Some)
                .map_err(|e| CliError::input(format!("--pattern-vector {text:?}: {e}"))),
            (None, None) => Ok(None),
        }
    }

    pub fn require_pattern(&self) -> Result<&BitPattern, CliError> {
        self.pattern
            .as_ref()
            .ok_or_else(|| CliError::input("missing --pattern (or --pattern-vector)"))
    }

    /// Bounds are required for factoring and rejected otherwise.
    pub fn bounds(&self) -> Result<Option<(u64, u64)>, CliError> {
        match (self.problem, self.lower, self.upper) {
            (ProblemKind::Factoring, Some(l), Some(u)) => Ok(Some((l, u))),
            (ProblemKind::Factoring, _, _) => Err(CliError::input(
                "--problem factoring requires both --lower and --upper",
            )),
            (ProblemKind::Composite, None, None) => Ok(None),
            (ProblemKind::Composite, _, _) => Err(CliError::input(
                "--lower/--upper are only valid with --problem factoring",
            )),
        }
    }

    pub fn parsed_conditions(&self) -> Result<Vec<ConditionExpr>, CliError> {
        let mut out = Vec::with_capacity(self.conditions.len() + 1);
        if let Some((lower, upper)) = self.bounds()? {
            let range = ConditionExpr::divisor_in_range(lower, upper, self.interval)
                .map_err(|e| CliError::input(format!("--lower/--upper: {e}")))?;
            out.push(range);
        }
        for text in &self.conditions {
            out.push(
                parse_condition(text)
                    .map_err(|e| CliError::input(format!("--cond {text:?}: {e}")))?,
            );
        }
        Ok(out)
    }

    pub fn encoding(&self) -> Result<Encoding, CliError> {
        let pattern = self.require_pattern()?;
        let conditions = self.parsed_conditions()?;
        encode_with_conditions(pattern, &conditions).map_err(|e| match e {
            EncodeError::Tableau(e) => CliError::input(format!("--pattern {pattern}: {e}")),
            EncodeError::Condition(e) => CliError::input(format!("--cond: {e}")),
        })
    }

    pub fn check_bench_range(&self) -> Result<(), CliError> {
        let (lo, hi) = self.bench_range;
        if lo < 2 || hi > 256 || lo > hi {
            return Err(CliError::input(format!(
                "--min-n/--max-n: range {lo}..={hi} must lie within 2..=256"
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Status;

    fn factoring(lower: Option<u64>, upper: Option<u64>) -> RunConfig {
        RunConfig {
            pattern: Some(BitPattern::parse("100011").unwrap()),
            problem: ProblemKind::Factoring,
            lower,
            upper,
            ..RunConfig::default()
        }
    }

    #[test]
    fn bounds_present_iff_factoring() {
        assert_eq!(factoring(Some(4), Some(6)).bounds(), Ok(Some((4, 6))));
        assert_eq!(
            factoring(Some(4), None).bounds().unwrap_err().status,
            Status::InputError
        );
        let composite = RunConfig {
            lower: Some(1),
            ..RunConfig::default()
        };
        assert!(composite.bounds().is_err());
    }

    #[test]
    fn pattern_sources_are_exclusive() {
        assert!(RunConfig::pattern_from_args(Some("1-0"), Some("1,-,0")).is_err());
        assert_eq!(
            RunConfig::pattern_from_args(None, Some("1,-,0")).unwrap(),
            RunConfig::pattern_from_args(Some("1-0"), None).unwrap()
        );
    }

    #[test]
    fn empty_open_interval_is_an_input_error() {
        let cfg = RunConfig {
            interval: IntervalMode::Open,
            ..factoring(Some(5), Some(6))
        };
        assert_eq!(cfg.encoding().unwrap_err().status, Status::InputError);
    }

    #[test]
    fn bench_range_limits() {
        let with = |lo, hi| RunConfig {
            bench_range: (lo, hi),
            ..RunConfig::default()
        };
        assert!(with(2, 256).check_bench_range().is_ok());
        assert!(with(1, 8).check_bench_range().is_err());
        assert!(with(9, 8).check_bench_range().is_err());
        assert!(with(2, 257).check_bench_range().is_err());
    }
}
