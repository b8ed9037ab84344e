//! Reference answers by enumeration and trial division.

use crate::conditions::IntervalMode;
use crate::pattern::{BitPattern, PatternError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleWitness {
    /// A completion and a factor pair, smaller factor first.
    Composite {
        value: u64,
        factors: (u64, u64),
    },
    Prime(u64),
    Divisor(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleVerdict {
    pub answer: bool,
    pub witness: Option<OracleWitness>,
}

impl OracleVerdict {
    fn no() -> Self {
        OracleVerdict {
            answer: false,
            witness: None,
        }
    }

    fn yes(witness: OracleWitness) -> Self {
        OracleVerdict {
            answer: true,
            witness: Some(witness),
        }
    }
}

/// Smallest divisor `d` with `1 < d < v`, if any.
pub fn smallest_factor(v: u64) -> Option<u64> {
    if v < 4 {
        return None;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= v {
        if v.is_multiple_of(d) {
            return Some(d);
        }
        d += 1;
    }
    None
}

/// 0 and 1 are neither prime nor composite.
pub fn is_composite(v: u64) -> bool {
    smallest_factor(v).is_some()
}

pub fn is_prime(v: u64) -> bool {
    v >= 2 && !is_composite(v)
}

/// Does some completion of `p` factor nontrivially?
pub fn oracle_expcomposite(p: &BitPattern) -> Result<OracleVerdict, PatternError> {
    for v in p.completions()? {
        if let Some(d) = smallest_factor(v) {
            return Ok(OracleVerdict::yes(OracleWitness::Composite {
                value: v,
                factors: (d, v / d),
            }));
        }
    }
    Ok(OracleVerdict::no())
}

/// Is some completion of `p` prime?
pub fn oracle_exprime(p: &BitPattern) -> Result<OracleVerdict, PatternError> {
    Ok(p.completions()?
        .into_iter()
        .find(|&v| is_prime(v))
        .map_or_else(OracleVerdict::no, |v| {
            OracleVerdict::yes(OracleWitness::Prime(v))
        }))
}

/// Does `n` have a divisor `d`, `1 < d < n`, inside the interval?
pub fn oracle_factoring(n: u64, lower: u64, upper: u64, mode: IntervalMode) -> OracleVerdict {
    let inside = |d: u64| match mode {
        IntervalMode::Closed => lower <= d && d <= upper,
        IntervalMode::Open => lower < d && d < upper,
    };
    (2..n)
        .find(|&d| n.is_multiple_of(d) && inside(d))
        .map_or_else(OracleVerdict::no, |d| {
            OracleVerdict::yes(OracleWitness::Divisor(d))
        })
}
