//! Partially-specified binary numbers.
//!
//! A [`BitPattern`] is a most-significant-digit-first sequence over
//! `{0, 1, -}` where `-` marks a free digit. Its completions are the
//! integers obtained by assigning every free digit.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest number of free digits [`BitPattern::completions`] will enumerate.
pub const MAX_ENUMERATED_FREE: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("empty pattern")]
    EmptyPattern,
    /// 1-based position of the offending character.
    #[error("invalid character {1:?} at position {0}")]
    InvalidCharacter(usize, char),
    #[error("{0} free digits exceed the enumeration limit of {MAX_ENUMERATED_FREE}")]
    TooManyFreeDigits(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Digit {
    Zero,
    One,
    Free,
}

impl Digit {
    pub fn from_char(c: char) -> Option<Digit> {
        match c {
            '0' => Some(Digit::Zero),
            '1' => Some(Digit::One),
            '-' => Some(Digit::Free),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Digit::Zero => '0',
            Digit::One => '1',
            Digit::Free => '-',
        }
    }

    /// The fixed value of this digit, or `None` when free.
    pub fn fixed(self) -> Option<bool> {
        match self {
            Digit::Zero => Some(false),
            Digit::One => Some(true),
            Digit::Free => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitPattern {
    digits: Vec<Digit>,
}

impl BitPattern {
    pub fn new(digits: Vec<Digit>) -> Result<Self, PatternError> {
        if digits.is_empty() {
            return Err(PatternError::EmptyPattern);
        }
        Ok(BitPattern { digits })
    }

    /// Parses the `0`/`1`/`-` text form, most significant digit first.
    pub fn parse(text: &str) -> Result<Self, PatternError> {
        if text.is_empty() {
            return Err(PatternError::EmptyPattern);
        }
        let digits = text
            .chars()
            .enumerate()
            .map(|(i, c)| Digit::from_char(c).ok_or(PatternError::InvalidCharacter(i + 1, c)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BitPattern { digits })
    }

    /// Parses the comma-separated vector form `1,0,1,-,1`.
    pub fn parse_vector(text: &str) -> Result<Self, PatternError> {
        let mut digits = Vec::new();
        let mut position = 0;
        for item in text.split(',') {
            let item = item.trim();
            let mut chars = item.chars();
            let c = chars.next().ok_or(PatternError::EmptyPattern)?;
            position += 1;
            if chars.next().is_some() {
                let bad = item.chars().nth(1).unwrap_or(c);
                return Err(PatternError::InvalidCharacter(position, bad));
            }
            digits.push(Digit::from_char(c).ok_or(PatternError::InvalidCharacter(position, c))?);
        }
        BitPattern::new(digits)
    }

    /// The fully fixed pattern of `value` written in exactly `width` digits.
    ///
    /// # Panics
    ///
    /// If `width` is zero or `value` does not fit.
    pub fn from_value(value: u64, width: usize) -> Self {
        assert!(width >= 1, "width must be positive");
        assert!(
            width >= 64 || value >> width == 0,
            "{value} does not fit in {width} bits"
        );
        let digits = (0..width)
            .rev()
            .map(|k| {
                if k < 64 && (value >> k) & 1 == 1 {
                    Digit::One
                } else {
                    Digit::Zero
                }
            })
            .collect();
        BitPattern { digits }
    }

    /// `value` in its minimal binary width (at least one digit).
    pub fn of_number(value: u64) -> Self {
        let width = (64 - value.leading_zeros() as usize).max(1);
        BitPattern::from_value(value, width)
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digits, most significant first.
    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    /// Digit at LSB-first column `k`.
    pub fn column(&self, k: usize) -> Digit {
        self.digits[self.digits.len() - 1 - k]
    }

    pub fn free_count(&self) -> usize {
        self.digits.iter().filter(|d| **d == Digit::Free).count()
    }

    /// Whether `value`, written in exactly `len()` digits, agrees with every
    /// fixed digit.
    pub fn matches(&self, value: u64) -> bool {
        let n = self.len();
        if n < 64 && value >> n != 0 {
            return false;
        }
        (0..n).all(|k| match self.column(k).fixed() {
            None => true,
            Some(bit) => {
                let actual = k < 64 && (value >> k) & 1 == 1;
                actual == bit
            }
        })
    }

    /// All completions in increasing order.
    pub fn completions(&self) -> Result<Vec<u64>, PatternError> {
        let free = self.free_count();
        if free > MAX_ENUMERATED_FREE || self.len() > 64 {
            return Err(PatternError::TooManyFreeDigits(free));
        }
        let mut base = 0u64;
        let mut free_columns = Vec::with_capacity(free);
        for k in 0..self.len() {
            match self.column(k) {
                Digit::One => base |= 1 << k,
                Digit::Zero => {}
                Digit::Free => free_columns.push(k),
            }
        }
        // Counting through the free columns LSB-first keeps the output sorted.
        Ok((0..1u64 << free)
            .map(|code| {
                free_columns
                    .iter()
                    .enumerate()
                    .fold(base, |acc, (bit, &k)| acc | (((code >> bit) & 1) << k))
            })
            .collect())
    }
}

impl fmt::Display for BitPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{}", d.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for BitPattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BitPattern::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_digits_msb_first() {
        let p = BitPattern::parse("1-0").unwrap();
        assert_eq!(p.digits(), &[Digit::One, Digit::Free, Digit::Zero]);
    }

    #[test]
    fn parses_ten_digit_example() {
        let p = BitPattern::parse("101-1-00-1").unwrap();
        assert_eq!(p.len(), 10);
        let free: Vec<usize> = p
            .digits()
            .iter()
            .enumerate()
            .filter(|(_, d)| **d == Digit::Free)
            .map(|(i, _)| i + 1)
            .collect();
        assert_eq!(free, vec![4, 6, 9]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            BitPattern::parse("1x0"),
            Err(PatternError::InvalidCharacter(2, 'x'))
        );
        assert_eq!(BitPattern::parse(""), Err(PatternError::EmptyPattern));
    }

    #[test]
    fn vector_form() {
        let p = BitPattern::parse_vector("1,0,1,-,1,-,0,0,-,1").unwrap();
        assert_eq!(p.to_string(), "101-1-00-1");
        assert_eq!(
            BitPattern::parse_vector("1,2"),
            Err(PatternError::InvalidCharacter(2, '2'))
        );
    }

    #[test]
    fn matching() {
        let p = BitPattern::parse("1-0").unwrap();
        assert!(p.matches(6));
        assert!(!p.matches(5));
        assert!(!p.matches(12));
        assert!(BitPattern::parse("111").unwrap().matches(7));
        assert!(BitPattern::parse("--1").unwrap().matches(1));
    }

    #[test]
    fn enumerates_completions() {
        assert_eq!(
            BitPattern::parse("1-0").unwrap().completions().unwrap(),
            vec![4, 6]
        );
        assert_eq!(
            BitPattern::parse("--").unwrap().completions().unwrap(),
            vec![0, 1, 2, 3]
        );
        assert_eq!(
            BitPattern::parse("11").unwrap().completions().unwrap(),
            vec![3]
        );
        let wide = BitPattern::parse(&"-".repeat(21)).unwrap();
        assert_eq!(wide.completions(), Err(PatternError::TooManyFreeDigits(21)));
    }

    #[test]
    fn from_value_round_trip() {
        assert_eq!(BitPattern::from_value(3127, 12).to_string(), "110000110111");
        assert_eq!(BitPattern::of_number(35).to_string(), "100011");
        assert_eq!(BitPattern::of_number(0).to_string(), "0");
    }

    fn pattern_strategy(max_len: usize) -> impl Strategy<Value = BitPattern> {
        prop::collection::vec(
            prop_oneof![Just(Digit::Zero), Just(Digit::One), Just(Digit::Free)],
            1..=max_len,
        )
        .prop_map(|d| BitPattern::new(d).unwrap())
    }

    proptest! {
        #[test]
        fn completions_agree_with_matches(p in pattern_strategy(12)) {
            let completions = p.completions().unwrap();
            prop_assert_eq!(completions.len(), 1usize << p.free_count());
            prop_assert!(completions.windows(2).all(|w| w[0] < w[1]));
            let mut iter = completions.iter().peekable();
            for v in 0..(1u64 << p.len()) {
                let listed = iter.peek() == Some(&&v);
                if listed {
                    iter.next();
                }
                prop_assert_eq!(p.matches(v), listed);
            }
        }

        #[test]
        fn parse_inverts_render(p in pattern_strategy(40)) {
            prop_assert_eq!(BitPattern::parse(&p.to_string()).unwrap(), p);
        }
    }
}
