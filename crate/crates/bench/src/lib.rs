//! Inputs shared by the benchmarks.

use factorsat_core::BitPattern;

/// A pattern of `n` free digits.
pub fn all_free(n: usize) -> BitPattern {
    BitPattern::parse(&"-".repeat(n)).expect("n > 0")
}

/// Products of two primes of similar size, by digit count.
pub const SEMIPRIMES: [(u64, u64, u64); 4] = [
    (143, 11, 13),
    (3127, 53, 59),
    (10403, 101, 103),
    (39203, 197, 199),
];

pub fn semiprime_pattern(product: u64) -> BitPattern {
    BitPattern::of_number(product)
}
