use factorsat_core::oracle::{is_composite, oracle_expcomposite, oracle_factoring, OracleWitness};
use factorsat_core::{
    decode_witness, encode_composite, encode_factoring, encode_with_conditions, factor_widths,
    parse_condition, solve, BitPattern, Digit, EncodeError, IntervalMode, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_patterns(len: usize) -> impl Iterator<Item = BitPattern> {
    (0..3usize.pow(len as u32)).map(move |mut code| {
        let digits = (0..len)
            .map(|_| {
                let d = [Digit::Zero, Digit::One, Digit::Free][code % 3];
                code /= 3;
                d
            })
            .collect();
        BitPattern::new(digits).unwrap()
    })
}

#[test]
fn expcomposite_agrees_with_oracle_up_to_six_digits() {
    for len in 2..=6 {
        for p in all_patterns(len) {
            let e = encode_composite(&p, &[]).unwrap();
            let verdict = solve(e.cnf());
            assert_eq!(
                verdict.is_sat(),
                oracle_expcomposite(&p).unwrap().answer,
                "pattern {p}"
            );
            if let Verdict::Sat(model) = verdict {
                let w = decode_witness(&model, e.tableau(), &p).unwrap();
                let widths = factor_widths(len).unwrap();
                assert!(w.multiplicand < 1 << widths.multiplicand_bits);
                assert!(w.multiplier < 1 << widths.multiplier_bits);
            }
        }
    }
}

#[test]
fn small_fixed_cases() {
    let sat = |s: &str| {
        let p = BitPattern::parse(s).unwrap();
        solve(encode_composite(&p, &[]).unwrap().cnf()).is_sat()
    };
    assert!(!sat("1-1")); // 5 and 7
    assert!(sat("1-0")); // 4
    assert!(!sat("11"));
    assert!(sat("100"));
    assert!(!sat("10"));
}

#[test]
fn semiprime_3127() {
    let p = BitPattern::of_number(3127);
    assert_eq!(p.to_string(), "110000110111");
    let e = encode_composite(&p, &[]).unwrap();
    let Verdict::Sat(model) = solve(e.cnf()) else {
        panic!("3127 = 53 * 59")
    };
    let w = decode_witness(&model, e.tableau(), &p).unwrap();
    let mut pair = [w.multiplicand, w.multiplier];
    pair.sort();
    assert_eq!(pair, [53, 59]);
}

#[test]
fn fixed_numbers_match_compositeness() {
    for v in 2..512u64 {
        let p = BitPattern::of_number(v);
        let e = encode_composite(&p, &[]).unwrap();
        assert_eq!(solve(e.cnf()).is_sat(), is_composite(v), "{v}");
    }
}

#[test]
fn factoring_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..150 {
        let n = rng.gen_range(4..1u64 << 10);
        let lower = rng.gen_range(0..n);
        let upper = rng.gen_range(lower + 1..=n);
        let mode = if rng.gen() {
            IntervalMode::Closed
        } else {
            IntervalMode::Open
        };
        let p = BitPattern::of_number(n);
        let expected = oracle_factoring(n, lower, upper, mode);
        match encode_factoring(&p, lower, upper, mode) {
            Ok(e) => {
                let verdict = solve(e.cnf());
                assert_eq!(
                    verdict.is_sat(),
                    expected.answer,
                    "{n} {lower} {upper} {mode}"
                );
                if let Verdict::Sat(model) = verdict {
                    let w = decode_witness(&model, e.tableau(), &p).unwrap();
                    let inside = |d: u64| match mode {
                        IntervalMode::Closed => lower <= d && d <= upper,
                        IntervalMode::Open => lower < d && d < upper,
                    };
                    assert!(inside(w.multiplicand) || inside(w.multiplier));
                }
            }
            Err(EncodeError::Condition(_)) => assert!(!expected.answer),
            Err(other) => panic!("{other}"),
        }
    }
}

#[test]
fn oracle_witness_is_smallest_factor_pair() {
    let p = BitPattern::parse("1-0-1").unwrap();
    let v = oracle_expcomposite(&p).unwrap();
    assert_eq!(
        v.witness,
        Some(OracleWitness::Composite {
            value: 25,
            factors: (5, 5)
        })
    );
}

/// A product whose last three digits equal those of one factor.
#[test]
fn trailing_digits_condition_against_enumeration() {
    let condition = parse_condition("low(P,3) == low(B,3) | low(P,3) == low(A,3)").unwrap();
    for n in 3..=7usize {
        let free = BitPattern::parse(&"-".repeat(n)).unwrap();
        let widths = factor_widths(n).unwrap();
        let expected: Vec<bool> = (0..1u64 << n)
            .map(|v| {
                (2..1u64 << widths.multiplier_bits).any(|b| {
                    v % b == 0
                        && v / b >= 2
                        && v / b < 1 << widths.multiplicand_bits
                        && (v % 8 == b % 8 || v % 8 == (v / b) % 8)
                })
            })
            .collect();
        let e = encode_with_conditions(&free, std::slice::from_ref(&condition)).unwrap();
        assert_eq!(
            solve(e.cnf()).is_sat(),
            expected.iter().any(|&x| x),
            "width {n}"
        );
        for v in (0..1u64 << n).step_by(5) {
            let p = BitPattern::from_value(v, n);
            let e = encode_with_conditions(&p, std::slice::from_ref(&condition)).unwrap();
            let verdict = solve(e.cnf());
            assert_eq!(verdict.is_sat(), expected[v as usize], "{v} in {n} digits");
            if let Verdict::Sat(model) = verdict {
                let w = decode_witness(&model, e.tableau(), &p).unwrap();
                assert!(w.product % 8 == w.multiplier % 8 || w.product % 8 == w.multiplicand % 8);
            }
        }
    }
}
