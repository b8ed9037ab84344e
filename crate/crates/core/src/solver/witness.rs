use serde::Serialize;
use thiserror::Error;

use crate::formula::Assignment;
use crate::pattern::BitPattern;
use crate::tableau::{RowRef, Tableau};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactorWitness {
    pub product: u64,
    pub multiplicand: u64,
    pub multiplier: u64,
}

fn read_row(a: &Assignment, t: &Tableau, row: RowRef) -> Result<u64, WitnessError> {
    let vars = t.row(row);
    if vars.len() > 64 {
        return Err(WitnessError::InvalidModel(format!(
            "row {} is wider than 64 digits",
            row.letter()
        )));
    }
    vars.iter()
        .enumerate()
        .try_fold(0u64, |acc, (k, &v)| match a.get(v) {
            Some(bit) => Ok(acc | (bit as u64) << k),
            None => Err(WitnessError::InvalidModel(format!(
                "variable {} ({}) is unassigned",
                v.index(),
                t.role(v).map_or_else(String::new, |r| r.to_string())
            ))),
        })
}

/// Reads the product and factor rows of a model and checks that they form
/// a nontrivial factorization of a completion of `pattern`.
pub fn decode_witness(
    a: &Assignment,
    t: &Tableau,
    pattern: &BitPattern,
) -> Result<FactorWitness, WitnessError> {
    let invalid = |msg: String| Err(WitnessError::InvalidModel(msg));
    let product = read_row(a, t, RowRef::Product)?;
    let multiplicand = read_row(a, t, RowRef::Multiplicand)?;
    let multiplier = read_row(a, t, RowRef::Multiplier)?;
    if multiplicand < 2 || multiplier < 2 {
        return invalid(format!("trivial factor in {multiplicand} x {multiplier}"));
    }
    if multiplicand.checked_mul(multiplier) != Some(product) {
        return invalid(format!("{multiplicand} x {multiplier} != {product}"));
    }
    if !pattern.matches(product) {
        return invalid(format!(
            "product {product} does not match pattern {pattern}"
        ));
    }
    Ok(FactorWitness {
        product,
        multiplicand,
        multiplier,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::encode_composite;
    use crate::formula::VarId;
    use crate::solver::{solve, Verdict};

    #[test]
    fn four_is_two_times_two() {
        let p = BitPattern::parse("100").unwrap();
        let e = encode_composite(&p, &[]).unwrap();
        let Verdict::Sat(model) = solve(e.cnf()) else {
            panic!("4 is composite")
        };
        let w = decode_witness(&model, e.tableau(), &p).unwrap();
        assert_eq!(
            w,
            FactorWitness {
                product: 4,
                multiplicand: 2,
                multiplier: 2
            }
        );
    }

    #[test]
    fn missing_variable_is_invalid() {
        let p = BitPattern::parse("100").unwrap();
        let e = encode_composite(&p, &[]).unwrap();
        let Verdict::Sat(model) = solve(e.cnf()) else {
            panic!()
        };
        let mut partial = Assignment::new(model.num_vars());
        for (v, value) in model.iter().filter(|(v, _)| *v != VarId::new(2)) {
            partial.set(v, value);
        }
        assert!(matches!(
            decode_witness(&partial, e.tableau(), &p),
            Err(WitnessError::InvalidModel(_))
        ));
    }

    #[test]
    fn inconsistent_rows_are_rejected() {
        let p = BitPattern::parse("110").unwrap();
        let t = Tableau::build(&p).unwrap();
        let mut a = Assignment::new(t.num_vars());
        for v in 1..=t.num_vars() {
            a.set(VarId::new(v), false);
        }
        let set = |a: &mut Assignment, row: RowRef, value: u64| {
            for (k, &v) in t.row(row).iter().enumerate() {
                a.set(v, value >> k & 1 == 1);
            }
        };
        set(&mut a, RowRef::Product, 6);
        set(&mut a, RowRef::Multiplicand, 3);
        set(&mut a, RowRef::Multiplier, 3);
        assert!(decode_witness(&a, &t, &p).is_err());
        set(&mut a, RowRef::Multiplier, 2);
        assert_eq!(decode_witness(&a, &t, &p).unwrap().product, 6);
        set(&mut a, RowRef::Multiplier, 1);
        set(&mut a, RowRef::Multiplicand, 6);
        assert!(decode_witness(&a, &t, &p).is_err());
    }
}
