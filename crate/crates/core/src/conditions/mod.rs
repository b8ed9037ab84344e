//! Side conditions over the product and factor rows.
//!
//! Comparisons are built digit by digit from the most significant end:
//! `x > y` holds if the leading digits satisfy `x₁ ∧ ¬y₁`, or if they do not
//! satisfy `y₁ ∧ ¬x₁` and the remaining digits compare greater. Operands of
//! different widths are zero-extended on the left.

mod dsl;

use std::fmt;

use thiserror::Error;

use crate::formula::Formula;
use crate::tableau::{Bit, RowRef, Tableau};

pub use dsl::parse_condition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionError {
    #[error("operand {0} cannot be resolved against this tableau")]
    UnresolvableOperand(String),
    #[error("constant {value} does not fit in {width} bits")]
    WidthMismatch { value: u64, width: usize },
    #[error("no integer lies in the {mode} interval from {lower} to {upper}")]
    EmptyRange {
        lower: u64,
        upper: u64,
        mode: IntervalMode,
    },
    #[error("condition syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Operand {
    Row(RowRef),
    Constant {
        value: u64,
        width: usize,
    },
    /// The `digits` least significant digits of a row, i.e. the row
    /// modulo `2^digits`.
    Trailing {
        row: RowRef,
        digits: usize,
    },
    /// A single digit, 1-based from the most significant end.
    Digit {
        row: RowRef,
        index: usize,
    },
}

impl Operand {
    /// A constant in its minimal width (at least one digit).
    pub fn constant(value: u64) -> Operand {
        Operand::Constant {
            value,
            width: bit_length(value).max(1),
        }
    }

    /// Digits LSB-first.
    pub fn resolve(&self, t: &Tableau) -> Result<Vec<Bit>, ConditionError> {
        let unresolvable = || ConditionError::UnresolvableOperand(self.to_string());
        match *self {
            Operand::Row(row) => Ok(t.row(row).iter().map(|&v| Bit::Var(v)).collect()),
            Operand::Constant { value, width } => {
                if width < 64 && value >> width != 0 {
                    return Err(ConditionError::WidthMismatch { value, width });
                }
                Ok((0..width)
                    .map(|k| Bit::Const(k < 64 && value >> k & 1 == 1))
                    .collect())
            }
            Operand::Trailing { row, digits } => {
                let bits = t.row(row);
                if digits == 0 {
                    return Err(unresolvable());
                }
                // the value modulo 2^digits, which is the whole row when it is narrower
                Ok(bits[..digits.min(bits.len())]
                    .iter()
                    .map(|&v| Bit::Var(v))
                    .collect())
            }
            Operand::Digit { row, index } => {
                let bits = t.row(row);
                if index == 0 || index > bits.len() {
                    return Err(unresolvable());
                }
                Ok(vec![Bit::Var(bits[bits.len() - index])])
            }
        }
    }
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Row(r) => write!(f, "{}", r.letter()),
            Operand::Constant { value, .. } => write!(f, "{value}"),
            Operand::Trailing { row, digits } => write!(f, "low({}, {digits})", row.letter()),
            Operand::Digit { row, index } => write!(f, "{}[{index}]", row.letter()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Gt,
    Ge,
    Lt,
    Le,
    Eq,
}

impl CmpOp {
    pub fn holds(self, x: u64, y: u64) -> bool {
        match self {
            CmpOp::Gt => x > y,
            CmpOp::Ge => x >= y,
            CmpOp::Lt => x < y,
            CmpOp::Le => x <= y,
            CmpOp::Eq => x == y,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum IntervalMode {
    #[default]
    Closed,
    Open,
}

impl fmt::Display for IntervalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IntervalMode::Closed => "closed",
            IntervalMode::Open => "open",
        })
    }
}

impl std::str::FromStr for IntervalMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "closed" => Ok(IntervalMode::Closed),
            "open" => Ok(IntervalMode::Open),
            other => Err(format!(
                "unknown interval mode {other:?} (expected closed or open)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConditionExpr {
    Compare(CmpOp, Operand, Operand),
    FixedDigit {
        row: RowRef,
        index: usize,
        value: bool,
    },
    And(Vec<ConditionExpr>),
    Or(Vec<ConditionExpr>),
    Not(Box<ConditionExpr>),
}

impl ConditionExpr {
    pub fn compare(op: CmpOp, x: Operand, y: Operand) -> ConditionExpr {
        ConditionExpr::Compare(op, x, y)
    }

    /// `x` lies in the interval between two constants.
    pub fn in_range(
        x: Operand,
        lower: u64,
        upper: u64,
        mode: IntervalMode,
    ) -> Result<ConditionExpr, ConditionError> {
        check_range(lower, upper, mode)?;
        let (low_op, high_op) = match mode {
            IntervalMode::Closed => (CmpOp::Ge, CmpOp::Le),
            IntervalMode::Open => (CmpOp::Gt, CmpOp::Lt),
        };
        Ok(ConditionExpr::And(vec![
            ConditionExpr::Compare(low_op, x.clone(), Operand::constant(lower)),
            ConditionExpr::Compare(high_op, x, Operand::constant(upper)),
        ]))
    }

    /// Either factor lies in the interval. A divisor can be the larger or
    /// the smaller member of its factor pair, so both rows are tried.
    pub fn divisor_in_range(
        lower: u64,
        upper: u64,
        mode: IntervalMode,
    ) -> Result<ConditionExpr, ConditionError> {
        Ok(ConditionExpr::Or(vec![
            ConditionExpr::in_range(Operand::Row(RowRef::Multiplicand), lower, upper, mode)?,
            ConditionExpr::in_range(Operand::Row(RowRef::Multiplier), lower, upper, mode)?,
        ]))
    }
}

fn check_range(lower: u64, upper: u64, mode: IntervalMode) -> Result<(), ConditionError> {
    let empty = match mode {
        IntervalMode::Closed => upper < lower,
        IntervalMode::Open => upper <= lower.saturating_add(1),
    };
    if empty {
        return Err(ConditionError::EmptyRange { lower, upper, mode });
    }
    Ok(())
}

fn bit_length(v: u64) -> usize {
    64 - v.leading_zeros() as usize
}

fn bit(b: Bit) -> Formula {
    b.into()
}

/// `x > y` over LSB-first digit vectors.
pub fn gt_bits(x: &[Bit], y: &[Bit]) -> Formula {
    let width = x.len().max(y.len());
    let zero = Bit::Const(false);
    let mut rest = Formula::FALSE;
    for k in 0..width {
        let a = bit(*x.get(k).unwrap_or(&zero));
        let l = bit(*y.get(k).unwrap_or(&zero));
        let greater = Formula::and([a.clone(), Formula::not(l.clone())]);
        let less = Formula::and([l, Formula::not(a)]);
        rest = Formula::or([greater, Formula::and([Formula::not(less), rest])]);
    }
    rest
}

/// `x = y` as a conjunction of digit equivalences.
pub fn eq_bits(x: &[Bit], y: &[Bit]) -> Formula {
    let width = x.len().max(y.len());
    let zero = Bit::Const(false);
    Formula::and((0..width).map(|k| {
        Formula::iff(
            bit(*x.get(k).unwrap_or(&zero)),
            bit(*y.get(k).unwrap_or(&zero)),
        )
    }))
}

pub fn encode_gt(x: &Operand, y: &Operand, t: &Tableau) -> Result<Formula, ConditionError> {
    Ok(gt_bits(&x.resolve(t)?, &y.resolve(t)?))
}

pub fn encode_compare(
    op: CmpOp,
    x: &Operand,
    y: &Operand,
    t: &Tableau,
) -> Result<Formula, ConditionError> {
    let (xb, yb) = (x.resolve(t)?, y.resolve(t)?);
    Ok(match op {
        CmpOp::Gt => gt_bits(&xb, &yb),
        CmpOp::Lt => gt_bits(&yb, &xb),
        CmpOp::Ge => Formula::not(gt_bits(&yb, &xb)),
        CmpOp::Le => Formula::not(gt_bits(&xb, &yb)),
        CmpOp::Eq => eq_bits(&xb, &yb),
    })
}

pub fn encode_range(
    x: &Operand,
    lower: u64,
    upper: u64,
    mode: IntervalMode,
    t: &Tableau,
) -> Result<Formula, ConditionError> {
    compile_condition(&ConditionExpr::in_range(x.clone(), lower, upper, mode)?, t)
}

/// `row ≥ 2`: some digit above the units digit is set.
pub fn encode_nontrivial(row: RowRef, t: &Tableau) -> Formula {
    Formula::or(t.row(row).iter().skip(1).copied())
}

pub fn compile_condition(c: &ConditionExpr, t: &Tableau) -> Result<Formula, ConditionError> {
    Ok(match c {
        ConditionExpr::Compare(op, x, y) => encode_compare(*op, x, y, t)?,
        ConditionExpr::FixedDigit { row, index, value } => {
            let digit = Operand::Digit {
                row: *row,
                index: *index,
            }
            .resolve(t)?;
            let f = bit(digit[0]);
            if *value {
                f
            } else {
                Formula::not(f)
            }
        }
        ConditionExpr::And(cs) => Formula::and(compile_all(cs, t)?),
        ConditionExpr::Or(cs) => Formula::or(compile_all(cs, t)?),
        ConditionExpr::Not(inner) => Formula::not(compile_condition(inner, t)?),
    })
}

fn compile_all(cs: &[ConditionExpr], t: &Tableau) -> Result<Vec<Formula>, ConditionError> {
    cs.iter().map(|c| compile_condition(c, t)).collect()
}

/// Conjunction of all conditions; the empty list is `true`.
pub fn compile_conditions(cs: &[ConditionExpr], t: &Tableau) -> Result<Formula, ConditionError> {
    Ok(Formula::and(compile_all(cs, t)?))
}
