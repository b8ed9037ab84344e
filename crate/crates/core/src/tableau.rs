//! Variable layout of the stepwise long-multiplication schema.
//!
//! For an `n`-digit product the multiplicand has `n - 1` digits and the
//! multiplier `ceil(n / 2)`. Partial products ("prodlines") are shifted one
//! column per multiplier digit and truncated at column `n`. They are summed
//! two at a time: each addition gets its own carry row and writes into a
//! sumline, except the last one, which writes straight into the product.
//!
//! Columns are indexed LSB-first internally (`k = 0` is the units column).
//! Role names use the displayed, MSB-first position `i = n - k`.

use std::fmt;

use thiserror::Error;

use crate::formula::{Formula, VarId};
use crate::pattern::BitPattern;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("product width {0} is too small; at least 2 digits are needed")]
    WidthTooSmall(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct FactorWidths {
    pub multiplicand_bits: usize,
    pub multiplier_bits: usize,
}

/// Widths that admit every nontrivial factor pair of an `n`-digit number:
/// the larger factor is at most half the product, the smaller at most its
/// square root.
pub fn factor_widths(n: usize) -> Result<FactorWidths, TableauError> {
    if n < 2 {
        return Err(TableauError::WidthTooSmall(n));
    }
    Ok(FactorWidths {
        multiplicand_bits: n - 1,
        multiplier_bits: n.div_ceil(2),
    })
}

/// A tableau cell: a variable or a constant (shifted-in zeros, folded carries).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bit {
    Const(bool),
    Var(VarId),
}

impl From<Bit> for Formula {
    fn from(b: Bit) -> Formula {
        match b {
            Bit::Const(c) => Formula::Const(c),
            Bit::Var(v) => Formula::Var(v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RowRef {
    Product,
    Multiplicand,
    Multiplier,
}

impl RowRef {
    pub fn letter(self) -> char {
        match self {
            RowRef::Product => 'P',
            RowRef::Multiplicand => 'A',
            RowRef::Multiplier => 'B',
        }
    }
}

/// Which row a variable belongs to. Indices are 1-based; `column` is the
/// displayed (MSB-first) position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Product { column: usize },
    Multiplicand { digit: usize },
    Multiplier { digit: usize },
    Prodline { row: usize, column: usize },
    Sumline { step: usize, column: usize },
    Carry { step: usize, column: usize },
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Role::Product { column } => write!(f, "P{column}"),
            Role::Multiplicand { digit } => write!(f, "A{digit}"),
            Role::Multiplier { digit } => write!(f, "B{digit}"),
            Role::Prodline { row, column } => write!(f, "PL{row}.{column}"),
            Role::Sumline { step, column } => write!(f, "S{step}.{column}"),
            Role::Carry { step, column } => write!(f, "R{step}.{column}"),
        }
    }
}

/// One shifted partial product: `multiplicand · multiplier[shift]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prodline {
    pub shift: usize,
    /// `vars[i]` holds multiplicand digit `i` (LSB-first) times the
    /// multiplier digit, placed in column `shift + i`.
    pub vars: Vec<VarId>,
}

impl Prodline {
    pub fn width(&self) -> usize {
        self.vars.len()
    }
}

/// One two-operand ripple-carry addition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Addition {
    pub left: Vec<Bit>,
    pub right: Vec<Bit>,
    /// `carries[k]` is the carry into column `k`; `carries[0]` is false.
    pub carries: Vec<Bit>,
    pub sum: Vec<VarId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    widths: FactorWidths,
    product: Vec<VarId>,
    multiplicand: Vec<VarId>,
    multiplier: Vec<VarId>,
    prodlines: Vec<Prodline>,
    additions: Vec<Addition>,
    roles: Vec<Role>,
}

struct Allocator {
    roles: Vec<Role>,
}

impl Allocator {
    fn alloc(&mut self, role: Role) -> VarId {
        self.roles.push(role);
        VarId::new(self.roles.len() as u32)
    }
}

impl Tableau {
    /// Lays out all variables for a product of `pattern.len()` digits.
    ///
    /// Allocation order: product (MSB first), multiplicand, multiplier, then
    /// for each addition the prodlines it introduces, its carry row and its
    /// sumline.
    pub fn build(pattern: &BitPattern) -> Result<Tableau, TableauError> {
        Tableau::with_width(pattern.len())
    }

    pub fn with_width(n: usize) -> Result<Tableau, TableauError> {
        let widths = factor_widths(n)?;
        let (m_a, m_b) = (widths.multiplicand_bits, widths.multiplier_bits);
        let mut alloc = Allocator { roles: Vec::new() };

        let mut product = vec![VarId::new(1); n];
        for i in 1..=n {
            product[n - i] = alloc.alloc(Role::Product { column: i });
        }
        // Factor digits are numbered from the least significant end so that
        // lowest-index-first search fixes low digits first, where the
        // product's low columns constrain them immediately.
        let multiplicand: Vec<VarId> = (0..m_a)
            .map(|k| alloc.alloc(Role::Multiplicand { digit: m_a - k }))
            .collect();
        let multiplier: Vec<VarId> = (0..m_b)
            .map(|k| alloc.alloc(Role::Multiplier { digit: m_b - k }))
            .collect();

        let mut tableau = Tableau {
            n,
            widths,
            product,
            multiplicand,
            multiplier,
            prodlines: Vec::with_capacity(m_b),
            additions: Vec::with_capacity(m_b.saturating_sub(1)),
            roles: Vec::new(),
        };

        let push_prodline = |t: &mut Tableau, alloc: &mut Allocator| {
            let row = t.prodlines.len() + 1;
            let shift = row - 1;
            let width = m_a.min(n - shift);
            let mut vars = vec![VarId::new(1); width];
            for i in (0..width).rev() {
                vars[i] = alloc.alloc(Role::Prodline {
                    row,
                    column: n - (shift + i),
                });
            }
            t.prodlines.push(Prodline { shift, vars });
        };

        push_prodline(&mut tableau, &mut alloc);
        for step in 1..m_b {
            push_prodline(&mut tableau, &mut alloc);
            let left = match tableau.additions.last() {
                None => tableau.row_bits_of_prodline(0),
                Some(prev) => prev.sum.iter().map(|&v| Bit::Var(v)).collect(),
            };
            let right = tableau.row_bits_of_prodline(step);

            let mut carries = vec![Bit::Const(false)];
            for k in 0..n - 1 {
                let carry =
                    Formula::majority(&left[k].into(), &right[k].into(), &carries[k].into());
                carries.push(match carry.as_const() {
                    Some(c) => Bit::Const(c),
                    None => Bit::Var(alloc.alloc(Role::Carry {
                        step,
                        column: n - (k + 1),
                    })),
                });
            }

            let sum = if step + 1 == m_b {
                tableau.product.clone()
            } else {
                let mut sum = vec![VarId::new(1); n];
                for i in 1..=n {
                    sum[n - i] = alloc.alloc(Role::Sumline { step, column: i });
                }
                sum
            };
            tableau.additions.push(Addition {
                left,
                right,
                carries,
                sum,
            });
        }
        tableau.roles = alloc.roles;
        Ok(tableau)
    }

    /// Prodline `index` (0-based) spread over all `n` columns.
    fn row_bits_of_prodline(&self, index: usize) -> Vec<Bit> {
        let line = &self.prodlines[index];
        (0..self.n)
            .map(|k| match k.checked_sub(line.shift) {
                Some(i) if i < line.width() => Bit::Var(line.vars[i]),
                _ => Bit::Const(false),
            })
            .collect()
    }

    /// Product width.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn widths(&self) -> FactorWidths {
        self.widths
    }

    /// Digits of a row, LSB-first.
    pub fn row(&self, row: RowRef) -> &[VarId] {
        match row {
            RowRef::Product => &self.product,
            RowRef::Multiplicand => &self.multiplicand,
            RowRef::Multiplier => &self.multiplier,
        }
    }

    pub fn prodlines(&self) -> &[Prodline] {
        &self.prodlines
    }

    pub fn additions(&self) -> &[Addition] {
        &self.additions
    }

    pub fn num_vars(&self) -> u32 {
        self.roles.len() as u32
    }

    pub fn role(&self, var: VarId) -> Option<Role> {
        self.roles.get(var.index() as usize - 1).copied()
    }

    /// Roles of variables `1..=num_vars()` in order.
    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    /// Product, factor and partial-product digits; sumlines and carries are
    /// bookkeeping for the stepwise additions and are not counted.
    pub fn digit_var_count(&self) -> usize {
        self.n
            + self.widths.multiplicand_bits
            + self.widths.multiplier_bits
            + self.prodlines.iter().map(Prodline::width).sum::<usize>()
    }

    /// All constraints tying the rows together, followed by one unit per
    /// fixed digit of `pattern`.
    ///
    /// # Panics
    ///
    /// If `pattern` is not as wide as the product.
    pub fn multiplication_constraints(&self, pattern: &BitPattern) -> Vec<Constraint> {
        assert_eq!(
            pattern.len(),
            self.n,
            "pattern does not match the tableau width"
        );
        let mut out = Vec::new();
        let mut push = |kind, formula: Formula| {
            if formula != Formula::TRUE {
                out.push(Constraint { kind, formula });
            }
        };

        let m_a = self.widths.multiplicand_bits;
        for line in &self.prodlines {
            let b = self.multiplier[line.shift];
            for (i, &v) in line.vars.iter().enumerate() {
                let a = self.multiplicand[i];
                push(
                    ConstraintKind::Prodline,
                    Formula::iff(v, Formula::and([a, b])),
                );
            }
            // Truncated digits would land beyond the product; they must be zero.
            for &a in &self.multiplicand[line.width()..m_a] {
                push(
                    ConstraintKind::DroppedProduct,
                    Formula::not(Formula::and([a, b])),
                );
            }
        }

        if self.additions.is_empty() {
            // Single-digit multiplier: the only prodline is the product.
            let only = self.row_bits_of_prodline(0);
            for (k, &p) in self.product.iter().enumerate() {
                push(ConstraintKind::Sum, Formula::iff(p, only[k]));
            }
        }
        for add in &self.additions {
            for k in 0..self.n {
                let (x, y, c): (Formula, Formula, Formula) = (
                    add.left[k].into(),
                    add.right[k].into(),
                    add.carries[k].into(),
                );
                push(
                    ConstraintKind::Sum,
                    Formula::iff(
                        add.sum[k],
                        Formula::odd_parity(&[x.clone(), y.clone(), c.clone()]),
                    ),
                );
                let carry_out = Formula::majority(&x, &y, &c);
                if k + 1 < self.n {
                    if let Bit::Var(r) = add.carries[k + 1] {
                        push(ConstraintKind::Carry, Formula::iff(r, carry_out));
                    }
                } else {
                    push(ConstraintKind::Overflow, Formula::not(carry_out));
                }
            }
        }

        for k in 0..self.n {
            if let Some(bit) = pattern.column(k).fixed() {
                let p = Formula::var(self.product[k]);
                push(
                    ConstraintKind::FixedDigit,
                    if bit { p } else { Formula::not(p) },
                );
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    /// `v ⟺ (a ∧ b)` for one partial-product digit.
    Prodline,
    /// `¬(a ∧ b)` for a partial product cut off by truncation.
    DroppedProduct,
    /// Sum digit as odd parity of its column.
    Sum,
    /// Carry as majority of its column.
    Carry,
    /// No carry out of the top column.
    Overflow,
    FixedDigit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub kind: ConstraintKind,
    pub formula: Formula,
}
