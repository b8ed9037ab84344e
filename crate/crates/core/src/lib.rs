//! Reduction of factorization problems over partially-specified binary
//! numbers to boolean satisfiability.
//!
//! A [`BitPattern`] such as `1-0-1` fixes some digits of a product and
//! leaves others free. [`encode_composite`] lays out a long-multiplication
//! tableau for it, expresses each partial product and each two-operand
//! addition as small boolean templates, and lowers the lot to CNF. The
//! embedded [`solve`] closes the loop and [`decode_witness`] turns a model
//! back into a factorization. [`oracle`] answers the same questions by brute
//! force for cross-checking.

pub mod conditions;
pub mod encoding;
pub mod formula;
pub mod oracle;
pub mod pattern;
pub mod solver;
pub mod tableau;

pub use conditions::{
    compile_condition, compile_conditions, encode_compare, encode_gt, encode_nontrivial,
    encode_range, parse_condition, CmpOp, ConditionError, ConditionExpr, IntervalMode, Operand,
};
pub use encoding::{
    encode_composite, encode_factoring, encode_with_conditions, EncodeError, Encoding,
};
pub use formula::dimacs::{
    emit_dimacs, emit_model, model_over, parse_dimacs, parse_model, Dimacs, DimacsError,
};
pub use formula::{tseitin, Assignment, AuxMap, Cnf, Formula, FormulaError, Lit, VarId};
pub use oracle::{
    oracle_expcomposite, oracle_exprime, oracle_factoring, OracleVerdict, OracleWitness,
};
pub use pattern::{BitPattern, Digit, PatternError};
pub use solver::{
    decode_witness, solve, solve_with_budget, FactorWitness, SolveError, Verdict, WitnessError,
};
pub use tableau::{factor_widths, ConstraintKind, FactorWidths, RowRef, Tableau, TableauError};
