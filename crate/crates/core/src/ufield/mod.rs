//! Exact arithmetic in the local fields `Q_p` and `F_q((X))`.
//!
//! Absolute values are never materialized as reals: `|x| = a^{-v(x)}` with
//! `a = q` (the residue field size), and all norm bookkeeping happens on the
//! rational log scale, see [`LogValue`].

mod descriptor;
mod element;
mod embed;
mod format;
mod logvalue;
pub mod sample;

pub use descriptor::{
    FieldDescriptor, FieldKind, FieldSpec, DEFAULT_PRECISION, MAX_EXTENSION_DEGREE,
    MIN_SIGNIFICANT_DIGITS,
};
pub use element::{cmp_valuation, field_arith, ArithOp, FieldElement};
pub use embed::{coordinates, embed_subfield, from_coordinates};
pub use format::{padic_integer_value, padic_is_negative};
pub use logvalue::{
    ceil_q, floor_q, fmt_rational, is_positive, lcm_denominators, parse_rational, serde_rational,
    serde_rational_vec, LogValue, Q,
};
