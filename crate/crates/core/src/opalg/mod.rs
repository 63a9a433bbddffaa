//! Exact polynomials and first-order differential operators in the four
//! momentum variables `p_t, p_x, p_y, p_z`.
//!
//! Commutators of first-order operators are again first order; they are
//! computed directly in normal form by the Leibniz rule. Canonical text
//! forms are byte-reproducible: terms are emitted in ascending graded-lex
//! order of their exponent vectors.

mod diffop;
mod poly;

pub use diffop::{Composition, DiffOp};
pub use poly::{poly_arith, Monomial, Poly4, PolyOp, Var};
