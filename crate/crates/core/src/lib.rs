//! Symbolic computation in free Nijenhuis algebras.
//!
//! Elements are linear combinations of bracketed words with exact rational
//! coefficients. On top of the free product and operator this crate provides
//! the induced NS operations, the solver for binary quadratic relations that
//! every Nijenhuis algebra satisfies, and finite-dimensional tools for the
//! enveloping construction.

pub mod algebra;
pub mod checks;
pub mod enveloping;
pub mod expr;
pub mod lincomb;
pub mod matrix;
pub mod rational;
pub mod relations;
pub mod word;

pub use algebra::{derived_op, operator_n, product, product_words, OpSymbol};
pub use lincomb::{lc_add, lc_scale, LinComb};
pub use matrix::{in_span, nullspace_basis, rref, subspace_equal, LinAlgError, RationalMatrix};
pub use rational::Rational;
pub use word::{
    canonical_compare, enumerate_words, make_word, EndKind, Factor, Symbol, Word, WordError,
};
