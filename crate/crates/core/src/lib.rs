//! Exact semantics and symbolic transformations for first-order Gödel logics.

pub mod chains;
pub mod eval;
pub mod formula;
pub mod interp;
pub mod search;
pub mod seq;
pub mod transform;
pub mod truthset;
pub mod value;

pub use formula::{parse, print, Formula, Quantifier, Term};
pub use value::Rat;
