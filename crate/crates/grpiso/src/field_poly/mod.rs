//! Finite fields `GF(p)` and `GF(p^d)` and polynomials over them.

mod ext;
mod factor;
mod field;
mod poly;

pub use ext::{ff_arith, ArithOp, ExtField, ExtFieldElem};
pub use factor::{
    distinct_degree, equal_degree, factor_poly, factor_poly_with, find_irreducible, is_irreducible,
    roots_in, roots_in_splitting_ext, smallest_irreducible, squarefree_decomposition,
};
pub use field::{FiniteField, PrimeField};
pub use poly::Poly;
