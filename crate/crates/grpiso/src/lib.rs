//! Isomorphism testing for finite groups that split as an abelian normal
//! subgroup extended by a cyclic group of coprime order.

pub mod abelian_engine;
pub mod arith;
pub mod blackbox;
pub mod decompose;
pub mod dlog_conj;
pub mod error;
pub mod field_poly;
pub mod gen;
pub mod intmat;
pub mod iso;
pub mod matrix_forms;
pub mod quantum_sim;
pub mod reference;
pub mod selftest;
pub mod setdlog;

pub use error::{Error, Result};
