//! Finite universal algebra: congruence lattices, relative congruences,
//! epic and full subalgebras, weak ES witness searches and Maltsev-condition
//! term detection over classes generated by finitely many finite algebras.

pub mod algebra;
pub mod catalog;
pub mod classctx;
pub mod cli;
pub mod congruence;
pub mod error;
pub mod maltsev;

pub use algebra::{FiniteAlgebra, Signature, Subset, Term};
pub use congruence::{CongruenceSet, Partition};
pub use error::{Error, Result};
