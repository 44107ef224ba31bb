//! Exact computational machinery for Coxeter groups equipped with an
//! involutive diagram automorphism.
//!
//! The crate provides, over the ring of integer Laurent polynomials:
//! generic Coxeter group arithmetic (lengths, descents, Bruhat order,
//! twisted involutions), the Hecke algebra with its bar involution and
//! canonical basis, the Hecke module spanned by twisted involutions with
//! its own bar involution and self-dual basis, the associated polynomial
//! tables, cell decompositions with quotient modules, and batch verifiers
//! for the positivity and structure statements these objects satisfy.
//!
//! Everything is exact: no floating point is used anywhere.

pub mod cells;
pub mod cli;
pub mod coxeter;
pub mod hecke;
pub mod invmod;
pub mod oracle;
pub mod poly;
pub mod selfdual;

mod error;

pub use error::{Error, ErrorClass, Result};
pub use poly::{IntPoly, LaurentPoly};
