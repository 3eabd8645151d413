//! Exact computations with quadratic algebras: quadratic duals, Priddy
//! complexes, Koszulness certificates up to a degree bound, and minimal
//! free resolutions of the powers of the homogeneous maximal ideal.

pub mod algebra;
pub mod cli;
pub mod complexes;
pub mod dual;
pub mod error;
pub mod exactlin;
pub mod field;
pub mod freetensor;
pub mod lcomplex;
pub mod pair;

pub use error::{Error, Result};
