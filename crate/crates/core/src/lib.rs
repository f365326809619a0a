//! Exact computation and verification of cyclic operad and BV structures on
//! Hochschild complexes of finite-dimensional algebras and Hopf algebras.

pub mod algebra;
pub mod bv;
pub mod cyclic;
pub mod dual;
pub mod error;
pub mod field;
pub mod hochschild;
pub mod hopf;
pub mod io;
pub mod report;
pub mod runner;

pub use error::{Error, Result};
