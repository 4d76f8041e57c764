pub mod affine;
pub mod algebras;
pub mod cli;
pub mod covariant;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod liealg;
pub mod report;

pub use error::{Error, Result};
