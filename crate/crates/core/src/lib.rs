pub mod algebra;
pub mod cli;
pub mod divisor;
pub mod error;
pub mod exponents;
pub mod leading_term;
pub mod matrix_m;
pub mod schur;
pub mod terao;

#[cfg(test)]
mod proptests;

pub use error::{Error, Result};
