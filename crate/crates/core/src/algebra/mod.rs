//! Exact arithmetic: rationals, homogeneous bivariate polynomials, sparse
//! multivariate integer polynomials, and matrix kernels over both.

pub mod bipoly;
pub mod matrix;
pub mod multipoly;
pub mod rational;
pub mod wronskian;

pub use bipoly::BiPoly;
pub use matrix::RingMatrix;
pub use multipoly::MultiPoly;
pub use rational::Rational;
