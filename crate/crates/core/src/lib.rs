//! Exact construction and verification of Krall discrete polynomials.
//!
//! Families `q_n` are built as Casorati determinants over Charlier, Meixner
//! and Krawtchouk polynomials. For each family the crate assembles the
//! higher-order difference operator having `q_n` as eigenfunctions and checks
//! orthogonality against an explicit moment functional. All arithmetic is
//! exact over `BigRational`.

pub mod casoratian;
pub mod diffop;
pub mod error;
pub mod families;
pub mod matrix;
pub mod moments;
pub mod poly;
pub mod rational;
pub mod sets;
pub mod verify;

pub use diffop::{poly_of_op, DiffOp, OperatorPowers};
pub use error::{Error, Result};
pub use matrix::{ExactRing, Matrix, PolyMatrix, RatMatrix};
pub use poly::Polynomial;
pub use rational::Rational;
