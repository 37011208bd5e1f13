//! Exact arithmetic for the Chow class of the d-elliptic locus in the moduli
//! space of stable genus-2 curves.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: divisor sums, the Möbius function and the Dirichlet algebra of
//!   arithmetic functions.
//! - [`qseries`]: truncated power series in `q`, the Eisenstein series `E2`
//!   and `E4`, and exact decomposition against a quasi-modular basis.
//! - [`chow`]: the six-dimensional graded ring `A*(M̄₂)` with its product
//!   table and the classes of the test families.
//! - [`census`]: brute-force enumeration of the lattices, torsion points and
//!   cover configurations whose counts enter the intersection numbers.
//! - [`delliptic`]: the two intersection equations, their solution, the
//!   generating series and the enumerative counts `a_d`, `b_d`.
//! - [`verify`]: the invariant suites run by `dellip verify-all`.
//!
//! There is no floating point anywhere; every scalar is a [`Rational`].

pub mod arith;
pub mod census;
pub mod chow;
pub mod delliptic;
mod error;
pub mod qseries;
pub mod rational;
pub mod verify;

pub use arith::{dirichlet_convolve, dirichlet_inverse, divisors, moebius, sigma_k, ArithSeq};
pub use census::{
    classification_table, CensusEntry, CensusParams, CensusReport, CoverTypeLabel, HnfBasis,
    ImageStratum,
};
pub use chow::{ChowClass, ProductTable};
pub use delliptic::{Coordinate, DEllipticClass};
pub use error::{Error, Result};
pub use qseries::QSeries;
pub use rational::Rational;
