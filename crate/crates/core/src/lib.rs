//! Exact-arithmetic engine for classical q-series identities: truncated
//! power series on the quarter-exponent grid x = q^{1/4}, Maclaurin
//! coefficient polynomials of the Jacobi elliptic functions, Lambert series,
//! Hankel/chi determinants and their continued-fraction correspondences,
//! Schur-function multiple-sum expansions, and brute-force oracles for
//! representation counts and Ramanujan's tau.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in the crate.

pub mod error;
pub mod evals;
pub mod hankel;
pub mod identities;
pub mod kpoly;
pub mod lambert;
pub mod oracle;
pub mod qx;
pub mod rat;
pub mod report;
pub mod schur;

pub use error::Error;
pub use kpoly::KPoly;
pub use qx::QX;
pub use rat::{Partition, Rational};
pub use report::VerificationReport;
