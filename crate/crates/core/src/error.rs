use std::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An exponent left the quarter-exponent grid (q^{1/4} units).
    Grid(String),
    /// Inversion of a series whose constant term is zero.
    NonUnit,
    /// A Hankel determinant required to be nonzero vanished; carries the
    /// offending level n.
    Degenerate(usize),
    /// A coefficient sequence was too short for the requested minor.
    Length { needed: usize, got: usize },
    /// Unknown identity id or suite name.
    Registry(String),
    /// Argument outside an operation's domain (e.g. parity constraints).
    Domain(String),
    /// A divisibility requirement on exponent sequences failed.
    Divisor(String),
    /// Internal consistency check of the nome-bridge series failed.
    Bridge(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Grid(s) => write!(f, "off-grid exponent: {s}"),
            Error::NonUnit => write!(f, "cannot invert series with zero constant term"),
            Error::Degenerate(n) => write!(f, "vanishing Hankel determinant at n = {n}"),
            Error::Length { needed, got } => {
                write!(f, "sequence too short: needed {needed}, got {got}")
            }
            Error::Registry(s) => write!(f, "unknown identity or suite: {s}"),
            Error::Domain(s) => write!(f, "domain error: {s}"),
            Error::Divisor(s) => write!(f, "divisor constraint violated: {s}"),
            Error::Bridge(s) => write!(f, "nome bridge self-check failed: {s}"),
        }
    }
}

impl std::error::Error for Error {}
