//! Exact and p-adic arithmetic for verifying divisibility properties of
//! harmonic-type sums: multiple harmonic sums, Bernoulli numbers, Lucas
//! sequences, central binomial sums, hypergeometric certificate pairs, and a
//! registry of machine-checked congruence claims over prime sweeps.

pub mod backend;
pub mod bernoulli;
pub mod binom;
pub mod claims;
pub mod error;
pub mod harmonic;
pub mod identities;
pub mod padic;
pub mod primes;
pub mod sequences;
pub mod wz;

pub use backend::{Achieved, Backend, Rational, RationalBackend, ValuationVerdict, VerdictKind};
pub use error::{ArithError, Result};
pub use padic::{CappedPAdic, PadicBackend};
