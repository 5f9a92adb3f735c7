//! Exact Bernoulli numbers and their reductions modulo prime powers.
//!
//! Computed from the recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0 (m >= 1),
//! with B_0 = 1. Exact rationals with caching, then reduction: the sweeps
//! only need indices up to ~1000, where the O(m^2) recurrence is adequate
//! (denominators stay tiny by von Staudt-Clausen, so the rational
//! accumulation never hits large gcds).

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::backend::{rat_reduce_mod, Rational};
use crate::error::{ArithError, Result};

/// Append-only cache of B_0 .. B_max, built up front, read-only thereafter.
#[derive(Debug, Clone)]
pub struct BernoulliCache {
    values: Vec<Rational>,
}

impl BernoulliCache {
    pub fn with_max(max: usize) -> Self {
        let mut values: Vec<Rational> = Vec::with_capacity(max + 1);
        values.push(Rational::one());
        if max >= 1 {
            values.push(Rational::new(BigInt::from(-1), BigInt::from(2)));
        }
        // row holds C(m+1, j) for j = 0..=m+1
        let mut row: Vec<BigInt> = vec![BigInt::one(), BigInt::from(2), BigInt::one()];
        for m in 2..=max {
            // extend Pascal row from C(m, .) to C(m+1, .)
            let mut next = Vec::with_capacity(m + 2);
            next.push(BigInt::one());
            for j in 1..=m {
                next.push(&row[j - 1] + &row[j]);
            }
            next.push(BigInt::one());
            row = next;
            if m % 2 == 1 {
                values.push(Rational::zero());
                continue;
            }
            let mut sum = Rational::zero();
            for j in (0..m).filter(|&j| j <= 1 || j % 2 == 0) {
                sum += Rational::from(row[j].clone()) * &values[j];
            }
            values.push(-sum / Rational::from(BigInt::from(m as i64 + 1)));
        }
        BernoulliCache { values }
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// B_m; panics if m exceeds the prebuilt range.
    pub fn get(&self, m: usize) -> &Rational {
        &self.values[m]
    }

    /// B_m mod p^e. Errors if p divides the denominator (von Staudt-Clausen
    /// guarantees it does not when (p-1) does not divide m; checked, not
    /// assumed).
    pub fn reduce_mod(&self, m: usize, p: u64, e: u32) -> Result<BigUint> {
        rat_reduce_mod(self.get(m), p, e).map_err(|err| match err {
            ArithError::DenominatorDivisibleByP(p) => {
                ArithError::IrregularDenominator { p, index: m }
            }
            other => other,
        })
    }
}

/// One-off exact B_m.
pub fn bernoulli(m: usize) -> Rational {
    BernoulliCache::with_max(m).get(m).clone()
}
