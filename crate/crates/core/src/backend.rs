//! The backend contract shared by the exact-rational and capped p-adic
//! arithmetic, plus the exact-rational implementation.
//!
//! Every higher layer (harmonic sums, binomial sums, claim expressions) is
//! written against [`Backend`], so each congruence can be evaluated twice:
//! once with exact rationals (the oracle) and once with capped-precision
//! p-adics (the fast route). The two must agree; that cross-check is the
//! point of the design.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{ArithError, Result};

/// Exact arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// How much we know about `v_p(x)` after a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Achieved {
    /// Valuation known exactly.
    Exact(i64),
    /// Only a lower bound is certain (apparent zero at finite precision).
    AtLeast(i64),
    /// The value is exactly zero.
    Infinite,
}

impl Achieved {
    pub fn lower_bound(&self) -> Option<i64> {
        match self {
            Achieved::Exact(v) | Achieved::AtLeast(v) => Some(*v),
            Achieved::Infinite => None,
        }
    }
}

impl std::fmt::Display for Achieved {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Achieved::Exact(v) => write!(f, "{v}"),
            Achieved::AtLeast(v) => write!(f, ">={v}"),
            Achieved::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    Proven,
    Refuted,
    /// The precision budget cannot decide. Never emitted by the rational
    /// backend.
    Insufficient,
}

/// Result of asking whether `v_p(x) >= m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValuationVerdict {
    pub kind: VerdictKind,
    pub achieved: Achieved,
}

/// Arithmetic backend: a per-prime context producing immutable values.
///
/// All operations are pure; values may be shared freely across threads.
pub trait Backend: Clone + Send + Sync {
    type Value: Clone + std::fmt::Debug + Send + Sync;

    fn p(&self) -> u64;

    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn from_int(&self, n: i64) -> Self::Value;
    fn from_bigint(&self, n: &BigInt) -> Self::Value;
    /// Exact rationals embed without error: denominators divisible by p go
    /// through the shift mechanism on the p-adic side.
    fn from_rational(&self, q: &Rational) -> Self::Value;

    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn inv(&self, a: &Self::Value) -> Result<Self::Value>;

    fn div(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn from_ratio(&self, num: i64, den: i64) -> Self::Value {
        self.from_rational(&Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Multiply by p^e (e may be negative).
    fn mul_pow_p(&self, a: &Self::Value, e: i64) -> Self::Value;

    fn pow(&self, a: &Self::Value, e: u64) -> Self::Value {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Is `v_p(x) >= m` provable, refutable, or undecidable at this precision?
    fn valuation_at_least(&self, a: &Self::Value, m: i64) -> ValuationVerdict;

    /// True for the exact-rational backend.
    fn is_exact(&self) -> bool;

    /// Harmonic-sum tables need every denominator k <= n to be a unit.
    fn mhs_bound_ok(&self, n: u64) -> bool;
}

/// v_p of a nonzero rational; negative when p divides the denominator.
pub fn valuation(x: &Rational, p: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(ArithError::ZeroHasNoValuation);
    }
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut n = x.numer().abs();
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    if v > 0 {
        return Ok(v);
    }
    let mut d = x.denom().clone();
    while (&d % &p).is_zero() {
        d /= &p;
        v -= 1;
    }
    Ok(v)
}

/// Modular inverse of `a` mod `m`, `m > 1`, `gcd(a, m) = 1`.
pub(crate) fn modinv(a: &BigUint, m: &BigUint) -> BigUint {
    let a = BigInt::from_biguint(Sign::Plus, a.clone());
    let m_int = BigInt::from_biguint(Sign::Plus, m.clone());
    let g = a.extended_gcd(&m_int);
    debug_assert!(g.gcd.is_one(), "not invertible");
    let r = g.x.mod_floor(&m_int);
    r.to_biguint().expect("mod_floor of positive modulus")
}

/// Unique residue r in [0, p^e) with x ≡ r (mod p^e), for p-integral x.
pub fn rat_reduce_mod(x: &Rational, p: u64, e: u32) -> Result<BigUint> {
    let pe = BigUint::from(p).pow(e);
    let pe_int = BigInt::from_biguint(Sign::Plus, pe.clone());
    if (x.denom() % BigInt::from(p)).is_zero() {
        return Err(ArithError::DenominatorDivisibleByP(p));
    }
    let num = x.numer().mod_floor(&pe_int).to_biguint().unwrap();
    let den = x.denom().mod_floor(&pe_int).to_biguint().unwrap();
    Ok(num * modinv(&den, &pe) % pe)
}

/// Exact-rational backend for the prime `p`.
#[derive(Debug, Clone)]
pub struct RationalBackend {
    p: u64,
}

impl RationalBackend {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2, "p must be at least 2");
        RationalBackend { p }
    }
}

impl Backend for RationalBackend {
    type Value = Rational;

    fn p(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn from_int(&self, n: i64) -> Rational {
        Rational::from(BigInt::from(n))
    }

    fn from_bigint(&self, n: &BigInt) -> Rational {
        Rational::from(n.clone())
    }

    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn inv(&self, a: &Rational) -> Result<Rational> {
        if a.is_zero() {
            return Err(ArithError::InsufficientPrecision);
        }
        Ok(a.recip())
    }

    fn mul_pow_p(&self, a: &Rational, e: i64) -> Rational {
        let pe = BigInt::from(self.p).pow(e.unsigned_abs() as u32);
        if e >= 0 {
            a * Rational::from(pe)
        } else {
            a / Rational::from(pe)
        }
    }

    fn valuation_at_least(&self, a: &Rational, m: i64) -> ValuationVerdict {
        match valuation(a, self.p) {
            Err(_) => ValuationVerdict {
                kind: VerdictKind::Proven,
                achieved: Achieved::Infinite,
            },
            Ok(v) => ValuationVerdict {
                kind: if v >= m {
                    VerdictKind::Proven
                } else {
                    VerdictKind::Refuted
                },
                achieved: Achieved::Exact(v),
            },
        }
    }

    fn is_exact(&self) -> bool {
        true
    }

    fn mhs_bound_ok(&self, _n: u64) -> bool {
        true
    }
}

/// `v_p(x) >= m` for an exact rational; the universal congruence check.
pub fn check_valuation_at_least(x: &Rational, p: u64, m: i64) -> ValuationVerdict {
    RationalBackend::new(p).valuation_at_least(x, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn reduce_mod_examples() {
        assert_eq!(rat_reduce_mod(&rat(1, 2), 5, 3).unwrap(), BigUint::from(63u32));
        assert_eq!(rat_reduce_mod(&rat(0, 1), 7, 4).unwrap(), BigUint::zero());
        assert_eq!(rat_reduce_mod(&rat(1, 6), 7, 2).unwrap(), BigUint::from(41u32));
        assert_eq!(
            rat_reduce_mod(&rat(1, 5), 5, 2),
            Err(ArithError::DenominatorDivisibleByP(5))
        );
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&rat(50, 1), 5).unwrap(), 2);
        // 49/20 = H_6(1) numerator structure (Wolstenholme for p = 7)
        assert_eq!(valuation(&rat(49, 20), 7).unwrap(), 2);
        assert_eq!(valuation(&rat(49, 20), 5).unwrap(), -1);
        assert_eq!(valuation(&rat(0, 1), 3), Err(ArithError::ZeroHasNoValuation));
    }

    #[test]
    fn valuation_check_examples() {
        let v = check_valuation_at_least(&rat(49, 20), 7, 2);
        assert_eq!(v.kind, VerdictKind::Proven);
        assert_eq!(v.achieved, Achieved::Exact(2));

        let v = check_valuation_at_least(&Rational::zero(), 7, 100);
        assert_eq!(v.kind, VerdictKind::Proven);
        assert_eq!(v.achieved, Achieved::Infinite);

        let v = check_valuation_at_least(&rat(49, 20), 7, 3);
        assert_eq!(v.kind, VerdictKind::Refuted);
    }
}
