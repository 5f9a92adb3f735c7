//! Capped-precision p-adic numbers.
//!
//! A value is `p^{-shift} * (num + O(p^digits))` with `num` in `[0, p^digits)`,
//! so the guaranteed absolute precision is `digits - shift`: the value is known
//! modulo `p^{digits - shift}`. The model tracks absolute precision (an
//! interval model) because congruence claims are statements about absolute
//! precision; cancellation must visibly cost digits. Negative valuations are
//! carried by the shift field, covering the explicit divisions by p, p², p³,
//! p⁴ in the claim expressions.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::backend::{modinv, Achieved, Backend, Rational, ValuationVerdict, VerdictKind};
use crate::error::{ArithError, Result};

/// A p-adic number known to finite absolute precision.
///
/// Canonical form minimizes `shift`: either `shift == 0` or `p` does not
/// divide `num`. A value carrying no information (precision exhausted) is
/// `num = 0, shift = 0, digits = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CappedPAdic {
    pub p: u64,
    pub shift: u32,
    pub num: BigUint,
    pub digits: u32,
}

impl CappedPAdic {
    /// Guaranteed absolute precision: the value is known mod p^(this).
    pub fn precision(&self) -> i64 {
        self.digits as i64 - self.shift as i64
    }

    /// v_p of the stored residue, capped at `digits`.
    fn residue_valuation(&self) -> u32 {
        if self.num.is_zero() {
            return self.digits;
        }
        let p = BigUint::from(self.p);
        let mut v = 0u32;
        let mut n = self.num.clone();
        while v < self.digits {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            n = q;
            v += 1;
        }
        v
    }

    /// Lower bound for v_p of the represented value.
    pub fn valuation_lower_bound(&self) -> i64 {
        self.residue_valuation() as i64 - self.shift as i64
    }

    /// Exact valuation when the residue decides it, i.e. when the residue is
    /// nonzero mod p^digits.
    pub fn valuation(&self) -> Option<i64> {
        let w = self.residue_valuation();
        if w < self.digits {
            Some(w as i64 - self.shift as i64)
        } else {
            None
        }
    }

    /// Residue mod p^e for values with no negative part, when known that far.
    pub fn residue_mod(&self, e: u32) -> Option<BigUint> {
        if self.shift != 0 || self.precision() < e as i64 {
            return None;
        }
        Some(&self.num % BigUint::from(self.p).pow(e))
    }
}

impl std::fmt::Display for CappedPAdic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.shift == 0 {
            write!(f, "{} + O({}^{})", self.num, self.p, self.digits)
        } else {
            write!(
                f,
                "{}/{}^{} + O({}^{})",
                self.num,
                self.p,
                self.shift,
                self.p,
                self.precision()
            )
        }
    }
}

/// Backend producing [`CappedPAdic`] values with a fixed digit budget.
#[derive(Debug, Clone)]
pub struct PadicBackend {
    p: u64,
    digits: u32,
    pows: Arc<Vec<BigUint>>,
}

impl PadicBackend {
    pub fn new(p: u64, digits: u32) -> Self {
        assert!(p >= 2 && digits >= 1);
        let cap = digits as usize + 96;
        let mut pows = Vec::with_capacity(cap + 1);
        let mut x = BigUint::from(1u32);
        let pb = BigUint::from(p);
        for _ in 0..=cap {
            pows.push(x.clone());
            x *= &pb;
        }
        PadicBackend {
            p,
            digits,
            pows: Arc::new(pows),
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    fn pow_p(&self, e: u32) -> BigUint {
        match self.pows.get(e as usize) {
            Some(x) => x.clone(),
            None => BigUint::from(self.p).pow(e),
        }
    }

    /// Reduce and bring to canonical form.
    fn make(&self, num: BigUint, shift: u32, digits: u32) -> CappedPAdic {
        if digits <= shift {
            // no digits of information left
            return CappedPAdic {
                p: self.p,
                shift: 0,
                num: BigUint::zero(),
                digits: 0,
            };
        }
        let mut num = num % self.pow_p(digits);
        let mut shift = shift;
        let mut digits = digits;
        if num.is_zero() {
            digits -= shift;
            shift = 0;
        } else {
            let p = BigUint::from(self.p);
            while shift > 0 {
                let (q, r) = num.div_rem(&p);
                if !r.is_zero() {
                    break;
                }
                num = q;
                shift -= 1;
                digits -= 1;
            }
            if num.is_zero() {
                digits -= shift;
                shift = 0;
            }
        }
        CappedPAdic {
            p: self.p,
            shift,
            num,
            digits,
        }
    }

    fn nothing(&self) -> CappedPAdic {
        CappedPAdic {
            p: self.p,
            shift: 0,
            num: BigUint::zero(),
            digits: 0,
        }
    }

    fn check_same_p(&self, a: &CappedPAdic) {
        assert_eq!(self.p, a.p, "prime mismatch");
    }
}

impl Backend for PadicBackend {
    type Value = CappedPAdic;

    fn p(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> CappedPAdic {
        CappedPAdic {
            p: self.p,
            shift: 0,
            num: BigUint::zero(),
            digits: self.digits,
        }
    }

    fn one(&self) -> CappedPAdic {
        self.from_int(1)
    }

    fn from_int(&self, n: i64) -> CappedPAdic {
        self.from_bigint(&BigInt::from(n))
    }

    fn from_bigint(&self, n: &BigInt) -> CappedPAdic {
        let m = self.pow_p(self.digits);
        let m_int = BigInt::from_biguint(Sign::Plus, m);
        let r = n.mod_floor(&m_int).to_biguint().unwrap();
        self.make(r, 0, self.digits)
    }

    fn from_rational(&self, q: &Rational) -> CappedPAdic {
        if q.is_zero() {
            return self.zero();
        }
        let p = BigInt::from(self.p);
        let mut num = q.numer().abs();
        let mut vnum = 0u32;
        while (&num % &p).is_zero() {
            num /= &p;
            vnum += 1;
        }
        let mut den = q.denom().clone();
        let mut vden = 0u32;
        while (&den % &p).is_zero() {
            den /= &p;
            vden += 1;
        }
        let m = self.pow_p(self.digits);
        let m_int = BigInt::from_biguint(Sign::Plus, m.clone());
        let mut r = num.mod_floor(&m_int).to_biguint().unwrap();
        if q.numer().is_negative() {
            r = (&m - r) % &m;
        }
        let d = den.mod_floor(&m_int).to_biguint().unwrap();
        let mut unit = r * modinv(&d, &m) % &m;
        if vnum > 0 {
            unit = unit * self.pow_p(vnum.min(self.digits)) % &m;
        }
        self.make(unit, vden, self.digits)
    }

    fn add(&self, a: &CappedPAdic, b: &CappedPAdic) -> CappedPAdic {
        self.check_same_p(a);
        self.check_same_p(b);
        let prec = a.precision().min(b.precision());
        if prec <= 0 {
            return self.nothing();
        }
        let shift = a.shift.max(b.shift);
        let digits = shift + prec as u32;
        let na = &a.num * self.pow_p(shift - a.shift);
        let nb = &b.num * self.pow_p(shift - b.shift);
        self.make(na + nb, shift, digits)
    }

    fn sub(&self, a: &CappedPAdic, b: &CappedPAdic) -> CappedPAdic {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &CappedPAdic) -> CappedPAdic {
        self.check_same_p(a);
        if a.num.is_zero() {
            return a.clone();
        }
        let m = self.pow_p(a.digits);
        CappedPAdic {
            p: a.p,
            shift: a.shift,
            num: &m - &a.num,
            digits: a.digits,
        }
    }

    fn mul(&self, a: &CappedPAdic, b: &CappedPAdic) -> CappedPAdic {
        self.check_same_p(a);
        self.check_same_p(b);
        let prec = (a.precision() + b.valuation_lower_bound())
            .min(b.precision() + a.valuation_lower_bound());
        if prec + (a.shift + b.shift) as i64 <= 0 {
            return self.nothing();
        }
        let shift = a.shift + b.shift;
        // digits relative to the combined shift; valuation may exceed shift,
        // make() renormalizes
        let digits_i = shift as i64 + prec;
        if digits_i <= 0 {
            return self.nothing();
        }
        self.make(&a.num * &b.num, shift, digits_i as u32)
    }

    fn inv(&self, a: &CappedPAdic) -> Result<CappedPAdic> {
        self.check_same_p(a);
        let w = a.residue_valuation();
        if w >= a.digits {
            return Err(ArithError::InsufficientPrecision);
        }
        // a = p^{w - shift} * u with u a unit known mod p^{digits - w}
        let prec_res = a.digits as i64 + a.shift as i64 - 2 * w as i64;
        if prec_res <= 0 {
            return Err(ArithError::InsufficientPrecision);
        }
        let u = &a.num / self.pow_p(w);
        // 1/a = p^{shift - w} * u^{-1}; represent with shift max(w - shift, 0)
        let (res_shift, extra) = if w >= a.shift {
            (w - a.shift, 0)
        } else {
            (0, a.shift - w)
        };
        let digits = res_shift + prec_res as u32;
        let m = self.pow_p(digits);
        let mut num = modinv(&(&u % &m), &m);
        if extra > 0 {
            num = num * self.pow_p(extra) % &m;
        }
        Ok(self.make(num, res_shift, digits))
    }

    fn mul_pow_p(&self, a: &CappedPAdic, e: i64) -> CappedPAdic {
        self.check_same_p(a);
        if a.digits == 0 && a.num.is_zero() && a.shift == 0 && a.precision() <= 0 {
            return self.nothing();
        }
        if e >= 0 {
            let e = e as u32;
            if a.shift >= e {
                // p^shift * value stays known mod p^digits; only the shift moves
                self.make(a.num.clone(), a.shift - e, a.digits)
            } else {
                let extra = e - a.shift;
                self.make(&a.num * self.pow_p(extra), 0, a.digits + extra)
            }
        } else {
            let e = (-e) as u32;
            self.make(a.num.clone(), a.shift + e, a.digits)
        }
    }

    fn valuation_at_least(&self, a: &CappedPAdic, m: i64) -> ValuationVerdict {
        self.check_same_p(a);
        if a.precision() <= 0 {
            return ValuationVerdict {
                kind: VerdictKind::Insufficient,
                achieved: Achieved::AtLeast(a.precision()),
            };
        }
        match a.valuation() {
            Some(v) => ValuationVerdict {
                kind: if v >= m {
                    VerdictKind::Proven
                } else {
                    VerdictKind::Refuted
                },
                achieved: Achieved::Exact(v),
            },
            None => {
                let bound = a.precision();
                if bound >= m {
                    ValuationVerdict {
                        kind: VerdictKind::Proven,
                        achieved: Achieved::AtLeast(bound),
                    }
                } else {
                    ValuationVerdict {
                        kind: VerdictKind::Insufficient,
                        achieved: Achieved::AtLeast(bound),
                    }
                }
            }
        }
    }

    fn is_exact(&self) -> bool {
        false
    }

    fn mhs_bound_ok(&self, n: u64) -> bool {
        n < self.p
    }
}
