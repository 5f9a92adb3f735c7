//! The four hypergeometric certificate pairs (F, G), the telescoping
//! relation, and the summation formula they certify.
//!
//! A certificate pair satisfies F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k) on its
//! domain; summing the relation over a triangular region gives
//! sum_{n=0}^N G(n,0) = sum_{n=0}^N (G(n,n) + F(n+1,n)) - sum_{k=0}^N F(N+1,k).
//! Only verification is done here — no certificate discovery.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::backend::Rational;
use crate::error::{ArithError, Result};
use crate::harmonic::{mhs_prefix_table, MhsIndex};
use crate::backend::RationalBackend;
use crate::sequences::pochhammer;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WzPairId {
    T1,
    T3,
    T5,
    /// Parametrized pair; requires a rational parameter a avoiding the
    /// negative integers in range.
    P2,
}

impl WzPairId {
    pub const ALL: [WzPairId; 4] = [WzPairId::T1, WzPairId::T3, WzPairId::T5, WzPairId::P2];

    pub fn name(self) -> &'static str {
        match self {
            WzPairId::T1 => "PAIR-T1",
            WzPairId::T3 => "PAIR-T3",
            WzPairId::T5 => "PAIR-T5",
            WzPairId::P2 => "PAIR-P2",
        }
    }

    pub fn parametrized(self) -> bool {
        self == WzPairId::P2
    }
}

impl FromStr for WzPairId {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "PAIR-T1" => Ok(WzPairId::T1),
            "PAIR-T3" => Ok(WzPairId::T3),
            "PAIR-T5" => Ok(WzPairId::T5),
            "PAIR-P2" => Ok(WzPairId::P2),
            other => Err(ArithError::UnknownIdentity(other.to_string())),
        }
    }
}

/// Shared exact tables for evaluating a pair up to a given n.
#[derive(Debug, Clone)]
pub struct WzEval {
    id: WzPairId,
    fact: Vec<Rational>,
    h2: Vec<Rational>,
    /// (1+a)_m for the parametrized pair, and the parameter itself.
    poch: Vec<Rational>,
    a: Rational,
}

impl WzEval {
    /// Build tables sufficient for n, k <= n_max (plus the n+1 accesses the
    /// checks make). Errors with PochhammerPole if (1+a)_m vanishes in range.
    pub fn new(id: WzPairId, n_max: u64, a: Option<&Rational>) -> Result<Self> {
        let top = 3 * n_max as usize + 6;
        let mut fact = Vec::with_capacity(top + 1);
        fact.push(Rational::one());
        for i in 1..=top {
            let last = fact.last().unwrap() * Rational::from(BigInt::from(i));
            fact.push(last);
        }
        let h2 = mhs_prefix_table(
            n_max + 2,
            &MhsIndex::new(vec![2]).unwrap(),
            &RationalBackend::new(2),
        )?
        .values;
        let a = match (id, a) {
            (WzPairId::P2, Some(a)) => a.clone(),
            (WzPairId::P2, None) => Rational::zero(),
            _ => Rational::zero(),
        };
        let mut poch = Vec::with_capacity(n_max as usize + 3);
        poch.push(Rational::one());
        if id == WzPairId::P2 {
            for m in 0..(n_max as usize + 2) {
                let factor = &a + Rational::from(BigInt::from(m as i64 + 1));
                if factor.is_zero() {
                    return Err(ArithError::PochhammerPole(format!(
                        "(1+a)_{} vanishes for a = {}",
                        m + 1,
                        a
                    )));
                }
                let last = poch.last().unwrap() * factor;
                poch.push(last);
            }
        }
        Ok(WzEval {
            id,
            fact,
            h2,
            poch,
            a,
        })
    }

    fn sign(n: u64, k: u64) -> Rational {
        if (n + k) % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        }
    }

    fn f(&self, i: usize) -> &Rational {
        &self.fact[i]
    }

    /// F(n, k); domain n >= k + 1.
    pub fn big_f(&self, n: u64, k: u64) -> Result<Rational> {
        if n < k + 1 {
            return Err(ArithError::DomainViolation { n, k });
        }
        let (n_, k_) = (n as usize, k as usize);
        Ok(match self.id {
            WzPairId::T1 => {
                Self::sign(n, k) * self.f(n_ - k_ - 1) * self.f(k_) * self.f(k_)
                    / self.f(n_ + k_ + 1)
                    * &self.h2[k_]
            }
            WzPairId::T3 => {
                let sgn = if k % 2 == 0 { 1 } else { -1 };
                Rational::from(BigInt::from(sgn)) * self.f(n_ - k_ - 1) * self.f(k_) * self.f(k_)
                    / (Rational::from(BigInt::from(2 * (k_ as i64 + 1))) * self.f(n_ + k_ + 1))
                    * &self.h2[k_]
            }
            WzPairId::T5 => {
                let k4 = self.f(k_).pow(4);
                let n2 = self.f(n_).pow(2);
                k4 * n2 * Rational::from(BigInt::from(2 * n as i64 + 3 * k as i64 + 3))
                    / (Rational::from(BigInt::from(2)) * self.f(2 * k_ + 1) * self.f(k_ + n_ + 1).pow(2))
            }
            WzPairId::P2 => {
                Self::sign(n, k) * self.f(k_).pow(2) * self.f(n_).pow(2) * &self.poch[n_ - k_ - 1]
                    / (self.f(n_ + k_ + 1) * self.poch[n_].pow(2))
            }
        })
    }

    /// G(n, k); domain n >= k.
    pub fn big_g(&self, n: u64, k: u64) -> Result<Rational> {
        if n < k {
            return Err(ArithError::DomainViolation { n, k });
        }
        let (n_, k_) = (n as usize, k as usize);
        let np1_sq = Rational::from(BigInt::from((n as i64 + 1) * (n as i64 + 1)));
        Ok(match self.id {
            WzPairId::T1 => {
                Rational::from(BigInt::from(2)) * Self::sign(n, k) * self.f(n_ - k_)
                    * self.f(k_).pow(2)
                    / (self.f(n_ + k_ + 1) * Rational::from(BigInt::from(n as i64 + 1)))
                    * (&self.h2[k_] - Rational::one() / &np1_sq)
            }
            WzPairId::T3 => {
                let sgn = if k % 2 == 0 { 1 } else { -1 };
                Rational::from(BigInt::from(sgn)) * self.f(n_ - k_) * self.f(k_).pow(2)
                    / (self.f(n_ + k_ + 1) * &np1_sq)
                    * (&self.h2[k_] - Rational::one() / &np1_sq)
            }
            WzPairId::T5 => {
                self.f(k_).pow(4) * self.f(n_).pow(2)
                    / (self.f(2 * k_) * self.f(k_ + n_ + 1).pow(2))
            }
            WzPairId::P2 => {
                let lin = Rational::from(BigInt::from(2 * n as i64 + 2)) + &self.a;
                Self::sign(n, k) * self.f(k_).pow(2) * self.f(n_).pow(2) * &self.poch[n_ - k_]
                    * lin
                    / (self.f(n_ + k_ + 1) * self.poch[n_ + 1].pow(2))
            }
        })
    }
}

/// F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k) exactly for all 0 <= k < n <= n_max.
pub fn telescoping_check(id: WzPairId, n_max: u64, a: Option<&Rational>) -> Result<bool> {
    let eval = WzEval::new(id, n_max + 1, a)?;
    for n in 1..=n_max {
        for k in 0..n {
            let lhs = eval.big_f(n + 1, k)? - eval.big_f(n, k)?;
            let rhs = eval.big_g(n, k + 1)? - eval.big_g(n, k)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// sum_{n=0}^N G(n,0) = sum_{n=0}^N (G(n,n) + F(n+1,n)) - sum_{k=0}^N F(N+1,k).
pub fn summation_formula_check(id: WzPairId, n: u64, a: Option<&Rational>) -> Result<bool> {
    let eval = WzEval::new(id, n + 1, a)?;
    let mut lhs = Rational::zero();
    let mut diag = Rational::zero();
    for i in 0..=n {
        lhs += eval.big_g(i, 0)?;
        diag += eval.big_g(i, i)? + eval.big_f(i + 1, i)?;
    }
    let mut bnd = Rational::zero();
    for k in 0..=n {
        bnd += eval.big_f(n + 1, k)?;
    }
    Ok(lhs == diag - bnd)
}

/// The T1 pair summed over the triangle, rearranged:
/// 4 sum_{k<=N} 1/(k^4 C(2k,k)) = 3 sum H_{k-1}(2)/(k^2 C(2k,k))
/// - 2 sum (-1)^k/k^4 + sum (-1)^{N+k} (N-k)!((k-1)!)^2/(N+k)! H_{k-1}(2),
/// exact for each N <= n_max.
pub fn t1_specialized_identity_check(n_max: u64) -> Result<bool> {
    let eval = WzEval::new(WzPairId::T1, n_max + 1, None)?;
    let centrals = crate::binom::central_binomials(n_max);
    for n in 1..=n_max {
        let mut lhs = Rational::zero();
        let mut mid1 = Rational::zero();
        let mut mid2 = Rational::zero();
        let mut tail = Rational::zero();
        for k in 1..=n {
            let k_ = k as usize;
            let kc = Rational::from(BigInt::from(k) * &centrals[k_]);
            lhs += Rational::from(BigInt::from(4)) / (Rational::from(BigInt::from(k).pow(3)) * &kc);
            mid1 += Rational::from(BigInt::from(3)) * &eval.h2[k_ - 1]
                / (Rational::from(BigInt::from(k)) * kc);
            let sgn = if k % 2 == 0 { 1 } else { -1 };
            mid2 += Rational::new(BigInt::from(2 * sgn), BigInt::from(k).pow(4));
            let sgn2 = if (n + k) % 2 == 0 { 1 } else { -1 };
            tail += Rational::from(BigInt::from(sgn2)) * eval.f(n as usize - k_)
                * eval.f(k_ - 1).pow(2)
                / eval.f(n as usize + k_)
                * &eval.h2[k_ - 1];
        }
        if lhs != mid1 - mid2 + tail {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The documented a-grid for the parametrized pair.
pub fn p2_parameter_grid() -> Vec<Rational> {
    let r = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
    vec![r(0, 1), r(1, 2), r(-1, 3), r(5, 1), r(7, 2)]
}

/// Convenience: (a)_m via the sequences module, re-exported for callers.
pub fn rising(a: &Rational, m: u64) -> Rational {
    pochhammer(a, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn telescoping_point_example() {
        let eval = WzEval::new(WzPairId::T1, 4, None).unwrap();
        let lhs = eval.big_f(3, 1).unwrap() - eval.big_f(2, 1).unwrap();
        let rhs = eval.big_g(2, 2).unwrap() - eval.big_g(2, 1).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn telescoping_small() {
        for id in [WzPairId::T1, WzPairId::T3, WzPairId::T5] {
            assert!(telescoping_check(id, 15, None).unwrap(), "{}", id.name());
        }
        for a in p2_parameter_grid() {
            assert!(telescoping_check(WzPairId::P2, 12, Some(&a)).unwrap(), "a = {a}");
        }
    }

    #[test]
    fn summation_small() {
        assert!(summation_formula_check(WzPairId::T1, 0, None).unwrap());
        for id in [WzPairId::T1, WzPairId::T3, WzPairId::T5] {
            for n in [1, 5, 12] {
                assert!(summation_formula_check(id, n, None).unwrap(), "{}", id.name());
            }
        }
        assert!(summation_formula_check(WzPairId::P2, 10, Some(&rat(1, 2))).unwrap());
    }

    #[test]
    fn p2_at_zero_matches_plain_factorials() {
        // (1+0)_m = m!, so the a = 0 pair must equal the explicit form
        let eval = WzEval::new(WzPairId::P2, 10, Some(&rat(0, 1))).unwrap();
        for m in 0..10usize {
            assert_eq!(eval.poch[m], eval.fact[m]);
        }
        assert!(telescoping_check(WzPairId::P2, 10, None).unwrap());
    }

    #[test]
    fn pochhammer_pole_detected() {
        let err = WzEval::new(WzPairId::P2, 8, Some(&rat(-3, 1))).unwrap_err();
        assert!(matches!(err, ArithError::PochhammerPole(_)));
    }

    #[test]
    fn domain_guards() {
        let eval = WzEval::new(WzPairId::T5, 5, None).unwrap();
        assert_eq!(
            eval.big_f(2, 2).unwrap_err(),
            ArithError::DomainViolation { n: 2, k: 2 }
        );
        assert_eq!(
            eval.big_g(1, 2).unwrap_err(),
            ArithError::DomainViolation { n: 1, k: 2 }
        );
        assert!(eval.big_g(2, 2).is_ok());
    }

    #[test]
    fn specialized_identity_small() {
        assert!(t1_specialized_identity_check(12).unwrap());
    }

    #[test]
    fn ids_round_trip() {
        for id in WzPairId::ALL {
            assert_eq!(id.name().parse::<WzPairId>().unwrap(), id);
        }
        assert!("PAIR-XX".parse::<WzPairId>().is_err());
    }
}
