//! Lucas sequences u_n(x), v_n(x), Lucas numbers L_n, the Fermat quotient,
//! Pochhammer symbols, and the finite polylogarithm for rational arguments.
//!
//! The golden ratio is never represented: every occurrence of the finite
//! logarithms at phi^{+-2} is mediated through the integer identity
//! L_1(phi^2) + L_1(phi^{-2}) = sum_{k=1}^{p-1} L_{2k}/k, which is rational.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::backend::{Backend, Rational};
use crate::error::Result;

/// u and v sequences for s_n = x s_{n-1} - s_{n-2}, seeds (0,1) and (2,x).
#[derive(Debug, Clone)]
pub struct LucasPair {
    pub x: Rational,
    pub u: Vec<Rational>,
    pub v: Vec<Rational>,
}

pub fn lucas_uv(n_max: u64, x: &Rational) -> LucasPair {
    let n = n_max as usize;
    let mut u = Vec::with_capacity(n + 1);
    let mut v = Vec::with_capacity(n + 1);
    u.push(Rational::zero());
    v.push(Rational::from(BigInt::from(2)));
    if n >= 1 {
        u.push(Rational::one());
        v.push(x.clone());
    }
    for i in 2..=n {
        u.push(x * &u[i - 1] - &u[i - 2]);
        v.push(x * &v[i - 1] - &v[i - 2]);
    }
    LucasPair {
        x: x.clone(),
        u,
        v,
    }
}

/// v_n(x) = (-1)^n v_n(-x) for all n <= n_max, exactly.
pub fn lucas_symmetry_check(n_max: u64, x: &Rational) -> bool {
    let pos = lucas_uv(n_max, x);
    let neg = lucas_uv(n_max, &-x.clone());
    (0..=n_max as usize).all(|n| {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        pos.v[n] == Rational::from(BigInt::from(sign)) * &neg.v[n]
    })
}

/// Lucas numbers L_0 = 2, L_1 = 1, L_n = L_{n-1} + L_{n-2}.
#[derive(Debug, Clone)]
pub struct LucasNumbers {
    pub l: Vec<BigInt>,
}

impl LucasNumbers {
    pub fn with_max(n_max: u64) -> Self {
        let n = n_max as usize;
        let mut l = vec![BigInt::from(2), BigInt::one()];
        for i in 2..=n.max(1) {
            let next = &l[i - 1] + &l[i - 2];
            l.push(next);
        }
        LucasNumbers { l }
    }

    pub fn get(&self, n: usize) -> &BigInt {
        &self.l[n]
    }
}

/// sum_{k=1}^{p-1} L_{2k}/k, the rational surrogate for
/// L_1(phi^2) + L_1(phi^{-2}).
pub fn golden_log_sum<B: Backend>(p: u64, backend: &B) -> Result<B::Value> {
    // run the Lucas recurrence in the backend so the p-adic route stays in
    // residues
    let mut prev = backend.from_int(-1); // L_{-1}
    let mut cur = backend.from_int(2); // L_0
    let mut sum = backend.zero();
    for k in 1..p {
        for _ in 0..2 {
            let next = backend.add(&cur, &prev);
            prev = cur;
            cur = next;
        }
        // cur = L_{2k}
        let term = backend.div(&cur, &backend.from_int(k as i64))?;
        sum = backend.add(&sum, &term);
    }
    Ok(sum)
}

/// q_p(2) = (2^{p-1} - 1)/p, an integer by Fermat's little theorem.
pub fn fermat_quotient_2(p: u64) -> Rational {
    let num = (BigInt::one() << (p - 1) as usize) - BigInt::one();
    Rational::new(num, BigInt::from(p))
}

/// (a)_0 = 1, (a)_m = a (a+1) ... (a+m-1).
pub fn pochhammer(a: &Rational, m: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..m {
        acc *= a + Rational::from(BigInt::from(i));
    }
    acc
}

/// Finite polylogarithm sum_{k=1}^{p-1} x^k / k^d for rational x.
pub fn finite_polylog<B: Backend>(d: u32, x: &Rational, p: u64, backend: &B) -> Result<B::Value> {
    let xv = backend.from_rational(x);
    let mut xpow = backend.one();
    let mut sum = backend.zero();
    for k in 1..p {
        xpow = backend.mul(&xpow, &xv);
        let kd = BigInt::from(k).pow(d);
        let term = backend.div(&xpow, &backend.from_bigint(&kd))?;
        sum = backend.add(&sum, &term);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::RationalBackend;
    use crate::primes::primes_in;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn lucas_uv_examples() {
        let pair = lucas_uv(10, &rat(1, 1));
        let v1: Vec<i64> = vec![2, 1, -1, -2, -1, 1, 2, 1, -1, -2, -1];
        for (n, &expect) in v1.iter().enumerate() {
            assert_eq!(pair.v[n], rat(expect, 1));
        }
        // v_5(1) = 1 and the period-6 pattern gives v_p(1) = 1 for p > 3
        assert_eq!(pair.v[5], rat(1, 1));

        let pair2 = lucas_uv(10, &rat(2, 1));
        for n in 0..=10usize {
            assert_eq!(pair2.u[n], rat(n as i64, 1));
        }

        let pair3 = lucas_uv(10, &rat(3, 1));
        let lucas = LucasNumbers::with_max(20);
        for k in 0..=10usize {
            assert_eq!(pair3.v[k], Rational::from(lucas.get(2 * k).clone()));
        }
    }

    #[test]
    fn symmetry() {
        assert!(lucas_symmetry_check(20, &rat(5, 3)));
        assert!(lucas_symmetry_check(20, &rat(0, 1)));
        assert!(lucas_symmetry_check(20, &rat(1, 1)));
    }

    #[test]
    fn lucas_identities() {
        let lucas = LucasNumbers::with_max(60);
        for k in 0..=30usize {
            let sign = if k % 2 == 0 { 2 } else { -2 };
            assert_eq!(
                lucas.get(2 * k),
                &(lucas.get(k) * lucas.get(k) - BigInt::from(sign))
            );
        }
    }

    #[test]
    fn lucas_p_congruence() {
        // L_p = 1 mod p for primes
        for p in primes_in(2, 199) {
            let lucas = LucasNumbers::with_max(p);
            let r = lucas.get(p as usize) % BigInt::from(p);
            assert!((r - BigInt::one()) % BigInt::from(p) == BigInt::zero(), "p = {p}");
        }
    }

    #[test]
    fn golden_log_values() {
        let b = RationalBackend::new(3);
        assert_eq!(golden_log_sum(3, &b).unwrap(), rat(13, 2));
        assert_eq!(golden_log_sum(5, &b).unwrap(), rat(97, 4));
    }

    #[test]
    fn fermat_quotients() {
        assert_eq!(fermat_quotient_2(7), rat(9, 1));
        assert_eq!(fermat_quotient_2(3), rat(1, 1));
        assert_eq!(fermat_quotient_2(5), rat(3, 1));
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(7, 3), 0), rat(1, 1));
        assert_eq!(pochhammer(&rat(1, 1), 5), rat(120, 1));
        assert_eq!(pochhammer(&rat(-2, 1), 4), rat(0, 1));
    }

    #[test]
    fn polylog_matches_golden_sum_shape() {
        // L_1(4) = sum 4^k/k at p = 5
        let b = RationalBackend::new(5);
        let expect = rat(4, 1) + rat(16, 2) + rat(64, 3) + rat(256, 4);
        assert_eq!(finite_polylog(1, &rat(4, 1), 5, &b).unwrap(), expect);
    }
}
