//! Property-based invariants for the arithmetic kernels: the capped p-adic
//! backend must agree with exact rational arithmetic wherever both are
//! defined, and its canonical form must be stable.

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use congr_core::backend::{rat_reduce_mod, valuation, Backend, Rational};
use congr_core::padic::PadicBackend;

fn small_primes() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 13, 101])
}

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..10_000)
        .prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #[test]
    fn embedding_matches_reduction(p in small_primes(), q in rational(), e in 1u32..12) {
        // compare only where the rational reduction is defined (p-free
        // denominator)
        prop_assume!((q.denom() % BigInt::from(p)) != BigInt::zero());
        let b = PadicBackend::new(p, 14);
        let x = b.from_rational(&q);
        if let Some(r) = x.residue_mod(e) {
            prop_assert_eq!(r, rat_reduce_mod(&q, p, e).unwrap());
        }
    }

    #[test]
    fn ring_ops_agree(p in small_primes(), a in rational(), b in rational()) {
        prop_assume!((a.denom() % BigInt::from(p)) != BigInt::zero());
        prop_assume!((b.denom() % BigInt::from(p)) != BigInt::zero());
        let bk = PadicBackend::new(p, 12);
        let (xa, xb) = (bk.from_rational(&a), bk.from_rational(&b));
        let sum = bk.add(&xa, &xb);
        let prod = bk.mul(&xa, &xb);
        let e = 6;
        if let Some(r) = sum.residue_mod(e) {
            prop_assert_eq!(r, rat_reduce_mod(&(&a + &b), p, e).unwrap());
        }
        if let Some(r) = prod.residue_mod(e) {
            prop_assert_eq!(r, rat_reduce_mod(&(&a * &b), p, e).unwrap());
        }
    }

    #[test]
    fn valuation_is_additive(p in small_primes(), a in rational(), b in rational()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let va = valuation(&a, p).unwrap();
        let vb = valuation(&b, p).unwrap();
        prop_assert_eq!(valuation(&(&a * &b), p).unwrap(), va + vb);
    }

    #[test]
    fn padic_valuation_bound_is_sound(p in small_primes(), q in rational()) {
        prop_assume!(!q.is_zero());
        let b = PadicBackend::new(p, 16);
        let x = b.from_rational(&q);
        let exact = valuation(&q, p).unwrap();
        prop_assert!(x.valuation_lower_bound() <= exact);
        if let Some(v) = x.valuation() {
            prop_assert_eq!(v, exact);
        }
    }

    #[test]
    fn shift_round_trip(p in small_primes(), q in rational(), e in 0i64..6) {
        prop_assume!((q.denom() % BigInt::from(p)) != BigInt::zero());
        let b = PadicBackend::new(p, 16);
        let x = b.from_rational(&q);
        let down = b.mul_pow_p(&x, -e);
        let up = b.mul_pow_p(&down, e);
        if let (Some(r1), Some(r2)) = (up.residue_mod(6), x.residue_mod(6)) {
            prop_assert_eq!(r1, r2);
        }
    }

    #[test]
    fn canonical_form_holds(p in small_primes(), q in rational()) {
        let b = PadicBackend::new(p, 12);
        let x = b.from_rational(&q);
        // canonical: either no shift, or the residue is a p-unit
        if x.shift > 0 {
            prop_assert!((&x.num % x.p) != num_bigint::BigUint::zero());
        }
    }

    #[test]
    fn inv_is_involutive(p in small_primes(), q in rational()) {
        prop_assume!(!q.is_zero());
        let b = PadicBackend::new(p, 16);
        let x = b.from_rational(&q);
        if let Ok(y) = b.inv(&x) {
            if let Ok(z) = b.inv(&y) {
                // x and 1/(1/x) agree to the surviving precision
                let e = z.precision().min(x.precision()).min(4);
                if e >= 1 && x.shift == 0 && z.shift == 0 {
                    prop_assert_eq!(x.residue_mod(e as u32), z.residue_mod(e as u32));
                }
            }
        }
    }
}
