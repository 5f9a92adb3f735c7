//! The eight acceptance criteria, one test each, each ending in a single
//! pass/fail line. These are the full-scale runs; the unit tests cover the
//! same ground at small sizes.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use congr_core::backend::{Achieved, Rational, RationalBackend};
use congr_core::binom::b_tables;
use congr_core::claims::{
    evaluate_claim, sweep, sweep_primes, bernoulli_cache_for, BackendKind, ClaimId, Verdict,
};
use congr_core::harmonic::{mhs_rational, MhsIndex};
use congr_core::identities::run_all;
use congr_core::sequences::lucas_uv;
use congr_core::wz::{
    p2_parameter_grid, summation_formula_check, t1_specialized_identity_check, telescoping_check,
    WzPairId,
};

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn criterion_1_rational_sweep() {
    let primes = sweep_primes(5, 199);
    let results = sweep(
        &ClaimId::default_registry(),
        &primes,
        BackendKind::Rational,
        10,
        1,
    );
    let bad: Vec<_> = results
        .iter()
        .filter(|r| r.verdict != Verdict::Proven)
        .collect();
    for r in &bad {
        eprintln!(
            "  {} p={} -> {:?} (achieved {:?}, witness {:?})",
            r.id.name(),
            r.p,
            r.verdict,
            r.achieved,
            r.witness
        );
    }
    println!(
        "criterion 1 (exact-rational sweep p<=199, {} tasks): {}",
        results.len(),
        if bad.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(bad.is_empty());
}

#[test]
fn criterion_2_padic_sweep() {
    let primes = sweep_primes(5, 1009);
    let results = sweep(
        &ClaimId::default_registry(),
        &primes,
        BackendKind::Padic,
        10,
        0usize.max(std::thread::available_parallelism().map_or(1, |n| n.get())),
    );
    let bad: Vec<_> = results
        .iter()
        .filter(|r| r.verdict != Verdict::Proven)
        .collect();
    for r in &bad {
        eprintln!("  {} p={} -> {:?}", r.id.name(), r.p, r.verdict);
    }
    println!(
        "criterion 2 (p-adic sweep p<=1009 incl. conjectural, {} tasks): {}",
        results.len(),
        if bad.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(bad.is_empty());
}

#[test]
fn criterion_3_backend_agreement() {
    let primes = sweep_primes(5, 101);
    let ids = ClaimId::default_registry();
    let exact = sweep(&ids, &primes, BackendKind::Rational, 10, 1);
    let capped = sweep(&ids, &primes, BackendKind::Padic, 10, 1);
    assert_eq!(exact.len(), capped.len());
    let mut ok = true;
    for (e, c) in exact.iter().zip(&capped) {
        assert_eq!((e.id, e.p), (c.id, c.p));
        if e.verdict != c.verdict {
            eprintln!(
                "  {} p={}: rational {:?} vs padic {:?}",
                e.id.name(),
                e.p,
                e.verdict,
                c.verdict
            );
            ok = false;
            continue;
        }
        // the p-adic achieved valuation must be the exact one, or a lower
        // bound (precision cap) that the exact value satisfies
        match (e.achieved, c.achieved) {
            (Some(Achieved::Exact(v)), Some(Achieved::Exact(w))) if v != w => {
                eprintln!("  {} p={}: valuation {} vs {}", e.id.name(), e.p, v, w);
                ok = false;
            }
            (Some(Achieved::Exact(v)), Some(Achieved::AtLeast(b))) if v < b => {
                eprintln!("  {} p={}: exact {} below padic bound {}", e.id.name(), e.p, v, b);
                ok = false;
            }
            (Some(Achieved::Infinite), Some(Achieved::Exact(w))) => {
                eprintln!("  {} p={}: zero vs padic exact {}", e.id.name(), e.p, w);
                ok = false;
            }
            _ => {}
        }
    }
    println!(
        "criterion 3 (backend agreement p<=101, {} tasks): {}",
        exact.len(),
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok);
}

#[test]
fn criterion_4_wz_suite() {
    let mut ok = true;
    for id in [WzPairId::T1, WzPairId::T3, WzPairId::T5] {
        ok &= telescoping_check(id, 60, None).unwrap();
        ok &= summation_formula_check(id, 60, None).unwrap();
    }
    for a in p2_parameter_grid() {
        ok &= telescoping_check(WzPairId::P2, 60, Some(&a)).unwrap();
        ok &= summation_formula_check(WzPairId::P2, 60, Some(&a)).unwrap();
    }
    ok &= t1_specialized_identity_check(40).unwrap();
    println!(
        "criterion 4 (certificate pairs, n<=60, 5 parameter values): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok);
}

#[test]
fn criterion_5_identity_suite() {
    let results = run_all(None).unwrap();
    let mut ok = true;
    for (id, passed) in &results {
        if !passed {
            eprintln!("  {} failed", id.name());
            ok = false;
        }
    }
    println!(
        "criterion 5 (identity suite, {} identities on documented grids): {}",
        results.len(),
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok);
}

#[test]
fn criterion_6_spot_checks() {
    let bern = bernoulli_cache_for(&ClaimId::ALL, &[199]);
    let t1 = evaluate_claim(ClaimId::T1, 5, BackendKind::Rational, 10, &bern);
    let t3 = evaluate_claim(ClaimId::T3, 5, BackendKind::Rational, 10, &bern);
    let mut ok = t1.verdict == Verdict::Proven && t3.verdict == Verdict::Proven;
    // v_p(1) = 1 for the second-kind Lucas sequence at x = 1, all 5<=p<=199
    for p in sweep_primes(5, 199) {
        let pair = lucas_uv(p, &rat(1, 1));
        if pair.v[p as usize] != rat(1, 1) {
            eprintln!("  v_{p}(1) = {} != 1", pair.v[p as usize]);
            ok = false;
        }
    }
    println!(
        "criterion 6 (spot checks at p=5 and v_p(1)=1 for p<=199): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok);
}

/// Brute-force H_n by literal nested summation.
fn mhs_brute(n: u64, idx: &[i32]) -> Rational {
    fn rec(start: u64, n: u64, idx: &[i32]) -> Rational {
        let Some((&a, rest)) = idx.split_first() else {
            return Rational::one();
        };
        let mut sum = Rational::zero();
        for k in start..=n {
            if (n - k) < rest.len() as u64 {
                break;
            }
            let sign = if a < 0 && k % 2 == 1 { -1 } else { 1 };
            let term = Rational::new(
                BigInt::from(sign),
                BigInt::from(k).pow(a.unsigned_abs()),
            );
            sum += term * rec(k + 1, n, rest);
        }
        sum
    }
    rec(1, n, idx)
}

/// Power-series oracle: coefficients of prod_{j=1}^k (1 + a/j)^{-2} mod a^{m+1}.
fn b_series_oracle(m_max: usize, k: usize) -> Vec<Rational> {
    // numerator poly prod (1 + a/j)^2, truncated
    let mut num = vec![Rational::zero(); m_max + 1];
    num[0] = Rational::one();
    for j in 1..=k {
        let inv_j = Rational::new(BigInt::one(), BigInt::from(j));
        for _ in 0..2 {
            let mut next = num.clone();
            for i in 1..=m_max {
                let add = &num[i - 1] * &inv_j;
                next[i] += add;
            }
            num = next;
        }
    }
    // power-series inverse
    let mut inv = vec![Rational::zero(); m_max + 1];
    inv[0] = Rational::one();
    for i in 1..=m_max {
        let mut acc = Rational::zero();
        for j in 1..=i {
            acc += &num[j] * &inv[i - j];
        }
        inv[i] = -acc;
    }
    inv
}

#[test]
fn criterion_7_oracle_equivalence() {
    let mut ok = true;
    // MHS recursion vs nested summation
    let entries: Vec<i32> = (-3..=3).filter(|&a| a != 0).collect();
    let mut indices: Vec<Vec<i32>> = Vec::new();
    for &a in &entries {
        indices.push(vec![a]);
        for &b in &entries {
            indices.push(vec![a, b]);
            for &c in &entries {
                indices.push(vec![a, b, c]);
            }
        }
    }
    for idx in &indices {
        for n in 0..=12u64 {
            let fast = mhs_rational(n, &MhsIndex::new(idx.clone()).unwrap()).unwrap();
            if fast != mhs_brute(n, idx) {
                eprintln!("  mhs mismatch at n={n}, index {idx:?}");
                ok = false;
            }
        }
    }
    // b table vs series inversion
    let backend = RationalBackend::new(2);
    let table = b_tables(6, 30, &backend).unwrap();
    for k in 0..=30usize {
        let series = b_series_oracle(6, k);
        for m in 0..=6usize {
            if table.b[m][k] != series[m] {
                eprintln!("  b-table mismatch at m={m}, k={k}");
                ok = false;
            }
        }
    }
    println!(
        "criterion 7 (oracle equivalence: {} indices x n<=12, b-table k<=30): {}",
        indices.len(),
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok);
}

#[test]
fn criterion_8_sensitivity() {
    let mut refuted_t1 = 0;
    let primes_t1: Vec<u64> = sweep_primes(5, 500)
        .into_iter()
        .filter(|&p| ClaimId::T1Mut.applicable(p))
        .take(10)
        .collect();
    let bern = bernoulli_cache_for(&ClaimId::ALL, &[*primes_t1.iter().max().unwrap()]);
    for &p in &primes_t1 {
        let r = evaluate_claim(ClaimId::T1Mut, p, BackendKind::Rational, 10, &bern);
        if r.verdict == Verdict::Refuted {
            refuted_t1 += 1;
        }
    }
    let mut refuted_t5 = 0;
    let primes_t5: Vec<u64> = sweep_primes(5, 500)
        .into_iter()
        .filter(|&p| ClaimId::T5Mut.applicable(p))
        .take(10)
        .collect();
    let bern5 = bernoulli_cache_for(&ClaimId::ALL, &[*primes_t5.iter().max().unwrap()]);
    for &p in &primes_t5 {
        let r = evaluate_claim(ClaimId::T5Mut, p, BackendKind::Padic, 10, &bern5);
        if r.verdict == Verdict::Refuted {
            refuted_t5 += 1;
        }
    }
    let ok = refuted_t1 >= 9 && refuted_t5 >= 9;
    println!(
        "criterion 8 (sensitivity: mutants refuted {refuted_t1}/10 and {refuted_t5}/10): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok);
}
