//! Alternating multiple harmonic sums H_n(a_1, ..., a_r) and the stuffle
//! (quasi-shuffle) product identities.
//!
//! H_n(a_1,...,a_r) = sum over 1 <= k_1 < ... < k_r <= n of
//! prod_i sgn(a_i)^{k_i} / k_i^{|a_i|}, with the empty sum equal to zero.
//! Indices follow the ascending-summation convention (k_1 < ... < k_r, sign
//! attached to each k_i); the literature has both orientations, so every
//! claim expression sticks to this one.

use num_bigint::BigInt;

use crate::backend::{Backend, Rational, RationalBackend};
use crate::error::{ArithError, Result};

/// A signed-exponent composition (a_1, ..., a_r), entries nonzero, depth >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MhsIndex(Vec<i32>);

impl MhsIndex {
    pub fn new(entries: Vec<i32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(ArithError::EmptyIndex);
        }
        if entries.iter().any(|&a| a == 0) {
            return Err(ArithError::ZeroIndexEntry);
        }
        Ok(MhsIndex(entries))
    }

    /// {a}^r repetition notation.
    pub fn repeated(a: i32, r: usize) -> Result<Self> {
        Self::new(vec![a; r])
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }
}

impl std::fmt::Display for MhsIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Prefix table of H_n(index) for 0 <= n <= n_max.
#[derive(Debug, Clone)]
pub struct MhsTable<V> {
    pub index: MhsIndex,
    pub values: Vec<V>,
}

impl<V> MhsTable<V> {
    pub fn value(&self, n: usize) -> &V {
        &self.values[n]
    }
}

/// Full prefix table via the recursion
/// H_n(a_1..a_r) = H_{n-1}(a_1..a_r) + sgn(a_r)^n n^{-|a_r|} H_{n-1}(a_1..a_{r-1}),
/// costing O(n * r) ring operations.
pub fn mhs_prefix_table<B: Backend>(
    n_max: u64,
    index: &MhsIndex,
    backend: &B,
) -> Result<MhsTable<B::Value>> {
    if !backend.mhs_bound_ok(n_max) {
        return Err(ArithError::NOutOfRange {
            n: n_max,
            p: backend.p(),
        });
    }
    let n = n_max as usize;
    let mut prev: Vec<B::Value> = Vec::new(); // depth j-1 table; empty means "constant 1"
    for (j, &a) in index.entries().iter().enumerate() {
        let e = a.unsigned_abs();
        let negative = a < 0;
        let mut cur = Vec::with_capacity(n + 1);
        cur.push(backend.zero());
        for i in 1..=n {
            let pow = BigInt::from(i).pow(e);
            let mut term = backend.inv(&backend.from_bigint(&pow))?;
            if negative && i % 2 == 1 {
                term = backend.neg(&term);
            }
            if j > 0 {
                term = backend.mul(&term, &prev[i - 1]);
            }
            cur.push(backend.add(&cur[i - 1], &term));
        }
        prev = cur;
    }
    Ok(MhsTable {
        index: index.clone(),
        values: prev,
    })
}

/// H_n(index) under the chosen backend.
pub fn mhs<B: Backend>(n: u64, index: &MhsIndex, backend: &B) -> Result<B::Value> {
    let table = mhs_prefix_table(n, index, backend)?;
    Ok(table.values[n as usize].clone())
}

/// Exact-rational H_n(index).
pub fn mhs_rational(n: u64, index: &MhsIndex) -> Result<Rational> {
    mhs(n, index, &RationalBackend::new(2))
}

fn h(n: u64, entries: &[i32]) -> Rational {
    mhs_rational(n, &MhsIndex::new(entries.to_vec()).unwrap()).unwrap()
}

/// Stuffle merge: signs multiply, magnitudes add.
fn merge(a: i32, b: i32) -> i32 {
    let mag = a.abs() + b.abs();
    if (a < 0) != (b < 0) {
        -mag
    } else {
        mag
    }
}

/// H_n(a) H_n(b) = H_n(a,b) + H_n(b,a) + H_n(a*b), exact
/// (a*b the stuffle merge).
pub fn stuffle_check_2(n: u64, a: i32, b: i32) -> bool {
    h(n, &[a]) * h(n, &[b]) == h(n, &[a, b]) + h(n, &[b, a]) + h(n, &[merge(a, b)])
}

/// H_n(a,b) H_n(c) = H_n(a,b,c) + H_n(a,c,b) + H_n(c,a,b) + H_n(a*c,b) + H_n(a,b*c).
pub fn stuffle_check_3(n: u64, a: i32, b: i32, c: i32) -> bool {
    h(n, &[a, b]) * h(n, &[c])
        == h(n, &[a, b, c]) + h(n, &[a, c, b]) + h(n, &[c, a, b]) + h(n, &[merge(a, c), b])
            + h(n, &[a, merge(b, c)])
}

/// The splitting rule H_k(1,1) = H_{k-1}(1,1) + H_{k-1}(1)/k.
pub fn splitting_check(k_max: u64) -> bool {
    let idx1 = MhsIndex::new(vec![1]).unwrap();
    let idx11 = MhsIndex::new(vec![1, 1]).unwrap();
    let backend = RationalBackend::new(2);
    let t1 = mhs_prefix_table(k_max, &idx1, &backend).unwrap();
    let t11 = mhs_prefix_table(k_max, &idx11, &backend).unwrap();
    (1..=k_max as usize).all(|k| {
        t11.values[k]
            == &t11.values[k - 1] + t1.values[k - 1].clone() / Rational::from(BigInt::from(k))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PadicBackend;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn mhs_examples() {
        let i1 = MhsIndex::new(vec![1]).unwrap();
        assert_eq!(mhs_rational(0, &i1).unwrap(), rat(0, 1));
        assert_eq!(mhs_rational(4, &i1).unwrap(), rat(25, 12));
        let im2 = MhsIndex::new(vec![-2]).unwrap();
        assert_eq!(mhs_rational(3, &im2).unwrap(), rat(-31, 36));
        let i12 = MhsIndex::new(vec![1, 2]).unwrap();
        assert_eq!(mhs_rational(2, &i12).unwrap(), rat(1, 4));
    }

    #[test]
    fn prefix_table_examples() {
        let b = RationalBackend::new(2);
        let t = mhs_prefix_table(3, &MhsIndex::new(vec![1]).unwrap(), &b).unwrap();
        assert_eq!(t.values, vec![rat(0, 1), rat(1, 1), rat(3, 2), rat(11, 6)]);
        let t = mhs_prefix_table(2, &MhsIndex::new(vec![2]).unwrap(), &b).unwrap();
        assert_eq!(t.values, vec![rat(0, 1), rat(1, 1), rat(5, 4)]);
        let t = mhs_prefix_table(1, &MhsIndex::new(vec![1, 1]).unwrap(), &b).unwrap();
        assert_eq!(t.values, vec![rat(0, 1), rat(0, 1)]);
    }

    #[test]
    fn invalid_indices() {
        assert_eq!(MhsIndex::new(vec![]), Err(ArithError::EmptyIndex));
        assert_eq!(MhsIndex::new(vec![1, 0]), Err(ArithError::ZeroIndexEntry));
    }

    #[test]
    fn padic_range_guard() {
        let b = PadicBackend::new(7, 4);
        let i1 = MhsIndex::new(vec![1]).unwrap();
        assert!(mhs_prefix_table(6, &i1, &b).is_ok());
        assert_eq!(
            mhs_prefix_table(7, &i1, &b).unwrap_err(),
            ArithError::NOutOfRange { n: 7, p: 7 }
        );
    }

    #[test]
    fn stuffle_examples() {
        assert!(stuffle_check_2(10, 1, 2));
        assert!(stuffle_check_2(1, 3, 5));
        assert!(stuffle_check_3(25, 1, 1, 1));
        // (111): H_n^2(1) = 2 H_n(1,1) + H_n(2); (h121); square rule for H(2)
        for n in [1, 2, 7, 12] {
            assert!(stuffle_check_2(n, 1, 1));
            assert!(stuffle_check_2(n, 1, 2));
            assert!(stuffle_check_2(n, 2, 2));
        }
        assert!(splitting_check(30));
    }

    #[test]
    fn wolstenholme_smoke() {
        use crate::backend::check_valuation_at_least;
        use crate::backend::VerdictKind;
        use crate::primes::primes_in;
        let i1 = MhsIndex::new(vec![1]).unwrap();
        for p in primes_in(5, 199) {
            let v = check_valuation_at_least(&mhs_rational(p - 1, &i1).unwrap(), p, 2);
            assert_eq!(v.kind, VerdictKind::Proven, "p = {p}");
        }
    }
}
