//! Central binomial coefficients, the weighted central binomial sums, and
//! the b/c coefficient tables.
//!
//! The b table is defined by prod_{j=1}^k (1 + a/j)^{-2} = sum_m b_{m,k} a^m
//! (b_{0,0} = 1, b_{m,0} = 0 for m >= 1) and filled column-by-column in k via
//! b_{m,k} = sum_{j=0}^m (-1)^j (j+1) k^{-j} b_{m-j,k-1}. The companion c
//! table comes from prod (1 + a/j)^{-1}: c_{0,k} = 1,
//! c_{m,k} = -sum_{j=1}^m H_k({1}^j) c_{m-j,k}, and b is the convolution
//! c * c.

use num_bigint::BigInt;
use num_traits::One;

use crate::backend::{Backend, Rational, RationalBackend};
use crate::error::Result;
use crate::harmonic::{mhs_prefix_table, MhsIndex};

/// Exact C(2k, k).
pub fn central_binomial(k: u64) -> BigInt {
    central_binomials(k).pop().unwrap()
}

/// C(2i, i) for 0 <= i <= k, by the incremental ratio 2(2i-1)/i.
pub fn central_binomials(k: u64) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(k as usize + 1);
    out.push(BigInt::one());
    for i in 1..=k {
        let prev = out.last().unwrap();
        out.push(prev * BigInt::from(2 * (2 * i - 1)) / BigInt::from(i));
    }
    out
}

/// Which weight multiplies term k of a sum.
#[derive(Debug, Clone)]
pub enum Weight {
    One,
    /// H_{k-1}(index): the prefix value one step behind the summation index.
    MhsPrefix(MhsIndex),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Terms t^k w_k (ak+b) / (k^d C(2k,k)).
    InverseCentral,
    /// Terms t^k w_k (ak+b) C(2k,k) / k^d.
    Central,
}

/// A weighted central binomial sum family.
#[derive(Debug, Clone)]
pub struct SumSpec {
    pub d: u32,
    pub t: Rational,
    pub weight: Weight,
    pub direction: Direction,
    /// Optional linear numerator a*k + b; defaults to 1.
    pub numerator: Option<(i64, i64)>,
}

impl SumSpec {
    pub fn new(d: u32, t: Rational, weight: Weight, direction: Direction) -> Self {
        SumSpec {
            d,
            t,
            weight,
            direction,
            numerator: None,
        }
    }
}

/// Partial sum of the family to N under the chosen backend.
pub fn weighted_sum<B: Backend>(spec: &SumSpec, n: u64, backend: &B) -> Result<B::Value> {
    let weights = match &spec.weight {
        Weight::One => None,
        Weight::MhsPrefix(idx) => Some(mhs_prefix_table(n.saturating_sub(1), idx, backend)?),
    };
    let centrals = central_binomials(n);
    let tv = backend.from_rational(&spec.t);
    let mut tpow = backend.one();
    let mut sum = backend.zero();
    for k in 1..=n {
        tpow = backend.mul(&tpow, &tv);
        let mut term = tpow.clone();
        if let Some(tab) = &weights {
            term = backend.mul(&term, &tab.values[k as usize - 1]);
        }
        if let Some((a, b)) = spec.numerator {
            term = backend.mul(
                &term,
                &backend.from_bigint(&(BigInt::from(a) * BigInt::from(k) + BigInt::from(b))),
            );
        }
        let c = backend.from_bigint(&centrals[k as usize]);
        let kd = backend.from_bigint(&BigInt::from(k).pow(spec.d));
        match spec.direction {
            Direction::InverseCentral => {
                term = backend.div(&term, &backend.mul(&kd, &c))?;
            }
            Direction::Central => {
                term = backend.div(&backend.mul(&term, &c), &kd)?;
            }
        }
        sum = backend.add(&sum, &term);
    }
    Ok(sum)
}

/// The b and c coefficient tables, indexed [m][k].
#[derive(Debug, Clone)]
pub struct BTable<V> {
    pub b: Vec<Vec<V>>,
    pub c: Vec<Vec<V>>,
}

impl<V: Clone> BTable<V> {
    pub fn m_max(&self) -> usize {
        self.b.len() - 1
    }

    pub fn k_max(&self) -> usize {
        self.b[0].len() - 1
    }

    /// b_{m,k} with the conventions b_{-1} = b_{-2} = 0.
    pub fn b_guarded(&self, m: i64, k: usize, zero: V) -> V {
        if m < 0 {
            zero
        } else {
            self.b[m as usize][k].clone()
        }
    }
}

/// Fill both tables for 0 <= m <= m_max, 0 <= k <= k_max.
pub fn b_tables<B: Backend>(m_max: usize, k_max: usize, backend: &B) -> Result<BTable<B::Value>> {
    let zero = backend.zero();
    let one = backend.one();
    let mut b = vec![vec![zero.clone(); k_max + 1]; m_max + 1];
    let mut c = vec![vec![zero.clone(); k_max + 1]; m_max + 1];
    for k in 0..=k_max {
        b[0][k] = one.clone();
        c[0][k] = one.clone();
    }
    // H_k({1}^j) prefix tables for the c recurrence
    let mut h1: Vec<Vec<B::Value>> = Vec::with_capacity(m_max + 1);
    h1.push(vec![one.clone(); k_max + 1]); // {1}^0 convention: 1
    for j in 1..=m_max {
        let idx = MhsIndex::repeated(1, j)?;
        h1.push(mhs_prefix_table(k_max as u64, &idx, backend)?.values);
    }
    for k in 1..=k_max {
        let kinv = backend.inv(&backend.from_int(k as i64))?;
        for m in 1..=m_max {
            // b recurrence over j with (-1)^j (j+1) / k^j
            let mut acc = backend.zero();
            let mut kpow = backend.one();
            for j in 0..=m {
                let coeff = if j % 2 == 0 {
                    backend.from_int(j as i64 + 1)
                } else {
                    backend.from_int(-(j as i64 + 1))
                };
                let term = backend.mul(&backend.mul(&coeff, &kpow), &b[m - j][k - 1]);
                acc = backend.add(&acc, &term);
                if j < m {
                    kpow = backend.mul(&kpow, &kinv);
                }
            }
            b[m][k] = acc;
            // c recurrence
            let mut acc = backend.zero();
            for j in 1..=m {
                let term = backend.mul(&h1[j][k], &c[m - j][k]);
                acc = backend.add(&acc, &term);
            }
            c[m][k] = backend.neg(&acc);
        }
    }
    Ok(BTable { b, c })
}

/// Check the closed forms for b_1..b_4 against the table, exactly, k <= k_max.
pub fn b_closed_form_check(k_max: usize) -> bool {
    let backend = RationalBackend::new(2);
    let table = match b_tables(4, k_max, &backend) {
        Ok(t) => t,
        Err(_) => return false,
    };
    let h1 = mhs_prefix_table(k_max as u64, &MhsIndex::new(vec![1]).unwrap(), &backend)
        .unwrap()
        .values;
    let h11 = mhs_prefix_table(k_max as u64, &MhsIndex::new(vec![1, 1]).unwrap(), &backend)
        .unwrap()
        .values;
    let h111 = mhs_prefix_table(k_max as u64, &MhsIndex::new(vec![1, 1, 1]).unwrap(), &backend)
        .unwrap()
        .values;
    let h1111 = mhs_prefix_table(
        k_max as u64,
        &MhsIndex::new(vec![1, 1, 1, 1]).unwrap(),
        &backend,
    )
    .unwrap()
    .values;
    let int = |n: i64| Rational::from(BigInt::from(n));
    (0..=k_max).all(|k| {
        let (h, s2, s3, s4) = (&h1[k], &h11[k], &h111[k], &h1111[k]);
        table.b[1][k] == int(-2) * h
            && table.b[2][k] == int(3) * h * h - int(2) * s2
            && table.b[3][k] == int(6) * h * s2 - int(2) * s3 - int(4) * h * h * h
            && table.b[4][k]
                == int(5) * h * h * h * h + int(6) * h * s3 + int(3) * s2 * s2
                    - int(12) * h * h * s2
                    - int(2) * s4
    })
}
