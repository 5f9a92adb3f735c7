//! The congruence-claim registry and its evaluator.
//!
//! Each claim is an expression LHS - RHS, written against the backend trait,
//! together with a required p-adic valuation m: the claim holds at p iff
//! v_p(LHS - RHS) >= m. Family claims (parameter ranges, per-k expansions)
//! produce one item per instance; the verdict is the conjunction, with the
//! first failing instance recorded as a witness.

use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::backend::{Achieved, Backend, Rational, RationalBackend, VerdictKind};
use crate::bernoulli::BernoulliCache;
use crate::binom::{b_tables, central_binomials};
use crate::error::{ArithError, Result};
use crate::harmonic::{mhs_prefix_table, MhsIndex};
use crate::padic::PadicBackend;
use crate::primes::primes_in;
use crate::sequences::{fermat_quotient_2, golden_log_sum, LucasNumbers};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClaimStatus {
    Proven,
    Conjectural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClaimId {
    TauZ3,
    TauZ2,
    T1,
    T2A,
    T2B,
    Cor2,
    T3,
    T4A,
    T4B,
    CorL,
    T5,
    L1,
    L2,
    L3A,
    L3B,
    P2x1,
    P2x2,
    P2x3,
    L4,
    MhsA,
    MhsB,
    MhsC,
    MhsD,
    MhsE,
    MhsF,
    MhsG,
    Q4,
    Eq23,
    Dual,
    Eq35,
    Five,
    Eq20,
    Hpk,
    SunZ4,
    SunB3,
    Conj1,
    /// Deliberately wrong variants used by the sensitivity check; not part of
    /// the default registry.
    T1Mut,
    T5Mut,
}

impl ClaimId {
    pub const ALL: [ClaimId; 38] = [
        ClaimId::TauZ3,
        ClaimId::TauZ2,
        ClaimId::T1,
        ClaimId::T2A,
        ClaimId::T2B,
        ClaimId::Cor2,
        ClaimId::T3,
        ClaimId::T4A,
        ClaimId::T4B,
        ClaimId::CorL,
        ClaimId::T5,
        ClaimId::L1,
        ClaimId::L2,
        ClaimId::L3A,
        ClaimId::L3B,
        ClaimId::P2x1,
        ClaimId::P2x2,
        ClaimId::P2x3,
        ClaimId::L4,
        ClaimId::MhsA,
        ClaimId::MhsB,
        ClaimId::MhsC,
        ClaimId::MhsD,
        ClaimId::MhsE,
        ClaimId::MhsF,
        ClaimId::MhsG,
        ClaimId::Q4,
        ClaimId::Eq23,
        ClaimId::Dual,
        ClaimId::Eq35,
        ClaimId::Five,
        ClaimId::Eq20,
        ClaimId::Hpk,
        ClaimId::SunZ4,
        ClaimId::SunB3,
        ClaimId::Conj1,
        ClaimId::T1Mut,
        ClaimId::T5Mut,
    ];

    /// The default registry: everything except the sensitivity mutants.
    pub fn default_registry() -> Vec<ClaimId> {
        ClaimId::ALL
            .into_iter()
            .filter(|id| !matches!(id, ClaimId::T1Mut | ClaimId::T5Mut))
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            ClaimId::TauZ3 => "C-TAU-Z3",
            ClaimId::TauZ2 => "C-TAU-Z2",
            ClaimId::T1 => "C-T1",
            ClaimId::T2A => "C-T2A",
            ClaimId::T2B => "C-T2B",
            ClaimId::Cor2 => "C-COR2",
            ClaimId::T3 => "C-T3",
            ClaimId::T4A => "C-T4A",
            ClaimId::T4B => "C-T4B",
            ClaimId::CorL => "C-COR-L",
            ClaimId::T5 => "C-T5",
            ClaimId::L1 => "C-L1",
            ClaimId::L2 => "C-L2",
            ClaimId::L3A => "C-L3A",
            ClaimId::L3B => "C-L3B",
            ClaimId::P2x1 => "C-P2-1",
            ClaimId::P2x2 => "C-P2-2",
            ClaimId::P2x3 => "C-P2-3",
            ClaimId::L4 => "C-L4",
            ClaimId::MhsA => "C-MHS-A",
            ClaimId::MhsB => "C-MHS-B",
            ClaimId::MhsC => "C-MHS-C",
            ClaimId::MhsD => "C-MHS-D",
            ClaimId::MhsE => "C-MHS-E",
            ClaimId::MhsF => "C-MHS-F",
            ClaimId::MhsG => "C-MHS-G",
            ClaimId::Q4 => "C-Q4",
            ClaimId::Eq23 => "C-EQ23",
            ClaimId::Dual => "C-DUAL",
            ClaimId::Eq35 => "C-EQ35",
            ClaimId::Five => "C-5",
            ClaimId::Eq20 => "C-EQ20",
            ClaimId::Hpk => "C-HPK",
            ClaimId::SunZ4 => "C-SUN-Z4",
            ClaimId::SunB3 => "C-SUN-B3",
            ClaimId::Conj1 => "C-CONJ1",
            ClaimId::T1Mut => "C-T1-MUT",
            ClaimId::T5Mut => "C-T5-MUT",
        }
    }

    pub fn status(self) -> ClaimStatus {
        match self {
            ClaimId::SunZ4 | ClaimId::SunB3 | ClaimId::Conj1 => ClaimStatus::Conjectural,
            _ => ClaimStatus::Proven,
        }
    }

    /// Smallest prime the claim applies to.
    pub fn min_p(self) -> u64 {
        match self {
            ClaimId::T1
            | ClaimId::T2B
            | ClaimId::T3
            | ClaimId::L3A
            | ClaimId::L3B
            | ClaimId::L4
            | ClaimId::Eq23
            | ClaimId::Dual
            | ClaimId::Eq20
            | ClaimId::Conj1
            | ClaimId::T1Mut => 5,
            ClaimId::SunB3 => 11,
            _ => 7,
        }
    }

    /// Upper sweep bound for claims whose cost grows superlinearly in p.
    pub fn max_p(self) -> Option<u64> {
        match self {
            ClaimId::MhsB => Some(199),
            _ => None,
        }
    }

    pub fn applicable(self, p: u64) -> bool {
        p >= self.min_p() && self.max_p().is_none_or(|hi| p <= hi)
    }

    /// Largest required valuation among the claim's items.
    pub fn max_required(self) -> i64 {
        match self {
            ClaimId::TauZ3 | ClaimId::TauZ2 => 3,
            ClaimId::T1 | ClaimId::T1Mut => 2,
            ClaimId::T2A | ClaimId::T2B | ClaimId::T3 => 1,
            ClaimId::Cor2 => 1,
            ClaimId::T4A => 2,
            ClaimId::T4B => 1,
            ClaimId::CorL => 3,
            ClaimId::T5 | ClaimId::T5Mut => 3,
            ClaimId::L1 | ClaimId::L2 => 2,
            ClaimId::L3A | ClaimId::L3B => 3,
            ClaimId::P2x1 => 3,
            ClaimId::P2x2 => 2,
            ClaimId::P2x3 => 1,
            ClaimId::L4 => 2,
            ClaimId::MhsA => 3,
            ClaimId::MhsB => 5,
            ClaimId::MhsC => 3,
            ClaimId::MhsD => 2,
            ClaimId::MhsE => 1,
            ClaimId::MhsF => 2,
            ClaimId::MhsG => 2,
            ClaimId::Q4 => 1,
            ClaimId::Eq23 => 2,
            ClaimId::Dual => 1,
            ClaimId::Eq35 => 6,
            ClaimId::Five => 2,
            ClaimId::Eq20 => 1,
            ClaimId::Hpk => 3,
            ClaimId::SunZ4 => 2,
            ClaimId::SunB3 => 4,
            ClaimId::Conj1 => 2,
        }
    }

    /// Largest explicit power of p in any denominator of the expression;
    /// sizes the p-adic digit budget.
    pub fn max_shift(self) -> u32 {
        match self {
            ClaimId::Eq35 => 8,
            _ => 6,
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ClaimId::TauZ3 => "alternating inverse-central zeta(3) analogue",
            ClaimId::TauZ2 => "inverse-central zeta(2) analogue",
            ClaimId::T1 => "weight-4 inverse-central combination mod p^2",
            ClaimId::T2A => "inverse-central quartic sum vs harmonic number",
            ClaimId::T2B => "central-binomial cubic sum mod p",
            ClaimId::Cor2 => "quartic vs weighted quadratic sum mod p",
            ClaimId::T3 => "alternating weight-5 combination mod p",
            ClaimId::T4A => "alternating quintic sum vs Lucas data mod p^2",
            ClaimId::T4B => "alternating central quartic sum vs Lucas data",
            ClaimId::CorL => "Lucas-number logarithmic sum mod p^3",
            ClaimId::T5 => "cubed-central sum with linear numerator mod p^3",
            ClaimId::L1 => "weighted quadratic inverse-central sum mod p^2",
            ClaimId::L2 => "alternating weighted cubic sum vs Lucas data",
            ClaimId::L3A => "symmetrized depth-2 harmonic sums mod p^3",
            ClaimId::L3B => "depth-2 harmonic sum (1,2) mod p^3",
            ClaimId::P2x1 => "coefficient-weighted sum, order-1 term",
            ClaimId::P2x2 => "coefficient-weighted sum, order-2 term",
            ClaimId::P2x3 => "coefficient-weighted sum, order-3 term",
            ClaimId::L4 => "b-table top-row parity congruences",
            ClaimId::MhsA => "single harmonic sums at weight <= 4",
            ClaimId::MhsB => "harmonic sums vs Bernoulli quotients, high order",
            ClaimId::MhsC => "repeated-index harmonic sums, weight <= 5",
            ClaimId::MhsD => "depth-2 harmonic sums, weight <= 5",
            ClaimId::MhsE => "depth-3 harmonic sums, odd weight <= 5",
            ClaimId::MhsF => "mixed-depth weight-5 harmonic sums",
            ClaimId::MhsG => "alternating harmonic sums, weight <= 5",
            ClaimId::Q4 => "t=4 inverse-central sum vs Fermat quotient",
            ClaimId::Eq23 => "per-k binomial-ratio expansion mod p^2",
            ClaimId::Dual => "per-k central-binomial duality mod p",
            ClaimId::Eq35 => "cubed-central sum intermediate form mod p^6",
            ClaimId::Five => "weight-4 depth-2 harmonic sums mod p^2",
            ClaimId::Eq20 => "weight-5 depth-2 harmonic sums mod p",
            ClaimId::Hpk => "per-k shifted harmonic expansion mod p^3",
            ClaimId::SunZ4 => "conjectural refinement of the quartic sum",
            ClaimId::SunB3 => "conjectural central cubic sum mod p^4",
            ClaimId::Conj1 => "conjectural weighted quadratic sum mod p^2",
            ClaimId::T1Mut => "sensitivity mutant of C-T1 (6/5 -> 7/5)",
            ClaimId::T5Mut => "sensitivity mutant of C-T5 (21k-8 -> 22k-8)",
        }
    }
}

impl FromStr for ClaimId {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| ArithError::UnknownClaim(s.to_string()))
    }
}

/// One evaluated instance of a claim at a prime.
#[derive(Debug, Clone)]
pub struct Item<V> {
    pub label: String,
    pub value: V,
    pub required: i64,
}

impl<V> Item<V> {
    fn whole(value: V, required: i64) -> Self {
        Item {
            label: String::new(),
            value,
            required,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BackendKind {
    Rational,
    Padic,
}

impl BackendKind {
    pub fn name(self) -> &'static str {
        match self {
            BackendKind::Rational => "rational",
            BackendKind::Padic => "padic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Proven,
    Refuted,
    Insufficient,
    NotApplicable,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Proven => "Proven",
            Verdict::Refuted => "Refuted",
            Verdict::Insufficient => "Insufficient",
            Verdict::NotApplicable => "NotApplicable",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClaimResult {
    pub id: ClaimId,
    pub p: u64,
    pub verdict: Verdict,
    /// Minimum achieved valuation over the claim's items.
    pub achieved: Option<Achieved>,
    pub required: i64,
    /// Label of the first failing item, for family claims.
    pub witness: Option<String>,
    pub backend: BackendKind,
    pub millis: u128,
}

// ---------------------------------------------------------------------------
// expression helpers

struct Ctx<'a, B: Backend> {
    p: u64,
    b: &'a B,
    bern: &'a BernoulliCache,
}

impl<'a, B: Backend> Ctx<'a, B> {
    fn int(&self, n: i64) -> B::Value {
        self.b.from_int(n)
    }

    fn rat(&self, n: i64, d: i64) -> B::Value {
        self.b.from_ratio(n, d)
    }

    /// B_m as a backend value (exact rational reduced on the p-adic side).
    fn bern(&self, m: i64) -> B::Value {
        assert!(m >= 0);
        self.b.from_rational(self.bern.get(m as usize))
    }

    /// Prefix table of H_n(index) for n <= p-1.
    fn htab(&self, idx: &[i32]) -> Result<Vec<B::Value>> {
        let index = MhsIndex::new(idx.to_vec())?;
        Ok(mhs_prefix_table(self.p - 1, &index, self.b)?.values)
    }

    /// H_{p-1}(index).
    fn h(&self, idx: &[i32]) -> Result<B::Value> {
        Ok(self.htab(idx)?.pop_last())
    }

    /// C(2k,k) for k <= p-1 as backend values.
    fn centrals(&self) -> Vec<B::Value> {
        central_binomials(self.p - 1)
            .iter()
            .map(|c| self.b.from_bigint(c))
            .collect()
    }

    /// sum_{k=1}^{p-1} t^k w_k / (k^d C(2k,k)), with w_k = H_{k-1}(2) when
    /// `weighted`, and t an integer (1, -1 or 4 here).
    fn s_inv(&self, d: u32, t: i64, weighted: bool) -> Result<B::Value> {
        let cb = self.centrals();
        let h2 = if weighted {
            Some(self.htab(&[2])?)
        } else {
            None
        };
        let tv = self.int(t);
        let mut tpow = self.b.one();
        let mut sum = self.b.zero();
        for k in 1..self.p {
            if t != 1 {
                tpow = self.b.mul(&tpow, &tv);
            }
            let kd = self.b.from_bigint(&BigInt::from(k).pow(d));
            let mut term = self.b.inv(&self.b.mul(&kd, &cb[k as usize]))?;
            if t != 1 {
                term = self.b.mul(&term, &tpow);
            }
            if let Some(h2) = &h2 {
                term = self.b.mul(&term, &h2[k as usize - 1]);
            }
            sum = self.b.add(&sum, &term);
        }
        Ok(sum)
    }

    /// sum_{k=1}^{p-1} (-1)^k C(2k,k) / k^d.
    fn s_central(&self, d: u32, alternating: bool) -> Result<B::Value> {
        let cb = self.centrals();
        let mut sum = self.b.zero();
        for k in 1..self.p {
            let kd = self.b.from_bigint(&BigInt::from(k).pow(d));
            let mut term = self.b.div(&cb[k as usize], &kd)?;
            if alternating && k % 2 == 1 {
                term = self.b.neg(&term);
            }
            sum = self.b.add(&sum, &term);
        }
        Ok(sum)
    }

    /// sum_{k=1}^{p-1} (a k + c) / (k^3 C(2k,k)^3).
    fn s_cubed(&self, a: i64, c: i64) -> Result<B::Value> {
        let cb = self.centrals();
        let mut sum = self.b.zero();
        for k in 1..self.p {
            let k3 = self.b.from_bigint(&BigInt::from(k).pow(3));
            let c3 = self.b.pow(&cb[k as usize], 3);
            let num = self.int(a * k as i64 + c);
            let term = self.b.div(&num, &self.b.mul(&k3, &c3))?;
            sum = self.b.add(&sum, &term);
        }
        Ok(sum)
    }

    /// 1 - L_p^2 as a backend value.
    fn one_minus_lp_sq(&self) -> B::Value {
        let lucas = LucasNumbers::with_max(self.p);
        let lp = lucas.get(self.p as usize);
        self.b.from_bigint(&(BigInt::from(1) - lp * lp))
    }

    fn shift(&self, v: &B::Value, e: i64) -> B::Value {
        self.b.mul_pow_p(v, e)
    }
}

trait PopLast<V> {
    fn pop_last(self) -> V;
}

impl<V> PopLast<V> for Vec<V> {
    fn pop_last(mut self) -> V {
        self.pop().expect("nonempty table")
    }
}

/// C(n, k) as i64 for the tiny coefficient formulas.
fn small_binom(n: i64, k: i64) -> i64 {
    let mut r = 1i64;
    for j in 0..k {
        r = r * (n - j) / (j + 1);
    }
    r
}

// ---------------------------------------------------------------------------
// claim expressions

fn eval_items<B: Backend>(
    id: ClaimId,
    p: u64,
    b: &B,
    bern: &BernoulliCache,
) -> Result<Vec<Item<B::Value>>> {
    let cx = Ctx { p, b, bern };
    let pi = p as i64;
    let items = match id {
        ClaimId::TauZ3 => {
            let s = cx.s_inv(3, -1, false)?;
            let s = b.neg(&s); // (-1)^{k-1} = -(-1)^k
            let w = cx.h(&[1])?;
            let v = b.sub(&b.mul(&cx.rat(5, 2), &s), &cx.shift(&w, -2));
            vec![Item::whole(v, 3)]
        }
        ClaimId::TauZ2 => {
            let s = cx.s_inv(2, 1, false)?;
            let w = cx.h(&[1])?;
            let v = b.sub(&b.mul(&cx.int(3), &s), &cx.shift(&w, -1));
            vec![Item::whole(v, 3)]
        }
        ClaimId::T1 | ClaimId::T1Mut => {
            let s1 = cx.s_inv(4, 1, false)?;
            let s2 = cx.s_inv(2, 1, true)?;
            let w = cx.h(&[1])?;
            let coeff = if id == ClaimId::T1 {
                cx.rat(6, 5)
            } else {
                cx.rat(7, 5)
            };
            let mut v = b.sub(&b.mul(&cx.int(4), &s1), &b.mul(&cx.int(3), &s2));
            v = b.sub(&v, &b.mul(&cx.int(3), &cx.shift(&w, -3)));
            v = b.add(&v, &cx.shift(&b.mul(&coeff, &cx.bern(pi - 5)), 1));
            vec![Item::whole(v, 2)]
        }
        ClaimId::T2A => {
            let s1 = cx.s_inv(4, 1, false)?;
            let w = cx.h(&[1])?;
            vec![Item::whole(b.sub(&s1, &cx.shift(&w, -3)), 1)]
        }
        ClaimId::T2B => {
            let s = cx.s_central(3, false)?;
            let w = cx.h(&[1])?;
            let v = b.add(&s, &b.mul(&cx.int(2), &cx.shift(&w, -2)));
            vec![Item::whole(v, 1)]
        }
        ClaimId::Cor2 => {
            let s1 = cx.s_inv(4, 1, false)?;
            let s2 = cx.s_inv(2, 1, true)?;
            vec![Item::whole(b.sub(&s1, &b.mul(&cx.int(3), &s2)), 1)]
        }
        ClaimId::T3 => {
            let a1 = b.neg(&cx.s_inv(5, -1, false)?);
            let a2 = b.neg(&cx.s_inv(3, -1, true)?);
            let mut v = b.sub(&b.mul(&cx.int(2), &a1), &b.mul(&cx.rat(5, 2), &a2));
            v = b.add(&v, &b.mul(&cx.rat(6, 5), &cx.bern(pi - 5)));
            vec![Item::whole(v, 1)]
        }
        ClaimId::T4A => {
            let a1 = b.neg(&cx.s_inv(5, -1, false)?);
            let w = cx.h(&[1])?;
            let g = golden_log_sum(p, b)?;
            let lsq = cx.one_minus_lp_sq();
            let mut rhs = b.mul(&cx.rat(5, 8), &cx.shift(&lsq, -4));
            rhs = b.sub(&rhs, &b.mul(&cx.rat(5, 4), &cx.shift(&g, -3)));
            rhs = b.add(&rhs, &b.mul(&cx.int(3), &cx.shift(&w, -3)));
            rhs = b.sub(&rhs, &b.mul(&cx.rat(3, 5), &cx.shift(&cx.bern(pi - 5), 1)));
            vec![Item::whole(b.sub(&cx.shift(&a1, 1), &rhs), 2)]
        }
        ClaimId::T4B => {
            let s = cx.s_central(4, true)?;
            let w = cx.h(&[1])?;
            let g = golden_log_sum(p, b)?;
            let lsq = cx.one_minus_lp_sq();
            let mut rhs = b.mul(&cx.rat(5, 4), &cx.shift(&lsq, -4));
            rhs = b.sub(&rhs, &b.mul(&cx.rat(5, 2), &cx.shift(&g, -3)));
            rhs = b.add(&rhs, &b.mul(&cx.int(6), &cx.shift(&w, -3)));
            vec![Item::whole(b.sub(&s, &rhs), 1)]
        }
        ClaimId::CorL => {
            let g = golden_log_sum(p, b)?;
            let w = cx.h(&[1])?;
            let lsq = cx.one_minus_lp_sq();
            let mut v = b.sub(&g, &b.mul(&cx.rat(1, 2), &cx.shift(&lsq, -1)));
            v = b.sub(&v, &b.mul(&cx.rat(12, 5), &w));
            vec![Item::whole(v, 3)]
        }
        ClaimId::T5 | ClaimId::T5Mut => {
            let a = if id == ClaimId::T5 { 21 } else { 22 };
            let s = cx.s_cubed(a, -8)?;
            let w = cx.h(&[1])?;
            let pm1 = cx.shift(&cx.int(pi - 1), -3);
            let mut rhs = b.mul(&cx.shift(&w, -2), &cx.int(15 * pi - 6));
            rhs = b.add(&rhs, &b.mul(&cx.rat(12, 5), &cx.shift(&cx.bern(pi - 5), 2)));
            vec![Item::whole(b.sub(&b.add(&s, &pm1), &rhs), 3)]
        }
        ClaimId::L1 => {
            let s2 = cx.s_inv(2, 1, true)?;
            let w = cx.h(&[1])?;
            let v = b.sub(&cx.shift(&s2, 1), &b.mul(&cx.rat(1, 3), &cx.shift(&w, -2)));
            vec![Item::whole(v, 2)]
        }
        ClaimId::L2 => {
            let a2 = b.neg(&cx.s_inv(3, -1, true)?);
            let g = golden_log_sum(p, b)?;
            let w = cx.h(&[1])?;
            let lsq = cx.one_minus_lp_sq();
            // (L_p^2 - 1)/(2 p^4) = -(1 - L_p^2)/(2 p^4)
            let mut rhs = b.neg(&b.mul(&cx.rat(1, 2), &cx.shift(&lsq, -4)));
            rhs = b.add(&rhs, &cx.shift(&g, -3));
            rhs = b.sub(&rhs, &b.mul(&cx.rat(12, 5), &cx.shift(&w, -3)));
            vec![Item::whole(b.sub(&b.neg(&cx.shift(&a2, 1)), &rhs), 2)]
        }
        ClaimId::L3A => {
            let h12 = cx.h(&[1, 2])?;
            let h21 = cx.h(&[2, 1])?;
            let mut v = b.add(&h12, &h21);
            v = b.sub(&v, &b.mul(&cx.rat(6, 5), &cx.shift(&cx.bern(pi - 5), 2)));
            vec![Item::whole(v, 3)]
        }
        ClaimId::L3B => {
            let h12 = cx.h(&[1, 2])?;
            let w = cx.h(&[1])?;
            let mut v = b.add(&h12, &b.mul(&cx.int(3), &cx.shift(&w, -2)));
            v = b.sub(&v, &b.mul(&cx.rat(1, 2), &cx.shift(&cx.bern(pi - 5), 2)));
            vec![Item::whole(v, 3)]
        }
        ClaimId::P2x1 | ClaimId::P2x2 | ClaimId::P2x3 => {
            let m = match id {
                ClaimId::P2x1 => 1i64,
                ClaimId::P2x2 => 2,
                _ => 3,
            };
            let table = b_tables(3, p as usize - 1, b)?;
            let cb = cx.centrals();
            let mut sum = b.zero();
            for k in 1..p {
                let k_ = k as usize;
                let num = b.add(
                    &b.mul(&cx.int(3 * k as i64), &table.b[m as usize][k_]),
                    &b.mul(&cx.int(2), &table.b[m as usize - 1][k_]),
                );
                let k3 = b.from_bigint(&BigInt::from(k).pow(3));
                let term = b.div(&num, &b.mul(&k3, &cb[k_]))?;
                sum = b.add(&sum, &term);
            }
            let mut v = cx.shift(&sum, 1);
            let (req, correction) = match id {
                ClaimId::P2x1 => {
                    let w = cx.h(&[1])?;
                    (3, Some(b.mul(&cx.int(4), &cx.shift(&w, -1))))
                }
                ClaimId::P2x2 => (2, None),
                _ => (1, None),
            };
            if let Some(c) = correction {
                v = b.sub(&v, &c);
            }
            vec![Item::whole(v, req)]
        }
        ClaimId::L4 => {
            // proof prerequisites need p > m + 2, so the family stops at p - 3
            let m_hi = 6.min(p as usize - 3);
            let table = b_tables(m_hi, p as usize - 1, b)?;
            (1..=m_hi)
                .map(|m| Item {
                    label: format!("m={m}"),
                    value: table.b[m][p as usize - 1].clone(),
                    required: if m % 2 == 1 { 2 } else { 1 },
                })
                .collect()
        }
        ClaimId::MhsA => {
            let mut items = Vec::new();
            for a in 1..=4i64 {
                let h = cx.h(&[a as i32])?;
                let (v, req) = if a % 2 == 1 {
                    let coef = Rational::new(BigInt::from(a * (a + 1)), BigInt::from(2 * (a + 2)));
                    (
                        b.add(
                            &h,
                            &cx.shift(&b.mul(&b.from_rational(&coef), &cx.bern(pi - a - 2)), 2),
                        ),
                        3,
                    )
                } else {
                    let coef = Rational::new(BigInt::from(a), BigInt::from(a + 1));
                    (
                        b.sub(
                            &h,
                            &cx.shift(&b.mul(&b.from_rational(&coef), &cx.bern(pi - a - 1)), 1),
                        ),
                        2,
                    )
                };
                items.push(Item {
                    label: format!("a={a}"),
                    value: v,
                    required: req,
                });
            }
            items
        }
        ClaimId::MhsB => {
            let w = cx.h(&[1])?;
            let h2 = cx.h(&[2])?;
            let bq = |m: i64| -> Rational { bern.get(m as usize) / Rational::from(BigInt::from(m)) };
            let r1 = Rational::from(BigInt::from(2)) * bq(pi - 3) - bq(2 * pi - 4);
            let v1 = b.sub(&w, &cx.shift(&b.from_rational(&r1), 2));
            let v2 = {
                let mut v = b.add(&h2, &b.mul(&cx.int(2), &cx.shift(&w, -1)));
                v = b.sub(&v, &b.mul(&cx.rat(2, 5), &cx.shift(&cx.bern(pi - 5), 3)));
                v
            };
            let r3 = bq(3 * pi - 5) - Rational::from(BigInt::from(3)) * bq(2 * pi - 4)
                + Rational::from(BigInt::from(3)) * bq(pi - 3);
            let mut v3 = b.sub(&w, &cx.shift(&b.from_rational(&r3), 2));
            v3 = b.sub(
                &v3,
                &cx.shift(&b.from_rational(&(bern.get(pi as usize - 5) / Rational::from(BigInt::from(pi - 5)))), 4),
            );
            vec![
                Item {
                    label: "1".into(),
                    value: v1,
                    required: 4,
                },
                Item {
                    label: "2".into(),
                    value: v2,
                    required: 4,
                },
                Item {
                    label: "3".into(),
                    value: v3,
                    required: 5,
                },
            ]
        }
        ClaimId::MhsC => {
            let mut items = Vec::new();
            for a in 1..=5i64 {
                for r in 1..=5i64 {
                    let ar = a * r;
                    if ar > 5 || p <= (ar + 2) as u64 {
                        continue;
                    }
                    let idx = vec![a as i32; r as usize];
                    let h = cx.h(&idx)?;
                    let sgn = if r % 2 == 0 { 1 } else { -1 };
                    let (v, req) = if ar % 2 == 1 {
                        let coef = Rational::new(
                            BigInt::from(sgn * a * (ar + 1)),
                            BigInt::from(2 * (ar + 2)),
                        );
                        (
                            b.sub(
                                &h,
                                &cx.shift(&b.mul(&b.from_rational(&coef), &cx.bern(pi - ar - 2)), 2),
                            ),
                            3,
                        )
                    } else {
                        let coef = Rational::new(BigInt::from(-sgn * a), BigInt::from(ar + 1));
                        (
                            b.sub(
                                &h,
                                &cx.shift(&b.mul(&b.from_rational(&coef), &cx.bern(pi - ar - 1)), 1),
                            ),
                            2,
                        )
                    };
                    items.push(Item {
                        label: format!("a={a},r={r}"),
                        value: v,
                        required: req,
                    });
                }
            }
            items
        }
        ClaimId::MhsD => {
            let mut items = Vec::new();
            for a1 in 1..=4i64 {
                for a2 in 1..=4i64 {
                    let w = a1 + a2;
                    if w > 5 || (p as i64) < w {
                        continue;
                    }
                    let h = cx.h(&[a1 as i32, a2 as i32])?;
                    let sgn = if a2 % 2 == 0 { 1 } else { -1 };
                    let coef = Rational::new(BigInt::from(sgn * small_binom(w, a1)), BigInt::from(w));
                    let v = b.sub(&h, &b.mul(&b.from_rational(&coef), &cx.bern(pi - w)));
                    items.push(Item {
                        label: format!("{a1},{a2}"),
                        value: v,
                        required: 1,
                    });
                    if w % 2 == 0 && p as i64 > w + 1 {
                        let s1 = if a1 % 2 == 0 { 1 } else { -1 };
                        let coef = s1 * (a2 * small_binom(w + 1, a1) - a1 * small_binom(w + 1, a2))
                            - a1
                            - a2;
                        let coef = Rational::new(BigInt::from(coef), BigInt::from(2 * (w + 1)));
                        let v = b.sub(
                            &h,
                            &cx.shift(&b.mul(&b.from_rational(&coef), &cx.bern(pi - w - 1)), 1),
                        );
                        items.push(Item {
                            label: format!("{a1},{a2}+"),
                            value: v,
                            required: 2,
                        });
                    }
                }
            }
            items
        }
        ClaimId::MhsE => {
            let mut items = Vec::new();
            for a1 in 1..=3i64 {
                for a2 in 1..=3i64 {
                    for a3 in 1..=3i64 {
                        let w = a1 + a2 + a3;
                        if w > 5 || w % 2 == 0 || (p as i64) <= w {
                            continue;
                        }
                        let h = cx.h(&[a1 as i32, a2 as i32, a3 as i32])?;
                        let s1 = if a1 % 2 == 0 { 1 } else { -1 };
                        let s3 = if a3 % 2 == 0 { 1 } else { -1 };
                        let coef = Rational::new(
                            BigInt::from(s1 * small_binom(w, a1) - s3 * small_binom(w, a3)),
                            BigInt::from(2 * w),
                        );
                        let v = b.sub(&h, &b.mul(&b.from_rational(&coef), &cx.bern(pi - w)));
                        items.push(Item {
                            label: format!("{a1},{a2},{a3}"),
                            value: v,
                            required: 1,
                        });
                    }
                }
            }
            items
        }
        ClaimId::MhsF => {
            let b5 = cx.bern(pi - 5);
            let mk = |idx: &[i32], num: i64, den: i64, shift: i64, req: i64, label: &str| -> Result<Item<B::Value>> {
                let h = cx.h(idx)?;
                let corr = cx.shift(&b.mul(&cx.rat(num, den), &b5), shift);
                Ok(Item {
                    label: label.into(),
                    value: b.sub(&h, &corr),
                    required: req,
                })
            };
            vec![
                mk(&[1, 1, 2], 11, 10, 1, 2, "1")?,
                mk(&[1, 2, 1], -9, 10, 1, 2, "2")?,
                mk(&[2, 1, 1], 3, 5, 1, 2, "3")?,
                mk(&[1, 1, 1, 2], 1, 1, 0, 1, "4")?,
                mk(&[1, 4], 1, 1, 0, 1, "5")?,
            ]
        }
        ClaimId::MhsG => {
            let b5 = cx.bern(pi - 5);
            let w = cx.h(&[1])?;
            let hm3 = cx.h(&[-3])?;
            let hm4 = cx.h(&[-4])?;
            let h1m2 = cx.h(&[1, -2])?;
            let h1m3 = cx.h(&[1, -3])?;
            let h2m2 = cx.h(&[2, -2])?;
            let h11m2 = cx.h(&[1, 1, -2])?;
            let wp2 = b.mul(&cx.rat(3, 2), &cx.shift(&w, -2));
            vec![
                Item {
                    label: "1".into(),
                    value: b.sub(&hm4, &b.mul(&cx.rat(3, 4), &cx.shift(&b5, 1))),
                    required: 2,
                },
                Item {
                    label: "2".into(),
                    value: b.add(&hm3, &b.mul(&cx.int(2), &h1m2)),
                    required: 2,
                },
                Item {
                    label: "3".into(),
                    value: b.sub(&hm3, &wp2),
                    required: 2,
                },
                Item {
                    label: "4".into(),
                    value: b.sub(&b.mul(&cx.int(-2), &h1m2), &wp2),
                    required: 2,
                },
                Item {
                    label: "5".into(),
                    value: b.add(&h2m2, &b.mul(&cx.int(2), &h1m3)),
                    required: 1,
                },
                Item {
                    label: "6".into(),
                    value: b.sub(&b.mul(&cx.int(2), &h11m2), &h1m3),
                    required: 1,
                },
            ]
        }
        ClaimId::Q4 => {
            let s = cx.s_inv(4, 4, false)?;
            let q = b.from_rational(&fermat_quotient_2(p));
            let q3 = b.pow(&q, 3);
            let corr = b.mul(
                &cx.rat(4, 3),
                &b.add(&b.mul(&cx.int(2), &q3), &cx.bern(pi - 3)),
            );
            vec![Item::whole(b.add(&cx.shift(&s, 1), &corr), 1)]
        }
        ClaimId::Eq23 => {
            let h2 = cx.htab(&[2])?;
            // ratio(k) = (-1)^k / (k^2 C(p+k-1, 2k) C(2k,k)) built by the
            // multiplicative recurrence; base ratio(1) = -1/(p(p-1))
            let mut ratio = b.neg(&cx.shift(&b.inv(&cx.int(pi - 1))?, -1));
            let mut items = Vec::with_capacity(p as usize - 1);
            for k in 1..p {
                let ki = k as i64;
                if k > 1 {
                    let num = cx.int(-(ki - 1) * (ki - 1));
                    let den = cx.int((pi - ki) * (pi + ki - 1));
                    ratio = b.mul(&ratio, &b.div(&num, &den)?);
                }
                let kinv = b.inv(&cx.int(ki))?;
                let mut rhs = cx.shift(&kinv, -1);
                rhs = b.add(&rhs, &b.mul(&kinv, &kinv));
                rhs = b.add(&rhs, &cx.shift(&b.mul(&h2[k as usize], &kinv), 1));
                items.push(Item {
                    label: format!("k={k}"),
                    value: b.sub(&ratio, &rhs),
                    required: 2,
                });
            }
            items
        }
        ClaimId::Dual => {
            let cb = cx.centrals();
            let mut items = Vec::with_capacity(p as usize - 1);
            for k in 1..p {
                let lhs = cx.shift(&b.inv(&b.mul(&cx.int(k as i64), &cb[k as usize]))?, 1);
                let rhs = b.mul(&cx.rat(1, 2), &cb[(p - k) as usize]);
                items.push(Item {
                    label: format!("k={k}"),
                    value: b.sub(&lhs, &rhs),
                    required: 1,
                });
            }
            items
        }
        ClaimId::Eq35 => {
            let s = cx.s_cubed(21, -8)?;
            let w = cx.h(&[1])?;
            let table = b_tables(4, p as usize - 1, b)?;
            let cb = cx.centrals();
            let cp_inv = b.inv(&cb[p as usize - 1])?;
            let mut rhs = b.add(&cx.shift(&b.one(), 1), &b.mul(&cx.int(3), &cx.shift(&w, 2)));
            rhs = b.sub(&rhs, &cx.shift(&cp_inv, 1));
            for m in 1..=4usize {
                let t = b.mul(&table.b[m][p as usize - 1], &cp_inv);
                rhs = b.sub(&rhs, &cx.shift(&t, m as i64 + 1));
            }
            vec![Item::whole(b.sub(&cx.shift(&s, 3), &rhs), 6)]
        }
        ClaimId::Five => {
            let b5 = cx.bern(pi - 5);
            let h22 = cx.h(&[2, 2])?;
            let h13 = cx.h(&[1, 3])?;
            vec![
                Item {
                    label: "22".into(),
                    value: b.add(&h22, &b.mul(&cx.rat(2, 5), &cx.shift(&b5, 1))),
                    required: 2,
                },
                Item {
                    label: "13".into(),
                    value: b.add(&h13, &b.mul(&cx.rat(9, 10), &cx.shift(&b5, 1))),
                    required: 2,
                },
            ]
        }
        ClaimId::Eq20 => {
            let b5 = cx.bern(pi - 5);
            let h23 = cx.h(&[2, 3])?;
            let h41 = cx.h(&[4, 1])?;
            vec![
                Item {
                    label: "23".into(),
                    value: b.add(&h23, &b.mul(&cx.int(2), &b5)),
                    required: 1,
                },
                Item {
                    label: "41".into(),
                    value: b.add(&h41, &b5),
                    required: 1,
                },
            ]
        }
        ClaimId::Hpk => {
            let mut s = b.zero();
            let mut h1 = b.zero();
            let mut h2 = b.zero();
            let mut h3 = b.zero();
            let mut items = Vec::with_capacity(p as usize - 1);
            for k in 1..p {
                let ki = k as i64;
                s = b.add(&s, &b.inv(&cx.int(ki - pi))?);
                let kinv = b.inv(&cx.int(ki))?;
                h1 = b.add(&h1, &kinv);
                let k2 = b.mul(&kinv, &kinv);
                h2 = b.add(&h2, &k2);
                h3 = b.add(&h3, &b.mul(&k2, &kinv));
                let mut rhs = b.add(&h1, &cx.shift(&h2, 1));
                rhs = b.add(&rhs, &cx.shift(&h3, 2));
                items.push(Item {
                    label: format!("k={k}"),
                    value: b.sub(&s, &rhs),
                    required: 3,
                });
            }
            items
        }
        ClaimId::SunZ4 => {
            let s1 = cx.s_inv(4, 1, false)?;
            let w = cx.h(&[1])?;
            let mut v = b.sub(&s1, &cx.shift(&w, -3));
            v = b.add(&v, &b.mul(&cx.rat(7, 45), &cx.shift(&cx.bern(pi - 5), 1)));
            vec![Item::whole(v, 2)]
        }
        ClaimId::SunB3 => {
            let s = cx.s_central(3, false)?;
            let w = cx.h(&[1])?;
            let h3 = cx.h(&[3])?;
            let mut v = b.add(&s, &b.mul(&cx.int(2), &cx.shift(&w, -2)));
            v = b.add(&v, &b.mul(&cx.rat(13, 27), &h3));
            vec![Item::whole(v, 4)]
        }
        ClaimId::Conj1 => {
            let s2 = cx.s_inv(2, 1, true)?;
            let w = cx.h(&[1])?;
            let mut v = b.sub(&s2, &b.mul(&cx.rat(1, 3), &cx.shift(&w, -3)));
            v = b.sub(&v, &b.mul(&cx.rat(26, 135), &cx.shift(&cx.bern(pi - 5), 1)));
            vec![Item::whole(v, 2)]
        }
    };
    Ok(items)
}

// ---------------------------------------------------------------------------
// verdicts

fn aggregate<B: Backend>(b: &B, items: &[Item<B::Value>]) -> (Verdict, Option<Achieved>, Option<String>) {
    let mut min_achieved: Option<Achieved> = None;
    let mut insufficient = false;
    for item in items {
        let verdict = b.valuation_at_least(&item.value, item.required);
        min_achieved = Some(match (min_achieved, verdict.achieved) {
            (None, a) => a,
            (Some(Achieved::Infinite), a) | (Some(a), Achieved::Infinite) => a,
            (Some(x), y) => {
                let (lx, ly) = (x.lower_bound().unwrap(), y.lower_bound().unwrap());
                if ly < lx {
                    y
                } else {
                    x
                }
            }
        });
        match verdict.kind {
            VerdictKind::Refuted => {
                let witness = if item.label.is_empty() {
                    None
                } else {
                    Some(item.label.clone())
                };
                return (Verdict::Refuted, Some(verdict.achieved), witness);
            }
            VerdictKind::Insufficient => insufficient = true,
            VerdictKind::Proven => {}
        }
    }
    if insufficient {
        (Verdict::Insufficient, min_achieved, None)
    } else {
        (Verdict::Proven, min_achieved, None)
    }
}

/// Digit budget for the p-adic attempt: required valuation plus the largest
/// denominator shift plus the guard.
fn digit_budget(id: ClaimId, guard: u32) -> u32 {
    id.max_required() as u32 + id.max_shift() + guard
}

const MAX_RETRIES: u32 = 4;

/// Evaluate one claim at one prime under one backend.
pub fn evaluate_claim(
    id: ClaimId,
    p: u64,
    backend: BackendKind,
    guard: u32,
    bern: &BernoulliCache,
) -> ClaimResult {
    let start = Instant::now();
    if !id.applicable(p) {
        return ClaimResult {
            id,
            p,
            verdict: Verdict::NotApplicable,
            achieved: None,
            required: id.max_required(),
            witness: None,
            backend,
            millis: start.elapsed().as_millis(),
        };
    }
    let (verdict, achieved, witness) = match backend {
        BackendKind::Rational => {
            let b = RationalBackend::new(p);
            match eval_items(id, p, &b, bern) {
                Ok(items) => aggregate(&b, &items),
                Err(_) => (Verdict::Insufficient, None, None),
            }
        }
        BackendKind::Padic => {
            let mut digits = digit_budget(id, guard);
            let mut out = (Verdict::Insufficient, None, None);
            for _ in 0..=MAX_RETRIES {
                let b = PadicBackend::new(p, digits);
                out = match eval_items(id, p, &b, bern) {
                    Ok(items) => aggregate(&b, &items),
                    Err(ArithError::InsufficientPrecision) => (Verdict::Insufficient, None, None),
                    Err(_) => (Verdict::Insufficient, None, None),
                };
                if out.0 != Verdict::Insufficient {
                    break;
                }
                digits *= 2;
            }
            out
        }
    };
    ClaimResult {
        id,
        p,
        verdict,
        achieved,
        required: id.max_required(),
        witness,
        backend,
        millis: start.elapsed().as_millis(),
    }
}

/// Bernoulli cache sized for a sweep over the given primes and claims.
pub fn bernoulli_cache_for(ids: &[ClaimId], primes: &[u64]) -> Arc<BernoulliCache> {
    let p_max = primes.iter().copied().max().unwrap_or(0);
    let mut need = p_max.saturating_sub(2) as usize;
    if ids.contains(&ClaimId::MhsB) {
        let pb = primes
            .iter()
            .copied()
            .filter(|&p| ClaimId::MhsB.applicable(p))
            .max()
            .unwrap_or(0);
        need = need.max((3 * pb).saturating_sub(5) as usize);
    }
    Arc::new(BernoulliCache::with_max(need.max(12)))
}

/// Evaluate every (claim, applicable prime) pair; results ordered by
/// (claim, prime) regardless of parallelism.
pub fn sweep(
    ids: &[ClaimId],
    primes: &[u64],
    backend: BackendKind,
    guard: u32,
    jobs: usize,
) -> Vec<ClaimResult> {
    let bern = bernoulli_cache_for(ids, primes);
    let tasks: Vec<(ClaimId, u64)> = ids
        .iter()
        .flat_map(|&id| {
            primes
                .iter()
                .filter(move |&&p| id.applicable(p))
                .map(move |&p| (id, p))
        })
        .collect();
    let run = |&(id, p): &(ClaimId, u64)| evaluate_claim(id, p, backend, guard, &bern);
    let mut results: Vec<ClaimResult> = if jobs == 1 {
        tasks.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| tasks.par_iter().map(run).collect())
    };
    results.sort_by_key(|r| (r.id, r.p));
    results
}

/// Primes in [lo, hi] (inclusive).
pub fn sweep_primes(lo: u64, hi: u64) -> Vec<u64> {
    primes_in(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bern_for(p: u64) -> Arc<BernoulliCache> {
        bernoulli_cache_for(&ClaimId::ALL, &[p])
    }

    #[test]
    fn registry_names_round_trip() {
        for id in ClaimId::ALL {
            assert_eq!(id.name().parse::<ClaimId>().unwrap(), id);
        }
        assert!("C-NOPE".parse::<ClaimId>().is_err());
        assert_eq!(ClaimId::default_registry().len(), 36);
    }

    #[test]
    fn t1_proven_at_5_rational() {
        let bern = bern_for(5);
        let r = evaluate_claim(ClaimId::T1, 5, BackendKind::Rational, 10, &bern);
        assert_eq!(r.verdict, Verdict::Proven);
        let r = evaluate_claim(ClaimId::T3, 5, BackendKind::Rational, 10, &bern);
        assert_eq!(r.verdict, Verdict::Proven);
    }

    #[test]
    fn t5_not_applicable_at_5() {
        let bern = bern_for(7);
        let r = evaluate_claim(ClaimId::T5, 5, BackendKind::Rational, 10, &bern);
        assert_eq!(r.verdict, Verdict::NotApplicable);
        let r = evaluate_claim(ClaimId::T5, 7, BackendKind::Rational, 10, &bern);
        assert_eq!(r.verdict, Verdict::Proven);
    }

    #[test]
    fn tau_z2_at_7_achieves_3() {
        let bern = bern_for(7);
        let r = evaluate_claim(ClaimId::TauZ2, 7, BackendKind::Rational, 10, &bern);
        assert_eq!(r.verdict, Verdict::Proven);
        assert!(r.achieved.unwrap().lower_bound().is_none_or(|v| v >= 3));
    }

    #[test]
    fn small_sweep_both_backends() {
        let primes = sweep_primes(5, 13);
        for kind in [BackendKind::Rational, BackendKind::Padic] {
            let results = sweep(&ClaimId::default_registry(), &primes, kind, 10, 1);
            for r in &results {
                assert_eq!(
                    r.verdict,
                    Verdict::Proven,
                    "{} p={} {:?} achieved {:?} witness {:?}",
                    r.id.name(),
                    r.p,
                    kind,
                    r.achieved,
                    r.witness
                );
            }
        }
    }

    #[test]
    fn mutants_refuted() {
        let bern = bern_for(13);
        let r = evaluate_claim(ClaimId::T1Mut, 13, BackendKind::Rational, 10, &bern);
        assert_eq!(r.verdict, Verdict::Refuted);
        let r = evaluate_claim(ClaimId::T5Mut, 13, BackendKind::Padic, 10, &bern);
        assert_eq!(r.verdict, Verdict::Refuted);
    }

    #[test]
    fn empty_range_empty_sweep() {
        let results = sweep(&ClaimId::default_registry(), &[], BackendKind::Rational, 10, 1);
        assert!(results.is_empty());
    }

    #[test]
    fn parallel_matches_serial() {
        let primes = sweep_primes(5, 11);
        let ids = [ClaimId::T1, ClaimId::Eq23, ClaimId::MhsA];
        let serial = sweep(&ids, &primes, BackendKind::Padic, 10, 1);
        let parallel = sweep(&ids, &primes, BackendKind::Padic, 10, 4);
        assert_eq!(serial.len(), parallel.len());
        for (a, b) in serial.iter().zip(&parallel) {
            assert_eq!((a.id, a.p, a.verdict.clone(), a.achieved), (b.id, b.p, b.verdict.clone(), b.achieved));
        }
    }
}
