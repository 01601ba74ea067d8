//! Sparse multi-index truncated power series.
//!
//! A [`TruncatedSeries`] stores f(z) = sum_alpha c_alpha z^alpha as a map
//! from exponent vectors to complex coefficients, exact up to a total
//! degree `K`. Only nonzero coefficients are stored, and iteration order is
//! graded-lexicographic, so floating-point reductions over the terms are
//! reproducible.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector alpha in N^n_0 with its total degree |alpha| cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    exps: Vec<u32>,
    order: u32,
}

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        let order = exps.iter().sum();
        Self { exps, order }
    }

    /// The zero index of length `n` (constant term).
    pub fn zero(n: usize) -> Self {
        Self {
            exps: vec![0; n],
            order: 0,
        }
    }

    /// The i-th unit index e_i of length `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        assert!(i < n, "unit index {i} out of range for n = {n}");
        let mut exps = vec![0; n];
        exps[i] = 1;
        Self { exps, order: 1 }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// Total degree |alpha|.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Componentwise sum alpha + beta.
    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            exps,
            order: self.order + other.order,
        }
    }

    /// The stretched index q * alpha.
    pub fn scale(&self, q: u32) -> Self {
        Self {
            exps: self.exps.iter().map(|a| a * q).collect(),
            order: self.order * q,
        }
    }

    /// Multinomial coefficient |alpha|! / alpha!.
    ///
    /// Computed as a product of binomials over prefix sums, so every
    /// intermediate value is an exact integer (exact in f64 while it fits
    /// the 53-bit mantissa).
    pub fn multinomial(&self) -> f64 {
        let mut total: u64 = 0;
        let mut result = 1.0_f64;
        for &a in &self.exps {
            for j in 1..=u64::from(a) {
                total += 1;
                result = result * (total as f64) / (j as f64);
            }
        }
        result
    }

    /// Enumerate all indices of length `n` with total degree exactly `m`,
    /// in graded-lex order.
    pub fn enumerate_degree(n: usize, m: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fill(&mut out, &mut cur, 0, m);
        fn fill(out: &mut Vec<MultiIndex>, cur: &mut Vec<u32>, pos: usize, rem: u32) {
            if pos + 1 == cur.len() {
                cur[pos] = rem;
                out.push(MultiIndex::new(cur.clone()));
                return;
            }
            for v in (0..=rem).rev() {
                cur[pos] = v;
                fill(out, cur, pos + 1, rem - v);
            }
            cur[pos] = 0;
        }
        out.sort();
        out
    }
}

/// Graded-lex: compare total degree first, then exponents lexicographically.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse power series truncated at total degree `K`.
///
/// Invariants: every stored index has length `n` and order <= `K`; no stored
/// coefficient is exactly zero.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    n: usize,
    max_degree: u32,
    coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl TruncatedSeries {
    pub fn zero(n: usize, max_degree: u32) -> Self {
        Self {
            n,
            max_degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, max_degree: u32) -> Self {
        let mut s = Self::zero(n, max_degree);
        s.set_coeff(MultiIndex::zero(n), Complex64::new(1.0, 0.0));
        s
    }

    /// The monomial c * z^alpha (dropped if above the truncation degree).
    pub fn monomial(n: usize, max_degree: u32, alpha: MultiIndex, c: Complex64) -> Result<Self> {
        if alpha.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: alpha.len(),
            });
        }
        let mut s = Self::zero(n, max_degree);
        if alpha.order() <= max_degree {
            s.set_coeff(alpha, c);
        }
        Ok(s)
    }

    pub fn from_terms<I>(n: usize, max_degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        let mut s = Self::zero(n, max_degree);
        for (alpha, c) in terms {
            if alpha.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: alpha.len(),
                });
            }
            if alpha.order() <= max_degree {
                let cur = s.coeff(&alpha);
                s.set_coeff(alpha, cur + c);
            }
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at `alpha` (zero when absent).
    pub fn coeff(&self, alpha: &MultiIndex) -> Complex64 {
        self.coeffs
            .get(alpha)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Set a coefficient, removing the entry when the value is exactly zero.
    /// Indices above the truncation degree are ignored.
    pub fn set_coeff(&mut self, alpha: MultiIndex, c: Complex64) {
        debug_assert_eq!(alpha.len(), self.n);
        if alpha.order() > self.max_degree {
            return;
        }
        if c.re == 0.0 && c.im == 0.0 {
            self.coeffs.remove(&alpha);
        } else {
            self.coeffs.insert(alpha, c);
        }
    }

    /// Terms in graded-lex order.
    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.coeffs.iter()
    }

    /// Product truncated at total degree `max_degree`.
    pub fn multiply(&self, other: &Self, max_degree: u32) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut out = Self::zero(self.n, max_degree);
        for (a, ca) in &self.coeffs {
            if a.order() > max_degree {
                continue;
            }
            for (b, cb) in &other.coeffs {
                if a.order() + b.order() > max_degree {
                    break; // graded order: every later b only has larger degree
                }
                let idx = a.add(b);
                let cur = out.coeff(&idx);
                out.set_coeff(idx, cur + ca * cb);
            }
        }
        Ok(out)
    }

    /// k-th power truncated at `max_degree`; `power(_, 0, K)` is the
    /// constant-one series.
    pub fn power(&self, k: u32, max_degree: u32) -> Result<Self> {
        let mut acc = Self::one(self.n, max_degree);
        for _ in 0..k {
            acc = acc.multiply(self, max_degree)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    /// The degree-`m` homogeneous block.
    pub fn homogeneous_part(&self, m: u32) -> Result<Self> {
        if m > self.max_degree {
            return Err(Error::DegreeOutOfRange {
                degree: m,
                max: self.max_degree,
            });
        }
        let mut out = Self::zero(self.n, self.max_degree);
        for (a, c) in &self.coeffs {
            match a.order().cmp(&m) {
                Ordering::Less => continue,
                Ordering::Equal => out.set_coeff(a.clone(), *c),
                Ordering::Greater => break,
            }
        }
        Ok(out)
    }

    /// Sum of |c_alpha| over the degree-`m` block.
    pub fn homogeneous_mass(&self, m: u32) -> f64 {
        self.coeffs
            .iter()
            .filter(|(a, _)| a.order() == m)
            .map(|(_, c)| c.norm())
            .sum()
    }

    pub fn add_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        for (a, c) in &other.coeffs {
            let cur = self.coeff(a);
            self.set_coeff(a.clone(), cur + c);
        }
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut out = Self::zero(self.n, self.max_degree);
        for (a, c) in &self.coeffs {
            out.set_coeff(a.clone(), c * factor);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SeriesRepr::from(self)).expect("series serialization")
    }

    /// Compact JSON with fields in declaration order (n, K, terms), for
    /// golden files.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&SeriesRepr::from(self)).expect("series serialization")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let repr: SeriesRepr = serde_json::from_value(value.clone())?;
        Self::from_terms(
            repr.n,
            repr.k,
            repr.terms.iter().map(|t| {
                (
                    MultiIndex::new(t.alpha.clone()),
                    Complex64::new(t.re, t.im),
                )
            }),
        )
    }
}

/// Cayley transform (1 + phi)/(1 - phi) = 1 + 2 sum_{k>=1} phi^k, truncated
/// at `max_degree`. Requires phi(0) = 0, so the result has constant term
/// exactly 1 and positive real part wherever |phi| < 1.
pub fn cayley_of(phi: &TruncatedSeries, max_degree: u32) -> Result<TruncatedSeries> {
    let c0 = phi.coeff(&MultiIndex::zero(phi.n()));
    if c0.re != 0.0 || c0.im != 0.0 {
        return Err(Error::NonzeroConstantTerm {
            value: format!("{c0}"),
        });
    }
    let two = Complex64::new(2.0, 0.0);
    let mut out = TruncatedSeries::one(phi.n(), max_degree);
    let mut pk = TruncatedSeries::one(phi.n(), max_degree);
    for _ in 1..=max_degree {
        pk = pk.multiply(phi, max_degree)?;
        if pk.is_zero() {
            break;
        }
        out.add_assign(&pk.scaled(two));
    }
    Ok(out)
}

/// Wire form {n, K, terms: [{alpha, re, im}]} used by golden-file tests and
/// battery manifests.
#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    n: usize,
    #[serde(rename = "K")]
    k: u32,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    alpha: Vec<u32>,
    re: f64,
    im: f64,
}

impl From<&TruncatedSeries> for SeriesRepr {
    fn from(s: &TruncatedSeries) -> Self {
        SeriesRepr {
            n: s.n,
            k: s.max_degree,
            terms: s
                .iter()
                .map(|(a, c)| TermRepr {
                    alpha: a.exponents().to_vec(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }
}
