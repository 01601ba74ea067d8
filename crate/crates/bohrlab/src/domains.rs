//! Geometry of unit balls of l^n_q and maximization over their boundary.
//!
//! The central primitive is [`posynomial_sup`]: the maximum of a posynomial
//! (nonnegative coefficients, nonnegative real exponents) over the
//! nonnegative part of the sphere ||x||_q = scale. Because the majorant of a
//! power series is monotone in each |z_i|, suprema over the full complex
//! ball reduce to exactly this problem.

use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::MultiIndex;

/// An exponent q in [1, inf], with infinity as a distinct value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// Validates q >= 1.
    pub fn new(q: f64) -> Result<Self> {
        if q.is_infinite() && q > 0.0 {
            return Ok(Exponent::Infinity);
        }
        if !q.is_finite() || q < 1.0 {
            return Err(Error::InvalidExponent(format!(
                "exponent must satisfy q >= 1 or q = inf, got {q}"
            )));
        }
        Ok(Exponent::Finite(q))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    /// 1/q, with 1/inf = 0.
    pub fn recip(self) -> f64 {
        match self {
            Exponent::Finite(q) => 1.0 / q,
            Exponent::Infinity => 0.0,
        }
    }

    /// Hoelder conjugate q' with 1/q + 1/q' = 1.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(q) if q == 1.0 => Exponent::Infinity,
            Exponent::Finite(q) => Exponent::Finite(q / (q - 1.0)),
        }
    }

    pub fn as_finite(self) -> Option<f64> {
        match self {
            Exponent::Finite(q) => Some(q),
            Exponent::Infinity => None,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(q) => write!(f, "{q}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

/// Accepts a number or the token "inf" (any case).
impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(Exponent::Infinity);
        }
        let q: f64 = t
            .parse()
            .map_err(|_| Error::InvalidExponent(format!("cannot parse exponent {s:?}")))?;
        Exponent::new(q)
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(q) => ser.serialize_f64(*q),
            Exponent::Infinity => ser.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Exponent;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a number >= 1 or the string \"inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Exponent, E> {
                Exponent::new(v).map_err(E::custom)
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Exponent, E> {
                Exponent::new(v as f64).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Exponent, E> {
                Exponent::new(v as f64).map_err(E::custom)
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Exponent, E> {
                v.parse().map_err(E::custom)
            }
        }
        de.deserialize_any(V)
    }
}

/// The ball scale * B_{l^n_q}.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LqBall {
    pub n: usize,
    pub q: Exponent,
    pub scale: f64,
}

impl LqBall {
    pub fn new(n: usize, q: Exponent, scale: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("dimension n must be >= 1".into()));
        }
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "ball scale must be positive and finite, got {scale}"
            )));
        }
        Ok(Self { n, q, scale })
    }

    pub fn unit(n: usize, q: Exponent) -> Result<Self> {
        Self::new(n, q, 1.0)
    }

    /// The same ball rescaled to radius `scale`.
    pub fn with_scale(self, scale: f64) -> Result<Self> {
        Self::new(self.n, self.q, scale)
    }
}

/// x^e with the integer cases kept exact: powf(x, 1.0) is not guaranteed to
/// return x bit-for-bit, and several closed forms (p = 1 radii in
/// particular) are asserted exactly downstream.
pub(crate) fn powx(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else if e == 1.0 {
        x
    } else if e == 2.0 {
        x * x
    } else {
        x.powf(e)
    }
}

/// ||x||_q on nonnegative vectors; q = inf gives the max.
pub fn lq_norm(x: &[f64], q: Exponent) -> f64 {
    match q {
        Exponent::Infinity => x.iter().fold(0.0_f64, |m, &v| m.max(v.abs())),
        Exponent::Finite(q) => {
            if q == 1.0 {
                x.iter().map(|v| v.abs()).sum()
            } else {
                x.iter().map(|v| v.abs().powf(q)).sum::<f64>().powf(1.0 / q)
            }
        }
    }
}

/// Norm of the identity map l^n_{q_from} -> l^n_{q_to}: the smallest t with
/// B_{q_from} contained in t B_{q_to}. Equals n^{max(0, 1/q_to - 1/q_from)}.
pub fn s_ratio(q_from: Exponent, q_to: Exponent, n: usize) -> f64 {
    let e = (q_to.recip() - q_from.recip()).max(0.0);
    (n as f64).powf(e)
}

/// sup of |z^alpha| over the unit ball of l^n_q, by Lagrange multipliers:
/// prod_i (alpha_i / |alpha|)^{alpha_i / q}, with empty factors for
/// alpha_i = 0; equals 1 for q = inf.
pub fn monomial_sup(alpha: &MultiIndex, q: Exponent) -> Result<f64> {
    if alpha.order() == 0 {
        return Err(Error::InvalidParameter(
            "monomial_sup needs a nonconstant monomial".into(),
        ));
    }
    let exps: Vec<f64> = alpha.exponents().iter().map(|&a| f64::from(a)).collect();
    Ok(monomial_sup_real(&exps, q))
}

/// Real-exponent version of [`monomial_sup`], evaluated in log space.
/// Exponents must be nonnegative and not all zero.
pub fn monomial_sup_real(exps: &[f64], q: Exponent) -> f64 {
    let q = match q {
        Exponent::Infinity => return 1.0,
        Exponent::Finite(q) => q,
    };
    let total: f64 = exps.iter().sum();
    if total == 0.0 {
        return 1.0;
    }
    let log_sum: f64 = exps
        .iter()
        .filter(|&&a| a > 0.0)
        .map(|&a| (a / q) * (a.ln() - total.ln()))
        .sum();
    log_sum.exp()
}

/// One term a * x^e of a posynomial; a >= 0 and e_i >= 0 (real exponents,
/// so fractional p*alpha is representable).
#[derive(Clone, Debug)]
pub struct PosyTerm {
    pub coeff: f64,
    pub exps: Vec<f64>,
}

/// Finite sum of posynomial terms in n nonnegative variables.
#[derive(Clone, Debug, Default)]
pub struct Posynomial {
    n: usize,
    terms: Vec<PosyTerm>,
}

impl Posynomial {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            terms: Vec::new(),
        }
    }

    pub fn push(&mut self, coeff: f64, exps: Vec<f64>) -> Result<()> {
        if exps.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: exps.len(),
            });
        }
        if coeff < 0.0 || exps.iter().any(|&e| e < 0.0) {
            return Err(Error::InvalidParameter(
                "posynomial terms need nonnegative coefficient and exponents".into(),
            ));
        }
        if coeff > 0.0 {
            self.terms.push(PosyTerm { coeff, exps });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[PosyTerm] {
        &self.terms
    }

    /// Evaluate at a nonnegative point (0^0 treated as 1, as powf does).
    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.n);
        self.terms
            .iter()
            .map(|t| {
                let mut v = t.coeff;
                for (xi, ei) in x.iter().zip(&t.exps) {
                    if *ei != 0.0 {
                        v *= xi.powf(*ei);
                    }
                }
                v
            })
            .sum()
    }

    /// Evaluate from precomputed ln x_i (requires x_i > 0): one exp per term.
    fn eval_log(&self, ln_x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let s: f64 = ln_x.iter().zip(&t.exps).map(|(l, e)| l * e).sum();
                t.coeff * s.exp()
            })
            .sum()
    }
}

/// Settings for the multi-start ascent in [`posynomial_sup_with`].
#[derive(Clone, Copy, Debug)]
pub struct AscentConfig {
    pub starts: usize,
    pub max_iters: usize,
    pub rel_tol: f64,
    pub seed: u64,
}

impl Default for AscentConfig {
    fn default() -> Self {
        Self {
            starts: 16,
            max_iters: 500,
            rel_tol: 1e-10,
            seed: 0,
        }
    }
}

/// Outcome of a sphere maximization. `value` is always a certified lower
/// bound of the true supremum (it is attained at `argmax`); `converged`
/// is false only when some ascent hit the iteration cap while still moving.
#[derive(Clone, Debug)]
pub struct SupResult {
    pub value: f64,
    pub argmax: Vec<f64>,
    pub converged: bool,
}

/// Maximum of `g` over {x >= 0 : ||x||_q = scale} with default settings.
pub fn posynomial_sup(g: &Posynomial, ball: &LqBall) -> Result<SupResult> {
    posynomial_sup_with(g, ball, &AscentConfig::default())
}

/// Maximum of `g` over the nonnegative part of the q-sphere of radius
/// `ball.scale`.
///
/// q = inf is exact (all-ones corner, by monotonicity). Finite q runs
/// deterministic direct probes (axis corners, per-term Lagrange points,
/// barycenter) plus `starts` gradient ascents in exponential sphere
/// coordinates; the result dominates every probe by construction.
pub fn posynomial_sup_with(
    g: &Posynomial,
    ball: &LqBall,
    cfg: &AscentConfig,
) -> Result<SupResult> {
    if g.n() != ball.n {
        return Err(Error::DimensionMismatch {
            expected: ball.n,
            got: g.n(),
        });
    }
    if g.is_empty() {
        return Err(Error::EmptyInput("posynomial has no terms".into()));
    }
    let n = ball.n;
    let scale = ball.scale;

    let q = match ball.q {
        Exponent::Infinity => {
            let corner = vec![scale; n];
            let value = g.eval(&corner);
            return Ok(SupResult {
                value,
                argmax: corner,
                converged: true,
            });
        }
        Exponent::Finite(q) => q,
    };

    if n == 1 {
        let x = vec![scale];
        let value = g.eval(&x);
        return Ok(SupResult {
            value,
            argmax: x,
            converged: true,
        });
    }

    let mut best_x = vec![0.0; n];
    let mut best_v = f64::NEG_INFINITY;

    // Direct probes: axis corners.
    let mut x = vec![0.0; n];
    for i in 0..n {
        x.iter_mut().for_each(|v| *v = 0.0);
        x[i] = scale;
        let v = g.eval(&x);
        if v > best_v {
            best_v = v;
            best_x.clone_from_slice(&x);
        }
    }
    // Per-term Lagrange points x_i = scale (e_i/|e|)^{1/q}: exact maximizer
    // of that term alone.
    for t in g.terms() {
        let total: f64 = t.exps.iter().sum();
        if total == 0.0 {
            continue;
        }
        for (xi, ei) in x.iter_mut().zip(&t.exps) {
            *xi = scale * (ei / total).powf(1.0 / q);
        }
        let v = g.eval(&x);
        if v > best_v {
            best_v = v;
            best_x.clone_from_slice(&x);
        }
    }
    // Barycenter.
    let bary = scale * (1.0 / n as f64).powf(1.0 / q);
    x.iter_mut().for_each(|v| *v = bary);
    let v = g.eval(&x);
    if v > best_v {
        best_v = v;
        best_x.clone_from_slice(&x);
    }

    // Multi-start ascent in exponential coordinates u: x_i(u) =
    // scale e^{u_i} / N(u), N = (sum_j e^{q u_j})^{1/q}. Every x(u) lies
    // exactly on the sphere, so accepted steps never leave the feasible set.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let unif = Uniform::new(-2.0_f64, 2.0_f64);
    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(cfg.starts);
    starts.push(vec![0.0; n]);
    for i in 0..n.min(cfg.starts.saturating_sub(1)) {
        let mut u = vec![0.0; n];
        u[i] = 4.0;
        starts.push(u);
    }
    while starts.len() < cfg.starts {
        starts.push((0..n).map(|_| unif.sample(&mut rng)).collect());
    }

    let mut converged = true;
    let mut u_x = vec![0.0; n];
    let mut ln_x = vec![0.0; n];
    let mut soft = vec![0.0; n];
    let mut ln_t = vec![0.0; n];
    let mut soft_t = vec![0.0; n];
    for u0 in starts {
        let mut u = u0;
        let eval_u = |u: &[f64], ln_x: &mut [f64], soft: &mut [f64]| -> f64 {
            let umax = u.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let mut z = 0.0;
            for (si, ui) in soft.iter_mut().zip(u) {
                *si = (q * (ui - umax)).exp();
                z += *si;
            }
            for si in soft.iter_mut() {
                *si /= z; // s_i = (x_i/scale)^q, sums to 1
            }
            let ln_n = z.ln() / q + umax;
            for (li, ui) in ln_x.iter_mut().zip(u) {
                *li = scale.ln() + ui - ln_n;
            }
            g.eval_log(ln_x)
        };

        let mut fu = eval_u(&u, &mut ln_x, &mut soft);
        let mut step = 0.5_f64;
        let mut iters = 0;
        let mut grad = vec![0.0; n];
        loop {
            if iters >= cfg.max_iters {
                converged = false;
                break;
            }
            iters += 1;
            // y_i = x_i dg/dx_i = sum_t e_{ti} (term value); dg/du_k =
            // y_k - s_k sum_i y_i.
            grad.iter_mut().for_each(|v| *v = 0.0);
            for t in g.terms() {
                let s: f64 = ln_x.iter().zip(&t.exps).map(|(l, e)| l * e).sum();
                let tv = t.coeff * s.exp();
                for (gk, ek) in grad.iter_mut().zip(&t.exps) {
                    *gk += ek * tv;
                }
            }
            let y_sum: f64 = grad.iter().sum();
            let gmax = grad
                .iter()
                .zip(soft.iter())
                .map(|(y, s)| (y - s * y_sum).abs())
                .fold(0.0_f64, f64::max);
            if gmax == 0.0 {
                break;
            }
            for (gk, sk) in grad.iter_mut().zip(&soft) {
                *gk = (*gk - sk * y_sum) / gmax;
            }
            for ((t, ui), gk) in u_x.iter_mut().zip(&u).zip(&grad) {
                *t = ui + step * gk;
            }
            let ft = eval_u(&u_x, &mut ln_t, &mut soft_t);
            if ft > fu {
                let gain = ft - fu;
                u.clone_from_slice(&u_x);
                ln_x.clone_from_slice(&ln_t);
                soft.clone_from_slice(&soft_t);
                fu = ft;
                step = (step * 1.4).min(8.0);
                if gain <= cfg.rel_tol * fu.abs().max(1e-300) && step < 1e-6 {
                    break;
                }
            } else {
                step *= 0.4;
                if step < 1e-13 {
                    break;
                }
            }
        }
        if fu > best_v {
            best_v = fu;
            for (bi, li) in best_x.iter_mut().zip(&ln_x) {
                *bi = li.exp();
            }
        }
    }

    Ok(SupResult {
        value: best_v,
        argmax: best_x,
        converged,
    })
}

/// ||r||_1 / (n^{1-1/s} ||r||_s): in (0,1], with 1 exactly for constant
/// vectors. The zero vector has no meaningful ratio; by convention it
/// reports 1 with `degenerate` set.
#[derive(Clone, Copy, Debug)]
pub struct NormCompare {
    pub value: f64,
    pub degenerate: bool,
}

pub fn norm_compare(r: &[f64], s: Exponent) -> Result<NormCompare> {
    if r.is_empty() {
        return Err(Error::EmptyInput("norm_compare needs a nonempty vector".into()));
    }
    if r.iter().any(|&v| v < 0.0) {
        return Err(Error::InvalidParameter(
            "norm_compare expects nonnegative entries".into(),
        ));
    }
    let l1: f64 = r.iter().sum();
    if l1 == 0.0 {
        return Ok(NormCompare {
            value: 1.0,
            degenerate: true,
        });
    }
    let n = r.len() as f64;
    let ls = lq_norm(r, s);
    let value = l1 / (n.powf(1.0 - s.recip()) * ls);
    Ok(NormCompare {
        value,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(q: f64) -> Exponent {
        Exponent::Finite(q)
    }

    fn idx(exps: &[u32]) -> MultiIndex {
        MultiIndex::new(exps.to_vec())
    }

    #[test]
    fn exponent_parse_and_display() {
        assert_eq!("2".parse::<Exponent>().unwrap(), fin(2.0));
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("INF".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert!("0.5".parse::<Exponent>().is_err());
        assert!("x".parse::<Exponent>().is_err());
        assert_eq!(Exponent::Infinity.to_string(), "inf");
        assert_eq!(fin(1.5).to_string(), "1.5");
    }

    #[test]
    fn exponent_serde_forms() {
        let v: Exponent = serde_json::from_str("2.5").unwrap();
        assert_eq!(v, fin(2.5));
        let v: Exponent = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(v, Exponent::Infinity);
        assert_eq!(serde_json::to_string(&fin(2.0)).unwrap(), "2.0");
        assert_eq!(serde_json::to_string(&Exponent::Infinity).unwrap(), "\"inf\"");
    }

    #[test]
    fn conjugate_pairs() {
        assert_eq!(fin(1.0).conjugate(), Exponent::Infinity);
        assert_eq!(Exponent::Infinity.conjugate(), fin(1.0));
        let q = fin(1.5).conjugate().as_finite().unwrap();
        assert!((q - 3.0).abs() < 1e-15);
        assert_eq!(fin(2.0).conjugate(), fin(2.0));
    }

    #[test]
    fn s_ratio_examples() {
        assert!((s_ratio(fin(2.0), fin(1.0), 4) - 2.0).abs() < 1e-15);
        assert_eq!(s_ratio(fin(3.0), fin(3.0), 7), 1.0);
        assert!((s_ratio(Exponent::Infinity, fin(1.0), 3) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn s_ratio_properties() {
        let qs = [fin(1.0), fin(1.5), fin(2.0), fin(4.0), Exponent::Infinity];
        for &a in &qs {
            for &b in &qs {
                for n in 1..=5usize {
                    let fwd = s_ratio(a, b, n);
                    let back = s_ratio(b, a, n);
                    assert!(fwd * back >= 1.0 - 1e-15);
                    // identity is a contraction into a larger-q ball
                    if a.recip() >= b.recip() {
                        assert_eq!(fwd, 1.0);
                    }
                }
            }
        }
    }

    #[test]
    fn monomial_sup_examples() {
        let v = monomial_sup(&idx(&[1, 1]), fin(2.0)).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
        let v = monomial_sup(&idx(&[1, 1]), fin(1.0)).unwrap();
        assert!((v - 0.25).abs() < 1e-15);
        let v = monomial_sup(&idx(&[3, 2, 5]), Exponent::Infinity).unwrap();
        assert_eq!(v, 1.0);
        assert!(monomial_sup(&idx(&[0, 0]), fin(2.0)).is_err());
    }

    /// Points of the positive q-sphere in n=2 or n=3, with `pts` samples per
    /// angular coordinate.
    fn sphere_grid(n: usize, q: f64, pts: usize) -> Vec<Vec<f64>> {
        let mut out = Vec::new();
        let steps = |i: usize| i as f64 / (pts - 1) as f64;
        match n {
            2 => {
                for i in 0..pts {
                    let a = steps(i);
                    out.push(vec![a.powf(1.0 / q), (1.0 - a).powf(1.0 / q)]);
                }
            }
            3 => {
                for i in 0..pts {
                    let a = steps(i);
                    for j in 0..pts {
                        let b = steps(j);
                        out.push(vec![
                            a.powf(1.0 / q),
                            ((1.0 - a) * b).powf(1.0 / q),
                            ((1.0 - a) * (1.0 - b)).powf(1.0 / q),
                        ]);
                    }
                }
            }
            _ => unreachable!(),
        }
        out
    }

    /// Closed form vs brute force on the sphere, within 1e-4.
    #[test]
    fn monomial_sup_grid_oracle() {
        for &q in &[1.0, 2.0, 3.0] {
            for n in 2..=3usize {
                let grid = sphere_grid(n, q, 401);
                for alpha in (1..=6u32).flat_map(|m| MultiIndex::enumerate_degree(n, m)) {
                    let closed = monomial_sup(&alpha, fin(q)).unwrap();
                    let mut brute = 0.0_f64;
                    for pt in &grid {
                        let mut v = 1.0;
                        for (x, &a) in pt.iter().zip(alpha.exponents()) {
                            v *= x.powi(a as i32);
                        }
                        brute = brute.max(v);
                    }
                    assert!(
                        brute <= closed + 1e-12,
                        "grid beat closed form: q={q} alpha={alpha:?}"
                    );
                    assert!(
                        (closed - brute).abs() < 1e-4,
                        "q={q} alpha={alpha:?} closed={closed} brute={brute}"
                    );
                }
            }
        }
    }

    #[test]
    fn posynomial_eval_handles_zero_base() {
        let mut g = Posynomial::new(2);
        g.push(1.0, vec![0.0, 2.0]).unwrap();
        g.push(3.0, vec![1.0, 0.0]).unwrap();
        assert_eq!(g.eval(&[0.0, 1.0]), 1.0);
        assert_eq!(g.eval(&[2.0, 0.0]), 6.0);
    }

    #[test]
    fn posynomial_sup_product_term() {
        // x1 x2 on the euclidean circle: max 1/2 at (1/sqrt2, 1/sqrt2)
        let mut g = Posynomial::new(2);
        g.push(1.0, vec![1.0, 1.0]).unwrap();
        let ball = LqBall::unit(2, fin(2.0)).unwrap();
        let r = posynomial_sup(&g, &ball).unwrap();
        assert!((r.value - 0.5).abs() < 1e-9, "value {}", r.value);
        assert!(r.converged);
    }

    #[test]
    fn posynomial_sup_polydisc_corner() {
        let mut g = Posynomial::new(2);
        g.push(1.0, vec![3.0, 0.0]).unwrap();
        g.push(1.0, vec![0.0, 3.0]).unwrap();
        let r = 0.7_f64;
        let ball = LqBall::new(2, Exponent::Infinity, r).unwrap();
        let out = posynomial_sup(&g, &ball).unwrap();
        assert!((out.value - 2.0 * r.powi(3)).abs() < 1e-15);
        assert_eq!(out.argmax, vec![r, r]);
    }

    #[test]
    fn posynomial_sup_single_term_closed_form() {
        // coefficient * monomial_sup * scale^{|e|}
        let cases: &[(&[f64], f64, f64)] = &[
            (&[2.0, 1.0], 1.0, 0.8),
            (&[1.0, 3.0], 2.0, 1.3),
            (&[2.0, 2.0, 1.0], 3.0, 0.9),
        ];
        for (exps, q, scale) in cases {
            let n = exps.len();
            let mut g = Posynomial::new(n);
            let c = 1.7;
            g.push(c, exps.to_vec()).unwrap();
            let ball = LqBall::new(n, fin(*q), *scale).unwrap();
            let out = posynomial_sup(&g, &ball).unwrap();
            let total: f64 = exps.iter().sum();
            let expect = c * monomial_sup_real(exps, fin(*q)) * scale.powf(total);
            assert!(
                (out.value - expect).abs() <= 1e-9 * expect,
                "exps={exps:?} q={q} got {} want {expect}",
                out.value
            );
        }
    }

    #[test]
    fn posynomial_sup_monotone_in_scale() {
        let mut g = Posynomial::new(3);
        g.push(0.3, vec![1.0, 0.0, 2.0]).unwrap();
        g.push(1.1, vec![0.5, 1.5, 0.0]).unwrap();
        g.push(0.7, vec![2.0, 2.0, 2.0]).unwrap();
        let mut prev = 0.0;
        for &scale in &[0.25, 0.5, 1.0, 2.0] {
            let ball = LqBall::new(3, fin(1.5), scale).unwrap();
            let v = posynomial_sup(&g, &ball).unwrap().value;
            assert!(v >= prev - 1e-12, "scale={scale}");
            prev = v;
        }
    }

    #[test]
    fn posynomial_sup_dominates_random_samples() {
        use rand::Rng;
        let mut g = Posynomial::new(3);
        g.push(0.4, vec![1.0, 1.0, 0.0]).unwrap();
        g.push(0.9, vec![0.0, 2.0, 1.0]).unwrap();
        g.push(0.2, vec![3.0, 0.0, 0.0]).unwrap();
        for &q in &[1.0, 2.0, 4.0] {
            let ball = LqBall::unit(3, fin(q)).unwrap();
            let sup = posynomial_sup(&g, &ball).unwrap().value;
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            for _ in 0..1000 {
                let raw: Vec<f64> = (0..3).map(|_| rng.gen_range(1e-6..1.0)).collect();
                let norm = lq_norm(&raw, fin(q));
                let pt: Vec<f64> = raw.iter().map(|v| v / norm).collect();
                let val = g.eval(&pt);
                assert!(val <= sup + 1e-10, "q={q} sample beat optimizer");
            }
        }
    }

    #[test]
    fn norm_compare_examples() {
        let r = norm_compare(&[1.0, 1.0, 1.0], fin(3.0)).unwrap();
        assert!((r.value - 1.0).abs() < 1e-15);
        assert!(!r.degenerate);

        let r = norm_compare(&[1.0, 0.0], fin(2.0)).unwrap();
        assert!((r.value - 1.0 / 2.0_f64.sqrt()).abs() < 1e-15);

        let r = norm_compare(&[3.0, 4.0], fin(2.0)).unwrap();
        let expect = 7.0 / (2.0_f64.sqrt() * 5.0);
        assert!((r.value - expect).abs() < 1e-15);

        let r = norm_compare(&[0.0, 0.0], fin(2.0)).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(r.degenerate);
    }

    #[test]
    fn norm_compare_at_most_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let unif = Uniform::new(0.0_f64, 5.0);
        for _ in 0..200 {
            let n = 1 + (unif.sample(&mut rng) as usize % 4);
            let r: Vec<f64> = (0..n).map(|_| unif.sample(&mut rng)).collect();
            for &s in &[fin(1.0), fin(2.0), fin(3.5), Exponent::Infinity] {
                let out = norm_compare(&r, s).unwrap();
                assert!(out.value <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn lq_ball_validation() {
        assert!(LqBall::new(0, fin(2.0), 1.0).is_err());
        assert!(LqBall::new(2, fin(2.0), 0.0).is_err());
        assert!(LqBall::new(2, fin(2.0), -1.0).is_err());
        assert!(LqBall::new(3, Exponent::Infinity, 0.5).is_ok());
    }
}
