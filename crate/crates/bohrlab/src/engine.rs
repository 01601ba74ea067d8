//! Bohr-sum evaluation, certified radius bisection, and the arithmetic
//! radius search.
//!
//! Every quantity here is computed against a [`TestBattery`]: since the
//! battery members form a subset of the class, suprema over the battery are
//! lower estimates of class suprema, and the radii solved from them are
//! upper estimates of the true radii. The tail policy decides whether block
//! sums beyond the truncation degree are folded in as geometric bounds
//! (making each member's sum an upper bound of its full series sum) or
//! dropped and flagged as truncated.

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cara::{TailModel, TestBattery, TestFunction};
use crate::domains::{powx, posynomial_sup_with, AscentConfig, Exponent, LqBall, Posynomial};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// What to do about homogeneous blocks beyond the truncation degree K.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailPolicy {
    /// Ignore them and mark the outcome truncated.
    ReportK,
    /// Add the geometric bound from the member's tail model whenever its
    /// ratio is below 1; outcomes then bound the full series sum.
    GeometricBound,
}

/// Shared parameters of one Bohr-sum computation.
#[derive(Clone, Copy, Debug)]
pub struct BohrParams {
    p: f64,
    pub tail_policy: TailPolicy,
    pub ascent: AscentConfig,
}

impl BohrParams {
    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::InvalidParameter(format!(
                "sum exponent must satisfy 1 <= p < inf, got {p}"
            )));
        }
        Ok(Self {
            p,
            tail_policy: TailPolicy::GeometricBound,
            ascent: AscentConfig::default(),
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn with_tail_policy(mut self, policy: TailPolicy) -> Self {
        self.tail_policy = policy;
        self
    }

    pub fn with_ascent(mut self, ascent: AscentConfig) -> Self {
        self.ascent = ascent;
        self
    }
}

/// The p-th power majorant of one member at fixed p: evaluates
/// sum_{alpha != 0} |c_alpha|^p r^{p alpha} with per-coordinate power
/// tables, so a call costs one multiplication chain per term.
#[derive(Clone, Debug)]
pub struct Majorant {
    n: usize,
    p: f64,
    coeff_p: Vec<f64>,
    exps: Vec<u32>,
    offsets: Vec<usize>,
    table_len: usize,
}

impl Majorant {
    pub fn new(f: &TestFunction, p: f64) -> Self {
        let n = f.n();
        let mut coeff_p = Vec::new();
        let mut exps = Vec::new();
        let mut max_exp = vec![0u32; n];
        for (alpha, c) in f.series().iter() {
            if alpha.order() == 0 {
                continue;
            }
            coeff_p.push(powx(c.norm(), p));
            for (i, &a) in alpha.exponents().iter().enumerate() {
                exps.push(a);
                max_exp[i] = max_exp[i].max(a);
            }
        }
        let mut offsets = Vec::with_capacity(n);
        let mut table_len = 0usize;
        for &m in &max_exp {
            offsets.push(table_len);
            table_len += m as usize + 1;
        }
        Self {
            n,
            p,
            coeff_p,
            exps,
            offsets,
            table_len,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.coeff_p.len()
    }

    /// Evaluate at a nonnegative radius vector, reusing `scratch`.
    pub fn power_sum_with(&self, r: &[f64], scratch: &mut Vec<f64>) -> f64 {
        debug_assert_eq!(r.len(), self.n);
        scratch.clear();
        scratch.resize(self.table_len, 1.0);
        for i in 0..self.n {
            let base = powx(r[i], self.p);
            let o = self.offsets[i];
            let end = if i + 1 < self.n {
                self.offsets[i + 1]
            } else {
                self.table_len
            };
            let mut v = 1.0;
            for slot in scratch[o + 1..end].iter_mut() {
                v *= base;
                *slot = v;
            }
        }
        let mut total = 0.0;
        for (t, c) in self.coeff_p.iter().enumerate() {
            let row = &self.exps[t * self.n..(t + 1) * self.n];
            let mut v = *c;
            for (i, &a) in row.iter().enumerate() {
                v *= scratch[self.offsets[i] + a as usize];
            }
            total += v;
        }
        total
    }

    pub fn power_sum(&self, r: &[f64]) -> f64 {
        let mut scratch = Vec::new();
        self.power_sum_with(r, &mut scratch)
    }

    /// The same sum as a posynomial in r (term exponents p * alpha), for
    /// maximization over a ball.
    pub fn posynomial(&self) -> Posynomial {
        let mut g = Posynomial::new(self.n);
        for (t, &c) in self.coeff_p.iter().enumerate() {
            let row = &self.exps[t * self.n..(t + 1) * self.n];
            let e: Vec<f64> = row.iter().map(|&a| self.p * f64::from(a)).collect();
            g.push(c, e).expect("majorant exponents are nonnegative");
        }
        g
    }
}

/// Additive p-sum tail for blocks beyond K, given the tail ratio. Returns
/// (tail, truncated); an infinite tail is a valid (and binding) bound.
fn tail_term(ratio: Option<f64>, p: f64, policy: TailPolicy, k_max: u32, stride: u32) -> (f64, bool) {
    match policy {
        TailPolicy::ReportK => match ratio {
            Some(rho) if rho == 0.0 => (0.0, false),
            _ => (0.0, true),
        },
        TailPolicy::GeometricBound => match ratio {
            None => (0.0, true),
            Some(rho) => {
                if rho == 0.0 {
                    return (0.0, false);
                }
                let sigma = powx(rho, p);
                if sigma >= 1.0 - 1e-12 {
                    (f64::INFINITY, false)
                } else {
                    let k0 = (k_max / stride) as i32 + 1;
                    (powx(2.0, p) * sigma.powi(k0) / (1.0 - sigma), false)
                }
            }
        },
    }
}

fn finish_sum(power_sum: f64, tail: f64, p: f64) -> f64 {
    0.5 * powx(1.0 + power_sum + tail, 1.0 / p)
}

/// One Bohr-sum evaluation: value = (1/2)(1 + S + tail)^{1/p}, S the
/// truncated majorant power sum. When `truncated` the tail was dropped and
/// `value` underestimates the full sum; otherwise it bounds it from above.
#[derive(Clone, Copy, Debug)]
pub struct SumOutcome {
    pub value: f64,
    pub tail_bound: f64,
    pub truncated: bool,
    pub converged: bool,
}

/// Bohr sum of one member at a fixed radius vector.
pub fn bohr_sum_vector(f: &TestFunction, params: &BohrParams, r: &[f64]) -> Result<SumOutcome> {
    if r.len() != f.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            got: r.len(),
        });
    }
    if r.iter().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(Error::InvalidParameter(
            "radius vectors must be nonnegative and finite".into(),
        ));
    }
    let s = Majorant::new(f, params.p()).power_sum(r);
    let (tail, truncated) = tail_term(
        f.tail().ratio_vector(r),
        params.p(),
        params.tail_policy,
        f.max_degree(),
        f.tail().stride(),
    );
    Ok(SumOutcome {
        value: finish_sum(s, tail, params.p()),
        tail_bound: tail,
        truncated,
        converged: true,
    })
}

/// Bohr sum of one member over a ball: the majorant is maximized over the
/// nonnegative part of `ball`. On a polydisc the maximum sits at the corner
/// and the call reduces exactly to [`bohr_sum_vector`].
pub fn bohr_sum_domain(f: &TestFunction, params: &BohrParams, ball: &LqBall) -> Result<SumOutcome> {
    if ball.n != f.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            got: ball.n,
        });
    }
    if ball.q.is_infinite() {
        return bohr_sum_vector(f, params, &vec![ball.scale; ball.n]);
    }
    let g = Majorant::new(f, params.p()).posynomial();
    let (s, converged) = if g.is_empty() {
        (0.0, true)
    } else {
        let sup = posynomial_sup_with(&g, ball, &params.ascent)?;
        (sup.value, sup.converged)
    };
    let (tail, truncated) = tail_term(
        f.tail().ratio_ball(ball),
        params.p(),
        params.tail_policy,
        f.max_degree(),
        f.tail().stride(),
    );
    Ok(SumOutcome {
        value: finish_sum(s, tail, params.p()),
        tail_bound: tail,
        truncated,
        converged,
    })
}

/// Largest member sum at one radius. `argmax` is the lowest binding index.
#[derive(Clone, Debug)]
pub struct ClassSup {
    pub value: f64,
    pub argmax: usize,
    pub truncated: bool,
    pub converged: bool,
}

struct PreparedMember {
    posy: Posynomial,
    tail: TailModel,
}

fn prepare(battery: &TestBattery, p: f64) -> Vec<PreparedMember> {
    battery
        .members()
        .iter()
        .map(|f| PreparedMember {
            posy: Majorant::new(f, p).posynomial(),
            tail: f.tail().clone(),
        })
        .collect()
}

fn class_sup_prepared(
    pre: &[PreparedMember],
    n: usize,
    q: Exponent,
    k_max: u32,
    params: &BohrParams,
    r: f64,
) -> Result<ClassSup> {
    if r == 0.0 {
        return Ok(ClassSup {
            value: 0.5,
            argmax: 0,
            truncated: false,
            converged: true,
        });
    }
    let ball = LqBall::new(n, q, r)?;
    let corner = if q.is_infinite() {
        Some(vec![r; n])
    } else {
        None
    };
    let mut out = ClassSup {
        value: f64::NEG_INFINITY,
        argmax: 0,
        truncated: false,
        converged: true,
    };
    for (i, m) in pre.iter().enumerate() {
        let (s, conv) = if m.posy.is_empty() {
            (0.0, true)
        } else if let Some(c) = &corner {
            (m.posy.eval(c), true)
        } else {
            let sup = posynomial_sup_with(&m.posy, &ball, &params.ascent)?;
            (sup.value, sup.converged)
        };
        let (tail, trunc) = tail_term(
            m.tail.ratio_ball(&ball),
            params.p(),
            params.tail_policy,
            k_max,
            m.tail.stride(),
        );
        let value = finish_sum(s, tail, params.p());
        out.truncated |= trunc;
        out.converged &= conv;
        if value > out.value {
            out.value = value;
            out.argmax = i;
        }
    }
    Ok(out)
}

/// Largest Bohr sum across the battery at radius `r` (ball shape taken from
/// the battery's domain).
pub fn class_sup(battery: &TestBattery, params: &BohrParams, r: f64) -> Result<ClassSup> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "evaluation radius must be nonnegative and finite, got {r}"
        )));
    }
    let pre = prepare(battery, params.p());
    class_sup_prepared(
        &pre,
        battery.domain().n,
        battery.domain().q,
        battery.k_max(),
        params,
        r,
    )
}

/// Bracketing interval for the battery's Bohr radius: class_sup(lo) <= 1 and
/// class_sup(hi) > 1, unless the sum never exceeds 1 up to the domain scale
/// (`unconstrained`, in which case lo = hi = scale).
#[derive(Clone, Debug)]
pub struct RadiusInterval {
    pub lo: f64,
    pub hi: f64,
    /// Binding member index at `hi` (last infeasible evaluation).
    pub witness: Option<usize>,
    pub unconstrained: bool,
    pub truncated: bool,
    pub converged: bool,
    pub k_max: u32,
    pub tol: f64,
}

impl RadiusInterval {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Bisect for the largest radius with battery sup <= 1. The battery bounds
/// the class from inside, so `lo` is also a certified lower bound of the
/// *class* radius whenever nothing was truncated.
pub fn radius_solve(battery: &TestBattery, params: &BohrParams, tol: f64) -> Result<RadiusInterval> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "bisection tolerance must be positive, got {tol}"
        )));
    }
    let pre = prepare(battery, params.p());
    let n = battery.domain().n;
    let q = battery.domain().q;
    let scale = battery.domain().scale;
    let k_max = battery.k_max();
    let mut truncated = false;
    let mut converged = true;

    let top = class_sup_prepared(&pre, n, q, k_max, params, scale)?;
    truncated |= top.truncated;
    converged &= top.converged;
    if top.value <= 1.0 {
        return Ok(RadiusInterval {
            lo: scale,
            hi: scale,
            witness: None,
            unconstrained: true,
            truncated,
            converged,
            k_max,
            tol,
        });
    }

    let mut lo = 0.0;
    let mut hi = scale;
    let mut witness = top.argmax;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = class_sup_prepared(&pre, n, q, k_max, params, mid)?;
        truncated |= s.truncated;
        converged &= s.converged;
        if s.value <= 1.0 {
            lo = mid;
        } else {
            hi = mid;
            witness = s.argmax;
        }
    }
    Ok(RadiusInterval {
        lo,
        hi,
        witness: Some(witness),
        unconstrained: false,
        truncated,
        converged,
        k_max,
        tol,
    })
}

/// Which side of the truth a reported number sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    /// Search over a finite battery: an estimate of the quantity from above
    /// (fewer constraints than the full class).
    UpperEstimate,
    /// Exact closed form.
    TheoremExact,
    /// Certified from below.
    LowerCertificate,
}

/// Settings of the arithmetic-radius search.
#[derive(Clone, Copy, Debug)]
pub struct ArithConfig {
    pub starts: usize,
    pub sweeps: usize,
    /// Line-search tolerance, relative to the domain scale.
    pub rel_tol: f64,
    /// Rays growing past cap_factor * scale abort with `unbounded`.
    pub cap_factor: f64,
    pub seed: u64,
}

impl Default for ArithConfig {
    fn default() -> Self {
        Self {
            starts: 12,
            sweeps: 6,
            rel_tol: 1e-9,
            cap_factor: 64.0,
            seed: 0,
        }
    }
}

/// Best admissible radius vector found: `value` is the coordinate mean of
/// `r_vec`, which satisfies every battery member's sum <= 1.
#[derive(Clone, Debug)]
pub struct ArithEstimate {
    pub value: f64,
    pub r_vec: Vec<f64>,
    pub kind: EstimateKind,
    pub unbounded: bool,
    pub truncated: bool,
}

fn vector_feasible(
    members: &[(Majorant, TailModel)],
    params: &BohrParams,
    k_max: u32,
    budget: f64,
    r: &[f64],
    scratch: &mut Vec<f64>,
    truncated: &mut bool,
) -> bool {
    for (m, tail) in members {
        let s = m.power_sum_with(r, scratch);
        let (t, trunc) = tail_term(
            tail.ratio_vector(r),
            params.p(),
            params.tail_policy,
            k_max,
            tail.stride(),
        );
        *truncated |= trunc;
        if s + t > budget {
            return false;
        }
    }
    true
}

/// Largest t in [0, cap] with feas(t), assuming feas(0): doubling from
/// t_start then bisection to `tol`. Second component reports hitting cap.
fn bisect_max<F: FnMut(f64) -> bool>(mut feas: F, t_start: f64, cap: f64, tol: f64) -> (f64, bool) {
    let mut lo = 0.0;
    let mut hi = t_start.min(cap);
    if feas(hi) {
        loop {
            lo = hi;
            if hi >= cap {
                return (lo, true);
            }
            hi = (hi * 2.0).min(cap);
            if !feas(hi) {
                break;
            }
        }
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if feas(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, false)
}

/// Deterministic search for the largest coordinate mean over radius vectors
/// admissible for the whole battery: seeded rays (all-ones first), largest
/// feasible point per ray by bisection, then coordinate-ascent sweeps. The
/// returned vector is always feasible; the mean is an upper estimate of the
/// arithmetic radius because the battery is a finite subset of the class.
pub fn arith_bohr_estimate(
    battery: &TestBattery,
    params: &BohrParams,
    cfg: &ArithConfig,
) -> Result<ArithEstimate> {
    if cfg.starts == 0 {
        return Err(Error::InvalidParameter(
            "arith search needs at least one start".into(),
        ));
    }
    if !(cfg.rel_tol > 0.0) || !(cfg.cap_factor > 1.0) {
        return Err(Error::InvalidParameter(
            "arith search needs rel_tol > 0 and cap_factor > 1".into(),
        ));
    }
    let n = battery.domain().n;
    let scale = battery.domain().scale;
    let k_max = battery.k_max();
    let members: Vec<(Majorant, TailModel)> = battery
        .members()
        .iter()
        .map(|f| (Majorant::new(f, params.p()), f.tail().clone()))
        .collect();
    let budget = powx(2.0, params.p()) - 1.0;
    let cap = cfg.cap_factor * scale;
    let tol_t = cfg.rel_tol * scale;

    let mut dirs: Vec<Vec<f64>> = vec![vec![1.0; n]];
    for i in 0..n {
        if dirs.len() == cfg.starts {
            break;
        }
        let mut d = vec![0.15; n];
        d[i] = 1.0;
        dirs.push(d);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let dist = Uniform::new(0.05_f64, 1.0);
    while dirs.len() < cfg.starts {
        let mut d: Vec<f64> = (0..n).map(|_| dist.sample(&mut rng)).collect();
        let m = d.iter().cloned().fold(0.0_f64, f64::max);
        d.iter_mut().for_each(|v| *v /= m);
        dirs.push(d);
    }

    let mut scratch: Vec<f64> = Vec::new();
    let mut truncated = false;
    let mut best_value = -1.0;
    let mut best_r = vec![0.0; n];
    let mut ray_buf = vec![0.0; n];

    for d in &dirs {
        let (t, hit) = bisect_max(
            |t| {
                for (b, di) in ray_buf.iter_mut().zip(d) {
                    *b = t * di;
                }
                vector_feasible(&members, params, k_max, budget, &ray_buf, &mut scratch, &mut truncated)
            },
            scale,
            cap,
            tol_t,
        );
        if hit {
            return Ok(ArithEstimate {
                value: f64::INFINITY,
                r_vec: d.iter().map(|di| t * di).collect(),
                kind: EstimateKind::UpperEstimate,
                unbounded: true,
                truncated,
            });
        }
        let mut r: Vec<f64> = d.iter().map(|di| t * di).collect();
        let mut cand = r.clone();
        for _ in 0..cfg.sweeps {
            let mut gained = false;
            for i in 0..n {
                cand.copy_from_slice(&r);
                let (xi, hit) = bisect_max(
                    |x| {
                        cand[i] = x;
                        vector_feasible(
                            &members, params, k_max, budget, &cand, &mut scratch, &mut truncated,
                        )
                    },
                    scale.max(r[i]),
                    cap,
                    tol_t,
                );
                if hit {
                    cand[i] = xi;
                    return Ok(ArithEstimate {
                        value: f64::INFINITY,
                        r_vec: cand,
                        kind: EstimateKind::UpperEstimate,
                        unbounded: true,
                        truncated,
                    });
                }
                if xi > r[i] {
                    if xi - r[i] > 10.0 * tol_t {
                        gained = true;
                    }
                    r[i] = xi;
                }
            }
            if !gained {
                break;
            }
        }
        let mean = r.iter().sum::<f64>() / n as f64;
        if mean > best_value {
            best_value = mean;
            best_r = r;
        }
    }

    // Feasibility restoration: the accepted bisection endpoints are feasible
    // by construction, so this loop is a pure safety net against fp drift.
    let mut guard = 0;
    while !vector_feasible(&members, params, k_max, budget, &best_r, &mut scratch, &mut truncated) {
        best_r.iter_mut().for_each(|v| *v *= 1.0 - 1e-12);
        guard += 1;
        if guard > 64 {
            return Err(Error::InvalidParameter(
                "could not restore feasibility of the best arith point".into(),
            ));
        }
    }
    let value = best_r.iter().sum::<f64>() / n as f64;

    Ok(ArithEstimate {
        value,
        r_vec: best_r,
        kind: EstimateKind::UpperEstimate,
        unbounded: false,
        truncated,
    })
}

/// One homogeneous block sum_{|alpha| = m} c_alpha z^alpha of a member.
#[derive(Clone, Debug)]
pub struct HomogeneousMember {
    series: TruncatedSeries,
    degree: u32,
}

impl HomogeneousMember {
    pub fn new(series: TruncatedSeries, degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidParameter(
                "homogeneous members have degree >= 1".into(),
            ));
        }
        if series.iter().any(|(a, _)| a.order() != degree) {
            return Err(Error::InvalidParameter(format!(
                "series is not homogeneous of degree {degree}"
            )));
        }
        Ok(Self { series, degree })
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// (1/2)(sum_alpha |c_alpha|^p r^{p alpha})^{1/p}: this block's share of
    /// a Bohr sum.
    pub fn block_value(&self, p: f64, r: &[f64]) -> f64 {
        let mut s = 0.0;
        for (alpha, c) in self.series.iter() {
            let mut v = powx(c.norm(), p);
            for (ri, &a) in r.iter().zip(alpha.exponents()) {
                v *= powx(*ri, p * f64::from(a));
            }
            s += v;
        }
        0.5 * powx(s, 1.0 / p)
    }
}

/// All nonzero homogeneous blocks (degrees 1..=K) of all battery members.
pub fn homogeneous_members(battery: &TestBattery) -> Vec<HomogeneousMember> {
    let mut out = Vec::new();
    for f in battery.members() {
        for m in 1..=battery.k_max() {
            let block = f
                .series()
                .homogeneous_part(m)
                .expect("degree within range");
            if !block.is_zero() {
                out.push(HomogeneousMember {
                    series: block,
                    degree: m,
                });
            }
        }
    }
    out
}

/// Largest t such that t * direction keeps every homogeneous block of every
/// member (including tail blocks, via the tail models) at block value <= 1.
/// Each block constraint has the closed form t <= (2^p / M_m)^{1/(p m)}.
pub fn block_scale_limit(
    battery: &TestBattery,
    params: &BohrParams,
    direction: &[f64],
) -> Result<f64> {
    if direction.len() != battery.domain().n {
        return Err(Error::DimensionMismatch {
            expected: battery.domain().n,
            got: direction.len(),
        });
    }
    if direction.iter().any(|&v| v < 0.0 || !v.is_finite())
        || direction.iter().all(|&v| v == 0.0)
    {
        return Err(Error::InvalidParameter(
            "direction must be nonnegative, finite, and nonzero".into(),
        ));
    }
    let p = params.p();
    let two_p = powx(2.0, p);
    let mut t_star = f64::INFINITY;
    for f in battery.members() {
        for m in 1..=battery.k_max() {
            let mut mass = 0.0;
            for (alpha, c) in f.series().iter() {
                if alpha.order() != m {
                    continue;
                }
                let mut v = powx(c.norm(), p);
                for (di, &a) in direction.iter().zip(alpha.exponents()) {
                    v *= powx(*di, p * f64::from(a));
                }
                mass += v;
            }
            if mass > 0.0 {
                t_star = t_star.min((two_p / mass).powf(1.0 / (p * f64::from(m))));
            }
        }
        // Tail blocks: mass <= 2 rho^k, so block value <= 1 needs t rho <= 1
        // (Linear) or t^q rho <= 1 (PowerBlocks).
        match f.tail() {
            TailModel::Linear { .. } => {
                if let Some(rho) = f.tail().ratio_vector(direction) {
                    if rho > 0.0 {
                        t_star = t_star.min(1.0 / rho);
                    }
                }
            }
            TailModel::PowerBlocks { q, .. } => {
                if let Some(rho) = f.tail().ratio_vector(direction) {
                    if rho > 0.0 {
                        t_star = t_star.min(rho.powf(-1.0 / f64::from(*q)));
                    }
                }
            }
            TailModel::Unknown => {}
        }
    }
    Ok(t_star)
}

/// Outcome of the block-scaling check: if every homogeneous block stays at
/// value <= 1 at the radius vector r, then every member's full Bohr sum
/// stays <= 1 at r / 3^{1/p}.
#[derive(Clone, Debug, Serialize)]
pub struct ScaleCheckReport {
    /// The hypothesis held for every supplied block at r.
    pub accepted: bool,
    /// min over blocks of 1 - block value at r.
    pub hypothesis_margin: f64,
    pub scaled_r: Vec<f64>,
    pub checked_blocks: usize,
    /// min over battery members of 1 - sum at scaled_r (None if rejected).
    pub min_slack: Option<f64>,
    pub worst_member: Option<usize>,
    pub pass: bool,
}

/// Check the block hypothesis at r, then evaluate every member of `full`
/// at r / 3^{1/p} and report the worst slack. Slacks down to -1e-9 count as
/// a pass (the bound is tight at p = 1, where the slack is exactly zero for
/// saturating batteries).
pub fn block_scaling_check(
    homog: &[HomogeneousMember],
    r: &[f64],
    params: &BohrParams,
    full: &TestBattery,
) -> Result<ScaleCheckReport> {
    if r.len() != full.domain().n {
        return Err(Error::DimensionMismatch {
            expected: full.domain().n,
            got: r.len(),
        });
    }
    let p = params.p();
    let mut margin = f64::INFINITY;
    for h in homog {
        margin = margin.min(1.0 - h.block_value(p, r));
    }
    let accepted = homog.is_empty() || margin >= -1e-12;
    let shrink = powx(3.0, 1.0 / p);
    let scaled_r: Vec<f64> = r.iter().map(|v| v / shrink).collect();
    if !accepted {
        return Ok(ScaleCheckReport {
            accepted,
            hypothesis_margin: margin,
            scaled_r,
            checked_blocks: homog.len(),
            min_slack: None,
            worst_member: None,
            pass: false,
        });
    }
    let mut min_slack = f64::INFINITY;
    let mut worst = 0;
    for (i, f) in full.members().iter().enumerate() {
        let out = bohr_sum_vector(f, params, &scaled_r)?;
        let slack = 1.0 - out.value;
        if slack < min_slack {
            min_slack = slack;
            worst = i;
        }
    }
    Ok(ScaleCheckReport {
        accepted,
        hypothesis_margin: margin,
        scaled_r,
        checked_blocks: homog.len(),
        min_slack: Some(min_slack),
        worst_member: Some(worst),
        pass: min_slack >= -1e-9,
    })
}
