//! Factories for test functions with positive real part and f(0) = 1.
//!
//! The quantities computed by [`crate::engine`] quantify over an infinite
//! class of holomorphic functions; this module builds finite, reproducible
//! batteries of class members that stand in for it: the 1-D half-plane
//! extremals, Cayley transforms of linear maps into the disk, and the two
//! composition constructions (power-sum and coordinate-mean) whose
//! coefficient formulas drive the sandwich bounds.
//!
//! Class membership is guaranteed by construction (Cayley transform of a
//! self-map of the disk vanishing at 0), never checked numerically.

use num_complex::Complex64;
use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::domains::{lq_norm, Exponent, LqBall};
use crate::error::{Error, Result};
use crate::series::{cayley_of, MultiIndex, TruncatedSeries};

/// Construction record; the parameters regenerate the member bit-identically.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum Provenance {
    /// (1 + zeta z)/(1 - zeta z) on the disk.
    Extremal { zeta_re: f64, zeta_im: f64 },
    /// Cayley transform of z -> sum w_i z_i.
    CayleyLinear { w: Vec<f64> },
    /// base composed with z_1^q + ... + z_n^q.
    PowerSumCompose {
        base: Box<Provenance>,
        q: u32,
        n: usize,
    },
    /// base composed with (z_1 + ... + z_n)/n.
    MeanCompose { base: Box<Provenance>, n: usize },
    /// Seeded cayley_linear drawn inside a battery.
    Random {
        seed: u64,
        index: usize,
        w: Vec<f64>,
    },
    /// base viewed on the domain rescaled by t (coefficients / t^|alpha|).
    Scaled { base: Box<Provenance>, t: f64 },
}

impl Provenance {
    /// Short stable label for witnesses and tables.
    pub fn label(&self) -> String {
        match self {
            Provenance::Extremal { zeta_re, zeta_im } => {
                format!("extremal({zeta_re}{zeta_im:+}i)")
            }
            Provenance::CayleyLinear { w } => {
                let parts: Vec<String> = w.iter().map(|v| format!("{v:.4}")).collect();
                format!("cayley_linear[{}]", parts.join(","))
            }
            Provenance::PowerSumCompose { q, n, .. } => format!("power_sum(q={q},n={n})"),
            Provenance::MeanCompose { n, .. } => format!("mean(n={n})"),
            Provenance::Random { seed, index, .. } => format!("random(seed={seed},#{index})"),
            Provenance::Scaled { base, t } => format!("{}@t={t}", base.label()),
        }
    }
}

/// Geometric control of the homogeneous blocks beyond the truncation degree.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum TailModel {
    /// Block m has coefficient mass <= 2 (lambda . r)^m at every
    /// nonnegative radius vector r.
    Linear { lambda: Vec<f64> },
    /// Support on degrees q k; block k mass <= 2 (amp sum_i r_i^q)^k.
    PowerBlocks { q: u32, amp: f64 },
    /// No closed form known; sums at this K are reported as truncated.
    Unknown,
}

impl TailModel {
    /// rho with block-k mass <= 2 rho^k at the radius vector r.
    pub fn ratio_vector(&self, r: &[f64]) -> Option<f64> {
        match self {
            TailModel::Linear { lambda } => {
                Some(lambda.iter().zip(r).map(|(l, ri)| l * ri).sum())
            }
            TailModel::PowerBlocks { q, amp } => {
                let sq: f64 = r.iter().map(|ri| ri.powi(*q as i32)).sum();
                Some(amp * sq)
            }
            TailModel::Unknown => None,
        }
    }

    /// Same bound for the sup over the ball `ball` (nonnegative part).
    pub fn ratio_ball(&self, ball: &LqBall) -> Option<f64> {
        match self {
            TailModel::Linear { lambda } => {
                Some(ball.scale * lq_norm(lambda, ball.q.conjugate()))
            }
            TailModel::PowerBlocks { q, amp } => {
                // sup of sum |z_i|^q over the ball: scale^q n^{max(0,1-q/q_ball)}
                let e = (1.0 - f64::from(*q) * ball.q.recip()).max(0.0);
                Some(amp * ball.scale.powi(*q as i32) * (ball.n as f64).powf(e))
            }
            TailModel::Unknown => None,
        }
    }

    /// Degree gap between consecutive blocks.
    pub fn stride(&self) -> u32 {
        match self {
            TailModel::PowerBlocks { q, .. } => *q,
            _ => 1,
        }
    }

    fn for_scale(&self, t: f64) -> TailModel {
        match self {
            TailModel::Linear { lambda } => TailModel::Linear {
                lambda: lambda.iter().map(|l| l / t).collect(),
            },
            TailModel::PowerBlocks { q, amp } => TailModel::PowerBlocks {
                q: *q,
                amp: amp / t.powi(*q as i32),
            },
            TailModel::Unknown => TailModel::Unknown,
        }
    }

    /// For 1-D models, the decay base a with |c_k| <= 2 a^k.
    fn linear_base(&self) -> Option<f64> {
        match self {
            TailModel::Linear { lambda } if lambda.len() == 1 => Some(lambda[0]),
            _ => None,
        }
    }
}

/// A class member: truncated series plus how it was built and how its tail
/// decays. The constant coefficient is exactly 1.
#[derive(Clone, Debug)]
pub struct TestFunction {
    series: TruncatedSeries,
    provenance: Provenance,
    tail: TailModel,
}

impl TestFunction {
    fn new(series: TruncatedSeries, provenance: Provenance, tail: TailModel) -> Self {
        debug_assert_eq!(
            series.coeff(&MultiIndex::zero(series.n())),
            Complex64::new(1.0, 0.0),
            "class members have f(0) = 1"
        );
        Self {
            series,
            provenance,
            tail,
        }
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn tail(&self) -> &TailModel {
        &self.tail
    }

    pub fn n(&self) -> usize {
        self.series.n()
    }

    pub fn max_degree(&self) -> u32 {
        self.series.max_degree()
    }

    /// The member z -> f(z/t) of the class on the domain rescaled by t > 0.
    pub fn for_scale(&self, t: f64) -> Result<TestFunction> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "domain rescale factor must be positive, got {t}"
            )));
        }
        let mut series = TruncatedSeries::zero(self.n(), self.max_degree());
        for (alpha, c) in self.series.iter() {
            series.set_coeff(alpha.clone(), c / t.powi(alpha.order() as i32));
        }
        Ok(TestFunction::new(
            series,
            Provenance::Scaled {
                base: Box::new(self.provenance.clone()),
                t,
            },
            self.tail.for_scale(t),
        ))
    }
}

/// (1 + zeta z)/(1 - zeta z): c_0 = 1, c_k = 2 zeta^k. The extremal member
/// of the 1-D class.
pub fn halfplane_extremal(zeta: Complex64, k_max: u32) -> Result<TestFunction> {
    if zeta.norm() > 1.0 + 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "extremal parameter must satisfy |zeta| <= 1, got |zeta| = {}",
            zeta.norm()
        )));
    }
    let mut series = TruncatedSeries::one(1, k_max);
    let mut c = Complex64::new(2.0, 0.0);
    for k in 1..=k_max {
        c *= zeta;
        if c.norm() == 0.0 {
            break;
        }
        series.set_coeff(MultiIndex::new(vec![k]), c);
    }
    Ok(TestFunction::new(
        series,
        Provenance::Extremal {
            zeta_re: zeta.re,
            zeta_im: zeta.im,
        },
        TailModel::Linear {
            lambda: vec![zeta.norm()],
        },
    ))
}

/// Cayley transform of phi(z) = sum w_i z_i on `ball`. Admissible when phi
/// maps the ball into the unit disk: scale * ||w||_{q'} <= 1 (Hoelder
/// conjugate q'). Weights may be negative; only moduli reach the Bohr sums.
pub fn cayley_linear(w: &[f64], ball: &LqBall, k_max: u32) -> Result<TestFunction> {
    if w.len() != ball.n {
        return Err(Error::DimensionMismatch {
            expected: ball.n,
            got: w.len(),
        });
    }
    let dual_norm = lq_norm(w, ball.q.conjugate()) * ball.scale;
    if dual_norm > 1.0 + 1e-12 {
        return Err(Error::WeightNotAdmissible { norm: dual_norm });
    }
    let phi = TruncatedSeries::from_terms(
        ball.n,
        k_max,
        w.iter()
            .enumerate()
            .filter(|(_, wi)| **wi != 0.0)
            .map(|(i, wi)| (MultiIndex::unit(ball.n, i), Complex64::new(*wi, 0.0))),
    )?;
    let series = cayley_of(&phi, k_max)?;
    Ok(TestFunction::new(
        series,
        Provenance::CayleyLinear { w: w.to_vec() },
        TailModel::Linear {
            lambda: w.iter().map(|wi| wi.abs()).collect(),
        },
    ))
}

/// f1d composed with v(z) = z_1^q + ... + z_n^q on the unit ball of l^n_q
/// (integer q only; v is not holomorphic otherwise). Coefficient at q*alpha
/// with |alpha| = k is c_k(f1d) k!/alpha!.
pub fn power_sum_compose(
    f1d: &TestFunction,
    q: Exponent,
    n: usize,
    k_max: u32,
) -> Result<TestFunction> {
    if f1d.n() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: f1d.n(),
        });
    }
    let qi = match q {
        Exponent::Finite(v) if v.fract() == 0.0 && v >= 1.0 => v as u32,
        _ => {
            return Err(Error::InvalidParameter(format!(
                "power-sum composition needs integer q >= 1, got {q}"
            )))
        }
    };
    if n == 0 {
        return Err(Error::InvalidParameter("dimension n must be >= 1".into()));
    }
    let mut series = TruncatedSeries::zero(n, k_max);
    for k in 0..=k_max / qi {
        let ck = f1d.series.coeff(&MultiIndex::new(vec![k]));
        if ck.re == 0.0 && ck.im == 0.0 {
            continue;
        }
        for alpha in MultiIndex::enumerate_degree(n, k) {
            let c = ck * alpha.multinomial();
            series.set_coeff(alpha.scale(qi), c);
        }
    }
    let tail = match f1d.tail.linear_base() {
        Some(a) => TailModel::PowerBlocks { q: qi, amp: a },
        None => TailModel::Unknown,
    };
    Ok(TestFunction::new(
        series,
        Provenance::PowerSumCompose {
            base: Box::new(f1d.provenance.clone()),
            q: qi,
            n,
        },
        tail,
    ))
}

/// f1d composed with s(z) = (z_1 + ... + z_n)/n, a class member on the unit
/// ball of every l^n_q. Coefficient at alpha with |alpha| = k is
/// (k!/alpha!) c_k(f1d)/n^k.
pub fn mean_compose(f1d: &TestFunction, n: usize, k_max: u32) -> Result<TestFunction> {
    if f1d.n() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: f1d.n(),
        });
    }
    if n == 0 {
        return Err(Error::InvalidParameter("dimension n must be >= 1".into()));
    }
    let mut series = TruncatedSeries::zero(n, k_max);
    for k in 0..=k_max {
        let ck = f1d.series.coeff(&MultiIndex::new(vec![k]));
        if ck.re == 0.0 && ck.im == 0.0 {
            continue;
        }
        let nk = (n as f64).powi(k as i32);
        for alpha in MultiIndex::enumerate_degree(n, k) {
            series.set_coeff(alpha.clone(), ck * (alpha.multinomial() / nk));
        }
    }
    let tail = match f1d.tail.linear_base() {
        Some(a) => TailModel::Linear {
            lambda: vec![a / n as f64; n],
        },
        None => TailModel::Unknown,
    };
    Ok(TestFunction::new(
        series,
        Provenance::MeanCompose {
            base: Box::new(f1d.provenance.clone()),
            n,
        },
        tail,
    ))
}

/// A finite family of class members sharing one domain and truncation degree:
/// the computational surrogate for "for every class member".
#[derive(Clone, Debug)]
pub struct TestBattery {
    functions: Vec<TestFunction>,
    domain: LqBall,
    k_max: u32,
}

impl TestBattery {
    pub fn new(functions: Vec<TestFunction>, domain: LqBall, k_max: u32) -> Result<Self> {
        if functions.is_empty() {
            return Err(Error::EmptyInput("battery needs at least one member".into()));
        }
        for f in &functions {
            if f.n() != domain.n {
                return Err(Error::DimensionMismatch {
                    expected: domain.n,
                    got: f.n(),
                });
            }
            if f.max_degree() != k_max {
                return Err(Error::InvalidParameter(format!(
                    "battery members must share K = {k_max}, found {}",
                    f.max_degree()
                )));
            }
        }
        Ok(Self {
            functions,
            domain,
            k_max,
        })
    }

    pub fn members(&self) -> &[TestFunction] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn domain(&self) -> &LqBall {
        &self.domain
    }

    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    /// The first `len` members (same domain): used for battery-monotonicity
    /// checks.
    pub fn prefix(&self, len: usize) -> Result<TestBattery> {
        TestBattery::new(
            self.functions.iter().take(len).cloned().collect(),
            self.domain,
            self.k_max,
        )
    }

    /// The same family viewed on the domain rescaled by t (members become
    /// z -> f(z/t)).
    pub fn rescaled(&self, t: f64) -> Result<TestBattery> {
        let functions = self
            .functions
            .iter()
            .map(|f| f.for_scale(t))
            .collect::<Result<Vec<_>>>()?;
        let domain = self.domain.with_scale(self.domain.scale * t)?;
        TestBattery::new(functions, domain, self.k_max)
    }
}

/// Whether the ball's exponent admits the power-sum composition.
fn integer_q(ball: &LqBall) -> Option<Exponent> {
    match ball.q {
        Exponent::Finite(v) if v.fract() == 0.0 => Some(ball.q),
        _ => None,
    }
}

/// Deterministic battery of `size` members on `ball`: axis extremals first,
/// then the two compositions of the zeta = 1 extremal (power-sum only when
/// the ball exponent is an integer), then seeded random cayley_linear
/// members. Identical seeds give identical batteries.
pub fn random_battery(ball: &LqBall, size: usize, k_max: u32, seed: u64) -> Result<TestBattery> {
    if size == 0 {
        return Err(Error::EmptyInput("battery size must be >= 1".into()));
    }
    let n = ball.n;
    let t = ball.scale;
    let mut members: Vec<TestFunction> = Vec::with_capacity(size);

    // Axis extremals: Cayley of z -> z_i / t, the 1-D extremal on axis i.
    for i in 0..n {
        if members.len() == size {
            break;
        }
        let mut w = vec![0.0; n];
        w[i] = 1.0 / t;
        members.push(cayley_linear(&w, ball, k_max)?);
    }

    let one = halfplane_extremal(Complex64::new(1.0, 0.0), k_max)?;
    if members.len() < size {
        let h = mean_compose(&one, n, k_max)?;
        members.push(if t == 1.0 { h } else { h.for_scale(t)? });
    }
    if members.len() < size {
        if let Some(q) = integer_q(ball) {
            let u = power_sum_compose(&one, q, n, k_max)?;
            members.push(if t == 1.0 { u } else { u.for_scale(t)? });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amp_dist = Uniform::new(0.35_f64, 0.95);
    let raw_dist = Uniform::new(0.05_f64, 1.0);
    let mut index = 0;
    while members.len() < size {
        let amp = amp_dist.sample(&mut rng);
        let raw: Vec<f64> = (0..n).map(|_| raw_dist.sample(&mut rng)).collect();
        let norm = lq_norm(&raw, ball.q.conjugate()) * t;
        let w: Vec<f64> = raw.iter().map(|v| amp * v / norm).collect();
        let mut member = cayley_linear(&w, ball, k_max)?;
        member.provenance = Provenance::Random { seed, index, w };
        members.push(member);
        index += 1;
    }

    TestBattery::new(members, *ball, k_max)
}

/// The default battery: n axis extremals, both compositions of the zeta = 1
/// extremal, and 8 random cayley_linear members.
pub fn default_battery(ball: &LqBall, k_max: u32, seed: u64) -> Result<TestBattery> {
    let compositions = if integer_q(ball).is_some() { 2 } else { 1 };
    random_battery(ball, ball.n + compositions + 8, k_max, seed)
}
