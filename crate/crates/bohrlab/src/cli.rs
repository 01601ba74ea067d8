//! Batch front end: compute radii and estimates, run invariant suites, and
//! emit deterministic tables.
//!
//! The command functions (`cmd_*`) are plain library calls returning a
//! [`CmdReport`]; [`run`] wires them to argument parsing, config-file
//! merging, output writing, and exit codes:
//!
//! * 0: success
//! * 1: a verification suite reported failures
//! * 2: bad configuration (flags, config file, or parameter ranges)
//! * 3: numeric inconsistency (estimate contradicts a certified bound)
//! * 4: output I/O failure

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Deserialize;

use crate::cara::{default_battery, halfplane_extremal, random_battery, TestBattery};
use crate::catalog::{
    arith_radius_identity, arith_sandwich_lq, arith_sandwich_polydisc, das_polydisc,
    h1p_closed_form, h1p_value, kn_bounds, radius_sandwich_lq, sandwich_bounds, BoundKind,
};
use crate::domains::{Exponent, LqBall};
use crate::engine::{
    arith_bohr_estimate, bohr_sum_vector, homogeneous_members, block_scale_limit,
    block_scaling_check, radius_solve, ArithConfig, BohrParams,
};
use crate::error::{Error, Result};
use crate::report::{battery_manifest, to_csv, to_json_string, ResultRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidParameter(format!(
                "output format must be csv or json, got {other}"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifySuite {
    Prop21,
    Scaling,
    Monotone,
    Sandwich,
    All,
}

impl FromStr for VerifySuite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "prop21" => Ok(VerifySuite::Prop21),
            "scaling" => Ok(VerifySuite::Scaling),
            "monotone" => Ok(VerifySuite::Monotone),
            "sandwich" => Ok(VerifySuite::Sandwich),
            "all" => Ok(VerifySuite::All),
            other => Err(Error::InvalidParameter(format!(
                "verify suite must be prop21|scaling|monotone|sandwich|all, got {other}"
            ))),
        }
    }
}

impl fmt::Display for VerifySuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VerifySuite::Prop21 => "prop21",
            VerifySuite::Scaling => "scaling",
            VerifySuite::Monotone => "monotone",
            VerifySuite::Sandwich => "sandwich",
            VerifySuite::All => "all",
        };
        f.write_str(s)
    }
}

/// Fully merged and validated run parameters.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub p: f64,
    pub q: Exponent,
    pub n: usize,
    pub k_max: u32,
    pub tol: f64,
    pub seed: u64,
    /// Battery size; None means the default composition.
    pub battery: Option<usize>,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            p: 1.0,
            q: Exponent::Finite(2.0),
            n: 2,
            k_max: 12,
            tol: 1e-6,
            seed: 0,
            battery: None,
            format: OutputFormat::Csv,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.p.is_finite() || self.p < 1.0 {
            return Err(Error::InvalidParameter(format!(
                "p must satisfy 1 <= p < inf, got {}",
                self.p
            )));
        }
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be >= 1".into()));
        }
        if self.k_max == 0 {
            return Err(Error::InvalidParameter("K must be >= 1".into()));
        }
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if let Some(0) = self.battery {
            return Err(Error::InvalidParameter("battery size must be >= 1".into()));
        }
        Ok(())
    }
}

/// Optional values read from a JSON config file; command-line flags win.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub p: Option<f64>,
    pub q: Option<String>,
    pub n: Option<usize>,
    #[serde(rename = "K")]
    pub k_max: Option<u32>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub battery: Option<usize>,
    pub format: Option<String>,
    pub out: Option<String>,
}

/// Flags shared by the computing subcommands.
#[derive(Args, Clone, Debug, Default)]
pub struct CommonArgs {
    /// Sum exponent p (>= 1).
    #[arg(long)]
    pub p: Option<f64>,
    /// Ball exponent q in [1, inf]; spell infinity as "inf".
    #[arg(long)]
    pub q: Option<String>,
    /// Dimension.
    #[arg(long)]
    pub n: Option<usize>,
    /// Truncation degree.
    #[arg(long = "K")]
    pub k_max: Option<u32>,
    /// Bisection tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Seed for the battery and all searches.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Battery size (default: axes + compositions + 8 random members).
    #[arg(long)]
    pub battery: Option<usize>,
    /// Output format: csv (default) or json.
    #[arg(long)]
    pub format: Option<String>,
    /// Write records to this path instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON config file merged under the flags (flags win).
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Merge defaults <- config file <- flags into a validated RunConfig.
pub fn resolve_config(args: &CommonArgs) -> Result<RunConfig> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str::<FileConfig>(&text)?
        }
        None => FileConfig::default(),
    };
    let mut cfg = RunConfig::default();
    if let Some(v) = file.p {
        cfg.p = v;
    }
    if let Some(v) = &file.q {
        cfg.q = v.parse()?;
    }
    if let Some(v) = file.n {
        cfg.n = v;
    }
    if let Some(v) = file.k_max {
        cfg.k_max = v;
    }
    if let Some(v) = file.tol {
        cfg.tol = v;
    }
    if let Some(v) = file.seed {
        cfg.seed = v;
    }
    if let Some(v) = file.battery {
        cfg.battery = Some(v);
    }
    if let Some(v) = &file.format {
        cfg.format = v.parse()?;
    }
    if let Some(v) = &file.out {
        cfg.out = Some(PathBuf::from(v));
    }
    if let Some(v) = args.p {
        cfg.p = v;
    }
    if let Some(v) = &args.q {
        cfg.q = v.parse()?;
    }
    if let Some(v) = args.n {
        cfg.n = v;
    }
    if let Some(v) = args.k_max {
        cfg.k_max = v;
    }
    if let Some(v) = args.tol {
        cfg.tol = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if let Some(v) = args.battery {
        cfg.battery = Some(v);
    }
    if let Some(v) = &args.format {
        cfg.format = v.parse()?;
    }
    if let Some(v) = &args.out {
        cfg.out = Some(v.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Outcome of one command: records to serialize, human notes for stderr,
/// and the number of failed consistency checks.
#[derive(Clone, Debug)]
pub struct CmdReport {
    pub records: Vec<ResultRecord>,
    pub notes: Vec<String>,
    pub failures: usize,
}

impl CmdReport {
    fn new() -> Self {
        Self {
            records: Vec::new(),
            notes: Vec::new(),
            failures: 0,
        }
    }
}

fn build_battery(cfg: &RunConfig) -> Result<TestBattery> {
    let ball = LqBall::unit(cfg.n, cfg.q)?;
    match cfg.battery {
        Some(size) => random_battery(&ball, size, cfg.k_max, cfg.seed),
        None => default_battery(&ball, cfg.k_max, cfg.seed),
    }
}

fn estimate_record(
    quantity: &str,
    cfg: &RunConfig,
    value: f64,
    lo: Option<f64>,
    hi: Option<f64>,
    source: &str,
) -> ResultRecord {
    ResultRecord {
        quantity: quantity.into(),
        p: cfg.p,
        q: cfg.q,
        n: cfg.n,
        k_max: cfg.k_max,
        seed: cfg.seed,
        bound_kind: "upper_estimate".into(),
        value,
        lo,
        hi,
        source: source.into(),
        battery: None,
    }
}

/// Disk radius by bisection, checked against the closed form. The gap must
/// stay within the bisection tolerance.
pub fn cmd_radius1d(cfg: &RunConfig) -> Result<CmdReport> {
    let mut rep = CmdReport::new();
    let f = halfplane_extremal(Complex64::new(1.0, 0.0), cfg.k_max)?;
    let ball = LqBall::unit(1, cfg.q)?;
    let battery = TestBattery::new(vec![f], ball, cfg.k_max)?;
    let params = BohrParams::new(cfg.p)?;
    let iv = radius_solve(&battery, &params, cfg.tol)?;
    let closed = h1p_value(cfg.p)?;
    let gap = (iv.midpoint() - closed).abs();

    let mut cfg1 = cfg.clone();
    cfg1.n = 1;
    rep.records.push(estimate_record(
        "radius1d",
        &cfg1,
        iv.midpoint(),
        Some(iv.lo),
        Some(iv.hi),
        "extremal-member bisection",
    ));
    rep.records
        .push(ResultRecord::from_bound(&h1p_closed_form(cfg.p)?, cfg.p, cfg.q, 1));
    rep.notes.push(format!(
        "radius1d p={}: bisection {:.12} closed form {:.12} gap {:.3e}",
        cfg.p,
        iv.midpoint(),
        closed,
        gap
    ));
    if gap > cfg.tol + 1e-12 {
        rep.failures += 1;
        rep.notes
            .push(format!("FAIL: gap {gap:.3e} exceeds tolerance {}", cfg.tol));
    }
    Ok(rep)
}

/// Radius interval of the l^n_q ball from a seeded battery, printed next to
/// the sandwich bounds (and the exact polydisc value where it applies).
pub fn cmd_radius(cfg: &RunConfig) -> Result<CmdReport> {
    if cfg.n == 1 {
        return cmd_radius1d(cfg);
    }
    let mut rep = CmdReport::new();
    let battery = build_battery(cfg)?;
    let params = BohrParams::new(cfg.p)?;
    let iv = radius_solve(&battery, &params, cfg.tol)?;
    let pair = radius_sandwich_lq(cfg.p, cfg.q, cfg.n)?;

    rep.records.push(estimate_record(
        "radius",
        cfg,
        iv.midpoint(),
        Some(iv.lo),
        Some(iv.hi),
        "battery bisection",
    ));
    rep.records
        .push(ResultRecord::from_bound(&pair.lower, cfg.p, cfg.q, cfg.n));
    rep.records
        .push(ResultRecord::from_bound(&pair.upper, cfg.p, cfg.q, cfg.n));
    rep.notes.push(format!(
        "radius p={} q={} n={}: interval [{:.9}, {:.9}], bounds [{:.9}, {:.9}]",
        cfg.p, cfg.q, cfg.n, iv.lo, iv.hi, pair.lower.value, pair.upper.value
    ));

    if iv.lo > iv.hi {
        rep.failures += 1;
        rep.notes.push("FAIL: malformed interval".into());
    }
    if iv.hi < pair.lower.value - 1e-6 {
        rep.failures += 1;
        rep.notes.push(format!(
            "FAIL: estimate {:.9} sits below the certified lower bound {:.9}",
            iv.hi, pair.lower.value
        ));
    }
    if iv.lo > pair.upper.value + 1e-5 {
        rep.failures += 1;
        rep.notes.push(format!(
            "FAIL: estimate {:.9} exceeds the upper bound {:.9}",
            iv.lo, pair.upper.value
        ));
    }
    if cfg.q.is_infinite() && cfg.n >= 2 {
        let das = das_polydisc(cfg.p, cfg.n)?;
        if das.kind == BoundKind::Exact && iv.hi < das.value - 1e-4 {
            rep.failures += 1;
            rep.notes.push(format!(
                "FAIL: interval top {:.9} sits below the exact polydisc radius {:.9}",
                iv.hi, das.value
            ));
        }
        rep.records
            .push(ResultRecord::from_bound(&das, cfg.p, cfg.q, cfg.n));
    }
    if iv.truncated {
        rep.notes
            .push("note: some member tails were not controlled; values are truncated".into());
    }
    Ok(rep)
}

/// Arithmetic-radius estimate with the radius-to-mean identity and the
/// sandwich bounds as cross-checks.
pub fn cmd_arith(cfg: &RunConfig) -> Result<CmdReport> {
    let mut rep = CmdReport::new();
    let battery = build_battery(cfg)?;
    let params = BohrParams::new(cfg.p)?;
    let arith_cfg = ArithConfig {
        seed: cfg.seed,
        ..Default::default()
    };
    let est = arith_bohr_estimate(&battery, &params, &arith_cfg)?;
    let iv = radius_solve(&battery, &params, cfg.tol)?;
    let ident = arith_radius_identity(iv.lo, cfg.n, cfg.q);
    let pair = match cfg.q {
        Exponent::Infinity => arith_sandwich_polydisc(cfg.p, cfg.n)?,
        Exponent::Finite(_) => arith_sandwich_lq(cfg.p, cfg.q, cfg.n)?,
    };

    let mut arith_row = estimate_record(
        "arith",
        cfg,
        est.value,
        None,
        None,
        "ray and coordinate ascent over the battery",
    );
    arith_row.battery = Some(battery_manifest(&battery));
    rep.records.push(arith_row);
    rep.records.push(estimate_record(
        "arith_from_radius",
        cfg,
        ident,
        None,
        None,
        "radius-to-mean identity",
    ));
    rep.records
        .push(ResultRecord::from_bound(&pair.lower, cfg.p, cfg.q, cfg.n));
    rep.records
        .push(ResultRecord::from_bound(&pair.upper, cfg.p, cfg.q, cfg.n));
    rep.notes.push(format!(
        "arith p={} q={} n={}: estimate {:.9}, identity from radius {:.9}, bounds [{:.9}, {:.9}]",
        cfg.p, cfg.q, cfg.n, est.value, ident, pair.lower.value, pair.upper.value
    ));

    if est.unbounded {
        rep.failures += 1;
        rep.notes
            .push("FAIL: search escaped to the cap; battery too weak to bound the mean".into());
    }
    if est.value < ident - 1e-5 {
        rep.failures += 1;
        rep.notes.push(format!(
            "FAIL: estimate {:.9} below the identity value {:.9}",
            est.value, ident
        ));
    }
    if est.value < pair.lower.value - 1e-5 {
        rep.failures += 1;
        rep.notes.push(format!(
            "FAIL: estimate {:.9} below the certified lower bound {:.9}",
            est.value, pair.lower.value
        ));
    }
    if est.value > pair.upper.value + 1e-5 {
        rep.failures += 1;
        rep.notes.push(format!(
            "FAIL: estimate {:.9} exceeds the upper bound {:.9}",
            est.value, pair.upper.value
        ));
    }
    Ok(rep)
}

fn verify_row(
    rep: &mut CmdReport,
    name: &str,
    p: f64,
    q: Exponent,
    n: usize,
    k_max: u32,
    seed: u64,
    ok: bool,
    value: f64,
    source: &str,
) {
    if !ok {
        rep.failures += 1;
    }
    rep.records.push(ResultRecord {
        quantity: name.into(),
        p,
        q,
        n,
        k_max,
        seed,
        bound_kind: if ok { "pass".into() } else { "fail".into() },
        value,
        lo: None,
        hi: None,
        source: source.into(),
        battery: None,
    });
}

fn suite_scaling(rep: &mut CmdReport, seed: u64) -> Result<()> {
    let k = 8;
    for &q in &[Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Infinity] {
        for n in [1usize, 2] {
            for &p in &[1.0, 2.0] {
                let ball = LqBall::unit(n, q)?;
                let battery = default_battery(&ball, k, seed)?;
                let params = BohrParams::new(p)?;
                let cfg = ArithConfig {
                    seed,
                    ..Default::default()
                };
                let base = arith_bohr_estimate(&battery, &params, &cfg)?;
                for &t in &[0.5, 2.0] {
                    let scaled = arith_bohr_estimate(&battery.rescaled(t)?, &params, &cfg)?;
                    let gap = (scaled.value - t * base.value).abs() / base.value.abs().max(1e-30);
                    verify_row(
                        rep,
                        "verify.scaling.arith",
                        p,
                        q,
                        n,
                        k,
                        seed,
                        gap <= 1e-6,
                        gap,
                        &format!("domain rescaled by {t}"),
                    );
                }
            }
        }
    }
    Ok(())
}

fn suite_monotone(rep: &mut CmdReport, seed: u64) -> Result<()> {
    // disk radius increases with p and stays below 1
    let mut last = 0.0;
    let mut ok = true;
    let mut min_step = f64::INFINITY;
    for i in 1..=16 {
        let v = h1p_value(0.25 * f64::from(i))?;
        min_step = min_step.min(v - last);
        ok &= v > last && v < 1.0;
        last = v;
    }
    verify_row(
        rep,
        "verify.monotone.h1p",
        0.0,
        Exponent::Finite(1.0),
        1,
        0,
        seed,
        ok,
        min_step,
        "closed form over a p grid",
    );

    // Bohr sums increase with the radius
    let f = halfplane_extremal(Complex64::new(0.9, 0.0), 12)?;
    let params = BohrParams::new(1.5)?;
    let mut ok = true;
    let mut lastv = 0.0;
    for i in 1..=8 {
        let v = bohr_sum_vector(&f, &params, &[0.1 * f64::from(i)])?.value;
        ok &= v > lastv;
        lastv = v;
    }
    verify_row(
        rep,
        "verify.monotone.sum",
        1.5,
        Exponent::Finite(2.0),
        1,
        12,
        seed,
        ok,
        lastv,
        "vector sums on a radius grid",
    );

    // growing the battery can only shrink both estimates
    let ball = LqBall::unit(2, Exponent::Finite(2.0))?;
    let battery = random_battery(&ball, 12, 8, seed)?;
    let params = BohrParams::new(1.0)?;
    let cfg = ArithConfig {
        seed,
        ..Default::default()
    };
    let mut last_arith = f64::INFINITY;
    let mut last_lo = f64::INFINITY;
    let mut ok_arith = true;
    let mut ok_radius = true;
    let mut worst = f64::INFINITY;
    for len in [2usize, 4, 8, 12] {
        let prefix = battery.prefix(len)?;
        let est = arith_bohr_estimate(&prefix, &params, &cfg)?;
        ok_arith &= est.value <= last_arith + 1e-8;
        worst = worst.min(last_arith - est.value);
        last_arith = est.value;
        let iv = radius_solve(&prefix, &params, 1e-6)?;
        ok_radius &= iv.lo <= last_lo + 1e-5;
        last_lo = iv.lo;
    }
    verify_row(
        rep,
        "verify.monotone.battery_arith",
        1.0,
        Exponent::Finite(2.0),
        2,
        8,
        seed,
        ok_arith,
        worst,
        "prefix batteries of sizes 2,4,8,12",
    );
    verify_row(
        rep,
        "verify.monotone.battery_radius",
        1.0,
        Exponent::Finite(2.0),
        2,
        8,
        seed,
        ok_radius,
        last_lo,
        "prefix batteries of sizes 2,4,8,12",
    );
    Ok(())
}

fn suite_sandwich(rep: &mut CmdReport, seed: u64) -> Result<()> {
    for &p in &[1.0, 1.5, 2.0] {
        for &q in &[
            Exponent::Finite(1.0),
            Exponent::Finite(2.0),
            Exponent::Finite(4.0),
            Exponent::Infinity,
        ] {
            for n in 1..=6usize {
                let recs = sandwich_bounds(p, q, n)?;
                let arith_slack = recs[1].value - recs[0].value;
                let radius_slack = recs[3].value - recs[2].value;
                verify_row(
                    rep,
                    "verify.sandwich.nest",
                    p,
                    q,
                    n,
                    0,
                    seed,
                    arith_slack >= -1e-15 && radius_slack >= -1e-15,
                    arith_slack.min(radius_slack),
                    "upper minus lower on both sandwiches",
                );
                // radius pair = arith pair * n^{1/q}
                let root = crate::domains::s_ratio(Exponent::Infinity, q, n);
                let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(1e-30);
                let gap = rel(recs[2].value, recs[0].value * root)
                    .max(rel(recs[3].value, recs[1].value * root));
                verify_row(
                    rep,
                    "verify.sandwich.identity",
                    p,
                    q,
                    n,
                    0,
                    seed,
                    gap <= 1e-12,
                    gap,
                    "radius pair vs arith pair times n^(1/q)",
                );
            }
        }
    }
    Ok(())
}

fn suite_prop21(rep: &mut CmdReport, seed: u64) -> Result<()> {
    let k = 12;
    let cells = [
        (1usize, Exponent::Finite(2.0)),
        (2, Exponent::Finite(1.0)),
        (2, Exponent::Infinity),
    ];
    for &p in &[1.0, 2.0] {
        for &(n, q) in &cells {
            let ball = LqBall::unit(n, q)?;
            let battery = default_battery(&ball, k, seed)?;
            let params = BohrParams::new(p)?;
            let t = block_scale_limit(&battery, &params, &vec![1.0; n])?;
            let homog = homogeneous_members(&battery);
            let report = block_scaling_check(&homog, &vec![t; n], &params, &battery)?;
            let slack = report.min_slack.unwrap_or(f64::NEG_INFINITY);
            verify_row(
                rep,
                "verify.prop21.scale",
                p,
                q,
                n,
                k,
                seed,
                report.accepted && report.pass,
                slack,
                "block hypothesis then shrink by 3^(1/p)",
            );
        }
    }
    Ok(())
}

/// Run one (or all) invariant suites over fixed parameter grids.
pub fn cmd_verify(suite: VerifySuite, seed: u64) -> Result<CmdReport> {
    let mut rep = CmdReport::new();
    if matches!(suite, VerifySuite::Scaling | VerifySuite::All) {
        suite_scaling(&mut rep, seed)?;
    }
    if matches!(suite, VerifySuite::Monotone | VerifySuite::All) {
        suite_monotone(&mut rep, seed)?;
    }
    if matches!(suite, VerifySuite::Sandwich | VerifySuite::All) {
        suite_sandwich(&mut rep, seed)?;
    }
    if matches!(suite, VerifySuite::Prop21 | VerifySuite::All) {
        suite_prop21(&mut rep, seed)?;
    }
    let passed = rep.records.len() - rep.failures;
    rep.notes.push(format!(
        "verify {suite}: {passed}/{} checks passed",
        rep.records.len()
    ));
    Ok(rep)
}

/// Parameter grids for the table command.
#[derive(Clone, Debug)]
pub struct TableSpec {
    pub p_grid: Vec<f64>,
    pub q_grid: Vec<Exponent>,
    pub n_grid: Vec<usize>,
    /// Also run the engine (radius + arith) per cell.
    pub estimates: bool,
}

/// "2..6" (inclusive), "1,2,5", or a mix; empty string means empty grid.
pub fn parse_usize_grid(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim) {
        if tok.is_empty() {
            continue;
        }
        if let Some((a, b)) = tok.split_once("..") {
            let a: usize = a
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad range start {a}")))?;
            let b: usize = b
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad range end {b}")))?;
            if b < a {
                return Err(Error::InvalidParameter(format!("empty range {tok}")));
            }
            out.extend(a..=b);
        } else {
            out.push(
                tok.parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad integer {tok}")))?,
            );
        }
    }
    Ok(out)
}

/// Comma-separated floats; integer ranges like "1..3" expand with step 1.
pub fn parse_f64_grid(s: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim) {
        if tok.is_empty() {
            continue;
        }
        if tok.contains("..") {
            for v in parse_usize_grid(tok)? {
                out.push(v as f64);
            }
        } else {
            out.push(
                tok.parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad number {tok}")))?,
            );
        }
    }
    Ok(out)
}

/// Like [`parse_f64_grid`] but tokens may be "inf".
pub fn parse_q_grid(s: &str) -> Result<Vec<Exponent>> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim) {
        if tok.is_empty() {
            continue;
        }
        if tok.contains("..") {
            for v in parse_usize_grid(tok)? {
                out.push(Exponent::new(v as f64)?);
            }
        } else {
            out.push(tok.parse()?);
        }
    }
    Ok(out)
}

/// Emit catalog bounds (and optionally engine estimates) for every grid
/// cell, in index order. An empty grid yields a header-only table.
pub fn cmd_table(cfg: &RunConfig, spec: &TableSpec) -> Result<CmdReport> {
    for &p in &spec.p_grid {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::InvalidParameter(format!(
                "table grid needs 1 <= p < inf, got {p}"
            )));
        }
    }
    for &n in &spec.n_grid {
        if n == 0 {
            return Err(Error::InvalidParameter("table grid needs n >= 1".into()));
        }
    }
    let mut rep = CmdReport::new();
    for &p in &spec.p_grid {
        for &q in &spec.q_grid {
            for &n in &spec.n_grid {
                for rec in sandwich_bounds(p, q, n)? {
                    rep.records.push(ResultRecord::from_bound(&rec, p, q, n));
                }
                if n == 1 {
                    rep.records
                        .push(ResultRecord::from_bound(&h1p_closed_form(p)?, p, q, 1));
                }
                if n >= 2 {
                    if q.is_infinite() {
                        rep.records
                            .push(ResultRecord::from_bound(&das_polydisc(p, n)?, p, q, n));
                    }
                    for rec in kn_bounds(n, q, None)? {
                        rep.records.push(ResultRecord::from_bound(&rec, p, q, n));
                    }
                }
                if spec.estimates {
                    let mut cell = cfg.clone();
                    cell.p = p;
                    cell.q = q;
                    cell.n = n;
                    let battery = build_battery(&cell)?;
                    let params = BohrParams::new(p)?;
                    let iv = radius_solve(&battery, &params, cell.tol)?;
                    rep.records.push(estimate_record(
                        "radius",
                        &cell,
                        iv.midpoint(),
                        Some(iv.lo),
                        Some(iv.hi),
                        "battery bisection",
                    ));
                    let est = arith_bohr_estimate(
                        &battery,
                        &params,
                        &ArithConfig {
                            seed: cell.seed,
                            ..Default::default()
                        },
                    )?;
                    rep.records.push(estimate_record(
                        "arith",
                        &cell,
                        est.value,
                        None,
                        None,
                        "ray and coordinate ascent over the battery",
                    ));
                }
            }
        }
    }
    rep.notes.push(format!(
        "table: {} cells, {} rows",
        spec.p_grid.len() * spec.q_grid.len() * spec.n_grid.len(),
        rep.records.len()
    ));
    Ok(rep)
}

#[derive(Parser, Debug)]
#[command(
    name = "bohrlab",
    version,
    about = "Bohr-type radii for power series with positive real part on l^n_q balls"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Disk radius by bisection, checked against the closed form.
    Radius1d(CommonArgs),
    /// Radius interval of an l^n_q ball from a seeded battery.
    Radius(CommonArgs),
    /// Arithmetic-radius estimate with catalog cross-checks.
    Arith(CommonArgs),
    /// Run invariant suites (prop21 | scaling | monotone | sandwich | all).
    Verify {
        /// Which suite to run.
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        format: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bound (and optional estimate) tables over parameter grids.
    Table {
        #[command(flatten)]
        common: CommonArgs,
        /// Grid for p, e.g. "1,1.5,2".
        #[arg(long = "p-grid")]
        p_grid: Option<String>,
        /// Grid for q, e.g. "1,2,inf".
        #[arg(long = "q-grid")]
        q_grid: Option<String>,
        /// Grid for n, e.g. "2..6".
        #[arg(long = "n-grid")]
        n_grid: Option<String>,
        /// Also compute engine estimates per cell.
        #[arg(long)]
        estimates: bool,
    },
}

fn emit(rep: &CmdReport, format: OutputFormat, out: Option<&PathBuf>) -> Result<()> {
    let body = match format {
        OutputFormat::Csv => to_csv(&rep.records),
        OutputFormat::Json => {
            let mut s = to_json_string(&rep.records)?;
            s.push('\n');
            s
        }
    };
    match out {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    for note in &rep.notes {
        eprintln!("{note}");
    }
    Ok(())
}

const EXIT_OK: i32 = 0;
const EXIT_VERIFY_FAIL: i32 = 1;
const EXIT_BAD_CONFIG: i32 = 2;
const EXIT_INCONSISTENT: i32 = 3;
const EXIT_IO: i32 = 4;

fn finish(rep: Result<CmdReport>, format: OutputFormat, out: Option<&PathBuf>, fail_code: i32) -> i32 {
    match rep {
        Ok(rep) => {
            if let Err(e) = emit(&rep, format, out) {
                eprintln!("error: {e}");
                return EXIT_IO;
            }
            if rep.failures > 0 {
                fail_code
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INCONSISTENT
        }
    }
}

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match cli.command {
        Command::Radius1d(args) => match resolve_config(&args) {
            Ok(cfg) => finish(cmd_radius1d(&cfg), cfg.format, cfg.out.as_ref(), EXIT_INCONSISTENT),
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_BAD_CONFIG
            }
        },
        Command::Radius(args) => match resolve_config(&args) {
            Ok(cfg) => finish(cmd_radius(&cfg), cfg.format, cfg.out.as_ref(), EXIT_INCONSISTENT),
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_BAD_CONFIG
            }
        },
        Command::Arith(args) => match resolve_config(&args) {
            Ok(cfg) => finish(cmd_arith(&cfg), cfg.format, cfg.out.as_ref(), EXIT_INCONSISTENT),
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_BAD_CONFIG
            }
        },
        Command::Verify {
            suite,
            seed,
            format,
            out,
        } => {
            let suite: VerifySuite = match suite.parse() {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_BAD_CONFIG;
                }
            };
            let format = match format.as_deref().map(OutputFormat::from_str).transpose() {
                Ok(f) => f.unwrap_or(OutputFormat::Csv),
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_BAD_CONFIG;
                }
            };
            finish(
                cmd_verify(suite, seed.unwrap_or(0)),
                format,
                out.as_ref(),
                EXIT_VERIFY_FAIL,
            )
        }
        Command::Table {
            common,
            p_grid,
            q_grid,
            n_grid,
            estimates,
        } => {
            let cfg = match resolve_config(&common) {
                Ok(cfg) => cfg,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_BAD_CONFIG;
                }
            };
            let spec = (|| -> Result<TableSpec> {
                Ok(TableSpec {
                    p_grid: parse_f64_grid(p_grid.as_deref().unwrap_or("1"))?,
                    q_grid: parse_q_grid(q_grid.as_deref().unwrap_or("inf"))?,
                    n_grid: parse_usize_grid(n_grid.as_deref().unwrap_or("2..6"))?,
                    estimates,
                })
            })();
            let spec = match spec {
                Ok(spec) => spec,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_BAD_CONFIG;
                }
            };
            match cmd_table(&cfg, &spec) {
                Err(Error::InvalidParameter(msg)) => {
                    eprintln!("error: {msg}");
                    EXIT_BAD_CONFIG
                }
                rep => finish(rep, cfg.format, cfg.out.as_ref(), EXIT_INCONSISTENT),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn grids_parse() {
        assert_eq!(parse_usize_grid("2..6").unwrap(), vec![2, 3, 4, 5, 6]);
        assert_eq!(parse_usize_grid("1,3,2").unwrap(), vec![1, 3, 2]);
        assert_eq!(parse_usize_grid("1,4..5").unwrap(), vec![1, 4, 5]);
        assert_eq!(parse_usize_grid("").unwrap(), Vec::<usize>::new());
        assert!(parse_usize_grid("5..2").is_err());
        assert!(parse_usize_grid("x").is_err());
        assert_eq!(parse_f64_grid("1,1.5").unwrap(), vec![1.0, 1.5]);
        assert_eq!(parse_f64_grid("1..3").unwrap(), vec![1.0, 2.0, 3.0]);
        let q = parse_q_grid("1,2,inf").unwrap();
        assert_eq!(q.len(), 3);
        assert!(q[2].is_infinite());
        assert!(parse_q_grid("0.5").is_err());
    }

    #[test]
    fn config_validation() {
        let mut c = cfg();
        c.p = 0.5;
        assert!(c.validate().is_err());
        let mut c = cfg();
        c.tol = 0.0;
        assert!(c.validate().is_err());
        let mut c = cfg();
        c.n = 0;
        assert!(c.validate().is_err());
        let mut c = cfg();
        c.k_max = 0;
        assert!(c.validate().is_err());
        assert!(cfg().validate().is_ok());
    }

    #[test]
    fn flags_win_over_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("conf.json");
        std::fs::write(&path, r#"{"p": 2.0, "n": 4, "seed": 9}"#).unwrap();
        let args = CommonArgs {
            p: Some(3.0),
            config: Some(path.clone()),
            ..Default::default()
        };
        let cfg = resolve_config(&args).unwrap();
        assert_eq!(cfg.p, 3.0); // flag wins
        assert_eq!(cfg.n, 4); // file fills the gap
        assert_eq!(cfg.seed, 9);

        std::fs::write(&path, r#"{"unknown_field": 1}"#).unwrap();
        assert!(resolve_config(&args).is_err());
    }

    #[test]
    fn radius1d_matches_closed_form() {
        let mut c = cfg();
        c.p = 1.0;
        c.tol = 1e-9;
        c.k_max = 20;
        let rep = cmd_radius1d(&c).unwrap();
        assert_eq!(rep.failures, 0);
        assert_eq!(rep.records.len(), 2);
        assert_eq!(rep.records[0].quantity, "radius1d");
        assert!((rep.records[0].value - 1.0 / 3.0).abs() < 1e-8);
        assert_eq!(rep.records[1].quantity, "h1p");
    }

    #[test]
    fn radius_delegates_to_1d() {
        let mut c = cfg();
        c.n = 1;
        let rep = cmd_radius(&c).unwrap();
        assert_eq!(rep.records[0].quantity, "radius1d");
    }

    #[test]
    fn radius_pinch_case() {
        let mut c = cfg();
        c.p = 1.0;
        c.q = Exponent::Finite(1.0);
        c.n = 2;
        c.k_max = 10;
        c.tol = 1e-5;
        let rep = cmd_radius(&c).unwrap();
        assert_eq!(rep.failures, 0, "notes: {:?}", rep.notes);
        let row = &rep.records[0];
        assert!(row.lo.unwrap() >= 1.0 / 3.0 - 1e-4);
        assert!(row.lo.unwrap() <= 1.0 / 3.0 + 1e-2);
    }

    #[test]
    fn arith_q1_case() {
        let mut c = cfg();
        c.p = 1.0;
        c.q = Exponent::Finite(1.0);
        c.n = 2;
        c.k_max = 10;
        c.tol = 1e-5;
        let rep = cmd_arith(&c).unwrap();
        assert_eq!(rep.failures, 0, "notes: {:?}", rep.notes);
        assert!((rep.records[0].value - 1.0 / 6.0).abs() < 1e-5);
        assert!(rep.records[0].battery.is_some());
    }

    #[test]
    fn verify_sandwich_passes() {
        let rep = cmd_verify(VerifySuite::Sandwich, 0).unwrap();
        assert_eq!(rep.failures, 0);
        assert!(!rep.records.is_empty());
        assert!(rep.records.iter().all(|r| r.bound_kind == "pass"));
    }

    #[test]
    fn table_is_deterministic_and_header_only_when_empty() {
        let c = cfg();
        let spec = TableSpec {
            p_grid: vec![1.0],
            q_grid: vec![Exponent::Infinity],
            n_grid: vec![2, 3],
            estimates: false,
        };
        let a = cmd_table(&c, &spec).unwrap();
        let b = cmd_table(&c, &spec).unwrap();
        assert_eq!(to_csv(&a.records), to_csv(&b.records));
        assert!(a.records.iter().any(|r| r.quantity == "kn_polydisc_lower"));
        assert!(a.records.iter().any(|r| r.quantity == "h_polydisc"));

        let empty = TableSpec {
            p_grid: vec![],
            q_grid: vec![],
            n_grid: vec![],
            estimates: false,
        };
        let rep = cmd_table(&c, &empty).unwrap();
        assert_eq!(to_csv(&rep.records), format!("{}\n", crate::report::CSV_HEADER));
    }

    #[test]
    fn run_exit_codes() {
        // bad p -> bad config
        assert_eq!(run(["bohrlab", "radius1d", "--p", "0.5"]), EXIT_BAD_CONFIG);
        // unknown verify suite -> bad config
        assert_eq!(run(["bohrlab", "verify", "nope"]), EXIT_BAD_CONFIG);
        // unwritable output path -> IO failure
        assert_eq!(
            run([
                "bohrlab",
                "table",
                "--n-grid",
                "",
                "--out",
                "/nonexistent-dir/t.csv"
            ]),
            EXIT_IO
        );
    }
}
