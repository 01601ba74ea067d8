//! End-to-end acceptance gate. Each test covers one criterion and prints a
//! single pass/fail line; tolerances are pinned where they are asserted.

use std::time::Instant;

use bohrlab::cara::{
    cayley_linear, default_battery, halfplane_extremal, mean_compose, power_sum_compose,
    random_battery, TestBattery,
};
use bohrlab::catalog::{
    das_polydisc, h1p_value, radius_sandwich_lq, sandwich_bounds,
};
use bohrlab::cli::{cmd_radius, cmd_table, cmd_verify, RunConfig, TableSpec, VerifySuite};
use bohrlab::domains::{monomial_sup, AscentConfig};
use bohrlab::engine::{
    arith_bohr_estimate, bohr_sum_vector, class_sup, radius_solve, ArithConfig,
};
use bohrlab::report::{to_csv, to_json_string};
use bohrlab::{BohrParams, Exponent, LqBall, MultiIndex, TruncatedSeries};
use num_complex::Complex64;

/// Collects named failures and prints the one-line verdict.
struct Criterion {
    name: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            failures: Vec::new(),
        }
    }
    fn check(&mut self, ok: bool, msg: String) {
        if !ok {
            self.failures.push(msg);
        }
    }
    fn finish(self) {
        let ok = self.failures.is_empty();
        println!(
            "acceptance {}: {}",
            self.name,
            if ok { "PASS" } else { "FAIL" }
        );
        assert!(ok, "{}: {:?}", self.name, self.failures);
    }
}

fn fin(q: f64) -> Exponent {
    Exponent::Finite(q)
}

#[test]
fn criterion_1_disk_closed_form() {
    let mut c = Criterion::new("1 disk radius matches the closed form");
    for p in [1.0, 1.5, 2.0, 3.0] {
        let clock = Instant::now();
        let f = halfplane_extremal(Complex64::new(1.0, 0.0), 30).unwrap();
        let ball = LqBall::unit(1, fin(2.0)).unwrap();
        let battery = TestBattery::new(vec![f], ball, 30).unwrap();
        let iv = radius_solve(&battery, &BohrParams::new(p).unwrap(), 1e-10).unwrap();
        let gap = (iv.midpoint() - h1p_value(p).unwrap()).abs();
        let budget = if p == 1.0 { 1e-9 } else { 1e-6 };
        c.check(gap <= budget, format!("p={p}: gap {gap:.3e} > {budget:.0e}"));
        let dt = clock.elapsed();
        c.check(dt.as_secs_f64() < 1.0, format!("p={p}: took {dt:?}"));
    }
    c.finish();
}

#[test]
fn criterion_2_polydisc_published_radius() {
    let mut c = Criterion::new("2 polydisc battery saturates at the published radius");
    for n in [2usize, 3] {
        for p in [2.0, 3.0] {
            let clock = Instant::now();
            let ball = LqBall::unit(n, Exponent::Infinity).unwrap();
            let battery = default_battery(&ball, 30, 11).unwrap();
            let params = BohrParams::new(p).unwrap();
            let r = das_polydisc(p, n).unwrap().value;

            let sup = class_sup(&battery, &params, r).unwrap();
            c.check(
                sup.value <= 1.0 + 1e-8,
                format!("n={n} p={p}: sup {:.12} > 1 + 1e-8", sup.value),
            );

            // the first member is the axis extremal; it attains the bound
            let axis = &battery.members()[0];
            let v = bohr_sum_vector(axis, &params, &vec![r; n]).unwrap().value;
            c.check(
                (v - 1.0).abs() <= 1e-8,
                format!("n={n} p={p}: axis sum {v:.12} differs from 1"),
            );
            let dt = clock.elapsed();
            c.check(dt.as_secs_f64() < 10.0, format!("n={n} p={p}: took {dt:?}"));
        }
    }
    c.finish();
}

#[test]
fn criterion_3_pinch_is_exact() {
    let mut c = Criterion::new("3 p=q=1 sandwich pinches at 1/3");
    for n in 1..=6usize {
        let pair = radius_sandwich_lq(1.0, fin(1.0), n).unwrap();
        c.check(
            pair.lower.value == 1.0 / 3.0 && pair.upper.value == 1.0 / 3.0,
            format!(
                "n={n}: bounds [{}, {}] not exactly 1/3",
                pair.lower.value, pair.upper.value
            ),
        );
    }
    // the computed interval reaches the pinch from below
    let cfg = RunConfig {
        p: 1.0,
        q: fin(1.0),
        n: 3,
        k_max: 12,
        tol: 1e-6,
        ..Default::default()
    };
    let rep = cmd_radius(&cfg).unwrap();
    c.check(rep.failures == 0, format!("cmd_radius notes: {:?}", rep.notes));
    let lo = rep.records[0].lo.unwrap();
    c.check(lo >= 1.0 / 3.0 - 1e-5, format!("interval lo {lo:.9} < 1/3 - 1e-5"));
    c.finish();
}

#[test]
fn criterion_4_arith_beats_radius_identity() {
    let mut c = Criterion::new("4 arith estimate dominates radius / n^(1/q)");
    let clock = Instant::now();
    let params = BohrParams::new(1.0).unwrap();
    for n in [2usize, 3] {
        for q in [fin(1.0), fin(2.0)] {
            let ball = LqBall::unit(n, q).unwrap();
            let battery = default_battery(&ball, 8, 0).unwrap();
            let iv = radius_solve(&battery, &params, 1e-6).unwrap();
            let est = arith_bohr_estimate(&battery, &params, &ArithConfig::default()).unwrap();
            let floor = iv.lo / (n as f64).powf(q.recip());
            c.check(
                est.value >= floor - 1e-5,
                format!("n={n} q={q}: arith {:.9} < floor {floor:.9} - 1e-5", est.value),
            );
        }
    }
    let dt = clock.elapsed();
    c.check(dt.as_secs_f64() < 60.0, format!("took {dt:?}"));
    c.finish();
}

#[test]
fn criterion_5_estimates_respect_the_sandwich() {
    let mut c = Criterion::new("5 estimates stay inside the certified sandwich");
    // the axis and composition members alone enforce both ceilings, so the
    // grid runs with battery size n + 2 and a light ascent
    let ascent = AscentConfig {
        starts: 4,
        max_iters: 150,
        ..Default::default()
    };
    for p in [1.0, 1.5, 2.0] {
        let mut params = BohrParams::new(p).unwrap();
        params.ascent = ascent.clone();
        for q in [fin(1.0), fin(2.0), fin(4.0)] {
            for n in 1..=6usize {
                let recs = sandwich_bounds(p, q, n).unwrap();
                c.check(
                    recs[0].value <= recs[1].value + 1e-15
                        && recs[2].value <= recs[3].value + 1e-15,
                    format!("p={p} q={q} n={n}: sandwich inverted"),
                );

                let ball = LqBall::unit(n, q).unwrap();
                let battery = random_battery(&ball, n + 2, 6, 0).unwrap();
                let iv = radius_solve(&battery, &params, 1e-4).unwrap();
                c.check(
                    iv.lo <= recs[3].value + 1e-5,
                    format!("p={p} q={q} n={n}: radius {:.9} > upper {:.9}", iv.lo, recs[3].value),
                );
                let est = arith_bohr_estimate(
                    &battery,
                    &params,
                    &ArithConfig {
                        starts: 8,
                        ..Default::default()
                    },
                )
                .unwrap();
                c.check(
                    est.value <= recs[1].value + 1e-5,
                    format!(
                        "p={p} q={q} n={n}: arith {:.9} > upper {:.9}",
                        est.value, recs[1].value
                    ),
                );
            }
        }
    }
    c.finish();
}

fn eval_series(s: &TruncatedSeries, z: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, cf) in s.iter() {
        let mut term = *cf;
        for (&e, &zi) in a.exponents().iter().zip(z) {
            term *= zi.powu(e);
        }
        acc += term;
    }
    acc
}

#[test]
fn criterion_6_oracles_agree() {
    let mut c = Criterion::new("6 independent oracles agree");

    // (a) series vs the rational function it expands, on a grid
    let zeta = Complex64::new(0.7, 0.2);
    let f = halfplane_extremal(zeta, 30).unwrap();
    for i in 0..40 {
        let th = f64::from(i) * std::f64::consts::TAU / 40.0;
        let z = 0.6 * Complex64::new(th.cos(), th.sin());
        let exact = (1.0 + zeta * z) / (1.0 - zeta * z);
        let got = eval_series(f.series(), &[z]);
        c.check(
            (got - exact).norm() <= 1e-4,
            format!("extremal grid: |diff| {:.3e} at theta {th:.3}", (got - exact).norm()),
        );
    }
    let ball = LqBall::unit(2, fin(2.0)).unwrap();
    let w = [0.5, 0.3];
    let g = cayley_linear(&w, &ball, 30).unwrap();
    for i in 0..20 {
        let t = f64::from(i) / 20.0;
        let z = [
            Complex64::new(0.4 * t, 0.2 * t),
            Complex64::new(-0.3 * t, 0.5 * t),
        ];
        let s = w[0] * z[0] + w[1] * z[1];
        let exact = (1.0 + s) / (1.0 - s);
        let got = eval_series(g.series(), &z);
        c.check(
            (got - exact).norm() <= 1e-4,
            format!("cayley grid: |diff| {:.3e} at t {t}", (got - exact).norm()),
        );
    }

    // (b) compositions vs brute-force series expansion
    let base = halfplane_extremal(Complex64::new(0.9, -0.1), 8).unwrap();
    for (q, n) in [(1u32, 2usize), (2, 2), (3, 3)] {
        let composed = power_sum_compose(&base, fin(f64::from(q)), n, 8).unwrap();
        let mut inner = TruncatedSeries::zero(n, 8);
        for i in 0..n {
            inner.set_coeff(MultiIndex::unit(n, i).scale(q), Complex64::new(1.0, 0.0));
        }
        let mut expect = TruncatedSeries::zero(n, 8);
        for (a, cf) in base.series().iter() {
            let k = a.order();
            if k == 0 {
                expect.add_assign(&TruncatedSeries::one(n, 8).scaled(*cf));
            } else {
                expect.add_assign(&inner.power(k, 8).unwrap().scaled(*cf));
            }
        }
        let mut worst = 0.0f64;
        for (a, cf) in composed.series().iter() {
            worst = worst.max((cf - expect.coeff(a)).norm());
        }
        for (a, cf) in expect.iter() {
            worst = worst.max((cf - composed.series().coeff(a)).norm());
        }
        c.check(worst <= 1e-12, format!("power_sum q={q} n={n}: worst {worst:.3e}"));
    }
    {
        let n = 3;
        let composed = mean_compose(&base, n, 8).unwrap();
        let mut inner = TruncatedSeries::zero(n, 8);
        for i in 0..n {
            inner.set_coeff(MultiIndex::unit(n, i), Complex64::new(1.0 / n as f64, 0.0));
        }
        let mut expect = TruncatedSeries::zero(n, 8);
        for (a, cf) in base.series().iter() {
            let k = a.order();
            if k == 0 {
                expect.add_assign(&TruncatedSeries::one(n, 8).scaled(*cf));
            } else {
                expect.add_assign(&inner.power(k, 8).unwrap().scaled(*cf));
            }
        }
        let mut worst = 0.0f64;
        for (a, cf) in composed.series().iter() {
            worst = worst.max((cf - expect.coeff(a)).norm());
        }
        c.check(worst <= 1e-12, format!("mean_compose: worst {worst:.3e}"));
    }

    // (c) multinomial coefficients vs exact integer arithmetic
    fn factorial(k: u32) -> u128 {
        (1..=u128::from(k)).product::<u128>().max(1)
    }
    for alpha in [vec![3, 2], vec![5, 0, 1], vec![4, 4, 4], vec![10, 3, 2, 1]] {
        let a = MultiIndex::new(alpha.clone());
        let expect = alpha
            .iter()
            .fold(factorial(a.order()), |acc, &e| acc / factorial(e));
        c.check(
            a.multinomial() == expect as f64,
            format!("multinomial {alpha:?}: {} vs {expect}", a.multinomial()),
        );
    }

    // (d) monomial suprema vs a dense sweep of the sphere
    for q in [fin(1.0), fin(2.0), fin(3.0)] {
        let alpha = MultiIndex::new(vec![2, 1]);
        let closed = monomial_sup(&alpha, q).unwrap();
        let mut best = 0.0f64;
        let qv = match q {
            Exponent::Finite(v) => v,
            Exponent::Infinity => unreachable!(),
        };
        for i in 0..=2000 {
            let r1 = (f64::from(i) / 2000.0).powf(1.0 / qv);
            let r2 = (1.0 - r1.powf(qv)).max(0.0).powf(1.0 / qv);
            best = best.max(r1 * r1 * r2);
        }
        c.check(
            (closed - best).abs() <= 1e-4,
            format!("monomial sup q={q}: closed {closed:.9} vs sweep {best:.9}"),
        );
    }
    c.finish();
}

#[test]
fn criterion_7_invariant_suites_pass() {
    let mut c = Criterion::new("7 invariant suites all pass");
    let rep = cmd_verify(VerifySuite::All, 0).unwrap();
    c.check(
        rep.failures == 0,
        format!(
            "{} failed checks: {:?}",
            rep.failures,
            rep.records
                .iter()
                .filter(|r| r.bound_kind == "fail")
                .map(|r| r.quantity.clone())
                .collect::<Vec<_>>()
        ),
    );

    // sums start at exactly 1/2 at the origin, for every member and p
    let ball = LqBall::unit(2, fin(2.0)).unwrap();
    let battery = default_battery(&ball, 8, 5).unwrap();
    for p in [1.0, 1.5, 2.0, 3.0] {
        let params = BohrParams::new(p).unwrap();
        for (i, m) in battery.members().iter().enumerate() {
            let v = bohr_sum_vector(m, &params, &[0.0, 0.0]).unwrap().value;
            c.check(v == 0.5, format!("member {i} p={p}: origin value {v}"));
        }
    }
    c.finish();
}

#[test]
fn criterion_8_tables_are_reproducible() {
    let mut c = Criterion::new("8 identical configuration gives identical tables");
    let cfg = RunConfig {
        k_max: 6,
        tol: 1e-5,
        seed: 123,
        ..Default::default()
    };
    let spec = TableSpec {
        p_grid: vec![1.0, 2.0],
        q_grid: vec![fin(2.0), Exponent::Infinity],
        n_grid: vec![2, 3],
        estimates: true,
    };
    let a = cmd_table(&cfg, &spec).unwrap();
    let b = cmd_table(&cfg, &spec).unwrap();
    let (csv_a, csv_b) = (to_csv(&a.records), to_csv(&b.records));
    c.check(csv_a == csv_b, "CSV outputs differ between identical runs".into());
    c.check(
        to_json_string(&a.records).unwrap() == to_json_string(&b.records).unwrap(),
        "JSON outputs differ between identical runs".into(),
    );
    c.check(
        csv_a.lines().count() > 1,
        "table unexpectedly empty".into(),
    );

    // a different seed must still change only the estimate rows
    let cfg2 = RunConfig { seed: 124, ..cfg.clone() };
    let d = cmd_table(&cfg2, &spec).unwrap();
    let bounds_only = |rows: &[bohrlab::report::ResultRecord]| {
        rows.iter()
            .filter(|r| r.bound_kind != "upper_estimate")
            .map(|r| format!("{}={}", r.quantity, r.value))
            .collect::<Vec<_>>()
    };
    c.check(
        bounds_only(&a.records) == bounds_only(&d.records),
        "catalog rows moved with the seed".into(),
    );
    c.finish();
}
