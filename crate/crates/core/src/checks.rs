//! Self-validation suites, shared by the `check` command and the acceptance
//! tests. Each suite returns a [`CheckResult`] instead of panicking so a
//! caller can report every failure in one run.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analytic::{square_barrier_rt, Dispersion};
use crate::barrier::ScatterParams;
use crate::matcher::coefficients;
use crate::oracle::barrier_rt;
use crate::scan::{
    find_resonances, run_scan, Engine, ScanSpec, SweepVariable, DEFAULT_RESONANCE_EPS,
};
use crate::specfun::{
    kummer_m, raw_series, whittaker_m, whittaker_m_deriv, SeriesConfig, WhittakerIndex,
};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CheckResult {
    /// `PASS name: detail (1.23 s)`.
    pub fn line(&self) -> String {
        format!(
            "{} {}: {} ({:.2} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

fn timed(name: &'static str, f: impl FnOnce() -> (bool, String)) -> CheckResult {
    let t0 = Instant::now();
    let (passed, detail) = f();
    CheckResult {
        name,
        passed,
        detail,
        elapsed: t0.elapsed(),
    }
}

pub const UNITARITY_TOL: f64 = 1e-8;
pub const UNITARITY_BUDGET: Duration = Duration::from_secs(120);
pub const EQUIVALENCE_TOL: f64 = 1e-6;
pub const EQUIVALENCE_BUDGET: Duration = Duration::from_secs(60);
pub const SQUARE_LIMIT_TOL: f64 = 1e-3;
pub const RESONANCE_TOL: f64 = 1e-3;

/// Parameter grid of the unitarity sweep.
pub fn unitarity_grid() -> Vec<ScatterParams> {
    let mut out = Vec::new();
    for energy in [1.5, 2.0, 3.0, 5.0] {
        for a in [1e-3, 0.1, 0.5, 1.0] {
            for x0 in [-3.0, -2.0, -1.0, 0.0] {
                for i in 0..=200 {
                    out.push(ScatterParams {
                        energy,
                        height: i as f64 * 0.05,
                        smoothness: a,
                        left_edge: x0,
                    });
                }
            }
        }
    }
    out
}

/// `|R + T - 1| <= 1e-8` for the matcher over [`unitarity_grid`], skipping
/// degenerate points, within two minutes.
pub fn unitarity_sweep() -> CheckResult {
    timed("unitarity sweep", || {
        let t0 = Instant::now();
        let grid = unitarity_grid();
        let results: Vec<_> = grid.par_iter().map(coefficients).collect();
        let elapsed = t0.elapsed();
        let mut worst = 0.0f64;
        let mut degenerate = 0;
        let mut errors = Vec::new();
        for (p, res) in grid.iter().zip(&results) {
            match res {
                Ok(co) => worst = worst.max(co.unitarity_residual.abs()),
                Err(e) if e.is_degenerate() => degenerate += 1,
                Err(e) => errors.push(format!("{p:?}: {e}")),
            }
        }
        let passed = errors.is_empty() && worst <= UNITARITY_TOL && elapsed <= UNITARITY_BUDGET;
        let mut detail = format!(
            "{} points, {degenerate} degenerate skipped, max |R+T-1| = {worst:.2e} (tol {UNITARITY_TOL:e})",
            grid.len()
        );
        if let Some(first) = errors.first() {
            detail += &format!(", {} errors, first {first}", errors.len());
        }
        (passed, detail)
    })
}

/// A random non-degenerate parameter point with `|2 a V0| <= 20`.
pub fn random_params<R: Rng>(rng: &mut R) -> ScatterParams {
    loop {
        let p = ScatterParams {
            energy: rng.gen_range(1.2..5.0),
            height: rng.gen_range(0.0..10.0),
            smoothness: rng.gen_range(0.01..1.0),
            left_edge: rng.gen_range(-3.0..0.0),
        };
        let q2 = (p.energy - p.height) * (p.energy - p.height) - 1.0;
        if q2.abs() > 1e-6 {
            return p;
        }
    }
}

/// `|R_matcher - R_oracle| <= 1e-6` on `n` random points, within one minute.
pub fn oracle_equivalence(n: usize, seed: u64) -> CheckResult {
    timed("matcher-oracle equivalence", || {
        let t0 = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points: Vec<ScatterParams> = (0..n).map(|_| random_params(&mut rng)).collect();
        let deltas: Vec<Result<f64, String>> = points
            .par_iter()
            .map(|p| {
                let m = coefficients(p).map_err(|e| format!("matcher {p:?}: {e}"))?;
                let o = barrier_rt(p).map_err(|e| format!("oracle {p:?}: {e}"))?;
                Ok((m.reflection - o.reflection).abs())
            })
            .collect();
        let elapsed = t0.elapsed();
        let mut worst = 0.0f64;
        let mut errors = Vec::new();
        for d in deltas {
            match d {
                Ok(d) => worst = worst.max(d),
                Err(e) => errors.push(e),
            }
        }
        let passed = errors.is_empty() && worst <= EQUIVALENCE_TOL && elapsed <= EQUIVALENCE_BUDGET;
        let mut detail = format!("{n} points, max |dR| = {worst:.2e} (tol {EQUIVALENCE_TOL:e})");
        if let Some(first) = errors.first() {
            detail += &format!(", {} errors, first {first}", errors.len());
        }
        (passed, detail)
    })
}

/// Matcher at `a = 1e-3` against the closed-form square barrier,
/// `E = 3`, `x0 = -3`, `V0` in `[0, 6]` step 0.05.
pub fn square_limit() -> CheckResult {
    timed("square-barrier limit", || {
        let mut worst = (0.0f64, 0.0);
        let mut compared = 0;
        for i in 0..=120 {
            let v0 = i as f64 * 0.05;
            let p = ScatterParams {
                energy: 3.0,
                height: v0,
                smoothness: 1e-3,
                left_edge: -3.0,
            };
            let (Ok(m), Ok(s)) = (
                coefficients(&p),
                square_barrier_rt(3.0, v0, -3.0, Dispersion::KleinGordon),
            ) else {
                continue;
            };
            compared += 1;
            let d = (m.reflection - s.reflection).abs();
            if d > worst.0 {
                worst = (d, v0);
            }
        }
        (
            worst.0 <= SQUARE_LIMIT_TOL,
            format!(
                "{compared} heights, max |dR| = {:.3e} at V0 = {:.2} (tol {SQUARE_LIMIT_TOL:e})",
                worst.0, worst.1
            ),
        )
    })
}

fn square_spec(engine: Engine) -> ScanSpec {
    ScanSpec {
        variable: SweepVariable::Height,
        start: 0.0,
        stop: 6.0,
        step: 0.01,
        fixed: ScatterParams {
            energy: 3.0,
            height: 0.0,
            smoothness: 1e-3,
            left_edge: -3.0,
        },
        engine,
    }
}

/// First transparency peak of the square barrier,
/// `V0 = E - sqrt(1 + (pi / L)^2)` (KG) and `V0 = E - pi^2 / (2 L^2)`
/// (Schrodinger), recovered from a scan.
pub fn square_resonances() -> CheckResult {
    timed("square-barrier resonances", || {
        let mut passed = true;
        let mut parts = Vec::new();
        let expect = [
            (Engine::AnalyticKg, 3.0 - (1.0 + PI * PI / 9.0).sqrt()),
            (Engine::AnalyticSchrodinger, 3.0 - PI * PI / 18.0),
        ];
        for (engine, want) in expect {
            let found = match run_scan(&square_spec(engine)) {
                Ok(out) => find_resonances(&out.rows, DEFAULT_RESONANCE_EPS),
                Err(e) => {
                    passed = false;
                    parts.push(format!("{engine}: {e}"));
                    continue;
                }
            };
            let nearest = found
                .iter()
                .map(|r| r.position)
                .min_by(|a, b| (a - want).abs().total_cmp(&(b - want).abs()));
            match nearest {
                Some(v) if (v - want).abs() <= RESONANCE_TOL => {
                    parts.push(format!("{engine} peak {v:.5} (expected {want:.5})"))
                }
                other => {
                    passed = false;
                    parts.push(format!("{engine} peak {other:?} (expected {want:.5})"));
                }
            }
        }
        (passed, parts.join(", "))
    })
}

fn smooth_spec(left_edge: f64) -> ScanSpec {
    ScanSpec {
        variable: SweepVariable::Height,
        start: 0.0,
        stop: 10.0,
        step: 0.01,
        fixed: ScatterParams {
            energy: 2.0,
            height: 0.0,
            smoothness: 0.5,
            left_edge,
        },
        engine: Engine::Matcher,
    }
}

fn resonance_count(spec: &ScanSpec) -> Result<Vec<f64>, String> {
    let out = run_scan(spec).map_err(|e| e.to_string())?;
    Ok(find_resonances(&out.rows, DEFAULT_RESONANCE_EPS)
        .iter()
        .map(|r| r.position)
        .collect())
}

fn fmt_positions(v: &[f64]) -> String {
    let inner: Vec<String> = v.iter().map(|x| format!("{x:.3}")).collect();
    format!("[{}]", inner.join(", "))
}

/// Smooth barrier at `E = 2`, `a = 0.5`: resonances exist for `x0 = -1` and
/// `x0 = -2`, and the wider barrier has at least as many.
pub fn width_resonance_counts() -> CheckResult {
    timed("resonance count vs width", || {
        match (
            resonance_count(&smooth_spec(-1.0)),
            resonance_count(&smooth_spec(-2.0)),
        ) {
            (Ok(narrow), Ok(wide)) => (
                !narrow.is_empty() && wide.len() >= narrow.len(),
                format!(
                    "x0=-1: {} {}, x0=-2: {} {}",
                    narrow.len(),
                    fmt_positions(&narrow),
                    wide.len(),
                    fmt_positions(&wide)
                ),
            ),
            (Err(e), _) | (_, Err(e)) => (false, e),
        }
    })
}

/// Square barrier at `E = 3`, `x0 = -3`: Klein-Gordon shows strictly more
/// resonances than Schrodinger on `V0` in `[0, 6]`.
pub fn dispersion_resonance_counts() -> CheckResult {
    timed("resonance count KG vs Schrodinger", || {
        match (
            resonance_count(&square_spec(Engine::AnalyticKg)),
            resonance_count(&square_spec(Engine::AnalyticSchrodinger)),
        ) {
            (Ok(kg), Ok(schr)) => (
                kg.len() > schr.len(),
                format!(
                    "KG: {} {}, Schrodinger: {} {}",
                    kg.len(),
                    fmt_positions(&kg),
                    schr.len(),
                    fmt_positions(&schr)
                ),
            ),
            (Err(e), _) | (_, Err(e)) => (false, e),
        }
    })
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn random_complex<R: Rng>(
    rng: &mut R,
    re: std::ops::Range<f64>,
    im: std::ops::Range<f64>,
) -> Complex64 {
    Complex64::new(rng.gen_range(re), rng.gen_range(im))
}

/// Closed forms, Kummer transformation, derivative and ODE residual of the
/// special functions.
pub fn special_functions(seed: u64) -> CheckResult {
    timed("special functions", || {
        let mut failures: Vec<String> = Vec::new();
        let mut check = |ok: bool, what: String| {
            if !ok {
                failures.push(what);
            }
        };
        let c = Complex64::new;
        let one = c(1.0, 0.0);

        match kummer_m(one, c(2.0, 0.0), one) {
            Ok(v) => check(
                rel(v, c(1f64.exp() - 1.0, 0.0)) < 1e-14,
                format!("M(1,2,1) = {v}"),
            ),
            Err(e) => check(false, format!("M(1,2,1): {e}")),
        }
        let half = WhittakerIndex::new(c(0.0, 0.0), c(0.5, 0.0));
        let two = c(2.0, 0.0);
        match (whittaker_m(half, two), whittaker_m_deriv(half, two)) {
            (Ok(v), Ok(d)) => {
                check(
                    rel(v, c(2.0 * 1f64.sinh(), 0.0)) < 1e-14,
                    format!("M_(0,1/2)(2) = {v}"),
                );
                check(
                    rel(d, c(1f64.cosh(), 0.0)) < 1e-14,
                    format!("M'_(0,1/2)(2) = {d}"),
                );
            }
            (Err(e), _) | (_, Err(e)) => check(false, format!("M_(0,1/2)(2): {e}")),
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = SeriesConfig::default();
        for _ in 0..200 {
            let a = random_complex(&mut rng, -3.0..3.0, -3.0..3.0);
            let b = random_complex(&mut rng, 0.5..4.0, -3.0..3.0);
            let z = Complex64::from_polar(rng.gen_range(0.0..10.0), rng.gen_range(-3.1..3.1));
            match (raw_series(a, b, z, &cfg), raw_series(b - a, b, -z, &cfg)) {
                (Ok(direct), Ok(transformed)) => {
                    let rhs = z.exp() * transformed.value;
                    // rounding floor of whichever sum cancels worse
                    let floor = 1e-15 * direct.max_term.max(z.exp().norm() * transformed.max_term);
                    let err = (direct.value - rhs).norm();
                    check(
                        err <= 1e-10 * direct.value.norm() + floor,
                        format!("Kummer transformation a={a} b={b} z={z}: err {err:e}"),
                    );
                }
                (Err(e), _) | (_, Err(e)) => check(false, format!("series a={a} b={b} z={z}: {e}")),
            }
        }

        let h = 1e-6;
        for _ in 0..20 {
            let idx = WhittakerIndex::new(
                random_complex(&mut rng, -1.0..1.0, -2.0..2.0),
                random_complex(&mut rng, -0.2..1.0, -2.0..2.0),
            );
            let z = Complex64::from_polar(rng.gen_range(0.5..8.0), rng.gen_range(-2.5..2.5));
            let res = (|| {
                let d = whittaker_m_deriv(idx, z)?;
                let fd = (whittaker_m(idx, z + h)? - whittaker_m(idx, z - h)?) / (2.0 * h);
                Ok::<_, crate::Error>(rel(fd, d))
            })();
            match res {
                Ok(r) => check(r < 1e-6, format!("derivative {idx:?} z={z}: rel {r:e}")),
                Err(e) => check(false, format!("derivative {idx:?} z={z}: {e}")),
            }
        }

        let h = 1e-5;
        for _ in 0..50 {
            let idx = WhittakerIndex::new(
                random_complex(&mut rng, -1.0..1.0, -2.0..2.0),
                random_complex(&mut rng, 0.0..1.0, -2.0..2.0),
            );
            let z = Complex64::from_polar(rng.gen_range(0.5..6.0), rng.gen_range(-2.5..2.5));
            let res = (|| {
                let f = whittaker_m(idx, z)?;
                let f2 =
                    (whittaker_m_deriv(idx, z + h)? - whittaker_m_deriv(idx, z - h)?) / (2.0 * h);
                let q = -0.25 + idx.kappa / z + (0.25 - idx.mu * idx.mu) / (z * z);
                Ok::<_, crate::Error>((f2 + q * f).norm() / f.norm().max(1.0))
            })();
            match res {
                Ok(r) => check(r <= 1e-6, format!("ODE residual {idx:?} z={z}: {r:e}")),
                Err(e) => check(false, format!("ODE residual {idx:?} z={z}: {e}")),
            }
        }

        if failures.is_empty() {
            (
                true,
                "closed forms, 200 Kummer transformations, 20 derivatives, 50 ODE residuals"
                    .to_string(),
            )
        } else {
            (
                false,
                format!("{} failures, first {}", failures.len(), failures[0]),
            )
        }
    })
}

/// Every suite, in a fixed order.
pub fn run_all() -> Vec<CheckResult> {
    vec![
        special_functions(11),
        unitarity_sweep(),
        oracle_equivalence(50, 2024),
        square_limit(),
        square_resonances(),
        width_resonance_counts(),
        dispersion_resonance_counts(),
    ]
}
