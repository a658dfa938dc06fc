//! Parameter sweeps over one of `E`, `V0`, `a`, `x0`, with resonance
//! detection and flat-file input/output.

mod config;
mod csv;

pub use config::{parse_config, read_config};
pub use csv::{emit_csv, format_sig, parse_csv, read_csv, write_csv, CSV_HEADER};

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::analytic::{square_barrier_rt, Dispersion};
use crate::barrier::ScatterParams;
use crate::error::{Error, Result};
use crate::matcher::{self, Coefficients};
use crate::oracle;

/// Default tolerance `eps` for a maximum to count as a resonance (`T >= 1 - eps`).
pub const DEFAULT_RESONANCE_EPS: f64 = 1e-3;

/// Fraction of failed grid points above which a sweep is rejected.
pub const MAX_FAILURE_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepVariable {
    Energy,
    Height,
    Smoothness,
    LeftEdge,
}

impl SweepVariable {
    pub fn apply(self, base: &ScatterParams, value: f64) -> ScatterParams {
        let mut p = *base;
        match self {
            SweepVariable::Energy => p.energy = value,
            SweepVariable::Height => p.height = value,
            SweepVariable::Smoothness => p.smoothness = value,
            SweepVariable::LeftEdge => p.left_edge = value,
        }
        p
    }

    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::Energy => "E",
            SweepVariable::Height => "V0",
            SweepVariable::Smoothness => "a",
            SweepVariable::LeftEdge => "x0",
        }
    }
}

impl FromStr for SweepVariable {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "E" | "energy" => Ok(SweepVariable::Energy),
            "V0" | "height" => Ok(SweepVariable::Height),
            "a" | "smoothness" => Ok(SweepVariable::Smoothness),
            "x0" | "left_edge" => Ok(SweepVariable::LeftEdge),
            _ => Err(format!(
                "unknown sweep variable `{s}` (expected E, V0, a or x0)"
            )),
        }
    }
}

/// Method used to evaluate each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    Matcher,
    Oracle,
    AnalyticKg,
    AnalyticSchrodinger,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Matcher => "matcher",
            Engine::Oracle => "oracle",
            Engine::AnalyticKg => "analytic_kg",
            Engine::AnalyticSchrodinger => "analytic_schrodinger",
        }
    }

    /// Evaluates one parameter point. The analytic engines ignore `a`.
    pub fn evaluate(self, p: &ScatterParams) -> Result<Coefficients> {
        match self {
            Engine::Matcher => matcher::coefficients(p),
            Engine::Oracle => oracle::barrier_rt(p),
            Engine::AnalyticKg => {
                square_barrier_rt(p.energy, p.height, p.left_edge, Dispersion::KleinGordon)
            }
            Engine::AnalyticSchrodinger => {
                square_barrier_rt(p.energy, p.height, p.left_edge, Dispersion::Schrodinger)
            }
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "matcher" => Ok(Engine::Matcher),
            "oracle" => Ok(Engine::Oracle),
            "analytic_kg" => Ok(Engine::AnalyticKg),
            "analytic_schrodinger" => Ok(Engine::AnalyticSchrodinger),
            _ => Err(format!("unknown engine `{s}`")),
        }
    }
}

/// A one-dimensional sweep. `fixed` holds the non-swept parameters; its swept
/// field is ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
    pub fixed: ScatterParams,
    pub engine: Engine,
}

impl ScanSpec {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.start, self.stop, self.step]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.start > self.stop || !(self.step > 0.0) {
            return Err(Error::InvalidParams(format!(
                "bad sweep range start={} stop={} step={}",
                self.start, self.stop, self.step
            )));
        }
        let first = self.variable.apply(&self.fixed, self.start);
        match self.engine {
            Engine::AnalyticSchrodinger => {
                if !(first.energy > 0.0)
                    || !first.height.is_finite()
                    || !first.left_edge.is_finite()
                {
                    return Err(Error::InvalidParams(format!(
                        "bad fixed parameters {first:?}"
                    )));
                }
                Ok(())
            }
            _ => first.validate(),
        }
    }

    /// Inclusive grid `start, start + step, ..., <= stop`.
    pub fn grid(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..n).map(|i| self.start + i as f64 * self.step).collect()
    }

    pub fn params_at(&self, value: f64) -> ScatterParams {
        self.variable.apply(&self.fixed, value)
    }

    pub fn with_engine(self, engine: Engine) -> Self {
        ScanSpec { engine, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub swept_value: f64,
    pub reflection: f64,
    pub transmission: f64,
    pub unitarity_residual: f64,
    pub engine: Engine,
}

/// A grid point with no row, and why.
#[derive(Debug, Clone, PartialEq)]
pub struct SkippedPoint {
    pub swept_value: f64,
    pub reason: String,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScanOutcome {
    pub rows: Vec<ScanRow>,
    pub skipped: Vec<SkippedPoint>,
}

impl ScanOutcome {
    /// Non-degenerate point failures.
    pub fn failures(&self) -> usize {
        self.skipped.iter().filter(|s| !s.degenerate).count()
    }
}

/// Evaluates every grid point (in parallel) and returns rows in ascending
/// order of the swept value.
///
/// Degenerate points are skipped. Any other point error is recorded as a
/// warning; the sweep fails only when more than 10% of the points error.
pub fn run_scan(spec: &ScanSpec) -> Result<ScanOutcome> {
    spec.validate()?;
    let grid = spec.grid();
    let results: Vec<(f64, Result<Coefficients>)> = grid
        .par_iter()
        .map(|&v| (v, spec.engine.evaluate(&spec.params_at(v))))
        .collect();

    let mut outcome = ScanOutcome::default();
    for (v, res) in results {
        match res {
            Ok(co) => outcome.rows.push(ScanRow {
                swept_value: v,
                reflection: co.reflection,
                transmission: co.transmission,
                unitarity_residual: co.unitarity_residual,
                engine: spec.engine,
            }),
            Err(e) => outcome.skipped.push(SkippedPoint {
                swept_value: v,
                degenerate: e.is_degenerate(),
                reason: e.to_string(),
            }),
        }
    }
    let failed = outcome.failures();
    if failed as f64 > MAX_FAILURE_FRACTION * grid.len() as f64 {
        return Err(Error::TooManyFailures {
            failed,
            total: grid.len(),
        });
    }
    Ok(outcome)
}

/// Matcher and oracle over the same grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheck {
    pub matcher: ScanOutcome,
    pub oracle: ScanOutcome,
    /// Largest `|R_matcher - R_oracle|` over points both engines evaluated.
    pub max_delta_r: f64,
}

pub fn cross_check(spec: &ScanSpec) -> Result<CrossCheck> {
    let matcher = run_scan(&spec.with_engine(Engine::Matcher))?;
    let oracle = run_scan(&spec.with_engine(Engine::Oracle))?;
    let mut max_delta_r = 0.0f64;
    for m in &matcher.rows {
        if let Some(o) = oracle.rows.iter().find(|o| o.swept_value == m.swept_value) {
            max_delta_r = max_delta_r.max((m.reflection - o.reflection).abs());
        }
    }
    Ok(CrossCheck {
        matcher,
        oracle,
        max_delta_r,
    })
}

/// A transmission maximum with `T >= 1 - eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub position: f64,
    pub peak: f64,
}

/// Interior local maxima of `T` reaching `1 - eps`, refined by a parabola
/// through the maximum and its two neighbours. Rows must be sorted.
pub fn find_resonances(rows: &[ScanRow], eps: f64) -> Vec<Resonance> {
    let mut found = Vec::new();
    for w in rows.windows(3) {
        let (l, c, r) = (&w[0], &w[1], &w[2]);
        let (tl, tc, tr) = (l.transmission, c.transmission, r.transmission);
        if !(tc >= tl && tc > tr && tc >= 1.0 - eps) {
            continue;
        }
        found.push(parabolic_peak(
            (l.swept_value, tl),
            (c.swept_value, tc),
            (r.swept_value, tr),
        ));
    }
    found
}

fn parabolic_peak(l: (f64, f64), c: (f64, f64), r: (f64, f64)) -> Resonance {
    // Newton form: T(x) = tc + d1 (x - xc) + d2 (x - xc)(x - xl)
    let d_left = (c.1 - l.1) / (c.0 - l.0);
    let d_right = (r.1 - c.1) / (r.0 - c.0);
    let curvature = (d_right - d_left) / (r.0 - l.0);
    if !(curvature < 0.0) {
        return Resonance {
            position: c.0,
            peak: c.1,
        };
    }
    // vertex of the parabola through the three points
    let position = 0.5 * (l.0 + c.0) - d_left / (2.0 * curvature);
    let position = position.clamp(l.0, r.0);
    let peak = c.1 + d_left * (position - c.0) + curvature * (position - c.0) * (position - l.0);
    Resonance { position, peak }
}
