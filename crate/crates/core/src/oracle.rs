//! Reflection and transmission by direct integration of
//! `phi'' = -[(E - V(x))^2 - 1] phi` for an arbitrary potential.
//!
//! A pure transmitted wave `e^{ikx}` is imposed at the right end of the
//! window and integrated backwards with fixed-step classical RK4. At the left
//! end the solution is projected onto `e^{+-ikx}`. None of the special
//! function machinery is used, which makes this the independent reference
//! for the matcher.

use num_complex::Complex64;

use crate::barrier::ScatterParams;
use crate::error::{Error, Result};
use crate::matcher::Coefficients;
use crate::specfun::cexp;

/// Largest `|R + T - 1|` accepted from a single integration.
pub const UNITARITY_TOL: f64 = 1e-6;

/// A real potential with optional points of non-smoothness.
pub trait Potential: Sync {
    fn value(&self, x: f64) -> f64;

    /// Points where `V` or its derivatives jump; the step grid lands on them.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

impl<F> Potential for F
where
    F: Fn(f64) -> f64 + Sync,
{
    fn value(&self, x: f64) -> f64 {
        self(x)
    }
}

impl Potential for ScatterParams {
    fn value(&self, x: f64) -> f64 {
        self.potential(x)
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![self.left_edge, 0.0]
    }
}

/// Rectangular barrier of height `height` on `[left_edge, 0]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareBarrier {
    pub height: f64,
    pub left_edge: f64,
}

impl Potential for SquareBarrier {
    fn value(&self, x: f64) -> f64 {
        if (self.left_edge..=0.0).contains(&x) {
            self.height
        } else {
            0.0
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![self.left_edge, 0.0]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub x_min: f64,
    pub x_max: f64,
    /// Upper bound on the RK4 step; segments are split evenly.
    pub step: f64,
    /// Relative size of the potential tail left outside the window.
    pub tail_tol: f64,
}

impl OracleConfig {
    pub const DEFAULT_STEP: f64 = 1e-4;
    pub const DEFAULT_TAIL_TOL: f64 = 1e-10;

    /// Window sized so the exponential tails have decayed to
    /// `tail_tol * V0` at both ends.
    pub fn for_barrier(p: &ScatterParams) -> Self {
        Self::for_barrier_with(p, Self::DEFAULT_STEP, Self::DEFAULT_TAIL_TOL)
    }

    pub fn for_barrier_with(p: &ScatterParams, step: f64, tail_tol: f64) -> Self {
        let reach = p.smoothness * (1.0 / tail_tol).ln();
        // resolve the shoulders when they are steeper than the default grid
        let step = step.min(p.smoothness / 50.0);
        OracleConfig {
            x_min: p.left_edge - reach,
            x_max: reach,
            step,
            tail_tol,
        }
    }

    pub fn with_step(self, step: f64) -> Self {
        OracleConfig { step, ..self }
    }

    fn validate(&self) -> Result<()> {
        if !(self.x_min < self.x_max) || !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::InvalidParams(format!("bad oracle window {self:?}")));
        }
        Ok(())
    }
}

type State = (Complex64, Complex64);

/// Integrates from `cfg.x_max` down to `cfg.x_min` and returns `(A_inc, A_ref)`
/// for unit transmitted amplitude.
fn shoot<V: Potential + ?Sized>(
    potential: &V,
    energy: f64,
    cfg: &OracleConfig,
) -> (Complex64, Complex64) {
    let k = (energy * energy - 1.0).sqrt();
    let ik = Complex64::new(0.0, k);

    let mut joints: Vec<f64> = potential
        .breakpoints()
        .into_iter()
        .filter(|&b| b > cfg.x_min && b < cfg.x_max)
        .collect();
    joints.push(cfg.x_min);
    joints.push(cfg.x_max);
    joints.sort_by(|a, b| b.total_cmp(a));
    joints.dedup();

    let start = cexp(ik * cfg.x_max);
    let mut state: State = (start, ik * start);

    for seg in joints.windows(2) {
        let (hi, lo) = (seg[0], seg[1]);
        let n = ((hi - lo) / cfg.step).ceil().max(1.0) as usize;
        let h = -(hi - lo) / n as f64;
        // sample strictly inside the segment so jumps are seen from the right side
        let guard = 1e-12 * (hi - lo);
        let q = |x: f64| {
            let v = potential.value(x.clamp(lo + guard, hi - guard));
            (energy - v) * (energy - v) - 1.0
        };
        let deriv = |x: f64, (phi, dphi): State| -> State { (dphi, -q(x) * phi) };
        let mut x = hi;
        for i in 0..n {
            let k1 = deriv(x, state);
            let k2 = deriv(
                x + 0.5 * h,
                (state.0 + 0.5 * h * k1.0, state.1 + 0.5 * h * k1.1),
            );
            let k3 = deriv(
                x + 0.5 * h,
                (state.0 + 0.5 * h * k2.0, state.1 + 0.5 * h * k2.1),
            );
            let k4 = deriv(x + h, (state.0 + h * k3.0, state.1 + h * k3.1));
            state.0 += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            state.1 += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
            x = hi + (i + 1) as f64 * h;
        }
    }

    let x = cfg.x_min;
    let (phi, dphi) = state;
    let inc = 0.5 * (phi + dphi / ik) * cexp(-ik * x);
    let refl = 0.5 * (phi - dphi / ik) * cexp(ik * x);
    (inc, refl)
}

fn raw_rt<V: Potential + ?Sized>(potential: &V, energy: f64, cfg: &OracleConfig) -> Coefficients {
    let (inc, refl) = shoot(potential, energy, cfg);
    let norm = inc.norm_sqr();
    Coefficients::new(refl.norm_sqr() / norm, 1.0 / norm)
}

/// Reflection and transmission of `potential` at `energy`.
///
/// Fails with [`Error::Step`] when the result violates unitarity by more than
/// [`UNITARITY_TOL`], which signals an under-resolved grid.
pub fn integrate_rt<V: Potential + ?Sized>(
    potential: &V,
    energy: f64,
    cfg: &OracleConfig,
) -> Result<Coefficients> {
    cfg.validate()?;
    if !(energy > 1.0) {
        return Err(Error::InvalidParams(format!(
            "E = {energy} is not propagating"
        )));
    }
    let co = raw_rt(potential, energy, cfg);
    if !(co.unitarity_residual.abs() <= UNITARITY_TOL) {
        return Err(Error::Step {
            residual: co.unitarity_residual,
            step: cfg.step,
        });
    }
    Ok(co)
}

/// `|R(step) - R(step / 2)|`.
pub fn convergence_check<V: Potential + ?Sized>(
    potential: &V,
    energy: f64,
    cfg: &OracleConfig,
) -> f64 {
    let coarse = raw_rt(potential, energy, cfg);
    let fine = raw_rt(potential, energy, &cfg.with_step(cfg.step / 2.0));
    (coarse.reflection - fine.reflection).abs()
}

/// Oracle result for the smooth barrier with the default window and step.
pub fn barrier_rt(p: &ScatterParams) -> Result<Coefficients> {
    p.validate()?;
    integrate_rt(p, p.energy, &OracleConfig::for_barrier(p))
}
