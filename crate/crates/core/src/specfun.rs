//! Confluent hypergeometric (Kummer) and Whittaker M functions for complex
//! parameters and arguments.
//!
//! Only the power series is implemented. Arguments are capped at
//! `SeriesConfig::z_max`; the barrier problem never needs more than
//! `|z| = 2 a V0`, which stays around 20 at desk scale. When the direct series
//! cancels badly the Kummer-transformed series `e^z M(b - a, b, -z)` is summed
//! as well and the better conditioned of the two is used. If even that one
//! loses more than three digits it is re-summed in double-double arithmetic.

use num_complex::Complex64;

use crate::dd::ComplexDd;
use crate::error::{Error, Result};

/// Truncation and range settings for the Kummer series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    /// Relative size of the running term at which summation stops.
    pub tol: f64,
    pub max_terms: usize,
    /// Largest admissible `|z|`.
    pub z_max: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            tol: 1e-15,
            max_terms: 500,
            z_max: 50.0,
        }
    }
}

/// Cancellation ratio (largest term over result) above which the
/// transformed series is tried as well.
const CANCELLATION_SWITCH: f64 = 1e3;

/// Distance from a non-positive integer at which `b` counts as a pole.
const POLE_TOL: f64 = 1e-12;

/// The index pair `(kappa, mu)` of a Whittaker function `M_{kappa,mu}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WhittakerIndex {
    pub kappa: Complex64,
    pub mu: Complex64,
}

impl WhittakerIndex {
    pub fn new(kappa: Complex64, mu: Complex64) -> Self {
        WhittakerIndex { kappa, mu }
    }

    /// Same `kappa`, opposite `mu`: the second independent solution.
    pub fn with_negated_mu(self) -> Self {
        WhittakerIndex {
            kappa: self.kappa,
            mu: -self.mu,
        }
    }

    /// Kummer parameters `(1/2 + mu - kappa, 1 + 2 mu)`.
    pub fn kummer_params(&self) -> (Complex64, Complex64) {
        (0.5 + self.mu - self.kappa, 1.0 + 2.0 * self.mu)
    }
}

/// How to treat arguments on the negative real axis, where `z^{1/2 + mu}`
/// is discontinuous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    /// Refuse arguments on the cut.
    #[default]
    Reject,
    /// Use `arg z = +pi` on the cut.
    Principal,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesSum {
    pub value: Complex64,
    /// Largest `|term|` encountered, a proxy for the rounding error.
    pub max_term: f64,
}

impl SeriesSum {
    fn cancellation(&self) -> f64 {
        let v = self.value.norm();
        if v == 0.0 {
            f64::INFINITY
        } else {
            self.max_term / v
        }
    }
}

fn check_finite(label: &str, z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{label} is not finite: {z}")))
    }
}

fn near_nonpositive_integer(b: Complex64) -> bool {
    b.im.abs() < POLE_TOL && b.re < POLE_TOL && (b.re - b.re.round()).abs() < POLE_TOL
}

/// `e^z`, with `sin` and `cos` evaluated by separate calls. Optimised builds
/// otherwise fuse them into `sincos`, which can round differently, and
/// output would depend on the build profile.
pub(crate) fn cexp(z: Complex64) -> Complex64 {
    let r = z.re.exp();
    let theta = std::hint::black_box(z.im);
    Complex64::new(r * z.im.cos(), r * theta.sin())
}

/// Plain term-by-term summation of `sum (a)_n z^n / ((b)_n n!)`.
pub(crate) fn raw_series(
    a: Complex64,
    b: Complex64,
    z: Complex64,
    cfg: &SeriesConfig,
) -> Result<SeriesSum> {
    let zabs = z.norm();
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut max_term = 1.0_f64;
    for n in 0..cfg.max_terms {
        let nf = n as f64;
        term *= (a + nf) * z / ((b + nf) * (nf + 1.0));
        sum += term;
        let t = term.norm();
        max_term = max_term.max(t);
        // a is a non-positive integer: the series terminated
        if t == 0.0 {
            return Ok(SeriesSum {
                value: sum,
                max_term,
            });
        }
        // past the peak the terms decay at least geometrically
        if nf + 1.0 > zabs && t <= cfg.tol * sum.norm() {
            return Ok(SeriesSum {
                value: sum,
                max_term,
            });
        }
    }
    Err(Error::Convergence {
        terms: cfg.max_terms,
        last: term.norm() / sum.norm(),
    })
}

/// Same summation as [`raw_series`] carried out in double-double precision.
fn raw_series_extended(
    a: Complex64,
    b: Complex64,
    z: Complex64,
    cfg: &SeriesConfig,
) -> Result<Complex64> {
    let zabs = z.norm();
    let (a, b, zd) = (ComplexDd::from(a), ComplexDd::from(b), ComplexDd::from(z));
    let mut term = ComplexDd::from(Complex64::new(1.0, 0.0));
    let mut sum = term;
    for n in 0..cfg.max_terms {
        let nf = n as f64;
        term = term * (a + nf) * zd / ((b + nf) * (nf + 1.0));
        sum = sum + term;
        let t = term.approx().norm();
        // the double-double sum resolves terms far below the f64 tolerance
        if t == 0.0 || (nf + 1.0 > zabs && t <= cfg.tol * 1e-8 * sum.approx().norm()) {
            return Ok(sum.approx());
        }
    }
    Err(Error::Convergence {
        terms: cfg.max_terms,
        last: term.approx().norm() / sum.approx().norm(),
    })
}

/// Kummer's function `M(a, b, z) = 1F1(a; b; z)` with default settings.
pub fn kummer_m(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    kummer_m_with(a, b, z, &SeriesConfig::default())
}

pub fn kummer_m_with(
    a: Complex64,
    b: Complex64,
    z: Complex64,
    cfg: &SeriesConfig,
) -> Result<Complex64> {
    check_finite("a", a)?;
    check_finite("b", b)?;
    check_finite("z", z)?;
    if near_nonpositive_integer(b) {
        return Err(Error::Domain(format!("b = {b} is a non-positive integer")));
    }
    if z.norm() > cfg.z_max {
        return Err(Error::Domain(format!(
            "|z| = {} exceeds the series range {}",
            z.norm(),
            cfg.z_max
        )));
    }

    let direct = raw_series(a, b, z, cfg);
    if let Ok(d) = &direct {
        if d.cancellation() <= CANCELLATION_SWITCH {
            return Ok(d.value);
        }
    }
    let transformed = raw_series(b - a, b, -z, cfg).map(|s| SeriesSum {
        value: cexp(z) * s.value,
        max_term: z.re.exp() * s.max_term,
    });
    let use_transform = match (&direct, &transformed) {
        (Ok(d), Ok(t)) => t.cancellation() < d.cancellation(),
        (Ok(_), Err(_)) => false,
        (Err(_), Ok(_)) => true,
        (Err(_), Err(_)) => return direct.map(|d| d.value),
    };
    let best = if use_transform { transformed } else { direct }?;
    if best.cancellation() <= CANCELLATION_SWITCH {
        return Ok(best.value);
    }
    if use_transform {
        raw_series_extended(b - a, b, -z, cfg).map(|v| cexp(z) * v)
    } else {
        raw_series_extended(a, b, z, cfg)
    }
}

/// `ln z` on the principal branch, with the cut convention applied.
fn branch_log(z: Complex64, branch: Branch) -> Result<Complex64> {
    check_finite("z", z)?;
    if z.norm() == 0.0 {
        return Err(Error::Domain(
            "Whittaker M is not evaluated at z = 0".into(),
        ));
    }
    if z.im == 0.0 && z.re < 0.0 {
        return match branch {
            Branch::Reject => Err(Error::Branch(format!(
                "z = {z} lies on the negative real axis"
            ))),
            Branch::Principal => Ok(Complex64::new((-z.re).ln(), std::f64::consts::PI)),
        };
    }
    Ok(z.ln())
}

/// `M_{kappa,mu}(z)` and its `z`-derivative, sharing one prefactor.
pub fn whittaker_m_pair(
    idx: WhittakerIndex,
    z: Complex64,
    branch: Branch,
) -> Result<(Complex64, Complex64)> {
    whittaker_m_pair_with(idx, z, branch, &SeriesConfig::default())
}

pub fn whittaker_m_pair_with(
    idx: WhittakerIndex,
    z: Complex64,
    branch: Branch,
    cfg: &SeriesConfig,
) -> Result<(Complex64, Complex64)> {
    let (a, b) = idx.kummer_params();
    if near_nonpositive_integer(b) {
        return Err(Error::Domain(format!(
            "1 + 2 mu = {b} is a non-positive integer"
        )));
    }
    let log_z = branch_log(z, branch)?;
    let half_plus_mu = 0.5 + idx.mu;
    let prefactor = cexp(-0.5 * z + half_plus_mu * log_z);

    let m = kummer_m_with(a, b, z, cfg)?;
    // dM(a, b, z)/dz = (a / b) M(a + 1, b + 1, z)
    let dm = (a / b) * kummer_m_with(a + 1.0, b + 1.0, z, cfg)?;

    let value = prefactor * m;
    let deriv = value * (half_plus_mu / z - 0.5) + prefactor * dm;
    Ok((value, deriv))
}

/// Whittaker's `M_{kappa,mu}(z) = e^{-z/2} z^{1/2+mu} M(1/2+mu-kappa, 1+2mu, z)`
/// on the principal branch. Arguments on the negative real axis are
/// rejected; use [`whittaker_m_pair`] with [`Branch::Principal`] to opt in.
pub fn whittaker_m(idx: WhittakerIndex, z: Complex64) -> Result<Complex64> {
    whittaker_m_pair(idx, z, Branch::Reject).map(|(v, _)| v)
}

/// Analytic `d/dz M_{kappa,mu}(z)`.
pub fn whittaker_m_deriv(idx: WhittakerIndex, z: Complex64) -> Result<Complex64> {
    whittaker_m_pair(idx, z, Branch::Reject).map(|(_, d)| d)
}
