//! The smooth barrier: exponential rise for `x < x0`, flat top of height `V0`
//! on `[x0, 0]`, exponential fall for `x > 0`, all in units `hbar = c = m = 1`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::WhittakerIndex;

/// `|(E - V0)^2 - 1|` below which the flat-top solution degenerates.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Physical inputs of one scattering problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterParams {
    /// Total energy, in units of the rest energy. Must exceed 1.
    pub energy: f64,
    /// Barrier height `V0 >= 0`.
    pub height: f64,
    /// Smoothness length `a > 0` of the exponential shoulders.
    pub smoothness: f64,
    /// Left edge `x0 <= 0` of the flat top; the top spans `[x0, 0]`.
    pub left_edge: f64,
}

impl ScatterParams {
    pub fn new(energy: f64, height: f64, smoothness: f64, left_edge: f64) -> Result<Self> {
        let p = ScatterParams {
            energy,
            height,
            smoothness,
            left_edge,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let all_finite = [self.energy, self.height, self.smoothness, self.left_edge]
            .iter()
            .all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::InvalidParams(format!(
                "non-finite input in {self:?}"
            )));
        }
        if self.energy <= 1.0 {
            return Err(Error::InvalidParams(format!(
                "E = {} is not a propagating state (need E > 1)",
                self.energy
            )));
        }
        if self.height < 0.0 {
            return Err(Error::InvalidParams(format!("V0 = {} < 0", self.height)));
        }
        if self.smoothness <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "a = {} <= 0",
                self.smoothness
            )));
        }
        if self.left_edge > 0.0 {
            return Err(Error::InvalidParams(format!("x0 = {} > 0", self.left_edge)));
        }
        Ok(())
    }

    /// Potential energy at `x`.
    pub fn potential(&self, x: f64) -> f64 {
        let (v0, a, x0) = (self.height, self.smoothness, self.left_edge);
        if x < x0 {
            v0 * ((x - x0) / a).exp()
        } else if x <= 0.0 {
            v0
        } else {
            v0 * (-x / a).exp()
        }
    }

    /// Argument scale `2 i a V0` of both Whittaker region solutions.
    pub fn argument_scale(&self) -> Complex64 {
        Complex64::new(0.0, 2.0 * self.smoothness * self.height)
    }
}

pub fn potential_value(x: f64, p: &ScatterParams) -> f64 {
    p.potential(x)
}

/// Exterior and flat-top wavenumbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    /// `sqrt(E^2 - 1)`, always positive.
    pub k: f64,
    /// `sqrt((E - V0)^2 - 1)`, either positive real or positive imaginary.
    pub q: Complex64,
}

pub fn kinematics(p: &ScatterParams) -> Result<Kinematics> {
    let k = (p.energy * p.energy - 1.0).sqrt();
    let q2 = (p.energy - p.height) * (p.energy - p.height) - 1.0;
    if q2.abs() < DEGENERACY_TOL {
        return Err(Error::Degenerate(format!(
            "(E - V0)^2 - 1 = {q2:e}: flat-top wavenumber vanishes at E = {}, V0 = {}",
            p.energy, p.height
        )));
    }
    let q = if q2 > 0.0 {
        Complex64::new(q2.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-q2).sqrt())
    };
    Ok(Kinematics { k, q })
}

/// `kappa = i a E`, `mu = i a sqrt(E^2 - 1)`.
pub fn whittaker_index(p: &ScatterParams) -> WhittakerIndex {
    let k = (p.energy * p.energy - 1.0).sqrt();
    WhittakerIndex::new(
        Complex64::new(0.0, p.smoothness * p.energy),
        Complex64::new(0.0, p.smoothness * k),
    )
}
