//! Closed-form reflection and transmission for a rectangular barrier of
//! height `V0` on `[x0, 0]`, for both the non-relativistic and the
//! Klein-Gordon dispersion.

use crate::error::{Error, Result};
use crate::matcher::Coefficients;

/// `|k2^2|` below which the formula is treated as degenerate.
const K2_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dispersion {
    /// `k1 = sqrt(2E)`, `k2 = sqrt(2(E - V0))`.
    Schrodinger,
    /// `k1 = sqrt(E^2 - 1)`, `k2 = sqrt((E - V0)^2 - 1)`.
    KleinGordon,
}

impl Dispersion {
    /// `(k1^2, k2^2)`; `k2^2` is negative under the barrier.
    pub fn squared_wavenumbers(self, energy: f64, height: f64) -> (f64, f64) {
        match self {
            Dispersion::Schrodinger => (2.0 * energy, 2.0 * (energy - height)),
            Dispersion::KleinGordon => (
                energy * energy - 1.0,
                (energy - height) * (energy - height) - 1.0,
            ),
        }
    }

    fn threshold(self) -> f64 {
        match self {
            Dispersion::Schrodinger => 0.0,
            Dispersion::KleinGordon => 1.0,
        }
    }
}

pub fn square_barrier_rt(
    energy: f64,
    height: f64,
    left_edge: f64,
    dispersion: Dispersion,
) -> Result<Coefficients> {
    if !(energy > dispersion.threshold()) || !height.is_finite() || !left_edge.is_finite() {
        return Err(Error::InvalidParams(format!(
            "E = {energy}, V0 = {height}, x0 = {left_edge} outside the propagating regime of {dispersion:?}"
        )));
    }
    let (k1_sq, k2_sq) = dispersion.squared_wavenumbers(energy, height);
    if k2_sq.abs() < K2_TOL {
        return Err(Error::Degenerate(format!(
            "k2^2 = {k2_sq:e} at E = {energy}, V0 = {height}"
        )));
    }
    // sin^2(k2 x0), continued to -sinh^2(|k2| x0) when k2 is imaginary
    let sin_sq = if k2_sq > 0.0 {
        let s = (k2_sq.sqrt() * left_edge).sin();
        s * s
    } else {
        let s = ((-k2_sq).sqrt() * left_edge).sinh();
        -(s * s)
    };
    let contrast = (k1_sq - k2_sq) * (k1_sq - k2_sq) * sin_sq;
    let direct = 4.0 * k1_sq * k2_sq;
    let denom = direct + contrast;
    Ok(Coefficients::new(contrast / denom, direct / denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sine_roots_are_transparent() {
        let v0 = 3.0 - PI * PI / 18.0;
        let co = square_barrier_rt(3.0, v0, -3.0, Dispersion::Schrodinger).unwrap();
        assert!((co.transmission - 1.0).abs() < 1e-12);
        assert!((v0 - 2.45169).abs() < 1e-5);

        let v0 = 3.0 - (1.0 + PI * PI / 9.0).sqrt();
        let co = square_barrier_rt(3.0, v0, -3.0, Dispersion::KleinGordon).unwrap();
        assert!((co.transmission - 1.0).abs() < 1e-12);
        assert!((v0 - 1.55203).abs() < 1e-5);
    }

    #[test]
    fn no_barrier() {
        for d in [Dispersion::Schrodinger, Dispersion::KleinGordon] {
            let co = square_barrier_rt(3.0, 0.0, -3.0, d).unwrap();
            assert_eq!(co.reflection, 0.0);
            assert_eq!(co.transmission, 1.0);
        }
    }

    #[test]
    fn unitarity_and_range() {
        for d in [Dispersion::Schrodinger, Dispersion::KleinGordon] {
            for i in 0..=600 {
                let v0 = i as f64 * 0.01;
                let Ok(co) = square_barrier_rt(3.0, v0, -3.0, d) else {
                    continue;
                };
                assert!(co.unitarity_residual.abs() < 1e-14);
                assert!((0.0..=1.0).contains(&co.reflection));
            }
        }
    }

    #[test]
    fn continuous_across_k2_zero() {
        let energy = 3.0;
        let x0 = -3.0;
        for d in [Dispersion::Schrodinger, Dispersion::KleinGordon] {
            let (k1_sq, _) = d.squared_wavenumbers(energy, 0.0);
            // sin^2(k2 x0) / k2^2 -> x0^2
            let limit = k1_sq * x0 * x0 / (4.0 + k1_sq * x0 * x0);
            // R is smooth in k2^2, so the one-sided values approach the limit linearly
            for (gap, tol) in [(1e-4, 1e-4), (1e-6, 1e-6)] {
                let heights = match d {
                    Dispersion::Schrodinger => [energy - 0.5 * gap, energy + 0.5 * gap],
                    Dispersion::KleinGordon => {
                        [energy - (1.0 + gap).sqrt(), energy - (1.0 - gap).sqrt()]
                    }
                };
                for v0 in heights {
                    let (_, k2_sq) = d.squared_wavenumbers(energy, v0);
                    assert!((k2_sq.abs() - gap).abs() < 1e-3 * gap);
                    let co = square_barrier_rt(energy, v0, x0, d).unwrap();
                    assert!(
                        (co.reflection - limit).abs() < tol,
                        "{d:?} gap {gap}: {} vs {limit}",
                        co.reflection
                    );
                }
            }
        }
        assert!(matches!(
            square_barrier_rt(3.0, 2.0, -3.0, Dispersion::KleinGordon),
            Err(Error::Degenerate(_))
        ));
    }
}
