//! Boundary matching of the exact region solutions.
//!
//! Left of the barrier (`x < x0`) the solutions are
//! `y^{-1/2} M_{kappa,+-mu}(y)` with `y = 2iaV0 e^{(x-x0)/a}`; for `x -> -inf`
//! the `+mu` one is the incident plane wave and the `-mu` one the reflected
//! wave. On the flat top they are `e^{-+iqx}`. Right of the barrier
//! (`x > 0`) the transmitted wave is `z^{-1/2} M_{kappa,-mu}(z)` with
//! `z = 2iaV0 e^{-x/a}`. Continuity of the value and slope at `x0` and at `0`
//! fixes the four unknown amplitudes for unit incident amplitude.
//!
//! The matching rows are generated from the region waves themselves rather
//! than transcribed from a printed system. Note that the published form of
//! these equations attaches the reflected amplitude to `M_{kappa,+mu}` in its
//! first row and uses `M_{kappa+1,-mu}` where the `+mu` partner is expected;
//! neither is reproduced here.

use num_complex::Complex64;

use crate::barrier::{kinematics, whittaker_index, ScatterParams};
use crate::error::{Error, Result};
use crate::linalg;
use crate::specfun::{cexp, whittaker_m_pair, Branch};

/// Which of the two left-region solutions to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuSign {
    /// `M_{kappa,+mu}`: incident wave.
    Plus,
    /// `M_{kappa,-mu}`: reflected wave.
    Minus,
}

/// Matching amplitudes for incident amplitude `c1 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitudes {
    /// Reflected wave, region I.
    pub b1: Complex64,
    /// `e^{-iqx}` on the flat top.
    pub b2: Complex64,
    /// `e^{+iqx}` on the flat top.
    pub c2: Complex64,
    /// Transmitted wave, region III.
    pub b3: Complex64,
}

/// Reflection and transmission probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub reflection: f64,
    pub transmission: f64,
    /// `R + T - 1`.
    pub unitarity_residual: f64,
}

impl Coefficients {
    pub fn new(reflection: f64, transmission: f64) -> Self {
        Coefficients {
            reflection,
            transmission,
            unitarity_residual: reflection + transmission - 1.0,
        }
    }

    /// No barrier at all.
    pub fn free() -> Self {
        Coefficients::new(0.0, 1.0)
    }
}

/// Value and `x`-derivative of a wave.
pub type WaveValue = (Complex64, Complex64);

fn require_barrier(p: &ScatterParams) -> Result<()> {
    p.validate()?;
    if p.height == 0.0 {
        return Err(Error::Domain(
            "V0 = 0: the Whittaker region solutions need a nonzero barrier".into(),
        ));
    }
    Ok(())
}

/// Left-region solution `(2iaV0)^{-1/2} e^{-(x-x0)/2a} M_{kappa,+-mu}(2iaV0 e^{(x-x0)/a})`.
pub fn region1_wave(p: &ScatterParams, sign: MuSign, x: f64) -> Result<WaveValue> {
    require_barrier(p)?;
    if x > p.left_edge {
        return Err(Error::Domain(format!(
            "region I wave evaluated at x = {x} > x0 = {}",
            p.left_edge
        )));
    }
    let a = p.smoothness;
    let idx = match sign {
        MuSign::Plus => whittaker_index(p),
        MuSign::Minus => whittaker_index(p).with_negated_mu(),
    };
    let t = (x - p.left_edge) / a;
    let scale = p.argument_scale();
    let y = scale * t.exp();
    let (m, dm) = whittaker_m_pair(idx, y, Branch::Reject)?;
    let pre = cexp(-0.5 * scale.ln()) * (-0.5 * t).exp();
    // dy/dx = y / a
    Ok((pre * m, pre * (dm * y / a - m / (2.0 * a))))
}

/// Flat-top basis `e^{-iqx}` and `e^{+iqx}` with their derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatTopBasis {
    pub minus: WaveValue,
    pub plus: WaveValue,
}

pub fn region2_wave(p: &ScatterParams, x: f64) -> Result<FlatTopBasis> {
    p.validate()?;
    if x < p.left_edge || x > 0.0 {
        return Err(Error::Domain(format!(
            "flat-top wave evaluated at x = {x} outside [{}, 0]",
            p.left_edge
        )));
    }
    let q = kinematics(p)?.q;
    let i = Complex64::i();
    let minus = cexp(-i * q * x);
    let plus = cexp(i * q * x);
    Ok(FlatTopBasis {
        minus: (minus, -i * q * minus),
        plus: (plus, i * q * plus),
    })
}

/// Right-region solution `(2iaV0)^{-1/2} e^{x/2a} M_{kappa,-mu}(2iaV0 e^{-x/a})`.
pub fn region3_wave(p: &ScatterParams, x: f64) -> Result<WaveValue> {
    require_barrier(p)?;
    if x < 0.0 {
        return Err(Error::Domain(format!(
            "region III wave evaluated at x = {x} < 0"
        )));
    }
    let a = p.smoothness;
    let idx = whittaker_index(p).with_negated_mu();
    let scale = p.argument_scale();
    let z = scale * (-x / a).exp();
    let (m, dm) = whittaker_m_pair(idx, z, Branch::Reject)?;
    let pre = cexp(-0.5 * scale.ln()) * (0.5 * x / a).exp();
    // dz/dx = -z / a
    Ok((pre * m, pre * (m / (2.0 * a) - dm * z / a)))
}

type System = ([[Complex64; 4]; 4], [Complex64; 4]);

/// Matching rows for unknowns `(b1, b2, c2, b3)`.
fn matching_system(p: &ScatterParams) -> Result<System> {
    let x0 = p.left_edge;
    let (inc, inc_d) = region1_wave(p, MuSign::Plus, x0)?;
    let (refl, refl_d) = region1_wave(p, MuSign::Minus, x0)?;
    let left = region2_wave(p, x0)?;
    let right = region2_wave(p, 0.0)?;
    let (trans, trans_d) = region3_wave(p, 0.0)?;
    let zero = Complex64::new(0.0, 0.0);
    let m = [
        [refl, -left.minus.0, -left.plus.0, zero],
        [refl_d, -left.minus.1, -left.plus.1, zero],
        [zero, right.minus.0, right.plus.0, -trans],
        [zero, right.minus.1, right.plus.1, -trans_d],
    ];
    let rhs = [-inc, -inc_d, zero, zero];
    Ok((m, rhs))
}

/// Solves the four continuity conditions at `x0` and `0` with `c1 = 1`.
pub fn solve_matching(p: &ScatterParams) -> Result<Amplitudes> {
    let (m, rhs) = matching_system(p)?;
    let [b1, b2, c2, b3] = linalg::solve(m, rhs)?;
    Ok(Amplitudes { b1, b2, c2, b3 })
}

/// Largest relative mismatch of the four matching conditions for `amps`.
pub fn matching_residual(p: &ScatterParams, amps: &Amplitudes) -> Result<f64> {
    let (m, rhs) = matching_system(p)?;
    Ok(linalg::relative_residual(
        &m,
        &rhs,
        &[amps.b1, amps.b2, amps.c2, amps.b3],
    ))
}

/// Asymptotic plane-wave amplitudes `(A_inc, A_ref, A_trans)` multiplying
/// `e^{ik(x-x0)}`, `e^{-ik(x-x0)}` and `e^{ikx}` respectively.
pub fn asymptotic_amplitudes(
    p: &ScatterParams,
    amps: &Amplitudes,
) -> (Complex64, Complex64, Complex64) {
    let mu = whittaker_index(p).mu;
    let log_scale = p.argument_scale().ln();
    let up = cexp(mu * log_scale);
    let down = cexp(-mu * log_scale);
    (up, down * amps.b1, down * amps.b3)
}

/// Reflection and transmission for the smooth barrier.
///
/// Both exterior regions share the wavenumber `k`, so the current ratios
/// reduce to squared amplitude ratios.
pub fn coefficients(p: &ScatterParams) -> Result<Coefficients> {
    p.validate()?;
    if p.height == 0.0 {
        return Ok(Coefficients::free());
    }
    let amps = solve_matching(p)?;
    let (inc, refl, trans) = asymptotic_amplitudes(p, &amps);
    let norm = inc.norm_sqr();
    Ok(Coefficients::new(
        refl.norm_sqr() / norm,
        trans.norm_sqr() / norm,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(e: f64, v0: f64, a: f64, x0: f64) -> ScatterParams {
        ScatterParams::new(e, v0, a, x0).unwrap()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn incident_wave_asymptotics() {
        let p = params(2.0, 3.0, 0.5, -1.0);
        let k = 3f64.sqrt();
        let x = p.left_edge - 40.0 * p.smoothness;
        let (v, d) = region1_wave(&p, MuSign::Plus, x).unwrap();
        let plane = Complex64::new(0.0, k * (x - p.left_edge)).exp();
        let mu = whittaker_index(&p).mu;
        let want = p.argument_scale().powc(mu);
        assert!(rel(v / plane, want) < 1e-4);
        assert!(rel(d, Complex64::new(0.0, k) * v) < 1e-4);
        let (r, _) = region1_wave(&p, MuSign::Minus, x).unwrap();
        assert!(rel(r * plane, p.argument_scale().powc(-mu)) < 1e-4);
    }

    #[test]
    fn transmitted_wave_asymptotics() {
        let p = params(2.0, 3.0, 0.5, -1.0);
        let k = 3f64.sqrt();
        let x = 40.0 * p.smoothness;
        let (v, _) = region3_wave(&p, x).unwrap();
        let mu = whittaker_index(&p).mu;
        let want = p.argument_scale().powc(-mu);
        assert!(rel(v / Complex64::new(0.0, k * x).exp(), want) < 1e-4);
    }

    #[test]
    fn wave_derivatives_match_finite_differences() {
        let h = 1e-6;
        for p in [
            params(2.0, 3.0, 0.5, -1.0),
            params(1.5, 1.2, 1.0, -2.0),
            params(5.0, 9.0, 0.3, 0.0),
        ] {
            let x = p.left_edge - 1.0;
            for sign in [MuSign::Plus, MuSign::Minus] {
                let (_, d) = region1_wave(&p, sign, x).unwrap();
                let fd = (region1_wave(&p, sign, x + h).unwrap().0
                    - region1_wave(&p, sign, x - h).unwrap().0)
                    / (2.0 * h);
                assert!(rel(fd, d) < 1e-6);
            }
            let (_, d) = region3_wave(&p, 1.0).unwrap();
            let fd = (region3_wave(&p, 1.0 + h).unwrap().0 - region3_wave(&p, 1.0 - h).unwrap().0)
                / (2.0 * h);
            assert!(rel(fd, d) < 1e-6);
        }
    }

    #[test]
    fn vanishing_barrier_gives_plane_waves() {
        let p = params(2.0, 1e-8, 0.5, -1.0);
        let k = 3f64.sqrt();
        let mu = whittaker_index(&p).mu;
        for x in [-1.0, -1.7, -3.0] {
            let (v, _) = region1_wave(&p, MuSign::Plus, x).unwrap();
            let want = p.argument_scale().powc(mu) * Complex64::new(0.0, k * (x + 1.0)).exp();
            assert!(rel(v, want) < 1e-6);
        }
        for x in [0.0, 0.8] {
            let (v, _) = region3_wave(&p, x).unwrap();
            let want = p.argument_scale().powc(-mu) * Complex64::new(0.0, k * x).exp();
            assert!(rel(v, want) < 1e-6);
        }
        let amps = solve_matching(&p).unwrap();
        assert!(amps.b1.norm() < 1e-6);
        let (inc, _, trans) = asymptotic_amplitudes(&p, &amps);
        assert!(((trans / inc).norm() - 1.0).abs() < 1e-6);
        let co = coefficients(&p).unwrap();
        assert!(co.reflection < 1e-6 && (co.transmission - 1.0).abs() < 1e-6);
    }

    #[test]
    fn flat_top_basis() {
        let p = params(2.0, 2.0, 0.5, -2.0);
        let at0 = region2_wave(&p, 0.0).unwrap();
        assert_eq!(at0.minus.0, Complex64::new(1.0, 0.0));
        assert_eq!(at0.plus.0, Complex64::new(1.0, 0.0));
        let q = kinematics(&p).unwrap().q;
        let b = region2_wave(&p, -0.7).unwrap();
        assert!(rel(b.minus.1, -Complex64::i() * q * b.minus.0) < 1e-15);
        assert!(rel(b.plus.1, Complex64::i() * q * b.plus.0) < 1e-15);
        // evanescent: |e^{iqx}| = e^{-Im(q) x} grows towards x0
        let mut last = 0.0;
        for i in 0..=20 {
            let x = -(i as f64) * 0.1;
            let m = region2_wave(&p, x).unwrap().plus.0.norm();
            assert!(m > last);
            last = m;
        }
        assert!(region2_wave(&p, 0.1).is_err());
        assert!(matches!(
            region2_wave(&params(2.0, 1.0, 0.5, -1.0), -0.5),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn zero_height_is_free() {
        let p = params(2.0, 0.0, 0.5, -1.0);
        assert_eq!(coefficients(&p).unwrap(), Coefficients::free());
        assert!(solve_matching(&p).is_err());
    }

    #[test]
    fn thin_barrier_resonance() {
        let v0 = 3.0 - (1.0 + std::f64::consts::PI.powi(2) / 9.0).sqrt();
        let co = coefficients(&params(3.0, v0, 1e-3, -3.0)).unwrap();
        assert!((co.transmission - 1.0).abs() < 1e-3, "{co:?}");
    }

    #[test]
    fn residual_and_continuity_on_random_params() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 100 {
            let p = params(
                rng.gen_range(1.05..5.0),
                rng.gen_range(0.01..10.0),
                rng.gen_range(0.05..1.0),
                rng.gen_range(-3.0..0.0),
            );
            let Ok(amps) = solve_matching(&p) else {
                continue;
            };
            checked += 1;
            assert!(matching_residual(&p, &amps).unwrap() <= 1e-10);

            let x0 = p.left_edge;
            let (inc, inc_d) = region1_wave(&p, MuSign::Plus, x0).unwrap();
            let (refl, refl_d) = region1_wave(&p, MuSign::Minus, x0).unwrap();
            let flat = |x: f64| {
                let b = region2_wave(&p, x).unwrap();
                (
                    amps.b2 * b.minus.0 + amps.c2 * b.plus.0,
                    amps.b2 * b.minus.1 + amps.c2 * b.plus.1,
                )
            };
            let left = (inc + amps.b1 * refl, inc_d + amps.b1 * refl_d);
            let (tv, td) = region3_wave(&p, 0.0).unwrap();
            let right = (amps.b3 * tv, amps.b3 * td);
            let scale = left.0.norm() + left.1.norm() + right.0.norm() + right.1.norm();
            assert!((left.0 - flat(x0).0).norm() <= 1e-10 * scale);
            assert!((left.1 - flat(x0).1).norm() <= 1e-10 * scale);
            assert!((right.0 - flat(0.0).0).norm() <= 1e-10 * scale);
            assert!((right.1 - flat(0.0).1).norm() <= 1e-10 * scale);
        }
    }
}
