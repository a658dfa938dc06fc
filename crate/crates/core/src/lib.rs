//! Reflection and transmission of a spin-0 particle by a smooth barrier,
//! computed from the Klein-Gordon equation
//!
//! ```text
//! phi''(x) + [(E - V(x))^2 - 1] phi(x) = 0        (hbar = c = m = 1)
//! ```
//!
//! with `V` rising as `V0 e^{(x - x0)/a}` left of `x0`, flat at `V0` on
//! `[x0, 0]` and falling as `V0 e^{-x/a}` right of `0`.
//!
//! [`matcher`] solves the problem exactly with Whittaker functions
//! ([`specfun`]); [`oracle`] integrates the ODE directly as an independent
//! check; [`analytic`] holds the rectangular-barrier closed forms that the
//! `a -> 0` limit must reproduce. [`scan`] runs parameter sweeps and
//! [`checks`] bundles the self-validation suites.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod barrier;
pub mod checks;
mod dd;
pub mod error;
pub mod linalg;
pub mod matcher;
pub mod oracle;
pub mod scan;
pub mod specfun;

pub use num_complex::Complex64;

pub use analytic::{square_barrier_rt, Dispersion};
pub use barrier::{kinematics, potential_value, whittaker_index, Kinematics, ScatterParams};
pub use checks::CheckResult;
pub use error::{Error, Result};
pub use matcher::{coefficients, solve_matching, Amplitudes, Coefficients, MuSign};
pub use oracle::{barrier_rt, convergence_check, integrate_rt, OracleConfig, Potential};
pub use scan::{find_resonances, run_scan, Engine, ScanRow, ScanSpec, SweepVariable};
pub use specfun::{kummer_m, whittaker_m, whittaker_m_deriv, WhittakerIndex};
