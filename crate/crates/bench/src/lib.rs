//! Benchmark inputs shared by the criterion targets.

use kgbarrier::ScatterParams;

/// Parameter points covering the flat-top, evanescent and Klein regimes.
pub fn representative_params() -> Vec<(&'static str, ScatterParams)> {
    vec![
        (
            "propagating",
            ScatterParams::new(2.0, 0.5, 0.5, -1.0).unwrap(),
        ),
        (
            "evanescent",
            ScatterParams::new(2.0, 2.0, 0.5, -1.0).unwrap(),
        ),
        ("klein", ScatterParams::new(2.0, 8.0, 1.0, -2.0).unwrap()),
    ]
}
