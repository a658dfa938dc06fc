//! Regenerates `fixtures/oracle_golden.csv` from the ODE oracle.
//!
//! ```text
//! cargo run --release -p kgbarrier --example oracle_golden > crates/core/fixtures/oracle_golden.csv
//! ```

use kgbarrier::oracle::{convergence_check, integrate_rt, OracleConfig};
use kgbarrier::scan::format_sig;
use kgbarrier::ScatterParams;

const STEP: f64 = 1e-5;

fn main() {
    let points = [
        (2.0, 4.0, 0.5, -1.0),
        (2.0, 2.0, 0.5, -1.0),
        (2.0, 0.5, 0.5, -2.0),
        (3.0, 10.0, 1.0, -2.0),
        (1.5, 0.3, 0.1, 0.0),
        (5.0, 7.5, 0.05, -3.0),
    ];
    println!("E,V0,a,x0,R,T,step");
    for (e, v0, a, x0) in points {
        let p = ScatterParams::new(e, v0, a, x0).expect("valid parameters");
        let cfg = OracleConfig::for_barrier(&p).with_step(STEP);
        let drift = convergence_check(&p, e, &cfg);
        assert!(drift < 1e-8, "{p:?} not converged: {drift:e}");
        let co = integrate_rt(&p, e, &cfg).expect("oracle");
        eprintln!("{p:?}: R = {:.15} drift {drift:.1e}", co.reflection);
        println!(
            "{},{},{},{},{},{},{}",
            e,
            v0,
            a,
            x0,
            format_sig(co.reflection),
            format_sig(co.transmission),
            format_sig(STEP)
        );
    }
}
