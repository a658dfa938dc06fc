use kgbarrier::oracle::{barrier_rt, integrate_rt, OracleConfig};
use kgbarrier::{coefficients, ScatterParams};

struct Golden {
    params: ScatterParams,
    reflection: f64,
    transmission: f64,
}

fn goldens() -> Vec<Golden> {
    let text = include_str!("../fixtures/oracle_golden.csv");
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("E,V0,a,x0,R,T,step"));
    lines
        .map(|line| {
            let v: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
            Golden {
                params: ScatterParams::new(v[0], v[1], v[2], v[3]).unwrap(),
                reflection: v[4],
                transmission: v[5],
            }
        })
        .collect()
}

#[test]
fn oracle_reproduces_frozen_values() {
    for g in goldens() {
        let co = barrier_rt(&g.params).unwrap();
        assert!(
            (co.reflection - g.reflection).abs() < 1e-9,
            "{:?}",
            g.params
        );
        assert!((co.transmission - g.transmission).abs() < 1e-9);
    }
}

#[test]
fn matcher_agrees_with_frozen_oracle() {
    for g in goldens() {
        let co = coefficients(&g.params).unwrap();
        assert!(
            (co.reflection - g.reflection).abs() < 1e-9,
            "{:?}: {} vs {}",
            g.params,
            co.reflection,
            g.reflection
        );
        assert!((co.transmission - g.transmission).abs() < 1e-9);
    }
}

#[test]
fn step_halving_is_fourth_order() {
    let p = ScatterParams::new(2.0, 4.0, 0.5, -1.0).unwrap();
    let exact = coefficients(&p).unwrap().reflection;
    let base = OracleConfig::for_barrier(&p);
    let err = |h: f64| {
        let co = integrate_rt(&p, p.energy, &base.with_step(h));
        (co.map(|c| c.reflection).unwrap_or(f64::NAN) - exact).abs()
    };
    let steps = [0.04, 0.02, 0.01];
    let errs: Vec<f64> = steps.iter().map(|&h| err(h)).collect();
    for w in errs.windows(2) {
        let ratio = w[0] / w[1];
        assert!((12.0..=20.0).contains(&ratio), "errors {errs:?}");
    }
}
