use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kgbarrier"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("configs")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("sweep.conf");
    fs::write(&path, body).unwrap();
    path
}

#[test]
fn fig2_config_reproduces_fixture() {
    let out = run(&["scan", "--config", config("fig2.conf").to_str().unwrap()]);
    assert!(out.status.success());
    let want = include_bytes!("fixtures/fig2_matcher.csv");
    assert!(out.stdout == want, "scan output differs from fixture");
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = text.lines().filter(|l| !l.starts_with('#')).count() - 1;
    let skipped = text.lines().filter(|l| l.starts_with("# skipped")).count();
    assert_eq!(rows + skipped, 1001);
    assert!(text.lines().nth(1).unwrap().starts_with("0,0,1,"));
}

#[test]
fn repeated_runs_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = run(&[
            "scan",
            "--config",
            config("fig3.conf").to_str().unwrap(),
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn both_engines_report_their_difference() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "sweep = V0\nstart = 0\nstop = 10\nstep = 0.25\nE = 2\na = 0.5\nx0 = -1\n",
    );
    let out = run(&[
        "scan",
        "--config",
        cfg.to_str().unwrap(),
        "--engine",
        "both",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let delta: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("# max_abs_delta_R="))
        .expect("delta line")
        .parse()
        .unwrap();
    assert!(delta <= 1e-6, "{delta}");
    assert!(text.contains(",matcher\n") && text.contains(",oracle\n"));
}

#[test]
fn engine_flag_overrides_config() {
    let out = run(&[
        "scan",
        "--config",
        config("fig7.conf").to_str().unwrap(),
        "--engine",
        "analytic_schrodinger",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .all(|l| l.ends_with(",analytic_schrodinger")));
}

#[test]
fn resonances_of_the_square_barrier() {
    let out = run(&[
        "resonances",
        "--config",
        config("fig7.conf").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let peaks: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(peaks.len(), 4, "{text}");
    let first = 3.0 - (1.0 + std::f64::consts::PI.powi(2) / 9.0).sqrt();
    assert!(peaks.iter().any(|p| (p - first).abs() < 1e-3));

    let out = run(&[
        "resonances",
        "--config",
        config("fig6.conf").to_str().unwrap(),
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let peaks: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert!(peaks.iter().any(|p| (p - 2.45169).abs() < 1e-3), "{text}");
}

#[test]
fn eps_widens_the_peak_filter() {
    let strict = run(&[
        "resonances",
        "--config",
        config("fig2.conf").to_str().unwrap(),
        "--eps",
        "1e-9",
    ]);
    let loose = run(&[
        "resonances",
        "--config",
        config("fig2.conf").to_str().unwrap(),
        "--eps",
        "0.5",
    ]);
    assert!(strict.status.success() && loose.status.success());
    assert!(loose.stdout.len() > strict.stdout.len());
    let bad = run(&[
        "resonances",
        "--config",
        config("fig2.conf").to_str().unwrap(),
        "--eps",
        "2",
    ]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn single_point_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "sweep = V0\nstart = 2.5\nstop = 2.5\nstep = 0.01\nE = 3\nx0 = -3\nengine = analytic_kg\n",
    );
    let out = run(&["scan", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 2);
}

#[test]
fn config_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "sweep = V0\nstart = 0\nstop = 1\nstep = 0.1\nE = 2\nwidth = 3\n",
    );
    let out = run(&["scan", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 6"));

    let out = run(&[
        "scan",
        "--config",
        dir.path().join("missing.conf").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&[
        "scan",
        "--config",
        config("fig2.conf").to_str().unwrap(),
        "--engine",
        "nope",
    ]);
    assert_eq!(out.status.code(), Some(1));

    assert_eq!(run(&["scan"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn widespread_point_failures_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    // 2 a V0 passes the series range for most of the sweep
    let cfg = write_config(
        dir.path(),
        "sweep = a\nstart = 0.5\nstop = 10\nstep = 0.5\nE = 2\nV0 = 10\nx0 = -1\n",
    );
    let out = run(&["scan", "--config", cfg.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn figures_data_writes_every_figure() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["figures-data", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    for n in 2..=7 {
        let text = fs::read_to_string(dir.path().join(format!("fig{n}.csv"))).unwrap();
        assert!(text.starts_with("swept_value,R,T,unitarity_residual,engine\n"));
        assert!(text.lines().count() > 500);
    }
    assert_eq!(
        fs::read(dir.path().join("fig2.csv")).unwrap(),
        include_bytes!("fixtures/fig2_matcher.csv")
    );
}
