#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kgbarrier::checks;
use kgbarrier::scan::{
    cross_check, format_sig, parse_config, read_config, write_csv, ScanOutcome,
    DEFAULT_RESONANCE_EPS,
};
use kgbarrier::{find_resonances, run_scan, Engine, Error, ScanSpec};

/// `|R_matcher - R_oracle|` allowed by `--engine both`.
const CROSS_CHECK_TOL: f64 = 1e-6;

const FIGURES: [(&str, &str); 6] = [
    ("fig2", include_str!("../configs/fig2.conf")),
    ("fig3", include_str!("../configs/fig3.conf")),
    ("fig4", include_str!("../configs/fig4.conf")),
    ("fig5", include_str!("../configs/fig5.conf")),
    ("fig6", include_str!("../configs/fig6.conf")),
    ("fig7", include_str!("../configs/fig7.conf")),
];

#[derive(Parser)]
#[command(
    name = "kgbarrier",
    version,
    about = "Klein-Gordon scattering off a smooth barrier"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep one parameter and write R, T per grid point as CSV.
    Scan(ScanArgs),
    /// Sweep and list transmission resonances.
    Resonances {
        #[command(flatten)]
        scan: ScanArgs,
        /// Peaks must reach T >= 1 - eps.
        #[arg(long, default_value_t = DEFAULT_RESONANCE_EPS)]
        eps: f64,
    },
    /// Run the self-validation suites.
    Check,
    /// Write the CSVs behind the standard figures into a directory.
    FiguresData {
        /// Output directory.
        #[arg(long, default_value = "figures")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct ScanArgs {
    /// Sweep configuration file.
    #[arg(long)]
    config: PathBuf,
    /// matcher, oracle, analytic_kg, analytic_schrodinger or both
    /// (matcher and oracle side by side). Overrides the config.
    #[arg(long)]
    engine: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Config(String),
    Points(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 1,
            Failure::Points(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Config(m) | Failure::Points(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TooManyFailures { .. } => Failure::Points(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

enum EngineChoice {
    One(Engine),
    Both,
}

fn load(args: &ScanArgs) -> Result<(ScanSpec, EngineChoice), Failure> {
    let spec = read_config(&args.config)
        .map_err(|e| Failure::Config(format!("{}: {e}", args.config.display())))?;
    let choice = match args.engine.as_deref() {
        None => EngineChoice::One(spec.engine),
        Some("both") => EngineChoice::Both,
        Some(name) => EngineChoice::One(name.parse().map_err(Failure::Config)?),
    };
    let spec = match choice {
        EngineChoice::One(engine) => spec.with_engine(engine),
        EngineChoice::Both => spec,
    };
    spec.validate()?;
    Ok((spec, choice))
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, bytes)?,
        None => io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn warn_skipped(outcome: &ScanOutcome) {
    let failed = outcome.failures();
    if failed > 0 {
        eprintln!("warning: {failed} grid points failed; see `# skipped` lines");
    }
}

fn scan(args: &ScanArgs) -> Result<(), Failure> {
    let (spec, choice) = load(args)?;
    let mut buf = Vec::new();
    match choice {
        EngineChoice::One(_) => {
            let outcome = run_scan(&spec)?;
            warn_skipped(&outcome);
            write_csv(&outcome, &mut buf)?;
        }
        EngineChoice::Both => {
            let cc = cross_check(&spec)?;
            warn_skipped(&cc.matcher);
            warn_skipped(&cc.oracle);
            let mut merged = cc.matcher.clone();
            merged.rows.extend_from_slice(&cc.oracle.rows);
            merged
                .rows
                .sort_by(|a, b| a.swept_value.total_cmp(&b.swept_value));
            merged.skipped.extend(cc.oracle.skipped.iter().cloned());
            merged
                .skipped
                .sort_by(|a, b| a.swept_value.total_cmp(&b.swept_value));
            write_csv(&merged, &mut buf)?;
            writeln!(buf, "# max_abs_delta_R={}", format_sig(cc.max_delta_r))?;
            write_output(args.out.as_deref(), &buf)?;
            if !(cc.max_delta_r <= CROSS_CHECK_TOL) {
                return Err(Failure::Points(format!(
                    "matcher and oracle differ by {:e} > {CROSS_CHECK_TOL:e}",
                    cc.max_delta_r
                )));
            }
            return Ok(());
        }
    }
    write_output(args.out.as_deref(), &buf)
}

fn resonances(args: &ScanArgs, eps: f64) -> Result<(), Failure> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Failure::Config(format!("--eps {eps} outside (0, 1)")));
    }
    let (spec, choice) = load(args)?;
    if matches!(choice, EngineChoice::Both) {
        return Err(Failure::Config("`resonances` takes a single engine".into()));
    }
    let outcome = run_scan(&spec)?;
    warn_skipped(&outcome);
    let mut buf = Vec::new();
    writeln!(buf, "swept_value,T_peak")?;
    for r in find_resonances(&outcome.rows, eps) {
        writeln!(buf, "{},{}", format_sig(r.position), format_sig(r.peak))?;
    }
    write_output(args.out.as_deref(), &buf)
}

fn check() -> Result<(), Failure> {
    let results = checks::run_all();
    let mut failed = 0;
    for r in &results {
        println!("{}", r.line());
        failed += usize::from(!r.passed);
    }
    if failed > 0 {
        return Err(Failure::Points(format!(
            "{failed} of {} checks failed",
            results.len()
        )));
    }
    Ok(())
}

fn figures_data(out: &Path) -> Result<(), Failure> {
    fs::create_dir_all(out)?;
    for (name, text) in FIGURES {
        let spec = parse_config(text)?;
        let outcome = run_scan(&spec)?;
        warn_skipped(&outcome);
        let mut buf = Vec::new();
        write_csv(&outcome, &mut buf)?;
        let path = out.join(format!("{name}.csv"));
        fs::write(&path, buf)?;
        eprintln!("wrote {} ({} rows)", path.display(), outcome.rows.len());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Scan(args) => scan(args),
        Command::Resonances { scan, eps } => resonances(scan, *eps),
        Command::Check => check(),
        Command::FiguresData { out } => figures_data(out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
