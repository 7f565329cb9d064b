mod config;
mod suites;

use anyhow::Context;
use clap::{Parser, Subcommand};
use config::{OutputFormat, RunConfig, SCHEMA};
use flatholo_core::mwbuild::{build, calibrate, genus_bound, sweep, BuildError, SweepRow};
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  usage error (bad flags, out-of-range parameters, invalid config)
  2  solver or construction failure
  3  verification failure

The seed can be overridden with the FLATHOLO_SEED environment variable.";

pub const CSV_HEADER: [&str; 10] = ["chi", "eps", "method", "genus", "bound", "defect", "euler", "max_dist", "theta", "status"];

#[derive(Parser)]
#[command(name = "flatholo", version, about = "Flat circle bundle constructions and group-theoretic checks", after_help = EXIT_CODES)]
struct Cli {
    /// JSON run configuration; defaults apply to missing fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one representation and print its report as JSON.
    Construct {
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 1)]
        method: u8,
    },
    /// Build every (chi, eps, method) cell and write a table.
    Sweep {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        chi: Vec<i64>,
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = [1u8, 2, 3])]
        method: Vec<u8>,
        /// Output table; a `.meta.json` sidecar with the config is written
        /// next to CSV output.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run invariant suites: eq5, fragment, ucover, bi, octagon or all.
    Verify { suite: String },
    /// Refit the genus-law constants and print them.
    Calibrate {
        /// Write the config with the new constants to this path.
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Solver(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Solver(_) => 2,
            Failure::Verification(_) => 3,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(format!("{e:#}"))
    }
}

fn build_failure(e: BuildError) -> Failure {
    match e {
        BuildError::EpsTooLarge(_) | BuildError::InvalidEps(_) | BuildError::UnknownMethod(_) => Failure::Usage(e.to_string()),
        _ => Failure::Solver(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Usage(m) | Failure::Solver(m) | Failure::Verification(m)) = &f;
            eprintln!("error: {m}");
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = RunConfig::load(cli.config.as_deref())?;
    match cli.command {
        Command::Construct { chi, eps, method } => construct(&cfg, chi, eps, method),
        Command::Sweep { chi, eps, method, out } => run_sweep(&cfg, &chi, &eps, &method, &out),
        Command::Verify { suite } => verify(&cfg, &suite),
        Command::Calibrate { write } => run_calibrate(&cfg, write.as_deref()),
    }
}

fn print_json(v: &impl Serialize) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(v).context("serializing output")?;
    println!("{s}");
    Ok(())
}

fn construct(cfg: &RunConfig, chi: i64, eps: f64, method: u8) -> Result<(), Failure> {
    let report = build(method, chi, eps).map_err(build_failure)?;
    print_json(&json!({
        "schema": SCHEMA,
        "config_hash": cfg.hash(),
        "config": cfg,
        "bound": genus_bound(chi, eps, &cfg.calibration),
        "report": report,
    }))
}

fn check_sweep_args(chis: &[i64], epss: &[f64], methods: &[u8]) -> Result<(), Failure> {
    if let Some(e) = epss.iter().find(|e| !(**e > 0.0 && **e <= flatholo_core::mwbuild::MAX_BUILD_EPS)) {
        return Err(Failure::Usage(format!("eps {e} outside (0, {}]", flatholo_core::mwbuild::MAX_BUILD_EPS)));
    }
    if let Some(m) = methods.iter().find(|m| !(1..=3).contains(*m)) {
        return Err(Failure::Usage(format!("unknown method {m}")));
    }
    if chis.is_empty() {
        return Err(Failure::Usage("empty chi list".into()));
    }
    Ok(())
}

fn csv_record(row: &SweepRow) -> Vec<String> {
    let mut rec = vec![row.chi.to_string(), row.eps.to_string(), row.method.to_string()];
    match &row.result {
        Ok(r) => {
            rec.extend([
                r.genus.to_string(),
                row.bound.to_string(),
                r.defect.to_string(),
                r.euler.to_string(),
                r.max_dist_to_rotations.to_string(),
                r.theta_per_commutator.to_string(),
                "ok".to_string(),
            ]);
        }
        Err(e) => {
            rec.extend([String::new(), row.bound.to_string(), String::new(), String::new(), String::new(), String::new()]);
            rec.push(format!("error: {e}"));
        }
    }
    rec
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn run_sweep(cfg: &RunConfig, chis: &[i64], epss: &[f64], methods: &[u8], out: &Path) -> Result<(), Failure> {
    check_sweep_args(chis, epss, methods)?;
    let rows = sweep(chis, epss, methods, &cfg.calibration);
    let ok = rows.iter().filter(|r| r.result.is_ok()).count();
    let bytes = match cfg.format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER).context("writing csv")?;
            for row in &rows {
                w.write_record(csv_record(row)).context("writing csv")?;
            }
            w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?
        }
        OutputFormat::Json => {
            let v = json!({ "schema": SCHEMA, "config_hash": cfg.hash(), "config": cfg, "rows": rows });
            let mut s = serde_json::to_vec_pretty(&v).context("serializing sweep")?;
            s.push(b'\n');
            s
        }
    };
    std::fs::write(out, &bytes).with_context(|| format!("writing {}", out.display()))?;
    if cfg.format == OutputFormat::Csv {
        let meta = json!({
            "schema": SCHEMA,
            "config_hash": cfg.hash(),
            "config": cfg,
            "chi": chis,
            "eps": epss,
            "method": methods,
            "rows": rows.len(),
            "csv_sha256": hex::encode(Sha256::digest(&bytes)),
        });
        let mut s = serde_json::to_vec_pretty(&meta).context("serializing sidecar")?;
        s.push(b'\n');
        let path = sidecar_path(out);
        std::fs::write(&path, s).with_context(|| format!("writing {}", path.display()))?;
    }
    eprintln!("{ok} of {} cells succeeded", rows.len());
    if ok == 0 {
        return Err(Failure::Solver("no sweep cell succeeded".into()));
    }
    Ok(())
}

fn verify(cfg: &RunConfig, suite: &str) -> Result<(), Failure> {
    let names: Vec<&str> = match suite {
        "all" => suites::SUITES.to_vec(),
        s if suites::SUITES.contains(&s) => vec![s],
        s => return Err(Failure::Usage(format!("unknown suite {s}; expected one of {:?} or all", suites::SUITES))),
    };
    let mut failed = 0;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for name in names {
        let t = suites::run(name, cfg).expect("known suite");
        for f in &t.failures {
            eprintln!("{name}: FAIL {f}");
        }
        let _ = writeln!(out, "{}: {}/{} passed", t.suite, t.passed, t.total());
        failed += t.failures.len();
    }
    let _ = writeln!(out, "config_hash: {}", cfg.hash());
    if failed > 0 {
        return Err(Failure::Verification(format!("{failed} checks failed")));
    }
    Ok(())
}

fn run_calibrate(cfg: &RunConfig, write: Option<&Path>) -> Result<(), Failure> {
    let report = calibrate(&cfg.calibration_grid()).map_err(build_failure)?;
    if (report.slope - 2.0).abs() > 0.05 {
        return Err(Failure::Solver(format!("calibration failure: log-log slope {} outside [1.95, 2.05]", report.slope)));
    }
    let mut updated = cfg.clone();
    updated.calibration = report.calibration;
    if let Some(path) = write {
        let mut s = serde_json::to_vec_pretty(&updated).context("serializing config")?;
        s.push(b'\n');
        std::fs::write(path, s).with_context(|| format!("writing {}", path.display()))?;
    }
    print_json(&json!({
        "schema": SCHEMA,
        "config_hash": updated.hash(),
        "c0": report.calibration.c0,
        "k": report.calibration.k,
        "slope": report.slope,
        "grid": report.grid,
        "theta": report.theta,
        "config": updated,
    }))
}
