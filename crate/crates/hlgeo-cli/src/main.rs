//! `hlgeo`: reports, discrepancy ledgers, geodesic integration and the
//! verification suite for left-invariant almost Hermite-Lorentz structures.
//!
//! Exit codes: 0 success, 1 verification failures, 2 usage errors, 3 parse
//! errors, 4 validity-gate failures, 5 geodesic blow-up.

mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use hlgeo_core::{
    build, canonical_json_string, classify_growth, full_report, integrate_rk4, ledger,
    ledger_to_json, ledger_to_text, parse_algebra_file, rational_to_f64, validate,
    AlgebraFileError, CatalogName, EulerArnoldSystem, HomogeneousSpaceSpec, Vector,
};

#[derive(Parser)]
#[command(name = "hlgeo", version, about = "exact geometry of left-invariant almost Hermite-Lorentz structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in algebras.
    Catalog {
        #[arg(long, default_value = "text", value_parser = ["text", "json"])]
        format: String,
    },
    /// Compute the full geometry report for a catalog algebra or a JSON file.
    Report {
        /// Catalog name (see `catalog`) or path to an algebra file.
        algebra: String,
        #[arg(long, default_value = "text", value_parser = ["text", "json"])]
        format: String,
        /// Also emit the discrepancy ledger against the published tables
        /// (catalog algebras only).
        #[arg(long)]
        ledger: bool,
        /// Include a generation timestamp (breaks byte-determinism).
        #[arg(long)]
        timestamps: bool,
    },
    /// Integrate the reduced geodesic equation and report conserved drifts.
    Geodesic {
        /// Catalog name or path to an algebra file.
        algebra: String,
        /// Initial state: comma-separated rationals, one per basis vector.
        #[arg(long)]
        x0: String,
        #[arg(long, default_value_t = 10.0)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        /// Write the trajectory as CSV to this path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record every Nth step (drift maxima still cover every step).
        #[arg(long, default_value_t = 1)]
        stride: usize,
    },
    /// Run the verification suite: identities, published-table regression,
    /// verdicts, isotropy, and geodesic conservation.
    Verify {
        /// Verify every catalog algebra.
        #[arg(long, conflicts_with = "algebra")]
        all: bool,
        /// A single catalog algebra to verify.
        algebra: Option<String>,
    },
}

/// Errors mapped onto the documented exit codes.
pub enum CliError {
    Usage(String),
    Parse(String),
    Validity(String),
    Blowup(String),
    Failures(usize),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failures(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Validity(_) => 4,
            CliError::Blowup(_) => 5,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => format!("error: {m}"),
            CliError::Parse(m) => format!("parse error: {m}"),
            CliError::Validity(m) => format!("validity error: {m}"),
            CliError::Blowup(m) => format!("blow-up: {m}"),
            CliError::Failures(n) => format!("verification failed: {n} check(s) did not pass"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Catalog { format } => cmd_catalog(&format),
        Command::Report { algebra, format, ledger, timestamps } => {
            cmd_report(&algebra, &format, ledger, timestamps)
        }
        Command::Geodesic { algebra, x0, t_end, dt, out, stride } => {
            cmd_geodesic(&algebra, &x0, t_end, dt, out.as_deref(), stride)
        }
        Command::Verify { all, algebra } => verify::cmd_verify(all, algebra.as_deref()),
    }
}

/// Resolves an `algebra` argument: a catalog name first, else a file path.
fn resolve_algebra(arg: &str) -> Result<(HomogeneousSpaceSpec, Option<CatalogName>), CliError> {
    if let Ok(name) = CatalogName::parse(arg) {
        return Ok((build(name), Some(name)));
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(CliError::Usage(format!(
            "unknown algebra `{arg}`: not a catalog name (see `hlgeo catalog`) and no such file"
        )));
    }
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read `{arg}`: {e}")))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| arg.to_string());
    let spec = parse_algebra_file(&text, &stem).map_err(|e| match e {
        AlgebraFileError::Json { .. } => CliError::Parse(format!("{arg}: {e}")),
        AlgebraFileError::Schema(_) => CliError::Parse(format!("{arg}: {e}")),
    })?;
    validate(&spec).map_err(|v| CliError::Validity(format!("{arg}: {v}")))?;
    Ok((spec, None))
}

fn cmd_catalog(format: &str) -> Result<(), CliError> {
    match format {
        "json" => {
            let entries: Vec<Value> = CatalogName::ALL
                .iter()
                .map(|n| {
                    json!({
                        "name": n.as_str(),
                        "description": n.description(),
                        "section": n.section(),
                    })
                })
                .collect();
            print!("{}", canonical_json_string(&Value::Array(entries)));
        }
        _ => {
            let width = CatalogName::ALL
                .iter()
                .map(|n| n.as_str().len())
                .max()
                .unwrap_or(0);
            for n in CatalogName::ALL {
                println!(
                    "{:width$}  {} ({})",
                    n.as_str(),
                    n.description(),
                    n.section(),
                    width = width
                );
            }
        }
    }
    Ok(())
}

fn unix_timestamp() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn cmd_report(
    algebra: &str,
    format: &str,
    with_ledger: bool,
    timestamps: bool,
) -> Result<(), CliError> {
    let (spec, catalog_name) = resolve_algebra(algebra)?;
    if with_ledger && catalog_name.is_none() {
        return Err(CliError::Usage(
            "--ledger compares against the published tables and needs a catalog algebra".into(),
        ));
    }
    let report = full_report(&spec);
    match format {
        "json" => {
            let mut doc = match report.to_json() {
                Value::Object(m) => m,
                _ => Map::new(),
            };
            if let Some(name) = catalog_name {
                if with_ledger {
                    doc.insert("discrepancy_ledger".into(), ledger_to_json(&ledger(&spec, name)));
                }
            }
            if timestamps {
                doc.insert("generated_at_unix".into(), json!(unix_timestamp()));
            }
            print!("{}", canonical_json_string(&Value::Object(doc)));
        }
        _ => {
            if timestamps {
                println!("generated_at_unix: {}", unix_timestamp());
            }
            print!("{}", report.to_text());
            if let Some(name) = catalog_name {
                if with_ledger {
                    println!();
                    print!("{}", ledger_to_text(&ledger(&spec, name)));
                }
            }
        }
    }
    Ok(())
}

fn parse_x0(s: &str, dim: usize) -> Result<Vector<f64>, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != dim {
        return Err(CliError::Usage(format!(
            "--x0 has {} entries, expected {dim}",
            parts.len()
        )));
    }
    let mut coords = Vec::with_capacity(dim);
    for p in parts {
        let r = hlgeo_core::parse_rational(p.trim())
            .map_err(|e| CliError::Usage(format!("--x0: {e}")))?;
        coords.push(rational_to_f64(&r));
    }
    Ok(Vector::new(coords))
}

fn cmd_geodesic(
    algebra: &str,
    x0: &str,
    t_end: f64,
    dt: f64,
    out: Option<&Path>,
    stride: usize,
) -> Result<(), CliError> {
    if !(dt > 0.0) || !(t_end > 0.0) || stride == 0 {
        return Err(CliError::Usage("t-end, dt and stride must be positive".into()));
    }
    let (spec, _) = resolve_algebra(algebra)?;
    let x0 = parse_x0(x0, spec.alg.dim())?;
    let system = EulerArnoldSystem::new(&spec.alg, &spec.metric)
        .map_err(|e| CliError::Validity(e.to_string()))?;

    let result = integrate_rk4(&system, &x0, t_end, dt, stride);
    let traj = match &result {
        Ok(t) => t,
        Err(b) => b.partial.as_ref(),
    };

    if let Some(path) = out {
        write_csv(path, traj, spec.alg.dim())
            .map_err(|e| CliError::Usage(format!("cannot write `{}`: {e}", path.display())))?;
    }

    println!("algebra: {}", spec.name);
    let steps = (traj.final_state().t / dt).round() as usize;
    println!("steps: {steps} (dt = {dt}, recorded every {stride})");
    println!("final t: {}", traj.final_state().t);
    println!("max |coordinate|: {:e}", traj.max_coord);
    println!("energy drift: {:e}", traj.max_energy_drift);
    println!("casimir drift: {:e}", traj.max_casimir_drift);
    println!("growth class: {}", classify_growth(traj).as_str());

    match result {
        Ok(_) => Ok(()),
        Err(b) => Err(CliError::Blowup(format!(
            "coordinate magnitude {:e} exceeded {:e}; last good t = {}",
            b.magnitude, b.threshold, b.t
        ))),
    }
}

fn write_csv(
    path: &Path,
    traj: &hlgeo_core::GeodesicTrajectory,
    dim: usize,
) -> std::io::Result<()> {
    use std::io::Write;
    let file = fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(file);
    let coords: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
    writeln!(w, "t,{},energy,casimir", coords.join(","))?;
    for (idx, state) in traj.states.iter().enumerate() {
        let xs: Vec<String> = state.x.coords().iter().map(f64::to_string).collect();
        writeln!(
            w,
            "{},{},{},{}",
            state.t,
            xs.join(","),
            traj.energy_trace[idx],
            traj.casimir_trace[idx]
        )?;
    }
    Ok(())
}
