//! Command-line front end: point generation, verification, audits, tables,
//! and the `reproduce` entry point for the acceptance experiments.

pub mod commands;
pub mod experiments;
pub mod manifest;

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use manifest::RunManifest;

#[derive(Debug, Parser)]
#[command(name = "lowdisc", version, about = "Low-discrepancy point sets and finite-field tools")]
pub struct Cli {
    /// Print machine-readable JSON instead of the human-readable report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Directory for artifacts (CSV/JSON plus manifest.json).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for parallel sweeps; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Generate a point set and write it as CSV.
    Gen(GenArgs),
    /// Net verification and quality report for a CSV point set.
    Verify(VerifyArgs),
    /// Star discrepancy of a CSV point set.
    Discrepancy(DiscrepancyArgs),
    /// Worst-case error P_2 of a lattice rule.
    P2(P2Args),
    /// QMC estimate of a test integrand over a CSV point set.
    Integrate(IntegrateArgs),
    /// Validate an ISBN-10.
    Isbn(IsbnArgs),
    /// Complete-mapping sweep of f_b(X) = X^((q+1)/2) + bX over odd primes.
    Cmsweep(CmsweepArgs),
    /// Factor a polynomial over F_2, F_3 or F_5.
    Factor(FactorArgs),
    /// Inversive generator orbit, period and residue statistics.
    Inversive(InversiveArgs),
    /// Power-residue bound audit over all small parameters.
    InversiveAudit(AuditArgs),
    /// Zaremba witnesses for N = base^m.
    Zaremba(ZarembaArgs),
    /// Run one acceptance experiment (1-11, or `all`).
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Lattice,
    Kronecker,
    Halton,
    Hybrid,
    Digital,
    Niederreiter,
    Polylattice,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub kind: Kind,
    /// Number of points (lattice, kronecker, halton, hybrid).
    #[arg(long)]
    pub n: Option<u64>,
    /// Lattice generator, e.g. `1,34`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<i64>,
    /// Kronecker multipliers, e.g. `sqrt(2),sqrt(3)` or decimals.
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<String>,
    /// Halton bases, e.g. `2,3,5`.
    #[arg(long, value_delimiter = ',')]
    pub bases: Vec<u64>,
    /// First index of the Halton sequence.
    #[arg(long, default_value_t = 0)]
    pub start: u64,
    /// Accept Halton bases that are not pairwise coprime.
    #[arg(long)]
    pub allow_non_coprime: bool,
    /// Prime base (niederreiter, polylattice).
    #[arg(long)]
    pub b: Option<u32>,
    /// Dimension (niederreiter).
    #[arg(long)]
    pub s: Option<usize>,
    /// Net size exponent: N = b^m (niederreiter).
    #[arg(long)]
    pub m: Option<usize>,
    /// Emit block k of the sequence, indices k b^m .. (k+1) b^m (niederreiter).
    #[arg(long, default_value_t = 0)]
    pub block: u64,
    /// JSON file with a generating matrix set (digital).
    #[arg(long)]
    pub matrices: Option<PathBuf>,
    /// Modulus coefficients, lowest degree first (polylattice).
    #[arg(long)]
    pub f: Option<String>,
    /// Generators separated by `;`, each a coefficient list, e.g. `1;1,1` (polylattice).
    #[arg(long)]
    pub g: Option<String>,
    /// Write decimal coordinates even when exact fractions are available.
    #[arg(long)]
    pub float: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    pub points: PathBuf,
    #[arg(long)]
    pub b: u32,
    #[arg(long)]
    pub m: usize,
    /// Expected dimension (checked against the file).
    #[arg(long)]
    pub s: Option<usize>,
    /// Generating matrices for the dual computation; defaults to the JSON sidecar.
    #[arg(long)]
    pub matrices: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DiscrepancyArgs {
    pub points: PathBuf,
    /// Report a sampled lower bound with this many random boxes instead of the exact value.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct P2Args {
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<i64>,
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 2)]
    pub alpha: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Integrand {
    /// f = 1
    One,
    /// f = prod_j 2 x_j, integral 1
    Product,
    /// f = sum_j x_j^2, integral s/3
    SumSquares,
    /// indicator of the box [0, y), integral prod y_j
    Box,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IntegrateArgs {
    pub points: PathBuf,
    #[arg(long, value_enum, default_value_t = Integrand::Product)]
    pub integrand: Integrand,
    /// Upper corner for `--integrand box`.
    #[arg(long, value_delimiter = ',')]
    pub y: Vec<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IsbnArgs {
    pub code: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CmsweepArgs {
    #[arg(long, default_value_t = 49)]
    pub qmax: u32,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FactorArgs {
    #[arg(long)]
    pub p: Option<u32>,
    /// Coefficients, lowest degree first, e.g. `1,0,1`.
    #[arg(long)]
    pub poly: Option<String>,
    /// File with a `p=<prime>` header line and a coefficient line.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct InversiveArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub a: u32,
    #[arg(long)]
    pub b: u32,
    #[arg(long, default_value_t = 1)]
    pub u0: u32,
    /// Write the first N values u_n / q as CSV.
    #[arg(long)]
    pub emit_points: Option<usize>,
    /// Exclude 0 from the s-power residues.
    #[arg(long)]
    pub exclude_zero: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AuditArgs {
    #[arg(long, default_value_t = 101)]
    pub qmax: u32,
    #[arg(long, value_delimiter = ',', default_values_t = [0u32, 1])]
    pub b: Vec<u32>,
    #[arg(long, default_value_t = 1)]
    pub u0: u32,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ZarembaArgs {
    #[arg(long, default_value_t = 2)]
    pub base: u64,
    #[arg(long, default_value_t = 20)]
    pub mmax: u32,
    #[arg(long, default_value_t = 3)]
    pub c: u64,
    /// Exploratory: scan every N in 2..=ANY_N instead of powers of the base.
    #[arg(long)]
    pub any_n: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ReproduceArgs {
    /// Criterion number 1-11, or `all`.
    pub id: String,
}

/// Error surfaced to the user as `{"error": {"kind", "message"}}` with exit code 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliError {
    pub kind: String,
    pub message: String,
}

impl CliError {
    pub fn new(kind: &str, message: impl Display) -> Self {
        CliError { kind: kind.to_string(), message: message.to_string() }
    }
}

pub(crate) trait Context<T> {
    fn ctx(self, kind: &str) -> Result<T, CliError>;
}

impl<T, E: Display> Context<T> for Result<T, E> {
    fn ctx(self, kind: &str) -> Result<T, CliError> {
        self.map_err(|e| CliError::new(kind, e))
    }
}

/// What a subcommand produced.
#[derive(Debug, Default)]
pub struct Outcome {
    pub human: String,
    pub json: serde_json::Value,
    /// `(file name, contents)`, written under `--out`.
    pub artifacts: Vec<(String, Vec<u8>)>,
    /// Artifact printed to stdout in human mode when there is no `--out`.
    pub primary: Option<usize>,
    /// False for a completed run whose verdict is negative (invalid ISBN,
    /// bound violations, failed criterion); exits with 1.
    pub ok: bool,
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.threads {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build() {
            Ok(pool) => pool.install(|| commands::execute(&cli.command)),
            Err(e) => Err(CliError::new("threads", e)),
        },
        None => commands::execute(&cli.command),
    };
    let outcome = match result.and_then(|o| write_artifacts(&cli, o)) {
        Ok(o) => o,
        Err(err) => {
            let body = serde_json::json!({ "error": err });
            let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&body).expect("serializable"));
            if !cli.json {
                let _ = writeln!(stderr, "error ({}): {}", err.kind, err.message);
            }
            return 1;
        }
    };
    if cli.json {
        let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&outcome.json).expect("serializable"));
    } else {
        match (outcome.primary, &cli.out) {
            (Some(i), None) => {
                let _ = stdout.write_all(&outcome.artifacts[i].1);
            }
            _ => {
                let _ = write!(stdout, "{}", outcome.human);
            }
        }
    }
    if outcome.ok {
        0
    } else {
        1
    }
}

fn write_artifacts(cli: &Cli, outcome: Outcome) -> Result<Outcome, CliError> {
    let Some(dir) = &cli.out else { return Ok(outcome) };
    std::fs::create_dir_all(dir).ctx("io")?;
    for (name, bytes) in &outcome.artifacts {
        std::fs::write(dir.join(name), bytes).ctx("io")?;
    }
    let params = serde_json::to_value(&cli.command).expect("serializable");
    let name = params["subcommand"].as_str().unwrap_or("unknown").to_string();
    let manifest = RunManifest::new(&name, params, &outcome.artifacts);
    let text = serde_json::to_string_pretty(&manifest).expect("serializable") + "\n";
    std::fs::write(dir.join("manifest.json"), text).ctx("io")?;
    Ok(outcome)
}
