use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qdeform_core::presentations::ActionConvention;
use qdeform_core::report::{diff_reports, validate_report, Report};
use qdeform_core::suites::{
    exit_status, list_checks, parse_range, run, ConfigError, EpsilonChoice, Mode, Suite, SuiteConfig,
};
use serde::Deserialize;

const EXIT_CONFIG: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "qdeform", version, about = "Exact verification of q-deformed Clifford and Hopf algebra identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the selected check suites and emit a report.
    Verify(VerifyArgs),
    /// Compare two JSON reports by status and residual.
    Diff {
        a: PathBuf,
        b: PathBuf,
        /// Residual difference tolerated before a change is listed.
        #[arg(long, default_value_t = 0.0)]
        tolerance: f64,
        /// Ignore residual changes.
        #[arg(long)]
        status_only: bool,
    },
    /// Print every check id with the claim it covers.
    ListChecks(SelectArgs),
    /// Validate report files against the schema.
    Validate { files: Vec<PathBuf> },
}

#[derive(Args, Default)]
struct SelectArgs {
    /// Suite to run (repeatable): clifford, qgamma, glq2, ch2, chq2, fierz, negative, all.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Action convention (repeatable): row-sum, column-sum, fixed-row, fixed-column.
    #[arg(long = "convention")]
    conventions: Vec<String>,
    /// Key-value TOML file mirroring the flags; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    select: SelectArgs,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    q_samples: Option<usize>,
    /// Sampling interval for q, as LO:HI.
    #[arg(long)]
    q_range: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Also fail when a report check does not reproduce its published target.
    #[arg(long)]
    strict: bool,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report here (atomically) instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Spinor metric: standard or classical.
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    irrep_draws: Option<usize>,
    /// Record wall-clock time per check (breaks byte-identical output).
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    suite: Option<Vec<String>>,
    convention: Option<Vec<String>>,
    mode: Option<String>,
    q_samples: Option<usize>,
    q_range: Option<String>,
    seed: Option<u64>,
    strict: Option<bool>,
    format: Option<Format>,
    out: Option<PathBuf>,
    epsilon: Option<String>,
    max_len: Option<usize>,
    budget: Option<u64>,
    tolerance: Option<f64>,
    irrep_draws: Option<usize>,
    timings: Option<bool>,
}

enum Failure {
    Config(String),
    Io(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.to_string())
    }
}

fn load_file(path: &Option<PathBuf>) -> Result<FileConfig, Failure> {
    let Some(path) = path else { return Ok(FileConfig::default()) };
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

fn apply_selection(cfg: &mut SuiteConfig, suites: &[String], conventions: &[String]) -> Result<(), Failure> {
    if !suites.is_empty() {
        let mut set = BTreeSet::new();
        for s in suites {
            set.extend(Suite::parse(s)?);
        }
        cfg.suites = set;
    }
    if !conventions.is_empty() {
        cfg.conventions = conventions
            .iter()
            .map(|c| ActionConvention::parse(c).ok_or_else(|| ConfigError::UnknownConvention(c.clone())))
            .collect::<Result<_, _>>()?;
    }
    Ok(())
}

fn selection(args: &SelectArgs, file: &FileConfig) -> Result<SuiteConfig, Failure> {
    let mut cfg = SuiteConfig::default();
    apply_selection(
        &mut cfg,
        file.suite.as_deref().unwrap_or_default(),
        file.convention.as_deref().unwrap_or_default(),
    )?;
    apply_selection(&mut cfg, &args.suites, &args.conventions)?;
    Ok(cfg)
}

struct Plan {
    cfg: SuiteConfig,
    format: Format,
    out: Option<PathBuf>,
}

fn plan(args: &VerifyArgs) -> Result<Plan, Failure> {
    let file = load_file(&args.select.config)?;
    let mut cfg = selection(&args.select, &file)?;
    if let Some(m) = args.mode.as_ref().or(file.mode.as_ref()) {
        cfg.mode = Mode::parse(m)?;
    }
    if let Some(r) = args.q_range.as_ref().or(file.q_range.as_ref()) {
        cfg.q_range = parse_range(r)?;
    }
    if let Some(e) = args.epsilon.as_ref().or(file.epsilon.as_ref()) {
        cfg.epsilon = EpsilonChoice::parse(e)?;
    }
    cfg.q_samples = args.q_samples.or(file.q_samples).unwrap_or(cfg.q_samples);
    cfg.seed = args.seed.or(file.seed).unwrap_or(cfg.seed);
    cfg.max_len = args.max_len.or(file.max_len).unwrap_or(cfg.max_len);
    cfg.budget = args.budget.or(file.budget).unwrap_or(cfg.budget);
    cfg.tolerance = args.tolerance.or(file.tolerance).unwrap_or(cfg.tolerance);
    cfg.irrep_draws = args.irrep_draws.or(file.irrep_draws).unwrap_or(cfg.irrep_draws);
    cfg.strict = args.strict || file.strict.unwrap_or(false);
    cfg.timings = args.timings || file.timings.unwrap_or(false);
    cfg.validate()?;
    Ok(Plan {
        cfg,
        format: args.format.or(file.format).unwrap_or(Format::Text),
        out: args.out.clone().or(file.out),
    })
}

/// Writes via a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let Plan { cfg, format, out } = plan(args)?;
    let report = run(&cfg)?;
    let json = report.to_json();
    if let Err(e) = validate_report(&json) {
        return Err(Failure::Io(format!("refusing to emit invalid report: {e}")));
    }
    let body = match format {
        Format::Json => report.to_json_string(),
        Format::Text => report.to_text(),
    };
    match out {
        Some(path) => write_atomic(&path, &body)?,
        None => print!("{body}"),
    }
    Ok(exit_status(&report, cfg.strict) as u8)
}

fn read_report(path: &Path) -> Result<Report, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    Report::from_json(&value).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

fn diff(a: &Path, b: &Path, tolerance: f64, status_only: bool) -> Result<u8, Failure> {
    let lines: Vec<String> = diff_reports(&read_report(a)?, &read_report(b)?, tolerance)
        .into_iter()
        .filter(|l| !status_only || !l.contains(": residual "))
        .collect();
    for l in &lines {
        println!("{l}");
    }
    Ok(u8::from(!lines.is_empty()))
}

fn validate(files: &[PathBuf]) -> Result<u8, Failure> {
    let mut bad = false;
    for path in files {
        let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        let verdict = serde_json::from_str::<serde_json::Value>(&text)
            .map_err(|e| e.to_string())
            .and_then(|v| validate_report(&v).map_err(|e| e.to_string()));
        match verdict {
            Ok(()) => println!("{}: valid", path.display()),
            Err(e) => {
                bad = true;
                println!("{}: invalid: {e}", path.display());
            }
        }
    }
    Ok(u8::from(bad))
}

fn list(args: &SelectArgs) -> Result<u8, Failure> {
    let file = load_file(&args.config)?;
    let cfg = selection(args, &file)?;
    for (id, claim) in list_checks(&cfg) {
        println!("{id}\t{claim}");
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Verify(a) => verify(a),
        Command::Diff { a, b, tolerance, status_only } => diff(a, b, *tolerance, *status_only),
        Command::ListChecks(a) => list(a),
        Command::Validate { files } => validate(files),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_IO)
        }
    }
}
