//! Command-line front end.
//!
//! Reports go to stdout as JSON or CSV, diagnostics to stderr. Exit status is
//! 0 on success, 2 for usage or validation errors and 3 for numerical
//! failures. Real-valued options accept a `pi` suffix (`0.5pi`, `29pi`, `pi`)
//! meaning multiplication by π.
//!
//! An optional `--config FILE` holds `key = value` lines (TOML syntax) that
//! set defaults; flags given on the command line override them:
//!
//! ```text
//! tolerance = 1e-9   # perfect-transfer bound on 1 - |f|
//! samples = 100000   # scan grid size
//! ```

use std::f64::consts::PI;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::chain::{ChainSpec, Model};
use crate::designer::{design_closed_form, design_general, CouplingSolution, DesignRequest};
use crate::dynamics::{
    fidelity_scan, fidelity_scan_window, transition_amplitude, verify_perfect_transfer,
    DEFAULT_SAMPLES, DEFAULT_TOLERANCE,
};
use crate::entanglement::{
    concurrence_pure_boundary, concurrence_thermal_xxx4, sector_gibbs_boundary_state,
    wootters_concurrence,
};
use crate::error::Error;

/// Coupling J of the (1, J, 1) XXX chain and the centre of the search
/// window (in units of π) for the near-perfect transfer table.
pub const XXX4_TRANSFER_WINDOWS: [(f64, f64); 10] = [
    (1.0, 29.0),
    (2.0, 17.0),
    (3.0, 6.0),
    (4.0, 8.0),
    (5.0, 10.0),
    (6.0, 12.0),
    (7.0, 14.0),
    (8.0, 16.0),
    (9.0, 18.0),
    (10.0, 20.0),
];

#[derive(Debug, Parser)]
#[command(
    name = "pstchain",
    version,
    about = "Perfect state transfer spin-chain designer"
)]
struct Cli {
    /// Defaults file (`tolerance`, `samples`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Design couplings for perfect transfer at a given time.
    Design(DesignArgs),
    /// Scan |f(t)| over [0, tmax].
    Scan(ScanArgs),
    /// Check |f(t_p)| against the perfect-transfer tolerance.
    Verify(VerifyArgs),
    /// Boundary-pair concurrence.
    Entangle(EntangleArgs),
    /// Regenerate the four-site XXX spectrum (1) or transfer maxima (2).
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Closed,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Xx,
    Xxx,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Xx => Model::Xx,
            ModelArg::Xxx => Model::Xxx,
        }
    }
}

#[derive(Debug, Args)]
struct ChainArgs {
    #[arg(long, value_enum, default_value = "xx")]
    model: ModelArg,
    /// Comma-separated couplings J_1..J_{N-1}.
    #[arg(long, value_delimiter = ',', value_parser = parse_real, required = true, allow_negative_numbers = true)]
    couplings: Vec<f64>,
    /// Number of sites; must equal the coupling count plus one.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Debug, Args)]
struct DesignArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "xx")]
    model: ModelArg,
    /// Family parameters, comma-separated or repeated.
    #[arg(long = "param", value_delimiter = ',', allow_negative_numbers = true)]
    params: Vec<i64>,
    #[arg(long, value_parser = parse_real)]
    tp: f64,
    #[arg(long, value_enum, default_value = "auto")]
    method: Method,
    #[arg(long, value_parser = parse_real)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[command(flatten)]
    chain: ChainArgs,
    #[arg(long, value_parser = parse_real)]
    tmax: f64,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_parser = parse_real)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    chain: ChainArgs,
    #[arg(long, value_parser = parse_real)]
    tp: f64,
    #[arg(long, value_parser = parse_real)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct EntangleArgs {
    /// Middle coupling of the (1, J, 1) XXX chain; selects the thermal
    /// four-site estimator.
    #[arg(long, value_parser = parse_real, conflicts_with_all = ["couplings", "state"])]
    j: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    temp: Option<f64>,
    #[arg(long, value_enum, default_value = "xx")]
    model: ModelArg,
    #[arg(long, value_delimiter = ',', value_parser = parse_real, allow_negative_numbers = true)]
    couplings: Option<Vec<f64>>,
    /// 1-based eigenstate index in ascending energy order.
    #[arg(long, conflicts_with = "temp")]
    state: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    which: u8,
    /// Couplings J for the spectrum table.
    #[arg(long = "j", value_delimiter = ',', value_parser = parse_real, default_values = ["1", "2", "5"])]
    js: Vec<f64>,
    /// Grid size per search window for the transfer table.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    tolerance: Option<f64>,
    samples: Option<usize>,
}

/// Parse a real number with optional `pi` factor and divisor, e.g. `2.5`,
/// `0.5pi`, `pi/2`, `3pi/4`.
pub fn parse_real(raw: &str) -> Result<f64, String> {
    let number = |b: &str| {
        b.trim()
            .parse::<f64>()
            .map_err(|e| format!("`{raw}` is not a number: {e}"))
    };
    let s = raw.trim().to_ascii_lowercase().replace('π', "pi");
    let (head, divisor) = match s.split_once('/') {
        Some((h, d)) => (h.to_string(), number(d)?),
        None => (s, 1.0),
    };
    let value = match head.strip_suffix("pi") {
        Some(b) => {
            let coefficient = match b.trim_end_matches('*').trim() {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => number(c)?,
            };
            coefficient * PI
        }
        None => number(&head)?,
    } / divisor;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("`{raw}` is not finite"))
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, message: impl std::fmt::Display) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type CmdResult = std::result::Result<String, Failure>;

/// Parse `args` (program name first) and run the command.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome::ok(rendered)
            };
        }
    };
    let config = match load_config(cli.config.as_ref()) {
        Ok(c) => c,
        Err(msg) => return Outcome::fail(2, msg),
    };
    let result = match cli.command {
        Command::Design(a) => run_design(a, &config),
        Command::Scan(a) => run_scan(a, &config),
        Command::Verify(a) => run_verify(a, &config),
        Command::Entangle(a) => run_entangle(a),
        Command::Table(a) => run_table(a, &config),
    };
    match result {
        Ok(out) => Outcome::ok(out),
        Err(Failure::Usage(msg)) => Outcome::fail(2, msg),
        Err(Failure::Numerical(msg)) => Outcome::fail(3, msg),
    }
}

fn load_config(path: Option<&PathBuf>) -> std::result::Result<Config, String> {
    let Some(path) = path else {
        return Ok(Config::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
}

fn tolerance(flag: Option<f64>, config: &Config) -> std::result::Result<f64, Failure> {
    let tol = flag.or(config.tolerance).unwrap_or(DEFAULT_TOLERANCE);
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(Failure::Usage(format!("tolerance must be > 0, got {tol}")))
    }
}

fn chain_from(args: &ChainArgs) -> std::result::Result<ChainSpec, Failure> {
    if let Some(n) = args.n {
        if n != args.couplings.len() + 1 {
            return Err(Failure::Usage(format!(
                "--n {n} requires {} couplings, got {}",
                n.saturating_sub(1),
                args.couplings.len()
            )));
        }
    }
    Ok(ChainSpec::new(args.model.into(), args.couplings.clone())?)
}

fn closed_form_param_count(n_sites: usize) -> Option<usize> {
    match n_sites {
        3 => Some(0),
        4 => Some(2),
        5 | 6 | 8 => Some(1),
        7 => Some(3),
        _ => None,
    }
}

#[derive(Serialize)]
struct DesignReport<'a> {
    couplings: &'a [f64],
    target_spectrum: &'a [f64],
    achieved_spectrum: &'a [f64],
    spectral_residual: f64,
    t_p: f64,
    fidelity_at_tp: f64,
}

fn run_design(args: DesignArgs, config: &Config) -> CmdResult {
    if args.model != ModelArg::Xx {
        return Err(Failure::Usage(
            "design supports only the xx model".to_string(),
        ));
    }
    let _ = tolerance(args.tol, config)?;
    let req = DesignRequest::new(args.n, args.tp, args.params)?;
    let use_closed = match args.method {
        Method::Closed => true,
        Method::General => false,
        Method::Auto => closed_form_param_count(req.n_sites) == Some(req.params.len()),
    };
    let solution: CouplingSolution = if use_closed {
        design_closed_form(&req)?
    } else {
        design_general(&req)?
    };
    let fidelity = transition_amplitude(&solution.chain(), solution.t_p)?.norm();
    match args.format {
        Format::Json => to_json(&DesignReport {
            couplings: &solution.couplings,
            target_spectrum: &solution.target_spectrum,
            achieved_spectrum: &solution.achieved_spectrum,
            spectral_residual: solution.spectral_residual,
            t_p: solution.t_p,
            fidelity_at_tp: fidelity,
        }),
        Format::Csv => {
            let mut out = String::from("bond,coupling\n");
            for (i, j) in solution.couplings.iter().enumerate() {
                let _ = writeln!(out, "{},{}", i + 1, num(*j));
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct ScanReport<'a> {
    model: Model,
    couplings: &'a [f64],
    max_fidelity: f64,
    max_probability: f64,
    argmax_time: f64,
    is_perfect: bool,
    tolerance: f64,
    samples: &'a [(f64, f64)],
}

fn run_scan(args: ScanArgs, config: &Config) -> CmdResult {
    let chain = chain_from(&args.chain)?;
    let tol = tolerance(args.tol, config)?;
    let samples = args.samples.or(config.samples).unwrap_or(DEFAULT_SAMPLES);
    let report = fidelity_scan(&chain, args.tmax, samples, tol)?;
    match args.format {
        Format::Csv => {
            let mut out = String::with_capacity(report.samples.len() * 40);
            out.push_str("t,fidelity\n");
            for (t, f) in &report.samples {
                let _ = writeln!(out, "{},{}", num(*t), num(*f));
            }
            Ok(out)
        }
        Format::Json => to_json(&ScanReport {
            model: chain.model(),
            couplings: chain.couplings(),
            max_fidelity: report.max_fidelity,
            max_probability: report.max_probability(),
            argmax_time: report.argmax_time,
            is_perfect: report.is_perfect,
            tolerance: report.tolerance_used,
            samples: &report.samples,
        }),
    }
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    model: Model,
    couplings: &'a [f64],
    t_p: f64,
    fidelity: f64,
    probability: f64,
    is_perfect: bool,
    tolerance: f64,
    phase_misalignments: &'a [f64],
}

fn run_verify(args: VerifyArgs, config: &Config) -> CmdResult {
    let chain = chain_from(&args.chain)?;
    let tol = tolerance(args.tol, config)?;
    let report = verify_perfect_transfer(&chain, args.tp, tol)?;
    let misalignments = report.phase_misalignments.clone().unwrap_or_default();
    match args.format {
        Format::Json => to_json(&VerifyReport {
            model: chain.model(),
            couplings: chain.couplings(),
            t_p: args.tp,
            fidelity: report.max_fidelity,
            probability: report.max_probability(),
            is_perfect: report.is_perfect,
            tolerance: tol,
            phase_misalignments: &misalignments,
        }),
        Format::Csv => Ok(format!(
            "t_p,fidelity,probability,is_perfect\n{},{},{},{}\n",
            num(args.tp),
            num(report.max_fidelity),
            num(report.max_probability()),
            report.is_perfect
        )),
    }
}

#[derive(Serialize)]
struct EntangleReport {
    estimator: &'static str,
    temperature: Option<f64>,
    state: Option<usize>,
    concurrence: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_concurrence: Option<f64>,
}

fn run_entangle(args: EntangleArgs) -> CmdResult {
    let report = if let Some(j) = args.j {
        let t = args
            .temp
            .ok_or_else(|| Failure::Usage("--j requires --temp".to_string()))?;
        let formula = concurrence_thermal_xxx4(j, t)?;
        let chain = ChainSpec::xxx(vec![1.0, j, 1.0])?;
        let oracle = wootters_concurrence(&sector_gibbs_boundary_state(&chain, t)?);
        EntangleReport {
            estimator: "thermal_xxx4",
            temperature: Some(t),
            state: None,
            concurrence: formula,
            oracle_concurrence: Some(oracle),
        }
    } else {
        let couplings = args.couplings.ok_or_else(|| {
            Failure::Usage("entangle needs --j/--temp or --couplings".to_string())
        })?;
        let chain = ChainSpec::new(args.model.into(), couplings)?;
        match (args.state, args.temp) {
            (Some(index), None) => EntangleReport {
                estimator: "pure_eigenstate",
                temperature: None,
                state: Some(index),
                concurrence: concurrence_pure_boundary(&chain, index)?,
                oracle_concurrence: None,
            },
            (None, Some(t)) => EntangleReport {
                estimator: "sector_gibbs",
                temperature: Some(t),
                state: None,
                concurrence: wootters_concurrence(&sector_gibbs_boundary_state(&chain, t)?),
                oracle_concurrence: None,
            },
            _ => {
                return Err(Failure::Usage(
                    "--couplings needs exactly one of --state or --temp".to_string(),
                ))
            }
        }
    };
    match args.format {
        Format::Json => to_json(&report),
        Format::Csv => Ok(format!(
            "estimator,concurrence\n{},{}\n",
            report.estimator,
            num(report.concurrence)
        )),
    }
}

#[derive(Serialize)]
struct SpectrumRow {
    #[serde(rename = "J")]
    j: f64,
    m: usize,
    energy: f64,
    components: Vec<f64>,
}

#[derive(Serialize)]
struct TransferRow {
    #[serde(rename = "J")]
    j: f64,
    t: f64,
    max_fidelity: f64,
}

fn run_table(args: TableArgs, config: &Config) -> CmdResult {
    match args.which {
        1 => {
            let mut rows = Vec::new();
            for &j in &args.js {
                let chain = ChainSpec::xxx(vec![1.0, j, 1.0])?;
                let d = chain.hamiltonian().eigen_decompose()?;
                for (m, (&e, v)) in d.eigenvalues().iter().zip(d.eigenvectors()).enumerate() {
                    rows.push(SpectrumRow {
                        j,
                        m: m + 1,
                        energy: e,
                        components: v.clone(),
                    });
                }
            }
            match args.format {
                Format::Json => to_json(&rows),
                Format::Csv => {
                    let mut out = String::from("J,m,energy,v1,v2,v3,v4\n");
                    for r in &rows {
                        let comps: Vec<String> = r.components.iter().map(|c| num(*c)).collect();
                        let _ = writeln!(
                            out,
                            "{},{},{},{}",
                            num(r.j),
                            r.m,
                            num(r.energy),
                            comps.join(",")
                        );
                    }
                    Ok(out)
                }
            }
        }
        _ => {
            let samples = args.samples.or(config.samples).unwrap_or(DEFAULT_SAMPLES);
            let tol = tolerance(None, config)?;
            let mut rows = Vec::new();
            for &(j, centre) in &XXX4_TRANSFER_WINDOWS {
                let chain = ChainSpec::xxx(vec![1.0, j, 1.0])?;
                let report = fidelity_scan_window(
                    &chain,
                    (centre - 1.0) * PI,
                    (centre + 1.0) * PI,
                    samples,
                    tol,
                )?;
                rows.push(TransferRow {
                    j,
                    t: report.argmax_time,
                    max_fidelity: report.max_fidelity,
                });
            }
            match args.format {
                Format::Json => to_json(&rows),
                Format::Csv => {
                    let mut out = String::from("J,t,max_fidelity\n");
                    for r in &rows {
                        let _ = writeln!(out, "{},{},{}", num(r.j), num(r.t), num(r.max_fidelity));
                    }
                    Ok(out)
                }
            }
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> CmdResult {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::Numerical(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Shortest representation that parses back to the same f64.
fn num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pi_suffix() {
        assert_eq!(parse_real("0.5pi").unwrap(), 0.5 * PI);
        assert_eq!(parse_real("29pi").unwrap(), 29.0 * PI);
        assert_eq!(parse_real("pi").unwrap(), PI);
        assert_eq!(parse_real("-pi").unwrap(), -PI);
        assert_eq!(parse_real("2*pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_real("1.25").unwrap(), 1.25);
        assert_eq!(parse_real("1e-3").unwrap(), 1e-3);
        assert_eq!(parse_real("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse_real("3pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_real("1/8").unwrap(), 0.125);
        assert!(parse_real("pi/0").is_err());
        assert!(parse_real("abc").is_err());
        assert!(parse_real("1e400").is_err());
    }

    #[test]
    fn number_formatting_round_trips() {
        for x in [
            0.0,
            1.0,
            -2.5,
            PI,
            1e-12,
            3.3e20,
            0.1 + 0.2,
            5f64.sqrt(),
            f64::MIN_POSITIVE,
        ] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn design_rejects_xxx() {
        let out = execute([
            "pstchain", "design", "--n", "4", "--model", "xxx", "--tp", "1",
        ]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("xx model"));
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        let out = execute([
            "pstchain",
            "scan",
            "--couplings",
            "1",
            "--tmax",
            "1",
            "--bogus",
            "1",
        ]);
        assert_eq!(out.code, 2);
    }

    #[test]
    fn n_must_match_couplings() {
        let out = execute([
            "pstchain",
            "verify",
            "--couplings",
            "1,1",
            "--n",
            "4",
            "--tp",
            "1",
        ]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("--n 4"));
    }

    #[test]
    fn closed_form_parameter_counts() {
        assert_eq!(closed_form_param_count(4), Some(2));
        assert_eq!(closed_form_param_count(7), Some(3));
        assert_eq!(closed_form_param_count(12), None);
    }
}
