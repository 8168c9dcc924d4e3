//! Command-line front end: seminorm computations, verification suites,
//! null-sequence and truncation sweeps, all emitted as deterministic CSV.
//!
//! The schema is fixed — `case,field,n,s,p,quantity,value,error,extra` —
//! with floats at 17 significant digits and a deterministic row order, so
//! two runs with the same configuration (seed included) produce
//! byte-identical files.  The `rates` command additionally writes a
//! gnuplot-ready two-column data file next to the CSV.
//!
//! Exit codes: `0` success, `1` configuration error (the message names the
//! offending flag), `2` a verified inequality failed (the message names the
//! inequality and the field).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::fields::{by_label, rat, Rational, Regime, SeminormParams};
use crate::quadrature::{Method, QuadratureSpec};
use crate::seminorms::gagliardo_seminorm;
use crate::verify::{
    conformal_sweep, fit_rate, full_suite, mollification_sweep, superconformal_sweep,
    truncation_sweep, InequalityReport, SuiteConfig, SweepPoint,
};

/// Which experiment family a command runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RegimeChoice {
    /// `sp > n`: rescaled plateaus, power-law decay `m^{n/p−s}`.
    Superconformal,
    /// `sp = n`: logarithmic cutoffs, decay `(1/log m)^{1−s/n}`.
    Conformal,
}

/// Experiment selector for the `rates` command.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    /// Null sequence at `sp > n`.
    Superconformal,
    /// Null sequence at `sp = n`.
    Conformal,
    /// Mollification error `[u∗ρ_m − u]`.
    Mollification,
    /// Truncation error `[(1 − η_j)·u]`.
    Truncation,
}

/// Everything `run` needs: the command tag plus the shared knobs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub field_label: String,
    pub params: SeminormParams,
    pub quadrature: QuadratureSpec,
    pub output_path: PathBuf,
    pub sweep: Option<Vec<u32>>,
}

/// The command tag, with per-command extras.
#[derive(Clone, Debug)]
pub enum Command {
    /// One Gagliardo seminorm, one CSV row.
    Seminorm,
    /// Inequality checks: one named check or the full suite.
    Verify { suite: String, n_filter: Option<u8> },
    /// Null-sequence sweep plus a fitted rate row.
    Nullseq { regime: RegimeChoice },
    /// Truncation-error sweep plus a rate or bound row.
    Truncate,
    /// A sweep experiment plus a gnuplot two-column data file.
    Rates { experiment: Experiment },
    /// Full suite and the standard sweeps in one artifact.
    Report,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Seminorm => "seminorm",
            Command::Verify { .. } => "verify",
            Command::Nullseq { .. } => "nullseq",
            Command::Truncate => "truncate",
            Command::Rates { .. } => "rates",
            Command::Report => "report",
        }
    }
}

/// One row of the fixed nine-column CSV schema.
#[derive(Clone, Debug)]
pub struct CsvRow {
    pub case: String,
    pub field: String,
    pub n: u8,
    pub s: Rational,
    pub p: Rational,
    pub quantity: String,
    pub value: f64,
    pub error: f64,
    pub extra: String,
}

/// Serialize rows under the header
/// `case,field,n,s,p,quantity,value,error,extra`, floats at 17 significant
/// digits, one `\n` per line (trailing newline included).
pub fn emit_csv(rows: &[CsvRow], path: &Path) -> Result<()> {
    let mut out = String::from("case,field,n,s,p,quantity,value,error,extra\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{:.16e},{:.16e},{}",
            r.case, r.field, r.n, r.s, r.p, r.quantity, r.value, r.error, r.extra
        )
        .expect("writing to a String cannot fail");
    }
    std::fs::write(path, out).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

// ---------------------------------------------------------------------------
// Argument parsing
// ---------------------------------------------------------------------------

#[derive(Parser, Debug)]
#[command(
    name = "gagliardo",
    about = "Fractional Sobolev seminorms and inequality verification",
    disable_help_subcommand = true
)]
struct CliArgs {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Compute the W^{s,p} seminorm of one field.
    Seminorm(CommonArgs),
    /// Run one named inequality check or the full suite.
    Verify {
        /// Check name (sobolev, morrey, …) or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Sweep a null-sequence family and fit its decay rate.
    Nullseq {
        /// Which family: superconformal (sp > n) or conformal (sp = n).
        #[arg(long, value_enum)]
        regime: RegimeChoice,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Sweep the truncation error of a field over cutoff indices.
    Truncate(CommonArgs),
    /// Run a sweep experiment and emit CSV plus a gnuplot .dat file.
    Rates {
        /// Experiment family.
        #[arg(value_enum)]
        experiment: Experiment,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Full verification suite plus the standard sweeps, one CSV.
    Report(CommonArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Field label from the catalog (hat, gauss, bump, powtail:alpha=0.75, …).
    #[arg(long)]
    field: Option<String>,
    /// Ambient dimension (1 or 2).
    #[arg(long)]
    n: Option<u8>,
    /// Smoothness s in (0,1]; accepts decimals or rationals like 3/4.
    #[arg(long)]
    s: Option<String>,
    /// Integrability p ≥ 1; accepts decimals or rationals like 4/3.
    #[arg(long)]
    p: Option<String>,
    /// Quadrature method: tensor or montecarlo.
    #[arg(long)]
    method: Option<MethodArg>,
    /// Deterministic mesh resolution (cells per axis).
    #[arg(long)]
    cells: Option<u32>,
    /// Monte Carlo sample count.
    #[arg(long)]
    samples: Option<u64>,
    /// Override the automatic truncation radius.
    #[arg(long)]
    truncation: Option<f64>,
    /// Override the diagonal band width of the double-integral splitting.
    #[arg(long)]
    band: Option<f64>,
    /// Random seed (Monte Carlo sampling; recorded for reproducibility).
    #[arg(long)]
    seed: Option<u64>,
    /// Sweep indices, comma-separated (e.g. 4,16,64,256).
    #[arg(long, value_delimiter = ',')]
    sweep: Option<Vec<u32>>,
    /// Output CSV path (default: <command>.csv).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Tensor,
    Montecarlo,
}

/// Parse `--s`/`--p` style exponents: `0.75`, `3/4`, or `2`.
fn parse_ratio(flag: &str, text: &str) -> Result<Rational> {
    let parse = || -> Option<Rational> {
        if let Some((num, den)) = text.split_once('/') {
            let num: i64 = num.trim().parse().ok()?;
            let den: i64 = den.trim().parse().ok()?;
            if den == 0 {
                return None;
            }
            Some(rat(num, den))
        } else if let Ok(int) = text.trim().parse::<i64>() {
            Some(rat(int, 1))
        } else {
            let f: f64 = text.trim().parse().ok()?;
            Rational::approximate_float(f)
        }
    };
    parse().ok_or_else(|| {
        Error::Config(format!("{flag}: '{text}' is not a number or num/den rational"))
    })
}

/// Build a [`RunConfig`] from raw command-line arguments (first element is
/// the program name).  All flag validation errors name the flag.
pub fn parse_args<I, T>(args: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = CliArgs::try_parse_from(args).map_err(|e| Error::Config(e.to_string()))?;
    let (command, common) = match cli.command {
        CliCommand::Seminorm(c) => (Command::Seminorm, c),
        CliCommand::Verify { suite, common } => {
            let n_filter = common.n;
            (Command::Verify { suite, n_filter }, common)
        }
        CliCommand::Nullseq { regime, common } => (Command::Nullseq { regime }, common),
        CliCommand::Truncate(c) => (Command::Truncate, c),
        CliCommand::Rates { experiment, common } => (Command::Rates { experiment }, common),
        CliCommand::Report(c) => (Command::Report, c),
    };

    let n = common.n.unwrap_or(1);
    let s = match &common.s {
        Some(text) => parse_ratio("--s", text)?,
        None => rat(1, 2),
    };
    // The conformal null sequence lives at sp = n; infer p when omitted.
    let p = match &common.p {
        Some(text) => parse_ratio("--p", text)?,
        None => match &command {
            Command::Nullseq { regime: RegimeChoice::Conformal }
            | Command::Rates { experiment: Experiment::Conformal } => {
                rat(i64::from(n), 1) / s
            }
            _ => rat(2, 1),
        },
    };
    let params = SeminormParams::new(n, s, p).map_err(|e| {
        Error::Config(format!("--n/--s/--p: {e}"))
    })?;

    let mut quadrature = QuadratureSpec::default();
    if let Some(m) = common.method {
        quadrature.method = match m {
            MethodArg::Tensor => Method::Tensor,
            MethodArg::Montecarlo => Method::MonteCarlo,
        };
    }
    if let Some(c) = common.cells {
        if c == 0 {
            return Err(Error::Config("--cells must be positive".into()));
        }
        quadrature.cells_per_axis = c;
    }
    if let Some(sm) = common.samples {
        if sm == 0 {
            return Err(Error::Config("--samples must be positive".into()));
        }
        quadrature.samples = sm;
    }
    if let Some(t) = common.truncation {
        if !(t > 0.0) {
            return Err(Error::Config("--truncation must be positive".into()));
        }
        quadrature.truncation_radius = Some(t);
    }
    if let Some(b) = common.band {
        if !(b > 0.0) {
            return Err(Error::Config("--band must be positive".into()));
        }
        quadrature.diagonal_band = Some(b);
    }
    if let Some(seed) = common.seed {
        quadrature.seed = seed;
    }

    let output_path = common
        .out
        .unwrap_or_else(|| PathBuf::from(format!("{}.csv", command.name())));
    Ok(RunConfig {
        command,
        field_label: common.field.unwrap_or_else(|| "hat".to_string()),
        params,
        quadrature,
        output_path,
        sweep: common.sweep,
    })
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

fn format_rat(x: f64) -> String {
    format!("{x:.16e}")
}

fn quad_tag(spec: &QuadratureSpec) -> String {
    let method = match spec.method {
        Method::Tensor => "tensor",
        Method::MonteCarlo => "montecarlo",
    };
    format!("method={method};cells={};seed={}", spec.cells_per_axis, spec.seed)
}

fn report_row(r: &InequalityReport) -> CsvRow {
    let error = if r.rhs.value > 0.0 {
        (r.lhs.error_indicator + r.ratio * r.rhs.error_indicator) / r.rhs.value
    } else {
        0.0
    };
    let mut extra = format!(
        "lhs={};rhs={};budget={};pass={}",
        format_rat(r.lhs.value),
        format_rat(r.rhs.value),
        r.budget,
        r.pass
    );
    if !r.extra.is_empty() {
        extra.push(';');
        extra.push_str(&r.extra);
    }
    CsvRow {
        case: r.name.to_string(),
        field: r.field_label.clone(),
        n: r.params.n(),
        s: r.params.s(),
        p: r.params.p(),
        quantity: "ratio".into(),
        value: r.ratio,
        error,
        extra,
    }
}

fn sweep_rows(
    case: &str,
    params: &SeminormParams,
    quantity: &str,
    index_key: &str,
    pts: &[SweepPoint],
    label_of: impl Fn(u32) -> String,
) -> Vec<CsvRow> {
    pts.iter()
        .map(|pt| {
            let idx = pt.index as u32;
            CsvRow {
                case: case.into(),
                field: label_of(idx),
                n: params.n(),
                s: params.s(),
                p: params.p(),
                quantity: quantity.into(),
                value: pt.value,
                error: pt.error,
                extra: format!("{index_key}={idx}"),
            }
        })
        .collect()
}

/// Fit a rate over sweep points; `log_abscissa` fits against `log(index)`
/// (the conformal family decays in powers of `log m`, not of `m`).
fn fit_row(
    case: &str,
    field: &str,
    params: &SeminormParams,
    pts: &[SweepPoint],
    log_abscissa: bool,
) -> Result<CsvRow> {
    let xs: Vec<f64> = pts
        .iter()
        .map(|p| if log_abscissa { p.index.ln() } else { p.index })
        .collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.value).collect();
    let fit = fit_rate(&xs, &ys).map_err(|e| Error::Config(format!("--sweep: {e}")))?;
    Ok(CsvRow {
        case: case.into(),
        field: field.into(),
        n: params.n(),
        s: params.s(),
        p: params.p(),
        quantity: "fit_slope".into(),
        value: fit.slope,
        error: fit.rss,
        extra: format!(
            "abscissa={};intercept={};points={}",
            if log_abscissa { "log_index" } else { "index" },
            format_rat(fit.intercept),
            fit.points
        ),
    })
}

fn require_sweep<'a>(config: &'a RunConfig) -> Result<&'a [u32]> {
    match config.sweep.as_deref() {
        Some(sw) if !sw.is_empty() => Ok(sw),
        _ => Err(Error::Config(format!(
            "--sweep: the {} command needs a non-empty comma-separated index list",
            config.command.name()
        ))),
    }
}

fn nullseq_rows(
    case: &str,
    regime: RegimeChoice,
    config: &RunConfig,
) -> Result<(Vec<CsvRow>, Vec<SweepPoint>)> {
    let sweep = require_sweep(config)?;
    let params = &config.params;
    let (pts, label_prefix, log_abscissa, family) = match regime {
        RegimeChoice::Superconformal => (
            superconformal_sweep(params, sweep, &config.quadrature)?,
            "plateau",
            false,
            "superconformal",
        ),
        RegimeChoice::Conformal => (
            conformal_sweep(params, sweep, &config.quadrature)?,
            "psi",
            true,
            "conformal",
        ),
    };
    let mut rows = sweep_rows(case, params, "seminorm", "m", &pts, |m| {
        format!("{label_prefix}_{m}")
    });
    rows.push(fit_row(case, family, params, &pts, log_abscissa)?);
    Ok((rows, pts))
}

fn truncation_rows(case: &str, config: &RunConfig) -> Result<(Vec<CsvRow>, Vec<SweepPoint>)> {
    let sweep = require_sweep(config)?;
    let u = by_label(config.params.n(), &config.field_label)
        .map_err(|e| Error::Config(format!("--field: {e}")))?;
    let params = &config.params;
    let pts = truncation_sweep(&u, params, sweep, &config.quadrature)?;
    let mut rows = sweep_rows(case, params, "truncation_error", "j", &pts, |_| {
        config.field_label.clone()
    });
    // In the bounded regime the errors need not decay; report the sup instead
    // of a rate.  Elsewhere fit the decay when the sweep is long enough.
    if params.regime() == Regime::Superconformal || pts.len() < 3 {
        let sup = pts.iter().fold(0.0f64, |a, p| a.max(p.value));
        let err = pts.iter().fold(0.0f64, |a, p| a.max(p.error));
        rows.push(CsvRow {
            case: case.into(),
            field: config.field_label.clone(),
            n: params.n(),
            s: params.s(),
            p: params.p(),
            quantity: "sup_bound".into(),
            value: sup,
            error: err,
            extra: format!("points={}", pts.len()),
        });
    } else {
        rows.push(fit_row(case, &config.field_label, params, &pts, false)?);
    }
    Ok((rows, pts))
}

fn mollification_rows(
    case: &str,
    config: &RunConfig,
) -> Result<(Vec<CsvRow>, Vec<SweepPoint>)> {
    let sweep = require_sweep(config)?;
    let u = by_label(config.params.n(), &config.field_label)
        .map_err(|e| Error::Config(format!("--field: {e}")))?;
    let params = &config.params;
    let pts = mollification_sweep(&u, params, sweep, &config.quadrature)?;
    let mut rows = sweep_rows(case, params, "mollification_error", "m", &pts, |_| {
        config.field_label.clone()
    });
    if pts.len() >= 3 {
        rows.push(fit_row(case, &config.field_label, params, &pts, false)?);
    }
    Ok((rows, pts))
}

/// Write the gnuplot companion file: two space-separated columns
/// (index, value), one point per line.
fn emit_dat(pts: &[SweepPoint], path: &Path) -> Result<()> {
    let mut out = String::from("# index value\n");
    for p in pts {
        writeln!(out, "{} {:.16e}", p.index, p.value).expect("writing to a String cannot fail");
    }
    std::fs::write(path, out).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn suite_reports(config: &RunConfig, suite: &str, n_filter: Option<u8>) -> Result<Vec<InequalityReport>> {
    let cfg = SuiteConfig {
        seed: config.quadrature.seed,
        cells_per_axis: Some(config.quadrature.cells_per_axis),
        samples: Some(config.quadrature.samples),
    };
    let mut reports = full_suite(&cfg)?;
    if suite != "all" {
        reports.retain(|r| r.name == suite);
        if reports.is_empty() {
            return Err(Error::Config(format!(
                "--suite: no check named '{suite}' \
                 (expected all, sobolev, morrey_campanato, poincare_wirtinger, pw_flexible, \
                 morrey, weighted_integrability, local_pw, or sharp_1d)"
            )));
        }
    }
    if let Some(n) = n_filter {
        reports.retain(|r| r.params.n() == n);
    }
    Ok(reports)
}

/// Names of every report with `pass = false`, for the exit-2 message.
fn violations(reports: &[InequalityReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| {
            format!(
                "{} violated on field '{}' ({}): ratio {:.6} > budget {}",
                r.name, r.field_label, r.params, r.ratio, r.budget
            )
        })
        .collect()
}

fn execute(config: &RunConfig) -> Result<(Vec<String>, String)> {
    match &config.command {
        Command::Seminorm => {
            let u = by_label(config.params.n(), &config.field_label)
                .map_err(|e| Error::Config(format!("--field: {e}")))?;
            let value = gagliardo_seminorm(&u, &config.params, &config.quadrature)?;
            let est = value.estimate;
            let rows = vec![CsvRow {
                case: "seminorm".into(),
                field: config.field_label.clone(),
                n: config.params.n(),
                s: config.params.s(),
                p: config.params.p(),
                quantity: "gagliardo_seminorm".into(),
                value: est.value,
                error: est.error_indicator,
                extra: quad_tag(&config.quadrature),
            }];
            emit_csv(&rows, &config.output_path)?;
            let summary = format!(
                "[{}]_(W^{{{},{}}}) = {:.6} (±{:.1e}) at {}",
                config.field_label,
                config.params.s(),
                config.params.p(),
                est.value,
                est.error_indicator,
                config.params,
            );
            Ok((Vec::new(), summary))
        }
        Command::Verify { suite, n_filter } => {
            let reports = suite_reports(config, suite, *n_filter)?;
            let rows: Vec<CsvRow> = reports.iter().map(report_row).collect();
            emit_csv(&rows, &config.output_path)?;
            let bad = violations(&reports);
            let summary = format!(
                "{} reports, {} violations (suite = {suite}, seed = {})",
                reports.len(),
                bad.len(),
                config.quadrature.seed
            );
            Ok((bad, summary))
        }
        Command::Nullseq { regime } => {
            let (rows, pts) = nullseq_rows("nullseq", *regime, config)?;
            emit_csv(&rows, &config.output_path)?;
            let fitted = rows.last().expect("fit row present");
            let summary = format!(
                "{} seminorms over m = {:?}; fitted slope {:.4} ({})",
                pts.len(),
                pts.iter().map(|p| p.index as u32).collect::<Vec<_>>(),
                fitted.value,
                fitted.extra
            );
            Ok((Vec::new(), summary))
        }
        Command::Truncate => {
            let (rows, pts) = truncation_rows("truncate", config)?;
            emit_csv(&rows, &config.output_path)?;
            let tail = rows.last().expect("summary row present");
            let summary = format!(
                "{} truncation errors for '{}'; {} = {:.4e}",
                pts.len(),
                config.field_label,
                tail.quantity,
                tail.value
            );
            Ok((Vec::new(), summary))
        }
        Command::Rates { experiment } => {
            let (rows, pts) = match experiment {
                Experiment::Superconformal => {
                    nullseq_rows("rates", RegimeChoice::Superconformal, config)?
                }
                Experiment::Conformal => nullseq_rows("rates", RegimeChoice::Conformal, config)?,
                Experiment::Mollification => mollification_rows("rates", config)?,
                Experiment::Truncation => truncation_rows("rates", config)?,
            };
            emit_csv(&rows, &config.output_path)?;
            let dat_path = config.output_path.with_extension("dat");
            emit_dat(&pts, &dat_path)?;
            let summary = format!(
                "{} points written to {} and {}",
                pts.len(),
                config.output_path.display(),
                dat_path.display()
            );
            Ok((Vec::new(), summary))
        }
        Command::Report => {
            let mut rows: Vec<CsvRow> = Vec::new();
            let reports = suite_reports(config, "all", None)?;
            rows.extend(reports.iter().map(report_row));
            let bad = violations(&reports);

            let base = |sweep: &[u32], params: SeminormParams| RunConfig {
                command: Command::Report,
                field_label: config.field_label.clone(),
                params,
                quadrature: config.quadrature,
                output_path: config.output_path.clone(),
                sweep: Some(sweep.to_vec()),
            };
            let sup_params = SeminormParams::new(1, rat(3, 4), rat(2, 1))?;
            let sup = base(&[2, 4, 8, 16], sup_params);
            rows.extend(nullseq_rows("nullseq", RegimeChoice::Superconformal, &sup)?.0);
            let conf_params = SeminormParams::new(1, rat(1, 2), rat(2, 1))?;
            let conf = base(&[4, 16, 64], conf_params);
            rows.extend(nullseq_rows("nullseq", RegimeChoice::Conformal, &conf)?.0);

            let mut moll = base(&[2, 4, 8, 16], conf_params);
            moll.field_label = "hat".into();
            rows.extend(mollification_rows("mollify", &moll)?.0);

            let mut tr_sub = base(&[2, 4, 8], SeminormParams::new(1, rat(1, 4), rat(2, 1))?);
            tr_sub.field_label = "powtail:alpha=0.5".into();
            rows.extend(truncation_rows("truncate", &tr_sub)?.0);
            let mut tr_sup = base(&[2, 4, 8], sup_params);
            tr_sup.field_label = "powgrow:beta=0.125".into();
            rows.extend(truncation_rows("truncate", &tr_sup)?.0);
            let mut tr_conf = base(&[2, 4, 8], conf_params);
            tr_conf.field_label = "hat".into();
            rows.extend(truncation_rows("truncate", &tr_conf)?.0);

            emit_csv(&rows, &config.output_path)?;
            let summary = format!(
                "{} rows ({} inequality reports, {} violations) written to {}",
                rows.len(),
                reports.len(),
                bad.len(),
                config.output_path.display()
            );
            Ok((bad, summary))
        }
    }
}

/// Run a parsed configuration: write the CSV, print a one-line summary,
/// return the process exit code (0 clean, 1 config error, 2 violation).
pub fn run(config: &RunConfig) -> i32 {
    match execute(config) {
        Ok((violations, summary)) => {
            println!("{summary}");
            if violations.is_empty() {
                0
            } else {
                for v in &violations {
                    eprintln!("{v}");
                }
                2
            }
        }
        Err(e) => {
            eprintln!("{e}");
            1
        }
    }
}

/// Entry point for the binary: honors `GAGLIARDO_THREADS`, parses the
/// command line, runs it.
pub fn main_entry() -> i32 {
    if let Ok(text) = std::env::var("GAGLIARDO_THREADS") {
        if let Ok(k) = text.parse::<usize>() {
            if k > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
        }
    }
    match parse_args(std::env::args()) {
        Ok(config) => run(&config),
        Err(e) => {
            eprintln!("{e}");
            1
        }
    }
}
