//! `zeta-gb <command> [flags]`.
//!
//! Exit codes: 0 success, 2 parameter errors, 3 precision errors, 4 inconclusive
//! or boundary winding counts, 5 refinement failures under `--fail-on-refine`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::audit::{self, AuditSettings};
use crate::bernoulli;
use crate::error::ZetaError;
use crate::point::{ComplexPoint, Real};
use crate::records::{self, format_f64, sig17};
use crate::zero_scan::{self, Rectangle, ScanConfig};
use crate::zeta_core::{self, EvalParams};

pub const EPS_ENV: &str = "ZETAGB_DEFAULT_EPS";
pub const DEFAULT_EPS: Real = 1e-8;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARAMETER: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;
pub const EXIT_REFINEMENT: i32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "zeta-gb", version, about = "Euler-Maclaurin zeta evaluation, zero scanning and audits")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Cutoff N (bypasses automatic selection together with --nu).
    #[arg(long = "N", global = true)]
    pub cutoff_n: Option<usize>,
    /// Tail order nu.
    #[arg(long = "nu", global = true)]
    pub nu: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Evaluate Z(s) with a certified remainder bound.
    #[command(allow_negative_numbers = true)]
    Eval {
        #[arg(long)]
        re: Real,
        #[arg(long, default_value_t = 0.0)]
        im: Real,
        #[arg(long)]
        eps: Option<Real>,
        #[command(flatten)]
        common: Common,
    },
    /// Scan the critical line for zeros.
    #[command(allow_negative_numbers = true)]
    Zeros {
        #[arg(long = "t-min")]
        t_min: Real,
        #[arg(long = "t-max")]
        t_max: Real,
        #[arg(long, default_value_t = 0.25)]
        step: Real,
        #[arg(long, default_value_t = 1e-8)]
        tol: Real,
        #[arg(long = "max-iter", default_value_t = zero_scan::DEFAULT_MAX_ITER)]
        max_iter: usize,
        /// Exit with status 5 if any candidate fails to refine.
        #[arg(long = "fail-on-refine")]
        fail_on_refine: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Count zeros in a rectangle by the argument principle.
    #[command(allow_negative_numbers = true)]
    Count {
        #[arg(long = "sigma-min")]
        sigma_min: Real,
        #[arg(long = "sigma-max")]
        sigma_max: Real,
        #[arg(long = "t-min")]
        t_min: Real,
        #[arg(long = "t-max")]
        t_max: Real,
        #[arg(long)]
        eps: Option<Real>,
        #[command(flatten)]
        common: Common,
    },
    /// Scan, audit every zero, and write the JSON report.
    #[command(allow_negative_numbers = true)]
    Audit {
        #[arg(long = "t-min")]
        t_min: Real,
        #[arg(long = "t-max")]
        t_max: Real,
        #[arg(long, default_value_t = 0.25)]
        step: Real,
        #[arg(long, default_value_t = 1e-10)]
        tol: Real,
        #[arg(long = "max-iter", default_value_t = zero_scan::DEFAULT_MAX_ITER)]
        max_iter: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Show the automatically selected (N, nu) for a point.
    #[command(allow_negative_numbers = true)]
    Params {
        #[arg(long)]
        re: Real,
        #[arg(long, default_value_t = 0.0)]
        im: Real,
        #[arg(long)]
        eps: Option<Real>,
        #[command(flatten)]
        common: Common,
    },
    /// Dump exact Bernoulli numbers.
    #[command(allow_negative_numbers = true)]
    Bernoulli {
        #[arg(long = "max-index", default_value_t = 20)]
        max_index: usize,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Eval { common, .. }
            | Command::Zeros { common, .. }
            | Command::Count { common, .. }
            | Command::Audit { common, .. }
            | Command::Params { common, .. }
            | Command::Bernoulli { common, .. } => common,
        }
    }
}

pub fn parse_args<I, T>(argv: I) -> Result<CliConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    CliConfig::try_parse_from(argv)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalOutput {
    #[serde(serialize_with = "sig17::serialize")]
    pub re: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub im: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub value_re: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub value_im: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub remainder_bound: Real,
    #[serde(rename = "N")]
    pub n: usize,
    pub nu: usize,
    pub params_override: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountOutput {
    pub rectangle: Rectangle,
    pub zeros: i64,
    #[serde(serialize_with = "sig17::serialize")]
    pub winding: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub residual: Real,
    pub samples: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub nu: usize,
    pub params_override: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsOutput {
    #[serde(serialize_with = "sig17::serialize")]
    pub re: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub im: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub eps: Real,
    #[serde(rename = "N")]
    pub n: usize,
    pub nu: usize,
    #[serde(serialize_with = "sig17::serialize")]
    pub remainder_bound: Real,
}

/// Parse `argv` (program name first), execute, and return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with_io<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match parse_args(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    return EXIT_OK;
                }
                _ => EXIT_PARAMETER,
            };
            let _ = write!(stderr, "{}", e.render());
            return code;
        }
    };
    match execute(&config, stderr) {
        Ok(Outcome { text, code }) => {
            if let Err(e) = emit(&config.command.common().out, &text, stdout) {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                return EXIT_PARAMETER;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if let ZetaError::Boundary { .. } = e {
                let _ = writeln!(stderr, "hint: a zero sits on or near the contour; expand the rectangle by 0.05 in t and retry");
            }
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &ZetaError) -> i32 {
    match e {
        ZetaError::Parameter(_) | ZetaError::Domain(_) | ZetaError::Pole | ZetaError::Format(_) => EXIT_PARAMETER,
        ZetaError::Precision { .. } | ZetaError::SingularQ { .. } => EXIT_PRECISION,
        ZetaError::Boundary { .. } | ZetaError::Inconclusive { .. } => EXIT_INCONCLUSIVE,
        ZetaError::Refinement(_) => EXIT_REFINEMENT,
    }
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    }
}

struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: EXIT_OK }
    }
}

fn default_eps() -> Result<Real, ZetaError> {
    match std::env::var(EPS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<Real>()
            .ok()
            .filter(|e| *e > 0.0 && e.is_finite())
            .ok_or_else(|| ZetaError::param(format!("{EPS_ENV}={v:?} is not a positive number"))),
        Err(_) => Ok(DEFAULT_EPS),
    }
}

/// Auto parameters with any `--N`/`--nu` override applied; the flag says
/// whether an override was used.
fn resolve_params(
    common: &Common,
    auto: impl FnOnce() -> Result<EvalParams, ZetaError>,
) -> Result<(EvalParams, bool), ZetaError> {
    match (common.cutoff_n, common.nu) {
        (Some(n), Some(nu)) => Ok((EvalParams::fixed(n, nu)?, true)),
        (None, None) => Ok((auto()?, false)),
        (n, nu) => {
            let base = auto()?;
            let p = EvalParams::new(n.unwrap_or(base.cutoff_n), nu.unwrap_or(base.tail_order_nu), None)?;
            Ok((p, true))
        }
    }
}

fn override_params(common: &Common) -> Result<Option<EvalParams>, ZetaError> {
    match (common.cutoff_n, common.nu) {
        (None, None) => Ok(None),
        (Some(n), Some(nu)) => Ok(Some(EvalParams::fixed(n, nu)?)),
        _ => Err(ZetaError::param("this command needs both --N and --nu to override parameters")),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("outputs hold finite floats")
}

fn execute(config: &CliConfig, stderr: &mut dyn Write) -> Result<Outcome, ZetaError> {
    match &config.command {
        Command::Eval { re, im, eps, common } => {
            let s = ComplexPoint::new(*re, *im)?;
            let eps = match eps {
                Some(e) => *e,
                None => default_eps()?,
            };
            let (params, overridden) = resolve_params(common, || zeta_core::auto_params(s, eps))?;
            let r = zeta_core::zeta_gb(s, &params)?;
            let out = EvalOutput {
                re: s.re,
                im: s.im,
                value_re: r.value.re,
                value_im: r.value.im,
                remainder_bound: r.remainder_bound,
                n: params.cutoff_n,
                nu: params.tail_order_nu,
                params_override: overridden,
            };
            Ok(Outcome::ok(match common.format {
                OutputFormat::Json => json(&out),
                OutputFormat::Csv => format!(
                    "re,im,value_re,value_im,remainder_bound,N,nu\n{},{},{},{},{},{},{}\n",
                    format_f64(out.re),
                    format_f64(out.im),
                    format_f64(out.value_re),
                    format_f64(out.value_im),
                    format_f64(out.remainder_bound),
                    out.n,
                    out.nu
                ),
                OutputFormat::Text => format!(
                    "Z({} + {}i) = {} + {}i\nremainder bound {:e}  (N = {}, nu = {}{})\n",
                    out.re,
                    out.im,
                    out.value_re,
                    out.value_im,
                    out.remainder_bound,
                    out.n,
                    out.nu,
                    if overridden { ", override" } else { "" }
                ),
            }))
        }
        Command::Zeros { t_min, t_max, step, tol, max_iter, fail_on_refine, common } => {
            let cfg = ScanConfig { step: *step, tol: *tol, max_iter: *max_iter, params: override_params(common)? };
            let scan = zero_scan::scan_critical_line_with(*t_min, *t_max, &cfg)?;
            if scan.failed_refinements > 0 {
                let _ = writeln!(
                    stderr,
                    "warning: {} of {} candidate(s) failed to refine",
                    scan.failed_refinements, scan.candidates
                );
            }
            let text = match common.format {
                OutputFormat::Csv => records::write_csv(&scan.records),
                OutputFormat::Json => records::write_jsonl(&scan.records),
                OutputFormat::Text => {
                    let mut s = format!(
                        "{} zero(s) on 1/2 + it, t in [{t_min}, {t_max}]  (N = {}, nu = {})\n",
                        scan.records.len(),
                        scan.params_used.cutoff_n,
                        scan.params_used.tail_order_nu
                    );
                    for r in &scan.records {
                        s.push_str(&format!(
                            "t = {:.9}  xi = {:+.3e}  |Z| = {:.3e}  iterations = {}\n",
                            r.t, r.xi, r.z_modulus, r.refine_iterations
                        ));
                    }
                    s
                }
            };
            let code = if *fail_on_refine && scan.failed_refinements > 0 { EXIT_REFINEMENT } else { EXIT_OK };
            Ok(Outcome { text, code })
        }
        Command::Count { sigma_min, sigma_max, t_min, t_max, eps, common } => {
            let rect = Rectangle::new(*sigma_min, *sigma_max, *t_min, *t_max)?;
            let eps = match eps {
                Some(e) => *e,
                None => default_eps()?,
            };
            let (params, overridden) = resolve_params(common, || zero_scan::rectangle_params(&rect, eps))?;
            let c = zero_scan::count_zeros_detailed(&rect, &params)?;
            let out = CountOutput {
                rectangle: rect,
                zeros: c.zeros,
                winding: c.winding,
                residual: c.residual,
                samples: c.samples,
                n: params.cutoff_n,
                nu: params.tail_order_nu,
                params_override: overridden,
            };
            Ok(Outcome::ok(match common.format {
                OutputFormat::Json => json(&out),
                OutputFormat::Csv => format!(
                    "zeros,winding,residual,samples,N,nu\n{},{},{},{},{},{}\n",
                    out.zeros,
                    format_f64(out.winding),
                    format_f64(out.residual),
                    out.samples,
                    out.n,
                    out.nu
                ),
                OutputFormat::Text => format!("{}\n", out.zeros),
            }))
        }
        Command::Audit { t_min, t_max, step, tol, max_iter, seed, common } => {
            let params = override_params(common)?;
            let cfg = ScanConfig { step: *step, tol: *tol, max_iter: *max_iter, params };
            let settings = AuditSettings {
                params,
                seed: seed.unwrap_or(audit::DEFAULT_SEED),
                ..AuditSettings::default()
            };
            let (report, failure) = audit::audit_range_detailed(*t_min, *t_max, &cfg, &settings)?;
            let _ = write!(stderr, "{}", report.render_text());
            let text = match common.format {
                OutputFormat::Text | OutputFormat::Json => report.to_json(),
                OutputFormat::Csv => {
                    return Err(ZetaError::param("audit writes JSON; --format csv is not supported"))
                }
            };
            let code = failure.as_ref().map_or(EXIT_OK, exit_code);
            Ok(Outcome { text, code })
        }
        Command::Params { re, im, eps, common } => {
            let s = ComplexPoint::new(*re, *im)?;
            let eps = match eps {
                Some(e) => *e,
                None => default_eps()?,
            };
            let (p, _) = resolve_params(common, || zeta_core::auto_params(s, eps))?;
            let out = ParamsOutput {
                re: s.re,
                im: s.im,
                eps,
                n: p.cutoff_n,
                nu: p.tail_order_nu,
                remainder_bound: zeta_core::remainder_bound(s, &p),
            };
            Ok(Outcome::ok(match common.format {
                OutputFormat::Json => json(&out),
                OutputFormat::Csv => format!(
                    "re,im,eps,N,nu,remainder_bound\n{},{},{},{},{},{}\n",
                    format_f64(out.re),
                    format_f64(out.im),
                    format_f64(out.eps),
                    out.n,
                    out.nu,
                    format_f64(out.remainder_bound)
                ),
                OutputFormat::Text => {
                    format!("N = {}  nu = {}  remainder bound {:e}\n", out.n, out.nu, out.remainder_bound)
                }
            }))
        }
        Command::Bernoulli { max_index, common } => {
            let table = bernoulli::build_table(*max_index)?;
            let entries = table.entries();
            Ok(Outcome::ok(match common.format {
                OutputFormat::Json => json(&entries),
                OutputFormat::Csv => {
                    let mut s = String::from("index,numerator,denominator\n");
                    for e in &entries {
                        s.push_str(&format!("{},{},{}\n", e.index, e.numerator, e.denominator));
                    }
                    s
                }
                OutputFormat::Text => entries
                    .iter()
                    .map(|e| format!("B_{} = {}/{}\n", e.index, e.numerator, e.denominator))
                    .collect(),
            }))
        }
    }
}
