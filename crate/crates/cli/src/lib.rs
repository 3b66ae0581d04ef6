//! Command implementations and output rendering for the `barnes` binary.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use barnes_core::asym::{bernoulli_bounds_check, bn_full_asym, bn_tail_approx, leading_predictor, relative_error};
use barnes_core::barnes::{log_barnes_g, log_g_weierstrass};
use barnes_core::coeffs::{self, CoeffTable};
use barnes_core::decimal::{float_to_scientific, to_scientific};
use barnes_core::{Float, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::ops::Pow;
use serde::Serialize;

pub const FORMAT_VERSION: u32 = 1;
/// Smallest precision the table commands accept.
pub const TABLE_MIN_PRECISION: u32 = 384;
/// Smallest precision for anything that evaluates constants.
pub const MIN_PRECISION: u32 = 64;

#[derive(Debug, Parser)]
#[command(name = "barnes", version, about = "Coefficients and asymptotics of the Barnes G-function")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = barnes_core::DEFAULT_PRECISION)]
    pub precision: u32,
    /// Significant digits in decimal output.
    #[arg(long, global = true, default_value_t = 30)]
    pub digits: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// c_n
    C,
    /// b_n(r)
    Bn,
    /// b_n(ell, r)
    BnEll,
    /// a_n(ell, r)
    AnEll,
    /// b_n(theta, kappa, r)
    BnThetaKappa,
    /// Stirling coefficients gamma_n
    Gamma,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One coefficient, exactly and in decimal.
    Coeff {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_rational)]
        r: Option<Rational>,
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long, value_parser = parse_rational)]
        theta: Option<Rational>,
        #[arg(long, value_parser = parse_rational)]
        kappa: Option<Rational>,
    },
    /// Truncated Bernoulli tail against exact b_25(1) and b_100(1).
    Table1 {
        /// Reuse the process-wide coefficient memo for exact values.
        #[arg(long)]
        cache: bool,
    },
    /// Full asymptotic formula against exact b_25(1) and b_100(1).
    Table2 {
        #[arg(long)]
        cache: bool,
    },
    /// log G(z+1), optionally against the canonical product.
    EvalG {
        #[arg(long)]
        z: String,
        /// Also evaluate the truncated canonical product.
        #[arg(long)]
        oracle: bool,
        /// Number of product factors.
        #[arg(long, default_value_t = 1 << 20)]
        terms: u32,
    },
    /// Ratio b_n(r) / leading predictor over a range of n.
    Convergence {
        #[arg(long, default_value_t = 1)]
        n_min: u32,
        #[arg(long, default_value_t = 40)]
        n_max: u32,
        #[arg(long, value_parser = parse_rational, default_value = "1")]
        r: Rational,
    },
    /// Two-sided bounds on |B_{2n+2}| over a range of n.
    BoundsCheck {
        #[arg(long, default_value_t = 0)]
        n_min: u32,
        #[arg(long, default_value_t = 100)]
        n_max: u32,
    },
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|e| format!("not a rational number: {s:?} ({e})"))
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Param(String),
    #[error("{0}")]
    Precision(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Param(_) => 2,
            CliError::Precision(_) => 3,
            CliError::CheckFailed(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<barnes_core::Error> for CliError {
    fn from(e: barnes_core::Error) -> Self {
        CliError::Param(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResultRow {
    pub label: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub results: Vec<ResultRow>,
    pub precision_bits: u32,
    pub format_version: u32,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub footnotes: Vec<String>,
}

impl OutputRecord {
    fn new(command: &str, common: &Common) -> Self {
        let mut parameters = BTreeMap::new();
        parameters.insert("digits".into(), common.digits.to_string());
        parameters.insert("precision".into(), common.precision.to_string());
        OutputRecord {
            command: command.into(),
            parameters,
            results: Vec::new(),
            precision_bits: common.precision,
            format_version: FORMAT_VERSION,
            footnotes: Vec::new(),
        }
    }

    fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.into(), value.to_string());
    }

    fn push(&mut self, label: impl Into<String>, value: impl Into<String>) {
        self.results.push(ResultRow { label: label.into(), value: value.into() });
    }
}

fn check_digits(common: &Common) -> CliResult<()> {
    if common.digits == 0 {
        return Err(CliError::Param("--digits must be at least 1".into()));
    }
    Ok(())
}

/// Floating-point output must carry a few bits beyond the printed digits.
fn check_float_precision(common: &Common, min: u32) -> CliResult<()> {
    if common.precision < min {
        return Err(CliError::Precision(format!(
            "--precision {} is below the minimum of {min} bits for this command",
            common.precision
        )));
    }
    let needed = (f64::from(common.digits) * std::f64::consts::LOG2_10).ceil() as u32 + 8;
    if common.precision < needed {
        return Err(CliError::Precision(format!(
            "{} digits need at least {needed} bits, got --precision {}",
            common.digits, common.precision
        )));
    }
    Ok(())
}

pub fn run(cli: &Cli) -> CliResult<OutputRecord> {
    let common = &cli.common;
    check_digits(common)?;
    match &cli.command {
        Command::Coeff { family, n, r, ell, theta, kappa } => {
            cmd_coeff(common, *family, *n, r.as_ref(), *ell, theta.as_ref(), kappa.as_ref())
        }
        Command::Table1 { cache } => cmd_table1(common, *cache),
        Command::Table2 { cache } => cmd_table2(common, *cache),
        Command::EvalG { z, oracle, terms } => cmd_eval_g(common, z, *oracle, *terms),
        Command::Convergence { n_min, n_max, r } => cmd_convergence(common, *n_min, *n_max, r),
        Command::BoundsCheck { n_min, n_max } => cmd_bounds_check(common, *n_min, *n_max),
    }
}

fn reject(family: Family, name: &str, given: bool) -> CliResult<()> {
    if given {
        let family = family.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        return Err(CliError::Param(format!("--{name} does not apply to family {family}")));
    }
    Ok(())
}

fn require<'a, T>(family: Family, name: &str, v: Option<&'a T>) -> CliResult<&'a T> {
    v.ok_or_else(|| {
        let family = family.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        CliError::Param(format!("family {family} requires --{name}"))
    })
}

pub fn cmd_coeff(
    common: &Common,
    family: Family,
    n: u32,
    r: Option<&Rational>,
    ell: Option<u32>,
    theta: Option<&Rational>,
    kappa: Option<&Rational>,
) -> CliResult<OutputRecord> {
    let mut rec = OutputRecord::new("coeff", common);
    let name = family.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    rec.param("family", &name);
    rec.param("n", n);
    if let Some(r) = r {
        rec.param("r", r);
    }
    if let Some(ell) = ell {
        rec.param("ell", ell);
    }
    if let Some(t) = theta {
        rec.param("theta", t);
    }
    if let Some(k) = kappa {
        rec.param("kappa", k);
    }

    let uses_r = !matches!(family, Family::C | Family::Gamma);
    let uses_ell = matches!(family, Family::BnEll | Family::AnEll);
    let uses_tk = family == Family::BnThetaKappa;
    reject(family, "r", !uses_r && r.is_some())?;
    reject(family, "ell", !uses_ell && ell.is_some())?;
    reject(family, "theta", !uses_tk && theta.is_some())?;
    reject(family, "kappa", !uses_tk && kappa.is_some())?;

    let value = match family {
        Family::C => {
            if n == 0 {
                return Err(CliError::Param("c_n is defined for n >= 1".into()));
            }
            coeffs::c_coeff(n)
        }
        Family::Bn => coeffs::bn_exact(n, require(family, "r", r)?)?,
        Family::BnEll => coeffs::bn_partition(n, *require(family, "ell", ell.as_ref())?, require(family, "r", r)?)?,
        Family::AnEll => coeffs::an_partition(n, *require(family, "ell", ell.as_ref())?, require(family, "r", r)?)?,
        Family::BnThetaKappa => coeffs::bn_theta_kappa(
            n,
            require(family, "theta", theta)?,
            require(family, "kappa", kappa)?,
            require(family, "r", r)?,
            n,
        )?,
        Family::Gamma => coeffs::gamma_stirling(n),
    };
    rec.push("exact", value.to_string());
    rec.push("decimal", to_scientific(&value, common.digits));
    Ok(rec)
}

fn exact_b(n: u32, cache: bool) -> CliResult<Rational> {
    let one = Rational::from(1);
    if cache {
        return Ok(coeffs::bn_exact(n, &one)?);
    }
    let mut table = CoeffTable::b_of_r(&one)?;
    Ok(table.get(n as usize).clone())
}

fn rel_err_string(exact: &Rational, approx: &Float, digits: u32) -> String {
    let exact = Float::with_val(approx.prec(), exact);
    match relative_error(&exact, approx) {
        Some(e) => float_to_scientific(&e, digits),
        None => "undefined".into(),
    }
}

const TABLE_ORDERS: [u32; 3] = [5, 10, 15];

pub fn cmd_table1(common: &Common, cache: bool) -> CliResult<OutputRecord> {
    check_float_precision(common, TABLE_MIN_PRECISION)?;
    let (p, d) = (common.precision, common.digits);
    let one = Rational::from(1);
    let mut rec = OutputRecord::new("table1", common);
    rec.param("cache", cache);
    rec.param("r", 1);

    let b25 = exact_b(25, cache)?;
    rec.push("b25 exact", to_scientific(&b25, d));
    for m in TABLE_ORDERS {
        let v = bn_tail_approx(25, &one, m, p)?;
        rec.push(format!("b25 m={m}"), float_to_scientific(&v, d));
        rec.push(format!("b25 m={m} rel_error"), rel_err_string(&b25, &v, d));
    }
    for m in TABLE_ORDERS {
        let v = bn_tail_approx(100, &one, m, p)?;
        rec.push(format!("b100 m={m}"), float_to_scientific(&v, d));
    }
    Ok(rec)
}

pub fn cmd_table2(common: &Common, cache: bool) -> CliResult<OutputRecord> {
    check_float_precision(common, TABLE_MIN_PRECISION)?;
    let (p, d) = (common.precision, common.digits);
    let one = Rational::from(1);
    let mut rec = OutputRecord::new("table2", common);
    rec.param("cache", cache);
    rec.param("r", 1);

    let b25 = exact_b(25, cache)?;
    rec.push("b25 exact", to_scientific(&b25, d));
    for k in [0, 5, 10, 15] {
        let v = bn_full_asym(25, &one, k, p)?;
        rec.push(format!("b25 k_max={k}"), float_to_scientific(&v, d));
        rec.push(format!("b25 k_max={k} rel_error"), rel_err_string(&b25, &v, d));
    }
    for k in TABLE_ORDERS {
        let v = bn_full_asym(100, &one, k, p)?;
        rec.push(format!("b100 k_max={k}"), float_to_scientific(&v, d));
    }
    rec.footnotes.push(
        "A b25 value column of about 6.3e51 cannot produce relative errors of this size; \
         the values above (about -3.8e21) are the ones the reported errors belong to."
            .into(),
    );
    Ok(rec)
}

/// Renders `v`, treating magnitudes below `2^{-(P-16)}` as zero.
fn render_snapped(v: &Float, prec: u32, digits: u32) -> String {
    let tiny = Float::with_val(prec, 2).pow(-(prec as i32 - 16));
    if Float::with_val(prec, v.abs_ref()) < tiny {
        to_scientific(&Rational::new(), digits)
    } else {
        float_to_scientific(v, digits)
    }
}

pub fn cmd_eval_g(common: &Common, z: &str, oracle: bool, terms: u32) -> CliResult<OutputRecord> {
    check_float_precision(common, MIN_PRECISION)?;
    let (p, d) = (common.precision, common.digits);
    let parsed = Float::parse(z.trim()).map_err(|e| CliError::Param(format!("not a number: {z:?} ({e})")))?;
    let zf = Float::with_val(p, parsed);
    if !zf.is_finite() || zf <= 0 {
        return Err(CliError::Param(format!("eval-g requires z > 0, got {z}")));
    }
    if oracle && terms == 0 {
        return Err(CliError::Param("--terms must be at least 1".into()));
    }
    let mut rec = OutputRecord::new("eval-g", common);
    rec.param("z", z.trim());
    rec.param("oracle", oracle);

    let eval = log_barnes_g(&zf, p)?;
    rec.push("log G(z+1)", render_snapped(&eval.value, p, d));
    rec.push("series terms", eval.terms_used.to_string());
    rec.push("last term", float_to_scientific(&eval.last_term_magnitude, 6));
    if oracle {
        rec.param("terms", terms);
        let w = log_g_weierstrass(&zf, terms, p)?;
        let gap = Float::with_val(p, &eval.value - &w).abs();
        let tail = Float::with_val(p, zf.clone().pow(3u32)) / (3 * u64::from(terms));
        rec.push("product", render_snapped(&w, p, d));
        rec.push("gap", float_to_scientific(&gap, 6));
        rec.push("product tail estimate", float_to_scientific(&tail, 6));
    }
    Ok(rec)
}

pub const CONVERGENCE_MAX_N: u32 = 200;

pub fn cmd_convergence(common: &Common, n_min: u32, n_max: u32, r: &Rational) -> CliResult<OutputRecord> {
    if !(1 <= n_min && n_min < n_max && n_max <= CONVERGENCE_MAX_N) {
        return Err(CliError::Param(format!(
            "need 1 <= n_min < n_max <= {CONVERGENCE_MAX_N}, got {n_min}..{n_max}"
        )));
    }
    if r.cmp0().is_eq() {
        return Err(CliError::Param("r must be nonzero".into()));
    }
    check_float_precision(common, MIN_PRECISION)?;
    let (p, d) = (common.precision, common.digits);
    let mut rec = OutputRecord::new("convergence", common);
    rec.param("n_min", n_min);
    rec.param("n_max", n_max);
    rec.param("r", r);
    for n in n_min..=n_max {
        let exact = Float::with_val(p, &coeffs::bn_exact(n, r)?);
        let ratio = exact / leading_predictor(n, r, p);
        rec.push(format!("n={n}"), float_to_scientific(&ratio, d));
    }
    Ok(rec)
}

pub fn cmd_bounds_check(common: &Common, n_min: u32, n_max: u32) -> CliResult<OutputRecord> {
    if n_min > n_max {
        return Err(CliError::Param(format!("need n_min <= n_max, got {n_min}..{n_max}")));
    }
    let d = common.digits;
    let mut rec = OutputRecord::new("bounds-check", common);
    rec.param("n_min", n_min);
    rec.param("n_max", n_max);
    let mut failed = Vec::new();
    for n in n_min..=n_max {
        let b = bernoulli_bounds_check(n);
        // |B_{2n+2}| / lower = ζ(2n+2), which must lie in (1, 2).
        let ratio = Float::with_val(b.value.prec(), &b.value / &b.lower);
        rec.push(format!("n={n} ratio"), float_to_scientific(&ratio, d.min(30)));
        rec.push(format!("n={n} holds"), b.holds.to_string());
        if !b.holds {
            failed.push(n);
        }
    }
    if !failed.is_empty() {
        return Err(CliError::CheckFailed(format!("bounds fail at n = {failed:?}")));
    }
    Ok(rec)
}

pub fn render(rec: &OutputRecord, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rec).expect("record serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["label", "value"]).expect("in-memory write");
            for row in &rec.results {
                w.write_record([&row.label, &row.value]).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
        }
        Format::Text => {
            let mut s = String::new();
            let params: Vec<String> = rec.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(s, "{} ({})", rec.command, params.join(", "));
            let width = rec.results.iter().map(|r| r.label.chars().count()).max().unwrap_or(0);
            for row in &rec.results {
                let _ = writeln!(s, "  {:<width$}  {}", row.label, row.value);
            }
            for note in &rec.footnotes {
                let _ = writeln!(s, "note: {note}");
            }
            s
        }
    }
}
