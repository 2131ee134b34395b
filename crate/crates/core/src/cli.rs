//! Problem files, reports and the `zenger` subcommands.
//!
//! Problem files are JSON; the grammar is documented in `docs/problem-format.md`.
//! Each `cmd_*` function writes its report to `out`, diagnostics to `err`,
//! and returns the process exit code.

use std::fmt::Write as _;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;

use crate::asymptotics::{example1_refute, liminf_check, pn_table, AlphaRule, NormFamily, PnTable};
use crate::error::Error;
use crate::norms::{Block, NormSpec};
use crate::numrange::{spectrum_hull_check, ComplexMatrix, DEFAULT_GRID};
use crate::seq::{
    dot, renormalize_weights, validate_weights, TailVector, Tolerances, WeightVector,
};
use crate::solver::{certify, solve_zenger, Certificate, ZengerPair, ZengerProblem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;
pub const EXIT_BLOWUP: i32 = 4;
pub const EXIT_SHAPE: i32 = 5;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub norm: NormConfig,
    pub alpha: AlphaConfig,
    #[serde(default)]
    pub tolerances: ToleranceOverrides,
    pub max_iterations: Option<usize>,
    /// Candidate `w` for the limsup-norm refuter.
    pub candidate: Option<CandidateConfig>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormConfig {
    #[serde(rename = "type")]
    pub kind: NormKind,
    pub dimension: Option<usize>,
    pub blocks: Option<Vec<BlockConfig>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    Sup,
    Composite,
    Example1Tail,
    Example2,
}

impl NormKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Sup => "sup",
            Self::Composite => "composite",
            Self::Example1Tail => "example1_tail",
            Self::Example2 => "example2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockConfig {
    pub coef: f64,
    pub matrix: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum AlphaConfig {
    List(Vec<f64>),
    Rule(RuleConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleConfig {
    pub rule: RuleKind,
    pub ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    pub weight: Option<f64>,
    pub gap: Option<f64>,
    pub certificate: Option<f64>,
    pub line_search: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateConfig {
    #[serde(default)]
    pub head: Vec<f64>,
    pub tail: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Io { path: PathBuf, message: String },
    Parse(String),
    Run(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Run(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Io { path, message } => write!(f, "{}: {message}", path.display()),
            Self::Parse(m) => write!(f, "parse error: {m}"),
            Self::Run(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io { .. } | Self::Parse(_) => EXIT_PARSE,
            Self::Run(e) => match e {
                Error::NonConvergence { .. } | Error::Lp(_) | Error::SearchLimitExceeded(_) => {
                    EXIT_NONCONVERGENCE
                }
                Error::GeneratorBlowup { .. } => EXIT_BLOWUP,
                Error::NotTriangular { .. } | Error::NotSquare(_) => EXIT_SHAPE,
                _ => EXIT_PARSE,
            },
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

pub fn parse_problem(text: &str) -> CliResult<ProblemFile> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

impl ProblemFile {
    pub fn tolerances(&self) -> Tolerances {
        let d = Tolerances::default();
        let o = &self.tolerances;
        Tolerances {
            weight: o.weight.unwrap_or(d.weight),
            gap: o.gap.unwrap_or(d.gap),
            certificate: o.certificate.unwrap_or(d.certificate),
            line_search: o.line_search.unwrap_or(d.line_search),
        }
    }

    /// The finite-dimensional norm described by the file.
    pub fn norm_spec(&self) -> CliResult<NormSpec> {
        let n = &self.norm;
        let need_dim = || {
            n.dimension.ok_or_else(|| {
                CliError::Parse(format!(
                    "norm type \"{}\" needs \"dimension\"",
                    n.kind.name()
                ))
            })
        };
        if n.blocks.is_some() && n.kind != NormKind::Composite {
            return Err(CliError::Parse(format!(
                "\"blocks\" is only valid for composite norms, not \"{}\"",
                n.kind.name()
            )));
        }
        let spec = match n.kind {
            NormKind::Sup => NormSpec::Sup(need_dim()?),
            NormKind::Example2 => NormSpec::Example2(need_dim()?),
            NormKind::Example1Tail => NormSpec::Example1Tail,
            NormKind::Composite => {
                let blocks = n
                    .blocks
                    .as_ref()
                    .ok_or_else(|| CliError::Parse("composite norm needs \"blocks\"".into()))?;
                let spec = NormSpec::composite(
                    blocks
                        .iter()
                        .map(|b| Block::new(b.coef, b.matrix.clone()))
                        .collect(),
                )?;
                if let Some(d) = n.dimension {
                    if Some(d) != spec.dim() {
                        return Err(Error::DimensionMismatch {
                            expected: d,
                            actual: spec.dim().unwrap_or(0),
                        }
                        .into());
                    }
                }
                spec
            }
        };
        if spec.dim() == Some(0) {
            return Err(CliError::Parse("\"dimension\" must be positive".into()));
        }
        Ok(spec)
    }

    /// Weights for an `n`-dimensional solve. A geometric rule is truncated to
    /// `n` terms and renormalized unless `renormalize` is false, in which case
    /// the truncated sum must already be one.
    pub fn weights(&self, n: usize, renormalize: bool) -> CliResult<WeightVector> {
        let tol = self.tolerances();
        let alpha = match &self.alpha {
            AlphaConfig::List(v) => {
                if v.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        actual: v.len(),
                    }
                    .into());
                }
                return Ok(validate_weights(v, &tol)?);
            }
            AlphaConfig::Rule(r) => {
                let rule = r.to_rule();
                rule.validate()?;
                rule.truncate(n)
            }
        };
        Ok(if renormalize {
            renormalize_weights(&alpha)?
        } else {
            validate_weights(&alpha, &tol)?
        })
    }
}

impl RuleConfig {
    pub fn to_rule(self) -> AlphaRule {
        match self.rule {
            RuleKind::Geometric => AlphaRule::Geometric { ratio: self.ratio },
        }
    }
}

/// Parses `a..b` or `a..=b` (both inclusive) with `1 <= a <= b`.
pub fn parse_n_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start {a:?}"))?;
    let b: usize = b
        .trim()
        .parse()
        .map_err(|_| format!("bad range end {b:?}"))?;
    if a == 0 || a > b {
        return Err(format!("range {a}..{b} must satisfy 1 <= a <= b"));
    }
    Ok(a..=b)
}

/// Parses `re`, `imj`, or `re+imj` / `re-imj`, e.g. `1.5-2e-3j`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let bad = || format!("bad complex number {s:?}");
    let num = |t: &str| -> std::result::Result<f64, String> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    let Some(body) = s.strip_suffix('j') else {
        let re = s.parse::<f64>().map_err(|_| bad())?;
        return if re.is_finite() {
            Ok(Complex64::from(re))
        } else {
            Err(bad())
        };
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (
            body[..i].parse::<f64>().map_err(|_| bad())?,
            num(&body[i..])?,
        ),
        None => (0.0, num(body)?),
    };
    let z = Complex64::new(re, im);
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

/// First non-empty line `n`, then `n` rows of `n` whitespace-separated
/// complex entries. Lines starting with `#` are ignored.
pub fn parse_matrix(text: &str) -> CliResult<ComplexMatrix> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| CliError::Parse("empty matrix file".into()))?;
    let n: usize = header.parse().map_err(|_| {
        CliError::Parse(format!("first line must be the dimension, got {header:?}"))
    })?;
    if n == 0 {
        return Err(CliError::Parse("matrix dimension must be positive".into()));
    }
    let mut rows = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        if i == n {
            return Err(CliError::Parse(format!("more than {n} rows")));
        }
        let row = line
            .split_whitespace()
            .map(parse_complex)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|m| CliError::Parse(format!("row {}: {m}", i + 1)))?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(CliError::Parse(format!(
            "expected {n} rows, found {}",
            rows.len()
        )));
    }
    Ok(ComplexMatrix::from_rows(rows)?)
}

/// Fixed 17-significant-digit scientific notation; parses back exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    /// Overrides the Frank-Wolfe stopping gap.
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
    pub csv_out: Option<PathBuf>,
    /// Truncated geometric weights are renormalized unless this is false.
    pub renormalize: bool,
}

impl SolveOptions {
    pub fn new() -> Self {
        Self {
            renormalize: true,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct AsymptoticsOptions {
    pub n_range: RangeInclusive<usize>,
    pub csv_out: Option<PathBuf>,
}

impl Default for AsymptoticsOptions {
    fn default() -> Self {
        Self {
            n_range: 1..=12,
            csv_out: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NumrangeOptions {
    pub grid: usize,
    pub csv_out: Option<PathBuf>,
}

impl Default for NumrangeOptions {
    fn default() -> Self {
        Self {
            grid: DEFAULT_GRID,
            csv_out: None,
        }
    }
}

fn finish(result: CliResult<(String, i32)>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match result {
        Ok((report, code)) => {
            let _ = out.write_all(report.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn cmd_solve(
    path: &Path,
    opts: &SolveOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    finish(run_solve(path, opts), out, err)
}

pub struct SolveOutcome {
    pub problem: ZengerProblem,
    pub pair: ZengerPair,
    pub certificate: Certificate,
}

pub fn solve_problem(file: &ProblemFile, opts: &SolveOptions) -> CliResult<SolveOutcome> {
    let spec = file.norm_spec()?;
    let dim = spec.dim().ok_or(Error::Unsupported(
        "the solver needs a finite-dimensional polyhedral norm",
    ))?;
    let alpha = file.weights(dim, opts.renormalize)?;
    let mut tol = file.tolerances();
    if let Some(t) = opts.tol {
        tol.gap = t;
    }
    let mut problem = ZengerProblem::new(spec, alpha, tol)?;
    if let Some(m) = opts.max_iter.or(file.max_iterations) {
        if m == 0 {
            return Err(CliError::Parse("max_iterations must be positive".into()));
        }
        problem = problem.with_max_iterations(m);
    }
    let pair = solve_zenger(&problem)?;
    let certificate = certify(&pair, &problem)?;
    Ok(SolveOutcome {
        problem,
        pair,
        certificate,
    })
}

fn run_solve(path: &Path, opts: &SolveOptions) -> CliResult<(String, i32)> {
    let file = parse_problem(&read(path)?)?;
    let SolveOutcome {
        problem,
        pair,
        certificate: cert,
    } = solve_problem(&file, opts)?;
    let alpha = problem.alpha.as_slice();
    let value = dot(&pair.w, &pair.phi);

    let mut csv = String::from("quantity,index,value\n");
    for (name, v) in [
        ("w", &pair.w),
        ("phi", &pair.phi),
        ("alpha", &alpha.to_vec()),
    ] {
        for (k, x) in v.iter().enumerate() {
            let _ = writeln!(csv, "{name},{},{}", k + 1, fmt_f64(*x));
        }
    }
    let scalars = [
        ("objective", pair.objective),
        ("gap", pair.gap),
        ("value_at_prices", value),
        ("norm_residual", cert.norm_residual),
        ("dual_residual", cert.dual_residual),
        ("pairing_residual", cert.pairing_residual),
        ("factor_residual", cert.factor_residual),
    ];
    for (name, v) in scalars {
        let _ = writeln!(csv, "{name},,{}", fmt_f64(v));
    }
    if let Some(p) = &opts.csv_out {
        write_file(p, &csv)?;
    }

    let verdict = if cert.passed() { "PASS" } else { "FAIL" };
    let mut r = String::new();
    let _ = writeln!(r, "norm: {} on R^{}", file.norm.kind.name(), problem.dim());
    let _ = writeln!(
        r,
        "{:>4}  {:>24}  {:>24}  {:>24}",
        "k", "optimal bundle w_k", "supporting price phi_k", "alpha_k"
    );
    for k in 0..problem.dim() {
        let _ = writeln!(
            r,
            "{:>4}  {:>24}  {:>24}  {:>24}",
            k + 1,
            fmt_f64(pair.w[k]),
            fmt_f64(pair.phi[k]),
            fmt_f64(alpha[k])
        );
    }
    let rows = [
        (
            "utility F(w) = sum alpha_k log|w_k|",
            fmt_f64(pair.objective),
        ),
        ("Frank-Wolfe gap", fmt_f64(pair.gap)),
        (
            "iterations (Newton steps)",
            format!("{} ({})", pair.iterations, pair.newton_steps),
        ),
        ("||w||", fmt_f64(cert.norm)),
        ("||phi||_*", fmt_f64(cert.dual_norm)),
        ("value at prices phi, sum w_k phi_k", fmt_f64(value)),
        ("norm residual abs(||w|| - 1)", fmt_f64(cert.norm_residual)),
        (
            "dual residual abs(||phi||_* - 1)",
            fmt_f64(cert.dual_residual),
        ),
        (
            "pairing residual abs(<w, phi> - 1)",
            fmt_f64(cert.pairing_residual),
        ),
        (
            "factor residual max abs(w_k phi_k - alpha_k)",
            fmt_f64(cert.factor_residual),
        ),
        ("certificate tolerance", fmt_f64(cert.tolerance)),
    ];
    for (label, v) in rows {
        let _ = writeln!(r, "{label:<46}{v}");
    }
    let _ = writeln!(r, "{:<46}{verdict}", "certificate");
    Ok((r, if cert.passed() { EXIT_OK } else { EXIT_FAIL }))
}

pub fn cmd_asymptotics(
    path: &Path,
    opts: &AsymptoticsOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    finish(run_asymptotics(path, opts), out, err)
}

fn family_for(file: &ProblemFile) -> CliResult<NormFamily> {
    Ok(match file.norm.kind {
        NormKind::Sup => NormFamily::Sup,
        NormKind::Example2 => NormFamily::Example2,
        NormKind::Example1Tail => NormFamily::Example1Tail,
        NormKind::Composite => NormFamily::Fixed(file.norm_spec()?),
    })
}

fn pn_csv(table: &PnTable) -> String {
    let mut csv = String::from("N,pn_norm,bound\n");
    for row in &table.rows {
        let bound = row.bound.map(fmt_f64).unwrap_or_default();
        let _ = writeln!(csv, "{},{},{bound}", row.n, fmt_f64(row.pn_norm));
    }
    csv
}

fn fmt_sequence(x: &TailVector) -> String {
    let mut parts: Vec<String> = x.head.iter().map(|v| format!("{v}")).collect();
    parts.push(format!("{}, {}, ...", x.tail, x.tail));
    format!("({})", parts.join(", "))
}

fn run_asymptotics(path: &Path, opts: &AsymptoticsOptions) -> CliResult<(String, i32)> {
    let file = parse_problem(&read(path)?)?;
    let family = family_for(&file)?;
    let table = pn_table(&family, opts.n_range.clone())?;
    let csv = pn_csv(&table);
    if let Some(p) = &opts.csv_out {
        write_file(p, &csv)?;
    }

    let mut r = String::new();
    let _ = writeln!(r, "norm family: {}", file.norm.kind.name());
    let _ = writeln!(r, "{:>4}  {:>24}  {:>24}", "N", "||P_N||", "bound");
    for row in &table.rows {
        let bound = row.bound.map(fmt_f64).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            r,
            "{:>4}  {:>24}  {:>24}",
            row.n,
            fmt_f64(row.pn_norm),
            bound
        );
    }
    let ok = table.within_bounds();
    let _ = writeln!(r, "rows within bounds: {}", if ok { "yes" } else { "NO" });

    if file.norm.kind == NormKind::Example1Tail {
        let spec = NormSpec::Example1Tail;
        let e = TailVector::constant(1.0);
        let check = liminf_check(&spec, &e, opts.n_range.clone())?;
        let upper: Vec<usize> = opts.n_range.clone().collect();
        let upper = &upper[upper.len() / 2..];
        let _ = writeln!(r, "liminf check on e = (1, 1, 1, ...)");
        let _ = writeln!(r, "  norm value       {}", fmt_f64(check.norm_value));
        let _ = writeln!(
            r,
            "  limit estimate   {}  (min of ||P_N e|| over N = {}..{})",
            fmt_f64(check.limit_estimate),
            upper[0],
            upper[upper.len() - 1]
        );
        let _ = writeln!(
            r,
            "  consistent       {}",
            if check.consistent { "yes" } else { "no" }
        );

        let AlphaConfig::Rule(rule) = file.alpha else {
            return Err(CliError::Parse("the refuter needs \"alpha\" as a rule, e.g. {\"rule\": \"geometric\", \"ratio\": 0.5}".into()));
        };
        let w = file
            .candidate
            .as_ref()
            .map(|c| TailVector::new(c.head.clone(), c.tail))
            .unwrap_or_else(|| TailVector::constant(0.5));
        let witness = example1_refute(&w, rule.to_rule())?;
        let _ = writeln!(r, "refutation for candidate w = {}", fmt_sequence(&w));
        let _ = writeln!(r, "  alpha rule       geometric, ratio {}", rule.ratio);
        let _ = writeln!(r, "  N                {}", witness.n);
        let _ = writeln!(r, "  witness x        {}", fmt_sequence(&witness.x));
        let _ = writeln!(
            r,
            "  ||x||            {}",
            fmt_f64(spec.eval_tail(&witness.x)?)
        );
        let _ = writeln!(
            r,
            "  value at prices phi = alpha / w: {} > 1",
            fmt_f64(witness.value)
        );
    }
    Ok((r, if ok { EXIT_OK } else { EXIT_FAIL }))
}

pub fn cmd_numrange(
    path: &Path,
    opts: &NumrangeOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    finish(run_numrange(path, opts), out, err)
}

fn run_numrange(path: &Path, opts: &NumrangeOptions) -> CliResult<(String, i32)> {
    let a = parse_matrix(&read(path)?)?;
    let check = spectrum_hull_check(&a, opts.grid)?;
    let mut csv = String::from("theta,h\n");
    for (t, h) in check.curve.thetas.iter().zip(&check.curve.values) {
        let _ = writeln!(csv, "{},{}", fmt_f64(*t), fmt_f64(*h));
    }
    if let Some(p) = &opts.csv_out {
        write_file(p, &csv)?;
    }
    let mut r = String::new();
    let _ = writeln!(r, "matrix: {0}x{0} upper triangular", a.dim());
    let _ = writeln!(r, "angles: {}", opts.grid);
    let _ = writeln!(r, "eigenvalues (diagonal):");
    for k in 0..a.dim() {
        let z = a.get(k, k);
        let sign = if z.im.is_sign_negative() { '-' } else { '+' };
        let _ = writeln!(r, "  {} {sign} {}i", fmt_f64(z.re), fmt_f64(z.im.abs()));
    }
    let _ = writeln!(
        r,
        "worst margin min h(theta) - Re(e^(-i theta) lambda): {}",
        fmt_f64(check.worst_margin)
    );
    let verdict = if check.ok {
        "spectrum hull inside numerical range"
    } else {
        "CONTAINMENT VIOLATED"
    };
    let _ = writeln!(r, "verdict: {verdict}");
    Ok((r, if check.ok { EXIT_OK } else { EXIT_FAIL }))
}
