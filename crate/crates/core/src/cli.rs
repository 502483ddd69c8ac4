//! Command-line front end. Every subcommand emits one JSON document whose
//! last key is a one-line human summary.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{
    best_excess_check, brent_bound, complex_abs_det, complex_bound, gasper_bound,
    hadamard_row_bound, progression_bound, progression_entries, relate_gap, ryser_bound,
    trace_det_check, BrentInput, ProgressionMode, RyserInput,
};
use crate::error::{Error, Result};
use crate::extremal::{construct_orthogonal, construct_shifted, verify_characterization};
use crate::infdet::{convergence_report, koch_bound, InfiniteMatrixSpec};
use crate::linalg::{det_exact, det_float, entry_stats, parse_matrix, write_matrix, Matrix};
use crate::rational::{format_rational, from_int, parse_rational, to_f64};
use crate::search::{parse_entries, ratio_table, RatioTableOptions, SearchProblem};

fn rational_arg(s: &str) -> std::result::Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "detbound", version, about = "Determinant bounds from entry sums and square sums")]
pub struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VariantArg {
    Shifted,
    Orthogonal,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Anneal,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    FullSquare,
    Repeated,
}

impl From<FamilyArg> for ProgressionMode {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::FullSquare => ProgressionMode::FullSquare,
            FamilyArg::Repeated => ProgressionMode::Repeated,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Three-case bound for a real matrix.
    Bound {
        #[arg(long)]
        input: PathBuf,
    },
    /// Bound for A + iB, in both orientations.
    ComplexBound {
        /// Real part A.
        #[arg(long)]
        input: PathBuf,
        /// Imaginary part B.
        #[arg(long)]
        imag: PathBuf,
    },
    /// Build an extremal matrix for given alpha and beta.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        alpha: BigRational,
        #[arg(long, value_parser = rational_arg)]
        beta: BigRational,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Check the necessary conditions for a determinant maximizer.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Maximal |det| over arrangements of an entry multiset.
    Search {
        /// "a..b" or a comma-separated list.
        #[arg(long, allow_hyphen_values = true)]
        entries: Option<String>,
        /// Use the progression family with p = q = 1 instead of --entries.
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Best |det| against the progression bound for n = 2..=N.
    RatioTable {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Truncated infinite determinants against the exponential bound.
    Infdet {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 60)]
        terms: usize,
    },
    /// Hadamard, Best, Ryser, Brent, det/trace, progression and extremal comparison bounds.
    AppBounds {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        /// Number of ones for the 0/1 bound.
        #[arg(long)]
        ones: Option<usize>,
        /// Entry cap for perturbations of the identity.
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        zero_diagonal: bool,
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        p: Option<BigRational>,
        #[arg(long, value_parser = rational_arg)]
        q: Option<BigRational>,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        alpha: Option<BigRational>,
        #[arg(long, value_parser = rational_arg)]
        beta: Option<BigRational>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    #[serde(flatten)]
    body: Value,
    summary: String,
}

fn read_matrix(path: &Path) -> Result<Matrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_matrix(&text)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn rat(v: &BigRational) -> Value {
    Value::String(format_rational(v))
}

fn cmd_bound(input: &Path) -> Result<(Value, String)> {
    let m = read_matrix(input)?;
    let report = gasper_bound(&m);
    let det = det_exact(&m);
    let abs_det = to_f64(&det.abs());
    let dominated = abs_det <= report.bound * (1.0 + 1e-9);
    let summary = format!(
        "|det| = {abs_det} <= {} ({:?}, case {:?})",
        report.bound, report.formula_tag, report.stats.case_tag
    );
    let body = json!({
        "matrix": to_value(&MatrixRows(&m)),
        "det": rat(&det),
        "report": to_value(&report),
        "hadamard_row_bound": hadamard_row_bound(&m),
        "dominated": dominated,
    });
    Ok((body, summary))
}

struct MatrixRows<'a>(&'a Matrix);

impl Serialize for MatrixRows<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::report::matrix(self.0, s)
    }
}

fn cmd_complex(input: &Path, imag: &Path) -> Result<(Value, String)> {
    let a = read_matrix(input)?;
    let b = read_matrix(imag)?;
    let report = complex_bound(&a, &b)?;
    let abs_det = complex_abs_det(&a, &b)?;
    let summary = format!(
        "|det(A+iB)| = {abs_det} <= {} (direct {}, swapped {})",
        report.bound, report.bound_direct, report.bound_swapped
    );
    let body = json!({
        "real": to_value(&MatrixRows(&a)),
        "imag": to_value(&MatrixRows(&b)),
        "abs_det": abs_det,
        "report": to_value(&report),
        "dominated": abs_det <= report.bound * (1.0 + 1e-9),
    });
    Ok((body, summary))
}

fn cmd_construct(
    n: usize,
    alpha: &BigRational,
    beta: &BigRational,
    variant: VariantArg,
    tol: f64,
) -> Result<(Value, String)> {
    let recipe = match variant {
        VariantArg::Shifted => construct_shifted(n, alpha, beta)?,
        VariantArg::Orthogonal => construct_orthogonal(n, alpha, beta)?,
    };
    let det = det_float(&recipe.matrix);
    let stats = entry_stats(&recipe.matrix);
    let nr = from_int(n as i64);
    let s_residual = to_f64(&(&stats.s - &nr * alpha).abs());
    let q_residual = to_f64(&(&stats.q - &nr * beta).abs());
    let det_relative_residual = if recipe.claimed_det == 0.0 {
        det.abs()
    } else {
        ((det - recipe.claimed_det) / recipe.claimed_det).abs()
    };
    let verification = verify_characterization(&recipe.matrix, tol);
    let summary = format!(
        "{:?} matrix with det {det} (claimed {}), characterization {}",
        recipe.variant,
        recipe.claimed_det,
        if verification.all_ok() { "holds" } else { "fails" }
    );
    let body = json!({
        "recipe": to_value(&recipe),
        "matrix_text": write_matrix(&recipe.matrix),
        "residuals": {
            "det": det,
            "det_relative": det_relative_residual,
            "entry_sum": s_residual,
            "square_sum": q_residual,
        },
        "verification": to_value(&verification),
    });
    Ok((body, summary))
}

fn cmd_verify(input: &Path, tol: f64) -> Result<(Value, String)> {
    let m = read_matrix(input)?;
    let report = verify_characterization(&m, tol);
    let summary = format!(
        "necessary conditions {} (max residual {})",
        if report.all_ok() { "hold" } else { "fail" },
        report.max_residual
    );
    Ok((json!({ "report": to_value(&report) }), summary))
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    entries: Option<&str>,
    family: Option<FamilyArg>,
    n: Option<usize>,
    mode: ModeArg,
    seed: u64,
    budget: u64,
    workers: usize,
) -> Result<(Value, String)> {
    let values = match (entries, family) {
        (Some(spec), None) => parse_entries(spec)?,
        (None, Some(f)) => {
            let n = n.ok_or_else(|| Error::InvalidParameter("--family needs --n".into()))?;
            let one = from_int(1);
            progression_entries(n, &one, &one, f.into())
        }
        _ => {
            return Err(Error::InvalidParameter(
                "give exactly one of --entries or --family".into(),
            ))
        }
    };
    let n = match n {
        Some(n) => n,
        None => {
            let root = (values.len() as f64).sqrt().round() as usize;
            if root * root != values.len() {
                return Err(Error::InvalidParameter(format!(
                    "{} entries do not form a square matrix; pass --n",
                    values.len()
                )));
            }
            root
        }
    };
    let problem = match mode {
        ModeArg::Exhaustive => SearchProblem::exhaustive(n, values)?.with_workers(workers),
        ModeArg::Anneal => SearchProblem::anneal(n, values, seed, budget)?,
    };
    let result = problem.run()?;
    let summary = format!(
        "best |det| {} vs bound {} (ratio {}, {})",
        format_rational(&result.best_abs_det),
        result.upper_bound,
        result.ratio,
        if result.exhaustive_certificate { "exact" } else { "heuristic" }
    );
    let mut params = json!({ "n": n });
    if matches!(mode, ModeArg::Anneal) {
        params["seed"] = json!(seed);
        params["budget"] = json!(budget);
    }
    let body = json!({
        "problem": params,
        "result": to_value(&result),
        "best_matrix_text": write_matrix(&result.best_matrix),
    });
    Ok((body, summary))
}

fn cmd_ratio_table(family: FamilyArg, n: usize, options: RatioTableOptions) -> Result<(Value, String)> {
    let rows = ratio_table(n, family.into(), options)?;
    let dominated = rows.iter().all(|r| to_f64(&r.best) <= r.bound * (1.0 + 1e-9));
    let monotone = rows.windows(2).all(|w| w[0].bound <= w[1].bound);
    let summary = format!(
        "{} rows, best <= bound: {dominated}, bounds increasing: {monotone}",
        rows.len()
    );
    let body = json!({
        "family": to_value(&ProgressionMode::from(family)),
        "seed": options.seed,
        "budget": options.iteration_budget,
        "rows": to_value(&rows),
        "consistent": dominated && monotone,
    });
    Ok((body, summary))
}

fn cmd_infdet(spec_path: &Path, terms: usize) -> Result<(Value, String)> {
    let text = std::fs::read_to_string(spec_path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read {}: {e}", spec_path.display()),
    })?;
    let spec = InfiniteMatrixSpec::from_json(&text)?;
    let koch = koch_bound(&spec)?;
    let rows = convergence_report(&spec, terms)?;
    let last = rows.last().expect("terms >= 1");
    let dominated = rows
        .iter()
        .all(|r| r.truncated_det.abs() <= r.finite_bound * (1.0 + 1e-9));
    let summary = format!(
        "det(I-A({})) = {}, finite bound {}, limit bound {koch}",
        last.n, last.truncated_det, last.finite_bound
    );
    let body = json!({
        "spec": to_value(&spec),
        "sums": to_value(&spec.sums()),
        "koch_bound": koch,
        "rows": to_value(&rows),
        "dominated": dominated,
    });
    Ok((body, summary))
}

#[allow(clippy::too_many_arguments)]
fn cmd_app_bounds(
    input: Option<&Path>,
    n: Option<usize>,
    ones: Option<usize>,
    epsilon: Option<f64>,
    zero_diagonal: bool,
    family: Option<FamilyArg>,
    p: Option<&BigRational>,
    q: Option<&BigRational>,
    alpha: Option<&BigRational>,
    beta: Option<&BigRational>,
) -> Result<(Value, String)> {
    let mut body = serde_json::Map::new();
    let mut parts = Vec::new();
    if let Some(path) = input {
        let m = read_matrix(path)?;
        let det = det_exact(&m);
        let mut section = serde_json::Map::new();
        section.insert("det".into(), rat(&det));
        section.insert("hadamard_row_bound".into(), json!(hadamard_row_bound(&m)));
        section.insert("gasper_bound".into(), json!(gasper_bound(&m).bound));
        section.insert("trace_det".into(), to_value(&trace_det_check(&m)));
        match best_excess_check(&m) {
            Ok(r) => section.insert("best".into(), to_value(&r)),
            Err(_) => section.insert("best".into(), Value::Null),
        };
        match RyserInput::from_matrix(&m) {
            Ok(r) => section.insert(
                "ryser".into(),
                json!({ "input": to_value(&r), "bound": ryser_bound(&r) }),
            ),
            Err(_) => section.insert("ryser".into(), Value::Null),
        };
        // Read the matrix as I − E and report the perturbation bounds.
        let e = Matrix::identity(m.n())?
            .entries()
            .iter()
            .zip(m.entries())
            .map(|(i, x)| i - x)
            .collect::<Vec<_>>();
        let cap = e.iter().map(|v| v.abs()).max().unwrap_or_else(BigRational::zero);
        if cap.is_zero() {
            section.insert("brent".into(), Value::Null);
        } else {
            let zd = (0..m.n()).all(|i| e[i * m.n() + i].is_zero());
            let input = BrentInput::new(m.n(), to_f64(&cap), zd)?;
            section.insert(
                "brent".into(),
                json!({ "input": to_value(&input), "bound": brent_bound(&input) }),
            );
        }
        body.insert("matrix".into(), Value::Object(section));
        parts.push("matrix");
    }
    if let Some(n) = n {
        if let Some(t) = ones {
            let r = RyserInput::new(n, t)?;
            body.insert("ryser".into(), json!({ "input": to_value(&r), "bound": ryser_bound(&r) }));
            parts.push("ryser");
        }
        if let Some(eps) = epsilon {
            let input = BrentInput::new(n, eps, zero_diagonal)?;
            body.insert("brent".into(), json!({ "input": to_value(&input), "bound": brent_bound(&input) }));
            parts.push("brent");
        }
        if let Some(f) = family {
            let one = from_int(1);
            let p = p.cloned().unwrap_or_else(|| one.clone());
            let q = q.cloned().unwrap_or(one);
            body.insert("progression".into(), to_value(&progression_bound(n, &p, &q, f.into())?));
            parts.push("progression");
        }
        if let (Some(a), Some(b)) = (alpha, beta) {
            body.insert("relate".into(), to_value(&relate_gap(a, b, n)?));
            parts.push("relate");
        }
    }
    if parts.is_empty() {
        return Err(Error::InvalidParameter(
            "nothing to evaluate: pass --input, or --n with --ones/--epsilon/--family/--alpha+--beta".into(),
        ));
    }
    Ok((Value::Object(body), format!("evaluated: {}", parts.join(", "))))
}

fn dispatch(command: &Command) -> Result<(&'static str, Value, String)> {
    let (name, (body, summary)) = match command {
        Command::Bound { input } => ("bound", cmd_bound(input)?),
        Command::ComplexBound { input, imag } => ("complex-bound", cmd_complex(input, imag)?),
        Command::Construct { n, alpha, beta, variant, tol } => {
            ("construct", cmd_construct(*n, alpha, beta, *variant, *tol)?)
        }
        Command::Verify { input, tol } => ("verify", cmd_verify(input, *tol)?),
        Command::Search { entries, family, n, mode, seed, budget, workers } => (
            "search",
            cmd_search(entries.as_deref(), *family, *n, *mode, *seed, *budget, *workers)?,
        ),
        Command::RatioTable { family, n, seed, budget, workers } => (
            "ratio-table",
            cmd_ratio_table(
                *family,
                *n,
                RatioTableOptions { seed: *seed, iteration_budget: *budget, workers: *workers },
            )?,
        ),
        Command::Infdet { spec, terms } => ("infdet", cmd_infdet(spec, *terms)?),
        Command::AppBounds {
            input, n, ones, epsilon, zero_diagonal, family, p, q, alpha, beta,
        } => (
            "app-bounds",
            cmd_app_bounds(
                input.as_deref(),
                *n,
                *ones,
                *epsilon,
                *zero_diagonal,
                *family,
                p.as_ref(),
                q.as_ref(),
                alpha.as_ref(),
                beta.as_ref(),
            )?,
        ),
    };
    Ok((name, body, summary))
}

fn validate(command: &Command) -> Result<()> {
    let tol_ok = |tol: f64| {
        if tol > 0.0 && tol.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("--tol must be > 0 (got {tol})")))
        }
    };
    match command {
        Command::Construct { tol, .. } | Command::Verify { tol, .. } => tol_ok(*tol),
        Command::Infdet { terms, .. } if *terms == 0 => {
            Err(Error::InvalidParameter("--terms must be >= 1".into()))
        }
        _ => Ok(()),
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::SearchSpaceTooLarge { .. } => 3,
        _ => 2,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let result = validate(&cli.command).and_then(|()| dispatch(&cli.command));
    match result {
        Ok((command, body, summary)) => {
            let mut text = serde_json::to_string_pretty(&Envelope { command, body, summary })
                .expect("reports serialize");
            text.push('\n');
            match &cli.output {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => Outcome { code: 0, stdout: String::new(), stderr: String::new() },
                    Err(e) => Outcome {
                        code: 2,
                        stdout: String::new(),
                        stderr: format!("error: cannot write {}: {e}\n", path.display()),
                    },
                },
                None => Outcome { code: 0, stdout: text, stderr: String::new() },
            }
        }
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
