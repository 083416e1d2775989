//! Command-line front end for the eigenmatrix engine.
//!
//! Every command reads a matrix JSON file, optionally a spectrum JSON file,
//! and writes human-readable text or, with `--json`, machine JSON to stdout.
//!
//! Exit codes: 0 success, 2 parse/schema/usage error, 3 spectrum outside the
//! Gaussian rationals, 4 not diagonalizable (`diagonalize` only), 5 invalid
//! spectrum or target, 6 internal consistency failure.

pub mod bench;
pub mod io;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use eigenmatrix::factor::{diagonalize, matrix_power, ode_general_solution, render_solution, OdeSolutionTerm, PolyPart};
use eigenmatrix::jordan::jordan_form;
use eigenmatrix::kappa::{
    column_space_intersection, cross_product_eigenvector_3x3, eigenvectors_via_kappa, is_diagonalizable,
    left_eigenvectors_via_kappa,
};
use eigenmatrix::matrix::{mat_nullspace_basis, mat_sub_scalar_diag};
use eigenmatrix::spectrum::{charpoly, find_spectrum, spectrum_of, verify_spectrum};
use eigenmatrix::verify::{corpus_entry, oracle_eigenvectors, oracle_left_eigenvectors};
use eigenmatrix::{EigenError, GaussianRational, GqMatrix, GqVector, Matrix, Spectrum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::bench::{render_bench, run_bench};
use crate::io::{matrix_json, parse_matrix_json, parse_spectrum_json, spectrum_json, vector_json, SchemaError};

#[derive(Debug, Parser)]
#[command(name = "eigenmatrix", version, about = "Exact eigenvectors from products of characteristic matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Input {
    /// Matrix JSON file.
    pub input: PathBuf,
    /// Spectrum JSON file; checked against the characteristic polynomial.
    #[arg(long)]
    pub spectrum: Option<PathBuf>,
    /// Emit machine-readable JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Columns of the complementary κ-product.
    Kappa,
    /// Cross product of two rows of `A − λI` (3x3 only).
    Cross,
    /// Echelon-form null space of `A − λI`.
    Oracle,
    /// Intersection of the column spaces of the complementary κ-matrices.
    Intersect,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Right eigenvectors for every eigenvalue, or for --target.
    Eigenvectors {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Kappa)]
        method: Method,
        /// Left eigenvectors instead of right ones.
        #[arg(long)]
        left: bool,
    },
    /// Left eigenvectors (row vectors with w·A = λ·w).
    Left {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
    },
    /// P, D and P⁻¹ with A = P·D·P⁻¹.
    Diagonalize {
        #[command(flatten)]
        input: Input,
    },
    /// Jordan form with its chains.
    Jordan {
        #[command(flatten)]
        input: Input,
    },
    /// Characteristic polynomial and its exact roots.
    Charpoly {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        no_roots: bool,
    },
    /// Diagonalizability verdict with the product witness.
    Check {
        #[command(flatten)]
        input: Input,
    },
    /// A to the power --n.
    Power {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: u32,
    },
    /// General solution of X' = A·X.
    Ode {
        #[command(flatten)]
        input: Input,
        /// Keep complex exponentials for conjugate pairs.
        #[arg(long)]
        no_realify: bool,
    },
    /// Operation counts of the κ path against the echelon oracle.
    Bench {
        /// Matrix JSON file; without one a matrix is generated from --seed and --dim.
        input: Option<PathBuf>,
        #[arg(long)]
        spectrum: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("schema error: {0}")]
    Schema(#[from] SchemaError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] EigenError),
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

pub fn exit_code(err: &CliError, command: &Command) -> i32 {
    let e = match err {
        CliError::Io { .. } | CliError::Schema(_) | CliError::Usage(_) => return 2,
        CliError::Engine(e) => e,
    };
    match e {
        EigenError::Parse { .. } | EigenError::NotSquare { .. } | EigenError::DimensionMismatch(_) => 2,
        EigenError::RealifyOnComplexMatrix => 2,
        EigenError::IrrationalSpectrum { .. } => 3,
        EigenError::NotDiagonalizable { .. } if matches!(command, Command::Diagonalize { .. }) => 4,
        EigenError::InvalidSpectrum(_)
        | EigenError::TargetNotInSpectrum(_)
        | EigenError::NotInSpectrum(_)
        | EigenError::WrongSpectrum
        | EigenError::AllRowsParallel => 5,
        _ => 6,
    }
}

fn hint(err: &CliError, command: &Command) -> Option<&'static str> {
    match err {
        CliError::Engine(EigenError::IrrationalSpectrum { .. }) => Some(match command {
            Command::Charpoly { .. } => "pass --no-roots to print the polynomial alone",
            _ => "supply the eigenvalues with --spectrum <file>",
        }),
        CliError::Engine(EigenError::NotDiagonalizable { .. }) => Some("use the jordan command for a Jordan form"),
        _ => None,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(&cli.command) {
        Ok(out) => Outcome::ok(out),
        Err(e) => {
            let mut stderr = format!("error: {e}\n");
            if let Some(h) = hint(&e, &cli.command) {
                stderr += &format!("hint: {h}\n");
            }
            Outcome {
                code: exit_code(&e, &cli.command),
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_matrix(path: &Path) -> Result<GqMatrix, CliError> {
    Ok(parse_matrix_json(&read(path)?)?)
}

fn load_spectrum(a: &GqMatrix, path: Option<&Path>) -> Result<Spectrum, CliError> {
    Ok(match path {
        Some(p) => verify_spectrum(a, &parse_spectrum_json(&read(p)?)?)?,
        None => spectrum_of(a)?,
    })
}

fn load(input: &Input) -> Result<(GqMatrix, Spectrum), CliError> {
    let a = load_matrix(&input.input)?;
    a.require_square()?;
    let s = load_spectrum(&a, input.spectrum.as_deref())?;
    Ok((a, s))
}

fn parse_target(s: &Spectrum, target: Option<&str>) -> Result<Vec<(GaussianRational, usize)>, CliError> {
    match target {
        None => Ok(s.pairs().to_vec()),
        Some(text) => {
            let t: GaussianRational = text.parse()?;
            let m = s
                .multiplicity(&t)
                .ok_or_else(|| EigenError::TargetNotInSpectrum(t.to_string()))?;
            Ok(vec![(t, m)])
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable JSON")
}

fn dispatch(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Eigenvectors {
            input,
            target,
            method,
            left,
        } => eigenvectors(input, target.as_deref(), *method, *left),
        Command::Left { input, target } => eigenvectors(input, target.as_deref(), Method::Kappa, true),
        Command::Diagonalize { input } => diagonalize_cmd(input),
        Command::Jordan { input } => jordan_cmd(input),
        Command::Charpoly { input, no_roots } => charpoly_cmd(input, *no_roots),
        Command::Check { input } => check_cmd(input),
        Command::Power { input, n } => power_cmd(input, *n),
        Command::Ode { input, no_realify } => ode_cmd(input, !*no_realify),
        Command::Bench {
            input,
            spectrum,
            json,
            seed,
            dim,
        } => bench_cmd(input.as_deref(), spectrum.as_deref(), *json, *seed, *dim),
    }
}

/// Eigenvectors of `lambda` from `col(κ_μ^{m_μ})` intersected over every
/// other eigenvalue `μ`, then with the null space of `κ_λ`.
fn intersect_method(a: &GqMatrix, s: &Spectrum, lambda: &GaussianRational) -> Result<Vec<GqVector>, EigenError> {
    let n = a.rows();
    let mut basis = Matrix::identity(n);
    for (mu, m) in s.pairs() {
        if mu == lambda {
            continue;
        }
        let k = mat_sub_scalar_diag(a, mu)?.pow(*m as u32)?;
        let cols = column_space_intersection(&basis, &k)?;
        if cols.is_empty() {
            return Ok(Vec::new());
        }
        basis = Matrix::from_columns(&cols)?;
    }
    let null = mat_nullspace_basis(&mat_sub_scalar_diag(a, lambda)?);
    column_space_intersection(&basis, &Matrix::from_columns(&null)?)
}

fn find_vectors(
    a: &GqMatrix,
    s: &Spectrum,
    lambda: &GaussianRational,
    method: Method,
    left: bool,
) -> Result<Vec<GqVector>, CliError> {
    if left && method != Method::Kappa && method != Method::Oracle {
        return Err(CliError::Usage("--left supports the kappa and oracle methods".into()));
    }
    Ok(match (method, left) {
        (Method::Kappa, false) => eigenvectors_via_kappa(a, s, lambda, None)?,
        (Method::Kappa, true) => left_eigenvectors_via_kappa(a, s, lambda, None)?,
        (Method::Oracle, false) => oracle_eigenvectors(a, lambda, None)?,
        (Method::Oracle, true) => oracle_left_eigenvectors(a, lambda)?,
        (Method::Cross, _) => {
            if a.rows() != 3 {
                return Err(CliError::Usage("the cross method needs a 3x3 matrix".into()));
            }
            vec![cross_product_eigenvector_3x3(a, lambda)?]
        }
        (Method::Intersect, _) => intersect_method(a, s, lambda)?,
    })
}

fn eigenvectors(input: &Input, target: Option<&str>, method: Method, left: bool) -> Result<String, CliError> {
    let (a, s) = load(input)?;
    let targets = parse_target(&s, target)?;
    let mut spaces = Vec::with_capacity(targets.len());
    for (lambda, m) in targets {
        let vectors = find_vectors(&a, &s, &lambda, method, left)?;
        spaces.push((lambda, m, vectors));
    }
    if input.json {
        let v = if target.is_some() {
            json!(spaces[0].2.iter().map(vector_json).collect::<Vec<_>>())
        } else {
            json!(spaces
                .iter()
                .map(|(l, m, vs)| json!({
                    "eigenvalue": l.to_string(),
                    "multiplicity": m,
                    "vectors": vs.iter().map(vector_json).collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>())
        };
        return Ok(pretty(&v));
    }
    let mut out = String::new();
    for (l, m, vs) in &spaces {
        out += &format!("l = {l} (algebraic {m}, geometric {})\n", vs.len());
        for v in vs {
            out += &format!("  {v}\n");
        }
    }
    Ok(out.trim_end().to_string())
}

fn diagonalize_cmd(input: &Input) -> Result<String, CliError> {
    let (a, s) = load(input)?;
    let d = diagonalize(&a, Some(&s))?;
    if input.json {
        return Ok(pretty(&json!({
            "p": matrix_json(&d.p),
            "d": matrix_json(&d.d),
            "p_inv": matrix_json(&d.p_inv),
            "eigenvalues": d.eigen_order.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })));
    }
    Ok(format!("P =\n{}\nD =\n{}\nP^-1 =\n{}", d.p, d.d, d.p_inv))
}

fn jordan_cmd(input: &Input) -> Result<String, CliError> {
    let (a, s) = load(input)?;
    let f = jordan_form(&a, &s)?;
    if input.json {
        return Ok(pretty(&json!({
            "p": matrix_json(&f.p),
            "j": matrix_json(&f.j),
            "p_inv": matrix_json(&f.p_inv),
            "blocks": f.blocks.iter().map(|(l, k)| json!({"eigenvalue": l.to_string(), "size": k})).collect::<Vec<_>>(),
            "chains": f.chains.iter().map(|c| json!({
                "eigenvalue": c.eigenvalue.to_string(),
                "vectors": c.vectors.iter().map(vector_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })));
    }
    let blocks: Vec<String> = f.blocks.iter().map(|(l, k)| format!("J{k}({l})")).collect();
    Ok(format!(
        "blocks: {}\nP =\n{}\nJ =\n{}\nP^-1 =\n{}",
        blocks.join(" "),
        f.p,
        f.j,
        f.p_inv
    ))
}

fn charpoly_cmd(input: &Input, no_roots: bool) -> Result<String, CliError> {
    let a = load_matrix(&input.input)?;
    let p = charpoly(&a)?;
    let roots = if no_roots {
        None
    } else {
        Some(match input.spectrum.as_deref() {
            Some(path) => verify_spectrum(&a, &parse_spectrum_json(&read(path)?)?)?,
            None => find_spectrum(&p)?,
        })
    };
    if input.json {
        return Ok(pretty(&json!({
            "polynomial": p.to_string(),
            "coefficients": p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "roots": roots.as_ref().map(spectrum_json),
        })));
    }
    Ok(match roots {
        Some(r) => format!("{p}\nroots: {r}"),
        None => p.to_string(),
    })
}

fn check_cmd(input: &Input) -> Result<String, CliError> {
    let (a, s) = load(input)?;
    let verdict = is_diagonalizable(&a, &s, None)?;
    let label = if verdict.diagonalizable {
        "diagonalizable"
    } else {
        "not diagonalizable"
    };
    if input.json {
        return Ok(pretty(&json!({
            "diagonalizable": verdict.diagonalizable,
            "verdict": label,
            "witness": verdict.witness().map(matrix_json),
        })));
    }
    Ok(match verdict.witness() {
        Some(w) => format!("{label}\nwitness (product over distinct eigenvalues):\n{w}"),
        None => label.to_string(),
    })
}

fn power_cmd(input: &Input, n: u32) -> Result<String, CliError> {
    let a = load_matrix(&input.input)?;
    a.require_square()?;
    let s = match input.spectrum.as_deref() {
        Some(p) => Some(load_spectrum(&a, Some(p))?),
        None => None,
    };
    let m = matrix_power(&a, n, s.as_ref())?;
    if input.json {
        return Ok(pretty(&json!({"n": n, "matrix": matrix_json(&m)})));
    }
    Ok(m.to_string())
}

fn poly_json(parts: &[PolyPart<GaussianRational>]) -> Value {
    json!(parts
        .iter()
        .map(|p| json!({"vector": vector_json(&p.vector), "power": p.power, "factorial": p.factorial}))
        .collect::<Vec<_>>())
}

fn term_json(t: &OdeSolutionTerm<GaussianRational>) -> Value {
    json!({
        "label": t.label,
        "exponent": t.exponent.to_string(),
        "polynomial": poly_json(&t.vector_polynomial),
        "trig": t.trig.as_ref().map(|tr| json!({"beta": tr.beta.to_string(), "sin_polynomial": poly_json(&tr.sin_polynomial)})),
    })
}

fn ode_cmd(input: &Input, realify: bool) -> Result<String, CliError> {
    let (a, s) = load(input)?;
    let terms = ode_general_solution(&a, Some(&s), realify && a.is_real())?;
    let text = render_solution(&terms);
    if input.json {
        return Ok(pretty(&json!({
            "text": text,
            "terms": terms.iter().map(term_json).collect::<Vec<_>>(),
        })));
    }
    Ok(text)
}

fn bench_cmd(input: Option<&Path>, spectrum: Option<&Path>, json: bool, seed: u64, dim: usize) -> Result<String, CliError> {
    let report = match input {
        Some(path) => {
            let a = load_matrix(path)?;
            a.require_square()?;
            let s = load_spectrum(&a, spectrum)?;
            run_bench(&a, &s, "file", None)?
        }
        None => {
            if spectrum.is_some() {
                return Err(CliError::Usage("--spectrum needs a matrix file".into()));
            }
            let e = corpus_entry(seed, dim)?;
            run_bench(&e.matrix, e.spectrum(), "seed", Some(seed))?
        }
    };
    if json {
        return Ok(serde_json::to_string_pretty(&report).expect("serializable report"));
    }
    Ok(render_bench(&report))
}
