//! The `jcd` command-line front end.
//!
//! Exit codes: 0 success, 1 other failure, 2 parse error, 3 field mismatch,
//! 4 annihilator check failed, 5 verification failed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::chevalley::{self, ChevalleyError, IterationMode, Sidecar};
use crate::field::{Field, FieldError, FieldSpec, PrimeField, Rationals};
use crate::matrix::random::seeded_block_companion;
use crate::matrix::{AnyMat, FormatError, Mat, MatrixError};
use crate::poly::{Poly, PolyError, SquareFreeCert};

pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_FIELD_MISMATCH: i32 = 3;
pub const EXIT_NOT_ANNIHILATING: i32 = 4;
pub const EXIT_VERIFY_FAILED: i32 = 5;

pub const BENCH_HEADER: &str = "n,mode,seconds,k_used,deg_f,deg_g";

#[derive(Debug, Parser)]
#[command(name = "jcd", version, about = "Exact Jordan-Chevalley decomposition over Q and F_p")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split a matrix into semisimple and nilpotent parts.
    Decompose(DecomposeArgs),
    /// Print the minimal polynomial of a matrix.
    Minpoly(MatrixInput),
    /// Print a square-free part g and exponent m of a polynomial.
    Squarefree(SquarefreeArgs),
    /// Re-check a stored decomposition against its matrix.
    Verify(VerifyArgs),
    /// Time both iteration modes on random block-companion matrices over F_p.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct MatrixInput {
    /// Matrix file (text or JSON).
    #[arg(long)]
    pub input: PathBuf,
    /// Expected field: `q`, or `fp <p>`.
    #[arg(long, num_args = 1..=2, value_names = ["KIND", "P"])]
    pub field: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub matrix: MatrixInput,
    /// File holding an annihilating polynomial; defaults to the minimal polynomial.
    #[arg(long, conflicts_with = "roots")]
    pub annihilator: Option<PathBuf>,
    /// Known eigenvalues with multiplicity bounds, `l1:n1,l2:n2,...`.
    #[arg(long)]
    pub roots: Option<String>,
    #[arg(long, default_value_t = IterationMode::Quotient)]
    pub mode: IterationMode,
    /// Output prefix; writes `<prefix>.D.mat`, `<prefix>.N.mat`, `<prefix>.jcd.txt`.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Verify the result before writing it.
    #[arg(long)]
    pub verify: bool,
    /// Print iteration statistics.
    #[arg(long)]
    pub stats: bool,
}

#[derive(Debug, Args)]
pub struct SquarefreeArgs {
    #[arg(long, num_args = 1..=2, value_names = ["KIND", "P"], required = true)]
    pub field: Vec<String>,
    /// Polynomial as `1,0,1` or `X^2+1`.
    #[arg(long, required_unless_present_any = ["poly_file", "roots"])]
    pub poly: Option<String>,
    #[arg(long, conflicts_with = "poly")]
    pub poly_file: Option<PathBuf>,
    /// Build g from distinct roots instead, `l1:n1,l2:n2,...`.
    #[arg(long, conflicts_with_all = ["poly", "poly_file"])]
    pub roots: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub matrix: MatrixInput,
    /// Prefix the decomposition was written under.
    #[arg(long)]
    pub decomposition: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, num_args = 1..=2, value_names = ["KIND", "P"], default_values = ["fp", "2"])]
    pub field: Vec<String>,
    #[arg(long, value_delimiter = ',', default_values_t = [64usize, 128, 256])]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [IterationMode::Quotient, IterationMode::Matrix])]
    pub modes: Vec<IterationMode>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("annihilator check failed: {0}")]
    NotAnnihilating(String),
    #[error("verification failed")]
    VerificationFailed,
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::FieldMismatch(_) => EXIT_FIELD_MISMATCH,
            CliError::NotAnnihilating(_) => EXIT_NOT_ANNIHILATING,
            CliError::VerificationFailed => EXIT_VERIFY_FAILED,
            CliError::Other(_) => EXIT_OTHER,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Field(fe) => fe.into(),
            FormatError::Matrix(me) => me.into(),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::Parse(_) => CliError::Parse(e.to_string()),
            FieldError::Mismatch(..) => CliError::FieldMismatch(e.to_string()),
            FieldError::NotPrime(_) | FieldError::ExtensionField { .. } | FieldError::ModulusTooLarge(_) => {
                CliError::Parse(e.to_string())
            }
            _ => CliError::Other(e.to_string()),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Parse(_) => CliError::Parse(e.to_string()),
            PolyError::Field(fe) => fe.into(),
            _ => CliError::Other(e.to_string()),
        }
    }
}

impl From<MatrixError> for CliError {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::FieldMismatch(..) => CliError::FieldMismatch(e.to_string()),
            MatrixError::Ragged { .. } => CliError::Parse(e.to_string()),
            MatrixError::Field(fe) => fe.into(),
            _ => CliError::Other(e.to_string()),
        }
    }
}

impl From<ChevalleyError> for CliError {
    fn from(e: ChevalleyError) -> Self {
        match e {
            ChevalleyError::NotAnnihilating => CliError::NotAnnihilating(e.to_string()),
            ChevalleyError::Poly(pe) => pe.into(),
            ChevalleyError::Matrix(me) => me.into(),
            _ => CliError::Other(e.to_string()),
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Other(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| io_err(path, e))
}

/// Runs one subcommand, printing diagnostics to stderr, and returns the exit code.
pub fn run(config: RunConfig) -> i32 {
    let mut stdout = std::io::stdout().lock();
    match execute(config.command, &mut stdout) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("jcd: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Decompose(args) => {
            let a = load_matrix(&args.matrix)?;
            match a {
                AnyMat::Rational(m) => decompose(m, &args, out),
                AnyMat::Prime(m) => decompose(m, &args, out),
            }
        }
        Command::Minpoly(input) => {
            let text = match load_matrix(&input)? {
                AnyMat::Rational(m) => m.minimal_polynomial().to_string(),
                AnyMat::Prime(m) => m.minimal_polynomial().to_string(),
            };
            writeln!(out, "{text}").map_err(|e| CliError::Other(e.to_string()))
        }
        Command::Squarefree(args) => match parse_field(&args.field)? {
            FieldSpec::Rationals => squarefree(Rationals, &args, out),
            FieldSpec::PrimeField(p) => squarefree(PrimeField::new(p)?, &args, out),
        },
        Command::Verify(args) => match load_matrix(&args.matrix)? {
            AnyMat::Rational(m) => verify(m, &args, out),
            AnyMat::Prime(m) => verify(m, &args, out),
        },
        Command::Bench(args) => match parse_field(&args.field)? {
            FieldSpec::Rationals => Err(CliError::Other("bench runs over F_p only".into())),
            FieldSpec::PrimeField(p) => bench(PrimeField::new(p)?, &args, out),
        },
    }
}

/// `["q"]` or `["fp", "<p>"]`.
pub fn parse_field(tokens: &[String]) -> Result<FieldSpec, CliError> {
    match tokens {
        [k] if k == "q" => Ok(FieldSpec::Rationals),
        [k, p] if k == "fp" => {
            let p: u64 = p.parse().map_err(|_| CliError::Parse(format!("bad prime {p:?}")))?;
            Ok(FieldSpec::prime(p)?)
        }
        _ => Err(CliError::Parse(format!("bad field {:?}; expected `q` or `fp <p>`", tokens.join(" ")))),
    }
}

fn load_matrix(input: &MatrixInput) -> Result<AnyMat, CliError> {
    let a = AnyMat::parse(&read(&input.input)?)?;
    if let Some(tokens) = &input.field {
        let expected = parse_field(tokens)?;
        if expected != a.spec() {
            return Err(CliError::FieldMismatch(format!(
                "--field {expected} but {} declares {}",
                input.input.display(),
                a.spec()
            )));
        }
    }
    Ok(a)
}

/// `l1:n1,l2:n2,...`.
pub fn parse_roots<F: Field>(field: &F, s: &str) -> Result<Vec<(F::Elem, u32)>, CliError> {
    s.split(',')
        .map(|item| {
            let (l, n) = item
                .trim()
                .rsplit_once(':')
                .ok_or_else(|| CliError::Parse(format!("bad root {item:?}; expected value:multiplicity")))?;
            let n: u32 = n.trim().parse().map_err(|_| CliError::Parse(format!("bad multiplicity in {item:?}")))?;
            Ok((field.parse_elem(l.trim())?, n))
        })
        .collect()
}

fn output_paths(prefix: &Path) -> (PathBuf, PathBuf, PathBuf) {
    let with = |suffix: &str| {
        let mut s = prefix.as_os_str().to_owned();
        s.push(suffix);
        PathBuf::from(s)
    };
    (with(".D.mat"), with(".N.mat"), with(".jcd.txt"))
}

fn decompose<F: Field>(a: Mat<F>, args: &DecomposeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let field = a.field().clone();
    let start = Instant::now();
    let dec = if let Some(roots) = &args.roots {
        let roots = parse_roots(&field, roots)?;
        chevalley::jordan_chevalley_with_roots(&a, &roots, args.mode)?
    } else if let Some(path) = &args.annihilator {
        let f = Poly::parse(field, &read(path)?)?;
        chevalley::jordan_chevalley(&a, Some(&f), args.mode)?
    } else {
        chevalley::jordan_chevalley(&a, None, args.mode)?
    };
    let seconds = start.elapsed().as_secs_f64();

    let w = |e: std::io::Error| CliError::Other(e.to_string());
    if args.verify {
        let report = chevalley::verify(&a, &dec)?;
        write!(out, "{report}").map_err(w)?;
        if !report.passed() {
            return Err(CliError::VerificationFailed);
        }
    }
    let prefix = args.output.clone().unwrap_or_else(|| args.matrix.input.with_extension(""));
    let (d_path, n_path, side_path) = output_paths(&prefix);
    write(&d_path, &dec.semisimple.to_text())?;
    write(&n_path, &dec.nilpotent.to_text())?;
    write(&side_path, &Sidecar::from(&dec).to_text())?;
    if args.stats {
        writeln!(
            out,
            "k_used={} k0={} m={} deg_f={} deg_g={} mode={} seconds={seconds:.6}",
            dec.k_used,
            dec.k0,
            dec.cert.m,
            dec.f_used.degree().unwrap_or(0),
            dec.cert.g.degree().unwrap_or(0),
            dec.mode
        )
        .map_err(w)?;
    }
    writeln!(out, "wrote {} {} {}", d_path.display(), n_path.display(), side_path.display()).map_err(w)
}

fn squarefree<F: Field>(field: F, args: &SquarefreeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cert = if let Some(roots) = &args.roots {
        SquareFreeCert::from_roots(field.clone(), &parse_roots(&field, roots)?)?
    } else {
        let text = match (&args.poly, &args.poly_file) {
            (Some(p), _) => p.clone(),
            (None, Some(path)) => read(path)?,
            (None, None) => return Err(CliError::Parse("no polynomial given".into())),
        };
        Poly::parse(field, &text)?.squarefree_part()?
    };
    writeln!(out, "g = {}\nm = {}", cert.g, cert.m).map_err(|e| CliError::Other(e.to_string()))
}

fn verify<F: Field>(a: Mat<F>, args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (d_path, n_path, side_path) = output_paths(&args.decomposition);
    let load = |p: &Path| -> Result<Mat<F>, CliError> {
        let m = AnyMat::parse(&read(p)?)?;
        let spec = m.spec();
        match m.downcast::<F>() {
            Some(m) if m.field() == a.field() => Ok(m),
            _ => Err(CliError::FieldMismatch(format!(
                "{} is over {spec}, A over {}",
                p.display(),
                a.field().spec()
            ))),
        }
    };
    let d = load(&d_path)?;
    let n = load(&n_path)?;
    let side = Sidecar::parse(a.field().clone(), &read(&side_path)?)?;
    let report = chevalley::verify_parts(&a, &d, &n, &side.g, side.m, side.p_d.as_ref())?;
    write!(out, "{report}").map_err(|e| CliError::Other(e.to_string()))?;
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

/// One CSV row per (size, mode, repetition).
pub fn bench<F: Field>(field: F, args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let mut csv = String::from(BENCH_HEADER);
    csv.push('\n');
    for &n in &args.sizes {
        let a = seeded_block_companion(&field, n, args.seed);
        for &mode in &args.modes {
            for _ in 0..args.reps.max(1) {
                let start = Instant::now();
                let dec = chevalley::jordan_chevalley(&a, None, mode)?;
                let seconds = start.elapsed().as_secs_f64();
                csv.push_str(&format!(
                    "{n},{mode},{seconds:.6},{},{},{}\n",
                    dec.k_used,
                    dec.f_used.degree().unwrap_or(0),
                    dec.cert.g.degree().unwrap_or(0)
                ));
            }
        }
    }
    match &args.output {
        Some(path) => write(path, &csv),
        None => out.write_all(csv.as_bytes()).map_err(|e| CliError::Other(e.to_string())),
    }
}
