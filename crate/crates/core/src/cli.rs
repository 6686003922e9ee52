//! Command-line front end.
//!
//! Exit codes: 0 when everything verified, 1 when a verification report
//! missed its expectation, 2 for invalid input or flags. All output is JSON
//! on stdout and is a pure function of the arguments and input file.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::dft::{dft_1d, dft_2d, Complex};
use crate::error::Error;
use crate::hadamard::{separable_2d, wht_embedding, wht_staged};
use crate::linalg::Scalar;
use crate::ops::count_ops;
use crate::oracle::{self, reference};
use crate::report::{OracleReport, Witness};
use crate::walsh::{sequency_permutation, walsh_embedding, walsh_fold};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "dirmonoid", version, about = "Directional monoidal composition and compositional transforms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one transform on a JSON input file.
    Transform(TransformArgs),
    /// Run the algebraic-law suite and every transform-vs-reference suite.
    Check(CheckArgs),
    /// Count scalar operations of the compositional, staged and reference paths.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Dft,
    Dft2,
    Hadamard,
    HadamardStaged,
    Walsh,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Dft => "dft",
            Kind::Dft2 => "dft2",
            Kind::Hadamard => "hadamard",
            Kind::HadamardStaged => "hadamard-staged",
            Kind::Walsh => "walsh",
        }
    }

    fn is_dft(self) -> bool {
        matches!(self, Kind::Dft | Kind::Dft2)
    }
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Expected length (1D) or side (2D); checked against the input.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub input: PathBuf,
    /// Compare against the brute-force reference and embed the report.
    #[arg(long)]
    pub verify: bool,
    /// Emit DFT output with the conventional negative-exponent kernel.
    #[arg(long)]
    pub conjugate: bool,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub dims: u8,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub cases: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub dims: u8,
}

/// What a command printed and the exit code it chose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] Error),
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Transform(args) => transform(args),
        Command::Check(args) => check(args),
        Command::Bench(args) => bench(args),
    }
}

fn emit<S: Serialize>(value: &S, ok: bool) -> Result<Outcome, CliError> {
    let stdout = serde_json::to_string_pretty(value).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(Outcome { code: if ok { EXIT_OK } else { EXIT_VERIFY_FAILED }, stdout })
}

#[derive(Serialize)]
struct TransformOutput<R> {
    kind: &'static str,
    n: usize,
    result: R,
    #[serde(skip_serializing_if = "Option::is_none")]
    verify: Option<OracleReport>,
}

enum Input {
    Line(Vec<Value>),
    Grid(Vec<Vec<Value>>),
}

fn parse_input(args: &TransformArgs, two_d: bool) -> Result<Input, CliError> {
    let path = args.input.display();
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?;
    let json: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    let Value::Array(items) = json else {
        return Err(CliError::Input(format!("{path}: expected a JSON array")));
    };
    if items.is_empty() {
        return Err(CliError::Input(format!("{path}: input is empty")));
    }
    let input = if two_d {
        let rows = items
            .into_iter()
            .map(|r| match r {
                Value::Array(r) => Ok(r),
                _ => Err(CliError::Input(format!("{path}: expected an array of arrays"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let side = rows.len();
        if rows.iter().any(|r| r.len() != side) {
            return Err(CliError::Input(format!("{path}: expected a square {side}x{side} array")));
        }
        Input::Grid(rows)
    } else {
        Input::Line(items)
    };
    let len = match &input {
        Input::Line(v) => v.len(),
        Input::Grid(g) => g.len(),
    };
    if let Some(n) = args.n {
        if n != len {
            return Err(CliError::Input(format!("--n {n} does not match input size {len}")));
        }
    }
    let all_numbers = match &input {
        Input::Line(v) => v.iter().all(Value::is_number),
        Input::Grid(g) => g.iter().flatten().all(Value::is_number),
    };
    if !all_numbers {
        return Err(CliError::Input(format!("{path}: entries must be numbers")));
    }
    Ok(input)
}

fn floats(v: &[Value]) -> Vec<f64> {
    v.iter().map(|x| x.as_f64().expect("checked numeric")).collect()
}

fn ints(v: &[Value]) -> Option<Vec<i64>> {
    v.iter().map(Value::as_i64).collect()
}

fn invalid(e: Error) -> CliError {
    CliError::Input(e.to_string())
}

fn transform(args: &TransformArgs) -> Result<Outcome, CliError> {
    if args.conjugate && !args.kind.is_dft() {
        return Err(CliError::Input("--conjugate applies only to dft and dft2".into()));
    }
    let two_d = args.kind == Kind::Dft2 || args.dims == 2;
    let kind = if args.kind == Kind::Dft && two_d { Kind::Dft2 } else { args.kind };
    match parse_input(args, two_d)? {
        Input::Line(v) if kind == Kind::Dft => dft_line(args, &floats(&v)),
        Input::Grid(g) if kind == Kind::Dft2 => {
            dft_grid(args, &g.iter().map(|r| floats(r)).collect::<Vec<_>>())
        }
        Input::Line(v) => match ints(&v) {
            Some(x) => binary_line(args, kind, &x),
            None => binary_line(args, kind, &floats(&v)),
        },
        Input::Grid(g) => match g.iter().map(|r| ints(r)).collect::<Option<Vec<_>>>() {
            Some(x) => binary_grid(args, kind, &x),
            None => binary_grid(args, kind, &g.iter().map(|r| floats(r)).collect::<Vec<_>>()),
        },
    }
}

fn flatten_complex<'a>(c: impl IntoIterator<Item = &'a Complex>) -> Vec<f64> {
    c.into_iter().flat_map(|&(a, b)| [a, b]).collect()
}

fn dft_line(args: &TransformArgs, a: &[f64]) -> Result<Outcome, CliError> {
    let n = a.len();
    let spectrum = dft_1d(a).map_err(invalid)?;
    let verify = if args.verify {
        let want = reference::naive_dft_real(a)?;
        let mut rep = OracleReport::new("dft_1d_vs_naive", 1e-9 * n as f64);
        rep.record(spectrum.max_abs_diff(&want)?, || Witness {
            inputs: vec![a.to_vec()],
            lhs: flatten_complex(&spectrum.coefficients),
            rhs: flatten_complex(&want),
        });
        Some(rep)
    } else {
        None
    };
    let out = if args.conjugate { spectrum.conjugate() } else { spectrum };
    let ok = verify.as_ref().is_none_or(OracleReport::meets_expectation);
    emit(&TransformOutput { kind: Kind::Dft.name(), n, result: out.coefficients, verify }, ok)
}

fn dft_grid(args: &TransformArgs, a: &[Vec<f64>]) -> Result<Outcome, CliError> {
    let n = a.len();
    let spectrum = dft_2d(a).map_err(invalid)?;
    let verify = if args.verify {
        let want = reference::naive_dft2(a)?;
        let mut rep = OracleReport::new("dft_2d_vs_naive", 1e-9 * (n * n) as f64);
        let err = spectrum
            .iter()
            .flatten()
            .zip(want.iter().flatten())
            .map(|(x, y)| (x.0 - y.0).abs().max((x.1 - y.1).abs()))
            .fold(0.0, f64::max);
        rep.record(err, || Witness {
            inputs: a.to_vec(),
            lhs: flatten_complex(spectrum.iter().flatten()),
            rhs: flatten_complex(want.iter().flatten()),
        });
        Some(rep)
    } else {
        None
    };
    let out: Vec<Vec<Complex>> = if args.conjugate {
        spectrum.iter().map(|r| r.iter().map(|&(re, im)| (re, -im)).collect()).collect()
    } else {
        spectrum
    };
    let ok = verify.as_ref().is_none_or(OracleReport::meets_expectation);
    emit(&TransformOutput { kind: Kind::Dft2.name(), n, result: out, verify }, ok)
}

type LineFn<T> = fn(&[T]) -> crate::Result<Vec<T>>;

fn binary_fns<T: Scalar>(kind: Kind) -> (LineFn<T>, LineFn<T>) {
    match kind {
        Kind::Hadamard => (wht_embedding::<T>, reference::naive_hadamard::<T>),
        Kind::HadamardStaged => (wht_staged::<T>, reference::naive_hadamard::<T>),
        Kind::Walsh => (walsh_embedding::<T>, reference::naive_walsh::<T>),
        Kind::Dft | Kind::Dft2 => unreachable!("dft kinds are dispatched separately"),
    }
}

fn binary_tolerance<T: Scalar>(n: usize) -> f64 {
    if T::EXACT {
        0.0
    } else {
        1e-9 * n as f64
    }
}

fn to_f64s<T: Scalar>(x: &[T]) -> Vec<f64> {
    x.iter().map(|v| v.to_f64()).collect()
}

fn max_dist<T: Scalar>(a: &[T], b: &[T]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| x.distance(y)).fold(0.0, f64::max)
}

fn binary_line<T: Scalar + Serialize>(args: &TransformArgs, kind: Kind, x: &[T]) -> Result<Outcome, CliError> {
    let n = x.len();
    let (f, oracle) = binary_fns::<T>(kind);
    let result = f(x).map_err(invalid)?;
    let verify = if args.verify {
        let want = oracle(x)?;
        let mut rep = OracleReport::new(format!("{}_vs_naive", kind.name()), binary_tolerance::<T>(n));
        rep.record(max_dist(&result, &want), || Witness {
            inputs: vec![to_f64s(x)],
            lhs: to_f64s(&result),
            rhs: to_f64s(&want),
        });
        Some(rep)
    } else {
        None
    };
    let ok = verify.as_ref().is_none_or(OracleReport::meets_expectation);
    emit(&TransformOutput { kind: kind.name(), n, result, verify }, ok)
}

fn binary_grid<T: Scalar + Serialize>(args: &TransformArgs, kind: Kind, x: &[Vec<T>]) -> Result<Outcome, CliError> {
    let n = x.len();
    let (f, oracle) = binary_fns::<T>(kind);
    let result = separable_2d(x, f).map_err(invalid)?;
    let verify = if args.verify {
        let want = separable_2d(x, oracle)?;
        let mut rep = OracleReport::new(format!("{}_2d_vs_naive", kind.name()), binary_tolerance::<T>(n * n));
        let err = result.iter().zip(&want).map(|(a, b)| max_dist(a, b)).fold(0.0, f64::max);
        rep.record(err, || Witness {
            inputs: x.iter().map(|r| to_f64s(r)).collect(),
            lhs: result.iter().flat_map(|r| to_f64s(r)).collect(),
            rhs: want.iter().flat_map(|r| to_f64s(r)).collect(),
        });
        Some(rep)
    } else {
        None
    };
    let ok = verify.as_ref().is_none_or(OracleReport::meets_expectation);
    emit(&TransformOutput { kind: kind.name(), n, result, verify }, ok)
}

#[derive(Serialize)]
struct CheckOutput {
    seed: u64,
    cases: usize,
    pass: bool,
    reports: Vec<OracleReport>,
}

fn check(args: &CheckArgs) -> Result<Outcome, CliError> {
    let reports = oracle::run_all(args.seed, args.cases).map_err(invalid)?;
    let pass = reports.iter().all(OracleReport::meets_expectation);
    emit(&CheckOutput { seed: args.seed, cases: args.cases, pass, reports }, pass)
}

#[derive(Serialize)]
struct BenchCounts {
    embedding: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    staged: Option<u64>,
    oracle: u64,
}

#[derive(Serialize)]
struct BenchOutput {
    kind: &'static str,
    n: usize,
    dims: u8,
    seed: u64,
    counts: BenchCounts,
}

/// Counts on the calling thread, so the closure runs in a one-thread pool to
/// keep any parallel work visible to the counter.
fn counted<R: Send>(f: impl FnOnce() -> R + Send) -> Result<(R, u64), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| CliError::Input(e.to_string()))?;
    Ok(pool.install(|| count_ops(f)))
}

fn bench(args: &BenchArgs) -> Result<Outcome, CliError> {
    let n = args.n;
    let two_d = args.dims == 2 || args.kind == Kind::Dft2;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let counts = match args.kind {
        Kind::Dft | Kind::Dft2 if two_d => {
            let a: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect()).collect();
            let (r, embedding) = counted(|| dft_2d(&a))?;
            r.map_err(invalid)?;
            let (_, oracle) = counted(|| reference::naive_dft2(&a))?;
            BenchCounts { embedding, staged: None, oracle }
        }
        Kind::Dft | Kind::Dft2 => {
            let a: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
            let (r, embedding) = counted(|| dft_1d(&a))?;
            r.map_err(invalid)?;
            let (_, oracle) = counted(|| reference::naive_dft_real(&a))?;
            BenchCounts { embedding, staged: None, oracle }
        }
        kind => {
            let grid: Vec<Vec<i64>> = (0..if two_d { n } else { 1 })
                .map(|_| oracle::random_int_signal(&mut rng, n))
                .collect();
            let walsh = kind == Kind::Walsh;
            let embed: LineFn<i64> = if walsh { walsh_fold } else { wht_embedding };
            let staged: LineFn<i64> = if walsh { staged_walsh } else { wht_staged };
            let naive: LineFn<i64> = if walsh { reference::naive_walsh } else { reference::naive_hadamard };
            let apply = |f: LineFn<i64>| -> crate::Result<()> {
                if two_d {
                    separable_2d(&grid, f).map(drop)
                } else {
                    f(&grid[0]).map(drop)
                }
            };
            let (r, embedding) = counted(|| apply(embed))?;
            r.map_err(invalid)?;
            let (_, staged) = counted(|| apply(staged))?;
            let (_, oracle) = counted(|| apply(naive))?;
            BenchCounts { embedding, staged: Some(staged), oracle }
        }
    };
    emit(&BenchOutput { kind: args.kind.name(), n, dims: if two_d { 2 } else { 1 }, seed: args.seed, counts }, true)
}

fn staged_walsh(x: &[i64]) -> crate::Result<Vec<i64>> {
    sequency_permutation(x.len())?.apply(&wht_staged(x)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Command {
        Cli::try_parse_from(std::iter::once("dirmonoid").chain(args.iter().copied()))
            .unwrap()
            .command
    }

    #[test]
    fn flags_parse() {
        let Command::Transform(t) = parse(&["transform", "--kind", "hadamard-staged", "--input", "x.json", "--verify"]) else {
            panic!("expected transform");
        };
        assert_eq!(t.kind, Kind::HadamardStaged);
        assert!(t.verify && !t.conjugate);
        assert_eq!(t.dims, 1);
        assert!(Cli::try_parse_from(["dirmonoid", "transform", "--kind", "dft", "--input", "x", "--dims", "3"]).is_err());
        assert!(Cli::try_parse_from(["dirmonoid", "bench", "--kind", "fft", "--n", "4"]).is_err());
    }

    #[test]
    fn staged_walsh_matches_embedding() {
        let x = [5i64, -1, 2, 8, 0, 3, -4, 7];
        assert_eq!(staged_walsh(&x).unwrap(), walsh_embedding(&x).unwrap());
    }
}
