//! Command-line front end.
//!
//! Exit codes: `0` success, `1` verification failure, `2` usage or domain
//! error, `3` degenerate computation.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coords::{assemble_phi, polytope_check, tau_indices, CoordinateVector, InvariantValue, Method};
use crate::error::Error;
use crate::pants::lamination::{Leaf, Triangle};
use crate::pants::{lengths_from_params, params_from_lengths, PantsLengths, PantsParams};
use crate::scalar::{parse_rational, Backend, Field, Rational};
use crate::verify::{run_verify, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hitchin-pants", version, about = "Coordinates of Fuchsian points in the Hitchin component of a pair of pants")]
pub struct Cli {
    /// Rank parameter n (the representation lands in PSL(n, R)).
    #[arg(long, global = true)]
    pub n: Option<usize>,

    /// Boundary lengths l_A,l_B,l_C (forces float mode).
    #[arg(long, global = true, allow_hyphen_values = true, conflicts_with = "abc")]
    pub lengths: Option<String>,

    /// Parameters alpha,beta,gamma as exact rationals, e.g. 2,1,1/2.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub abc: Option<String>,

    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the randomized identity checks.
    Verify {
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "max-n", default_value_t = 5)]
        max_n: usize,
    },
    /// Tabulate coordinate logs over a grid of boundary lengths.
    Sweep {
        /// lA:start:stop:steps,lB:start:stop:steps,lC:start:stop:steps
        #[arg(long)]
        grid: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::InvalidDimension(_)
            | Error::InvalidLengths(_)
            | Error::InvalidParams(_)
            | Error::IndexOutOfRange { .. }
            | Error::InvalidTriple { .. }
            | Error::NotHyperbolic => EXIT_USAGE,
            _ => EXIT_DEGENERATE,
        };
        CliError { code, message: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// A single invariant in the JSON document. `exp` is a `p/q` string in exact
/// mode and a number in float mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub exp: Value,
    pub log: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaDoc {
    pub p: usize,
    pub exp: Value,
    pub log: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsDoc {
    pub alpha: Value,
    pub beta: Value,
    pub gamma: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LengthsDoc {
    #[serde(rename = "lA")]
    pub l_a: f64,
    #[serde(rename = "lB")]
    pub l_b: f64,
    #[serde(rename = "lC")]
    pub l_c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoordinatesDoc {
    pub sigma: BTreeMap<String, Vec<SigmaDoc>>,
    pub tau: BTreeMap<String, BTreeMap<String, EntryDoc>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoordsDocument {
    pub n: usize,
    pub mode: String,
    pub params: ParamsDoc,
    pub lengths: LengthsDoc,
    pub coordinates: CoordinatesDoc,
    pub checks: BTreeMap<String, bool>,
}

fn scalar_json<F: Field>(x: &F) -> Value {
    match F::BACKEND {
        Backend::Exact => Value::String(x.to_string()),
        Backend::Float => serde_json::Number::from_f64(x.to_f64()).map_or(Value::Null, Value::Number),
    }
}

fn scalar_csv<F: Field>(x: &F) -> String {
    match F::BACKEND {
        Backend::Exact => x.to_string(),
        Backend::Float => x.to_f64().to_string(),
    }
}

fn entry<F: Field>(v: &InvariantValue<F>) -> EntryDoc {
    EntryDoc { exp: scalar_json(&v.exp_value), log: v.log_value }
}

fn document<F: Field>(n: usize, params: &PantsParams<F>, coords: &CoordinateVector<F>) -> CliResult<CoordsDocument> {
    let lengths = lengths_from_params(params)?;
    let mut sigma = BTreeMap::new();
    for leaf in Leaf::ALL {
        let rows = (1..n)
            .map(|p| {
                let v = coords.sigma(leaf, p)?;
                Ok(SigmaDoc { p, exp: scalar_json(&v.exp_value), log: v.log_value })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        sigma.insert(leaf.name().to_string(), rows);
    }
    let mut tau = BTreeMap::new();
    for tri in Triangle::ALL {
        let mut entries = BTreeMap::new();
        for (p, q, r) in tau_indices(n) {
            entries.insert(format!("{p},{q},{r}"), entry(coords.tau(tri, (p, q, r))?));
        }
        tau.insert(tri.name().to_string(), entries);
    }
    let mut checks = BTreeMap::new();
    checks.insert("domain".to_string(), params.check_domain().all_pass());
    for c in polytope_check(coords).checks {
        checks.insert(c.name, c.pass);
    }
    Ok(CoordsDocument {
        n,
        mode: F::BACKEND.name().to_string(),
        params: ParamsDoc {
            alpha: scalar_json(params.alpha()),
            beta: scalar_json(params.beta()),
            gamma: scalar_json(params.gamma()),
        },
        lengths: LengthsDoc { l_a: lengths.l_a, l_b: lengths.l_b, l_c: lengths.l_c },
        coordinates: CoordinatesDoc { sigma, tau },
        checks,
    })
}

/// CSV header: lengths, parameters, then one column per coordinate log.
pub fn csv_header(n: usize) -> Vec<String> {
    let mut h: Vec<String> = ["lA", "lB", "lC", "alpha", "beta", "gamma"].iter().map(|s| s.to_string()).collect();
    for leaf in Leaf::ALL {
        for p in 1..n {
            h.push(format!("sigma_{}_p{p}", leaf.short()));
        }
    }
    for tri in Triangle::ALL {
        for (p, q, r) in tau_indices(n) {
            h.push(format!("tau_{}_p{p}q{q}r{r}", tri.name()));
        }
    }
    h
}

fn csv_row<F: Field>(params: &PantsParams<F>, coords: &CoordinateVector<F>) -> CliResult<Vec<String>> {
    let l = lengths_from_params(params)?;
    let mut row = vec![l.l_a.to_string(), l.l_b.to_string(), l.l_c.to_string()];
    row.extend([params.alpha(), params.beta(), params.gamma()].map(scalar_csv));
    for (_, v) in coords.named_entries() {
        row.push(v.log_value.map_or_else(String::new, |x| x.to_string()));
    }
    Ok(row)
}

fn parse_triple<T>(s: &str, what: &str, parse: impl Fn(&str) -> Option<T>) -> CliResult<[T; 3]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::usage(format!("--{what} expects three comma-separated values, got {s:?}")));
    }
    let vals = parts
        .iter()
        .map(|p| parse(p.trim()).ok_or_else(|| CliError::usage(format!("cannot parse {p:?} in --{what}"))))
        .collect::<CliResult<Vec<T>>>()?;
    vals.try_into().map_err(|_| CliError::usage(format!("--{what} expects three values")))
}

fn parse_lengths(s: &str) -> CliResult<PantsLengths> {
    let [a, b, c] = parse_triple(s, "lengths", |x| x.parse::<f64>().ok())?;
    Ok(PantsLengths::new(a, b, c)?)
}

fn parse_abc(s: &str) -> CliResult<[Rational; 3]> {
    parse_triple(s, "abc", |x| parse_rational(x).ok())
}

enum Input {
    Lengths(PantsLengths),
    Abc([Rational; 3]),
}

fn input(cli: &Cli) -> CliResult<Input> {
    match (&cli.lengths, &cli.abc) {
        (Some(l), None) => Ok(Input::Lengths(parse_lengths(l)?)),
        (None, Some(a)) => Ok(Input::Abc(parse_abc(a)?)),
        (None, None) => Err(CliError::usage("one of --lengths or --abc is required")),
        (Some(_), Some(_)) => Err(CliError::usage("--lengths and --abc are mutually exclusive")),
    }
}

fn require_n(cli: &Cli) -> CliResult<usize> {
    let n = cli.n.ok_or_else(|| CliError::usage("--n is required"))?;
    if n < 2 {
        return Err(CliError::usage(format!("--n must be at least 2, got {n}")));
    }
    Ok(n)
}

fn emit(out_path: Option<&Path>, stdout: &mut dyn Write, text: &str) -> CliResult<()> {
    match out_path {
        Some(path) => File::create(path)
            .and_then(|mut f| f.write_all(text.as_bytes()))
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::usage(format!("cannot write output: {e}"))),
    }
}

fn render<F: Field>(n: usize, params: &PantsParams<F>, format: Format) -> CliResult<String> {
    let coords = assemble_phi(n, params, Method::ClosedForm)?;
    match format {
        Format::Json => {
            let doc = document(n, params, &coords)?;
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| CliError::usage(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => write_csv(&csv_header(n), std::iter::once(csv_row(params, &coords)?)),
    }
}

fn write_csv(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::usage(e.to_string());
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::usage(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::usage(e.to_string()))
}

fn run_coords(cli: &Cli, stdout: &mut dyn Write) -> CliResult<()> {
    let n = require_n(cli)?;
    let format = cli.format.unwrap_or(Format::Json);
    let text = match (input(cli)?, cli.mode) {
        (Input::Lengths(_), Some(Mode::Exact)) => {
            return Err(CliError::usage("--mode exact requires --abc; lengths are only available in float mode"))
        }
        (Input::Lengths(l), _) => render(n, &params_from_lengths(&l)?, format)?,
        (Input::Abc([a, b, g]), Some(Mode::Float)) => {
            let params = PantsParams::new(Field::to_f64(&a), Field::to_f64(&b), Field::to_f64(&g))?;
            render(n, &params, format)?
        }
        (Input::Abc([a, b, g]), _) => render(n, &PantsParams::new(a, b, g)?, format)?,
    };
    emit(cli.out.as_deref(), stdout, &text)
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    samples: usize,
    seed: u64,
    max_n: usize,
    pass: bool,
    categories: BTreeMap<&'a str, BTreeMap<&'a str, usize>>,
    first_counterexample: Option<String>,
}

fn run_verify_cmd(cli: &Cli, samples: usize, seed: u64, max_n: usize, stdout: &mut dyn Write) -> CliResult<i32> {
    if cli.mode == Some(Mode::Float) {
        return Err(CliError::usage("verify checks exact identities and only runs in exact mode"));
    }
    if samples == 0 {
        return Err(CliError::usage("--samples must be at least 1"));
    }
    if max_n < 2 {
        return Err(CliError::usage(format!("--max-n must be at least 2, got {max_n}")));
    }
    let report = run_verify(&VerifyConfig { samples, seed, max_n })?;
    let text = match cli.format {
        None => report.to_string(),
        Some(Format::Json) => {
            let doc = VerifyDoc {
                samples,
                seed,
                max_n,
                pass: report.all_pass(),
                categories: report
                    .categories
                    .iter()
                    .map(|c| (c.name, BTreeMap::from([("passed", c.passed), ("failed", c.failed)])))
                    .collect(),
                first_counterexample: report.first_failure.as_ref().map(|c| c.to_string()),
            };
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| CliError::usage(e.to_string()))?;
            s.push('\n');
            s
        }
        Some(Format::Csv) => return Err(CliError::usage("verify output is text or json")),
    };
    emit(cli.out.as_deref(), stdout, &text)?;
    Ok(if report.all_pass() { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

/// One axis `name:start:stop:steps`; `steps` points evenly spaced, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct GridAxis {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl GridAxis {
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let h = (self.stop - self.start) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| if i + 1 == self.steps { self.stop } else { self.start + h * i as f64 }).collect()
    }
}

/// Parses `lA:start:stop:steps,lB:...,lC:...`; each axis must appear exactly once.
pub fn parse_grid(spec: &str) -> CliResult<[GridAxis; 3]> {
    let mut axes: [Option<GridAxis>; 3] = [None, None, None];
    for part in spec.split(',') {
        let fields: Vec<&str> = part.trim().split(':').collect();
        let bad = || CliError::usage(format!("bad grid axis {part:?}; expected name:start:stop:steps"));
        let [name, start, stop, steps] = fields.as_slice() else { return Err(bad()) };
        let slot = match *name {
            "lA" => 0,
            "lB" => 1,
            "lC" => 2,
            _ => return Err(CliError::usage(format!("unknown grid axis {name:?}; use lA, lB, lC"))),
        };
        let axis = GridAxis {
            start: start.parse().map_err(|_| bad())?,
            stop: stop.parse().map_err(|_| bad())?,
            steps: steps.parse().map_err(|_| bad())?,
        };
        if axis.steps == 0 {
            return Err(CliError::usage(format!("grid axis {name} needs at least one point")));
        }
        if axes[slot].replace(axis).is_some() {
            return Err(CliError::usage(format!("grid axis {name} given twice")));
        }
    }
    let [a, b, c] = axes;
    match (a, b, c) {
        (Some(a), Some(b), Some(c)) => Ok([a, b, c]),
        _ => Err(CliError::usage("grid needs lA, lB and lC")),
    }
}

fn run_sweep(cli: &Cli, grid: &str, stdout: &mut dyn Write) -> CliResult<()> {
    let n = require_n(cli)?;
    if cli.mode == Some(Mode::Exact) {
        return Err(CliError::usage("sweep takes boundary lengths and runs in float mode"));
    }
    if cli.format == Some(Format::Json) {
        return Err(CliError::usage("sweep writes csv"));
    }
    let [ga, gb, gc] = parse_grid(grid)?;
    let mut rows = Vec::new();
    for &la in &ga.points() {
        for &lb in &gb.points() {
            for &lc in &gc.points() {
                let params = params_from_lengths(&PantsLengths::new(la, lb, lc)?)?;
                let coords = assemble_phi(n, &params, Method::ClosedForm)?;
                rows.push(csv_row(&params, &coords)?);
            }
        }
    }
    let text = write_csv(&csv_header(n), rows)?;
    emit(cli.out.as_deref(), stdout, &text)
}

fn dispatch(cli: &Cli, stdout: &mut dyn Write) -> CliResult<i32> {
    match &cli.command {
        None => run_coords(cli, stdout).map(|_| EXIT_OK),
        Some(Command::Verify { samples, seed, max_n }) => run_verify_cmd(cli, *samples, *seed, *max_n, stdout),
        Some(Command::Sweep { grid }) => run_sweep(cli, grid, stdout).map(|_| EXIT_OK),
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

pub fn main_exit() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
