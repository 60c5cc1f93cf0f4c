//! Command-line front end for `symherm`.
//!
//! `run` takes the raw argument list and returns the exit code together with
//! everything destined for stdout and stderr, so the binary is a thin shell
//! and the integration tests can drive it in-process.

mod verify;

use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use symherm::{
    enumerate_subsets, hermite_interpolant, render, Error, HermiteBasis, Method, NodeMultiset, Polynomial, VariableSet,
};

pub use verify::{minimize_orbits, Suite};

pub const DEFAULT_SEED: u64 = 20240611;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "symherm", version, about = "Exact symmetric Hermite interpolation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the symmetric Hermite interpolant of `h`.
    Interpolate(SessionArgs),
    /// List the Hermite basis elements with their signs.
    Basis(SessionArgs),
    /// Coordinates of the interpolant of `h` on the Hermite basis.
    Coords(SessionArgs),
    /// Run the identity suites on fixtures or on a seeded random corpus.
    Verify(SessionArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct SessionArgs {
    /// Node multiset, e.g. `a^3, b^2` or `0, 1/2^2, 3`.
    #[arg(long, allow_hyphen_values = true)]
    pub nodes: Option<String>,
    /// Number of main variables x1..xn.
    #[arg(long)]
    pub n: Option<usize>,
    /// Symmetric polynomial in x1..xn (and node symbols).
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<String>,
    #[arg(long, value_parser = parse_method)]
    pub method: Option<Method>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Restrict `verify` to one suite.
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse::<Method>().map_err(|_| {
        let names: Vec<&str> = Method::ALL.iter().map(|m| m.name()).collect();
        format!("unknown method `{s}` (expected one of: {})", names.join(", "))
    })
}

/// Captured result of one invocation.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub(crate) enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

pub(crate) fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. }
        | Error::Undeclared { .. }
        | Error::UnknownVariable(_)
        | Error::DuplicateVariable(_)
        | Error::InvalidNodes(_) => EXIT_USAGE,
        Error::Internal(_) | Error::InexactDivision => EXIT_VERIFY,
        _ => EXIT_PRECONDITION,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    let mut out = Outcome::default();
    let result = match &cli.command {
        Command::Interpolate(a) => cmd_interpolate(a, &mut out.stdout),
        Command::Basis(a) => cmd_basis(a, &mut out.stdout),
        Command::Coords(a) => cmd_coords(a, &mut out.stdout),
        Command::Verify(a) => verify::cmd_verify(a, &mut out.stdout),
    };
    match result {
        Ok(code) => out.code = code,
        Err(Failure::Usage(msg)) => {
            out.code = EXIT_USAGE;
            writeln!(out.stderr, "error: {msg}").unwrap();
        }
        Err(Failure::Core(e)) => {
            out.code = exit_code(&e);
            let input = match &e {
                Error::Syntax { .. } | Error::Undeclared { .. } => " in --h",
                _ => "",
            };
            writeln!(out.stderr, "error{input}: {e}").unwrap();
        }
    }
    out
}

pub(crate) struct Session {
    pub nodes: NodeMultiset,
    pub vars: Arc<VariableSet>,
    pub n: usize,
}

pub(crate) fn session(args: &SessionArgs, n: usize) -> Result<Session, Failure> {
    let text = args.nodes.as_deref().ok_or_else(|| Failure::Usage("--nodes is required".into()))?;
    let nodes = NodeMultiset::parse(text)?;
    let vars = variables(&nodes, n)?;
    Ok(Session { nodes, vars, n })
}

pub(crate) fn variables(nodes: &NodeMultiset, n: usize) -> Result<Arc<VariableSet>, Failure> {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    Ok(VariableSet::standard(n, &nodes.symbols())?)
}

fn required_n(args: &SessionArgs) -> Result<usize, Failure> {
    args.n.ok_or_else(|| Failure::Usage("--n is required".into()))
}

fn required_h(args: &SessionArgs, vars: &Arc<VariableSet>) -> Result<Polynomial, Failure> {
    let text = args.h.as_deref().ok_or_else(|| Failure::Usage("--h is required".into()))?;
    Ok(Polynomial::parse(text, vars)?)
}

fn emit_json(out: &mut String, value: &impl Serialize) {
    out.push_str(&serde_json::to_string_pretty(value).expect("serializable"));
    out.push('\n');
}

fn cmd_interpolate(args: &SessionArgs, out: &mut String) -> Result<i32, Failure> {
    let s = session(args, required_n(args)?)?;
    let h = required_h(args, &s.vars)?;
    let method = args.method.unwrap_or(Method::NormalForm);
    let r = hermite_interpolant(&h, &s.nodes, method)?;
    let subsets = enumerate_subsets(&s.nodes, s.n)?.len();
    match args.output {
        OutputFormat::Text => writeln!(out, "{}", render(&r)).unwrap(),
        OutputFormat::Json => emit_json(
            out,
            &json!({
                "interpolant": render(&r),
                "method": method.name(),
                "d": s.nodes.d(),
                "n": s.n,
                "subsets": subsets,
            }),
        ),
    }
    Ok(EXIT_OK)
}

fn one_based(subset: &symherm::ColumnSubset) -> Vec<usize> {
    subset.picks().iter().map(|c| c + 1).collect()
}

fn cmd_basis(args: &SessionArgs, out: &mut String) -> Result<i32, Failure> {
    let s = session(args, required_n(args)?)?;
    let basis = HermiteBasis::new(&s.nodes, &s.vars)?;
    match args.output {
        OutputFormat::Text => {
            writeln!(out, "# A = {}, d = {}, n = {}, v_d(A) = {}", s.nodes, s.nodes.d(), s.n, render(basis.vdm_det()))
                .unwrap();
            for (i, (el, sign)) in basis.elements().iter().zip(basis.signs()).enumerate() {
                writeln!(
                    out,
                    "{:>3}  {}  {}  eps={}  omega = {}",
                    i + 1,
                    el.subset,
                    el.subset.describe(&s.nodes),
                    sign,
                    render(&el.omega)
                )
                .unwrap();
            }
        }
        OutputFormat::Json => {
            let elements: Vec<_> = basis
                .elements()
                .iter()
                .zip(basis.signs())
                .map(|(el, sign)| {
                    json!({
                        "subset": one_based(&el.subset),
                        "labels": el.subset.describe(&s.nodes),
                        "sign": sign.as_i32(),
                        "omega": render(&el.omega),
                    })
                })
                .collect();
            emit_json(
                out,
                &json!({
                    "d": s.nodes.d(),
                    "n": s.n,
                    "vdm_det": render(basis.vdm_det()),
                    "elements": elements,
                }),
            );
        }
    }
    Ok(EXIT_OK)
}

fn cmd_coords(args: &SessionArgs, out: &mut String) -> Result<i32, Failure> {
    let s = session(args, required_n(args)?)?;
    let h = required_h(args, &s.vars)?;
    let basis = HermiteBasis::new(&s.nodes, &s.vars)?;
    let coords = basis.coordinates(&h)?;
    let interpolant = coords.reconstruct(basis.elements())?;
    let den = render(&coords.denominator);
    let shown: Vec<(Vec<usize>, i32, String, Option<String>)> = coords
        .entries
        .iter()
        .map(|c| {
            let value = coords.value(&c.subset).ok().map(|v| render(&v));
            (one_based(&c.subset), c.sign.as_i32(), render(&c.numerator), value)
        })
        .collect();
    match args.output {
        OutputFormat::Text => {
            writeln!(out, "# coordinates over the common denominator {den}").unwrap();
            for (subset, sign, num, value) in &shown {
                let cols: Vec<String> = subset.iter().map(|c| c.to_string()).collect();
                let value = value.clone().unwrap_or_else(|| format!("({num})/({den})"));
                writeln!(out, "({})  eps={:+}  c = {}", cols.join(","), sign, value).unwrap();
            }
            writeln!(out, "interpolant = {}", render(&interpolant)).unwrap();
        }
        OutputFormat::Json => {
            let entries: Vec<_> = shown
                .iter()
                .map(|(subset, sign, num, value)| {
                    json!({ "subset": subset, "sign": sign, "numerator": num, "value": value })
                })
                .collect();
            emit_json(
                out,
                &json!({
                    "d": s.nodes.d(),
                    "n": s.n,
                    "denominator": den,
                    "coordinates": entries,
                    "interpolant": render(&interpolant),
                }),
            );
        }
    }
    Ok(EXIT_OK)
}
