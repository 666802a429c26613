//! The `kitelab` command line: argument parsing and dispatch.

pub mod commands;
pub mod format;
pub mod fuzz;
pub mod output;
pub mod spec;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use kitelab::limits::BUDGET_VAR;
use kitelab::Limits;

use crate::commands::KiteSpec;
use crate::fuzz::FuzzConfig;
use crate::output::Outcome;

#[derive(Parser, Debug)]
#[command(name = "kitelab", version, about = "Kite pseudo effect algebras: build, verify, inspect")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct KiteArgs {
    /// Base algebra file, or `nat` for the natural numbers.
    #[arg(long)]
    algebra: String,
    /// Number of indices; defaults to the file's `perm` lines, else 1.
    #[arg(long)]
    n: Option<usize>,
    /// `id`, `cycle`, `cycle+`, `swap`, `shift:K` or an image list like `2,0,1`.
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    rho: Option<String>,
}

impl KiteArgs {
    fn spec(&self) -> KiteSpec {
        KiteSpec { algebra: self.algebra.clone(), n: self.n, lambda: self.lambda.clone(), rho: self.rho.clone() }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the axioms of an algebra file.
    Verify { file: PathBuf },
    /// Build a kite and report its properties.
    Kite {
        #[command(flatten)]
        kite: KiteArgs,
        /// Recheck the PEA axioms and the negation formulas.
        #[arg(long)]
        verify: bool,
        /// Print the kite as an algebra file.
        #[arg(long)]
        emit: bool,
        /// Probe count for the lazy ℕ kite.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check RIP, RDP0, RDP, RDP1, RDP2 or all of them.
    Rdp {
        #[arg(long, default_value = "all")]
        level: String,
        file: PathBuf,
    },
    /// List ideals with normality and maximality.
    Ideals {
        file: PathBuf,
        #[arg(long)]
        normal: bool,
    },
    /// Connected components of the index pair.
    Components {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        rho: String,
    },
    /// Quotient by a normal ideal given as a list of elements.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
    },
    /// Subdirect decomposition and irreducibility, or one decomposition
    /// table with `--quadruple`.
    Decompose {
        #[command(flatten)]
        kite: KiteArgs,
        /// Four kite elements `a1 a2 b1 b2`, e.g. "U(5) L(3) L(1) U(3)".
        #[arg(long)]
        quadruple: Option<String>,
        #[arg(long, default_value = "rdp")]
        property: String,
    },
    /// Extreme states of a PEA.
    States { file: PathBuf },
    /// Spot check of the kite against its lexicographic group model.
    Iso {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        pairs: usize,
        #[arg(long, default_value_t = 50)]
        bound: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use the integer-indexed kite and the wreath product.
        #[arg(long)]
        wreath: bool,
    },
    /// Random GPEAs checked against the registered properties.
    Fuzz {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        min_size: usize,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long)]
        commutative: bool,
        /// Directory for shrunk fixtures.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Deterministic audit of a fixture directory.
    Report {
        dir: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        fuzz_count: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Kite { .. } => "kite",
            Command::Rdp { .. } => "rdp",
            Command::Ideals { .. } => "ideals",
            Command::Components { .. } => "components",
            Command::Quotient { .. } => "quotient",
            Command::Decompose { .. } => "decompose",
            Command::States { .. } => "states",
            Command::Iso { .. } => "iso",
            Command::Fuzz { .. } => "fuzz",
            Command::Report { .. } => "report",
        }
    }
}

/// Rendered output and exit code of one invocation.
#[derive(Clone, Debug)]
pub struct Rendered {
    pub text: String,
    pub code: i32,
    pub to_stderr: bool,
}

fn limits() -> Result<Limits, String> {
    match std::env::var(BUDGET_VAR) {
        Err(_) => Ok(Limits::default()),
        Ok(spec) => Limits::default()
            .with_overrides(&spec)
            .ok_or_else(|| format!("malformed {BUDGET_VAR}={spec:?}; expected N or explicit=N,riesz=N,ideals=N,states=N")),
    }
}

fn dispatch(command: &Command) -> Result<Outcome, String> {
    let limits = limits()?;
    match command {
        Command::Verify { file } => commands::verify(file),
        Command::Kite { kite, verify, emit, samples, seed } => {
            commands::kite(&kite.spec(), *verify, *emit, *samples, *seed, &limits)
        }
        Command::Rdp { level, file } => commands::rdp(file, level, &limits),
        Command::Ideals { file, normal } => commands::ideals(file, *normal, &limits),
        Command::Components { n, lambda, rho } => commands::components(*n, lambda, rho),
        Command::Quotient { file, ideal } => commands::quotient_cmd(file, ideal),
        Command::Decompose { kite, quadruple, property } => {
            commands::decompose(&kite.spec(), quadruple.as_deref(), property, &limits)
        }
        Command::States { file } => commands::states(file, &limits),
        Command::Iso { n, pairs, bound, seed, wreath } => commands::iso(*n, *pairs, *bound, *seed, *wreath),
        Command::Fuzz { seed, min_size, max_size, density, count, commutative, out } => {
            let config = FuzzConfig {
                min_size: *min_size,
                max_size: *max_size,
                density: *density,
                seed: *seed,
                commutative: *commutative,
                count: *count,
            };
            commands::fuzz_cmd(&config, out.as_ref(), &limits)
        }
        Command::Report { dir, seed, fuzz_count } => commands::report(dir, *seed, *fuzz_count, &limits),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Rendered
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            return Rendered { text: e.render().to_string(), code: if code == 0 { 0 } else { 2 }, to_stderr: code != 0 };
        }
    };
    let outcome = dispatch(&cli.command).unwrap_or_else(|e| Outcome::error(cli.command.name(), e));
    Rendered {
        text: outcome.render(cli.json),
        code: outcome.code(),
        to_stderr: outcome.code() == 2 && !cli.json,
    }
}
