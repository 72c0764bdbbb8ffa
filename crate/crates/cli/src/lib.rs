//! Command-line front end for `tnorm-core`.
//!
//! The binary is a thin wrapper over [`run_args`], which parses arguments,
//! runs one subcommand and writes its report to the given sinks. Exit codes
//! are a stable contract: 0 on success, 1 when a checked inequality or
//! reproduction fails, 2 on usage or input errors.
//!
//! Every report starts with `#` header lines echoing the full configuration,
//! followed by an optional timestamp line (suppressed by `--no-timestamp`).
//! With identical arguments the remaining output is byte-identical.

pub mod commands;
pub mod fixtures;
pub mod repro;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use commands::execute;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: tnorm_core::Error },

    #[error(transparent)]
    Core(#[from] tnorm_core::Error),

    #[error("write failed: {0}")]
    Output(#[from] std::io::Error),
}

#[derive(Debug, Parser)]
#[command(name = "tnorm", version, about = "Tensor norms, products, powers and Gelfand limits")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Base seed for every random stream.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Convergence tolerance for Gelfand traces and slack for checked bounds.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,

    /// Power-method restarts per spectral-norm estimate.
    #[arg(long, global = true, default_value_t = 32)]
    pub restarts: usize,

    /// Sweep cap for the power method and the nuclear-norm searches.
    #[arg(long = "max-iter", global = true, default_value_t = 500)]
    pub max_iter: usize,

    /// Report layout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Omit the timestamp header line.
    #[arg(long = "no-timestamp", global = true)]
    pub no_timestamp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// `key: value` lines.
    Text,
    /// Delimited rows with a header line.
    Rows,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormKind {
    One,
    Fro,
    Inf,
    Spectral,
    Nuclear,
}

impl NormKind {
    pub fn label(self) -> &'static str {
        match self {
            NormKind::One => "one",
            NormKind::Fro => "fro",
            NormKind::Inf => "inf",
            NormKind::Spectral => "spectral",
            NormKind::Nuclear => "nuclear",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Dist {
    Normal,
    Uniform,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print elementwise, spectral and nuclear norms of a tensor.
    Norm {
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "one,fro,inf,spectral,nuclear"
        )]
        kinds: Vec<NormKind>,
        /// Also print the rank-one and dual witnesses behind each bound.
        #[arg(long)]
        witnesses: bool,
        file: PathBuf,
    },
    /// Contraction product of two tensors.
    Product {
        a: PathBuf,
        b: PathBuf,
        /// Leading modes of A kept in the result.
        #[arg(long)]
        k: usize,
        /// Modes contracted between A and B.
        #[arg(long)]
        p: usize,
        /// Trailing modes of B kept in the result.
        #[arg(long)]
        q: usize,
        /// Write the product here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Check the norm inequalities for this triple.
        #[arg(long)]
        verify: bool,
    },
    /// Gelfand trace of the cubic or quintic power map.
    Gelfand {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "one,fro,inf")]
        norms: Vec<String>,
        #[arg(long = "max-m", default_value_t = 31)]
        max_m: usize,
        /// Quintic contraction pattern; required for order-5 input.
        #[arg(long)]
        variant: Option<String>,
        /// Run to `--max-m` even after convergence.
        #[arg(long = "no-early-stop")]
        no_early_stop: bool,
        #[arg(long, default_value_t = ',')]
        delimiter: char,
        /// Write the trace rows here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply the cubic or quintic power map once.
    Power {
        file: PathBuf,
        #[arg(long)]
        variant: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Nuclear-norm interval and contraction-matrix radius bounds.
    Bounds {
        file: PathBuf,
        /// Zero-based mode for the radius bound; all modes when omitted.
        #[arg(long)]
        mode: Option<usize>,
        #[arg(long = "max-terms", default_value_t = 100)]
        max_terms: usize,
    },
    /// Random tensor with i.i.d. entries.
    Gen {
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Dist::Normal)]
        dist: Dist,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Seeded property suites.
    Verify {
        /// Suites to run; all when omitted.
        #[arg(long, value_enum, value_delimiter = ',')]
        suite: Vec<suites::Suite>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Recompute the published example values from bundled fixtures.
    Repro,
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(rendered.as_bytes());
                EXIT_OK
            };
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match run(&cli, &echo, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_VIOLATION,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Writes the header and runs the command; `Ok(false)` signals a violation.
pub fn run(cli: &Cli, echo: &[String], out: &mut dyn Write) -> Result<bool, CliError> {
    let g = &cli.global;
    writeln!(out, "# command: tnorm {}", echo.join(" "))?;
    writeln!(
        out,
        "# config: seed={} tol={:e} restarts={} max-iter={} format={}",
        g.seed,
        g.tol,
        g.restarts,
        g.max_iter,
        match g.format {
            Format::Text => "text",
            Format::Rows => "rows",
        }
    )?;
    if !g.no_timestamp {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        writeln!(out, "# timestamp: {secs}")?;
    }
    execute(cli, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_args(std::iter::once("tnorm").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["norm", "--kinds", "two", "x.tensor"]).0, EXIT_USAGE);
        let (code, _, err) = run_capture(&["norm", "/definitely/missing.tensor"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.starts_with("error: /definitely/missing.tensor: "));
    }

    #[test]
    fn header_echoes_configuration() {
        let (code, out, _) = run_capture(&[
            "verify",
            "--suite",
            "prop-p2",
            "--trials",
            "3",
            "--seed",
            "4",
            "--no-timestamp",
        ]);
        assert_eq!(code, EXIT_OK);
        let mut lines = out.lines();
        assert_eq!(
            lines.next(),
            Some("# command: tnorm verify --suite prop-p2 --trials 3 --seed 4 --no-timestamp")
        );
        assert_eq!(
            lines.next(),
            Some("# config: seed=4 tol=1e-10 restarts=32 max-iter=500 format=text")
        );
        assert!(lines.next().unwrap().starts_with("prop-p2: PASS (trials 3,"));
    }
}
