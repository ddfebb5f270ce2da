//! Command-line front end. [`run`] is the whole program minus process
//! exit, so it can be driven from tests.
//!
//! Exit codes: 0 all checks passed, 1 a relation or check failed, 2 usage
//! error, 3 domain error (even dimension, singular sample, pole, size
//! out of bounds).

mod commands;
pub mod format;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::exact::rational::parse_ratq;
use crate::expr::parse_ratfunc;
use crate::{RatFuncQ, RatQ};

pub const MAX_DIM: usize = 99;
pub const MAX_LEVELS: usize = 256;

#[derive(Parser, Debug)]
#[command(name = "wosp", version, about = "Exact representations of the Witten-type deformed osp(1/2)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the relation suites for a representation.
    Verify(VerifyArgs),
    /// Print generator matrices, exactly or at a numeric q.
    Emit(EmitArgs),
    /// Build matrix representations over a range of dimensions.
    Scan(ScanArgs),
    /// Casimir spectrum of a matrix or Fock representation.
    Casimir(CasimirArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Matrix,
    Fock,
    Oscillator,
    Qderiv,
    Bosonic,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Matrix => "matrix",
            Target::Fock => "fock",
            Target::Oscillator => "oscillator",
            Target::Qderiv => "qderiv",
            Target::Bosonic => "bosonic",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Latex,
    Csv,
    Table,
}

#[derive(Args, Debug, Clone)]
pub struct TargetArgs {
    #[arg(long, value_enum, default_value = "matrix")]
    pub target: Target,
    /// Dimension (matrix, bosonic).
    #[arg(long)]
    pub dim: Option<usize>,
    /// Truncation levels (fock, oscillator).
    #[arg(long)]
    pub levels: Option<usize>,
    /// Maximal polynomial degree (qderiv).
    #[arg(long)]
    pub degree: Option<usize>,
    /// Fock parameter j, an expression in q such as "-1/(1+q)"; m0 = -j.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "m0")]
    pub j: Option<String>,
    /// Fock lowest weight m0, an expression in q.
    #[arg(long, allow_hyphen_values = true)]
    pub m0: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    /// Comma-separated rational sample points for the numeric cross-check.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Override the number of trailing columns excluded from the check.
    #[arg(long)]
    pub margin: Option<usize>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct EmitArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    /// Evaluate at this rational q and print complex numbers.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// Inclusive range `a..b`.
    #[arg(long, default_value = "1..15")]
    pub dims: String,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Add a wall-time column (makes output run-dependent).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct CasimirArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    /// Also evaluate the spectrum at this rational q.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m,
        }
    }
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub(crate) struct Report {
    pub text: String,
    pub failed: bool,
}

pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput { code: 2, stdout: String::new(), stderr: text }
            } else {
                CliOutput { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let result = match &cli.command {
        Command::Verify(a) => commands::verify(a),
        Command::Emit(a) => commands::emit(a),
        Command::Scan(a) => commands::scan(a),
        Command::Casimir(a) => commands::casimir(a),
    };
    match result {
        Ok(report) => {
            let code = if report.failed { 1 } else { 0 };
            match &cli.out {
                Some(path) => match std::fs::write(path, &report.text) {
                    Ok(()) => CliOutput { code, stdout: String::new(), stderr: String::new() },
                    Err(e) => CliOutput {
                        code: 3,
                        stdout: String::new(),
                        stderr: format!("error: cannot write {}: {e}\n", path.display()),
                    },
                },
                None => CliOutput { code, stdout: report.text, stderr: String::new() },
            }
        }
        Err(e) => CliOutput {
            code: e.code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", e.message()),
        },
    }
}

pub(crate) fn parse_expr(flag: &str, s: &str) -> Result<RatFuncQ, CliError> {
    parse_ratfunc(s).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

pub(crate) fn parse_point(s: &str) -> Result<RatQ, CliError> {
    parse_ratq(s).map_err(|e| CliError::Usage(format!("--q: {e}")))
}

/// Verify samples must avoid the singular points 0 and ±1.
pub(crate) fn parse_samples(s: &str) -> Result<Vec<RatQ>, CliError> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let x = parse_point(part)?;
        if num_traits::Zero::is_zero(&x) || num_traits::Signed::abs(&x) == num_traits::One::one() {
            return Err(CliError::Domain(format!(
                "sample q = {} is singular; samples must avoid 0, 1 and -1",
                part.trim()
            )));
        }
        out.push(x);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(args: &[&str]) -> i32 {
        let mut v = vec!["wosp"];
        v.extend_from_slice(args);
        run(v).code
    }

    #[test]
    fn exit_codes() {
        assert_eq!(code(&["verify", "--target", "matrix", "--dim", "3"]), 0);
        assert_eq!(code(&["verify", "--target", "matrix", "--dim", "4"]), 3);
        assert_eq!(code(&["verify", "--bogus"]), 2);
        assert_eq!(code(&["verify", "--q", "1"]), 3);
        assert_eq!(code(&["verify", "--q", "0,2"]), 3);
        assert_eq!(code(&["verify", "--target", "fock", "--j", "q+"]), 2);
        assert_eq!(code(&["emit", "--target", "matrix", "--dim", "3", "--q", "0"]), 3);
        assert_eq!(code(&["scan", "--dims", "5..3"]), 0);
        assert_eq!(code(&["casimir", "--target", "oscillator"]), 2);
        assert_eq!(code(&["--help"]), 0);
    }

    #[test]
    fn out_file() {
        let dir = std::env::temp_dir().join(format!("wosp-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("h.tex");
        let p = path.to_str().unwrap();
        let r = run(["wosp", "emit", "--dim", "3", "--format", "latex", "--out", p]);
        assert_eq!(r.code, 0);
        assert!(r.stdout.is_empty());
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("\\begin{pmatrix}"));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
