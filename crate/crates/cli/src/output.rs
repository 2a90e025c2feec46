//! Errors, exit statuses and report emission.

use std::path::Path;

use clap::ValueEnum;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable text.
    Text,
    /// One tab-separated `key=value` record per line.
    Machine,
}

pub const OK: u8 = 0;
pub const NEGATIVE: u8 = 2;
pub const CAPPED: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("formula: {0}")]
    Formula(#[from] goedel_core::formula::ParseError),
    #[error(transparent)]
    Rational(#[from] goedel_core::value::ValueError),
    #[error("interpretation: {0}")]
    Interp(#[from] goedel_core::interp::InterpError),
    #[error("truth set: {0}")]
    TruthSet(#[from] goedel_core::truthset::TruthSetError),
    #[error("evaluation: {0}")]
    Eval(#[from] goedel_core::eval::EvalError),
    #[error("chains: {0}")]
    Chains(#[from] goedel_core::chains::ChainError),
    #[error("search: {0}")]
    Search(#[from] goedel_core::search::SearchError),
    #[error("{0}")]
    Transform(#[from] goedel_core::transform::TransformError),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    /// Stable diagnostic code printed as `error[<code>]`.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Formula(_) => "formula",
            CliError::Rational(_) => "rational",
            CliError::Interp(_) => "interp",
            CliError::TruthSet(_) => "truthset",
            CliError::Eval(_) => "eval",
            CliError::Chains(_) => "chains",
            CliError::Search(_) => "search",
            CliError::Transform(goedel_core::transform::TransformError::Unsupported(_)) => "unsupported",
            CliError::Transform(_) => "transform",
            CliError::Input(_) => "input",
        }
    }

    /// Unsupported transformations are negative answers, everything else is an input error.
    pub fn status(&self) -> u8 {
        match self {
            CliError::Transform(goedel_core::transform::TransformError::Unsupported(_)) => NEGATIVE,
            CliError::Eval(goedel_core::eval::EvalError::Unsupported(_)) => NEGATIVE,
            CliError::Search(goedel_core::search::SearchError::AbstractSet(_)) => NEGATIVE,
            _ => 1,
        }
    }
}

pub type Record = Vec<(&'static str, String)>;

pub struct Outcome {
    pub text: String,
    pub records: Vec<Record>,
    pub status: u8,
}

impl Outcome {
    pub fn new(text: String, records: Vec<Record>, status: u8) -> Outcome {
        Outcome { text, records, status }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Machine => self
                .records
                .iter()
                .map(|r| r.iter().map(|(k, v)| format!("{k}={}", escape(v))).collect::<Vec<_>>().join("\t") + "\n")
                .collect(),
        }
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> Result<(), CliError> {
        let body = self.render(format);
        match out {
            Some(p) => std::fs::write(p, body).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
            None => {
                print!("{body}");
                Ok(())
            }
        }
    }
}

/// Keeps each record on one line.
fn escape(v: &str) -> String {
    v.replace('\\', "\\\\").replace('\t', "\\t").replace('\n', "\\n")
}
