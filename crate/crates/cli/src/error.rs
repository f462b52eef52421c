use serde_json::{json, Value};
use thiserror::Error;

use lhur_core::ascover::AsError;
use lhur_core::cartier::CartierError;
use lhur_core::expr::ExprError;
use lhur_core::loci::LociError;
use lhur_core::strata::StrataError;
use lhur_core::{FieldError, RatError};

/// Failures of a single invocation, each with a stable code and exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Field(String),
    #[error("{0}")]
    Schema(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    CheckFailed(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse(_) => "parse",
            CliError::Field(_) => "field",
            CliError::Schema(_) => "schema",
            CliError::Domain(_) => "domain",
            CliError::CheckFailed(_) => "check_failed",
            CliError::Io(_) => "io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Field(_) => 4,
            CliError::Schema(_) => 5,
            CliError::Domain(_) => 6,
            CliError::CheckFailed(_) => 7,
            CliError::Io(_) => 8,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {"code": self.code(), "message": self.to_string()}})
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::BadElement(_) => CliError::Parse(e.to_string()),
            FieldError::DivisionByZero => CliError::Domain(e.to_string()),
            _ => CliError::Field(e.to_string()),
        }
    }
}

impl From<RatError> for CliError {
    fn from(e: RatError) -> Self {
        match e {
            RatError::Field(f) => f.into(),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        match e {
            ExprError::Parse { .. } => CliError::Parse(e.to_string()),
            ExprError::Rat(r) => r.into(),
        }
    }
}

impl From<CartierError> for CliError {
    fn from(e: CartierError) -> Self {
        match e {
            CartierError::Rat(r) => r.into(),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<AsError> for CliError {
    fn from(e: AsError) -> Self {
        match e {
            AsError::Rat(r) => r.into(),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<LociError> for CliError {
    fn from(e: LociError) -> Self {
        match e {
            LociError::Pattern(_) | LociError::BadPin(_) | LociError::Length { .. } => CliError::Parse(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<StrataError> for CliError {
    fn from(e: StrataError) -> Self {
        CliError::Domain(e.to_string())
    }
}
