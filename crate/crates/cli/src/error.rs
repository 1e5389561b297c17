use std::fmt;

use gtc_core::distance::DistanceError;
use gtc_core::structure::StructureError;
use gtc_core::{CodeError, ExponentError, FieldError};
use serde::Serialize;

/// Exit status for usage errors (bad flags, malformed sets, invalid q).
pub const EXIT_USAGE: i32 = 2;
/// Exit status when a search exceeds its budget.
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_FAILURE: i32 = 1;

#[derive(Debug)]
pub enum CliError {
    Usage { code: &'static str, detail: String },
    Budget { detail: String, certified_lower_bound: usize },
    Failure { code: &'static str, detail: String },
}

impl CliError {
    pub fn usage(code: &'static str, detail: impl fmt::Display) -> Self {
        CliError::Usage {
            code,
            detail: detail.to_string(),
        }
    }

    pub fn failure(code: &'static str, detail: impl fmt::Display) -> Self {
        CliError::Failure {
            code,
            detail: detail.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage { .. } => EXIT_USAGE,
            CliError::Budget { .. } => EXIT_BUDGET,
            CliError::Failure { .. } => EXIT_FAILURE,
        }
    }

    pub fn to_json(&self) -> ErrorDocument<'_> {
        match self {
            CliError::Usage { code, detail } | CliError::Failure { code, detail } => ErrorDocument {
                error: code,
                detail,
                certified_lower_bound: None,
            },
            CliError::Budget {
                detail,
                certified_lower_bound,
            } => ErrorDocument {
                error: "BudgetExceeded",
                detail,
                certified_lower_bound: Some(*certified_lower_bound),
            },
        }
    }
}

#[derive(Serialize)]
pub struct ErrorDocument<'a> {
    pub error: &'a str,
    pub detail: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_lower_bound: Option<usize>,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage { detail, .. } | CliError::Failure { detail, .. } => f.write_str(detail),
            CliError::Budget { detail, .. } => f.write_str(detail),
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        let code = match e {
            FieldError::NotPrimePower(_) => "NotPrimePower",
            FieldError::TooLarge(_) => "TooLarge",
            FieldError::DivisionByZero => return CliError::failure("DivisionByZero", e),
        };
        CliError::usage(code, e)
    }
}

impl From<ExponentError> for CliError {
    fn from(e: ExponentError) -> Self {
        let code = match e {
            ExponentError::InvalidOrder(_) => "InvalidOrder",
            ExponentError::InvalidDimension(_) => "InvalidDimension",
            ExponentError::DimensionTooLarge { .. } => "DimensionTooLarge",
            ExponentError::OutOfGrid { .. } => "OutOfGrid",
            ExponentError::Parse(_) => "ParseError",
            ExponentError::Polytope(_) => "InvalidPolytope",
        };
        CliError::usage(code, e)
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::Exponent(inner) => inner.into(),
            CodeError::Field(inner) => inner.into(),
            CodeError::EmptyU => CliError::usage("EmptyU", e),
            CodeError::LengthMismatch { .. } => CliError::usage("LengthMismatch", e),
            CodeError::ContextMismatch => CliError::usage("ContextMismatch", e),
            CodeError::BadElement(_) => CliError::usage("BadElement", e),
            CodeError::DimensionTooLarge { .. } => CliError::usage("DimensionTooLarge", e),
        }
    }
}

impl From<DistanceError> for CliError {
    fn from(e: DistanceError) -> Self {
        match e {
            DistanceError::BudgetExceeded {
                certified_lower_bound,
                ..
            } => CliError::Budget {
                detail: e.to_string(),
                certified_lower_bound,
            },
            DistanceError::EmptyCode => CliError::usage("EmptyCode", e),
            DistanceError::InvalidTarget { .. } => CliError::usage("InvalidTarget", e),
            DistanceError::Code(inner) => inner.into(),
        }
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::Code(inner) => inner.into(),
            StructureError::NoGenerators => CliError::usage("NoGenerators", e),
            StructureError::ZeroIdeal => CliError::failure("ZeroIdeal", e),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::failure("IoError", e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::usage("InvalidJson", e)
    }
}
