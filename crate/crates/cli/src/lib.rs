//! Front end for `mlk-core`: config parsing, subcommand dispatch and the
//! acceptance suite. Every command returns a JSON value or a [`Failure`]
//! carrying its exit code.

pub mod commands;
pub mod input;
pub mod suite;

use mlk_core::Error;
use serde_json::{json, Value};

/// Exit code 1.
pub const EXIT_MALFORMED: i32 = 1;
/// Exit code 2.
pub const EXIT_PRECONDITION: i32 = 2;
/// Exit code 3.
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    pub fn malformed(message: impl Into<String>) -> Self {
        Self { code: EXIT_MALFORMED, kind: "malformed_input", message: message.into() }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        Self { code: EXIT_PRECONDITION, kind: "precondition", message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self { code: EXIT_INTERNAL, kind: "internal_consistency", message: message.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "exit_code": self.code, "kind": self.kind, "message": self.message } })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_precondition() {
            Self::precondition(e.to_string())
        } else {
            Self::internal(e.to_string())
        }
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

/// Compact or indented JSON; keys are already sorted.
pub fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("json")
    } else {
        serde_json::to_string(v).expect("json")
    }
}
