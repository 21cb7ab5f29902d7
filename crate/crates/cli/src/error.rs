use std::fmt;

use mfkit_core::algebra::AlgebraError;
use mfkit_core::bott::BottError;
use mfkit_core::mf::{MfDiagnostic, MfError};
use mfkit_core::orlov::OrlovError;

/// Failure of a command. Usage and I/O problems exit with 1, everything the
/// input itself gets wrong exits with 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    /// Module-qualified messages, one per line on stderr.
    Invalid {
        module: &'static str,
        messages: Vec<String>,
    },
}

impl CliError {
    pub fn invalid(module: &'static str, message: impl Into<String>) -> Self {
        CliError::Invalid { module, messages: vec![message.into()] }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Invalid { .. } => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error[usage]: {m}"),
            CliError::Io(m) => write!(f, "error[io]: {m}"),
            CliError::Invalid { module, messages } => {
                let lines: Vec<String> = messages.iter().map(|m| format!("error[{module}]: {m}")).collect();
                f.write_str(&lines.join("\n"))
            }
        }
    }
}

impl From<MfError> for CliError {
    fn from(e: MfError) -> Self {
        match e {
            MfError::Invalid(diags) => {
                CliError::Invalid { module: "mf", messages: diags.iter().map(MfDiagnostic::to_string).collect() }
            }
            other => CliError::invalid("mf", other.to_string()),
        }
    }
}

impl From<OrlovError> for CliError {
    fn from(e: OrlovError) -> Self {
        CliError::invalid("orlov", e.to_string())
    }
}

impl From<BottError> for CliError {
    fn from(e: BottError) -> Self {
        CliError::invalid("bott", e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::invalid("algebra", e.to_string())
    }
}
