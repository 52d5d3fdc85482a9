use std::fmt;

/// Errors surfaced by every fallible operation in this crate.
///
/// The CLI maps these onto process exit codes: `BudgetExceeded` exits 2,
/// everything else exits 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-contract input: bad group spec, element outside
    /// its group, mismatched domains, parameters out of range, and so on.
    InvalidInput(String),
    /// A work bound was hit before the operation finished (enumeration too
    /// large, search budget exhausted, word table too big).
    BudgetExceeded(String),
    /// Proposed generator images do not satisfy the group's relations; the
    /// message names the violated relation.
    RelatorViolation(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::BudgetExceeded(msg.into())
    }

    pub fn relator(msg: impl Into<String>) -> Self {
        Error::RelatorViolation(msg.into())
    }

    /// Process exit code used by the CLI for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded(_) => 2,
            Error::InvalidInput(_) | Error::RelatorViolation(_) => 3,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::BudgetExceeded(msg) => write!(f, "budget exceeded: {msg}"),
            Error::RelatorViolation(msg) => write!(f, "relator violation: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_match_cli_contract() {
        assert_eq!(Error::budget("x").exit_code(), 2);
        assert_eq!(Error::invalid("x").exit_code(), 3);
        assert_eq!(Error::relator("x").exit_code(), 3);
    }

    #[test]
    fn display_is_prefixed() {
        assert_eq!(Error::invalid("bad").to_string(), "invalid input: bad");
        assert_eq!(Error::budget("big").to_string(), "budget exceeded: big");
    }
}
