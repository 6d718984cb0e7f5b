//! Error marker that separates bad invocations (exit code 2) from
//! failures at runtime (exit code 1).

use std::fmt;

/// A caller mistake: conflicting flags, missing inputs, malformed
/// parameter syntax. Wrapped in `anyhow::Error` and downcast in `main`
/// to choose the exit code.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Shorthand for bailing out with a usage error.
pub fn usage(message: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(message.into()))
}
