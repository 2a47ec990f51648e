use std::fmt;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    /// `name` is the failing module error, e.g. `OracleError::ZeroDenominator`.
    #[error("{name}: {message}")]
    Numerical { name: String, message: String },
    #[error("IoError: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn numerical<E: fmt::Debug + fmt::Display>(module: &str, e: &E) -> Self {
        let debug = format!("{e:?}");
        let variant = debug
            .split(|c: char| !(c.is_alphanumeric() || c == '_'))
            .next()
            .unwrap_or_default();
        CliError::Numerical {
            name: format!("{module}::{variant}"),
            message: e.to_string(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Numerical { .. } | CliError::Io(_) => 2,
        }
    }
}

/// Adapts module errors to [`CliError::numerical`] with their type name.
pub trait NumericalContext<T> {
    fn numerical(self, module: &str) -> Result<T, CliError>;
}

impl<T, E: fmt::Debug + fmt::Display> NumericalContext<T> for Result<T, E> {
    fn numerical(self, module: &str) -> Result<T, CliError> {
        self.map_err(|e| CliError::numerical(module, &e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cylbuckle_core::oracle::OracleError;

    #[test]
    fn names_carry_the_variant() {
        let e = CliError::numerical("OracleError", &OracleError::ZeroDenominator { m: 1, n: 2 });
        match e {
            CliError::Numerical { name, .. } => assert_eq!(name, "OracleError::ZeroDenominator"),
            _ => unreachable!(),
        }
        let e = CliError::numerical("OracleError", &OracleError::EmptyWindow);
        assert!(e.to_string().starts_with("OracleError::EmptyWindow: "));
        assert_eq!(e.exit_code(), 2);
    }
}
