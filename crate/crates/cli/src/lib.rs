//! Verification harness behind the `minor-sums` binary.

pub mod eval;
pub mod report;
pub mod suites;

use minor_sums::RingSpec;
use thiserror::Error;

pub use report::{Counterexample, SuiteReport, VerificationReport};
pub use suites::RunOptions;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] minor_sums::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Every error is a usage, input or I/O failure; counterexamples are
    /// not errors and map to exit status 1 elsewhere.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// Parses repeated `--ring` values, each of which may be a comma list.
/// An empty value anywhere is a usage error.
pub fn parse_rings<S: AsRef<str>>(values: &[S]) -> Result<Vec<RingSpec>, CliError> {
    let mut rings = Vec::new();
    for value in values {
        for part in value.as_ref().split(',') {
            let part = part.trim();
            if part.is_empty() {
                return Err(CliError::Usage("empty ring specification".into()));
            }
            let spec: RingSpec = part.parse().map_err(|e: minor_sums::Error| CliError::Usage(e.to_string()))?;
            rings.push(spec);
        }
    }
    Ok(rings)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_lists() {
        let rings = parse_rings(&["int,mod:5", "rat"]).unwrap();
        assert_eq!(rings, vec![RingSpec::Integers, RingSpec::modular(5).unwrap(), RingSpec::Rationals]);
        assert!(parse_rings(&[""]).is_err());
        assert!(parse_rings(&["int,"]).is_err());
        assert!(parse_rings(&["mod:1"]).is_err());
        assert!(parse_rings::<&str>(&[]).unwrap().is_empty());
    }
}
