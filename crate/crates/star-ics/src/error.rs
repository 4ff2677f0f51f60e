use thiserror::Error;

/// Errors surfaced by argument validation and parsing.
///
/// Internal counting invariants (e.g. exact divisibility of path products)
/// are not recoverable conditions; violating them panics with a diagnostic.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("generator position {position} out of range 2..={n}")]
    GeneratorOutOfRange { position: usize, n: usize },

    #[error("index string {string} is not admissible for n={n}")]
    NotAdmissible { string: String, n: usize },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("refusing oversized computation: {0}")]
    ResourceGuard(String),
}
