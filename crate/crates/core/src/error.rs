//! Error type shared across the pipeline.

use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the extraction pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// No sentence with at least one word survived preprocessing.
    #[error("document contains no sentences with words")]
    EmptyDocument,

    /// A sentence with zero words cannot be scored.
    #[error("cannot score a sentence with zero words")]
    ZeroWords,

    /// Normalization requires a positive average syllables-per-word.
    #[error("document average syllables per word is zero")]
    ZeroSyllableAverage,

    /// Accuracy is undefined over an empty population.
    #[error("confusion counts sum to zero")]
    ZeroPopulation,

    /// A chunk fraction outside (0, 1], or a fraction list that is not
    /// strictly descending.
    #[error("invalid fraction {0}: fractions must lie in (0, 1] and be strictly descending")]
    InvalidFraction(f64),

    /// A concept pair needs two distinct, non-empty concepts.
    #[error("concept pair requires two distinct non-empty concepts")]
    InvalidConceptPair,

    /// Bad pipeline configuration (missing pair, top_n > top_k, ...).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// The external POS tagger process failed or violated the line protocol.
    /// The pipeline never falls back silently.
    #[error("POS tagger adapter failed: {0}")]
    AdapterFailure(String),

    /// Input file could not be read.
    #[error("failed to read {}: {source}", path.display())]
    ReadInput { path: PathBuf, source: io::Error },

    /// Output file could not be written.
    #[error("failed to write {}: {source}", path.display())]
    WriteOutput { path: PathBuf, source: io::Error },

    /// Corpus directory contains no readable files.
    #[error("corpus directory {} contains no files", .0.display())]
    EmptyCorpus(PathBuf),

    /// Every file in a corpus run failed.
    #[error("all corpus files failed; first error: {}", .0.first().map(|(p, e)| format!("{}: {e}", p.display())).unwrap_or_default())]
    CorpusFailed(Vec<(PathBuf, Error)>),
}

impl Error {
    /// Process exit status for this error: 2 for invalid input or
    /// configuration, 3 for adapter failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::AdapterFailure(_) => 3,
            Error::CorpusFailed(failures)
                if !failures.is_empty()
                    && failures
                        .iter()
                        .all(|(_, e)| matches!(e, Error::AdapterFailure(_))) =>
            {
                3
            }
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
