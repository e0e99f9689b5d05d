//! Two-filter extraction of connected concepts from scientific text.
//!
//! The first filter scores every sentence with a per-sentence Fog Index,
//! ranks the document hardest-first, and keeps the top fraction (0.30 by
//! default). An association matrix then counts, for every unordered pair of
//! nouns, the selected sentences in which both occur. The second filter
//! re-ranks the most frequent pairs by the equally weighted harmonic mean
//! of their positive predictive value and sensitivity against the selected
//! set, yielding the document's representative connected concepts.
//!
//! ```
//! use foglift::pipeline::{run_document, PipelineConfig};
//!
//! # fn main() -> foglift::Result<()> {
//! # let dir = tempfile::tempdir().unwrap();
//! # let path = dir.path().join("paper.txt");
//! # std::fs::write(&path, "Glutamate is released during ischemia. The cat sat.").unwrap();
//! let config = PipelineConfig::for_pair("ischemia", "glutamate")?;
//! let report = run_document(&path, &config)?;
//! println!("{}", report.to_json());
//! # Ok(())
//! # }
//! ```

pub mod concepts;
pub mod error;
pub mod evaluation;
pub mod pipeline;
pub mod preprocess;
pub mod readability;
pub mod report;
pub mod selection;

pub use error::{Error, Result};
