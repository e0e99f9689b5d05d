//! Concept-pair extraction: noun identification, the sentence co-occurrence
//! association matrix, and frequency ranking of connected concepts.

mod adapter;
mod words;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs;
use std::path::Path;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::preprocess::Sentence;

pub use adapter::TaggerAdapter;
pub use words::{BIOMEDICAL_WHITELIST, STOPWORDS};

/// Canonical unordered pair of normalized concept strings.
///
/// The members are case-folded and stored in lexicographic order, so equal
/// pairs compare equal regardless of the order they were supplied in.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConceptPair {
    first: String,
    second: String,
}

impl ConceptPair {
    /// Canonicalize two concepts into a pair. Fails when either concept is
    /// empty after trimming or both fold to the same string.
    pub fn new(a: impl AsRef<str>, b: impl AsRef<str>) -> Result<ConceptPair> {
        let a = a.as_ref().trim().to_lowercase();
        let b = b.as_ref().trim().to_lowercase();
        if a.is_empty() || b.is_empty() || a == b {
            return Err(Error::InvalidConceptPair);
        }
        let (first, second) = if a < b { (a, b) } else { (b, a) };
        Ok(ConceptPair { first, second })
    }

    /// Pair from members already normalized with `first < second`.
    fn from_ordered(first: String, second: String) -> ConceptPair {
        debug_assert!(first < second);
        ConceptPair { first, second }
    }

    pub fn first(&self) -> &str {
        &self.first
    }

    pub fn second(&self) -> &str {
        &self.second
    }

    /// Hyphenated display form, e.g. "glutamate-ischemia".
    pub fn hyphenated(&self) -> String {
        format!("{}-{}", self.first, self.second)
    }
}

impl Serialize for ConceptPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut tuple = serializer.serialize_tuple(2)?;
        tuple.serialize_element(&self.first)?;
        tuple.serialize_element(&self.second)?;
        tuple.end()
    }
}

impl std::fmt::Display for ConceptPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}", self.first, self.second)
    }
}

/// Identifies the nouns of a tokenized sentence.
///
/// Implementations must return a subset of the sentence's normalized tokens.
pub trait NounExtractor {
    /// Noun sets for a batch of sentences. Adapter-backed implementations
    /// run one external process per call.
    fn extract_batch(&self, sentences: &[&Sentence]) -> Result<Vec<BTreeSet<String>>>;

    /// Short description for report metadata.
    fn describe(&self) -> String;
}

/// Nouns of a single sentence.
pub fn extract_nouns(
    sentence: &Sentence,
    extractor: &dyn NounExtractor,
) -> Result<BTreeSet<String>> {
    Ok(extractor
        .extract_batch(&[sentence])?
        .into_iter()
        .next()
        .unwrap_or_default())
}

const BLOCKED_SUFFIXES: [&str; 3] = ["ing", "ed", "ly"];

/// Built-in noun heuristic.
///
/// A normalized token is a noun candidate when it is at least two characters
/// long, not a stopword, contains a letter (pure numbers are dropped while
/// digit-bearing terms like "10min" survive), contains no internal hyphen or
/// apostrophe (compound modifiers like "excito-toxic" are not nouns), and
/// does not end in -ing/-ed/-ly unless whitelisted.
#[derive(Debug, Clone)]
pub struct HeuristicExtractor {
    stopwords: HashSet<String>,
    whitelist: HashSet<String>,
}

impl Default for HeuristicExtractor {
    fn default() -> Self {
        HeuristicExtractor {
            stopwords: STOPWORDS.iter().map(|s| s.to_string()).collect(),
            whitelist: BIOMEDICAL_WHITELIST.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl HeuristicExtractor {
    /// Extractor with the bundled lists, optionally replaced from files
    /// (one entry per line; blank lines ignored).
    pub fn with_word_files(
        stopwords_path: Option<&Path>,
        whitelist_path: Option<&Path>,
    ) -> Result<HeuristicExtractor> {
        let mut extractor = HeuristicExtractor::default();
        if let Some(path) = stopwords_path {
            extractor.stopwords = read_word_file(path)?;
        }
        if let Some(path) = whitelist_path {
            extractor.whitelist = read_word_file(path)?;
        }
        Ok(extractor)
    }

    fn is_noun(&self, normalized: &str) -> bool {
        if normalized.chars().count() < 2 || self.stopwords.contains(normalized) {
            return false;
        }
        if !normalized.chars().any(char::is_alphabetic) {
            return false;
        }
        if normalized.chars().any(|c| !c.is_alphanumeric()) {
            return false;
        }
        if BLOCKED_SUFFIXES.iter().any(|s| normalized.ends_with(s)) {
            return self.whitelist.contains(normalized);
        }
        true
    }
}

impl NounExtractor for HeuristicExtractor {
    fn extract_batch(&self, sentences: &[&Sentence]) -> Result<Vec<BTreeSet<String>>> {
        Ok(sentences
            .iter()
            .map(|sentence| {
                sentence
                    .tokens()
                    .iter()
                    .map(|t| t.normalized())
                    .filter(|n| self.is_noun(n))
                    .map(str::to_string)
                    .collect()
            })
            .collect())
    }

    fn describe(&self) -> String {
        "heuristic".to_string()
    }
}

fn read_word_file(path: &Path) -> Result<HashSet<String>> {
    let content = fs::read_to_string(path).map_err(|source| Error::ReadInput {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(content
        .lines()
        .map(|l| l.trim().to_lowercase())
        .filter(|l| !l.is_empty())
        .collect())
}

/// Frequency map from concept pairs to sentence co-occurrence counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AssociationMatrix {
    counts: BTreeMap<ConceptPair, u64>,
}

impl AssociationMatrix {
    pub(crate) fn from_counts(counts: BTreeMap<ConceptPair, u64>) -> AssociationMatrix {
        AssociationMatrix { counts }
    }

    pub fn count(&self, pair: &ConceptPair) -> u64 {
        self.counts.get(pair).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ConceptPair, u64)> {
        self.counts.iter().map(|(p, &c)| (p, c))
    }

    /// Sum of all pair counts.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// Build the association matrix over the given sentences: each unordered
/// pair of distinct nouns present in a sentence counts once per sentence,
/// regardless of how often either noun repeats in it.
pub fn build_matrix(
    sentences: &[&Sentence],
    extractor: &dyn NounExtractor,
) -> Result<AssociationMatrix> {
    let noun_sets = extractor.extract_batch(sentences)?;
    let mut counts: BTreeMap<ConceptPair, u64> = BTreeMap::new();
    for nouns in &noun_sets {
        let nouns: Vec<&String> = nouns.iter().collect();
        for i in 0..nouns.len() {
            for j in i + 1..nouns.len() {
                let pair = ConceptPair::from_ordered(nouns[i].clone(), nouns[j].clone());
                *counts.entry(pair).or_insert(0) += 1;
            }
        }
    }
    Ok(AssociationMatrix { counts })
}

/// One row of a frequency-ranked pair table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankedPair {
    pub rank: usize,
    pub pair: ConceptPair,
    pub frequency: u64,
}

/// Pair table ranked by frequency with dense ranks: tied frequencies share
/// a rank and the next distinct frequency takes the next integer.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RankedPairs {
    entries: Vec<RankedPair>,
}

impl RankedPairs {
    pub fn entries(&self) -> &[RankedPair] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn pair_set(&self) -> BTreeSet<ConceptPair> {
        self.entries.iter().map(|e| e.pair.clone()).collect()
    }
}

/// The `k` most frequent pairs of the matrix. Ties are ordered (and cut at
/// the boundary) lexicographically.
pub fn top_pairs(matrix: &AssociationMatrix, k: usize) -> RankedPairs {
    let mut sorted: Vec<(&ConceptPair, u64)> = matrix.iter().collect();
    // BTreeMap iteration is already pair-ascending; a stable sort on
    // descending frequency keeps the lexicographic order within ties.
    sorted.sort_by_key(|&(_, frequency)| std::cmp::Reverse(frequency));
    sorted.truncate(k);

    let mut entries = Vec::with_capacity(sorted.len());
    let mut rank = 0;
    let mut last_frequency = None;
    for (pair, frequency) in sorted {
        if last_frequency != Some(frequency) {
            rank += 1;
            last_frequency = Some(frequency);
        }
        entries.push(RankedPair {
            rank,
            pair: pair.clone(),
            frequency,
        });
    }
    RankedPairs { entries }
}
