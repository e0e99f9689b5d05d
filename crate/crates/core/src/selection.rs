//! Difficulty ranking, top-fraction chunk selection, and the chunk-evolution
//! analysis of new and dropped connections.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::concepts::{build_matrix, ConceptPair, NounExtractor, RankedPairs};
use crate::error::{Error, Result};
use crate::preprocess::{Document, Sentence};
use crate::readability::{score_document, FormulaVariant, ScoredSentence};

/// Sentences sorted by FI descending; equal scores keep document order.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedList {
    entries: Vec<ScoredSentence>,
}

impl RankedList {
    pub fn entries(&self) -> &[ScoredSentence] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Rank all sentences of a document by Fog Index, hardest first.
pub fn rank_sentences(doc: &Document, formula: FormulaVariant) -> Result<RankedList> {
    if doc.is_empty() {
        return Err(Error::EmptyDocument);
    }
    let mut entries = score_document(doc, formula)?;
    entries.sort_by(|a, b| b.fi.total_cmp(&a.fi).then(a.position.cmp(&b.position)));
    Ok(RankedList { entries })
}

/// Positions of the top `ceil(fraction * N)` ranked sentences.
///
/// The product is nudged before rounding so that binary representation
/// noise (0.3 * 10 = 3.0000000000000004) cannot inflate the chunk.
pub fn select_chunk(ranked: &RankedList, fraction: f64) -> Result<BTreeSet<usize>> {
    validate_fraction(fraction)?;
    let n = ranked.len();
    let size = ((fraction * n as f64) - 1e-9).ceil().max(1.0) as usize;
    let size = size.min(n);
    Ok(ranked.entries[..size].iter().map(|e| e.position).collect())
}

fn validate_fraction(fraction: f64) -> Result<()> {
    if !fraction.is_finite() || fraction <= 0.0 || fraction > 1.0 {
        return Err(Error::InvalidFraction(fraction));
    }
    Ok(())
}

/// One chunk of the evolution analysis: the selected sentence positions and
/// the top-k pairs extracted from them.
#[derive(Debug, Clone, PartialEq)]
pub struct ChunkReport {
    pub fraction: f64,
    pub selected: BTreeSet<usize>,
    pub top_pairs: RankedPairs,
}

/// Pair-set difference between two adjacent chunks.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionReport {
    pub from_fraction: f64,
    pub to_fraction: f64,
    pub new_pairs: BTreeSet<ConceptPair>,
    pub dropped_pairs: BTreeSet<ConceptPair>,
}

/// Full chunk-evolution result: the per-chunk reports, the baseline chunk
/// (whose pairs are all new by convention), and one transition per adjacent
/// fraction pair.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionReport {
    pub top_k: usize,
    pub chunks: Vec<ChunkReport>,
    pub transitions: Vec<TransitionReport>,
}

impl EvolutionReport {
    pub fn baseline(&self) -> &ChunkReport {
        &self.chunks[0]
    }

    /// Render as CSV: a baseline row with an empty from_fraction, then one
    /// row per transition. Pair lists are hyphenated pairs joined by '|'.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("from_fraction,to_fraction,n_new,n_dropped,new_pairs,dropped_pairs\n");
        let baseline = self.baseline();
        let baseline_pairs: Vec<String> = baseline
            .top_pairs
            .entries()
            .iter()
            .map(|e| e.pair.hyphenated())
            .collect();
        let _ = writeln!(
            out,
            ",{:.4},{},0,{},",
            baseline.fraction,
            baseline_pairs.len(),
            baseline_pairs.join("|"),
        );
        for transition in &self.transitions {
            let new: Vec<String> = transition.new_pairs.iter().map(ConceptPair::hyphenated).collect();
            let dropped: Vec<String> = transition
                .dropped_pairs
                .iter()
                .map(ConceptPair::hyphenated)
                .collect();
            let _ = writeln!(
                out,
                "{:.4},{:.4},{},{},{},{}",
                transition.from_fraction,
                transition.to_fraction,
                new.len(),
                dropped.len(),
                new.join("|"),
                dropped.join("|"),
            );
        }
        out
    }
}

/// Track the top-k connected concepts across a strictly descending list of
/// chunk fractions, reporting pairs revealed and dropped at each step.
pub fn chunk_evolution(
    doc: &Document,
    fractions: &[f64],
    top_k: usize,
    extractor: &dyn NounExtractor,
) -> Result<EvolutionReport> {
    if fractions.is_empty() {
        return Err(Error::InvalidConfig("no chunk fractions given".to_string()));
    }
    for window in fractions.windows(2) {
        if window[1] >= window[0] {
            return Err(Error::InvalidFraction(window[1]));
        }
    }

    let ranked = rank_sentences(doc, FormulaVariant::PaperLiteral)?;
    let mut chunks = Vec::with_capacity(fractions.len());
    for &fraction in fractions {
        let selected = select_chunk(&ranked, fraction)?;
        let sentences: Vec<&Sentence> = doc
            .sentences()
            .iter()
            .filter(|s| selected.contains(&s.position()))
            .collect();
        let matrix = build_matrix(&sentences, extractor)?;
        chunks.push(ChunkReport {
            fraction,
            selected,
            top_pairs: crate::concepts::top_pairs(&matrix, top_k),
        });
    }

    let transitions = chunks
        .windows(2)
        .map(|pair| {
            let from = pair[0].top_pairs.pair_set();
            let to = pair[1].top_pairs.pair_set();
            TransitionReport {
                from_fraction: pair[0].fraction,
                to_fraction: pair[1].fraction,
                new_pairs: to.difference(&from).cloned().collect(),
                dropped_pairs: from.difference(&to).cloned().collect(),
            }
        })
        .collect();

    Ok(EvolutionReport {
        top_k,
        chunks,
        transitions,
    })
}
