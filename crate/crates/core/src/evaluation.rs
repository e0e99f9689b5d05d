//! Second-stage filter: per-pair PPV, sensitivity, harmonic mean, and
//! accuracy against the FI-selected sentence set, plus the harmonic-mean
//! re-ranking that yields the representative connected concepts.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::concepts::{ConceptPair, RankedPairs};
use crate::error::{Error, Result};
use crate::preprocess::Document;
use crate::readability::ConceptMatcher;

/// Retrieval bookkeeping for one concept pair.
///
/// `returned` is R, the size of the FI-selected set (pair-independent by
/// definition); `relevant` is S, the number of document sentences containing
/// both concepts of the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConfusionCounts {
    #[serde(rename = "r")]
    pub returned: usize,
    #[serde(rename = "s")]
    pub relevant: usize,
    #[serde(rename = "tp")]
    pub true_positives: usize,
    #[serde(rename = "fp")]
    pub false_positives: usize,
    #[serde(rename = "fn")]
    pub false_negatives: usize,
    #[serde(rename = "tn")]
    pub true_negatives: usize,
}

/// Count R, S, TP, FP, FN, and TN for a pair against a selected set.
pub fn confusion_counts(
    doc: &Document,
    selected: &BTreeSet<usize>,
    pair: &ConceptPair,
    fold_plurals: bool,
) -> ConfusionCounts {
    let matcher = ConceptMatcher::new(pair, fold_plurals);
    let mut relevant = 0;
    let mut true_positives = 0;
    for sentence in doc.sentences() {
        if matcher.contains_both(sentence) {
            relevant += 1;
            if selected.contains(&sentence.position()) {
                true_positives += 1;
            }
        }
    }
    let returned = selected.len();
    let false_positives = returned - true_positives;
    let false_negatives = relevant - true_positives;
    let true_negatives = doc.len() - true_positives - false_positives - false_negatives;
    ConfusionCounts {
        returned,
        relevant,
        true_positives,
        false_positives,
        false_negatives,
        true_negatives,
    }
}

/// TP / (TP + FP); 0 when the denominator is 0.
pub fn ppv(true_positives: usize, false_positives: usize) -> f64 {
    ratio(true_positives, true_positives + false_positives)
}

/// TP / (TP + FN); 0 when the denominator is 0.
pub fn sensitivity(true_positives: usize, false_negatives: usize) -> f64 {
    ratio(true_positives, true_positives + false_negatives)
}

fn ratio(numerator: usize, denominator: usize) -> f64 {
    if denominator == 0 {
        0.0
    } else {
        numerator as f64 / denominator as f64
    }
}

/// Equally weighted harmonic mean of PPV and sensitivity; 0 when both are 0.
pub fn harmonic_mean(ppv: f64, sensitivity: f64) -> f64 {
    let sum = ppv + sensitivity;
    if sum == 0.0 {
        0.0
    } else {
        2.0 * ppv * sensitivity / sum
    }
}

/// (TP + TN) / (TP + TN + FP + FN). Errors when all counts are zero.
pub fn accuracy(
    true_positives: usize,
    true_negatives: usize,
    false_positives: usize,
    false_negatives: usize,
) -> Result<f64> {
    let total = true_positives + true_negatives + false_positives + false_negatives;
    if total == 0 {
        return Err(Error::ZeroPopulation);
    }
    Ok((true_positives + true_negatives) as f64 / total as f64)
}

/// Full per-pair evaluation row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairEvaluation {
    pub pair: ConceptPair,
    #[serde(flatten)]
    pub counts: ConfusionCounts,
    pub ppv: f64,
    pub sensitivity: f64,
    pub harmonic_mean: f64,
    pub accuracy: f64,
}

/// Evaluate one pair against the selected set.
pub fn evaluate_pair(
    doc: &Document,
    selected: &BTreeSet<usize>,
    pair: &ConceptPair,
    fold_plurals: bool,
) -> Result<PairEvaluation> {
    let counts = confusion_counts(doc, selected, pair, fold_plurals);
    let precision = ppv(counts.true_positives, counts.false_positives);
    let recall = sensitivity(counts.true_positives, counts.false_negatives);
    Ok(PairEvaluation {
        pair: pair.clone(),
        counts,
        ppv: precision,
        sensitivity: recall,
        harmonic_mean: harmonic_mean(precision, recall),
        accuracy: accuracy(
            counts.true_positives,
            counts.true_negatives,
            counts.false_positives,
            counts.false_negatives,
        )?,
    })
}

/// One entry of the representative set, dense-ranked by harmonic mean.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepresentativeEntry {
    pub rank: usize,
    #[serde(flatten)]
    pub evaluation: PairEvaluation,
}

/// The top pairs after harmonic-mean re-ranking.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RepresentativeSet {
    entries: Vec<RepresentativeEntry>,
}

impl RepresentativeSet {
    pub fn entries(&self) -> &[RepresentativeEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Re-rank candidate pairs by harmonic mean and keep the first `top_n`.
/// Ties share a dense rank and are cut lexicographically at the boundary.
pub fn representative_pairs(
    doc: &Document,
    selected: &BTreeSet<usize>,
    candidates: &RankedPairs,
    top_n: usize,
    fold_plurals: bool,
) -> Result<RepresentativeSet> {
    let mut evaluations: Vec<PairEvaluation> = candidates
        .entries()
        .iter()
        .map(|entry| evaluate_pair(doc, selected, &entry.pair, fold_plurals))
        .collect::<Result<_>>()?;
    evaluations.sort_by(|a, b| {
        b.harmonic_mean
            .total_cmp(&a.harmonic_mean)
            .then_with(|| a.pair.cmp(&b.pair))
    });
    evaluations.truncate(top_n);

    let mut entries = Vec::with_capacity(evaluations.len());
    let mut rank = 0;
    let mut last: Option<f64> = None;
    for evaluation in evaluations {
        if last != Some(evaluation.harmonic_mean) {
            rank += 1;
            last = Some(evaluation.harmonic_mean);
        }
        entries.push(RepresentativeEntry { rank, evaluation });
    }
    Ok(RepresentativeSet { entries })
}

/// Known-related pairs loaded from a gold-relation file: one
/// `concept_a<TAB>concept_b` per line, unordered, case-insensitive.
/// Used only to annotate output; nothing is filtered on it.
#[derive(Debug, Clone, Default)]
pub struct GoldRelations {
    pairs: BTreeSet<ConceptPair>,
}

impl GoldRelations {
    pub fn load(path: &Path) -> Result<GoldRelations> {
        let content = fs::read_to_string(path).map_err(|source| Error::ReadInput {
            path: path.to_path_buf(),
            source,
        })?;
        let mut pairs = BTreeSet::new();
        for (number, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (a, b) = line.split_once('\t').ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "{}:{}: gold relation line needs one tab between concepts",
                    path.display(),
                    number + 1
                ))
            })?;
            pairs.insert(ConceptPair::new(a, b).map_err(|_| {
                Error::InvalidConfig(format!(
                    "{}:{}: invalid gold relation pair",
                    path.display(),
                    number + 1
                ))
            })?);
        }
        Ok(GoldRelations { pairs })
    }

    pub fn contains(&self, pair: &ConceptPair) -> bool {
        self.pairs.contains(pair)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concepts::{top_pairs, AssociationMatrix, HeuristicExtractor};
    use crate::preprocess::Sentence;

    fn pair(a: &str, b: &str) -> ConceptPair {
        ConceptPair::new(a, b).unwrap()
    }

    /// Ten sentences: both-set = {1, 5}; selected = {1, 2, 3} so that
    /// TP = 1, FP = 2, FN = 1, TN = 6.
    fn ten_sentence_doc() -> Document {
        Document::from_sentence_texts(&[
            "The cat sat here",                  // 0
            "Ischemia raised glutamate again",   // 1 both
            "Glutamate levels fell",             // 2 any
            "The dog ran away",                  // 3 none
            "Ischemia persisted all day",        // 4 any
            "Glutamate rose during ischemia",    // 5 both
            "Rats ate food",                     // 6
            "Blood flows along",                 // 7
            "The test ended",                    // 8
            "Nothing else happened",             // 9
        ])
        .unwrap()
    }

    #[test]
    fn confusion_hand_enumerated_fixture() {
        let doc = ten_sentence_doc();
        let selected: BTreeSet<usize> = [1, 2, 3].into_iter().collect();
        let counts = confusion_counts(&doc, &selected, &pair("ischemia", "glutamate"), false);
        assert_eq!(counts.returned, 3);
        assert_eq!(counts.relevant, 2);
        assert_eq!(counts.true_positives, 1);
        assert_eq!(counts.false_positives, 2);
        assert_eq!(counts.false_negatives, 1);
        assert_eq!(counts.true_negatives, 6);
    }

    #[test]
    fn confusion_perfect_filter() {
        let doc = ten_sentence_doc();
        let selected: BTreeSet<usize> = [1, 5].into_iter().collect();
        let counts = confusion_counts(&doc, &selected, &pair("ischemia", "glutamate"), false);
        assert_eq!(counts.false_positives, 0);
        assert_eq!(counts.false_negatives, 0);
        assert_eq!(ppv(counts.true_positives, counts.false_positives), 1.0);
        assert_eq!(sensitivity(counts.true_positives, counts.false_negatives), 1.0);
    }

    #[test]
    fn confusion_absent_pair() {
        let doc = ten_sentence_doc();
        let selected: BTreeSet<usize> = [1, 2, 3].into_iter().collect();
        let counts = confusion_counts(&doc, &selected, &pair("oxygen", "zebra"), false);
        assert_eq!(counts.relevant, 0);
        assert_eq!(counts.true_positives, 0);
        assert_eq!(counts.false_negatives, 0);
    }

    #[test]
    fn ppv_and_sensitivity_conventions() {
        assert!((ppv(1, 2) - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(ppv(0, 0), 0.0);
        assert_eq!(sensitivity(5, 0), 1.0);
        assert_eq!(sensitivity(0, 0), 0.0);
    }

    #[test]
    fn harmonic_mean_examples() {
        assert!((harmonic_mean(0.5, 0.5) - 0.5).abs() < 1e-12);
        assert_eq!(harmonic_mean(1.0, 0.0), 0.0);
        assert!((harmonic_mean(0.6, 0.4) - 0.48).abs() < 1e-12);
    }

    #[test]
    fn accuracy_examples() {
        assert!((accuracy(1, 6, 2, 1).unwrap() - 0.7).abs() < 1e-12);
        assert_eq!(accuracy(3, 4, 0, 0).unwrap(), 1.0);
        assert_eq!(accuracy(0, 0, 2, 3).unwrap(), 0.0);
        assert!(matches!(accuracy(0, 0, 0, 0), Err(Error::ZeroPopulation)));
    }

    #[test]
    fn evaluate_pair_matches_identity() {
        let doc = ten_sentence_doc();
        let selected: BTreeSet<usize> = [1, 2, 3].into_iter().collect();
        let evaluation =
            evaluate_pair(&doc, &selected, &pair("ischemia", "glutamate"), false).unwrap();
        let r = evaluation.counts.returned as f64;
        let s = evaluation.counts.relevant as f64;
        let tp = evaluation.counts.true_positives as f64;
        assert!((evaluation.harmonic_mean - 2.0 * tp / (r + s)).abs() < 1e-9);
        assert!((evaluation.accuracy - 0.7).abs() < 1e-12);
    }

    fn matrix_of(pairs: &[(&str, &str, u64)]) -> AssociationMatrix {
        // Build through sentences so the matrix stays an ordinary one.
        let mut texts = Vec::new();
        for &(a, b, n) in pairs {
            for _ in 0..n {
                texts.push(format!("{a} {b}"));
            }
        }
        let doc = Document::from_sentence_texts(&texts).unwrap();
        let sentences: Vec<&Sentence> = doc.sentences().iter().collect();
        crate::concepts::build_matrix(&sentences, &HeuristicExtractor::default()).unwrap()
    }

    #[test]
    fn representative_orders_by_harmonic_mean() {
        // Selected = both-set for gi; partially off for gl.
        let doc = Document::from_sentence_texts(&[
            "ischemia glutamate talk",
            "glutamate levels talk",
            "cat sat",
            "glutamate levels again",
        ])
        .unwrap();
        let selected: BTreeSet<usize> = [0, 1].into_iter().collect();
        let matrix = matrix_of(&[("ischemia", "glutamate", 1), ("glutamate", "levels", 1)]);
        let candidates = top_pairs(&matrix, 20);
        let set = representative_pairs(&doc, &selected, &candidates, 10, false).unwrap();
        // gi: R=2 S=1 TP=1 -> hm = 2/3; gl: R=2 S=2 TP=1 -> hm = 1/2.
        assert_eq!(set.entries()[0].evaluation.pair, pair("ischemia", "glutamate"));
        assert!((set.entries()[0].evaluation.harmonic_mean - 2.0 / 3.0).abs() < 1e-9);
        assert_eq!(set.entries()[0].rank, 1);
        assert_eq!(set.entries()[1].evaluation.pair, pair("glutamate", "levels"));
        assert!((set.entries()[1].evaluation.harmonic_mean - 0.5).abs() < 1e-9);
        assert_eq!(set.entries()[1].rank, 2);
    }

    #[test]
    fn representative_ties_share_dense_rank() {
        let doc = Document::from_sentence_texts(&[
            "alpha beta here",
            "gamma delta here",
            "cat sat",
        ])
        .unwrap();
        let selected: BTreeSet<usize> = [0, 1].into_iter().collect();
        let matrix = matrix_of(&[("alpha", "beta", 1), ("gamma", "delta", 1)]);
        let candidates = top_pairs(&matrix, 20);
        let set = representative_pairs(&doc, &selected, &candidates, 10, false).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.entries()[0].rank, 1);
        assert_eq!(set.entries()[1].rank, 1);
        assert_eq!(
            set.entries()[0].evaluation.harmonic_mean,
            set.entries()[1].evaluation.harmonic_mean
        );
    }

    #[test]
    fn representative_singleton() {
        let doc = Document::from_sentence_texts(&["alpha beta here", "cat sat"]).unwrap();
        let selected: BTreeSet<usize> = [0].into_iter().collect();
        let matrix = matrix_of(&[("alpha", "beta", 1)]);
        let candidates = top_pairs(&matrix, 20);
        let set = representative_pairs(&doc, &selected, &candidates, 10, false).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.entries()[0].evaluation.pair, pair("alpha", "beta"));
    }

    #[test]
    fn representative_never_invents_pairs() {
        let doc = ten_sentence_doc();
        let selected: BTreeSet<usize> = [1, 2, 3].into_iter().collect();
        let matrix = matrix_of(&[
            ("ischemia", "glutamate", 2),
            ("glutamate", "levels", 1),
            ("alpha", "beta", 1),
        ]);
        let candidates = top_pairs(&matrix, 20);
        let set = representative_pairs(&doc, &selected, &candidates, 2, false).unwrap();
        let candidate_set = candidates.pair_set();
        assert!(set.len() <= 2);
        for entry in set.entries() {
            assert!(candidate_set.contains(&entry.evaluation.pair));
        }
    }

    #[test]
    fn gold_relations_load_and_match() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("gold.tsv");
        std::fs::write(&path, "Ischemia\tGlutamate\n\n# comment\nbrain\tneurons\n").unwrap();
        let gold = GoldRelations::load(&path).unwrap();
        assert_eq!(gold.len(), 2);
        assert!(gold.contains(&pair("glutamate", "ischemia")));
        assert!(gold.contains(&pair("neurons", "brain")));
        assert!(!gold.contains(&pair("glutamate", "levels")));
    }

    #[test]
    fn gold_relations_reject_malformed_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.tsv");
        std::fs::write(&path, "ischemia glutamate\n").unwrap();
        assert!(matches!(
            GoldRelations::load(&path),
            Err(Error::InvalidConfig(_))
        ));
    }
}
