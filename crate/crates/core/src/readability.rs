//! Per-sentence Fog Index scoring, normalization, and the both/any/none
//! sentence categorization for a concept pair.

use serde::Serialize;

use crate::concepts::ConceptPair;
use crate::error::{Error, Result};
use crate::preprocess::{tokenize, Document, Sentence};

/// Which Fog Index formula to apply.
///
/// `PaperLiteral` scales only the sentence-length term by 0.4 and adds the
/// complex-word percentage unscaled. `StandardGunning` scales the whole sum
/// by 0.4. The two agree exactly when a sentence has no complex words, but
/// can rank sentences differently otherwise, so the choice is explicit and
/// echoed in every report.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormulaVariant {
    #[default]
    #[serde(rename = "paper")]
    PaperLiteral,
    #[serde(rename = "gunning")]
    StandardGunning,
}

impl FormulaVariant {
    pub fn as_str(&self) -> &'static str {
        match self {
            FormulaVariant::PaperLiteral => "paper",
            FormulaVariant::StandardGunning => "gunning",
        }
    }
}

impl std::str::FromStr for FormulaVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(FormulaVariant::PaperLiteral),
            "gunning" => Ok(FormulaVariant::StandardGunning),
            other => Err(Error::InvalidConfig(format!(
                "unknown formula variant '{other}' (expected 'paper' or 'gunning')"
            ))),
        }
    }
}

/// Fog Index of a single sentence (sentence count fixed at 1).
pub fn fog_index(sentence: &Sentence, formula: FormulaVariant) -> Result<f64> {
    let words = sentence.word_count();
    if words == 0 {
        return Err(Error::ZeroWords);
    }
    let words = words as f64;
    let complex_ratio = sentence.complex_count() as f64 / words;
    Ok(match formula {
        FormulaVariant::PaperLiteral => 0.4 * words + 100.0 * complex_ratio,
        FormulaVariant::StandardGunning => 0.4 * (words + 100.0 * complex_ratio),
    })
}

/// Normalize a Fog Index by the document's average syllables per word.
pub fn normalize_fi(fi: f64, doc: &Document) -> Result<f64> {
    let avg = doc.avg_syllables_per_word();
    if avg <= 0.0 {
        return Err(Error::ZeroSyllableAverage);
    }
    Ok(fi / avg)
}

/// A sentence position with its FI and normalized FI scores.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoredSentence {
    pub position: usize,
    pub fi: f64,
    pub fi_norm: f64,
}

/// Score every sentence of a document.
pub fn score_document(doc: &Document, formula: FormulaVariant) -> Result<Vec<ScoredSentence>> {
    doc.sentences()
        .iter()
        .map(|sentence| {
            let fi = fog_index(sentence, formula)?;
            Ok(ScoredSentence {
                position: sentence.position(),
                fi,
                fi_norm: normalize_fi(fi, doc)?,
            })
        })
        .collect()
}

/// Sentence category relative to a concept pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    /// Contains both concepts.
    Both,
    /// Contains exactly one concept.
    Any,
    /// Contains neither concept.
    None,
}

impl Category {
    pub fn as_str(&self) -> &'static str {
        match self {
            Category::Both => "both",
            Category::Any => "any",
            Category::None => "none",
        }
    }
}

/// Matches a concept pair against sentences.
///
/// A concept matches when its case-folded token sequence appears as a
/// contiguous subsequence of the sentence's normalized tokens. Optional
/// plural folding treats tokens equal when they differ only by one
/// trailing "s".
#[derive(Debug, Clone)]
pub struct ConceptMatcher {
    first: Vec<String>,
    second: Vec<String>,
    fold_plurals: bool,
}

impl ConceptMatcher {
    pub fn new(pair: &ConceptPair, fold_plurals: bool) -> ConceptMatcher {
        ConceptMatcher {
            first: concept_tokens(pair.first()),
            second: concept_tokens(pair.second()),
            fold_plurals,
        }
    }

    pub fn categorize(&self, sentence: &Sentence) -> Category {
        match (self.contains_first(sentence), self.contains_second(sentence)) {
            (true, true) => Category::Both,
            (false, false) => Category::None,
            _ => Category::Any,
        }
    }

    pub fn contains_first(&self, sentence: &Sentence) -> bool {
        self.contains(sentence, &self.first)
    }

    pub fn contains_second(&self, sentence: &Sentence) -> bool {
        self.contains(sentence, &self.second)
    }

    pub fn contains_both(&self, sentence: &Sentence) -> bool {
        self.contains_first(sentence) && self.contains_second(sentence)
    }

    fn contains(&self, sentence: &Sentence, concept: &[String]) -> bool {
        if concept.is_empty() || sentence.word_count() < concept.len() {
            return false;
        }
        let tokens = sentence.tokens();
        (0..=tokens.len() - concept.len()).any(|start| {
            concept
                .iter()
                .enumerate()
                .all(|(i, c)| self.token_eq(tokens[start + i].normalized(), c))
        })
    }

    fn token_eq(&self, a: &str, b: &str) -> bool {
        if a == b {
            return true;
        }
        self.fold_plurals && fold_plural(a) == fold_plural(b)
    }
}

fn concept_tokens(concept: &str) -> Vec<String> {
    tokenize(concept)
        .iter()
        .map(|t| t.to_lowercase())
        .collect()
}

fn fold_plural(token: &str) -> &str {
    match token.strip_suffix('s') {
        Some(stem) if !stem.is_empty() => stem,
        _ => token,
    }
}

/// Sentence positions partitioned into both/any/none for a concept pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub both: Vec<usize>,
    pub any: Vec<usize>,
    pub none: Vec<usize>,
}

impl Partition {
    pub fn category_positions(&self, category: Category) -> &[usize] {
        match category {
            Category::Both => &self.both,
            Category::Any => &self.any,
            Category::None => &self.none,
        }
    }
}

/// Assign every sentence of the document to exactly one category.
pub fn categorize_sentences(doc: &Document, pair: &ConceptPair, fold_plurals: bool) -> Partition {
    let matcher = ConceptMatcher::new(pair, fold_plurals);
    let mut partition = Partition {
        both: Vec::new(),
        any: Vec::new(),
        none: Vec::new(),
    };
    for sentence in doc.sentences() {
        let bucket = match matcher.categorize(sentence) {
            Category::Both => &mut partition.both,
            Category::Any => &mut partition.any,
            Category::None => &mut partition.none,
        };
        bucket.push(sentence.position());
    }
    partition
}

/// Sentence count and mean normalized FI for one category.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategoryStats {
    pub category: Category,
    #[serde(rename = "sentences")]
    pub sentence_count: usize,
    /// Arithmetic mean of FI' over the category; absent when the category
    /// has no sentences.
    pub mean_fi_norm: Option<f64>,
}

/// Compute both/any/none statistics for a concept pair.
pub fn category_stats(
    doc: &Document,
    pair: &ConceptPair,
    formula: FormulaVariant,
    fold_plurals: bool,
) -> Result<[CategoryStats; 3]> {
    let scores = score_document(doc, formula)?;
    let partition = categorize_sentences(doc, pair, fold_plurals);

    let stats_for = |category: Category| {
        let positions = partition.category_positions(category);
        let mean = if positions.is_empty() {
            None
        } else {
            let sum: f64 = positions.iter().map(|&p| scores[p].fi_norm).sum();
            Some(sum / positions.len() as f64)
        };
        CategoryStats {
            category,
            sentence_count: positions.len(),
            mean_fi_norm: mean,
        }
    };

    Ok([
        stats_for(Category::Both),
        stats_for(Category::Any),
        stats_for(Category::None),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preprocess::Token;

    fn sentence(words: usize, complex: usize) -> Sentence {
        let mut tokens = Vec::new();
        for _ in 0..complex {
            tokens.push(Token::new("excessively"));
        }
        for _ in 0..words - complex {
            tokens.push(Token::new("cat"));
        }
        Sentence::new(0, tokens)
    }

    fn pair(a: &str, b: &str) -> ConceptPair {
        ConceptPair::new(a, b).unwrap()
    }

    #[test]
    fn fog_index_no_complex_words() {
        let s = sentence(6, 0);
        let fi = fog_index(&s, FormulaVariant::PaperLiteral).unwrap();
        assert!((fi - 2.4).abs() < 1e-9);
        let gunning = fog_index(&s, FormulaVariant::StandardGunning).unwrap();
        assert!((gunning - 2.4).abs() < 1e-9);
    }

    #[test]
    fn fog_index_variants_differ() {
        let s = sentence(10, 2);
        let literal = fog_index(&s, FormulaVariant::PaperLiteral).unwrap();
        assert!((literal - 24.0).abs() < 1e-9);
        let gunning = fog_index(&s, FormulaVariant::StandardGunning).unwrap();
        assert!((gunning - 12.0).abs() < 1e-9);
    }

    #[test]
    fn fog_index_zero_words() {
        let s = Sentence::new(0, Vec::new());
        assert!(matches!(
            fog_index(&s, FormulaVariant::PaperLiteral),
            Err(Error::ZeroWords)
        ));
    }

    #[test]
    fn normalize_examples() {
        let doc = Document::from_sentence_texts(&["The cat sat"]).unwrap();
        assert!((normalize_fi(2.4, &doc).unwrap() - 2.4).abs() < 1e-9);
        assert!((normalize_fi(0.0, &doc).unwrap()).abs() < 1e-9);

        let doubled = Document::from_sentence_texts(&["neurons neurons"]).unwrap();
        assert!((doubled.avg_syllables_per_word() - 2.0).abs() < 1e-9);
        assert!((normalize_fi(8.0, &doubled).unwrap() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn categorize_reference_sentence() {
        let matcher = ConceptMatcher::new(&pair("ischemia", "glutamate"), false);
        let both = Sentence::from_text(
            0,
            "Glutamate, which is potentially excito-toxic to brain neurons, is released excessively during ischemia.",
        );
        assert_eq!(matcher.categorize(&both), Category::Both);

        let none = Sentence::from_text(1, "The weather is fine.");
        assert_eq!(matcher.categorize(&none), Category::None);

        let any = Sentence::from_text(2, "Glutamate levels rose.");
        assert_eq!(matcher.categorize(&any), Category::Any);
    }

    #[test]
    fn multiword_concept_matches_contiguously() {
        // Canonical order puts "ataxia" first, the phrase second.
        let matcher = ConceptMatcher::new(&pair("pyruvate dehydrogenase", "ataxia"), false);
        let hit = Sentence::from_text(0, "The pyruvate dehydrogenase complex failed.");
        assert!(matcher.contains_second(&hit));
        let miss = Sentence::from_text(1, "The pyruvate and dehydrogenase results differ.");
        assert!(!matcher.contains_second(&miss));
    }

    #[test]
    fn plural_folding_is_opt_in() {
        let p = pair("neuron", "glutamate");
        let s = Sentence::from_text(0, "Neurons fired.");
        assert!(!ConceptMatcher::new(&p, false).contains_second(&s));
        assert!(ConceptMatcher::new(&p, true).contains_second(&s));
    }

    #[test]
    fn partition_covers_document() {
        let doc = Document::from_sentence_texts(&[
            "Glutamate and ischemia interact.",
            "Glutamate levels rose.",
            "The weather is fine.",
            "Ischemia persisted.",
        ])
        .unwrap();
        let partition = categorize_sentences(&doc, &pair("ischemia", "glutamate"), false);
        assert_eq!(partition.both, vec![0]);
        assert_eq!(partition.any, vec![1, 3]);
        assert_eq!(partition.none, vec![2]);
        assert_eq!(
            partition.both.len() + partition.any.len() + partition.none.len(),
            doc.len()
        );
    }

    #[test]
    fn category_stats_degenerate_partition() {
        let doc = Document::from_sentence_texts(&[
            "Ischemia raised glutamate.",
            "Ischemia lowered glutamate.",
        ])
        .unwrap();
        let stats = category_stats(
            &doc,
            &pair("ischemia", "glutamate"),
            FormulaVariant::PaperLiteral,
            false,
        )
        .unwrap();
        assert_eq!(stats[0].sentence_count, 2);
        assert_eq!(stats[1].sentence_count, 0);
        assert_eq!(stats[2].sentence_count, 0);
        assert!(stats[0].mean_fi_norm.is_some());
        assert!(stats[1].mean_fi_norm.is_none());
        assert!(stats[2].mean_fi_norm.is_none());
    }

    #[test]
    fn category_stats_arithmetic_mean() {
        // Two none-sentences with fi 2.0 and 4.0 at avg syllables 1.0.
        let doc = Document::from_sentence_texts(&[
            "cat sat mat dog ran",
            "cat sat mat dog ran sit mat cat sat mat",
        ])
        .unwrap();
        assert!((doc.avg_syllables_per_word() - 1.0).abs() < 1e-12);
        let stats = category_stats(
            &doc,
            &pair("ischemia", "glutamate"),
            FormulaVariant::PaperLiteral,
            false,
        )
        .unwrap();
        let none = &stats[2];
        assert_eq!(none.sentence_count, 2);
        assert!((none.mean_fi_norm.unwrap() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn fi_depends_only_on_counts() {
        let a = Sentence::from_text(0, "glutamate neurons fired rapidly");
        let b = Sentence::from_text(0, "rapidly fired neurons glutamate");
        assert_eq!(
            fog_index(&a, FormulaVariant::PaperLiteral).unwrap(),
            fog_index(&b, FormulaVariant::PaperLiteral).unwrap()
        );
    }
}
