//! End-to-end orchestration: strip, segment, score, rank, select, extract
//! nouns, build the association matrix, and re-rank into representative
//! connected concepts, over single documents or whole corpora.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::concepts::{
    build_matrix, top_pairs, AssociationMatrix, ConceptPair, HeuristicExtractor, NounExtractor,
    RankedPairs, TaggerAdapter,
};
use crate::error::{Error, Result};
use crate::evaluation::{representative_pairs, GoldRelations};
use crate::preprocess::{build_document, strip_boilerplate, Sentence, StripConfig};
use crate::readability::{category_stats, score_document, FormulaVariant};
use crate::report::{
    ConfigEcho, CorpusReport, CorpusSummary, DocumentReport, DocumentStats, FailureRow,
    RepresentativeRow, ScoreRow, SelectionStats, SummaryCategoryStats, TopPairRow,
};
use crate::selection::{chunk_evolution, rank_sentences, select_chunk, EvolutionReport};

/// Which noun extractor the pipeline runs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum ExtractorChoice {
    #[default]
    Heuristic,
    /// Command line of an external tagger speaking the adapter protocol.
    Adapter(String),
}

/// Full pipeline configuration. Defaults: a 0.30 chunk, 20 frequent
/// pairs, 10 representative pairs, and the literal formula variant.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    /// Concept pair for categorization and evaluation; required by
    /// `run_document` and `run_corpus`.
    pub pair: Option<ConceptPair>,
    pub chunk_fraction: f64,
    pub top_k_pairs: usize,
    pub top_n_representative: usize,
    pub formula: FormulaVariant,
    pub extractor: ExtractorChoice,
    pub strip: StripConfig,
    pub fold_plurals: bool,
    pub evolution_fractions: Vec<f64>,
    pub gold_path: Option<PathBuf>,
    pub stopwords_path: Option<PathBuf>,
    pub whitelist_path: Option<PathBuf>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            pair: None,
            chunk_fraction: 0.30,
            top_k_pairs: 20,
            top_n_representative: 10,
            formula: FormulaVariant::default(),
            extractor: ExtractorChoice::default(),
            strip: StripConfig::default(),
            fold_plurals: false,
            evolution_fractions: vec![0.5, 0.4, 0.3, 0.2, 0.1],
            gold_path: None,
            stopwords_path: None,
            whitelist_path: None,
        }
    }
}

impl PipelineConfig {
    /// Default configuration for one concept pair.
    pub fn for_pair(a: impl AsRef<str>, b: impl AsRef<str>) -> Result<PipelineConfig> {
        Ok(PipelineConfig {
            pair: Some(ConceptPair::new(a, b)?),
            ..PipelineConfig::default()
        })
    }

    pub fn validate(&self) -> Result<()> {
        if !self.chunk_fraction.is_finite()
            || self.chunk_fraction <= 0.0
            || self.chunk_fraction > 1.0
        {
            return Err(Error::InvalidFraction(self.chunk_fraction));
        }
        if self.top_k_pairs == 0 {
            return Err(Error::InvalidConfig("top_k_pairs must be at least 1".to_string()));
        }
        if self.top_n_representative == 0 || self.top_n_representative > self.top_k_pairs {
            return Err(Error::InvalidConfig(format!(
                "top_n_representative must lie in 1..=top_k_pairs ({})",
                self.top_k_pairs
            )));
        }
        Ok(())
    }

    fn build_extractor(&self) -> Result<Box<dyn NounExtractor + Send + Sync>> {
        Ok(match &self.extractor {
            ExtractorChoice::Heuristic => Box::new(HeuristicExtractor::with_word_files(
                self.stopwords_path.as_deref(),
                self.whitelist_path.as_deref(),
            )?),
            ExtractorChoice::Adapter(command) => Box::new(TaggerAdapter::new(command)?),
        })
    }

    fn load_gold(&self) -> Result<Option<GoldRelations>> {
        self.gold_path
            .as_deref()
            .map(GoldRelations::load)
            .transpose()
    }

    fn echo(&self, extractor: &dyn NounExtractor) -> ConfigEcho {
        ConfigEcho {
            pair: self.pair.clone(),
            chunk_fraction: self.chunk_fraction,
            top_k_pairs: self.top_k_pairs,
            top_n_representative: self.top_n_representative,
            formula: self.formula,
            extractor: extractor.describe(),
            fold_plurals: self.fold_plurals,
            strip_references: self.strip.references,
            strip_front_matter: self.strip.front_matter,
            evolution_fractions: self.evolution_fractions.clone(),
            gold_relations: self.gold_path.as_ref().map(|p| p.display().to_string()),
            stopwords_file: self.stopwords_path.as_ref().map(|p| p.display().to_string()),
            whitelist_file: self.whitelist_path.as_ref().map(|p| p.display().to_string()),
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::ReadInput {
        path: path.to_path_buf(),
        source,
    })
}

fn file_label(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Run the full two-filter pipeline on one file.
pub fn run_document(path: &Path, config: &PipelineConfig) -> Result<DocumentReport> {
    config.validate()?;
    let extractor = config.build_extractor()?;
    let gold = config.load_gold()?;
    run_document_inner(path, config, extractor.as_ref(), gold.as_ref())
}

fn run_document_inner(
    path: &Path,
    config: &PipelineConfig,
    extractor: &dyn NounExtractor,
    gold: Option<&GoldRelations>,
) -> Result<DocumentReport> {
    let pair = config
        .pair
        .clone()
        .ok_or_else(|| Error::InvalidConfig("a concept pair is required".to_string()))?;

    let raw = read_input(path)?;
    let text = strip_boilerplate(&raw, &config.strip);
    let doc = build_document(&text)?;

    let categories = category_stats(&doc, &pair, config.formula, config.fold_plurals)?;
    let ranked = rank_sentences(&doc, config.formula)?;
    let selected = select_chunk(&ranked, config.chunk_fraction)?;

    let selected_sentences: Vec<&Sentence> = doc
        .sentences()
        .iter()
        .filter(|s| selected.contains(&s.position()))
        .collect();
    let matrix = build_matrix(&selected_sentences, extractor)?;
    let candidates = top_pairs(&matrix, config.top_k_pairs);
    let representative = representative_pairs(
        &doc,
        &selected,
        &candidates,
        config.top_n_representative,
        config.fold_plurals,
    )?;

    let annotate = |pair: &ConceptPair| gold.map(|g| g.contains(pair));
    let top_rows: Vec<TopPairRow> = candidates
        .entries()
        .iter()
        .map(|e| TopPairRow {
            rank: e.rank,
            pair: e.pair.clone(),
            frequency: e.frequency,
            gold: annotate(&e.pair),
        })
        .collect();
    let representative_rows: Vec<RepresentativeRow> = representative
        .entries()
        .iter()
        .map(|entry| {
            let eval = &entry.evaluation;
            RepresentativeRow {
                rank: entry.rank,
                pair: eval.pair.clone(),
                r: eval.counts.returned,
                s: eval.counts.relevant,
                tp: eval.counts.true_positives,
                fp: eval.counts.false_positives,
                fn_: eval.counts.false_negatives,
                tn: eval.counts.true_negatives,
                ppv: eval.ppv,
                sensitivity: eval.sensitivity,
                harmonic_mean: eval.harmonic_mean,
                harmonic_mean_pct: eval.harmonic_mean * 100.0,
                accuracy: eval.accuracy,
                gold: annotate(&eval.pair),
            }
        })
        .collect();

    Ok(DocumentReport {
        file: file_label(path),
        config: config.echo(extractor),
        document: DocumentStats {
            sentences: doc.len(),
            words: doc.total_words(),
            avg_syllables_per_word: doc.avg_syllables_per_word(),
        },
        categories: categories.to_vec(),
        selection: SelectionStats {
            chunk_fraction: config.chunk_fraction,
            selected_count: selected.len(),
            selected_positions: selected.iter().copied().collect(),
        },
        top_pairs: top_rows,
        representative: representative_rows,
    })
}

/// Run the pipeline over every file of a directory, in lexicographic
/// filename order. Documents are processed in parallel; output order does
/// not depend on completion order. Fails only if every file fails.
pub fn run_corpus(dir: &Path, config: &PipelineConfig) -> Result<CorpusReport> {
    config.validate()?;
    let extractor = config.build_extractor()?;
    let gold = config.load_gold()?;

    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|source| Error::ReadInput {
            path: dir.to_path_buf(),
            source,
        })?
        .filter_map(|entry| entry.ok())
        .map(|entry| entry.path())
        .filter(|path| path.is_file())
        .collect();
    files.sort_by_key(|path| path.file_name().map(|n| n.to_os_string()));
    if files.is_empty() {
        return Err(Error::EmptyCorpus(dir.to_path_buf()));
    }

    let outcomes: Vec<(PathBuf, Result<DocumentReport>)> = files
        .par_iter()
        .map(|path| {
            (
                path.clone(),
                run_document_inner(path, config, extractor.as_ref(), gold.as_ref()),
            )
        })
        .collect();

    let mut documents = Vec::new();
    let mut failures = Vec::new();
    let mut errors = Vec::new();
    for (path, outcome) in outcomes {
        match outcome {
            Ok(report) => documents.push(report),
            Err(error) => {
                failures.push(FailureRow {
                    file: file_label(&path),
                    error: error.to_string(),
                });
                errors.push((path, error));
            }
        }
    }
    if documents.is_empty() {
        return Err(Error::CorpusFailed(errors));
    }

    let summary = summarize(&documents, failures.len());
    Ok(CorpusReport {
        config: config.echo(extractor.as_ref()),
        documents,
        failures,
        summary,
    })
}

fn summarize(documents: &[DocumentReport], failed: usize) -> CorpusSummary {
    use crate::readability::Category;

    let categories = [Category::Both, Category::Any, Category::None]
        .into_iter()
        .map(|category| {
            let mut sentences = 0;
            let mut pooled_sum = 0.0;
            let mut doc_means = Vec::new();
            for document in documents {
                let stats = document
                    .categories
                    .iter()
                    .find(|s| s.category == category)
                    .expect("every report carries all three categories");
                sentences += stats.sentence_count;
                if let Some(mean) = stats.mean_fi_norm {
                    pooled_sum += mean * stats.sentence_count as f64;
                    doc_means.push(mean);
                }
            }
            SummaryCategoryStats {
                category,
                sentences,
                documents: doc_means.len(),
                pooled_mean_fi_norm: (sentences > 0).then(|| pooled_sum / sentences as f64),
                mean_of_means_fi_norm: (!doc_means.is_empty())
                    .then(|| doc_means.iter().sum::<f64>() / doc_means.len() as f64),
            }
        })
        .collect();

    let mut union: BTreeMap<ConceptPair, u64> = BTreeMap::new();
    for document in documents {
        for row in &document.top_pairs {
            *union.entry(row.pair.clone()).or_insert(0) += row.frequency;
        }
    }
    let total = union.len();
    let ranked = rank_union(union, total);

    CorpusSummary {
        documents_processed: documents.len(),
        documents_failed: failed,
        categories,
        pair_frequency_union: ranked
            .entries()
            .iter()
            .map(|e| TopPairRow {
                rank: e.rank,
                pair: e.pair.clone(),
                frequency: e.frequency,
                gold: None,
            })
            .collect(),
    }
}

fn rank_union(counts: BTreeMap<ConceptPair, u64>, k: usize) -> RankedPairs {
    top_pairs(&AssociationMatrix::from_counts(counts), k)
}

/// Run the chunk-evolution analysis on one file.
///
/// Only the fields evolution uses are validated; the representative-set
/// size plays no role here.
pub fn run_evolution(path: &Path, config: &PipelineConfig) -> Result<EvolutionReport> {
    if config.top_k_pairs == 0 {
        return Err(Error::InvalidConfig("top_k_pairs must be at least 1".to_string()));
    }
    let extractor = config.build_extractor()?;
    let raw = read_input(path)?;
    let text = strip_boilerplate(&raw, &config.strip);
    let doc = build_document(&text)?;
    chunk_evolution(
        &doc,
        &config.evolution_fractions,
        config.top_k_pairs,
        extractor.as_ref(),
    )
}

/// Per-sentence FI/FI' dump for one file.
pub fn score_file(path: &Path, config: &PipelineConfig) -> Result<Vec<ScoreRow>> {
    let raw = read_input(path)?;
    let text = strip_boilerplate(&raw, &config.strip);
    let doc = build_document(&text)?;
    let scores = score_document(&doc, config.formula)?;
    Ok(doc
        .sentences()
        .iter()
        .zip(scores)
        .map(|(sentence, score)| ScoreRow {
            position: sentence.position(),
            words: sentence.word_count(),
            complex_words: sentence.complex_count(),
            fi: score.fi,
            fi_norm: score.fi_norm,
        })
        .collect())
}
