//! Report data model and deterministic rendering.
//!
//! JSON output is byte-stable: struct fields serialize in a fixed order,
//! collections are sorted, and every real is written with exactly four
//! decimal places. TSV output renders the frequency and harmonic-mean
//! tables for eyeballing.

use std::fmt::Write as _;
use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter, Serializer};

use crate::concepts::ConceptPair;
use crate::readability::{CategoryStats, FormulaVariant};

/// JSON formatter that renders every real with four decimal places.
struct Fixed4Formatter<'a> {
    pretty: PrettyFormatter<'a>,
}

impl Fixed4Formatter<'_> {
    fn new() -> Self {
        Fixed4Formatter {
            pretty: PrettyFormatter::new(),
        }
    }
}

impl Formatter for Fixed4Formatter<'_> {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.4}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.4}")
    }

    fn begin_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.pretty.begin_array(writer)
    }

    fn end_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.pretty.end_array(writer)
    }

    fn begin_array_value<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.pretty.begin_array_value(writer, first)
    }

    fn end_array_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.pretty.end_array_value(writer)
    }

    fn begin_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.pretty.begin_object(writer)
    }

    fn end_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.pretty.end_object(writer)
    }

    fn begin_object_key<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.pretty.begin_object_key(writer, first)
    }

    fn begin_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.pretty.begin_object_value(writer)
    }

    fn end_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.pretty.end_object_value(writer)
    }
}

/// Serialize a report value to deterministic, pretty-printed JSON.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut serializer = Serializer::with_formatter(&mut buf, Fixed4Formatter::new());
    value
        .serialize(&mut serializer)
        .expect("report serialization is infallible");
    String::from_utf8(buf).expect("JSON output is UTF-8")
}

/// The effective configuration, echoed into every report so that each
/// number is reproducible from the report plus the input file.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<ConceptPair>,
    pub chunk_fraction: f64,
    pub top_k_pairs: usize,
    pub top_n_representative: usize,
    pub formula: FormulaVariant,
    pub extractor: String,
    pub fold_plurals: bool,
    pub strip_references: bool,
    pub strip_front_matter: bool,
    pub evolution_fractions: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gold_relations: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stopwords_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub whitelist_file: Option<String>,
}

/// Whole-document statistics.
#[derive(Debug, Clone, Serialize)]
pub struct DocumentStats {
    pub sentences: usize,
    pub words: usize,
    pub avg_syllables_per_word: f64,
}

/// Which sentences the readability filter selected.
#[derive(Debug, Clone, Serialize)]
pub struct SelectionStats {
    pub chunk_fraction: f64,
    pub selected_count: usize,
    pub selected_positions: Vec<usize>,
}

/// One row of the frequency-ranked pair table.
#[derive(Debug, Clone, Serialize)]
pub struct TopPairRow {
    pub rank: usize,
    pub pair: ConceptPair,
    pub frequency: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gold: Option<bool>,
}

/// One row of the harmonic-mean re-ranked table, with the full confusion
/// bookkeeping behind the scores.
#[derive(Debug, Clone, Serialize)]
pub struct RepresentativeRow {
    pub rank: usize,
    pub pair: ConceptPair,
    pub r: usize,
    pub s: usize,
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub tn: usize,
    pub ppv: f64,
    pub sensitivity: f64,
    pub harmonic_mean: f64,
    pub harmonic_mean_pct: f64,
    pub accuracy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gold: Option<bool>,
}

/// Full single-document report.
#[derive(Debug, Clone, Serialize)]
pub struct DocumentReport {
    pub file: String,
    pub config: ConfigEcho,
    pub document: DocumentStats,
    pub categories: Vec<CategoryStats>,
    pub selection: SelectionStats,
    pub top_pairs: Vec<TopPairRow>,
    pub representative: Vec<RepresentativeRow>,
}

/// A file that failed during a corpus run.
#[derive(Debug, Clone, Serialize)]
pub struct FailureRow {
    pub file: String,
    pub error: String,
}

/// Per-category aggregate over a corpus, reported two ways: pooled over all
/// sentences, and as a mean of per-document means.
#[derive(Debug, Clone, Serialize)]
pub struct SummaryCategoryStats {
    pub category: crate::readability::Category,
    pub sentences: usize,
    pub documents: usize,
    pub pooled_mean_fi_norm: Option<f64>,
    pub mean_of_means_fi_norm: Option<f64>,
}

/// Corpus-level aggregates.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusSummary {
    pub documents_processed: usize,
    pub documents_failed: usize,
    pub categories: Vec<SummaryCategoryStats>,
    /// Union of every document's top-k pairs with summed frequencies.
    pub pair_frequency_union: Vec<TopPairRow>,
}

/// Full corpus report: per-document reports in filename order, collected
/// failures, and the summary.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub config: ConfigEcho,
    pub documents: Vec<DocumentReport>,
    pub failures: Vec<FailureRow>,
    pub summary: CorpusSummary,
}

/// Per-sentence score row for the debugging dump.
#[derive(Debug, Clone, Serialize)]
pub struct ScoreRow {
    pub position: usize,
    pub words: usize,
    pub complex_words: usize,
    pub fi: f64,
    pub fi_norm: f64,
}

impl DocumentReport {
    pub fn to_json(&self) -> String {
        to_json(self)
    }

    /// TSV rendering: a frequency table and a harmonic-mean table.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let gold = self.top_pairs.iter().any(|r| r.gold.is_some());

        out.push_str("# top pairs by frequency\n");
        out.push_str(if gold {
            "rank\tpair\tfrequency\tgold\n"
        } else {
            "rank\tpair\tfrequency\n"
        });
        for row in &self.top_pairs {
            let _ = write!(out, "{}\t{}\t{}", row.rank, row.pair.hyphenated(), row.frequency);
            if gold {
                let _ = write!(out, "\t{}", gold_flag(row.gold));
            }
            out.push('\n');
        }

        out.push_str("\n# representative pairs by harmonic mean\n");
        out.push_str(if gold {
            "rank\tpair\tharmonic_mean\tgold\n"
        } else {
            "rank\tpair\tharmonic_mean\n"
        });
        for row in &self.representative {
            let _ = write!(
                out,
                "{}\t{}\t{:.4}",
                row.rank,
                row.pair.hyphenated(),
                row.harmonic_mean_pct
            );
            if gold {
                let _ = write!(out, "\t{}", gold_flag(row.gold));
            }
            out.push('\n');
        }
        out
    }
}

impl CorpusReport {
    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (i, document) in self.documents.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "## {}", document.file);
            out.push_str(&document.to_tsv());
        }
        if !self.summary.pair_frequency_union.is_empty() {
            out.push_str("\n## corpus pair frequency union\n");
            out.push_str("rank\tpair\tfrequency\n");
            for row in &self.summary.pair_frequency_union {
                let _ = writeln!(out, "{}\t{}\t{}", row.rank, row.pair.hyphenated(), row.frequency);
            }
        }
        out
    }
}

/// TSV rendering of the per-sentence score dump.
pub fn score_rows_tsv(rows: &[ScoreRow]) -> String {
    let mut out = String::from("position\twords\tcomplex_words\tfi\tfi_norm\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{:.4}\t{:.4}",
            row.position, row.words, row.complex_words, row.fi, row.fi_norm
        );
    }
    out
}

fn gold_flag(gold: Option<bool>) -> &'static str {
    match gold {
        Some(true) => "yes",
        Some(false) => "no",
        None => "",
    }
}
