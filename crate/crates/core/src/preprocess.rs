//! Text preprocessing: boilerplate stripping, sentence segmentation,
//! tokenization, and syllable counting.
//!
//! The output of this module is a [`Document`]: an ordered list of tokenized
//! sentences together with the document-level syllable statistics that the
//! readability scoring needs.

use crate::error::{Error, Result};

/// Which boilerplate regions to remove before segmentation.
///
/// Everything defaults to off: input is presumed pre-cleaned body text, and
/// stripping is a convenience for raw paper dumps.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StripConfig {
    /// Truncate the text at a line reading "References", "Acknowledgements",
    /// or "Bibliography" (case-insensitive).
    pub references: bool,
    /// Drop leading lines up to (but not including) the first line that ends
    /// with a sentence terminator; removes titles and affiliation blocks.
    pub front_matter: bool,
}

const SECTION_HEADINGS: [&str; 3] = ["references", "acknowledgements", "bibliography"];

/// Remove configured boilerplate regions. With all strippers disabled the
/// input is returned unchanged, byte for byte.
pub fn strip_boilerplate(text: &str, config: &StripConfig) -> String {
    let mut slice = text;

    if config.front_matter {
        let mut offset = 0;
        for line in slice.split_inclusive('\n') {
            let trimmed = line.trim_end();
            if trimmed.ends_with(['.', '!', '?']) {
                break;
            }
            offset += line.len();
        }
        if offset < slice.len() {
            slice = &slice[offset..];
        }
    }

    if config.references {
        let mut offset = 0;
        for line in slice.split_inclusive('\n') {
            let trimmed = line.trim();
            if SECTION_HEADINGS
                .iter()
                .any(|h| trimmed.eq_ignore_ascii_case(h))
            {
                slice = &slice[..offset];
                break;
            }
            offset += line.len();
        }
    }

    slice.to_string()
}

/// Abbreviations that suppress a sentence split after their trailing period.
pub const DEFAULT_ABBREVIATIONS: [&str; 16] = [
    "e.g.", "i.e.", "et al.", "cf.", "vs.", "Fig.", "Figs.", "Eq.", "Eqs.", "Tab.", "Ref.",
    "No.", "Dr.", "Mr.", "Mrs.", "Ms.",
];

/// Rule-based sentence segmenter with a configurable abbreviation list.
#[derive(Debug, Clone)]
pub struct Segmenter {
    abbreviations: Vec<String>,
}

impl Default for Segmenter {
    fn default() -> Self {
        Segmenter {
            abbreviations: DEFAULT_ABBREVIATIONS.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl Segmenter {
    /// Segmenter with a custom abbreviation list replacing the default one.
    pub fn with_abbreviations<I, S>(abbreviations: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Segmenter {
            abbreviations: abbreviations.into_iter().map(Into::into).collect(),
        }
    }

    /// Split text into sentences.
    ///
    /// A split happens after `.`, `!`, or `?` followed by whitespace and an
    /// uppercase letter or digit, unless the terminator closes a protected
    /// abbreviation. Sentences are trimmed; empty ones are dropped.
    pub fn segment(&self, text: &str) -> Vec<String> {
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut sentences = Vec::new();
        let mut start = 0;

        for (i, &(byte_pos, c)) in chars.iter().enumerate() {
            if !matches!(c, '.' | '!' | '?') {
                continue;
            }
            let mut j = i + 1;
            if j >= chars.len() || !chars[j].1.is_whitespace() {
                continue;
            }
            while j < chars.len() && chars[j].1.is_whitespace() {
                j += 1;
            }
            if j >= chars.len() {
                continue;
            }
            let next = chars[j].1;
            if !(next.is_uppercase() || next.is_ascii_digit()) {
                continue;
            }
            let end = byte_pos + c.len_utf8();
            if c == '.' && self.ends_with_abbreviation(&text[..end]) {
                continue;
            }
            let sentence = text[start..end].trim();
            if !sentence.is_empty() {
                sentences.push(sentence.to_string());
            }
            start = end;
        }

        let tail = text[start..].trim();
        if !tail.is_empty() {
            sentences.push(tail.to_string());
        }
        sentences
    }

    fn ends_with_abbreviation(&self, prefix: &str) -> bool {
        self.abbreviations.iter().any(|abbr| {
            prefix.ends_with(abbr.as_str()) && {
                let before = prefix.len() - abbr.len();
                prefix[..before]
                    .chars()
                    .next_back()
                    .is_none_or(|c| !c.is_alphanumeric())
            }
        })
    }
}

/// Split text into sentences using the default abbreviation list.
pub fn segment_sentences(text: &str) -> Vec<String> {
    Segmenter::default().segment(text)
}

/// Split a sentence into word surfaces: maximal alphanumeric runs with
/// internal hyphens and apostrophes kept inside a token. All other
/// punctuation separates.
pub fn tokenize(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut current = String::new();

    for (i, &c) in chars.iter().enumerate() {
        let joins_token = matches!(c, '-' | '\'' | '\u{2019}')
            && !current.is_empty()
            && chars.get(i + 1).is_some_and(|n| n.is_alphanumeric());
        if c.is_alphanumeric() || joins_token {
            current.push(c);
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

const VOWELS: [char; 6] = ['a', 'e', 'i', 'o', 'u', 'y'];

/// Count syllables with the vowel-group heuristic: contiguous runs of
/// a/e/i/o/u/y over the word's alphabetic characters, minus one for a
/// trailing silent "e" (kept when the word ends in consonant + "le"),
/// floored at one. Tokens with no alphabetic characters count as one.
pub fn count_syllables(word: &str) -> usize {
    let letters: Vec<char> = word
        .chars()
        .filter(|c| c.is_alphabetic())
        .flat_map(char::to_lowercase)
        .collect();

    let mut groups = 0;
    let mut in_group = false;
    for &c in &letters {
        let is_vowel = VOWELS.contains(&c);
        if is_vowel && !in_group {
            groups += 1;
        }
        in_group = is_vowel;
    }

    if letters.last() == Some(&'e') && groups > 0 {
        let silent = !(letters.len() >= 3
            && letters[letters.len() - 2] == 'l'
            && !VOWELS.contains(&letters[letters.len() - 3]));
        if silent {
            groups -= 1;
        }
    }

    groups.max(1)
}

/// A word with its normalized form and syllable statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    surface: String,
    normalized: String,
    syllables: usize,
    is_complex: bool,
}

impl Token {
    pub fn new(surface: impl Into<String>) -> Token {
        let surface = surface.into();
        let normalized = surface.to_lowercase();
        let syllables = count_syllables(&surface);
        Token {
            surface,
            normalized,
            syllables,
            is_complex: syllables >= 3,
        }
    }

    /// Original form as it appeared in the text.
    pub fn surface(&self) -> &str {
        &self.surface
    }

    /// Case-folded surface with no other mutation.
    pub fn normalized(&self) -> &str {
        &self.normalized
    }

    pub fn syllables(&self) -> usize {
        self.syllables
    }

    /// True iff the token has three or more syllables.
    pub fn is_complex(&self) -> bool {
        self.is_complex
    }
}

/// A tokenized sentence with its 0-based document position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    position: usize,
    tokens: Vec<Token>,
}

impl Sentence {
    pub fn new(position: usize, tokens: Vec<Token>) -> Sentence {
        Sentence { position, tokens }
    }

    /// Tokenize `text` into a sentence at `position`.
    pub fn from_text(position: usize, text: &str) -> Sentence {
        let tokens = tokenize(text).into_iter().map(Token::new).collect();
        Sentence::new(position, tokens)
    }

    pub fn position(&self) -> usize {
        self.position
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn word_count(&self) -> usize {
        self.tokens.len()
    }

    pub fn complex_count(&self) -> usize {
        self.tokens.iter().filter(|t| t.is_complex()).count()
    }

    pub fn syllable_count(&self) -> usize {
        self.tokens.iter().map(Token::syllables).sum()
    }

    pub(crate) fn set_position(&mut self, position: usize) {
        self.position = position;
    }
}

/// An immutable, fully tokenized document.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    sentences: Vec<Sentence>,
    total_words: usize,
    total_syllables: usize,
    avg_syllables_per_word: f64,
}

impl Document {
    /// Build a document from sentences, dropping empty ones and reassigning
    /// positions to consecutive 0-based indices.
    pub fn new(sentences: Vec<Sentence>) -> Result<Document> {
        let mut kept: Vec<Sentence> = sentences
            .into_iter()
            .filter(|s| s.word_count() > 0)
            .collect();
        for (i, sentence) in kept.iter_mut().enumerate() {
            sentence.set_position(i);
        }

        let total_words: usize = kept.iter().map(Sentence::word_count).sum();
        if total_words == 0 {
            return Err(Error::EmptyDocument);
        }
        let total_syllables: usize = kept.iter().map(Sentence::syllable_count).sum();

        Ok(Document {
            sentences: kept,
            total_words,
            total_syllables,
            avg_syllables_per_word: total_syllables as f64 / total_words as f64,
        })
    }

    /// Build a document from one string per sentence, skipping segmentation.
    pub fn from_sentence_texts<S: AsRef<str>>(texts: &[S]) -> Result<Document> {
        Document::new(
            texts
                .iter()
                .enumerate()
                .map(|(i, t)| Sentence::from_text(i, t.as_ref()))
                .collect(),
        )
    }

    pub fn sentences(&self) -> &[Sentence] {
        &self.sentences
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn total_words(&self) -> usize {
        self.total_words
    }

    pub fn total_syllables(&self) -> usize {
        self.total_syllables
    }

    /// Total syllables divided by total words, over the whole document.
    pub fn avg_syllables_per_word(&self) -> f64 {
        self.avg_syllables_per_word
    }
}

/// Segment, tokenize, and annotate raw text into a [`Document`].
pub fn build_document(text: &str) -> Result<Document> {
    let sentences = segment_sentences(text)
        .iter()
        .enumerate()
        .map(|(i, s)| Sentence::from_text(i, s))
        .collect();
    Document::new(sentences)
}
