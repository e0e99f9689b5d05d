//! External POS tagger integration over a line protocol.
//!
//! The adapter executable is started once per batch. It receives one
//! sentence per line on stdin, tokens joined by single spaces, and must
//! answer with exactly one line per input line on stdout. Each output line
//! holds token/TAG pairs separated by single spaces, with one tab between
//! token and TAG. Tokens tagged NN, NNS, NNP, or NNPS count as nouns.
//!
//! Any deviation — unspawnable command, nonzero exit, non-UTF-8 output, a
//! line-count mismatch, or a pair without a tab — aborts the pipeline with
//! [`Error::AdapterFailure`]; there is no silent fallback.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Stdio};
use std::thread;

use crate::error::{Error, Result};
use crate::preprocess::Sentence;

use super::NounExtractor;

const NOUN_TAGS: [&str; 4] = ["NN", "NNS", "NNP", "NNPS"];

/// Noun extractor backed by an external tagger process.
#[derive(Debug, Clone)]
pub struct TaggerAdapter {
    program: String,
    args: Vec<String>,
    display: String,
}

impl TaggerAdapter {
    /// Build an adapter from a command line; the first whitespace-separated
    /// word is the program, the rest are arguments.
    pub fn new(command_line: &str) -> Result<TaggerAdapter> {
        let mut parts = command_line.split_whitespace().map(str::to_string);
        let program = parts
            .next()
            .ok_or_else(|| Error::InvalidConfig("empty tagger command".to_string()))?;
        Ok(TaggerAdapter {
            program,
            args: parts.collect(),
            display: command_line.trim().to_string(),
        })
    }

    fn run(&self, input: String) -> Result<String> {
        let mut child = Command::new(&self.program)
            .args(&self.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .map_err(|e| Error::AdapterFailure(format!("cannot start '{}': {e}", self.display)))?;

        let mut stdin = child.stdin.take().expect("stdin was piped");
        // Writing on a separate thread avoids a pipe deadlock on large
        // batches; a broken pipe surfaces below as an exit-status or
        // line-count failure.
        let writer = thread::spawn(move || {
            let _ = stdin.write_all(input.as_bytes());
        });

        let output = child
            .wait_with_output()
            .map_err(|e| Error::AdapterFailure(format!("'{}' did not finish: {e}", self.display)))?;
        let _ = writer.join();

        if !output.status.success() {
            let stderr = String::from_utf8_lossy(&output.stderr);
            let detail = stderr.lines().next().unwrap_or_default();
            return Err(Error::AdapterFailure(format!(
                "'{}' exited with {}: {detail}",
                self.display, output.status
            )));
        }

        String::from_utf8(output.stdout).map_err(|_| {
            Error::AdapterFailure(format!("'{}' produced non-UTF-8 output", self.display))
        })
    }

    fn parse_line(&self, line: &str, sentence: &Sentence) -> Result<BTreeSet<String>> {
        let allowed: BTreeSet<&str> = sentence.tokens().iter().map(|t| t.normalized()).collect();
        let mut nouns = BTreeSet::new();
        for fragment in line.split(' ').filter(|f| !f.is_empty()) {
            let (token, tag) = fragment.split_once('\t').ok_or_else(|| {
                Error::AdapterFailure(format!(
                    "'{}' emitted a token without a tab-separated tag: '{fragment}'",
                    self.display
                ))
            })?;
            if NOUN_TAGS.contains(&tag) {
                let normalized = token.to_lowercase();
                // Tags may reference tokens the tagger re-tokenized; only
                // tokens of the sentence itself qualify as its nouns.
                if allowed.contains(normalized.as_str()) {
                    nouns.insert(normalized);
                }
            }
        }
        Ok(nouns)
    }
}

impl NounExtractor for TaggerAdapter {
    fn extract_batch(&self, sentences: &[&Sentence]) -> Result<Vec<BTreeSet<String>>> {
        if sentences.is_empty() {
            return Ok(Vec::new());
        }

        let mut input = String::new();
        for sentence in sentences {
            let mut first = true;
            for token in sentence.tokens() {
                if !first {
                    input.push(' ');
                }
                input.push_str(token.surface());
                first = false;
            }
            input.push('\n');
        }

        let stdout = self.run(input)?;
        let lines: Vec<&str> = stdout.lines().map(|l| l.trim_end_matches('\r')).collect();
        if lines.len() != sentences.len() {
            return Err(Error::AdapterFailure(format!(
                "'{}' answered {} lines for {} sentences",
                self.display,
                lines.len(),
                sentences.len()
            )));
        }

        lines
            .iter()
            .zip(sentences)
            .map(|(line, sentence)| self.parse_line(line, sentence))
            .collect()
    }

    fn describe(&self) -> String {
        format!("adapter:{}", self.display)
    }
}
