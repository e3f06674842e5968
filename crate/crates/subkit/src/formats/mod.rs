//! Parsers and emitters for the file formats the toolkit consumes and
//! produces: break-annotated corpora, SRT subtitle files, word-timing TSV
//! (plus a CTM import adapter), and per-sentence duration tables.
//!
//! All parsers report the first error with 1-based line numbers; lenient
//! mode accumulates warnings instead where the input can be repaired.

mod annotated;
mod srt;
mod timings;

pub use annotated::{emit_annotated_corpus, parse_annotated_corpus, parse_annotated_line};
pub use srt::{emit_srt, parse_srt, SrtFile};
pub use timings::{durations_from_timings, parse_ctm, parse_durations, parse_word_timings};

use thiserror::Error;

use crate::core::AnnotatedSentence;

#[derive(Debug, Error, PartialEq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("block {index}: {message}")]
    Block { index: u32, message: String },
    #[error("{0}")]
    Structure(String),
}

impl FormatError {
    pub(crate) fn line(line: usize, message: impl Into<String>) -> Self {
        FormatError::Line {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn block(index: u32, message: impl Into<String>) -> Self {
        FormatError::Block {
            index,
            message: message.into(),
        }
    }
}

/// A break-annotated corpus: one sentence per input line.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusFile {
    pub sentences: Vec<AnnotatedSentence>,
    /// Lenient-mode repairs, one entry per repaired defect.
    pub warnings: Vec<String>,
}

impl CorpusFile {
    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    /// Apply a normalization pass to every sentence.
    pub fn map_sentences(&self, f: impl Fn(&AnnotatedSentence) -> AnnotatedSentence) -> CorpusFile {
        CorpusFile {
            sentences: self.sentences.iter().map(f).collect(),
            warnings: self.warnings.clone(),
        }
    }
}
