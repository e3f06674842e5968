//! Domain types shared by every other module: break-annotated sentences,
//! subtitle blocks, word timings, and the subtitling constraints.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Surface form of a line break inside a subtitle block.
pub const EOL: &str = "<eol>";
/// Surface form of a subtitle block break.
pub const EOB: &str = "<eob>";

#[derive(Debug, Error, PartialEq)]
pub enum CoreError {
    #[error("sentence contains no tokens")]
    EmptySentence,
    #[error("sentence begins with break")]
    LeadingBreak,
    #[error("consecutive break symbols at item {0}")]
    ConsecutiveBreaks(usize),
    #[error("invalid token {0:?}: {1}")]
    InvalidToken(String, &'static str),
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("block {0} has an empty line")]
    EmptyLine(usize),
}

/// The two break markers a corpus line may carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BreakSymbol {
    /// `<eol>`: the next line appears on the same screen.
    LineBreak,
    /// `<eob>`: the next subtitle comes on a different screen.
    BlockBreak,
}

impl BreakSymbol {
    pub fn as_str(self) -> &'static str {
        match self {
            BreakSymbol::LineBreak => EOL,
            BreakSymbol::BlockBreak => EOB,
        }
    }

    /// Recognize a standalone token as a break symbol.
    pub fn from_token(token: &str) -> Option<BreakSymbol> {
        match token {
            EOL => Some(BreakSymbol::LineBreak),
            EOB => Some(BreakSymbol::BlockBreak),
            _ => None,
        }
    }
}

impl fmt::Display for BreakSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One element of an annotated sentence: a word or a break marker.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Item {
    Token(String),
    Break(BreakSymbol),
}

impl Item {
    /// The surface string: the token text, or `<eol>`/`<eob>` for breaks.
    pub fn surface(&self) -> &str {
        match self {
            Item::Token(t) => t,
            Item::Break(b) => b.as_str(),
        }
    }
}

/// A token sequence interleaved with break symbols; one corpus line.
///
/// Invariants, enforced at construction: at least one token, no leading
/// break, no two consecutive breaks, tokens are non-empty, contain no
/// whitespace, and never equal a break surface form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedSentence {
    items: Vec<Item>,
}

impl AnnotatedSentence {
    pub fn new(items: Vec<Item>) -> Result<Self, CoreError> {
        if !items.iter().any(|i| matches!(i, Item::Token(_))) {
            return Err(CoreError::EmptySentence);
        }
        if matches!(items.first(), Some(Item::Break(_))) {
            return Err(CoreError::LeadingBreak);
        }
        for (idx, pair) in items.windows(2).enumerate() {
            if matches!(pair, [Item::Break(_), Item::Break(_)]) {
                return Err(CoreError::ConsecutiveBreaks(idx + 1));
            }
        }
        for item in &items {
            if let Item::Token(t) = item {
                validate_token(t)?;
            }
        }
        Ok(Self { items })
    }

    /// Build from whitespace-split tokens, treating `<eol>`/`<eob>` as breaks.
    pub fn from_tokens<I, S>(tokens: I) -> Result<Self, CoreError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let items = tokens
            .into_iter()
            .map(|t| match BreakSymbol::from_token(t.as_ref()) {
                Some(b) => Item::Break(b),
                None => Item::Token(t.as_ref().to_string()),
            })
            .collect();
        Self::new(items)
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    /// Tokens only, in order, breaks skipped.
    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.items.iter().filter_map(|i| match i {
            Item::Token(t) => Some(t.as_str()),
            Item::Break(_) => None,
        })
    }

    pub fn token_count(&self) -> usize {
        self.tokens().count()
    }

    pub fn breaks(&self) -> impl Iterator<Item = BreakSymbol> + '_ {
        self.items.iter().filter_map(|i| match i {
            Item::Break(b) => Some(*b),
            Item::Token(_) => None,
        })
    }

    pub fn break_count(&self) -> usize {
        self.breaks().count()
    }

    /// Every item's surface form, in order. With `with_breaks` false the
    /// break symbols are removed first.
    pub fn surface_tokens(&self, with_breaks: bool) -> Vec<&str> {
        if with_breaks {
            self.items.iter().map(Item::surface).collect()
        } else {
            self.tokens().collect()
        }
    }

    /// The break (if any) that immediately follows the i-th token.
    pub fn break_after_token(&self, token_index: usize) -> Option<BreakSymbol> {
        let mut seen = 0usize;
        for (pos, item) in self.items.iter().enumerate() {
            if let Item::Token(_) = item {
                if seen == token_index {
                    return match self.items.get(pos + 1) {
                        Some(Item::Break(b)) => Some(*b),
                        _ => None,
                    };
                }
                seen += 1;
            }
        }
        None
    }

    /// Copy with a trailing `<eob>` ensured (the `normalize` convention).
    pub fn with_trailing_block_break(&self) -> AnnotatedSentence {
        let mut items = self.items.clone();
        match items.last() {
            Some(Item::Break(BreakSymbol::BlockBreak)) => {}
            Some(Item::Break(BreakSymbol::LineBreak)) => {
                *items.last_mut().unwrap() = Item::Break(BreakSymbol::BlockBreak);
            }
            _ => items.push(Item::Break(BreakSymbol::BlockBreak)),
        }
        Self { items }
    }

    /// Copy with one sentence-final `<eob>` removed, if present.
    pub fn without_final_block_break(&self) -> AnnotatedSentence {
        let mut items = self.items.clone();
        if matches!(items.last(), Some(Item::Break(BreakSymbol::BlockBreak))) {
            items.pop();
        }
        Self { items }
    }

    /// Plain text: break-stripped tokens joined by single spaces.
    pub fn plain_text(&self) -> String {
        self.tokens().collect::<Vec<_>>().join(" ")
    }

    /// Annotated text: every item's surface form joined by single spaces.
    pub fn annotated_text(&self) -> String {
        self.items
            .iter()
            .map(Item::surface)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn validate_token(token: &str) -> Result<(), CoreError> {
    if token.is_empty() {
        return Err(CoreError::InvalidToken(token.into(), "empty"));
    }
    if token.chars().any(char::is_whitespace) {
        return Err(CoreError::InvalidToken(token.into(), "contains whitespace"));
    }
    if BreakSymbol::from_token(token).is_some() {
        return Err(CoreError::InvalidToken(
            token.into(),
            "token equals a break surface form",
        ));
    }
    Ok(())
}

/// A subtitle block before timing: lines of tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UntimedBlock {
    pub lines: Vec<Vec<String>>,
}

impl UntimedBlock {
    /// Display text of one line: tokens joined by a single space.
    pub fn line_text(&self, line: usize) -> String {
        self.lines[line].join(" ")
    }

    /// Characters of one line, counted as Unicode scalar values.
    /// Inter-token spaces count; break symbols never appear here.
    pub fn line_chars(&self, line: usize) -> usize {
        line_char_count(&self.lines[line])
    }

    /// Characters across all lines (line separators not counted).
    pub fn char_count(&self) -> usize {
        (0..self.lines.len()).map(|i| self.line_chars(i)).sum()
    }

    pub fn token_count(&self) -> usize {
        self.lines.iter().map(Vec::len).sum()
    }
}

/// Characters of a line built from `tokens` joined by single spaces.
pub fn line_char_count<S: AsRef<str>>(tokens: &[S]) -> usize {
    if tokens.is_empty() {
        return 0;
    }
    let chars: usize = tokens.iter().map(|t| t.as_ref().chars().count()).sum();
    chars + tokens.len() - 1
}

/// A timestamp with millisecond precision, as used in SRT files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Timestamp(u64);

impl Timestamp {
    pub fn from_millis(ms: u64) -> Self {
        Timestamp(ms)
    }

    /// Round seconds to the nearest millisecond, ties away from zero.
    pub fn from_seconds(secs: f64) -> Self {
        Timestamp((secs * 1000.0).round() as u64)
    }

    pub fn as_millis(self) -> u64 {
        self.0
    }

    pub fn as_seconds(self) -> f64 {
        self.0 as f64 / 1000.0
    }
}

impl fmt::Display for Timestamp {
    /// `HH:MM:SS,mmm`, zero-padded, comma millisecond separator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms = self.0 % 1000;
        let s = self.0 / 1000;
        write!(
            f,
            "{:02}:{:02}:{:02},{:03}",
            s / 3600,
            s / 60 % 60,
            s % 60,
            ms
        )
    }
}

/// The SRT-level unit: 1..n display lines with in/out times.
///
/// Blocks with more than two lines are representable but judged
/// non-conformant by the metrics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubtitleBlock {
    pub index: u32,
    pub start: Timestamp,
    pub end: Timestamp,
    pub lines: Vec<String>,
}

/// A word with start/end times in seconds, as produced by forced alignment.
#[derive(Debug, Clone, PartialEq)]
pub struct TimedWord {
    pub surface: String,
    pub start: f64,
    pub end: f64,
}

impl TimedWord {
    pub fn new(surface: impl Into<String>, start: f64, end: f64) -> Result<Self, CoreError> {
        let surface = surface.into();
        if !(start >= 0.0 && end >= start) {
            return Err(CoreError::InvalidToken(
                surface,
                "word times must satisfy end >= start >= 0",
            ));
        }
        Ok(Self { surface, start, end })
    }
}

/// Strictly positive sentence duration in seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SentenceDuration(f64);

impl SentenceDuration {
    pub fn new(secs: f64) -> Option<Self> {
        (secs > 0.0).then_some(SentenceDuration(secs))
    }

    pub fn seconds(self) -> f64 {
        self.0
    }
}

/// Spatial, temporal, and prosodic subtitling constraints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraints {
    /// Maximum characters per subtitle line.
    pub max_chars_per_line: usize,
    /// Maximum reading speed in characters per second.
    pub max_chars_per_second: f64,
    /// Maximum display lines per subtitle block.
    pub max_lines_per_block: usize,
    /// Pauses longer than this require a block break, in seconds.
    pub eob_pause_threshold: f64,
}

impl Default for Constraints {
    fn default() -> Self {
        Self {
            max_chars_per_line: 42,
            max_chars_per_second: 21.0,
            max_lines_per_block: 2,
            eob_pause_threshold: 0.37,
        }
    }
}

impl Constraints {
    pub fn validate(&self) -> Result<(), CoreError> {
        if self.max_chars_per_line == 0
            || self.max_lines_per_block == 0
            || !(self.max_chars_per_second > 0.0)
            || !(self.eob_pause_threshold > 0.0)
        {
            return Err(CoreError::InvalidToken(
                "constraints".into(),
                "all constraint fields must be strictly positive",
            ));
        }
        Ok(())
    }
}

/// Split a sentence into untimed subtitle blocks: `<eob>` separates blocks,
/// `<eol>` separates lines within a block. A trailing `<eob>` produces no
/// empty trailing block, and a trailing `<eol>` no empty trailing line.
pub fn blocks_from_annotated(sentence: &AnnotatedSentence) -> Vec<UntimedBlock> {
    let mut blocks = Vec::new();
    let mut lines: Vec<Vec<String>> = Vec::new();
    let mut line: Vec<String> = Vec::new();

    for item in sentence.items() {
        match item {
            Item::Token(t) => line.push(t.clone()),
            Item::Break(BreakSymbol::LineBreak) => {
                lines.push(std::mem::take(&mut line));
            }
            Item::Break(BreakSymbol::BlockBreak) => {
                lines.push(std::mem::take(&mut line));
                blocks.push(UntimedBlock {
                    lines: std::mem::take(&mut lines),
                });
            }
        }
    }
    if !line.is_empty() {
        lines.push(line);
    }
    if !lines.is_empty() {
        blocks.push(UntimedBlock { lines });
    }
    // Empty lines only arise from trailing breaks; drop them.
    for block in &mut blocks {
        block.lines.retain(|l| !l.is_empty());
    }
    blocks.retain(|b| !b.lines.is_empty());
    blocks
}

/// Exact inverse of [`blocks_from_annotated`]: `<eol>` between lines within
/// a block, `<eob>` between blocks and after the final block.
pub fn annotated_from_blocks(blocks: &[UntimedBlock]) -> Result<AnnotatedSentence, CoreError> {
    let mut items = Vec::new();
    for (bi, block) in blocks.iter().enumerate() {
        if block.lines.is_empty() {
            return Err(CoreError::EmptyBlock(bi));
        }
        for (li, line) in block.lines.iter().enumerate() {
            if line.is_empty() {
                return Err(CoreError::EmptyLine(bi));
            }
            if li > 0 {
                items.push(Item::Break(BreakSymbol::LineBreak));
            }
            items.extend(line.iter().map(|t| Item::Token(t.clone())));
        }
        items.push(Item::Break(BreakSymbol::BlockBreak));
    }
    AnnotatedSentence::new(items)
}

/// Tokens only, order preserved.
pub fn strip_breaks(sentence: &AnnotatedSentence) -> Vec<&str> {
    sentence.tokens().collect()
}
