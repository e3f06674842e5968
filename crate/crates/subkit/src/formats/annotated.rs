//! Parser and emitter for break-annotated corpus text: one sentence per
//! line, `<eol>`/`<eob>` as standalone whitespace-delimited tokens.

use crate::core::{AnnotatedSentence, BreakSymbol, Item};

use super::{CorpusFile, FormatError};

/// Parse one corpus line. In strict mode leading breaks, consecutive
/// breaks, and empty lines are errors; in lenient mode consecutive breaks
/// collapse to the stronger symbol (`<eob>` wins), leading breaks are
/// dropped, and each repair is recorded as a warning.
pub fn parse_annotated_line(
    line: &str,
    line_no: usize,
    strict: bool,
    warnings: &mut Vec<String>,
) -> Result<AnnotatedSentence, FormatError> {
    let mut items: Vec<Item> = Vec::new();
    let mut token_count = 0usize;

    for raw in line.split_whitespace() {
        match BreakSymbol::from_token(raw) {
            Some(symbol) => match items.last_mut() {
                None => {
                    if strict {
                        return Err(FormatError::line(line_no, "sentence begins with break"));
                    }
                    warnings.push(format!("line {line_no}: dropped leading {raw}"));
                }
                Some(Item::Break(prev)) => {
                    if strict {
                        return Err(FormatError::line(line_no, "consecutive break symbols"));
                    }
                    let stronger = if *prev == BreakSymbol::BlockBreak
                        || symbol == BreakSymbol::BlockBreak
                    {
                        BreakSymbol::BlockBreak
                    } else {
                        BreakSymbol::LineBreak
                    };
                    warnings.push(format!(
                        "line {line_no}: collapsed consecutive breaks to {}",
                        stronger.as_str()
                    ));
                    *prev = stronger;
                }
                Some(Item::Token(_)) => items.push(Item::Break(symbol)),
            },
            None => {
                if raw.len() > 1 && raw.starts_with('<') && raw.ends_with('>') {
                    return Err(FormatError::line(
                        line_no,
                        format!("unknown break-like token {raw:?}"),
                    ));
                }
                token_count += 1;
                items.push(Item::Token(raw.to_string()));
            }
        }
    }

    if items.is_empty() {
        return Err(FormatError::line(line_no, "empty line"));
    }
    let sentence = AnnotatedSentence::new(items)
        .map_err(|e| FormatError::line(line_no, e.to_string()))?;
    // No token is ever silently dropped.
    debug_assert_eq!(sentence.token_count(), token_count);
    if sentence.token_count() != token_count {
        return Err(FormatError::line(line_no, "internal token count mismatch"));
    }
    Ok(sentence)
}

/// Parse a whole corpus, one sentence per line. Lenient mode skips blank
/// lines with a warning; strict mode rejects them.
pub fn parse_annotated_corpus(text: &str, strict: bool) -> Result<CorpusFile, FormatError> {
    let mut sentences = Vec::new();
    let mut warnings = Vec::new();

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            if strict {
                return Err(FormatError::line(line_no, "empty line"));
            }
            warnings.push(format!("line {line_no}: skipped blank line"));
            continue;
        }
        sentences.push(parse_annotated_line(line, line_no, strict, &mut warnings)?);
    }

    Ok(CorpusFile {
        sentences,
        warnings,
    })
}

/// Emit a corpus in the exact form [`parse_annotated_corpus`] accepts:
/// items joined by single spaces, one sentence per line, trailing newline.
pub fn emit_annotated_corpus(corpus: &CorpusFile) -> String {
    let mut out = String::new();
    for sentence in &corpus.sentences {
        out.push_str(&sentence.annotated_text());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "This kind of harassment keeps women <eol> from accessing the \
                           internet -- <eob> essentially, knowledge. <eob>";

    #[test]
    fn parses_example_line() {
        let corpus = parse_annotated_corpus(EXAMPLE, true).unwrap();
        assert_eq!(corpus.len(), 1);
        let s = &corpus.sentences[0];
        assert_eq!(s.token_count(), 13);
        assert_eq!(s.break_count(), 3);
        assert_eq!(
            s.breaks().filter(|b| *b == BreakSymbol::BlockBreak).count(),
            2
        );
        assert_eq!(
            s.breaks().filter(|b| *b == BreakSymbol::LineBreak).count(),
            1
        );
    }

    #[test]
    fn plain_line_has_no_breaks() {
        let corpus = parse_annotated_corpus("hello world", true).unwrap();
        assert_eq!(corpus.sentences[0].token_count(), 2);
        assert_eq!(corpus.sentences[0].break_count(), 0);
    }

    #[test]
    fn strict_rejects_leading_break() {
        let err = parse_annotated_corpus("<eol> hi", true).unwrap_err();
        assert_eq!(
            err,
            FormatError::line(1, "sentence begins with break")
        );
    }

    #[test]
    fn lenient_collapses_consecutive_breaks() {
        let corpus = parse_annotated_corpus("a <eol> <eob> b", false).unwrap();
        assert_eq!(corpus.sentences[0].annotated_text(), "a <eob> b");
        assert_eq!(corpus.warnings.len(), 1);
        // <eob> wins regardless of order
        let corpus = parse_annotated_corpus("a <eob> <eol> b", false).unwrap();
        assert_eq!(corpus.sentences[0].annotated_text(), "a <eob> b");
    }

    #[test]
    fn lenient_drops_leading_break_and_blank_lines() {
        let corpus = parse_annotated_corpus("<eob> hi\n\nthere", false).unwrap();
        assert_eq!(corpus.len(), 2);
        assert_eq!(corpus.sentences[0].annotated_text(), "hi");
        assert_eq!(corpus.warnings.len(), 2);
    }

    #[test]
    fn unknown_break_like_token_is_an_error() {
        let err = parse_annotated_corpus("hi <unk> there", true).unwrap_err();
        assert!(matches!(err, FormatError::Line { line: 1, .. }));
        let err = parse_annotated_corpus("ok\nhi <br> there", false).unwrap_err();
        assert!(matches!(err, FormatError::Line { line: 2, .. }));
    }

    #[test]
    fn strict_rejects_blank_line() {
        let err = parse_annotated_corpus("a b\n\nc", true).unwrap_err();
        assert_eq!(err, FormatError::line(2, "empty line"));
    }

    #[test]
    fn emit_parse_round_trip() {
        let text = format!("{EXAMPLE}\nhello world\na <eob> b <eob> c <eob>\n");
        let corpus = parse_annotated_corpus(&text, true).unwrap();
        let emitted = emit_annotated_corpus(&corpus);
        assert_eq!(emitted, text);
        let reparsed = parse_annotated_corpus(&emitted, true).unwrap();
        assert_eq!(reparsed.sentences, corpus.sentences);
    }

    #[test]
    fn multi_space_normalizes_to_single_spaces() {
        let corpus = parse_annotated_corpus("a\t b   <eob>  c", true).unwrap();
        assert_eq!(corpus.sentences[0].annotated_text(), "a b <eob> c");
    }
}
