//! SRT subtitle parsing and emission.
//!
//! The emitted shape is fixed: index line, `HH:MM:SS,mmm --> HH:MM:SS,mmm`
//! with exactly one space around the arrow, one line per subtitle line, and
//! a single blank line between blocks. The parser is the exact inverse on
//! that image and additionally tolerates Windows line endings and a UTF-8
//! BOM.

use crate::core::{SubtitleBlock, Timestamp};

use super::FormatError;

/// A parsed SRT file: consecutive indices and non-overlapping blocks in
/// strict mode; repairs downgraded to warnings in lenient mode.
#[derive(Debug, Clone, PartialEq)]
pub struct SrtFile {
    pub blocks: Vec<SubtitleBlock>,
    pub warnings: Vec<String>,
}

/// Serialize blocks to SRT text.
pub fn emit_srt(blocks: &[SubtitleBlock]) -> Result<String, FormatError> {
    let mut out = String::new();
    for (i, block) in blocks.iter().enumerate() {
        if block.end <= block.start {
            return Err(FormatError::block(
                block.index,
                format!("end {} not after start {}", block.end, block.start),
            ));
        }
        if block.lines.is_empty() {
            return Err(FormatError::block(block.index, "block has no lines"));
        }
        for line in &block.lines {
            if line.trim().is_empty() {
                return Err(FormatError::block(block.index, "empty subtitle line"));
            }
            if line.contains('\n') || line.contains('\r') {
                return Err(FormatError::block(
                    block.index,
                    "subtitle line contains a line break",
                ));
            }
        }
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&block.index.to_string());
        out.push('\n');
        out.push_str(&format!("{} --> {}\n", block.start, block.end));
        for line in &block.lines {
            out.push_str(line);
            out.push('\n');
        }
    }
    Ok(out)
}

/// Parse SRT text. Empty input yields an empty file.
pub fn parse_srt(text: &str, strict: bool) -> Result<SrtFile, FormatError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut blocks: Vec<SubtitleBlock> = Vec::new();
    let mut warnings = Vec::new();
    let mut lines = text.lines().enumerate().peekable();

    loop {
        while matches!(lines.peek(), Some((_, l)) if l.trim().is_empty()) {
            lines.next();
        }
        let Some((index_lineno, index_line)) = lines.next() else {
            break;
        };
        let index: u32 = index_line.trim().parse().map_err(|_| {
            FormatError::line(
                index_lineno + 1,
                format!("expected block index, found {index_line:?}"),
            )
        })?;
        let Some((ts_lineno, ts_line)) = lines.next() else {
            return Err(FormatError::block(index, "missing timestamp line"));
        };
        let (start, end) = parse_timestamp_line(ts_line, ts_lineno + 1)?;
        if end <= start {
            return Err(FormatError::block(index, "end time not after start time"));
        }
        let mut text_lines = Vec::new();
        while let Some((_, l)) = lines.peek() {
            if l.trim().is_empty() {
                break;
            }
            text_lines.push(lines.next().unwrap().1.to_string());
        }
        if text_lines.is_empty() {
            return Err(FormatError::block(index, "block has no text lines"));
        }
        blocks.push(SubtitleBlock {
            index,
            start,
            end,
            lines: text_lines,
        });
    }

    for pair in blocks.windows(2) {
        let (prev, next) = (&pair[0], &pair[1]);
        if next.index != prev.index + 1 {
            let message = format!("index {} does not follow {}", next.index, prev.index);
            if strict {
                return Err(FormatError::block(next.index, message));
            }
            warnings.push(format!("block {}: {message}", next.index));
        }
        if next.start < prev.end {
            let message = format!("block {} overlaps block {}", next.index, prev.index);
            if strict {
                return Err(FormatError::block(next.index, message));
            }
            warnings.push(message);
        }
    }

    Ok(SrtFile { blocks, warnings })
}

fn parse_timestamp_line(line: &str, line_no: usize) -> Result<(Timestamp, Timestamp), FormatError> {
    let Some((left, right)) = line.split_once("-->") else {
        return Err(FormatError::line(
            line_no,
            format!("expected timestamp line, found {line:?}"),
        ));
    };
    Ok((
        parse_timestamp(left.trim(), line_no)?,
        parse_timestamp(right.trim(), line_no)?,
    ))
}

fn parse_timestamp(text: &str, line_no: usize) -> Result<Timestamp, FormatError> {
    let bad = || FormatError::line(line_no, format!("malformed timestamp {text:?}"));
    let mut colon_parts = text.split(':');
    let (Some(hh), Some(mm), Some(rest), None) = (
        colon_parts.next(),
        colon_parts.next(),
        colon_parts.next(),
        colon_parts.next(),
    ) else {
        return Err(bad());
    };
    let Some((ss, ms)) = rest.split_once(',') else {
        return Err(bad());
    };
    if ms.len() != 3 || [hh, mm, ss, ms].iter().any(|p| {
        p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit())
    }) {
        return Err(bad());
    }
    let (hh, mm, ss, ms): (u64, u64, u64, u64) = (
        hh.parse().map_err(|_| bad())?,
        mm.parse().map_err(|_| bad())?,
        ss.parse().map_err(|_| bad())?,
        ms.parse().map_err(|_| bad())?,
    );
    if mm >= 60 || ss >= 60 {
        return Err(bad());
    }
    Ok(Timestamp::from_millis(((hh * 60 + mm) * 60 + ss) * 1000 + ms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_blocks() -> Vec<SubtitleBlock> {
        vec![
            SubtitleBlock {
                index: 10,
                start: Timestamp::from_seconds(31.066),
                end: Timestamp::from_seconds(34.390),
                lines: vec![
                    "This kind of harassment keeps women".into(),
                    "from accessing the internet --".into(),
                ],
            },
            SubtitleBlock {
                index: 11,
                start: Timestamp::from_seconds(34.414),
                end: Timestamp::from_seconds(36.191),
                lines: vec!["essentially, knowledge.".into()],
            },
        ]
    }

    const PAPER_SRT: &str = "10\n00:00:31,066 --> 00:00:34,390\n\
                             This kind of harassment keeps women\n\
                             from accessing the internet --\n\
                             \n\
                             11\n00:00:34,414 --> 00:00:36,191\n\
                             essentially, knowledge.\n";

    #[test]
    fn emits_rendering_blocks_exactly() {
        assert_eq!(emit_srt(&paper_blocks()).unwrap(), PAPER_SRT);
    }

    #[test]
    fn round_trips_rendering_blocks() {
        let parsed = parse_srt(PAPER_SRT, true).unwrap();
        assert_eq!(parsed.blocks, paper_blocks());
        assert_eq!(emit_srt(&parsed.blocks).unwrap(), PAPER_SRT);
    }

    #[test]
    fn empty_input_is_empty_file() {
        let parsed = parse_srt("", true).unwrap();
        assert!(parsed.blocks.is_empty());
        assert_eq!(emit_srt(&parsed.blocks).unwrap(), "");
    }

    #[test]
    fn parses_minimal_block() {
        let parsed = parse_srt("1\n00:00:00,000 --> 00:00:01,000\nhi\n", true).unwrap();
        assert_eq!(parsed.blocks.len(), 1);
        assert_eq!(parsed.blocks[0].lines, vec!["hi"]);
    }

    #[test]
    fn tolerates_bom_and_crlf() {
        let text = "\u{feff}1\r\n00:00:00,000 --> 00:00:01,000\r\nhi\r\n\r\n\
                    2\r\n00:00:01,500 --> 00:00:02,000\r\nthere\r\n";
        let parsed = parse_srt(text, true).unwrap();
        assert_eq!(parsed.blocks.len(), 2);
        assert_eq!(parsed.blocks[1].start, Timestamp::from_millis(1500));
    }

    #[test]
    fn rejects_malformed_timestamp() {
        let err = parse_srt("1\n00:00:00.000 --> 00:00:01,000\nhi\n", true).unwrap_err();
        assert!(matches!(err, FormatError::Line { line: 2, .. }));
        let err = parse_srt("1\n00:61:00,000 --> 00:00:01,000\nhi\n", true).unwrap_err();
        assert!(matches!(err, FormatError::Line { line: 2, .. }));
    }

    #[test]
    fn strictness_on_indices_and_overlap() {
        let gap = "1\n00:00:00,000 --> 00:00:01,000\nhi\n\n\
                   3\n00:00:02,000 --> 00:00:03,000\nthere\n";
        assert!(matches!(
            parse_srt(gap, true).unwrap_err(),
            FormatError::Block { index: 3, .. }
        ));
        assert_eq!(parse_srt(gap, false).unwrap().warnings.len(), 1);

        let overlap = "1\n00:00:00,000 --> 00:00:02,000\nhi\n\n\
                       2\n00:00:01,500 --> 00:00:03,000\nthere\n";
        assert!(matches!(
            parse_srt(overlap, true).unwrap_err(),
            FormatError::Block { index: 2, .. }
        ));
        assert_eq!(parse_srt(overlap, false).unwrap().warnings.len(), 1);
    }

    #[test]
    fn rejects_inverted_times() {
        let err = parse_srt("1\n00:00:02,000 --> 00:00:01,000\nhi\n", true).unwrap_err();
        assert!(matches!(err, FormatError::Block { index: 1, .. }));
        let block = SubtitleBlock {
            index: 1,
            start: Timestamp::from_millis(1000),
            end: Timestamp::from_millis(1000),
            lines: vec!["hi".into()],
        };
        assert!(emit_srt(&[block]).is_err());
    }
}
