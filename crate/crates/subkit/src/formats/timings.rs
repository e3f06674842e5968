//! Word-timing and sentence-duration tables.
//!
//! The native carrier is a minimal TSV, one word per line:
//! `sentence_id<TAB>word<TAB>start_seconds<TAB>end_seconds`, with
//! `#`-prefixed comment lines ignored. A CTM import adapter maps CTM's
//! (start, duration) records onto the same structure.

use std::collections::{BTreeMap, HashMap};

use crate::core::{SentenceDuration, TimedWord};

use super::FormatError;

/// Word-level timings grouped by sentence id; within one sentence the
/// start times are non-decreasing.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WordTimingFile {
    pub records: Vec<(u64, TimedWord)>,
}

impl WordTimingFile {
    pub fn by_sentence(&self) -> BTreeMap<u64, Vec<&TimedWord>> {
        let mut map: BTreeMap<u64, Vec<&TimedWord>> = BTreeMap::new();
        for (id, word) in &self.records {
            map.entry(*id).or_default().push(word);
        }
        map
    }

    fn validate(&self) -> Result<(), FormatError> {
        let mut last_start: HashMap<u64, f64> = HashMap::new();
        for (id, word) in &self.records {
            if let Some(prev) = last_start.get(id) {
                if word.start < *prev {
                    return Err(FormatError::Structure(format!(
                        "sentence {id}: word {:?} starts at {} before previous start {}",
                        word.surface, word.start, prev
                    )));
                }
            }
            last_start.insert(*id, word.start);
        }
        Ok(())
    }
}

/// Parse the native word-timing TSV.
pub fn parse_word_timings(text: &str) -> Result<WordTimingFile, FormatError> {
    let mut records = Vec::new();
    let mut last_start: HashMap<u64, f64> = HashMap::new();

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [id, word, start, end] = fields.as_slice() else {
            return Err(FormatError::line(
                line_no,
                format!("expected 4 tab-separated fields, found {}", fields.len()),
            ));
        };
        let id: u64 = id
            .trim()
            .parse()
            .map_err(|_| FormatError::line(line_no, format!("bad sentence id {id:?}")))?;
        let start: f64 = start
            .trim()
            .parse()
            .map_err(|_| FormatError::line(line_no, format!("bad start time {start:?}")))?;
        let end: f64 = end
            .trim()
            .parse()
            .map_err(|_| FormatError::line(line_no, format!("bad end time {end:?}")))?;
        if end < start {
            return Err(FormatError::line(
                line_no,
                format!("end {end} before start {start}"),
            ));
        }
        if let Some(prev) = last_start.get(&id) {
            if start < *prev {
                return Err(FormatError::line(
                    line_no,
                    format!("start {start} before previous start {prev} in sentence {id}"),
                ));
            }
        }
        last_start.insert(id, start);
        let word = TimedWord::new(word.to_string(), start, end)
            .map_err(|e| FormatError::line(line_no, e.to_string()))?;
        records.push((id, word));
    }

    Ok(WordTimingFile { records })
}

/// Import CTM records (`utterance channel start duration word [confidence]`).
///
/// Utterance ids are used directly when they all parse as integers;
/// otherwise distinct ids are numbered 0.. in order of first appearance.
pub fn parse_ctm(text: &str) -> Result<WordTimingFile, FormatError> {
    struct Raw {
        utt: String,
        word: String,
        start: f64,
        end: f64,
        line_no: usize,
    }

    let mut raw: Vec<Raw> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with(";;") {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() < 5 {
            return Err(FormatError::line(
                line_no,
                format!("expected at least 5 CTM fields, found {}", fields.len()),
            ));
        }
        let start: f64 = fields[2]
            .parse()
            .map_err(|_| FormatError::line(line_no, format!("bad start time {:?}", fields[2])))?;
        let duration: f64 = fields[3].parse().map_err(|_| {
            FormatError::line(line_no, format!("bad duration {:?}", fields[3]))
        })?;
        if duration < 0.0 {
            return Err(FormatError::line(line_no, "negative duration"));
        }
        raw.push(Raw {
            utt: fields[0].to_string(),
            word: fields[4].to_string(),
            start,
            end: start + duration,
            line_no,
        });
    }

    let all_numeric = raw.iter().all(|r| r.utt.parse::<u64>().is_ok());
    let mut assigned: HashMap<String, u64> = HashMap::new();
    let mut next_id = 0u64;
    let mut records = Vec::new();
    for r in raw {
        let id = if all_numeric {
            r.utt.parse::<u64>().unwrap()
        } else {
            *assigned.entry(r.utt.clone()).or_insert_with(|| {
                let id = next_id;
                next_id += 1;
                id
            })
        };
        let word = TimedWord::new(r.word, r.start, r.end)
            .map_err(|e| FormatError::line(r.line_no, e.to_string()))?;
        records.push((id, word));
    }

    let file = WordTimingFile { records };
    file.validate()?;
    Ok(file)
}

/// Parse a per-sentence duration table: `sentence_id<TAB>duration_seconds`.
pub fn parse_durations(text: &str) -> Result<BTreeMap<u64, SentenceDuration>, FormatError> {
    let mut map = BTreeMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((id, dur)) = line.split_once('\t') else {
            return Err(FormatError::line(line_no, "expected sentence_id<TAB>duration"));
        };
        let id: u64 = id
            .trim()
            .parse()
            .map_err(|_| FormatError::line(line_no, format!("bad sentence id {id:?}")))?;
        let dur: f64 = dur
            .trim()
            .parse()
            .map_err(|_| FormatError::line(line_no, format!("bad duration {dur:?}")))?;
        let dur = SentenceDuration::new(dur)
            .ok_or_else(|| FormatError::line(line_no, "non-positive duration"))?;
        if map.insert(id, dur).is_some() {
            return Err(FormatError::line(line_no, format!("duplicate sentence id {id}")));
        }
    }
    Ok(map)
}

/// Derive per-sentence durations from word timings as
/// last end time − first start time.
pub fn durations_from_timings(
    timings: &WordTimingFile,
) -> Result<BTreeMap<u64, SentenceDuration>, FormatError> {
    let mut map = BTreeMap::new();
    for (id, words) in timings.by_sentence() {
        let first = words.first().unwrap();
        let last = words.last().unwrap();
        let duration = SentenceDuration::new(last.end - first.start).ok_or_else(|| {
            FormatError::Structure(format!("sentence {id}: derived duration is not positive"))
        })?;
        map.insert(id, duration);
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_timing_record() {
        let file = parse_word_timings("0\tthis\t0.000\t0.210").unwrap();
        assert_eq!(
            file.records,
            vec![(0, TimedWord::new("this", 0.0, 0.21).unwrap())]
        );
    }

    #[test]
    fn rejects_out_of_order_starts() {
        let err = parse_word_timings("0\ta\t1.0\t1.5\n0\tb\t0.5\t0.9").unwrap_err();
        assert!(matches!(err, FormatError::Line { line: 2, .. }));
    }

    #[test]
    fn skips_comment_lines() {
        let file = parse_word_timings("# header\n0\ta\t0.0\t0.1\n\n0\tb\t0.2\t0.3").unwrap();
        assert_eq!(file.records.len(), 2);
    }

    #[test]
    fn rejects_inverted_and_non_numeric() {
        assert!(parse_word_timings("0\ta\t1.0\t0.5").is_err());
        assert!(parse_word_timings("0\ta\tfast\t0.5").is_err());
        assert!(parse_word_timings("x\ta\t0.0\t0.5").is_err());
    }

    #[test]
    fn ctm_maps_duration_to_end() {
        let file = parse_ctm(";; comment\nutt-b 1 0.00 0.21 this\nutt-b 1 0.25 0.10 is\n\
                              utt-a 1 0.00 0.50 hi")
            .unwrap();
        // Non-numeric ids: first appearance order.
        assert_eq!(file.records[0].0, 0);
        assert_eq!(file.records[2].0, 1);
        assert!((file.records[1].1.end - 0.35).abs() < 1e-12);

        let numeric = parse_ctm("7 1 0.0 0.5 hi").unwrap();
        assert_eq!(numeric.records[0].0, 7);
    }

    #[test]
    fn durations_table() {
        let map = parse_durations("3\t5.125").unwrap();
        assert_eq!(map[&3].seconds(), 5.125);
        assert!(parse_durations("3\t5.0\n3\t6.0").is_err());
        let err = parse_durations("3\t0").unwrap_err();
        assert_eq!(err, FormatError::line(1, "non-positive duration"));
    }

    #[test]
    fn derive_durations_from_timings() {
        let file = parse_word_timings("0\ta\t1.0\t1.5\n0\tb\t2.0\t3.5\n1\tc\t0.0\t0.2").unwrap();
        let map = durations_from_timings(&file).unwrap();
        assert_eq!(map[&0].seconds(), 2.5);
        assert_eq!(map[&1].seconds(), 0.2);
    }
}
