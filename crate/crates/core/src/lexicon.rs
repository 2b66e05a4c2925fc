//! Lexicon-based polarity and subjectivity scoring.
//!
//! A document's polarity is the mean polarity of its lexicon-scored word
//! occurrences; subjectivity is averaged over the same occurrences. Words
//! missing from the lexicon do not enter either denominator.

use std::collections::HashMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::sentiment::Sentiment;

const DEMO_LEXICON: &str = include_str!("../data/demo_lexicon.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LexiconEntry {
    pub polarity: f64,
    pub subjectivity: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum LexiconError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("line {line}: expected word<TAB>polarity<TAB>subjectivity")]
    Malformed { line: usize },
    #[error("line {line}: {field} {value} out of range")]
    OutOfRange {
        line: usize,
        field: &'static str,
        value: f64,
    },
    #[error("line {line}: duplicate word {word:?}")]
    Duplicate { line: usize, word: String },
    #[error("line {line}: word {word:?} is not a lowercase alphabetic token")]
    BadWord { line: usize, word: String },
}

/// Word → (polarity, subjectivity) table.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Lexicon {
    entries: HashMap<String, LexiconEntry>,
}

impl Lexicon {
    /// Parses `word<TAB>polarity<TAB>subjectivity` lines. `#` starts a
    /// comment line; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut entries = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split('\t').map(str::trim).collect();
            let [word, polarity, subjectivity] = fields[..] else {
                return Err(LexiconError::Malformed { line });
            };
            let polarity: f64 = polarity.parse().map_err(|_| LexiconError::Malformed { line })?;
            let subjectivity: f64 = subjectivity.parse().map_err(|_| LexiconError::Malformed { line })?;
            if !(-1.0..=1.0).contains(&polarity) {
                return Err(LexiconError::OutOfRange {
                    line,
                    field: "polarity",
                    value: polarity,
                });
            }
            if !(0.0..=1.0).contains(&subjectivity) {
                return Err(LexiconError::OutOfRange {
                    line,
                    field: "subjectivity",
                    value: subjectivity,
                });
            }
            if word.is_empty() || !word.bytes().all(|b| b.is_ascii_lowercase()) {
                return Err(LexiconError::BadWord {
                    line,
                    word: word.to_string(),
                });
            }
            if entries
                .insert(word.to_string(), LexiconEntry { polarity, subjectivity })
                .is_some()
            {
                return Err(LexiconError::Duplicate {
                    line,
                    word: word.to_string(),
                });
            }
        }
        Ok(Lexicon { entries })
    }

    /// The small demonstration lexicon bundled with the crate.
    pub fn demo() -> Self {
        Self::parse(DEMO_LEXICON).expect("bundled lexicon is valid")
    }

    /// Builds a lexicon from in-memory entries.
    ///
    /// Panics if a value is out of range.
    pub fn from_entries<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = (S, f64, f64)>,
        S: Into<String>,
    {
        let entries = entries
            .into_iter()
            .map(|(w, polarity, subjectivity)| {
                assert!((-1.0..=1.0).contains(&polarity), "polarity {polarity} out of range");
                assert!(
                    (0.0..=1.0).contains(&subjectivity),
                    "subjectivity {subjectivity} out of range"
                );
                (w.into(), LexiconEntry { polarity, subjectivity })
            })
            .collect();
        Lexicon { entries }
    }

    pub fn get(&self, word: &str) -> Option<LexiconEntry> {
        self.entries.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted by word.
    pub fn sorted_entries(&self) -> Vec<(&str, LexiconEntry)> {
        let mut out: Vec<_> = self.entries.iter().map(|(w, e)| (w.as_str(), *e)).collect();
        out.sort_by(|a, b| a.0.cmp(b.0));
        out
    }
}

pub fn load_lexicon(path: &Path) -> Result<Lexicon, LexiconError> {
    let text = fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Lexicon::parse(&text)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SentimentScore {
    pub polarity: f64,
    pub subjectivity: f64,
    pub scored_word_count: usize,
    pub label: Sentiment,
}

impl SentimentScore {
    pub const UNSCORED: SentimentScore = SentimentScore {
        polarity: 0.0,
        subjectivity: 0.0,
        scored_word_count: 0,
        label: Sentiment::Neutral,
    };
}

pub fn score_document(tokens: &[String], lexicon: &Lexicon) -> SentimentScore {
    let mut polarity_sum = 0.0;
    let mut subjectivity_sum = 0.0;
    let mut count = 0usize;
    for entry in tokens.iter().filter_map(|t| lexicon.get(t)) {
        polarity_sum += entry.polarity;
        subjectivity_sum += entry.subjectivity;
        count += 1;
    }
    if count == 0 {
        return SentimentScore::UNSCORED;
    }
    let n = count as f64;
    // Clamp away rounding drift of the mean past the bounds.
    let polarity = (polarity_sum / n).clamp(-1.0, 1.0);
    let subjectivity = (subjectivity_sum / n).clamp(0.0, 1.0);
    SentimentScore {
        polarity,
        subjectivity,
        scored_word_count: count,
        label: Sentiment::from_polarity(polarity),
    }
}

/// Number of documents per sentiment class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelCounts {
    pub positive: usize,
    pub neutral: usize,
    pub negative: usize,
}

impl LabelCounts {
    pub fn add(&mut self, label: Sentiment) {
        match label {
            Sentiment::Positive => self.positive += 1,
            Sentiment::Neutral => self.neutral += 1,
            Sentiment::Negative => self.negative += 1,
        }
    }

    pub fn get(&self, label: Sentiment) -> usize {
        match label {
            Sentiment::Positive => self.positive,
            Sentiment::Neutral => self.neutral,
            Sentiment::Negative => self.negative,
        }
    }

    pub fn total(&self) -> usize {
        self.positive + self.neutral + self.negative
    }

    pub fn merge(&mut self, other: &LabelCounts) {
        self.positive += other.positive;
        self.neutral += other.neutral;
        self.negative += other.negative;
    }
}

pub fn label_distribution(scores: &[SentimentScore]) -> LabelCounts {
    let mut counts = LabelCounts::default();
    for s in scores {
        counts.add(s.label);
    }
    counts
}

/// Writes the `doc_id,polarity,subjectivity,label,scored_word_count` report.
pub fn write_score_csv<W: Write>(writer: W, rows: &[(String, SentimentScore)]) -> csv::Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["doc_id", "polarity", "subjectivity", "label", "scored_word_count"])?;
    for (id, s) in rows {
        wtr.write_record([
            id.as_str(),
            &s.polarity.to_string(),
            &s.subjectivity.to_string(),
            s.label.as_str(),
            &s.scored_word_count.to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}
