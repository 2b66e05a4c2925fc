//! Text cleaning and vocabulary construction.
//!
//! A raw post goes through five stages, in this order:
//!
//! 1. [`strip_entities`] removes URLs, `#hashtags` and `@mentions`;
//! 2. [`TranslationTable::apply`] optionally substitutes the whole text;
//! 3. [`normalize`] transliterates, lowercases, drops everything that is not
//!    a Latin letter and shortens character runs;
//! 4. [`tokenize`] splits on whitespace;
//! 5. [`remove_stopwords`] filters function words.
//!
//! Lowercasing happens before stopword filtering so that `The` and `the`
//! are treated alike.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::LazyLock;

use regex::Regex;
use sha2::{Digest, Sha256};
use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

/// Ordered lowercase alphabetic tokens of one document.
pub type TokenList = Vec<String>;

static ENTITY_RE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"https?://\S+|\bt\.co/\S+|#\w+|@\w+").expect("entity pattern"));

const DEFAULT_STOPWORDS: &str = include_str!("../data/stopwords_en.txt");

#[derive(Debug, thiserror::Error)]
pub enum PreprocessError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("translation table line {line}: {message}")]
    MalformedTranslation { line: usize, message: String },
}

/// Removes URLs (`http(s)://…` and bare `t.co/…`), hashtags and mentions,
/// then collapses whitespace.
pub fn strip_entities(text: &str) -> String {
    let stripped = ENTITY_RE.replace_all(text, " ");
    collapse_whitespace(&stripped)
}

fn collapse_whitespace(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Whole-text substitution table standing in for a translation service.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TranslationTable {
    entries: HashMap<String, String>,
}

impl TranslationTable {
    pub fn from_pairs<I, S, T>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, T)>,
        S: Into<String>,
        T: Into<String>,
    {
        TranslationTable {
            entries: pairs.into_iter().map(|(s, t)| (s.into(), t.into())).collect(),
        }
    }

    /// Parses `source<TAB>target` lines. Blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, PreprocessError> {
        let mut entries = HashMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let (source, target) = line
                .split_once('\t')
                .ok_or_else(|| PreprocessError::MalformedTranslation {
                    line: line_no,
                    message: "expected source<TAB>target".into(),
                })?;
            if target.contains('\t') {
                return Err(PreprocessError::MalformedTranslation {
                    line: line_no,
                    message: "more than two columns".into(),
                });
            }
            if entries.insert(source.to_string(), target.to_string()).is_some() {
                return Err(PreprocessError::MalformedTranslation {
                    line: line_no,
                    message: format!("duplicate source {source:?}"),
                });
            }
        }
        Ok(TranslationTable { entries })
    }

    pub fn load(path: &Path) -> Result<Self, PreprocessError> {
        let text = fs::read_to_string(path).map_err(|source| PreprocessError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn apply(&self, text: &str) -> String {
        self.entries.get(text).cloned().unwrap_or_else(|| text.to_string())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Applies the optional translation table; identity when none is configured.
pub fn translate_hook(text: &str, mapping: Option<&TranslationTable>) -> String {
    match mapping {
        Some(table) => table.apply(text),
        None => text.to_string(),
    }
}

/// Maps text onto lowercase ASCII words separated by single spaces.
///
/// Letters with a compatibility decomposition lose their diacritics
/// (`á` → `a`, `ñ` → `n`). Any other character (digits, punctuation,
/// symbols, emoji, undecomposable letters) becomes a word break. Runs of
/// three or more identical characters are shortened to two.
pub fn normalize(text: &str) -> String {
    let mut mapped = String::with_capacity(text.len());
    for ch in text.nfkd() {
        if ch.is_ascii_alphabetic() {
            mapped.push(ch.to_ascii_lowercase());
        } else if !is_combining_mark(ch) {
            mapped.push(' ');
        }
    }
    let mut out = String::with_capacity(mapped.len());
    for word in mapped.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        let mut prev = None;
        let mut run = 0;
        for ch in word.chars() {
            if Some(ch) == prev {
                run += 1;
            } else {
                prev = Some(ch);
                run = 1;
            }
            if run <= 2 {
                out.push(ch);
            }
        }
    }
    out
}

pub fn tokenize(text: &str) -> TokenList {
    text.split_whitespace().map(str::to_string).collect()
}

/// Lowercase word set used by [`remove_stopwords`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stopwords {
    words: HashSet<String>,
}

impl Default for Stopwords {
    fn default() -> Self {
        Stopwords::parse(DEFAULT_STOPWORDS)
    }
}

impl Stopwords {
    pub fn empty() -> Self {
        Stopwords { words: HashSet::new() }
    }

    /// One word per line; `#` starts a comment.
    pub fn parse(text: &str) -> Self {
        let words = text
            .lines()
            .map(|line| line.split('#').next().unwrap_or("").trim())
            .filter(|w| !w.is_empty())
            .map(str::to_lowercase)
            .collect();
        Stopwords { words }
    }

    pub fn load(path: &Path) -> Result<Self, PreprocessError> {
        let text = fs::read_to_string(path).map_err(|source| PreprocessError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Self::parse(&text))
    }

    pub fn from_words<I: IntoIterator<Item = S>, S: AsRef<str>>(words: I) -> Self {
        Stopwords {
            words: words.into_iter().map(|w| w.as_ref().to_lowercase()).collect(),
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

pub fn remove_stopwords(tokens: TokenList, stoplist: &Stopwords) -> TokenList {
    tokens.into_iter().filter(|t| !stoplist.contains(t)).collect()
}

#[derive(Debug, Clone, Default)]
pub struct PreprocessConfig {
    pub stopwords: Stopwords,
    pub translation: Option<TranslationTable>,
}

/// Runs the full cleaning pipeline on one raw post.
pub fn preprocess_post(text: &str, config: &PreprocessConfig) -> TokenList {
    let stripped = strip_entities(text);
    let translated = translate_hook(&stripped, config.translation.as_ref());
    let normalized = normalize(&translated);
    remove_stopwords(tokenize(&normalized), &config.stopwords)
}

/// The ordered set of distinct words of a document collection, in order of
/// first occurrence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    words: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    pub fn build<'a, I, D>(docs: I) -> Self
    where
        I: IntoIterator<Item = &'a D>,
        D: AsRef<[String]> + 'a + ?Sized,
    {
        let mut vocab = Vocabulary::default();
        for doc in docs {
            for token in doc.as_ref() {
                vocab.insert(token);
            }
        }
        vocab
    }

    pub fn from_words<I: IntoIterator<Item = S>, S: Into<String>>(words: I) -> Self {
        let mut vocab = Vocabulary::default();
        for w in words {
            vocab.insert(&w.into());
        }
        vocab
    }

    fn insert(&mut self, word: &str) {
        if !self.index.contains_key(word) {
            self.index.insert(word.to_string(), self.words.len());
            self.words.push(word.to_string());
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn word(&self, idx: usize) -> Option<&str> {
        self.words.get(idx).map(String::as_str)
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    /// Hex SHA-256 over the newline-joined word list. Identifies the
    /// feature space a saved model was trained in.
    pub fn checksum(&self) -> String {
        let mut hasher = Sha256::new();
        for w in &self.words {
            hasher.update(w.as_bytes());
            hasher.update(b"\n");
        }
        hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Vocabulary of a document sequence; see [`Vocabulary::build`].
pub fn build_vocabulary(docs: &[TokenList]) -> Vocabulary {
    Vocabulary::build(docs)
}
