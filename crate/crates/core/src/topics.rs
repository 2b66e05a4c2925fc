//! Most-frequent terms of a term-document matrix, for wordcloud data.

use serde::{Deserialize, Serialize};

use crate::vectorize::TermDocumentMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermCount {
    pub word: String,
    pub count: u64,
}

/// Corpus frequencies sorted by count descending, then word ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermFrequencyTable {
    rows: Vec<TermCount>,
}

impl TermFrequencyTable {
    pub fn rows(&self) -> &[TermCount] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.rows.iter().map(|r| r.count).sum()
    }

    /// Wordcloud JSON: `[{"word": …, "count": …}, …]`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).expect("term counts serialize")
    }
}

/// One row per vocabulary word holding the word's TDM row sum.
pub fn term_frequencies(tdm: &TermDocumentMatrix) -> TermFrequencyTable {
    let mut rows: Vec<TermCount> = tdm
        .vocabulary()
        .words()
        .iter()
        .zip(tdm.row_sums())
        .map(|(word, count)| TermCount {
            word: word.clone(),
            count,
        })
        .collect();
    rows.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.word.cmp(&b.word)));
    TermFrequencyTable { rows }
}

/// The first `min(k, len)` rows.
///
/// Panics if `k == 0`.
pub fn top_k(table: &TermFrequencyTable, k: usize) -> TermFrequencyTable {
    assert!(k >= 1, "top_k requires k >= 1");
    TermFrequencyTable {
        rows: table.rows.iter().take(k).cloned().collect(),
    }
}
