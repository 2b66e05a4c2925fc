//! Count vectors and term-document matrices.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::preprocess::Vocabulary;

/// Sparse nonnegative count vector of length `dim`. Entries are kept sorted
/// by index and never store zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CountVector {
    dim: usize,
    entries: Vec<(usize, u32)>,
}

impl CountVector {
    pub fn zeros(dim: usize) -> Self {
        CountVector {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn from_dense(counts: &[u32]) -> Self {
        let entries = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i, c))
            .collect();
        CountVector {
            dim: counts.len(),
            entries,
        }
    }

    /// Builds a vector from `(index, count)` pairs; repeated indices add up.
    ///
    /// Panics if an index is out of range.
    pub fn from_pairs(dim: usize, pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut dense = vec![0u32; dim];
        for (i, c) in pairs {
            assert!(i < dim, "index {i} out of range for dimension {dim}");
            dense[i] += c;
        }
        Self::from_dense(&dense)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, idx: usize) -> u32 {
        self.entries
            .binary_search_by_key(&idx, |&(i, _)| i)
            .map(|pos| self.entries[pos].1)
            .unwrap_or(0)
    }

    /// Nonzero `(index, count)` pairs in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.entries.iter().copied()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&(_, c)| u64::from(c)).sum()
    }

    pub fn to_dense(&self) -> Vec<u32> {
        let mut dense = vec![0; self.dim];
        for &(i, c) in &self.entries {
            dense[i] = c;
        }
        dense
    }

    pub fn dot(&self, weights: &[f64]) -> f64 {
        self.entries.iter().map(|&(i, c)| weights[i] * f64::from(c)).sum()
    }

    pub fn squared_norm(&self) -> u64 {
        self.entries.iter().map(|&(_, c)| u64::from(c) * u64::from(c)).sum()
    }

    /// Exact squared Euclidean distance.
    pub fn squared_distance(&self, other: &CountVector) -> u64 {
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        let mut acc = 0u64;
        loop {
            let diff = match (a.peek(), b.peek()) {
                (Some(&&(i, x)), Some(&&(j, y))) => {
                    if i == j {
                        a.next();
                        b.next();
                        u64::from(x.abs_diff(y))
                    } else if i < j {
                        a.next();
                        u64::from(x)
                    } else {
                        b.next();
                        u64::from(y)
                    }
                }
                (Some(&&(_, x)), None) => {
                    a.next();
                    u64::from(x)
                }
                (None, Some(&&(_, y))) => {
                    b.next();
                    u64::from(y)
                }
                (None, None) => break,
            };
            acc += diff * diff;
        }
        acc
    }
}

/// Counts in-vocabulary tokens; unknown words are ignored.
pub fn vectorize_doc(tokens: &[String], vocab: &Vocabulary) -> CountVector {
    CountVector::from_pairs(
        vocab.len(),
        tokens.iter().filter_map(|t| vocab.index_of(t)).map(|i| (i, 1)),
    )
}

/// Words × documents count matrix, stored column-wise.
#[derive(Debug, Clone, PartialEq)]
pub struct TermDocumentMatrix {
    vocabulary: Vocabulary,
    columns: Vec<CountVector>,
}

/// One nonzero cell of the sparse JSON export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TdmEntry {
    pub word: String,
    pub doc_index: usize,
    pub count: u32,
}

impl TermDocumentMatrix {
    /// `(N words, m documents)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.vocabulary.len(), self.columns.len())
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn column(&self, doc: usize) -> &CountVector {
        &self.columns[doc]
    }

    pub fn columns(&self) -> &[CountVector] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<CountVector> {
        self.columns
    }

    pub fn get(&self, word: usize, doc: usize) -> u32 {
        self.columns[doc].get(word)
    }

    /// Total corpus frequency of each vocabulary word.
    pub fn row_sums(&self) -> Vec<u64> {
        let mut sums = vec![0u64; self.vocabulary.len()];
        for col in &self.columns {
            for (i, c) in col.iter() {
                sums[i] += u64::from(c);
            }
        }
        sums
    }

    pub fn column_sums(&self) -> Vec<u64> {
        self.columns.iter().map(CountVector::total).collect()
    }

    /// Dense `N × m` copy, row-major.
    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        let (n, m) = self.shape();
        let mut rows = vec![vec![0u32; m]; n];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col.iter() {
                rows[i][j] = c;
            }
        }
        rows
    }

    /// Nonzero cells ordered by document, then word index.
    pub fn sparse_entries(&self) -> Vec<TdmEntry> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, col)| {
                col.iter().map(move |(i, count)| TdmEntry {
                    word: self.vocabulary.words()[i].clone(),
                    doc_index: j,
                    count,
                })
            })
            .collect()
    }

    /// Dense CSV: header `word,<doc ids…>`, then one row per word.
    pub fn write_csv<W: Write>(&self, writer: W, doc_ids: &[String]) -> csv::Result<()> {
        assert_eq!(doc_ids.len(), self.columns.len(), "one id per document column");
        let mut wtr = csv::Writer::from_writer(writer);
        let mut header = vec!["word".to_string()];
        header.extend(doc_ids.iter().cloned());
        wtr.write_record(&header)?;
        for (word, row) in self.vocabulary.words().iter().zip(self.to_dense()) {
            let mut record = vec![word.clone()];
            record.extend(row.iter().map(u32::to_string));
            wtr.write_record(&record)?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn write_sparse_json<W: Write>(&self, writer: W) -> serde_json::Result<()> {
        serde_json::to_writer_pretty(writer, &self.sparse_entries())
    }
}

/// Vectorizes every document against a frozen vocabulary.
pub fn build_tdm(docs: &[Vec<String>], vocab: &Vocabulary) -> TermDocumentMatrix {
    TermDocumentMatrix {
        vocabulary: vocab.clone(),
        columns: docs.iter().map(|d| vectorize_doc(d, vocab)).collect(),
    }
}
