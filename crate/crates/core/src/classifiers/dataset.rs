use super::ClassifierError;
use crate::vectorize::CountVector;

/// Count vectors with parallel class indices into `classes`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    vectors: Vec<CountVector>,
    labels: Vec<usize>,
    classes: Vec<String>,
    dim: usize,
}

impl LabeledDataset {
    /// `dim` is the shared vector dimension; it is required so that an empty
    /// dataset still knows its feature space.
    pub fn new(
        vectors: Vec<CountVector>,
        labels: Vec<usize>,
        classes: Vec<String>,
        dim: usize,
    ) -> Result<Self, ClassifierError> {
        if vectors.len() != labels.len() {
            return Err(ClassifierError::LengthMismatch {
                vectors: vectors.len(),
                labels: labels.len(),
            });
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= classes.len()) {
            return Err(ClassifierError::UnknownClass(bad));
        }
        if let Some(v) = vectors.iter().find(|v| v.dim() != dim) {
            return Err(ClassifierError::DimensionMismatch {
                expected: dim,
                got: v.dim(),
            });
        }
        Ok(LabeledDataset {
            vectors,
            labels,
            classes,
            dim,
        })
    }

    pub fn vectors(&self) -> &[CountVector] {
        &self.vectors
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.classes.len()];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    /// Number of distinct classes that actually occur.
    pub fn classes_present(&self) -> usize {
        self.class_counts().iter().filter(|&&c| c > 0).count()
    }
}
