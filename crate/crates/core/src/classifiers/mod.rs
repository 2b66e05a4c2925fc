//! Supervised sentiment classifiers over count vectors: multinomial naive
//! Bayes, k-nearest neighbours and a one-vs-rest linear SVM.
//!
//! All models work with class *indices* into an ordered class list; that
//! order is also the tie-break order when two classes score the same.

mod dataset;
mod knn;
mod naive_bayes;
mod persist;
mod svm;

pub use dataset::LabeledDataset;
pub use knn::{predict_knn, KnnModel, KnnWeighting, INVERSE_DISTANCE_EPS};
pub use naive_bayes::{predict_nb, train_nb, NaiveBayes};
pub use persist::{load_model, save_model, Model, MODEL_FORMAT_VERSION};
pub use svm::{predict_svm, train_svm, train_svm_with_history, LinearSvm, SvmParams, SvmTrainingHistory};

use std::path::PathBuf;

use crate::vectorize::CountVector;

#[derive(Debug, thiserror::Error)]
pub enum ClassifierError {
    #[error("{vectors} vectors but {labels} labels")]
    LengthMismatch { vectors: usize, labels: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("label index {0} is outside the class list")]
    UnknownClass(usize),
    #[error("class {0:?} has no training examples")]
    MissingClass(String),
    #[error("at least two classes are required, found {0}")]
    TooFewClasses(usize),
    #[error("smoothing constant must be positive, got {0}")]
    InvalidAlpha(f64),
    #[error("regularization must be positive, got {0}")]
    InvalidLambda(f64),
    #[error("epochs must be at least 1")]
    InvalidEpochs,
    #[error("k = {k} is invalid for {stored} stored vectors")]
    InvalidK { k: usize, stored: usize },
    #[error("model has no stored training vectors")]
    EmptyModel,
    #[error("model was trained on a different vocabulary (checksum {found}, expected {expected})")]
    VocabularyMismatch { expected: String, found: String },
    #[error("unsupported model format version {0}")]
    UnsupportedVersion(u32),
    #[error("cannot access {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("model JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Common prediction interface.
pub trait Classifier {
    fn classes(&self) -> &[String];

    fn dim(&self) -> usize;

    /// Index of the predicted class.
    fn predict(&self, x: &CountVector) -> Result<usize, ClassifierError>;

    fn predict_name(&self, x: &CountVector) -> Result<&str, ClassifierError> {
        let idx = self.predict(x)?;
        Ok(&self.classes()[idx])
    }

    fn predict_all(&self, xs: &[CountVector]) -> Result<Vec<usize>, ClassifierError> {
        xs.iter().map(|x| self.predict(x)).collect()
    }
}

fn check_dim(expected: usize, x: &CountVector) -> Result<(), ClassifierError> {
    if x.dim() == expected {
        Ok(())
    } else {
        Err(ClassifierError::DimensionMismatch { expected, got: x.dim() })
    }
}

/// Index of the largest score; on equal scores the earliest index wins.
/// Scores within `tolerance` of the running best count as equal.
fn argmax_first(scores: &[f64], tolerance: f64) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        let margin = tolerance * scores[best].abs().max(1.0);
        if s > scores[best] + margin {
            best = i;
        }
    }
    best
}
