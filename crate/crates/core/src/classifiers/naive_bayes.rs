//! Multinomial naive Bayes with additive smoothing.
//!
//! For class `c` and word `w`:
//!
//! ```text
//! P(c)   = docs(c) / docs
//! P(w|c) = (count(w, c) + alpha) / (tokens(c) + alpha * N)
//! ```
//!
//! Prediction picks the class maximising `log P(c) + sum_k x_k log P(w_k|c)`;
//! the evidence term `P(d)` is the same for every class and is dropped.

use serde::{Deserialize, Serialize};

use super::{argmax_first, check_dim, Classifier, ClassifierError, LabeledDataset};
use crate::vectorize::CountVector;

/// Log-scores closer than this (relative) are treated as ties.
const TIE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NaiveBayes {
    classes: Vec<String>,
    alpha: f64,
    class_log_priors: Vec<f64>,
    /// `classes × N`, row-major per class.
    word_log_likelihoods: Vec<Vec<f64>>,
}

impl NaiveBayes {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn class_log_priors(&self) -> &[f64] {
        &self.class_log_priors
    }

    pub fn word_log_likelihoods(&self, class: usize) -> &[f64] {
        &self.word_log_likelihoods[class]
    }

    /// Unnormalised log posterior of every class.
    pub fn log_scores(&self, x: &CountVector) -> Result<Vec<f64>, ClassifierError> {
        check_dim(self.dim(), x)?;
        Ok(self
            .class_log_priors
            .iter()
            .zip(&self.word_log_likelihoods)
            .map(|(prior, ll)| prior + x.dot(ll))
            .collect())
    }
}

pub fn train_nb(data: &LabeledDataset, alpha: f64) -> Result<NaiveBayes, ClassifierError> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(ClassifierError::InvalidAlpha(alpha));
    }
    let n_classes = data.classes().len();
    let dim = data.dim();
    let doc_counts = data.class_counts();
    if let Some(missing) = doc_counts.iter().position(|&c| c == 0) {
        return Err(ClassifierError::MissingClass(data.classes()[missing].clone()));
    }

    let mut word_counts = vec![vec![0u64; dim]; n_classes];
    let mut token_totals = vec![0u64; n_classes];
    for (x, &label) in data.vectors().iter().zip(data.labels()) {
        for (k, c) in x.iter() {
            word_counts[label][k] += u64::from(c);
            token_totals[label] += u64::from(c);
        }
    }

    let total_docs = data.len() as f64;
    let class_log_priors = doc_counts.iter().map(|&c| (c as f64 / total_docs).ln()).collect();
    let word_log_likelihoods = word_counts
        .iter()
        .zip(&token_totals)
        .map(|(counts, &total)| {
            let denom = (total as f64 + alpha * dim as f64).ln();
            counts.iter().map(|&c| (c as f64 + alpha).ln() - denom).collect()
        })
        .collect();

    Ok(NaiveBayes {
        classes: data.classes().to_vec(),
        alpha,
        class_log_priors,
        word_log_likelihoods,
    })
}

pub fn predict_nb(model: &NaiveBayes, x: &CountVector) -> Result<usize, ClassifierError> {
    Ok(argmax_first(&model.log_scores(x)?, TIE_TOLERANCE))
}

impl Classifier for NaiveBayes {
    fn classes(&self) -> &[String] {
        &self.classes
    }

    fn dim(&self) -> usize {
        self.word_log_likelihoods.first().map_or(0, Vec::len)
    }

    fn predict(&self, x: &CountVector) -> Result<usize, ClassifierError> {
        predict_nb(self, x)
    }
}
