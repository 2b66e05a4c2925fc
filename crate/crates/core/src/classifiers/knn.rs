//! k-nearest-neighbour classification under Euclidean distance.

use serde::{Deserialize, Serialize};

use super::{check_dim, Classifier, ClassifierError, LabeledDataset};
use crate::vectorize::CountVector;

/// Added to distances before inverting them.
pub const INVERSE_DISTANCE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KnnWeighting {
    /// One vote per neighbour.
    #[default]
    Uniform,
    /// Each neighbour votes `1 / (d + 1e-9)`.
    Inverse,
}

/// Lazy learner: stores the training set verbatim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnnModel {
    classes: Vec<String>,
    dim: usize,
    k: usize,
    weighting: KnnWeighting,
    vectors: Vec<CountVector>,
    labels: Vec<usize>,
}

impl KnnModel {
    pub fn fit(data: &LabeledDataset, k: usize, weighting: KnnWeighting) -> Result<Self, ClassifierError> {
        if data.is_empty() {
            return Err(ClassifierError::EmptyModel);
        }
        if k == 0 || k > data.len() {
            return Err(ClassifierError::InvalidK { k, stored: data.len() });
        }
        Ok(KnnModel {
            classes: data.classes().to_vec(),
            dim: data.dim(),
            k,
            weighting,
            vectors: data.vectors().to_vec(),
            labels: data.labels().to_vec(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn weighting(&self) -> KnnWeighting {
        self.weighting
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// The `k` stored points closest to `x` as `(squared distance, index)`,
    /// nearest first. Equal distances are ordered by training index.
    pub fn neighbors(&self, x: &CountVector) -> Result<Vec<(u64, usize)>, ClassifierError> {
        if self.vectors.is_empty() {
            return Err(ClassifierError::EmptyModel);
        }
        check_dim(self.dim, x)?;
        let mut dists: Vec<(u64, usize)> = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, v)| (v.squared_distance(x), i))
            .collect();
        let k = self.k.min(dists.len());
        if k < dists.len() {
            dists.select_nth_unstable(k - 1);
            dists.truncate(k);
        }
        dists.sort_unstable();
        Ok(dists)
    }
}

pub fn predict_knn(model: &KnnModel, x: &CountVector) -> Result<usize, ClassifierError> {
    let neighbors = model.neighbors(x)?;
    let mut votes = vec![0.0f64; model.classes.len()];
    for (sq, idx) in neighbors {
        let w = match model.weighting {
            KnnWeighting::Uniform => 1.0,
            KnnWeighting::Inverse => 1.0 / ((sq as f64).sqrt() + INVERSE_DISTANCE_EPS),
        };
        votes[model.labels[idx]] += w;
    }
    let mut best = 0;
    for (c, &v) in votes.iter().enumerate().skip(1) {
        if v > votes[best] {
            best = c;
        }
    }
    Ok(best)
}

impl Classifier for KnnModel {
    fn classes(&self) -> &[String] {
        &self.classes
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn predict(&self, x: &CountVector) -> Result<usize, ClassifierError> {
        predict_knn(self, x)
    }
}
