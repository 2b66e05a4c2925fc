//! One-vs-rest linear SVM trained by stochastic subgradient descent on the
//! primal hinge objective
//!
//! ```text
//! lambda/2 * |w|^2 + 1/n * sum_i max(0, 1 - y_i (w . x_i + b))
//! ```
//!
//! with step size `1 / (lambda * t)`. The bias is learned as the weight of a
//! constant feature and is regularised with the rest of `w`.
//!
//! Each binary problem draws its visiting order from its own ChaCha stream,
//! seeded from the run seed and the class name, so results are bit-for-bit
//! reproducible and independent of how many classes there are.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{check_dim, Classifier, ClassifierError, LabeledDataset};
use crate::seed;
use crate::vectorize::CountVector;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvmParams {
    pub lambda: f64,
    pub epochs: usize,
    pub seed: u64,
    /// Scale every input to unit Euclidean norm before training and
    /// prediction.
    pub l2_normalize: bool,
}

impl Default for SvmParams {
    fn default() -> Self {
        SvmParams {
            lambda: 1e-5,
            epochs: 100,
            seed: 0,
            l2_normalize: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearSvm {
    classes: Vec<String>,
    params: SvmParams,
    weights: Vec<Vec<f64>>,
    biases: Vec<f64>,
}

/// Per class, the training objective measured after every epoch at the
/// running average of the epoch-end iterates.
#[derive(Debug, Clone, PartialEq)]
pub struct SvmTrainingHistory {
    pub objectives: Vec<Vec<f64>>,
}

impl LinearSvm {
    /// Builds a model from explicit parameters.
    ///
    /// Panics if the shapes disagree.
    pub fn from_parts(classes: Vec<String>, weights: Vec<Vec<f64>>, biases: Vec<f64>, params: SvmParams) -> Self {
        assert_eq!(classes.len(), weights.len());
        assert_eq!(classes.len(), biases.len());
        if let Some(first) = weights.first() {
            assert!(weights.iter().all(|w| w.len() == first.len()));
        }
        LinearSvm {
            classes,
            params,
            weights,
            biases,
        }
    }

    pub fn params(&self) -> &SvmParams {
        &self.params
    }

    pub fn weights(&self, class: usize) -> &[f64] {
        &self.weights[class]
    }

    pub fn bias(&self, class: usize) -> f64 {
        self.biases[class]
    }

    /// `w_c . x + b_c` for every class.
    pub fn decision_scores(&self, x: &CountVector) -> Result<Vec<f64>, ClassifierError> {
        check_dim(self.dim(), x)?;
        let features = features_of(x, self.params.l2_normalize);
        Ok(self
            .weights
            .iter()
            .zip(&self.biases)
            .map(|(w, b)| features.iter().map(|&(i, v)| w[i] * v).sum::<f64>() + b)
            .collect())
    }
}

fn features_of(x: &CountVector, l2_normalize: bool) -> Vec<(usize, f64)> {
    let norm = if l2_normalize {
        (x.squared_norm() as f64).sqrt()
    } else {
        1.0
    };
    let scale = if norm > 0.0 { 1.0 / norm } else { 1.0 };
    x.iter().map(|(i, c)| (i, f64::from(c) * scale)).collect()
}

pub fn train_svm(data: &LabeledDataset, params: SvmParams) -> Result<LinearSvm, ClassifierError> {
    train_svm_with_history(data, params).map(|(model, _)| model)
}

pub fn train_svm_with_history(
    data: &LabeledDataset,
    params: SvmParams,
) -> Result<(LinearSvm, SvmTrainingHistory), ClassifierError> {
    if !(params.lambda > 0.0 && params.lambda.is_finite()) {
        return Err(ClassifierError::InvalidLambda(params.lambda));
    }
    if params.epochs == 0 {
        return Err(ClassifierError::InvalidEpochs);
    }
    let present = data.classes_present();
    if present < 2 {
        return Err(ClassifierError::TooFewClasses(present));
    }

    let examples: Vec<Vec<(usize, f64)>> = data
        .vectors()
        .iter()
        .map(|x| features_of(x, params.l2_normalize))
        .collect();
    let mut weights = Vec::with_capacity(data.classes().len());
    let mut biases = Vec::with_capacity(data.classes().len());
    let mut objectives = Vec::with_capacity(data.classes().len());
    for (c, name) in data.classes().iter().enumerate() {
        let targets: Vec<f64> = data.labels().iter().map(|&l| if l == c { 1.0 } else { -1.0 }).collect();
        let class_seed = seed::fork(params.seed, &format!("svm-class-{name}"));
        let fit = fit_binary(
            &examples,
            &targets,
            data.dim(),
            params.lambda,
            params.epochs,
            class_seed,
        );
        weights.push(fit.weights);
        biases.push(fit.bias);
        objectives.push(fit.objectives);
    }
    let model = LinearSvm {
        classes: data.classes().to_vec(),
        params,
        weights,
        biases,
    };
    Ok((model, SvmTrainingHistory { objectives }))
}

struct BinaryFit {
    weights: Vec<f64>,
    bias: f64,
    objectives: Vec<f64>,
}

/// Weight vector stored as `scale * v` so the per-step shrink is O(1).
/// The last slot of `v` is the bias.
struct ScaledVector {
    v: Vec<f64>,
    scale: f64,
}

impl ScaledVector {
    fn dot(&self, x: &[(usize, f64)]) -> f64 {
        let bias = self.v.len() - 1;
        self.scale * (x.iter().map(|&(i, val)| self.v[i] * val).sum::<f64>() + self.v[bias])
    }

    fn shrink(&mut self, factor: f64) {
        if factor == 0.0 {
            self.v.iter_mut().for_each(|x| *x = 0.0);
            self.scale = 1.0;
        } else {
            self.scale *= factor;
            if self.scale < 1e-9 {
                let s = self.scale;
                self.v.iter_mut().for_each(|x| *x *= s);
                self.scale = 1.0;
            }
        }
    }

    fn add(&mut self, x: &[(usize, f64)], coeff: f64) {
        let c = coeff / self.scale;
        for &(i, val) in x {
            self.v[i] += c * val;
        }
        let bias = self.v.len() - 1;
        self.v[bias] += c;
    }

    fn materialize(&self) -> Vec<f64> {
        self.v.iter().map(|x| x * self.scale).collect()
    }
}

fn objective(w: &[f64], examples: &[Vec<(usize, f64)>], targets: &[f64], lambda: f64) -> f64 {
    let bias = w[w.len() - 1];
    let reg = 0.5 * lambda * w.iter().map(|x| x * x).sum::<f64>();
    let hinge: f64 = examples
        .iter()
        .zip(targets)
        .map(|(x, &y)| {
            let score = x.iter().map(|&(i, v)| w[i] * v).sum::<f64>() + bias;
            (1.0 - y * score).max(0.0)
        })
        .sum();
    reg + hinge / examples.len() as f64
}

fn fit_binary(
    examples: &[Vec<(usize, f64)>],
    targets: &[f64],
    dim: usize,
    lambda: f64,
    epochs: usize,
    seed: u64,
) -> BinaryFit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = ScaledVector {
        v: vec![0.0; dim + 1],
        scale: 1.0,
    };
    let mut order: Vec<usize> = (0..examples.len()).collect();
    let mut average_sum = vec![0.0; dim + 1];
    let mut objectives = Vec::with_capacity(epochs);
    let mut t = 0u64;
    for epoch in 1..=epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            t += 1;
            let eta = 1.0 / (lambda * t as f64);
            let violated = targets[i] * w.dot(&examples[i]) < 1.0;
            w.shrink(1.0 - 1.0 / t as f64);
            if violated {
                w.add(&examples[i], eta * targets[i]);
            }
        }
        for (acc, x) in average_sum.iter_mut().zip(w.materialize()) {
            *acc += x;
        }
        let average: Vec<f64> = average_sum.iter().map(|x| x / epoch as f64).collect();
        objectives.push(objective(&average, examples, targets, lambda));
    }
    let mut weights = w.materialize();
    let bias = weights.pop().unwrap_or(0.0);
    BinaryFit {
        weights,
        bias,
        objectives,
    }
}

/// Class with the largest decision score; the first class wins ties.
pub fn predict_svm(model: &LinearSvm, x: &CountVector) -> Result<usize, ClassifierError> {
    let scores = model.decision_scores(x)?;
    let mut best = 0;
    for (c, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = c;
        }
    }
    Ok(best)
}

impl Classifier for LinearSvm {
    fn classes(&self) -> &[String] {
        &self.classes
    }

    fn dim(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    fn predict(&self, x: &CountVector) -> Result<usize, ClassifierError> {
        predict_svm(self, x)
    }
}
