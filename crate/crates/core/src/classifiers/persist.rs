//! Versioned JSON model files.
//!
//! Every file records the checksum of the vocabulary the model was trained
//! in; loading against any other vocabulary fails.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Classifier, ClassifierError, KnnModel, LinearSvm, NaiveBayes};
use crate::preprocess::Vocabulary;
use crate::vectorize::CountVector;

pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Model {
    NaiveBayes(NaiveBayes),
    Knn(KnnModel),
    LinearSvm(LinearSvm),
}

impl Classifier for Model {
    fn classes(&self) -> &[String] {
        match self {
            Model::NaiveBayes(m) => m.classes(),
            Model::Knn(m) => m.classes(),
            Model::LinearSvm(m) => m.classes(),
        }
    }

    fn dim(&self) -> usize {
        match self {
            Model::NaiveBayes(m) => m.dim(),
            Model::Knn(m) => m.dim(),
            Model::LinearSvm(m) => m.dim(),
        }
    }

    fn predict(&self, x: &CountVector) -> Result<usize, ClassifierError> {
        match self {
            Model::NaiveBayes(m) => m.predict(x),
            Model::Knn(m) => m.predict(x),
            Model::LinearSvm(m) => m.predict(x),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format_version: u32,
    vocabulary_checksum: String,
    vocabulary_size: usize,
    model: Model,
}

#[derive(Deserialize)]
struct VersionProbe {
    format_version: u32,
}

impl Model {
    pub fn to_json(&self, vocab: &Vocabulary) -> Result<String, ClassifierError> {
        let file = ModelFile {
            format_version: MODEL_FORMAT_VERSION,
            vocabulary_checksum: vocab.checksum(),
            vocabulary_size: vocab.len(),
            model: self.clone(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str, vocab: &Vocabulary) -> Result<Model, ClassifierError> {
        let probe: VersionProbe = serde_json::from_str(text)?;
        if probe.format_version != MODEL_FORMAT_VERSION {
            return Err(ClassifierError::UnsupportedVersion(probe.format_version));
        }
        let file: ModelFile = serde_json::from_str(text)?;
        let expected = vocab.checksum();
        if file.vocabulary_checksum != expected {
            return Err(ClassifierError::VocabularyMismatch {
                expected,
                found: file.vocabulary_checksum,
            });
        }
        Ok(file.model)
    }
}

pub fn save_model(path: &Path, model: &Model, vocab: &Vocabulary) -> Result<(), ClassifierError> {
    let json = model.to_json(vocab)?;
    fs::write(path, json + "\n").map_err(|source| ClassifierError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_model(path: &Path, vocab: &Vocabulary) -> Result<Model, ClassifierError> {
    let text = fs::read_to_string(path).map_err(|source| ClassifierError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Model::from_json(&text, vocab)
}
