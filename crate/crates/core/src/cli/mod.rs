//! Batch front end: configuration, subcommands and output layout.
//!
//! Every command writes into one output directory:
//!
//! ```text
//! <out>/scores/     per-document sentiment and label distributions
//! <out>/topics/     wordcloud JSON per dataset tag
//! <out>/models/     trained models and their vocabulary
//! <out>/reports/    evaluation tables (text and JSON)
//! <out>/tokens/     preprocessed token lists
//! <out>/tdm/        term-document matrices per dataset tag
//! <out>/run_manifest.json
//! ```

mod args;
mod commands;
mod config;

pub use args::{Cli, Command, RunArgs};
pub use commands::{
    cmd_evaluate, cmd_preprocess, cmd_score, cmd_topics, cmd_vectorize, run, EvaluateOutcome, ScoreOutcome,
    TagDistribution, TagShape, TopicsOutcome,
};
pub use config::{LabelSource, RunConfig};

use std::io;
use std::path::PathBuf;

use serde::Serialize;

use crate::classifiers::ClassifierError;
use crate::corpus_io::CorpusError;
use crate::lexicon::LexiconError;
use crate::metrics::MetricsError;
use crate::preprocess::PreprocessError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Preprocess(#[from] PreprocessError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error("cannot write {}: {source}", path.display())]
    Output { path: PathBuf, source: io::Error },
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Config(_) => "config",
            Error::Corpus(_) => "corpus",
            Error::Preprocess(_) => "preprocess",
            Error::Lexicon(_) => "lexicon",
            Error::Classifier(_) => "classifier",
            Error::Metrics(_) => "metrics",
            Error::Output { .. } => "output",
        }
    }

    /// One-line JSON error record for machine consumption.
    pub fn to_record(&self) -> String {
        #[derive(Serialize)]
        struct Record<'a> {
            status: &'a str,
            kind: &'a str,
            message: String,
        }
        serde_json::to_string(&Record {
            status: "error",
            kind: self.kind(),
            message: self.to_string(),
        })
        .expect("error record serializes")
    }
}
