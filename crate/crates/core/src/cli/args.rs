use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::{Error, LabelSource, RunConfig};
use crate::classifiers::KnnWeighting;
use crate::corpus_io::Format;
use crate::metrics::TnConvention;

#[derive(Debug, Parser)]
#[command(
    name = "opinion-mining",
    version,
    about = "Batch opinion mining over exported short-text dumps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score every post with the lexicon and count labels per dataset tag.
    Score(RunArgs),
    /// Write the most frequent terms of each dataset tag.
    Topics(RunArgs),
    /// Train NB, k-NN and linear SVM on a split and report test metrics.
    Evaluate(RunArgs),
    /// Dump preprocessed token lists.
    Preprocess(RunArgs),
    /// Dump the term-document matrix of each dataset tag.
    Vectorize(RunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Score(_) => "score",
            Command::Topics(_) => "topics",
            Command::Evaluate(_) => "evaluate",
            Command::Preprocess(_) => "preprocess",
            Command::Vectorize(_) => "vectorize",
        }
    }

    pub fn args(&self) -> &RunArgs {
        match self {
            Command::Score(a)
            | Command::Topics(a)
            | Command::Evaluate(a)
            | Command::Preprocess(a)
            | Command::Vectorize(a) => a,
        }
    }
}

fn parse_knn_weighting(s: &str) -> Result<KnnWeighting, String> {
    match s {
        "uniform" => Ok(KnnWeighting::Uniform),
        "inverse" => Ok(KnnWeighting::Inverse),
        other => Err(format!("unknown weighting {other:?} (expected uniform or inverse)")),
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// TOML config file; flags given here override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub posts: Option<PathBuf>,
    /// jsonl or csv
    #[arg(long)]
    pub format: Option<Format>,
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    #[arg(long = "translate-table")]
    pub translate_table: Option<PathBuf>,
    #[arg(long = "split-ratio")]
    pub split_ratio: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub epochs: Option<usize>,
    /// Scale SVM inputs to unit norm.
    #[arg(long = "svm-l2-normalize")]
    pub svm_l2_normalize: bool,
    #[arg(long = "k")]
    pub k: Option<usize>,
    /// uniform or inverse
    #[arg(long = "knn-weighting", value_parser = parse_knn_weighting)]
    pub knn_weighting: Option<KnnWeighting>,
    /// paper or standard
    #[arg(long = "tn-convention")]
    pub tn_convention: Option<TnConvention>,
    /// lexicon (gold label where present, else the lexicon label) or gold (gold-labelled posts only)
    #[arg(long = "label-source")]
    pub label_source: Option<LabelSource>,
    #[arg(long = "top-k")]
    pub top_k: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunArgs {
    /// Config file (or defaults) with every given flag applied on top.
    pub fn resolve(&self) -> Result<RunConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($($field:ident),*) => {
                $(if let Some(v) = &self.$field { cfg.$field = v.clone().into(); })*
            };
        }
        set!(posts, format, stopwords, lexicon, translate_table);
        set!(
            split_ratio,
            seed,
            alpha,
            lambda,
            epochs,
            k,
            knn_weighting,
            tn_convention,
            label_source,
            top_k,
            out
        );
        if self.svm_l2_normalize {
            cfg.svm_l2_normalize = true;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}
