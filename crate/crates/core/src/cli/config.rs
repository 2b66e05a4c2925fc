use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::Error;
use crate::classifiers::{KnnWeighting, SvmParams};
use crate::corpus_io::Format;
use crate::metrics::TnConvention;

/// Where training labels come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelSource {
    /// The gold label where a record has one, otherwise the label assigned
    /// by the lexicon scorer.
    #[default]
    Lexicon,
    /// Only records carrying a gold label.
    Gold,
}

impl FromStr for LabelSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lexicon" => Ok(LabelSource::Lexicon),
            "gold" => Ok(LabelSource::Gold),
            other => Err(format!("unknown label source {other:?} (expected lexicon or gold)")),
        }
    }
}

impl fmt::Display for LabelSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LabelSource::Lexicon => "lexicon",
            LabelSource::Gold => "gold",
        })
    }
}

/// Everything a run depends on. Loaded from a TOML file whose keys match the
/// field names; command-line flags override file values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub posts: Option<PathBuf>,
    /// Post file format; inferred from the extension when absent.
    pub format: Option<Format>,
    pub stopwords: Option<PathBuf>,
    /// Lexicon TSV; the bundled demonstration lexicon is used when absent.
    pub lexicon: Option<PathBuf>,
    pub translate_table: Option<PathBuf>,
    pub split_ratio: f64,
    pub seed: u64,
    pub alpha: f64,
    pub lambda: f64,
    pub epochs: usize,
    pub svm_l2_normalize: bool,
    pub k: usize,
    pub knn_weighting: KnnWeighting,
    pub tn_convention: TnConvention,
    pub label_source: LabelSource,
    pub top_k: usize,
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        let svm = SvmParams::default();
        RunConfig {
            posts: None,
            format: None,
            stopwords: None,
            lexicon: None,
            translate_table: None,
            split_ratio: 0.85,
            seed: 42,
            alpha: 1.0,
            lambda: svm.lambda,
            epochs: svm.epochs,
            svm_l2_normalize: svm.l2_normalize,
            k: 3,
            knn_weighting: KnnWeighting::Uniform,
            tn_convention: TnConvention::Paper,
            label_source: LabelSource::Lexicon,
            top_k: 100,
            out: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, Error> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<(), Error> {
        let fail = |msg: String| Err(Error::Config(msg));
        if !(self.split_ratio > 0.0 && self.split_ratio < 1.0) {
            return fail(format!("split ratio must lie in (0, 1), got {}", self.split_ratio));
        }
        if self.k < 1 {
            return fail("k must be at least 1".into());
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return fail(format!("alpha must be positive, got {}", self.alpha));
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return fail(format!("lambda must be positive, got {}", self.lambda));
        }
        if self.epochs < 1 {
            return fail("epochs must be at least 1".into());
        }
        if self.top_k < 1 {
            return fail("top-k must be at least 1".into());
        }
        Ok(())
    }

    pub fn posts_path(&self) -> Result<&Path, Error> {
        self.posts
            .as_deref()
            .ok_or_else(|| Error::Config("no posts file configured (--posts)".into()))
    }

    pub fn posts_format(&self) -> Format {
        self.format
            .unwrap_or_else(|| match self.posts.as_deref().and_then(|p| p.extension()) {
                Some(ext) if ext.eq_ignore_ascii_case("csv") => Format::Csv,
                _ => Format::Jsonl,
            })
    }

    pub fn svm_params(&self) -> SvmParams {
        SvmParams {
            lambda: self.lambda,
            epochs: self.epochs,
            seed: self.seed,
            l2_normalize: self.svm_l2_normalize,
        }
    }

    /// Hex SHA-256 of the canonical JSON form of this config.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        Sha256::digest(json.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}
