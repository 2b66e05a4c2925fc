//! Opinion mining over short social-media texts.
//!
//! The crate covers the whole batch pipeline: loading exported post dumps
//! ([`corpus_io`]), cleaning them into token lists ([`preprocess`]), counting
//! words into term-document matrices ([`vectorize`]), lexicon polarity and
//! subjectivity ([`lexicon`]), frequent-term extraction ([`topics`]), three
//! supervised classifiers ([`classifiers`]) and their evaluation
//! ([`metrics`]). The [`cli`] module wires these together behind the
//! `opinion-mining` binary.
//!
//! ```
//! use opinion_mining::preprocess::{build_vocabulary, preprocess_post, PreprocessConfig};
//! use opinion_mining::vectorize::vectorize_doc;
//!
//! let cfg = PreprocessConfig::default();
//! let docs = vec![
//!     preprocess_post("Authorities wait to declare a mandatory quarantine in Colombia!", &cfg),
//!     preprocess_post("control measures Italy Colombia trapped Italy outside Colombia", &cfg),
//! ];
//! let vocab = build_vocabulary(&docs);
//! assert_eq!(vectorize_doc(&docs[1], &vocab).to_dense(), [0, 0, 0, 0, 0, 2, 1, 1, 2, 1, 1]);
//! ```

pub mod classifiers;
pub mod cli;
pub mod corpus_io;
pub mod lexicon;
pub mod metrics;
pub mod preprocess;
pub mod seed;
pub mod sentiment;
pub mod topics;
pub mod vectorize;

pub use sentiment::Sentiment;

/// The guide's code samples, compiled and run as doc-tests so the book stays
/// in step with the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/preprocessing.md")]
    mod preprocessing {}
    #[doc = include_str!("../../../book/src/vectorization.md")]
    mod vectorization {}
    #[doc = include_str!("../../../book/src/sentiment.md")]
    mod sentiment {}
    #[doc = include_str!("../../../book/src/topics.md")]
    mod topics {}
    #[doc = include_str!("../../../book/src/classifiers.md")]
    mod classifiers {}
    #[doc = include_str!("../../../book/src/evaluation.md")]
    mod evaluation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
