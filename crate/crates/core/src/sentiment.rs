use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The three sentiment classes. Declaration order is the canonical class
/// order used for tie-breaking and report layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sentiment {
    Positive,
    Neutral,
    Negative,
}

impl Sentiment {
    pub const ALL: [Sentiment; 3] = [Sentiment::Positive, Sentiment::Neutral, Sentiment::Negative];

    pub fn as_str(self) -> &'static str {
        match self {
            Sentiment::Positive => "positive",
            Sentiment::Neutral => "neutral",
            Sentiment::Negative => "negative",
        }
    }

    /// Sign rule: positive iff `polarity > 0`, negative iff `< 0`.
    /// Magnitudes below `1e-12` count as zero.
    pub fn from_polarity(polarity: f64) -> Sentiment {
        if polarity > NEUTRAL_GUARD {
            Sentiment::Positive
        } else if polarity < -NEUTRAL_GUARD {
            Sentiment::Negative
        } else {
            Sentiment::Neutral
        }
    }
}

pub(crate) const NEUTRAL_GUARD: f64 = 1e-12;

impl fmt::Display for Sentiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown label {0:?} (expected positive, neutral or negative)")]
pub struct UnknownLabel(pub String);

impl FromStr for Sentiment {
    type Err = UnknownLabel;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "positive" => Ok(Sentiment::Positive),
            "neutral" => Ok(Sentiment::Neutral),
            "negative" => Ok(Sentiment::Negative),
            other => Err(UnknownLabel(other.to_string())),
        }
    }
}
