//! Confusion matrices, per-class accuracy/precision and their micro/macro
//! averages.
//!
//! Per-class quantities for class `i` of a `K × K` matrix `c` (rows are true
//! classes, columns predictions):
//!
//! ```text
//! TP_i = c[i][i]
//! FP_i = column_i - c[i][i]
//! FN_i = row_i    - c[i][i]
//! TN_i = trace - c[i][i]                      (diagonal convention, default)
//!      = total - row_i - column_i + c[i][i]   (standard convention)
//!
//! accuracy_i  = (TP_i + TN_i) / (TP_i + TN_i + FP_i + FN_i)
//! precision_i = TP_i / (TP_i + FP_i)
//! ```
//!
//! A `0/0` rate is reported as `0` and flagged as undefined.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricsError {
    #[error("{truth} true labels but {pred} predictions")]
    LengthMismatch { truth: usize, pred: usize },
    #[error("label {0:?} is not in the class list")]
    UnknownLabel(String),
    #[error("class index {index} out of range for {classes} classes")]
    InvalidIndex { index: usize, classes: usize },
    #[error("confusion matrix is empty")]
    Empty,
}

/// How `TN_i` is counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TnConvention {
    /// Sum of the diagonal entries other than `c[i][i]`.
    #[default]
    Paper,
    /// Every cell outside row `i` and column `i`.
    Standard,
}

impl FromStr for TnConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(TnConvention::Paper),
            "standard" => Ok(TnConvention::Standard),
            other => Err(format!("unknown TN convention {other:?} (expected paper or standard)")),
        }
    }
}

impl fmt::Display for TnConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TnConvention::Paper => "paper",
            TnConvention::Standard => "standard",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    classes: Vec<String>,
    counts: Vec<Vec<u64>>,
}

impl ConfusionMatrix {
    /// Builds a matrix from explicit counts (`counts[true][pred]`).
    ///
    /// Panics unless `counts` is square with one row per class.
    pub fn from_counts(classes: Vec<String>, counts: Vec<Vec<u64>>) -> Self {
        assert_eq!(counts.len(), classes.len(), "one row per class");
        assert!(counts.iter().all(|r| r.len() == classes.len()), "matrix must be square");
        ConfusionMatrix { classes, counts }
    }

    /// Counts `(truth, pred)` class-index pairs.
    pub fn from_indices(classes: Vec<String>, truth: &[usize], pred: &[usize]) -> Result<Self, MetricsError> {
        if truth.len() != pred.len() {
            return Err(MetricsError::LengthMismatch {
                truth: truth.len(),
                pred: pred.len(),
            });
        }
        let k = classes.len();
        let mut counts = vec![vec![0u64; k]; k];
        for (&t, &p) in truth.iter().zip(pred) {
            for idx in [t, p] {
                if idx >= k {
                    return Err(MetricsError::InvalidIndex { index: idx, classes: k });
                }
            }
            counts[t][p] += 1;
        }
        Ok(ConfusionMatrix { classes, counts })
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn get(&self, truth: usize, pred: usize) -> u64 {
        self.counts[truth][pred]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn trace(&self) -> u64 {
        (0..self.classes.len()).map(|i| self.counts[i][i]).sum()
    }

    pub fn row_sum(&self, i: usize) -> u64 {
        self.counts[i].iter().sum()
    }

    pub fn column_sum(&self, j: usize) -> u64 {
        self.counts.iter().map(|r| r[j]).sum()
    }
}

/// Counts `(truth, pred)` label pairs against an ordered class list.
pub fn confusion_matrix<S: AsRef<str>>(
    truth: &[S],
    pred: &[S],
    classes: &[String],
) -> Result<ConfusionMatrix, MetricsError> {
    if truth.len() != pred.len() {
        return Err(MetricsError::LengthMismatch {
            truth: truth.len(),
            pred: pred.len(),
        });
    }
    let index = |label: &S| {
        classes
            .iter()
            .position(|c| c == label.as_ref())
            .ok_or_else(|| MetricsError::UnknownLabel(label.as_ref().to_string()))
    };
    let t: Vec<usize> = truth.iter().map(index).collect::<Result<_, _>>()?;
    let p: Vec<usize> = pred.iter().map(index).collect::<Result<_, _>>()?;
    ConfusionMatrix::from_indices(classes.to_vec(), &t, &p)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassStats {
    pub class: String,
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
    pub support: u64,
    pub accuracy: f64,
    pub precision: f64,
    pub accuracy_undefined: bool,
    pub precision_undefined: bool,
}

fn rate(num: u64, den: u64) -> (f64, bool) {
    if den == 0 {
        (0.0, true)
    } else {
        (num as f64 / den as f64, false)
    }
}

pub fn per_class_stats(cm: &ConfusionMatrix, i: usize, convention: TnConvention) -> Result<ClassStats, MetricsError> {
    let k = cm.classes.len();
    if i >= k {
        return Err(MetricsError::InvalidIndex { index: i, classes: k });
    }
    let tp = cm.get(i, i);
    let row = cm.row_sum(i);
    let col = cm.column_sum(i);
    let fp = col - tp;
    let fn_ = row - tp;
    let tn = match convention {
        TnConvention::Paper => cm.trace() - tp,
        TnConvention::Standard => cm.total() + tp - row - col,
    };
    let (accuracy, accuracy_undefined) = rate(tp + tn, tp + tn + fp + fn_);
    let (precision, precision_undefined) = rate(tp, tp + fp);
    Ok(ClassStats {
        class: cm.classes[i].clone(),
        tp,
        fp,
        fn_,
        tn,
        support: row,
        accuracy,
        precision,
        accuracy_undefined,
        precision_undefined,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub tn_convention: TnConvention,
    pub confusion: ConfusionMatrix,
    pub per_class: Vec<ClassStats>,
    pub total: u64,
    /// `trace / total`.
    pub overall_accuracy: f64,
    /// Pooled precision `sum TP / sum (TP + FP)`; equals `overall_accuracy`.
    pub micro_precision: f64,
    pub macro_precision: f64,
    /// Support-weighted mean of per-class accuracy.
    pub micro_accuracy: f64,
    pub macro_accuracy: f64,
}

impl EvaluationReport {
    pub fn support(&self) -> Vec<u64> {
        self.per_class.iter().map(|s| s.support).collect()
    }
}

pub fn aggregate(cm: &ConfusionMatrix, convention: TnConvention) -> Result<EvaluationReport, MetricsError> {
    let k = cm.classes.len();
    let total = cm.total();
    if k == 0 || total == 0 {
        return Err(MetricsError::Empty);
    }
    let per_class: Vec<ClassStats> = (0..k)
        .map(|i| per_class_stats(cm, i, convention))
        .collect::<Result<_, _>>()?;
    let n = total as f64;
    let trace = cm.trace();
    let tp_fp: u64 = per_class.iter().map(|s| s.tp + s.fp).sum();
    let micro_precision = rate(trace, tp_fp).0;
    let macro_precision = per_class.iter().map(|s| s.precision).sum::<f64>() / k as f64;
    let micro_accuracy = per_class.iter().map(|s| s.support as f64 * s.accuracy).sum::<f64>() / n;
    let macro_accuracy = per_class.iter().map(|s| s.accuracy).sum::<f64>() / k as f64;
    Ok(EvaluationReport {
        tn_convention: convention,
        confusion: cm.clone(),
        per_class,
        total,
        overall_accuracy: trace as f64 / n,
        micro_precision,
        macro_precision,
        micro_accuracy,
        macro_accuracy,
    })
}

/// Rounds a rate to a percentage with two decimals.
pub fn percent(rate: f64) -> f64 {
    (rate * 10_000.0).round() / 100.0
}

/// Aligned plain-text table: one row per classifier with overall accuracy,
/// micro precision and macro precision as percentages.
pub fn render_report(rows: &[(String, EvaluationReport)]) -> String {
    let name_width = rows
        .iter()
        .map(|(n, _)| n.len())
        .chain(["Classifier".len()])
        .max()
        .unwrap_or(10);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<name_width$}  {:>8}  {:>15}  {:>15}",
        "Classifier", "Accuracy", "Precision micro", "Precision macro"
    );
    for (name, r) in rows {
        let _ = writeln!(
            out,
            "{:<name_width$}  {:>8.2}  {:>15.2}  {:>15.2}",
            name,
            percent(r.overall_accuracy),
            percent(r.micro_precision),
            percent(r.macro_precision)
        );
    }
    out
}

#[derive(Serialize)]
struct ReportRow<'a> {
    classifier: &'a str,
    accuracy: f64,
    precision_micro: f64,
    precision_macro: f64,
    report: &'a EvaluationReport,
}

/// JSON form of [`render_report`], with the full per-class detail attached.
pub fn render_report_json(rows: &[(String, EvaluationReport)]) -> String {
    let rows: Vec<ReportRow> = rows
        .iter()
        .map(|(name, r)| ReportRow {
            classifier: name,
            accuracy: percent(r.overall_accuracy),
            precision_micro: percent(r.micro_precision),
            precision_macro: percent(r.macro_precision),
            report: r,
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("reports serialize")
}
