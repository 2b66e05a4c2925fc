use std::collections::BTreeMap;
use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::{Command, Error, LabelSource, RunConfig};
use crate::classifiers::{save_model, train_nb, train_svm, Classifier, KnnModel, LabeledDataset, Model};
use crate::corpus_io::{load_posts, split_train_test, PostRecord};
use crate::lexicon::{
    label_distribution, load_lexicon, score_document, write_score_csv, LabelCounts, Lexicon, SentimentScore,
};
use crate::metrics::{aggregate, render_report, render_report_json, ConfusionMatrix, EvaluationReport};
use crate::preprocess::{preprocess_post, PreprocessConfig, Stopwords, TokenList, TranslationTable, Vocabulary};
use crate::seed;
use crate::sentiment::Sentiment;
use crate::topics::{term_frequencies, top_k, TermFrequencyTable};
use crate::vectorize::{build_tdm, vectorize_doc, TermDocumentMatrix};

/// Display names of the three classifiers, in report order.
pub const CLASSIFIER_NAMES: [&str; 3] = ["NB", "k-NN", "Linear SVM"];

fn output_error(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Output {
        path: path.to_path_buf(),
        source,
    }
}

fn ensure_dir(path: &Path) -> Result<(), Error> {
    fs::create_dir_all(path).map_err(output_error(path))
}

fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> Result<(), Error> {
    fs::write(path, contents).map_err(output_error(path))
}

fn create_file(path: &Path) -> Result<BufWriter<fs::File>, Error> {
    Ok(BufWriter::new(fs::File::create(path).map_err(output_error(path))?))
}

fn csv_error(path: &Path) -> impl FnOnce(csv::Error) -> Error + '_ {
    move |e| Error::Output {
        path: path.to_path_buf(),
        source: std::io::Error::other(e.to_string()),
    }
}

/// Dataset tags can contain anything; keep file names portable.
fn file_stem_for_tag(tag: &str) -> String {
    let stem: String = tag
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.') {
                c
            } else {
                '_'
            }
        })
        .collect();
    if stem.is_empty() {
        "_".to_string()
    } else {
        stem
    }
}

fn preprocess_config(cfg: &RunConfig) -> Result<PreprocessConfig, Error> {
    let stopwords = match &cfg.stopwords {
        Some(path) => Stopwords::load(path)?,
        None => Stopwords::default(),
    };
    let translation = cfg.translate_table.as_deref().map(TranslationTable::load).transpose()?;
    Ok(PreprocessConfig { stopwords, translation })
}

fn lexicon(cfg: &RunConfig) -> Result<Lexicon, Error> {
    match &cfg.lexicon {
        Some(path) => Ok(load_lexicon(path)?),
        None => Ok(Lexicon::demo()),
    }
}

struct Corpus {
    records: Vec<PostRecord>,
    tokens: Vec<TokenList>,
}

impl Corpus {
    fn load(cfg: &RunConfig) -> Result<Self, Error> {
        let records = load_posts(cfg.posts_path()?, cfg.posts_format())?;
        let pre = preprocess_config(cfg)?;
        let tokens = records.iter().map(|r| preprocess_post(&r.text, &pre)).collect();
        Ok(Corpus { records, tokens })
    }

    /// Document indices grouped by dataset tag, tags in ascending order.
    fn by_tag(&self) -> BTreeMap<&str, Vec<usize>> {
        let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for (i, r) in self.records.iter().enumerate() {
            groups.entry(r.dataset_tag.as_str()).or_default().push(i);
        }
        groups
    }

    fn tag_tdms(&self) -> Vec<(String, Vec<String>, TermDocumentMatrix)> {
        self.by_tag()
            .into_iter()
            .map(|(tag, idx)| {
                let docs: Vec<TokenList> = idx.iter().map(|&i| self.tokens[i].clone()).collect();
                let ids = idx.iter().map(|&i| self.records[i].id.clone()).collect();
                let vocab = Vocabulary::build(&docs);
                (tag.to_string(), ids, build_tdm(&docs, &vocab))
            })
            .collect()
    }
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'a str,
    library_version: &'a str,
    config_hash: String,
    config: &'a RunConfig,
    documents: usize,
    vocabulary_sizes: BTreeMap<String, usize>,
}

fn write_manifest(
    cfg: &RunConfig,
    command: &str,
    documents: usize,
    vocabulary_sizes: BTreeMap<String, usize>,
) -> Result<(), Error> {
    let manifest = Manifest {
        command,
        library_version: env!("CARGO_PKG_VERSION"),
        config_hash: cfg.hash(),
        config: cfg,
        documents,
        vocabulary_sizes,
    };
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    write_file(&cfg.out.join("run_manifest.json"), json + "\n")
}

/// Per-tag label counts; the row with tag `None` is the total.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TagDistribution {
    pub dataset_tag: String,
    pub positive: usize,
    pub negative: usize,
    pub neutral: usize,
    pub total: usize,
}

impl TagDistribution {
    fn new(tag: &str, counts: &LabelCounts) -> Self {
        TagDistribution {
            dataset_tag: tag.to_string(),
            positive: counts.positive,
            negative: counts.negative,
            neutral: counts.neutral,
            total: counts.total(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScoreOutcome {
    pub scores: Vec<(String, SentimentScore)>,
    /// One row per tag (ascending) followed by a `Total` row.
    pub distribution: Vec<TagDistribution>,
}

/// Writes `scores/scores.csv` and `scores/distribution.json`.
pub fn cmd_score(cfg: &RunConfig) -> Result<ScoreOutcome, Error> {
    let corpus = Corpus::load(cfg)?;
    let lex = lexicon(cfg)?;
    let scored: Vec<SentimentScore> = corpus.tokens.iter().map(|t| score_document(t, &lex)).collect();

    let mut distribution = Vec::new();
    let mut total = LabelCounts::default();
    for (tag, idx) in corpus.by_tag() {
        let tag_scores: Vec<SentimentScore> = idx.iter().map(|&i| scored[i]).collect();
        let counts = label_distribution(&tag_scores);
        total.merge(&counts);
        distribution.push(TagDistribution::new(tag, &counts));
    }
    distribution.push(TagDistribution::new("Total", &total));

    let scores: Vec<(String, SentimentScore)> = corpus.records.iter().map(|r| r.id.clone()).zip(scored).collect();
    let dir = cfg.out.join("scores");
    ensure_dir(&dir)?;
    let csv_path = dir.join("scores.csv");
    write_score_csv(create_file(&csv_path)?, &scores).map_err(csv_error(&csv_path))?;
    let json = serde_json::to_string_pretty(&distribution).expect("distribution serializes");
    write_file(&dir.join("distribution.json"), json + "\n")?;
    write_manifest(cfg, "score", corpus.records.len(), BTreeMap::new())?;
    Ok(ScoreOutcome { scores, distribution })
}

#[derive(Debug, Clone)]
pub struct TopicsOutcome {
    pub per_tag: Vec<(String, TermFrequencyTable)>,
}

/// Writes `topics/<tag>.json` with the `top_k` most frequent terms of each
/// tag, counted over that tag's own vocabulary.
pub fn cmd_topics(cfg: &RunConfig) -> Result<TopicsOutcome, Error> {
    let corpus = Corpus::load(cfg)?;
    let dir = cfg.out.join("topics");
    ensure_dir(&dir)?;
    let mut per_tag = Vec::new();
    let mut sizes = BTreeMap::new();
    for (tag, _, tdm) in corpus.tag_tdms() {
        let top = top_k(&term_frequencies(&tdm), cfg.top_k);
        write_file(
            &dir.join(format!("{}.json", file_stem_for_tag(&tag))),
            top.to_json() + "\n",
        )?;
        sizes.insert(tag.clone(), tdm.shape().0);
        per_tag.push((tag, top));
    }
    write_manifest(cfg, "topics", corpus.records.len(), sizes)?;
    Ok(TopicsOutcome { per_tag })
}

#[derive(Serialize)]
struct TokenRow<'a> {
    id: &'a str,
    dataset_tag: &'a str,
    tokens: &'a [String],
}

/// Writes `tokens/tokens.jsonl`, one preprocessed record per line.
pub fn cmd_preprocess(cfg: &RunConfig) -> Result<usize, Error> {
    let corpus = Corpus::load(cfg)?;
    let dir = cfg.out.join("tokens");
    ensure_dir(&dir)?;
    let mut out = String::new();
    for (r, t) in corpus.records.iter().zip(&corpus.tokens) {
        let row = TokenRow {
            id: &r.id,
            dataset_tag: &r.dataset_tag,
            tokens: t,
        };
        out.push_str(&serde_json::to_string(&row).expect("token row serializes"));
        out.push('\n');
    }
    write_file(&dir.join("tokens.jsonl"), out)?;
    let sizes = corpus
        .tag_tdms()
        .into_iter()
        .map(|(tag, _, tdm)| (tag, tdm.shape().0))
        .collect();
    write_manifest(cfg, "preprocess", corpus.records.len(), sizes)?;
    Ok(corpus.records.len())
}

/// Tag name with the `(words, documents)` shape of its matrix.
pub type TagShape = (String, (usize, usize));

/// Writes `tdm/<tag>.csv` (dense) and `tdm/<tag>.json` (sparse triples).
pub fn cmd_vectorize(cfg: &RunConfig) -> Result<Vec<TagShape>, Error> {
    let corpus = Corpus::load(cfg)?;
    let dir = cfg.out.join("tdm");
    ensure_dir(&dir)?;
    let mut shapes = Vec::new();
    let mut sizes = BTreeMap::new();
    for (tag, ids, tdm) in corpus.tag_tdms() {
        let stem = file_stem_for_tag(&tag);
        let csv_path = dir.join(format!("{stem}.csv"));
        tdm.write_csv(create_file(&csv_path)?, &ids)
            .map_err(csv_error(&csv_path))?;
        let json_path = dir.join(format!("{stem}.json"));
        tdm.write_sparse_json(create_file(&json_path)?)
            .map_err(|e| Error::Output {
                path: json_path.clone(),
                source: std::io::Error::other(e),
            })?;
        sizes.insert(tag.clone(), tdm.shape().0);
        shapes.push((tag, tdm.shape()));
    }
    write_manifest(cfg, "vectorize", corpus.records.len(), sizes)?;
    Ok(shapes)
}

#[derive(Debug, Clone)]
pub struct EvaluateOutcome {
    pub train_size: usize,
    pub test_size: usize,
    pub vocabulary_size: usize,
    /// Classes the models were trained on, in canonical order.
    pub classes: Vec<Sentiment>,
    pub reports: Vec<(String, EvaluationReport)>,
}

impl EvaluateOutcome {
    pub fn report(&self, classifier: &str) -> Option<&EvaluationReport> {
        self.reports.iter().find(|(n, _)| n == classifier).map(|(_, r)| r)
    }
}

/// Splits the labelled posts, trains the three classifiers on the training
/// part and evaluates them on the rest.
///
/// Writes `reports/evaluation.{txt,json}` and `models/*.json` plus the
/// training vocabulary as `models/vocabulary.txt`.
pub fn cmd_evaluate(cfg: &RunConfig) -> Result<EvaluateOutcome, Error> {
    let corpus = Corpus::load(cfg)?;
    let labeled: Vec<(PostRecord, TokenList, Sentiment)> = match cfg.label_source {
        LabelSource::Lexicon => {
            let lex = lexicon(cfg)?;
            corpus
                .records
                .into_iter()
                .zip(corpus.tokens)
                .map(|(r, t)| {
                    let label = r.gold_label.unwrap_or_else(|| score_document(&t, &lex).label);
                    (r, t, label)
                })
                .collect()
        }
        LabelSource::Gold => {
            let rows: Vec<_> = corpus
                .records
                .into_iter()
                .zip(corpus.tokens)
                .filter_map(|(r, t)| r.gold_label.map(|l| (r, t, l)))
                .collect();
            if rows.is_empty() {
                return Err(Error::Config(
                    "label source is gold but no record carries a gold label".into(),
                ));
            }
            rows
        }
    };

    let records: Vec<PostRecord> = labeled.iter().map(|(r, _, _)| r.clone()).collect();
    let split = split_train_test(&records, cfg.split_ratio, seed::fork(cfg.seed, "split"))?;
    let lookup: BTreeMap<&str, usize> = records.iter().enumerate().map(|(i, r)| (r.id.as_str(), i)).collect();
    let rows_of = |part: &[PostRecord]| -> Vec<usize> { part.iter().map(|r| lookup[r.id.as_str()]).collect() };
    let train_rows = rows_of(&split.train);
    let test_rows = rows_of(&split.test);

    let train_tokens: Vec<TokenList> = train_rows.iter().map(|&i| labeled[i].1.clone()).collect();
    let vocab = Vocabulary::build(&train_tokens);
    let train_labels: Vec<Sentiment> = train_rows.iter().map(|&i| labeled[i].2).collect();
    let test_labels: Vec<Sentiment> = test_rows.iter().map(|&i| labeled[i].2).collect();

    let classes: Vec<Sentiment> = Sentiment::ALL
        .into_iter()
        .filter(|c| train_labels.contains(c))
        .collect();
    if classes.len() < 2 {
        return Err(Error::Config(format!(
            "training data holds {} class(es); at least two are needed",
            classes.len()
        )));
    }
    let class_names: Vec<String> = classes.iter().map(|c| c.as_str().to_string()).collect();
    let class_index = |s: Sentiment| classes.iter().position(|&c| c == s).expect("training class");
    let train_vectors = train_tokens.iter().map(|t| vectorize_doc(t, &vocab)).collect();
    let data = LabeledDataset::new(
        train_vectors,
        train_labels.iter().map(|&l| class_index(l)).collect(),
        class_names.clone(),
        vocab.len(),
    )?;
    let test_vectors: Vec<_> = test_rows
        .iter()
        .map(|&i| vectorize_doc(&labeled[i].1, &vocab))
        .collect();

    let models = [
        Model::NaiveBayes(train_nb(&data, cfg.alpha)?),
        Model::Knn(KnnModel::fit(&data, cfg.k, cfg.knn_weighting)?),
        Model::LinearSvm(train_svm(&data, cfg.svm_params())?),
    ];

    let eval_classes: Vec<Sentiment> = Sentiment::ALL
        .into_iter()
        .filter(|c| train_labels.contains(c) || test_labels.contains(c))
        .collect();
    let eval_names: Vec<String> = eval_classes.iter().map(|c| c.as_str().to_string()).collect();
    let eval_index = |s: Sentiment| eval_classes.iter().position(|&c| c == s).expect("evaluation class");
    let truth: Vec<usize> = test_labels.iter().map(|&l| eval_index(l)).collect();

    let mut reports = Vec::new();
    if !test_vectors.is_empty() {
        for (name, model) in CLASSIFIER_NAMES.iter().zip(&models) {
            let pred: Vec<usize> = model
                .predict_all(&test_vectors)?
                .into_iter()
                .map(|p| eval_index(classes[p]))
                .collect();
            let cm = ConfusionMatrix::from_indices(eval_names.clone(), &truth, &pred)?;
            reports.push((name.to_string(), aggregate(&cm, cfg.tn_convention)?));
        }
    }

    let models_dir = cfg.out.join("models");
    let reports_dir = cfg.out.join("reports");
    ensure_dir(&models_dir)?;
    ensure_dir(&reports_dir)?;
    for (file, model) in ["naive_bayes.json", "knn.json", "linear_svm.json"].iter().zip(&models) {
        save_model(&models_dir.join(file), model, &vocab)?;
    }
    let mut vocab_text = vocab.words().join("\n");
    vocab_text.push('\n');
    write_file(&models_dir.join("vocabulary.txt"), vocab_text)?;

    let header = format!(
        "train: {}  test: {}  vocabulary: {}  labels: {}  TN convention: {}\n\n",
        split.train.len(),
        split.test.len(),
        vocab.len(),
        cfg.label_source,
        cfg.tn_convention
    );
    write_file(&reports_dir.join("evaluation.txt"), header + &render_report(&reports))?;
    write_file(
        &reports_dir.join("evaluation.json"),
        render_report_json(&reports) + "\n",
    )?;
    write_manifest(
        cfg,
        "evaluate",
        records.len(),
        BTreeMap::from([("train".to_string(), vocab.len())]),
    )?;

    Ok(EvaluateOutcome {
        train_size: split.train.len(),
        test_size: split.test.len(),
        vocabulary_size: vocab.len(),
        classes,
        reports,
    })
}

/// Runs one parsed subcommand and returns a short human summary.
pub fn run(command: &Command) -> Result<String, Error> {
    let cfg = command.args().resolve()?;
    ensure_dir(&cfg.out)?;
    let out = display_path(&cfg.out);
    Ok(match command {
        Command::Score(_) => {
            let o = cmd_score(&cfg)?;
            format!("scored {} posts into {out}/scores", o.scores.len())
        }
        Command::Topics(_) => {
            let o = cmd_topics(&cfg)?;
            format!("wrote topics for {} dataset tag(s) into {out}/topics", o.per_tag.len())
        }
        Command::Evaluate(_) => {
            let o = cmd_evaluate(&cfg)?;
            format!(
                "train {} / test {} posts, vocabulary {}\n{}",
                o.train_size,
                o.test_size,
                o.vocabulary_size,
                render_report(&o.reports)
            )
        }
        Command::Preprocess(_) => {
            let n = cmd_preprocess(&cfg)?;
            format!("preprocessed {n} posts into {out}/tokens")
        }
        Command::Vectorize(_) => {
            let shapes = cmd_vectorize(&cfg)?;
            let parts: Vec<String> = shapes.iter().map(|(t, (n, m))| format!("{t}: {n}x{m}")).collect();
            format!(
                "wrote {} term-document matrices into {out}/tdm ({})",
                shapes.len(),
                parts.join(", ")
            )
        }
    })
}

fn display_path(p: &Path) -> String {
    PathBuf::from(p).display().to_string()
}
