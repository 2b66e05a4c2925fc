//! Property-based checks of the module invariants.

use std::collections::HashSet;

use chrono::{DateTime, Utc};
use opinion_mining::classifiers::{predict_nb, train_nb, Classifier, KnnModel, KnnWeighting, LabeledDataset};
use opinion_mining::corpus_io::{read_posts, split_train_test, train_size, write_posts, Format, PostRecord};
use opinion_mining::lexicon::{score_document, Lexicon};
use opinion_mining::preprocess::{build_vocabulary, normalize, preprocess_post, PreprocessConfig};
use opinion_mining::topics::{term_frequencies, top_k};
use opinion_mining::vectorize::{build_tdm, vectorize_doc, CountVector};
use opinion_mining::Sentiment;
use proptest::prelude::*;

fn record_strategy() -> impl Strategy<Value = PostRecord> {
    (
        "[a-z0-9_-]{1,12}",
        0i64..4_000_000_000,
        0u32..1_000_000_000,
        any::<String>(),
        "[a-z]{0,8}",
        prop::option::of(prop::sample::select(Sentiment::ALL.to_vec())),
    )
        .prop_map(|(id, secs, nanos, text, tag, gold)| PostRecord {
            id,
            timestamp: DateTime::<Utc>::from_timestamp(secs, nanos).unwrap(),
            text,
            dataset_tag: tag,
            gold_label: gold,
        })
}

fn unique_records(max: usize) -> impl Strategy<Value = Vec<PostRecord>> {
    prop::collection::vec(record_strategy(), 0..max).prop_map(|rs| {
        let mut seen = HashSet::new();
        rs.into_iter().filter(|r| seen.insert(r.id.clone())).collect()
    })
}

fn docs_strategy() -> impl Strategy<Value = Vec<Vec<String>>> {
    prop::collection::vec(prop::collection::vec("[a-e]{1,2}", 0..12), 0..10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn split_is_a_partition(records in unique_records(40), ratio in 0.05f64..0.95, seed in any::<u64>()) {
        prop_assume!(records.len() >= 2);
        let split = split_train_test(&records, ratio, seed).unwrap();
        prop_assert_eq!(split.train.len(), train_size(records.len(), ratio));
        prop_assert_eq!(split.train.len() + split.test.len(), records.len());
        let mut ids: Vec<&str> = split.train.iter().chain(&split.test).map(|r| r.id.as_str()).collect();
        ids.sort_unstable();
        let mut expected: Vec<&str> = records.iter().map(|r| r.id.as_str()).collect();
        expected.sort_unstable();
        prop_assert_eq!(ids, expected);
        prop_assert_eq!(split_train_test(&records, ratio, seed).unwrap(), split);
    }

    #[test]
    fn corpus_round_trips(records in unique_records(20)) {
        for format in [Format::Jsonl, Format::Csv] {
            let mut buf = Vec::new();
            write_posts(&mut buf, &records, format).unwrap();
            let back = read_posts(buf.as_slice(), format).unwrap();
            prop_assert_eq!(&back, &records, "{} round trip", format);
        }
    }

    #[test]
    fn normalize_is_idempotent(text in any::<String>()) {
        let once = normalize(&text);
        prop_assert_eq!(normalize(&once), once);
    }

    #[test]
    fn preprocessing_is_idempotent(text in any::<String>()) {
        let cfg = PreprocessConfig::default();
        let tokens = preprocess_post(&text, &cfg);
        prop_assert_eq!(preprocess_post(&tokens.join(" "), &cfg), tokens);
    }

    #[test]
    fn tdm_columns_are_document_vectors(docs in docs_strategy()) {
        let vocab = build_vocabulary(&docs);
        let tdm = build_tdm(&docs, &vocab);
        prop_assert_eq!(tdm.shape(), (vocab.len(), docs.len()));
        for (j, doc) in docs.iter().enumerate() {
            prop_assert_eq!(tdm.column(j), &vectorize_doc(doc, &vocab));
        }
        let col_sums = tdm.column_sums();
        for (j, doc) in docs.iter().enumerate() {
            prop_assert_eq!(col_sums[j], doc.len() as u64);
        }
        let row_sums = tdm.row_sums();
        for (i, word) in vocab.words().iter().enumerate() {
            let occurrences = docs.iter().flatten().filter(|t| *t == word).count() as u64;
            prop_assert_eq!(row_sums[i], occurrences);
        }
    }

    #[test]
    fn topic_counts_conserve_mass(docs in docs_strategy(), k in 1usize..8) {
        let vocab = build_vocabulary(&docs);
        let tdm = build_tdm(&docs, &vocab);
        let table = term_frequencies(&tdm);
        let tokens: u64 = docs.iter().map(|d| d.len() as u64).sum();
        prop_assert_eq!(table.total(), tokens);
        for pair in table.rows().windows(2) {
            prop_assert!((pair[1].count, &pair[0].word) <= (pair[0].count, &pair[1].word));
        }
        let top = top_k(&table, k);
        prop_assert_eq!(top.len(), k.min(table.len()));
        prop_assert_eq!(top.rows(), &table.rows()[..top.len()]);
    }

    #[test]
    fn lexicon_scores_stay_in_range(
        entries in prop::collection::vec((-1.0f64..=1.0, 0.0f64..=1.0), 1..6),
        picks in prop::collection::vec(0usize..8, 0..20),
    ) {
        let lex = Lexicon::from_entries(entries.iter().enumerate().map(|(i, &(p, s))| (format!("w{i}"), p, s)));
        // Indices past the lexicon produce unscored tokens.
        let tokens: Vec<String> = picks.iter().map(|i| format!("w{i}")).collect();
        let score = score_document(&tokens, &lex);
        prop_assert!((-1.0..=1.0).contains(&score.polarity));
        prop_assert!((0.0..=1.0).contains(&score.subjectivity));
        prop_assert_eq!(score.label, Sentiment::from_polarity(score.polarity));

        let mut reversed = tokens.clone();
        reversed.reverse();
        let r = score_document(&reversed, &lex);
        prop_assert!((r.polarity - score.polarity).abs() <= 1e-12);
        prop_assert!((r.subjectivity - score.subjectivity).abs() <= 1e-12);

        let doubled: Vec<String> = tokens.iter().flat_map(|t| [t.clone(), t.clone()]).collect();
        let d = score_document(&doubled, &lex);
        prop_assert_eq!(d.scored_word_count, 2 * score.scored_word_count);
        prop_assert!((d.polarity - score.polarity).abs() <= 1e-12);
        prop_assert!((d.subjectivity - score.subjectivity).abs() <= 1e-12);
    }

    #[test]
    fn nb_posteriors_normalise(
        rows in prop::collection::vec((prop::collection::vec(0u32..5, 6), 0usize..3), 3..30),
        query in prop::collection::vec(0u32..6, 6),
        alpha in 0.1f64..3.0,
    ) {
        let mut rows = rows;
        for (c, row) in rows.iter_mut().take(3).enumerate() {
            row.1 = c;
        }
        let data = LabeledDataset::new(
            rows.iter().map(|(v, _)| CountVector::from_dense(v)).collect(),
            rows.iter().map(|(_, l)| *l).collect(),
            vec!["a".into(), "b".into(), "c".into()],
            6,
        ).unwrap();
        let model = train_nb(&data, alpha).unwrap();
        for c in 0..3 {
            let total: f64 = model.word_log_likelihoods(c).iter().map(|l| l.exp()).sum();
            prop_assert!((total - 1.0).abs() < 1e-9);
        }
        let priors: f64 = model.class_log_priors().iter().map(|l| l.exp()).sum();
        prop_assert!((priors - 1.0).abs() < 1e-9);

        let x = CountVector::from_dense(&query);
        let scores = model.log_scores(&x).unwrap();
        prop_assert!(scores.iter().all(|s| s.is_finite()));
        let first = predict_nb(&model, &x).unwrap();
        prop_assert_eq!(predict_nb(&model, &x).unwrap(), first);
        let knn = KnnModel::fit(&data, 3, KnnWeighting::Uniform).unwrap();
        prop_assert_eq!(knn.predict(&x).unwrap(), knn.predict(&x).unwrap());
    }
}
