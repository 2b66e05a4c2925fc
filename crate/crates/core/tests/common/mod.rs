//! Synthetic corpora shared by the integration suites.
#![allow(dead_code)]

use chrono::{Duration, NaiveDate};
use opinion_mining::corpus_io::PostRecord;
use opinion_mining::lexicon::Lexicon;
use opinion_mining::preprocess::Stopwords;
use opinion_mining::Sentiment;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Collection buckets: tag, first day, post count, and planted
/// (positive, negative, neutral) counts.
pub const BUCKETS: [(&str, &str, usize, [usize; 3]); 7] = [
    ("2020-03-20_21", "2020-03-20", 583, [169, 68, 346]),
    ("2020-04-06_07", "2020-04-06", 350, [167, 56, 127]),
    ("2020-04-20_21", "2020-04-20", 496, [136, 62, 298]),
    ("2020-05-05_06", "2020-05-05", 276, [76, 112, 88]),
    ("2020-05-30_31", "2020-05-30", 272, [98, 46, 128]),
    ("2020-06-14_15", "2020-06-14", 304, [115, 61, 128]),
    ("2020-06-19_20", "2020-06-19", 687, [187, 98, 402]),
];

const FILLER: &[&str] = &[
    "quarantine",
    "colombia",
    "bogota",
    "medellin",
    "cali",
    "president",
    "mayor",
    "decree",
    "lockdown",
    "virus",
    "covid",
    "cases",
    "hospital",
    "doctors",
    "nurses",
    "masks",
    "vaccine",
    "economy",
    "dollar",
    "oil",
    "prices",
    "market",
    "soccer",
    "james",
    "madrid",
    "club",
    "match",
    "goal",
    "shopping",
    "mall",
    "tax",
    "day",
    "weekend",
    "family",
    "friends",
    "school",
    "college",
    "jobs",
    "workers",
    "street",
    "city",
    "country",
    "people",
    "week",
    "tomorrow",
    "today",
    "night",
    "morning",
    "launch",
    "rocket",
    "tourism",
    "travel",
    "flights",
    "airport",
    "borders",
    "police",
    "army",
    "congress",
    "senate",
    "law",
    "minister",
    "ambassador",
    "uruguay",
    "italy",
    "spain",
    "china",
    "water",
    "food",
    "bread",
    "coffee",
    "music",
    "concert",
    "film",
    "series",
    "book",
    "phone",
    "internet",
    "video",
    "photo",
    "twitter",
    "trend",
    "topic",
    "report",
    "data",
    "numbers",
    "curve",
    "region",
    "department",
    "village",
    "farm",
    "bus",
    "metro",
    "car",
    "bike",
    "park",
    "church",
    "mass",
    "radio",
];

fn pool(lex: &Lexicon, pred: impl Fn(f64) -> bool) -> Vec<String> {
    let stop = Stopwords::default();
    let mut words: Vec<String> = lex
        .sorted_entries()
        .into_iter()
        .filter(|(w, e)| pred(e.polarity) && !stop.contains(w))
        .map(|(w, _)| w.to_string())
        .collect();
    words.sort();
    words
}

/// Posts planted with lexicon sentiment words, laid out in the seven
/// collection buckets (2,968 posts in total).
///
/// * positive posts carry 1–3 words of polarity ≥ 0.5 and sometimes one
///   word of polarity in [-0.3, 0);
/// * negative posts mirror that;
/// * neutral posts carry no polar word, sometimes a zero-polarity one.
///
/// Texts are decorated with mentions, hashtags, URLs, digits, punctuation,
/// capitals and stretched letters.
pub fn planted_posts(seed: u64) -> Vec<(PostRecord, Sentiment)> {
    let lex = Lexicon::demo();
    let strong_pos = pool(&lex, |p| p >= 0.5);
    let strong_neg = pool(&lex, |p| p <= -0.5);
    let weak_pos = pool(&lex, |p| p > 0.0 && p <= 0.3);
    let weak_neg = pool(&lex, |p| (-0.3..0.0).contains(&p));
    let zero = pool(&lex, |p| p == 0.0);
    let stop = Stopwords::default();
    let filler: Vec<&str> = FILLER
        .iter()
        .copied()
        .filter(|w| lex.get(w).is_none() && !stop.contains(w))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (tag, day, size, [pos, neg, neu]) in BUCKETS {
        assert_eq!(pos + neg + neu, size);
        let mut labels: Vec<Sentiment> = std::iter::repeat_n(Sentiment::Positive, pos)
            .chain(std::iter::repeat_n(Sentiment::Negative, neg))
            .chain(std::iter::repeat_n(Sentiment::Neutral, neu))
            .collect();
        labels.shuffle(&mut rng);
        let start = NaiveDate::parse_from_str(day, "%Y-%m-%d")
            .unwrap()
            .and_hms_opt(20, 0, 0)
            .unwrap()
            .and_utc();
        for (i, label) in labels.into_iter().enumerate() {
            let mut words: Vec<String> = (0..rng.gen_range(4..10))
                .map(|_| filler.choose(&mut rng).unwrap().to_string())
                .collect();
            let (strong, weak) = match label {
                Sentiment::Positive => (Some(&strong_pos), &weak_neg),
                Sentiment::Negative => (Some(&strong_neg), &weak_pos),
                Sentiment::Neutral => (None, &zero),
            };
            match strong {
                Some(strong) => {
                    for _ in 0..rng.gen_range(1..=3) {
                        words.push(strong.choose(&mut rng).unwrap().clone());
                    }
                    if rng.gen_bool(0.3) {
                        words.push(weak.choose(&mut rng).unwrap().clone());
                    }
                }
                None => {
                    if rng.gen_bool(0.4) {
                        words.push(weak.choose(&mut rng).unwrap().clone());
                    }
                }
            }
            words.shuffle(&mut rng);
            let text = decorate(&mut rng, &words);
            out.push((
                PostRecord {
                    id: format!("{tag}-{i:04}"),
                    timestamp: start + Duration::minutes(i as i64),
                    text,
                    dataset_tag: tag.to_string(),
                    gold_label: Some(label),
                },
                label,
            ));
        }
    }
    out
}

fn decorate(rng: &mut ChaCha8Rng, words: &[String]) -> String {
    let mut parts = Vec::new();
    for w in words {
        let mut w = w.clone();
        match rng.gen_range(0..12) {
            0 => w = w.to_uppercase(),
            1 => {
                let mut c = w.chars();
                w = c
                    .next()
                    .map(|f| f.to_uppercase().collect::<String>() + c.as_str())
                    .unwrap_or_default();
            }
            2 => {
                // Stretch the last letter; the run collapses back to two.
                let last = w.chars().last().unwrap();
                w.push_str(&last.to_string().repeat(3));
            }
            3 => w.push_str("!!!"),
            4 => w.push(','),
            _ => {}
        }
        parts.push(w);
    }
    if rng.gen_bool(0.3) {
        parts.insert(0, format!("@user{}", rng.gen_range(0..500)));
    }
    if rng.gen_bool(0.3) {
        parts.push(format!("#trend{}", rng.gen_range(0..50)));
    }
    if rng.gen_bool(0.2) {
        parts.push(format!("https://t.co/x{}", rng.gen_range(0..10_000)));
    }
    if rng.gen_bool(0.2) {
        parts.push(format!("{}", rng.gen_range(0..3000)));
    }
    parts.join(" ")
}

/// Token documents for a three-class corpus where each class owns one
/// keyword and shares a 47-word filler vocabulary with the others.
pub fn keyword_corpus(docs: usize, seed: u64) -> Vec<(Vec<String>, usize)> {
    let keywords = ["alphakey", "betakey", "gammakey"];
    let filler: Vec<String> = (0..47).map(|i| format!("filler{}", letters(i))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..docs)
        .map(|i| {
            let class = i % 3;
            let mut tokens: Vec<String> = (0..rng.gen_range(3..9))
                .map(|_| filler.choose(&mut rng).unwrap().clone())
                .collect();
            for _ in 0..rng.gen_range(1..=2) {
                tokens.push(keywords[class].to_string());
            }
            tokens.shuffle(&mut rng);
            (tokens, class)
        })
        .collect()
}

fn letters(mut i: usize) -> String {
    let mut s = String::new();
    loop {
        s.push((b'a' + (i % 26) as u8) as char);
        i /= 26;
        if i == 0 {
            break s;
        }
    }
}
