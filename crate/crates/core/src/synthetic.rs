//! Seeded synthetic fixtures for the examples, tests and smoke runs.
//!
//! The real norm datasets, embedding models and readability corpus are not
//! redistributable; these generators produce data with known structure so
//! every stage of the pipeline can be exercised end to end.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::features::{EmbeddingModel, FeatureResources, FrequencyList, GradeLexicons, LexicalSources, ViewKind};
use crate::norms::{LikertScale, NormDataset, NormRecord, PropertyKind};
use crate::readability::GradeLabel;

/// Deterministic pseudo-words: lowercase letters only, distinct for
/// distinct `i`.
pub fn word(i: usize) -> String {
    const SYLLABLES: [&str; 16] = [
        "ba", "ce", "di", "fo", "gu", "la", "me", "ni", "po", "ru", "sa", "te", "vi", "zo", "lu", "ma",
    ];
    let mut s = String::new();
    let mut x = i;
    loop {
        s.push_str(SYLLABLES[x % 16]);
        x /= 16;
        if x == 0 {
            break;
        }
    }
    s.push('r');
    s
}

fn gaussian(rng: &mut ChaCha8Rng, sd: f64) -> f64 {
    Normal::new(0.0, sd).expect("valid sd").sample(rng)
}

/// Random lexical resources for `words`: counts and grade memberships
/// drawn independently of any rating.
pub fn random_lexical_sources(words: &[String], seed: u64) -> LexicalSources {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lists: Vec<Vec<(String, u64)>> = vec![Vec::new(); 5];
    let mut diversity = Vec::new();
    let mut grades: [Vec<String>; 6] = Default::default();
    for w in words {
        for list in lists.iter_mut() {
            if rng.random_bool(0.8) {
                list.push((w.clone(), rng.random_range(1..5000)));
            }
        }
        diversity.push((w.clone(), rng.random_range(1..200)));
        for g in grades.iter_mut() {
            if rng.random_bool(0.3) {
                g.push(w.clone());
            }
        }
    }
    let mut it = lists.into_iter();
    let mut next = |name: &str| FrequencyList::from_counts(name, it.next().unwrap()).expect("valid words");
    LexicalSources {
        subtlex: next("subtlex").with_diversity(diversity).expect("valid words"),
        subimdb: next("subimdb"),
        written: next("written"),
        spoken: next("spoken"),
        mixed: next("mixed"),
        grades: GradeLexicons::from_lists(grades).expect("valid words"),
    }
}

/// Gaussian embedding table for `words`.
pub fn random_embeddings(kind: ViewKind, words: &[String], dim: usize, seed: u64) -> EmbeddingModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = EmbeddingModel::new(kind, dim).expect("embedding kind");
    for w in words {
        let v: Vec<f64> = (0..dim).map(|_| gaussian(&mut rng, 1.0)).collect();
        m.insert(w, &v).expect("valid vector");
    }
    m
}

/// A dataset whose ratings are a linear function of the EmbeddingA vectors
/// plus Gaussian noise.
#[derive(Debug, Clone)]
pub struct LinearNorms {
    pub dataset: NormDataset,
    pub resources: FeatureResources,
    pub weights: Vec<f64>,
    pub intercept: f64,
}

/// Generates `n` words with `dim`-dimensional EmbeddingA vectors (standard
/// normal) and ratings `4 + w·x + noise` on the 1-7 scale. The weights are
/// scaled so the signal has standard deviation 0.8; the rare rating that
/// would leave the scale is clamped. Lexical resources and EmbeddingB are
/// random and independent of the ratings.
pub fn linear_norms(property: PropertyKind, n: usize, dim: usize, noise_sd: f64, seed: u64) -> LinearNorms {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..dim).map(|_| gaussian(&mut rng, 1.0)).collect();
    let norm = raw.iter().map(|w| w * w).sum::<f64>().sqrt();
    let weights: Vec<f64> = raw.iter().map(|w| 0.8 * w / norm).collect();
    let intercept = 4.0;

    let words: Vec<String> = (0..n).map(word).collect();
    let emb_a = random_embeddings(ViewKind::EmbeddingA, &words, dim, seed.wrapping_add(1));
    let emb_b = random_embeddings(ViewKind::EmbeddingB, &words, dim, seed.wrapping_add(2));
    let scale = LikertScale::SEVEN_POINT;
    let records = words
        .iter()
        .map(|w| {
            let x = emb_a.vector(w).expect("in vocabulary");
            let signal: f64 = intercept + x.iter().zip(&weights).map(|(a, b)| a * b).sum::<f64>();
            NormRecord {
                word: w.clone(),
                rating: scale.clamp(signal + gaussian(&mut rng, noise_sd)),
                source: "synthetic".into(),
            }
        })
        .collect();
    LinearNorms {
        dataset: NormDataset::new(property, scale, records).expect("valid synthetic dataset"),
        resources: FeatureResources {
            lexical: random_lexical_sources(&words, seed.wrapping_add(3)),
            embedding_a: Some(emb_a),
            embedding_b: Some(emb_b),
        },
        weights,
        intercept,
    }
}

/// Two rating lists for one property with exactly `shared` words in
/// common: the first on the 1-7 scale, the second on the 1-9 scale.
pub fn overlapping_sources(
    property: PropertyKind,
    len_a: usize,
    len_b: usize,
    shared: usize,
    seed: u64,
) -> (NormDataset, NormDataset) {
    assert!(shared <= len_a.min(len_b));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut make = |range: std::ops::Range<usize>, scale: LikertScale, source: &str| {
        let records = range
            .map(|i| NormRecord {
                word: word(i),
                rating: rng.random_range(scale.min()..=scale.max()),
                source: source.into(),
            })
            .collect();
        NormDataset::new(property, scale, records).expect("valid synthetic dataset")
    };
    let a = make(0..len_a, LikertScale::SEVEN_POINT, "source_a");
    let start_b = len_a - shared;
    let b = make(start_b..start_b + len_b, LikertScale::NINE_POINT, "source_b");
    (a, b)
}

/// Isotropic Gaussian blobs, one per grade, centred on the corners of a
/// unit-spaced grid in `dim >= 2` dimensions.
pub fn grade_blobs(per_class: usize, dim: usize, sd: f64, seed: u64) -> Vec<(Vec<f64>, GradeLabel)> {
    assert!(dim >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(per_class * 4);
    for _ in 0..per_class {
        for g in GradeLabel::ALL {
            let mut x: Vec<f64> = (0..dim).map(|_| gaussian(&mut rng, sd)).collect();
            x[0] += (g.index() % 2) as f64;
            x[1] += (g.index() / 2) as f64;
            out.push((x, g));
        }
    }
    out
}

/// Simple Portuguese-looking sentences whose vocabulary grows with the
/// grade, for readability smoke runs.
pub fn grade_text(grade: GradeLabel, sentences: usize, seed: u64) -> String {
    const EASY: [&str; 12] = ["o", "a", "menino", "menina", "casa", "sol", "bola", "gato", "come", "brinca", "vê", "e"];
    const HARD: [&str; 12] = [
        "investigação",
        "ecossistema",
        "sustentável",
        "contemporâneo",
        "biodiversidade",
        "tecnologia",
        "significativo",
        "democracia",
        "fenômeno",
        "arquitetura",
        "hipótese",
        "metabolismo",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hard_rate = 0.1 + 0.2 * grade.index() as f64;
    let mut text = String::new();
    for _ in 0..sentences {
        let len = 4 + 2 * grade.index() + rng.random_range(0..3);
        let words: Vec<&str> = (0..len)
            .map(|_| {
                if rng.random_bool(hard_rate) {
                    HARD[rng.random_range(0..HARD.len())]
                } else {
                    EASY[rng.random_range(0..EASY.len())]
                }
            })
            .collect();
        let mut s = words.join(" ");
        if let Some(first) = s.get(..1) {
            s = first.to_uppercase() + &s[1..];
        }
        text.push_str(&s);
        text.push_str(". ");
    }
    text.trim_end().to_string()
}
