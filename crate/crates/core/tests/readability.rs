mod common;

use std::collections::{BTreeMap, HashSet};

use common::oracle;
use proptest::prelude::*;
use psynorm::evaluation::make_folds;
use psynorm::lexicon::{LexiconIndex, PropertyRatings};
use psynorm::readability::{
    brunet, evaluate_features, honore, mattr, profile_text, text_features, train_grade_classifier, FeatureSubset,
    GradeLabel, TextFeatures, DEFAULT_CLASSIFIER_LAMBDA,
};
use psynorm::synthetic::{grade_blobs, grade_text};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn row(pairs: &[(&str, f64)]) -> TextFeatures {
    TextFeatures {
        values: pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
        covered_tokens: 0,
        lexicon_uncovered: true,
    }
}

fn corpus_labels(n: usize, seed: u64) -> Vec<GradeLabel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = [4, 3, 2, 1];
    let mut labels: Vec<GradeLabel> = (0..n).map(|i| GradeLabel::ALL[(0..4).find(|&g| i % 10 < weights[..=g].iter().sum()).unwrap()]).collect();
    labels.shuffle(&mut rng);
    labels
}

#[test]
fn sentence_order_does_not_matter_except_for_mattr() {
    let sentences: Vec<String> = (0..6).map(|i| grade_text(GradeLabel::ALL[i % 4], 1, i as u64)).collect();
    let lexicon: LexiconIndex = [("menino", PropertyRatings([6.0, 2.0, 6.5, 5.0]))]
        .into_iter()
        .map(|(w, r)| (w.to_string(), r))
        .collect();
    let easy: HashSet<String> = ["o", "a", "menino"].map(String::from).into();
    let features = |order: &[usize]| {
        let text: Vec<&str> = order.iter().map(|&i| sentences[i].as_str()).collect();
        text_features(&profile_text(&text.join(" ")).unwrap(), &easy, &lexicon, 10)
    };
    let a = features(&[0, 1, 2, 3, 4, 5]);
    let b = features(&[5, 3, 1, 0, 4, 2]);
    for (name, v) in &a.values {
        if name != "mattr" {
            assert!((v - b.values[name]).abs() < 1e-9, "{name}");
        }
    }
}

proptest! {
    #[test]
    fn honore_and_brunet_ignore_token_order(ids in proptest::collection::vec(0usize..15, 2..80), seed: u64) {
        let text = |ids: &[usize]| ids.iter().map(|i| format!("pal{}", (b'a' + *i as u8) as char)).collect::<Vec<_>>().join(" ") + ".";
        let mut shuffled = ids.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let (p, q) = (profile_text(&text(&ids)).unwrap(), profile_text(&text(&shuffled)).unwrap());
        let h = |p: &psynorm::readability::TextProfile| honore(p.word_count(), p.types(), p.hapaxes());
        let b = |p: &psynorm::readability::TextProfile| brunet(p.word_count(), p.types());
        prop_assert_eq!(h(&p), h(&q));
        prop_assert_eq!(b(&p), b(&q));
        let ttr = p.types() as f64 / p.word_count() as f64;
        prop_assert!((mattr(&p.tokens, p.word_count()) - ttr).abs() < 1e-12);
        prop_assert!((mattr(&p.tokens, 10_000) - ttr).abs() < 1e-12);
    }

    #[test]
    fn classifier_scores_ignore_feature_scaling(seed in 0u64..1000, s in 0.01f64..100.0, t in -50.0f64..50.0) {
        let data = grade_blobs(5, 3, 0.3, seed);
        let (x, y): (Vec<Vec<f64>>, Vec<GradeLabel>) = data.into_iter().unzip();
        let xs: Vec<Vec<f64>> = x.iter().map(|r| r.iter().map(|v| v * s + t).collect()).collect();
        let a = train_grade_classifier(&x, &y, None, 0.1).unwrap();
        let b = train_grade_classifier(&xs, &y, None, 0.1).unwrap();
        for r in &x {
            let rs: Vec<f64> = r.iter().map(|v| v * s + t).collect();
            let (sa, sb) = (a.scores(r).unwrap(), b.scores(&rs).unwrap());
            prop_assert!(sa.iter().zip(&sb).all(|(p, q)| (p - q).abs() < 1e-6));
        }
    }
}

#[test]
fn grade_index_feature_is_perfect() {
    let labels = corpus_labels(60, 1);
    let corpus: Vec<(TextFeatures, GradeLabel)> =
        labels.iter().map(|g| (row(&[("grade", g.index() as f64)]), *g)).collect();
    let eval = evaluate_features(&corpus, &[FeatureSubset::new("grade", &["grade"])], 10, 3, None, 0.1).unwrap();
    assert_eq!(eval.rows[0].macro_f1, 1.0);
}

#[test]
fn constant_feature_gives_majority_baseline() {
    let labels = corpus_labels(60, 2);
    let corpus: Vec<(TextFeatures, GradeLabel)> = labels.iter().map(|g| (row(&[("c", 2.5)]), *g)).collect();
    let eval = evaluate_features(&corpus, &[FeatureSubset::new("c", &["c"])], 10, 7, None, 0.1).unwrap();
    let plan = make_folds(60, 10, 1, 7).unwrap();
    let folds: Vec<Vec<usize>> = (0..10).map(|f| plan.test_indices(0, f).to_vec()).collect();
    let expect = oracle::macro_f1(&labels, &oracle::majority_predictions(&labels, &folds));
    assert!((eval.rows[0].macro_f1 - expect).abs() < 1e-12);
    // with G3 the majority in every fold the baseline is a single class
    let g3 = 2.0 * 0.4 / 1.4;
    assert!((expect - g3 / 4.0).abs() < 1e-12, "{expect}");
}

#[test]
fn classifier_rejects_bad_input() {
    let data = grade_blobs(3, 2, 0.1, 0);
    let (x, y): (Vec<Vec<f64>>, Vec<GradeLabel>) = data.into_iter().unzip();
    assert!(train_grade_classifier(&x, &y, None, 0.0).is_err());
    assert!(train_grade_classifier(&x[..4], &y[..4], None, DEFAULT_CLASSIFIER_LAMBDA).is_err());
    let one = vec![GradeLabel::G4; x.len()];
    assert!(train_grade_classifier(&x, &one, None, DEFAULT_CLASSIFIER_LAMBDA).is_err());
    let clf = train_grade_classifier(&x, &y, None, DEFAULT_CLASSIFIER_LAMBDA).unwrap();
    assert!(clf.predict(&[1.0]).is_err());
}

#[test]
fn unknown_subset_feature_is_an_error() {
    let labels = corpus_labels(20, 0);
    let corpus: Vec<(TextFeatures, GradeLabel)> = labels.iter().map(|g| (row(&[("a", 1.0)]), *g)).collect();
    assert!(evaluate_features(&corpus, &[FeatureSubset::new("b", &["b"])], 4, 0, None, 0.1).is_err());
}
