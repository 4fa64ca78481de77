mod common;

use common::oracle;
use proptest::prelude::*;
use psynorm::regression::{train_multiview, train_ridge, DesignMatrix};
use psynorm::synthetic::linear_norms;
use psynorm::{Error, PropertyKind, ViewKind, ViewSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_problem(rng: &mut ChaCha8Rng, n: usize, d: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..d).map(|j| rng.random_range(-2.0..2.0) * (j + 1) as f64 + j as f64).collect())
        .collect();
    let y = rows.iter().map(|r| r.iter().sum::<f64>() * 0.1 + rng.random_range(-1.0..1.0)).collect();
    (rows, y)
}

fn rel_err(a: &[f64], b: &[f64]) -> f64 {
    let diff: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let norm: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    diff / norm.max(1e-300)
}

#[test]
fn matches_dense_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for case in 0..60 {
        let n = rng.random_range(5..=60);
        let d = rng.random_range(1..=20);
        let lambda = [0.01, 0.5, 10.0][case % 3];
        let (rows, y) = random_problem(&mut rng, n, d);
        let m = train_ridge(&DesignMatrix::from_rows(&rows, y.clone()).unwrap(), lambda, ViewKind::Lexical).unwrap();
        let (w, b) = oracle::ridge(&rows, &y, lambda);
        assert!(rel_err(&m.weights, &w) < 1e-8, "case {case}: n={n} d={d}");
        assert!((m.intercept - b).abs() < 1e-8 * (1.0 + b.abs()));
    }
}

#[test]
fn shrinkage_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (rows, y) = random_problem(&mut rng, 40, 6);
    let x = DesignMatrix::from_rows(&rows, y).unwrap();
    let norms: Vec<f64> = [0.0, 0.1, 1.0, 10.0, 100.0, 1e4]
        .iter()
        .map(|l| train_ridge(&x, *l, ViewKind::Lexical).unwrap().weights.iter().map(|w| w * w).sum::<f64>())
        .collect();
    assert!(norms.windows(2).all(|p| p[1] <= p[0] + 1e-12), "{norms:?}");
    assert!(norms[5] < 1e-3 * norms[0]);
}

#[test]
fn prediction_at_the_mean_is_the_target_mean() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (rows, y) = random_problem(&mut rng, 25, 4);
    let m = train_ridge(&DesignMatrix::from_rows(&rows, y.clone()).unwrap(), 3.0, ViewKind::Lexical).unwrap();
    let mean_row: Vec<f64> = (0..4).map(|j| rows.iter().map(|r| r[j]).sum::<f64>() / 25.0).collect();
    let y_mean = y.iter().sum::<f64>() / 25.0;
    assert!((m.predict_values(&mean_row).unwrap() - y_mean).abs() < 1e-10);
}

#[test]
fn failures_are_typed() {
    let dup = DesignMatrix::from_rows(&[vec![1.0, 1.0], vec![2.0, 2.0], vec![3.0, 3.0]], vec![1.0, 2.0, 3.0]).unwrap();
    assert!(matches!(train_ridge(&dup, 0.0, ViewKind::Lexical), Err(Error::RankDeficient)));
    assert!(train_ridge(&dup, 0.1, ViewKind::Lexical).is_ok());
    assert!(train_ridge(&dup, -1.0, ViewKind::Lexical).is_err());
    assert!(DesignMatrix::from_rows(&[vec![1.0]], vec![1.0]).is_err());
    assert!(DesignMatrix::from_rows(&[vec![1.0], vec![f64::NAN]], vec![1.0, 2.0]).is_err());
    let m = train_ridge(&dup, 0.1, ViewKind::Lexical).unwrap();
    assert!(matches!(m.predict_values(&[1.0]), Err(Error::DimensionMismatch { expected: 2, found: 1 })));
}

#[test]
fn unavailable_view_is_reported() {
    let mut data = linear_norms(PropertyKind::Concreteness, 50, 3, 0.1, 4);
    data.resources.embedding_b = None;
    let err = train_multiview(PropertyKind::Concreteness, &data.dataset, ViewSet::ALL, &data.resources, 1.0);
    assert!(matches!(err, Err(Error::ViewUnavailable(ViewKind::EmbeddingB))));
    let wrong = train_multiview(PropertyKind::Imageability, &data.dataset, ViewSet::LEXICAL, &data.resources, 1.0);
    assert!(wrong.is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn row_permutation_invariance(seed in 0u64..10_000, n in 5usize..40, d in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (rows, y) = random_problem(&mut rng, n, d);
        let m = train_ridge(&DesignMatrix::from_rows(&rows, y.clone()).unwrap(), 0.5, ViewKind::Lexical).unwrap();
        let perm: Vec<usize> = (0..n).rev().collect();
        let prow: Vec<Vec<f64>> = perm.iter().map(|&i| rows[i].clone()).collect();
        let py: Vec<f64> = perm.iter().map(|&i| y[i]).collect();
        let p = train_ridge(&DesignMatrix::from_rows(&prow, py).unwrap(), 0.5, ViewKind::Lexical).unwrap();
        prop_assert!(rel_err(&p.weights, &m.weights) < 1e-9);
    }

    #[test]
    fn column_scale_invariance(seed in 0u64..10_000, scale in 1e-3f64..1e3, shift in -100.0f64..100.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (rows, y) = random_problem(&mut rng, 30, 3);
        let m = train_ridge(&DesignMatrix::from_rows(&rows, y.clone()).unwrap(), 1.0, ViewKind::Lexical).unwrap();
        let scaled: Vec<Vec<f64>> = rows.iter().map(|r| vec![r[0] * scale + shift, r[1], r[2]]).collect();
        let s = train_ridge(&DesignMatrix::from_rows(&scaled, y).unwrap(), 1.0, ViewKind::Lexical).unwrap();
        prop_assert!(rel_err(&s.weights, &m.weights) < 1e-7);
        let probe = [0.3, -1.0, 2.0];
        let a = m.predict_values(&probe).unwrap();
        let b = s.predict_values(&[probe[0] * scale + shift, probe[1], probe[2]]).unwrap();
        prop_assert!((a - b).abs() < 1e-7 * (1.0 + a.abs()));
    }
}
