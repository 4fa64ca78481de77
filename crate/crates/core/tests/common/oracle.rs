//! Independent reference implementations used to check the library.

use nalgebra::{DMatrix, DVector};

/// Ridge with an unpenalized intercept, solved jointly on raw features:
/// minimize |y - b - X beta|^2 + lambda * sum (s_j beta_j)^2 with s the
/// population standard deviation. Returns weights in standardized units
/// (s_j beta_j) and the intercept of the standardized model.
pub fn ridge(rows: &[Vec<f64>], y: &[f64], lambda: f64) -> (Vec<f64>, f64) {
    let n = rows.len();
    let d = rows[0].len();
    let x = DMatrix::from_fn(n, d + 1, |i, j| if j == 0 { 1.0 } else { rows[i][j - 1] });
    let means: Vec<f64> = (0..d).map(|j| x.column(j + 1).mean()).collect();
    let stds: Vec<f64> = (0..d)
        .map(|j| {
            let s = x.column(j + 1).map(|v| (v - means[j]).powi(2)).mean().sqrt();
            if s == 0.0 { 1.0 } else { s }
        })
        .collect();
    let mut a = x.transpose() * &x;
    for j in 0..d {
        a[(j + 1, j + 1)] += lambda * stds[j] * stds[j];
    }
    let rhs = x.transpose() * DVector::from_column_slice(y);
    let beta = a.lu().solve(&rhs).expect("oracle system is regular");
    let w: Vec<f64> = (0..d).map(|j| beta[j + 1] * stds[j]).collect();
    let intercept = beta[0] + (0..d).map(|j| beta[j + 1] * means[j]).sum::<f64>();
    (w, intercept)
}

/// 1-based ranks with ties sharing the mean of their positions, by
/// counting rather than sorting.
pub fn ranks(v: &[f64]) -> Vec<f64> {
    v.iter()
        .map(|x| {
            let below = v.iter().filter(|y| *y < x).count() as f64;
            let equal = v.iter().filter(|y| *y == x).count() as f64;
            below + (equal + 1.0) / 2.0
        })
        .collect()
}

/// Textbook Pearson correlation.
pub fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
    let cov: f64 = a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = b.iter().map(|y| (y - mb).powi(2)).sum();
    cov / (va * vb).sqrt()
}

/// Macro-F1 over the union of gold and predicted classes.
pub fn macro_f1<T: Copy + Ord>(gold: &[T], pred: &[T]) -> f64 {
    let mut classes: Vec<T> = gold.iter().chain(pred).copied().collect();
    classes.sort();
    classes.dedup();
    let f1s: Vec<f64> = classes
        .iter()
        .map(|c| {
            let tp = gold.iter().zip(pred).filter(|(g, p)| *g == c && *p == c).count() as f64;
            let fp = gold.iter().zip(pred).filter(|(g, p)| *g != c && *p == c).count() as f64;
            let fne = gold.iter().zip(pred).filter(|(g, p)| *g == c && *p != c).count() as f64;
            if tp == 0.0 { 0.0 } else { 2.0 * tp / (2.0 * tp + fp + fne) }
        })
        .collect();
    f1s.iter().sum::<f64>() / f1s.len() as f64
}

/// Pooled predictions of a rule that answers the most frequent training
/// label of each fold (ties to the smallest label).
pub fn majority_predictions<T: Copy + Ord>(labels: &[T], test_folds: &[Vec<usize>]) -> Vec<T> {
    let mut pred = labels.to_vec();
    for test in test_folds {
        let mut counts = std::collections::BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if !test.contains(&i) {
                *counts.entry(*l).or_insert(0usize) += 1;
            }
        }
        let best = counts.values().copied().max().unwrap();
        let majority = *counts.iter().find(|(_, c)| **c == best).unwrap().0;
        for &i in test {
            pred[i] = majority;
        }
    }
    pred
}
