//! One-vs-rest kernel regularized least squares with a Gaussian kernel,
//! used as the grade-level classifier. Training is a single SPD solve:
//! `(K + λI) A = Y` with `Y[i][c] = +1` if text `i` has class `c`, else -1.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Cholesky;
use crate::regression::{DesignMatrix, Standardizer};

pub const DEFAULT_CLASSIFIER_LAMBDA: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GradeLabel {
    G3,
    G4,
    G5,
    G6,
}

impl GradeLabel {
    pub const ALL: [GradeLabel; 4] = [GradeLabel::G3, GradeLabel::G4, GradeLabel::G5, GradeLabel::G6];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for GradeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}", self.index() + 3)
    }
}

impl FromStr for GradeLabel {
    type Err = Error;

    /// Accepts `3`, `G3`, `3rd`, `6th` and so on.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_lowercase();
        let t = t.trim_start_matches('g').trim_end_matches(|c: char| c.is_alphabetic());
        match t {
            "3" => Ok(GradeLabel::G3),
            "4" => Ok(GradeLabel::G4),
            "5" => Ok(GradeLabel::G5),
            "6" => Ok(GradeLabel::G6),
            _ => Err(Error::InvalidInput(format!("unknown grade '{s}' (expected 3 to 6)"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GradeClassifier {
    standardizer: Standardizer,
    points: Vec<Vec<f64>>,
    classes: Vec<GradeLabel>,
    /// `coef[c][i]`: dual coefficient of training point `i` for class `c`.
    coef: Vec<Vec<f64>>,
    gamma: f64,
}

fn rbf(a: &[f64], b: &[f64], gamma: f64) -> f64 {
    let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    (-gamma * d2).exp()
}

/// Trains the classifier on standardized features. `gamma = None` uses
/// `1 / feature count`.
pub fn train_grade_classifier(
    features: &[Vec<f64>],
    labels: &[GradeLabel],
    gamma: Option<f64>,
    lambda: f64,
) -> Result<GradeClassifier> {
    let n = features.len();
    if labels.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: labels.len(),
        });
    }
    if n < 8 {
        return Err(Error::InvalidInput(format!("need at least 8 texts, got {n}")));
    }
    let mut classes: Vec<GradeLabel> = labels.to_vec();
    classes.sort();
    classes.dedup();
    if classes.len() < 2 {
        return Err(Error::InvalidInput("training corpus has a single grade".into()));
    }
    let d = features[0].len();
    if d == 0 {
        return Err(Error::InvalidInput("no features selected".into()));
    }
    let gamma = gamma.unwrap_or(1.0 / d as f64);
    if !(gamma.is_finite() && gamma >= 0.0) {
        return Err(Error::InvalidInput(format!("gamma must be finite and non-negative, got {gamma}")));
    }
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidInput(format!("lambda must be positive, got {lambda}")));
    }
    let x = DesignMatrix::from_rows(features, vec![0.0; n])?;
    let standardizer = Standardizer::fit(&x);
    let points: Vec<Vec<f64>> = features.iter().map(|f| standardizer.transform(f)).collect();

    let mut k = vec![0.0; n * n];
    for i in 0..n {
        k[i * n + i] = 1.0 + lambda;
        for j in 0..i {
            let v = rbf(&points[i], &points[j], gamma);
            k[i * n + j] = v;
            k[j * n + i] = v;
        }
    }
    let chol = Cholesky::factor(&k, n)
        .ok_or_else(|| Error::Numerical("regularized kernel matrix is not positive definite".into()))?;
    let coef = classes
        .iter()
        .map(|c| {
            let y: Vec<f64> = labels.iter().map(|l| if l == c { 1.0 } else { -1.0 }).collect();
            chol.solve(&y)
        })
        .collect();
    Ok(GradeClassifier {
        standardizer,
        points,
        classes,
        coef,
        gamma,
    })
}

impl GradeClassifier {
    pub fn classes(&self) -> &[GradeLabel] {
        &self.classes
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// One score per class in [`GradeClassifier::classes`] order.
    pub fn scores(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.standardizer.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.standardizer.dim(),
                found: x.len(),
            });
        }
        let z = self.standardizer.transform(x);
        let kx: Vec<f64> = self.points.iter().map(|p| rbf(&z, p, self.gamma)).collect();
        Ok(self
            .coef
            .iter()
            .map(|a| a.iter().zip(&kx).map(|(a, k)| a * k).sum())
            .collect())
    }

    /// Highest-scoring class; ties (scores within 1e-9 of the largest
    /// magnitude) go to the lower grade.
    pub fn predict(&self, x: &[f64]) -> Result<GradeLabel> {
        let scores = self.scores(x)?;
        let tol = 1e-9 * scores.iter().fold(f64::MIN_POSITIVE, |m, s| m.max(s.abs()));
        let mut best = 0;
        for (i, s) in scores.iter().enumerate().skip(1) {
            if *s > scores[best] + tol {
                best = i;
            }
        }
        Ok(self.classes[best])
    }
}

/// Macro-averaged F1 over every class that occurs in `gold` or `pred`.
/// A class with no true positives scores 0.
pub fn macro_f1(gold: &[GradeLabel], pred: &[GradeLabel]) -> f64 {
    let mut classes: Vec<GradeLabel> = gold.iter().chain(pred).copied().collect();
    classes.sort();
    classes.dedup();
    if classes.is_empty() {
        return 0.0;
    }
    let total: f64 = classes
        .iter()
        .map(|c| {
            let tp = gold.iter().zip(pred).filter(|(g, p)| *g == c && *p == c).count() as f64;
            let fp = gold.iter().zip(pred).filter(|(g, p)| *g != c && *p == c).count() as f64;
            let fn_ = gold.iter().zip(pred).filter(|(g, p)| *g == c && *p != c).count() as f64;
            if tp == 0.0 {
                0.0
            } else {
                2.0 * tp / (2.0 * tp + fp + fn_)
            }
        })
        .sum();
    total / classes.len() as f64
}
