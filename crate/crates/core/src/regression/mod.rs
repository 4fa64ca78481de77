//! Closed-form ridge regression per feature view and multi-view fusion.
//!
//! Each view gets its own L2-regularized least-squares model fitted in
//! standardized coordinates with an unpenalized intercept:
//!
//! ```text
//! (ZᵀZ + λI) w = Zᵀ(y − ȳ),   ŷ(x) = ȳ + w · ((x − μ) / σ)
//! ```
//!
//! A [`MultiViewModel`] averages the predictions of its per-view models.

mod multiview;

pub(crate) use multiview::FeatureTable;
pub use multiview::{predict_multiview, train_multiview, MultiViewModel, ViewSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{FeatureVector, ViewKind};
use crate::linalg::{dot, gram, xt_y, Cholesky};

/// Default regularization strength on standardized features.
pub const DEFAULT_LAMBDA: f64 = 1.0;

/// Training inputs: an `n x d` row-major matrix and its targets.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    targets: Vec<f64>,
}

impl DesignMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>, targets: Vec<f64>) -> Result<Self> {
        if rows < 2 {
            return Err(Error::InvalidInput(format!("need at least 2 rows, got {rows}")));
        }
        if cols == 0 {
            return Err(Error::InvalidInput("design matrix has no columns".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if targets.len() != rows {
            return Err(Error::DimensionMismatch {
                expected: rows,
                found: targets.len(),
            });
        }
        if data.iter().chain(&targets).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("design matrix contains non-finite values".into()));
        }
        Ok(DesignMatrix {
            rows,
            cols,
            data,
            targets,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>], targets: Vec<f64>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        DesignMatrix::new(rows.len(), cols, rows.concat(), targets)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }
}

/// Column means and population standard deviations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

impl Standardizer {
    /// Fits on the columns of `x`. A constant column gets std 1.
    pub fn fit(x: &DesignMatrix) -> Self {
        let n = x.rows as f64;
        let mut means = vec![0.0; x.cols];
        for r in 0..x.rows {
            for (m, v) in means.iter_mut().zip(x.row(r)) {
                *m += v;
            }
        }
        means.iter_mut().for_each(|m| *m /= n);
        let mut vars = vec![0.0; x.cols];
        for r in 0..x.rows {
            for ((s, v), m) in vars.iter_mut().zip(x.row(r)).zip(&means) {
                let d = v - m;
                *s += d * d;
            }
        }
        let stds = vars
            .iter()
            .zip(&means)
            .map(|(s, m)| {
                let sd = (s / n).sqrt();
                if sd == 0.0 || sd <= 1e-12 * m.abs() {
                    1.0
                } else {
                    sd
                }
            })
            .collect();
        Standardizer { means, stds }
    }

    pub fn dim(&self) -> usize {
        self.means.len()
    }

    pub fn transform(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.means)
            .zip(&self.stds)
            .map(|((v, m), s)| (v - m) / s)
            .collect()
    }
}

/// Free-function form of [`Standardizer::fit`].
pub fn fit_standardizer(x: &DesignMatrix) -> Standardizer {
    Standardizer::fit(x)
}

/// A fitted ridge model for one view.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RidgeModel {
    pub view: ViewKind,
    pub lambda: f64,
    pub standardizer: Standardizer,
    pub weights: Vec<f64>,
    pub intercept: f64,
}

impl RidgeModel {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Prediction from raw (unstandardized) feature values.
    pub fn predict_values(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(self.intercept + dot(&self.weights, &self.standardizer.transform(x)))
    }

    pub fn predict(&self, x: &FeatureVector) -> Result<f64> {
        if x.view != self.view {
            return Err(Error::ViewMismatch {
                expected: self.view,
                found: x.view,
            });
        }
        self.predict_values(&x.values)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let d = self.dim();
        if d == 0 || self.standardizer.means.len() != d || self.standardizer.stds.len() != d {
            return Err(Error::InvalidInput(format!("inconsistent dimensions in {} model", self.view)));
        }
        if self.lambda.is_nan() || self.lambda < 0.0
            || self.standardizer.stds.iter().any(|s| !(s.is_finite() && *s > 0.0))
            || self
                .weights
                .iter()
                .chain(&self.standardizer.means)
                .chain(std::iter::once(&self.intercept))
                .any(|v| !v.is_finite())
        {
            return Err(Error::InvalidInput(format!("invalid parameters in {} model", self.view)));
        }
        Ok(())
    }
}

/// Fits a ridge model. The intercept is not penalized.
pub fn train_ridge(x: &DesignMatrix, lambda: f64, view: ViewKind) -> Result<RidgeModel> {
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::InvalidInput(format!("lambda must be finite and non-negative, got {lambda}")));
    }
    let (n, d) = (x.rows, x.cols);
    let standardizer = Standardizer::fit(x);
    let mut z = Vec::with_capacity(n * d);
    for r in 0..n {
        z.extend(standardizer.transform(x.row(r)));
    }
    let y_mean = x.targets.iter().sum::<f64>() / n as f64;
    let centered: Vec<f64> = x.targets.iter().map(|y| y - y_mean).collect();

    let mut g = gram(&z, n, d);
    for i in 0..d {
        g[i * d + i] += lambda;
    }
    let rhs = xt_y(&z, n, d, &centered);
    let chol = Cholesky::factor(&g, d).ok_or(if lambda == 0.0 {
        Error::RankDeficient
    } else {
        Error::Numerical(format!("regularized Gram matrix is not positive definite (lambda = {lambda})"))
    })?;
    let weights = chol.solve(&rhs);
    if weights.iter().any(|w| !w.is_finite()) {
        return Err(Error::Numerical("ridge solve produced non-finite weights".into()));
    }
    Ok(RidgeModel {
        view,
        lambda,
        standardizer,
        weights,
        intercept: y_mean,
    })
}

/// Free-function form of [`RidgeModel::predict`].
pub fn predict_ridge(model: &RidgeModel, x: &FeatureVector) -> Result<f64> {
    model.predict(x)
}
