//! Small dense helpers for the symmetric positive-definite solves used by
//! ridge regression and the kernel classifier. Matrices are row-major.

/// Lower-triangular Cholesky factor of an SPD matrix.
#[derive(Debug, Clone)]
pub(crate) struct Cholesky {
    n: usize,
    l: Vec<f64>,
}

/// Pivots below this fraction of the largest diagonal entry are treated as
/// a rank deficiency.
const RELATIVE_PIVOT_TOL: f64 = 1e-12;

impl Cholesky {
    /// Factors `a` (n x n, symmetric; only the lower triangle is read).
    /// Returns `None` if the matrix is not numerically positive definite.
    pub(crate) fn factor(a: &[f64], n: usize) -> Option<Self> {
        debug_assert_eq!(a.len(), n * n);
        let max_diag = (0..n).map(|i| a[i * n + i].abs()).fold(0.0, f64::max);
        let tol = RELATIVE_PIVOT_TOL * max_diag.max(f64::MIN_POSITIVE);
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let row_j = j * n;
            let mut d = a[row_j + j];
            for k in 0..j {
                d -= l[row_j + k] * l[row_j + k];
            }
            if d.is_nan() || d <= tol {
                return None;
            }
            let djj = d.sqrt();
            l[row_j + j] = djj;
            for i in (j + 1)..n {
                let row_i = i * n;
                let mut s = a[row_i + j];
                for k in 0..j {
                    s -= l[row_i + k] * l[row_j + k];
                }
                l[row_i + j] = s / djj;
            }
        }
        Some(Cholesky { n, l })
    }

    /// Solves `A x = b`.
    pub(crate) fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        debug_assert_eq!(b.len(), n);
        let mut y = b.to_vec();
        for i in 0..n {
            let row = i * n;
            let s = y[i] - dot(&self.l[row..row + i], &y[..i]);
            y[i] = s / self.l[row + i];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for (k, yk) in y.iter().enumerate().skip(i + 1) {
                s -= self.l[k * n + i] * yk;
            }
            y[i] = s / self.l[i * n + i];
        }
        y
    }
}

/// `Zᵀ Z` for a row-major `rows x cols` matrix.
pub(crate) fn gram(z: &[f64], rows: usize, cols: usize) -> Vec<f64> {
    let mut g = vec![0.0; cols * cols];
    for r in 0..rows {
        let row = &z[r * cols..(r + 1) * cols];
        for i in 0..cols {
            let zi = row[i];
            if zi == 0.0 {
                continue;
            }
            let gi = &mut g[i * cols..i * cols + i + 1];
            for (j, gij) in gi.iter_mut().enumerate() {
                *gij += zi * row[j];
            }
        }
    }
    for i in 0..cols {
        for j in 0..i {
            g[j * cols + i] = g[i * cols + j];
        }
    }
    g
}

/// `Zᵀ y`.
pub(crate) fn xt_y(z: &[f64], rows: usize, cols: usize, y: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; cols];
    for r in 0..rows {
        let yr = y[r];
        for (o, zv) in out.iter_mut().zip(&z[r * cols..(r + 1) * cols]) {
            *o += zv * yr;
        }
    }
    out
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
