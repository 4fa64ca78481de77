use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Test-fold assignments for repeated k-fold cross-validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub n: usize,
    pub k: usize,
    pub reps: usize,
    pub seed: u64,
    /// `assignments[rep][fold]` lists the test indices of that fold.
    pub assignments: Vec<Vec<Vec<usize>>>,
}

impl FoldPlan {
    pub fn test_indices(&self, rep: usize, fold: usize) -> &[usize] {
        &self.assignments[rep][fold]
    }

    /// Indices outside the given test fold, in ascending order.
    pub fn train_indices(&self, rep: usize, fold: usize) -> Vec<usize> {
        let mut is_test = vec![false; self.n];
        for &i in self.test_indices(rep, fold) {
            is_test[i] = true;
        }
        (0..self.n).filter(|&i| !is_test[i]).collect()
    }

    /// All `(rep, fold)` pairs in report order.
    pub fn splits(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.reps).flat_map(move |r| (0..self.k).map(move |f| (r, f)))
    }
}

/// Shuffles `0..n` once per repetition with a seeded ChaCha generator and
/// cuts each shuffle into `k` contiguous blocks; the first `n % k` blocks
/// get one extra element.
pub fn make_folds(n: usize, k: usize, reps: usize, seed: u64) -> Result<FoldPlan> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("k must be at least 2, got {k}")));
    }
    if n < k {
        return Err(Error::InvalidInput(format!("cannot split {n} items into {k} folds")));
    }
    if reps == 0 {
        return Err(Error::InvalidInput("reps must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (base, extra) = (n / k, n % k);
    let assignments = (0..reps)
        .map(|_| {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut start = 0;
            (0..k)
                .map(|f| {
                    let len = base + usize::from(f < extra);
                    let fold = order[start..start + len].to_vec();
                    start += len;
                    fold
                })
                .collect()
        })
        .collect();
    Ok(FoldPlan {
        n,
        k,
        reps,
        seed,
        assignments,
    })
}
