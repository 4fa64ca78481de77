use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::metrics::pearson;
use crate::error::{Error, Result};
use crate::lexicon::LexiconEntry;
use crate::norms::PropertyKind;

/// Cronbach's alpha for `ratings[rater][item]`, with population variances.
/// `Ok(None)` when the total scores have zero variance.
pub fn cronbach_alpha(ratings: &[Vec<f64>]) -> Result<Option<f64>> {
    let k = ratings.len();
    if k < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 raters, got {k}")));
    }
    let n = ratings[0].len();
    if n < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 items, got {n}")));
    }
    if let Some(r) = ratings.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: r.len(),
        });
    }
    if ratings.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite rating".into()));
    }
    let variance = |v: &[f64]| {
        let m = v.iter().sum::<f64>() / v.len() as f64;
        v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / v.len() as f64
    };
    let totals: Vec<f64> = (0..n).map(|i| ratings.iter().map(|r| r[i]).sum()).collect();
    let total_var = variance(&totals);
    if total_var == 0.0 {
        return Ok(None);
    }
    let item_var: f64 = ratings.iter().map(|r| variance(r)).sum();
    let k = k as f64;
    Ok(Some(k / (k - 1.0) * (1.0 - item_var / total_var)))
}

/// Property pairs in the order reports list them.
pub const PROPERTY_PAIRS: [(PropertyKind, PropertyKind); 6] = [
    (PropertyKind::AgeOfAcquisition, PropertyKind::Concreteness),
    (PropertyKind::AgeOfAcquisition, PropertyKind::Imageability),
    (PropertyKind::AgeOfAcquisition, PropertyKind::SubjectiveFrequency),
    (PropertyKind::Imageability, PropertyKind::SubjectiveFrequency),
    (PropertyKind::Concreteness, PropertyKind::SubjectiveFrequency),
    (PropertyKind::Imageability, PropertyKind::Concreteness),
];

/// Symmetric 4x4 Pearson matrix indexed by [`PropertyKind::index`].
/// `None` cells are undefined (a constant column).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub n: usize,
    pub cells: [[Option<f64>; 4]; 4],
}

impl CorrelationMatrix {
    pub fn get(&self, a: PropertyKind, b: PropertyKind) -> Option<f64> {
        self.cells[a.index()][b.index()]
    }

    /// Plain-text rendering, one row per property pair.
    pub fn render_pairs(&self) -> String {
        let mut out = format!("{:<32}{:>8}\n", format!("Properties compared (n={})", self.n), "r");
        for (a, b) in PROPERTY_PAIRS {
            let label = format!("{} vs {}", a.label(), b.label());
            let value = self.get(a, b).map_or("undef".to_string(), |r| format!("{r:.2}"));
            let _ = writeln!(out, "{label:<32}{value:>8}");
        }
        out
    }
}

/// Pearson correlations among the four inferred properties.
pub fn property_correlations(lexicon: &[LexiconEntry]) -> Result<CorrelationMatrix> {
    if lexicon.is_empty() {
        return Err(Error::InvalidInput("lexicon is empty".into()));
    }
    let columns: Vec<Vec<f64>> = PropertyKind::ALL
        .iter()
        .map(|p| lexicon.iter().map(|e| e.ratings.get(*p)).collect())
        .collect();
    let mut cells = [[None; 4]; 4];
    for i in 0..4 {
        for j in i..4 {
            let r = if lexicon.len() < 2 {
                None
            } else if i == j {
                pearson(&columns[i], &columns[i])?.map(|_| 1.0)
            } else {
                pearson(&columns[i], &columns[j])?
            };
            cells[i][j] = r;
            cells[j][i] = r;
        }
    }
    Ok(CorrelationMatrix {
        n: lexicon.len(),
        cells,
    })
}
