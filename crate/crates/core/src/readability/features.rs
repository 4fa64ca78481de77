use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::formulas::classic_formulas;
use super::profile::TextProfile;
use crate::lexicon::LexiconIndex;
use crate::norms::{LikertScale, PropertyKind};

pub const CLASSIC_FEATURES: [&str; 6] = ["flesch_bp", "honore", "brunet", "dale_chall", "gunning_fog", "mattr"];

pub const PSYCHOLINGUISTIC_FEATURES: [&str; 8] = [
    "mean_concreteness",
    "std_concreteness",
    "mean_aoa",
    "std_aoa",
    "mean_imageability",
    "std_imageability",
    "mean_subj_frequency",
    "std_subj_frequency",
];

/// Mean and population std of each property over the tokens found in the
/// lexicon, weighted by occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsycholinguisticFeatures {
    pub mean: [f64; 4],
    pub std: [f64; 4],
    pub covered_tokens: usize,
    /// True when no token was found and the midpoint fill was used.
    pub uncovered: bool,
}

impl PsycholinguisticFeatures {
    pub fn named(&self) -> Vec<(String, f64)> {
        PropertyKind::ALL
            .iter()
            .flat_map(|p| {
                let i = p.index();
                [
                    (format!("mean_{}", p.key()), self.mean[i]),
                    (format!("std_{}", p.key()), self.std[i]),
                ]
            })
            .collect()
    }
}

pub fn psycholinguistic_features(p: &TextProfile, lexicon: &LexiconIndex) -> PsycholinguisticFeatures {
    let covered: Vec<[f64; 4]> = p.tokens.iter().filter_map(|t| lexicon.get(t)).map(|r| r.0).collect();
    if covered.is_empty() {
        let mid = LikertScale::SEVEN_POINT.midpoint();
        return PsycholinguisticFeatures {
            mean: [mid; 4],
            std: [mid; 4],
            covered_tokens: 0,
            uncovered: true,
        };
    }
    let n = covered.len() as f64;
    let mut mean = [0.0; 4];
    let mut std = [0.0; 4];
    for i in 0..4 {
        let m = covered.iter().map(|r| r[i]).sum::<f64>() / n;
        let var = covered.iter().map(|r| (r[i] - m) * (r[i] - m)).sum::<f64>() / n;
        mean[i] = m;
        std[i] = var.sqrt();
    }
    PsycholinguisticFeatures {
        mean,
        std,
        covered_tokens: covered.len(),
        uncovered: false,
    }
}

/// All readability features of one text by name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TextFeatures {
    pub values: BTreeMap<String, f64>,
    pub covered_tokens: usize,
    pub lexicon_uncovered: bool,
}

impl TextFeatures {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    /// Values of `names` in order; `None` if any name is unknown.
    pub fn select<S: AsRef<str>>(&self, names: &[S]) -> Option<Vec<f64>> {
        names.iter().map(|n| self.get(n.as_ref())).collect()
    }
}

pub fn text_features(
    p: &TextProfile,
    easy_words: &HashSet<String>,
    lexicon: &LexiconIndex,
    mattr_window: usize,
) -> TextFeatures {
    let classic = classic_formulas(p, easy_words, mattr_window);
    let psych = psycholinguistic_features(p, lexicon);
    let mut values: BTreeMap<String, f64> = classic.named().iter().map(|(k, v)| (k.to_string(), *v)).collect();
    values.extend(psych.named());
    TextFeatures {
        values,
        covered_tokens: psych.covered_tokens,
        lexicon_uncovered: psych.uncovered,
    }
}
