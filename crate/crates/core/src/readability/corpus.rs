use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::classifier::{macro_f1, train_grade_classifier, GradeLabel};
use super::features::{TextFeatures, PSYCHOLINGUISTIC_FEATURES};
use crate::error::{Error, Result};
use crate::evaluation::make_folds;
use crate::norms::read_csv_rows;

/// One text of a labeled readability corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledText {
    pub file: String,
    pub text: String,
    pub grade: GradeLabel,
}

/// Loads the texts listed in a `file,grade` manifest; file names are
/// relative to `dir`.
pub fn load_corpus(dir: &Path, manifest: &Path) -> Result<Vec<LabeledText>> {
    let mut seen = HashSet::new();
    read_csv_rows(manifest, &["file", "grade"])?
        .into_iter()
        .map(|(line, rec)| {
            if rec.len() != 2 {
                return Err(Error::parse(manifest, line, "expected 2 fields (file,grade)"));
            }
            let file = rec[0].to_string();
            if !seen.insert(file.clone()) {
                return Err(Error::parse(manifest, line, format!("'{file}' listed twice")));
            }
            let grade = rec[1].parse().map_err(|e: Error| Error::parse(manifest, line, e.to_string()))?;
            let path = dir.join(&file);
            let text = std::fs::read_to_string(&path).map_err(|e| Error::io(path, e))?;
            Ok(LabeledText { file, text, grade })
        })
        .collect()
}

/// A named list of feature names evaluated together.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureSubset {
    pub name: String,
    pub features: Vec<String>,
}

impl FeatureSubset {
    pub fn new<S: AsRef<str>>(name: &str, features: &[S]) -> Self {
        FeatureSubset {
            name: name.to_string(),
            features: features.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }
}

/// Single formulas, each property's (mean, std) pair, and the combined
/// psycholinguistic set, in report column order.
pub fn default_feature_subsets() -> Vec<FeatureSubset> {
    vec![
        FeatureSubset::new("Flesch", &["flesch_bp"]),
        FeatureSubset::new("Honoré", &["honore"]),
        FeatureSubset::new("Concreteness", &["mean_concreteness", "std_concreteness"]),
        FeatureSubset::new("Imageability", &["mean_imageability", "std_imageability"]),
        FeatureSubset::new("AoA", &["mean_aoa", "std_aoa"]),
        FeatureSubset::new("Dale-Chall", &["dale_chall"]),
        FeatureSubset::new("Gunning Fog", &["gunning_fog"]),
        FeatureSubset::new("Subjective Frequency", &["mean_subj_frequency", "std_subj_frequency"]),
        FeatureSubset::new("Psycholinguistics", &PSYCHOLINGUISTIC_FEATURES),
        FeatureSubset::new("MATTR", &["mattr"]),
        FeatureSubset::new("Brunét", &["brunet"]),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetScore {
    pub name: String,
    pub features: Vec<String>,
    pub gamma: f64,
    pub macro_f1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReadabilityEvaluation {
    pub classifier: String,
    pub texts: usize,
    pub folds: usize,
    pub seed: u64,
    pub lambda: f64,
    pub rows: Vec<SubsetScore>,
}

impl ReadabilityEvaluation {
    pub fn row(&self, name: &str) -> Option<&SubsetScore> {
        self.rows.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One header line of subset names and one line of macro-F1 values.
    pub fn render_table(&self) -> String {
        let mut out = format!(
            "{}, {} texts, {}-fold CV, macro-F1\n",
            self.classifier, self.texts, self.folds
        );
        let widths: Vec<usize> = self.rows.iter().map(|r| r.name.chars().count().max(5) + 2).collect();
        let _ = write!(out, "{:<10}", "Features");
        for (r, w) in self.rows.iter().zip(&widths) {
            let _ = write!(out, "{:>w$}", r.name, w = *w);
        }
        let _ = write!(out, "\n{:<10}", "F1");
        for (r, w) in self.rows.iter().zip(&widths) {
            let _ = write!(out, "{:>w$.2}", r.macro_f1, w = *w);
        }
        out.push('\n');
        out
    }
}

/// Cross-validated macro-F1 of the grade classifier for each feature
/// subset. Predictions from all folds are pooled before scoring.
pub fn evaluate_features(
    corpus: &[(TextFeatures, GradeLabel)],
    subsets: &[FeatureSubset],
    folds: usize,
    seed: u64,
    gamma: Option<f64>,
    lambda: f64,
) -> Result<ReadabilityEvaluation> {
    let plan = make_folds(corpus.len(), folds, 1, seed)?;
    let labels: Vec<GradeLabel> = corpus.iter().map(|(_, g)| *g).collect();
    let mut rows = Vec::with_capacity(subsets.len());
    for subset in subsets {
        let x: Vec<Vec<f64>> = corpus
            .iter()
            .map(|(f, _)| {
                f.select(&subset.features).ok_or_else(|| {
                    Error::InvalidInput(format!("unknown feature in subset '{}'", subset.name))
                })
            })
            .collect::<Result<_>>()?;
        let per_fold: Vec<Vec<(usize, GradeLabel)>> = (0..folds)
            .into_par_iter()
            .map(|f| {
                let train = plan.train_indices(0, f);
                let tx: Vec<Vec<f64>> = train.iter().map(|&i| x[i].clone()).collect();
                let ty: Vec<GradeLabel> = train.iter().map(|&i| labels[i]).collect();
                let clf = train_grade_classifier(&tx, &ty, gamma, lambda)?;
                plan.test_indices(0, f)
                    .iter()
                    .map(|&i| Ok((i, clf.predict(&x[i])?)))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let mut pred = labels.clone();
        for (i, p) in per_fold.into_iter().flatten() {
            pred[i] = p;
        }
        rows.push(SubsetScore {
            name: subset.name.clone(),
            features: subset.features.clone(),
            gamma: gamma.unwrap_or(1.0 / subset.features.len().max(1) as f64),
            macro_f1: macro_f1(&labels, &pred),
        });
    }
    Ok(ReadabilityEvaluation {
        classifier: "kernel regularized least squares, RBF kernel (one-vs-rest)".into(),
        texts: corpus.len(),
        folds,
        seed,
        lambda,
        rows,
    })
}
