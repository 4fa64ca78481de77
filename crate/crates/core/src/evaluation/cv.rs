use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::folds::FoldPlan;
use super::metrics::{mse, pearson, spearman};
use crate::error::{Error, Result};
use crate::features::FeatureResources;
use crate::norms::{LikertScale, NormDataset, PropertyKind};
use crate::regression::{FeatureTable, ViewSet};

/// Run parameters echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub property: PropertyKind,
    pub scale: LikertScale,
    pub dataset_size: usize,
    pub seed: u64,
    pub k: usize,
    pub reps: usize,
    pub lambda: f64,
}

/// Scores of one held-out fold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldScore {
    pub rep: usize,
    pub fold: usize,
    /// Size of the test fold.
    pub n_test: usize,
    /// Test items for which at least one view of the combination was
    /// available.
    pub n_scored: usize,
    pub mse: Option<f64>,
    pub pearson: Option<f64>,
    pub spearman: Option<f64>,
}

/// Aggregated scores of one view combination. Means are taken over folds;
/// folds whose correlation is undefined are excluded and counted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CombinationResult {
    pub views: ViewSet,
    pub label: String,
    pub error: Option<String>,
    pub mse: Option<f64>,
    pub pearson: Option<f64>,
    pub spearman: Option<f64>,
    pub pearson_undefined: usize,
    pub spearman_undefined: usize,
    pub folds: Vec<FoldScore>,
}

impl CombinationResult {
    pub fn failed(&self) -> bool {
        self.error.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub config: EvalConfig,
    pub results: Vec<CombinationResult>,
}

impl EvalReport {
    pub fn result(&self, views: ViewSet) -> Option<&CombinationResult> {
        self.results.iter().find(|r| r.views == views)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Plain-text table: one row per combination with MSE, r and rho.
    pub fn render_table(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "{} ({} words), {}x{}-fold CV, lambda = {}, seed = {}\n",
            c.property.label(),
            c.dataset_size,
            c.reps,
            c.k,
            c.lambda,
            c.seed
        );
        let _ = writeln!(out, "{:<36}{:>8}{:>8}{:>8}", "Regressors", "MSE", "r", "rho");
        let fmt = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.2}"));
        for r in &self.results {
            if let Some(e) = &r.error {
                let _ = writeln!(out, "{:<36}  failed: {e}", r.label);
            } else {
                let _ = writeln!(
                    out,
                    "{:<36}{:>8}{:>8}{:>8}",
                    r.label,
                    fmt(r.mse),
                    fmt(r.pearson),
                    fmt(r.spearman)
                );
            }
        }
        out
    }
}

fn mean_defined(values: impl Iterator<Item = Option<f64>>) -> (Option<f64>, usize) {
    let (mut sum, mut n, mut undefined) = (0.0, 0usize, 0usize);
    for v in values {
        match v {
            Some(x) => {
                sum += x;
                n += 1;
            }
            None => undefined += 1,
        }
    }
    ((n > 0).then(|| sum / n as f64), undefined)
}

fn score_fold(
    table: &FeatureTable,
    data: &NormDataset,
    targets: &[f64],
    plan: &FoldPlan,
    (rep, fold): (usize, usize),
    views: ViewSet,
    lambda: f64,
) -> Result<FoldScore> {
    let train = plan.train_indices(rep, fold);
    let test = plan.test_indices(rep, fold);
    let model = table.fit(data.property(), data.scale(), targets, &train, views, lambda)?;
    let mut pred = Vec::with_capacity(test.len());
    let mut gold = Vec::with_capacity(test.len());
    for &i in test {
        if let Some(p) = model.fuse(|v| table.vector(v, i), false)? {
            pred.push(p);
            gold.push(targets[i]);
        }
    }
    let (m, r, rho) = match pred.len() {
        0 => (None, None, None),
        1 => (Some(mse(&pred, &gold)?), None, None),
        _ => (Some(mse(&pred, &gold)?), pearson(&pred, &gold)?, spearman(&pred, &gold)?),
    };
    Ok(FoldScore {
        rep,
        fold,
        n_test: test.len(),
        n_scored: pred.len(),
        mse: m,
        pearson: r,
        spearman: rho,
    })
}

/// Evaluates each view combination on every `(rep, fold)` split of `plan`.
///
/// Folds run in parallel; results are assembled in `(combination, rep,
/// fold)` order so the report does not depend on scheduling. A training
/// failure in any fold marks the whole combination as failed.
pub fn cross_validate(
    property: PropertyKind,
    data: &NormDataset,
    resources: &FeatureResources,
    combos: &[ViewSet],
    plan: &FoldPlan,
    lambda: f64,
) -> Result<EvalReport> {
    if data.property() != property {
        return Err(Error::Incompatible(format!(
            "dataset holds {} ratings, evaluation is for {property}",
            data.property()
        )));
    }
    if plan.n != data.len() {
        return Err(Error::InvalidInput(format!(
            "fold plan covers {} items but the dataset has {}",
            plan.n,
            data.len()
        )));
    }
    let words: Vec<&str> = data.records().iter().map(|r| r.word.as_str()).collect();
    let targets: Vec<f64> = data.records().iter().map(|r| r.rating).collect();
    let needed = combos
        .iter()
        .fold(None, |acc: Option<ViewSet>, c| {
            Some(acc.map_or(*c, |a| ViewSet::new(a.views().chain(c.views())).expect("non-empty")))
        });
    let Some(needed) = needed else {
        return Err(Error::InvalidInput("no view combinations to evaluate".into()));
    };
    let table = FeatureTable::build(&words, needed, resources);

    let tasks: Vec<(usize, (usize, usize))> = (0..combos.len())
        .filter(|&c| combos[c].views().all(|v| table.has_view(v)))
        .flat_map(|c| plan.splits().map(move |s| (c, s)))
        .collect();
    let scores: Vec<Result<FoldScore>> = tasks
        .par_iter()
        .map(|&(c, split)| score_fold(&table, data, &targets, plan, split, combos[c], lambda))
        .collect();

    let mut scores = tasks.iter().map(|(c, _)| *c).zip(scores).peekable();
    let mut results = Vec::with_capacity(combos.len());
    for (c, &views) in combos.iter().enumerate() {
        let label = views.to_string();
        if let Some(missing) = views.views().find(|v| !table.has_view(*v)) {
            results.push(CombinationResult {
                views,
                label,
                error: Some(Error::ViewUnavailable(missing).to_string()),
                mse: None,
                pearson: None,
                spearman: None,
                pearson_undefined: 0,
                spearman_undefined: 0,
                folds: Vec::new(),
            });
            continue;
        }
        let mut folds = Vec::with_capacity(plan.reps * plan.k);
        let mut error = None;
        while let Some((_, s)) = scores.next_if(|(ci, _)| *ci == c) {
            match s {
                Ok(f) => folds.push(f),
                Err(e) => {
                    error.get_or_insert_with(|| e.to_string());
                }
            }
        }
        let (m, _) = mean_defined(folds.iter().map(|f| f.mse));
        let (r, r_undef) = mean_defined(folds.iter().map(|f| f.pearson));
        let (rho, rho_undef) = mean_defined(folds.iter().map(|f| f.spearman));
        let ok = error.is_none();
        results.push(CombinationResult {
            views,
            label,
            error,
            mse: m.filter(|_| ok),
            pearson: r.filter(|_| ok),
            spearman: rho.filter(|_| ok),
            pearson_undefined: r_undef,
            spearman_undefined: rho_undef,
            folds,
        });
    }

    Ok(EvalReport {
        config: EvalConfig {
            property,
            scale: data.scale(),
            dataset_size: data.len(),
            seed: plan.seed,
            k: plan.k,
            reps: plan.reps,
            lambda,
        },
        results,
    })
}
