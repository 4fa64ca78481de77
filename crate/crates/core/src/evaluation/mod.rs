//! Repeated k-fold cross-validation of view combinations, scored by MSE,
//! Pearson and Spearman; plus Cronbach's alpha and the inter-property
//! correlation matrix.

mod cv;
mod folds;
mod metrics;
mod reliability;

pub use cv::{cross_validate, CombinationResult, EvalConfig, EvalReport, FoldScore};
pub use folds::{make_folds, FoldPlan};
pub use metrics::{average_ranks, mse, pearson, spearman};
pub use reliability::{cronbach_alpha, property_correlations, CorrelationMatrix, PROPERTY_PAIRS};
