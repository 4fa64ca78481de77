//! Run configuration and the command implementations behind the `psynorm`
//! binary. Each command is deterministic given its configuration and seed
//! and writes reports that embed the resolved configuration.

mod commands;
mod config;

pub use commands::{
    alpha, build_lexicon, corr, eval, prepare, readability_corpus, readability_text, train, AlphaReport, CorpusReport,
    CorrOutput, EvalOutput, LexiconOutput, PrepareOutput, PrepareStep, PreparedProperty, TextReport, TrainOutput,
};
pub use config::{
    EvaluationConfig, FeaturesConfig, LexiconConfig, NormSource, NormsConfig, Overrides, ReadabilityConfig,
    RegressionConfig, RunConfig, Variant,
};
