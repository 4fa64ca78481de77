//! Psycholinguistic norm induction for Brazilian Portuguese.
//!
//! Small human-rated seed lists (concreteness, age of acquisition,
//! imageability, subjective frequency) are used to train one ridge
//! regressor per feature view. View predictions are averaged to annotate
//! large word lists, and the inferred norms feed text readability features.
//!
//! The crate is organized as a pipeline:
//!
//! - [`norms`]: load, rescale, orthographically adapt and merge rated lists.
//! - [`features`]: the lexical view and the two embedding views.
//! - [`regression`]: ridge regression per view and multi-view fusion.
//! - [`evaluation`]: repeated k-fold cross-validation, correlation metrics,
//!   Cronbach's alpha.
//! - [`lexicon`]: filter a dictionary and annotate it with inferred ratings.
//! - [`readability`]: classic readability formulas, norm-based text
//!   features and a kernel grade-level classifier.
//! - [`cli`]: run configuration and the command implementations behind the
//!   `psynorm` binary.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod cli;
pub mod error;
pub mod evaluation;
pub mod features;
pub mod lexicon;
mod linalg;
pub mod norms;
pub mod readability;
pub mod regression;
pub mod synthetic;

pub use error::{Error, ErrorClass, Result};
pub use features::{EmbeddingModel, FeatureResources, FeatureVector, FrequencyList, GradeLexicons, ViewKind};
pub use norms::{LikertScale, NormDataset, NormRecord, OrthographyMap, PropertyKind};
pub use regression::{MultiViewModel, RidgeModel, ViewSet};
