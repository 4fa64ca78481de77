//! Text-level readability: classic formulas, psycholinguistic features
//! from an inferred lexicon, and a grade-level classifier harness.

mod classifier;
mod corpus;
mod features;
mod formulas;
mod profile;

pub use classifier::{macro_f1, train_grade_classifier, GradeClassifier, GradeLabel, DEFAULT_CLASSIFIER_LAMBDA};
pub use corpus::{
    default_feature_subsets, evaluate_features, load_corpus, FeatureSubset, LabeledText, ReadabilityEvaluation,
    SubsetScore,
};
pub use features::{
    psycholinguistic_features, text_features, PsycholinguisticFeatures, TextFeatures, CLASSIC_FEATURES,
    PSYCHOLINGUISTIC_FEATURES,
};
pub use formulas::{
    brunet, classic_formulas, dale_chall, flesch_bp, gunning_fog, honore, mattr, ClassicScores, DEFAULT_MATTR_WINDOW,
    HONORE_HAPAX_RATIO_CAP,
};
pub use profile::{count_syllables, profile_text, TextProfile};
