use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluation::make_folds;
use crate::features::ViewKind;
use crate::lexicon::DEFAULT_MIN_COUNT;
use crate::norms::{LikertScale, PropertyKind};
use crate::readability::{DEFAULT_CLASSIFIER_LAMBDA, DEFAULT_MATTR_WINDOW};
use crate::regression::{ViewSet, DEFAULT_LAMBDA};

/// Orthographic variant of a norm source. European Portuguese sources are
/// passed through the orthography map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Ep,
    #[default]
    Bp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormSource {
    pub property: PropertyKind,
    pub path: PathBuf,
    pub scale: LikertScale,
    #[serde(default)]
    pub variant: Variant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NormsConfig {
    pub target_scale: LikertScale,
    /// `ep_form,bp_form` CSV. Without it the built-in starter map is used.
    pub orthography: Option<PathBuf>,
    pub sources: Vec<NormSource>,
    /// Prepared `word,rating` files by property; defaults to
    /// `<out>/norms/<property>.csv`.
    pub prepared: BTreeMap<PropertyKind, PathBuf>,
}

impl Default for NormsConfig {
    fn default() -> Self {
        NormsConfig {
            target_scale: LikertScale::SEVEN_POINT,
            orthography: None,
            sources: Vec::new(),
            prepared: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FeaturesConfig {
    pub subtlex: Option<PathBuf>,
    pub subimdb: Option<PathBuf>,
    pub written: Option<PathBuf>,
    pub spoken: Option<PathBuf>,
    pub mixed: Option<PathBuf>,
    /// Six grade-lexicon files in grade order, or none.
    pub grades: Vec<PathBuf>,
    pub embedding_a: Option<PathBuf>,
    pub embedding_b: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RegressionConfig {
    /// Views trained for each property by `train`.
    pub views: BTreeMap<PropertyKind, ViewSet>,
}

impl Default for RegressionConfig {
    fn default() -> Self {
        use ViewKind::*;
        let set = |v: &[ViewKind]| ViewSet::new(v.iter().copied()).expect("non-empty");
        RegressionConfig {
            views: BTreeMap::from([
                (PropertyKind::Concreteness, set(&[EmbeddingA, EmbeddingB])),
                (PropertyKind::AgeOfAcquisition, set(&[Lexical, EmbeddingB])),
                (PropertyKind::Imageability, set(&[EmbeddingA, EmbeddingB])),
                (PropertyKind::SubjectiveFrequency, set(&[Lexical, EmbeddingA, EmbeddingB])),
            ]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvaluationConfig {
    pub k: usize,
    pub reps: usize,
}

impl Default for EvaluationConfig {
    fn default() -> Self {
        EvaluationConfig { k: 5, reps: 20 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LexiconConfig {
    pub dictionary: Option<PathBuf>,
    pub loanwords: Option<PathBuf>,
    /// Corpus counts used for the frequency filter; defaults to
    /// `features.mixed`.
    pub frequency: Option<PathBuf>,
    pub min_count: u64,
    /// Directory with the four model archives; defaults to `<out>/models`.
    pub models_dir: Option<PathBuf>,
}

impl Default for LexiconConfig {
    fn default() -> Self {
        LexiconConfig {
            dictionary: None,
            loanwords: None,
            frequency: None,
            min_count: DEFAULT_MIN_COUNT,
            models_dir: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReadabilityConfig {
    pub easy_words: Option<PathBuf>,
    /// Lexicon CSV used for psycholinguistic features; defaults to
    /// `<out>/lexicon.csv`.
    pub lexicon: Option<PathBuf>,
    pub corpus_dir: Option<PathBuf>,
    pub manifest: Option<PathBuf>,
    pub mattr_window: usize,
    /// RBF width; `1 / feature count` when unset.
    pub gamma: Option<f64>,
    pub lambda: f64,
    pub folds: usize,
}

impl Default for ReadabilityConfig {
    fn default() -> Self {
        ReadabilityConfig {
            easy_words: None,
            lexicon: None,
            corpus_dir: None,
            manifest: None,
            mattr_window: DEFAULT_MATTR_WINDOW,
            gamma: None,
            lambda: DEFAULT_CLASSIFIER_LAMBDA,
            folds: 10,
        }
    }
}

/// Full run configuration. Loaded from TOML; relative paths resolve
/// against the directory of the configuration file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub lambda: f64,
    pub out: PathBuf,
    pub norms: NormsConfig,
    pub features: FeaturesConfig,
    pub regression: RegressionConfig,
    pub evaluation: EvaluationConfig,
    pub lexicon: LexiconConfig,
    pub readability: ReadabilityConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 42,
            lambda: DEFAULT_LAMBDA,
            out: PathBuf::from("psynorm-out"),
            norms: NormsConfig::default(),
            features: FeaturesConfig::default(),
            regression: RegressionConfig::default(),
            evaluation: EvaluationConfig::default(),
            lexicon: LexiconConfig::default(),
            readability: ReadabilityConfig::default(),
        }
    }
}

/// Command-line (or environment) values that take precedence over the
/// configuration file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub lambda: Option<f64>,
    pub min_count: Option<u64>,
    pub out: Option<PathBuf>,
    pub k: Option<usize>,
    pub reps: Option<usize>,
}

fn resolve(base: &Path, p: &mut PathBuf) {
    if p.is_relative() {
        *p = base.join(&*p);
    }
}

fn resolve_opt(base: &Path, p: &mut Option<PathBuf>) {
    if let Some(p) = p {
        resolve(base, p);
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Reads a TOML file and resolves its relative paths.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut cfg: RunConfig =
            toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        cfg.resolve_paths(path.parent().unwrap_or(Path::new(".")));
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn resolve_paths(&mut self, base: &Path) {
        resolve(base, &mut self.out);
        resolve_opt(base, &mut self.norms.orthography);
        self.norms.sources.iter_mut().for_each(|s| resolve(base, &mut s.path));
        self.norms.prepared.values_mut().for_each(|p| resolve(base, p));
        let f = &mut self.features;
        for p in [&mut f.subtlex, &mut f.subimdb, &mut f.written, &mut f.spoken, &mut f.mixed, &mut f.embedding_a, &mut f.embedding_b] {
            resolve_opt(base, p);
        }
        f.grades.iter_mut().for_each(|p| resolve(base, p));
        let l = &mut self.lexicon;
        for p in [&mut l.dictionary, &mut l.loanwords, &mut l.frequency, &mut l.models_dir] {
            resolve_opt(base, p);
        }
        let r = &mut self.readability;
        for p in [&mut r.easy_words, &mut r.lexicon, &mut r.corpus_dir, &mut r.manifest] {
            resolve_opt(base, p);
        }
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(v) = o.seed {
            self.seed = v;
        }
        if let Some(v) = o.lambda {
            self.lambda = v;
        }
        if let Some(v) = o.min_count {
            self.lexicon.min_count = v;
        }
        if let Some(v) = &o.out {
            self.out = v.clone();
        }
        if let Some(v) = o.k {
            self.evaluation.k = v;
        }
        if let Some(v) = o.reps {
            self.evaluation.reps = v;
        }
    }

    /// Checks numeric knobs and that every configured path exists.
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return Err(Error::Config(format!("lambda must be non-negative, got {}", self.lambda)));
        }
        if self.evaluation.k < 2 || self.evaluation.reps < 1 {
            return Err(Error::Config("evaluation needs k >= 2 and reps >= 1".into()));
        }
        if self.readability.mattr_window == 0 || self.readability.folds < 2 {
            return Err(Error::Config("mattr_window must be positive and folds >= 2".into()));
        }
        if self.readability.lambda.is_nan() || self.readability.lambda <= 0.0 {
            return Err(Error::Config("readability.lambda must be positive".into()));
        }
        if !self.features.grades.is_empty() && self.features.grades.len() != 6 {
            return Err(Error::Config(format!(
                "features.grades needs exactly 6 files, got {}",
                self.features.grades.len()
            )));
        }
        let f = &self.features;
        let l = &self.lexicon;
        let r = &self.readability;
        let files = [
            &self.norms.orthography,
            &f.subtlex,
            &f.subimdb,
            &f.written,
            &f.spoken,
            &f.mixed,
            &f.embedding_a,
            &f.embedding_b,
            &l.dictionary,
            &l.loanwords,
            &l.frequency,
            &r.easy_words,
            &r.manifest,
        ];
        let listed = self.norms.sources.iter().map(|s| &s.path).chain(&f.grades);
        for p in files.into_iter().flatten().chain(listed) {
            if !p.is_file() {
                return Err(Error::Config(format!("path does not exist: {}", p.display())));
            }
        }
        if let Some(d) = &r.corpus_dir {
            if !d.is_dir() {
                return Err(Error::Config(format!("corpus directory does not exist: {}", d.display())));
            }
        }
        Ok(())
    }

    /// Fails early with a configuration error when a view's resource is
    /// not configured.
    pub fn require_views(&self, views: ViewSet) -> Result<()> {
        for v in views.views() {
            let missing = match v {
                ViewKind::Lexical => false,
                ViewKind::EmbeddingA => self.features.embedding_a.is_none(),
                ViewKind::EmbeddingB => self.features.embedding_b.is_none(),
            };
            if missing {
                return Err(Error::Config(format!("view {v} requested but features.{} is not set", v.key())));
            }
        }
        Ok(())
    }

    pub fn views_for(&self, property: PropertyKind) -> ViewSet {
        self.regression
            .views
            .get(&property)
            .copied()
            .unwrap_or(ViewSet::LEXICAL)
    }

    pub fn prepared_norms_path(&self, property: PropertyKind) -> PathBuf {
        self.norms
            .prepared
            .get(&property)
            .cloned()
            .unwrap_or_else(|| self.out.join("norms").join(format!("{}.csv", property.key())))
    }

    pub fn models_dir(&self) -> PathBuf {
        self.lexicon.models_dir.clone().unwrap_or_else(|| self.out.join("models"))
    }

    pub fn model_path(&self, property: PropertyKind) -> PathBuf {
        self.models_dir().join(format!("{}.json", property.key()))
    }

    pub fn lexicon_path(&self) -> PathBuf {
        self.readability
            .lexicon
            .clone()
            .unwrap_or_else(|| self.out.join("lexicon.csv"))
    }

    pub(crate) fn check_fold_plan(&self, n: usize) -> Result<()> {
        make_folds(n, self.evaluation.k, 1, 0).map(|_| ()).map_err(|e| Error::Config(e.to_string()))
    }
}
