use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::{RunConfig, Variant};
use crate::error::{Error, Result};
use crate::evaluation::{
    cronbach_alpha, cross_validate, make_folds, property_correlations, CorrelationMatrix, EvalReport,
};
use crate::features::{
    load_word_set, EmbeddingModel, FeatureResources, FrequencyList, GradeLexicons, LexicalSources, ViewKind,
};
use crate::lexicon::{
    build_lexicon as build, load_dictionary, read_lexicon, write_lexicon, ExclusionCounts, LexiconIndex,
    PartOfSpeech,
};
use crate::norms::{
    apply_orthography, convert_scale, load_norms, merge_datasets, LikertScale, NormDataset, OrthographyMap,
    PropertyKind,
};
use crate::readability::{
    default_feature_subsets, evaluate_features, load_corpus, profile_text, text_features, ReadabilityEvaluation,
    TextFeatures,
};
use crate::regression::{train_multiview, MultiViewModel, ViewSet};

fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

fn create_parent(path: &Path) -> Result<()> {
    match path.parent() {
        Some(dir) => std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e)),
        None => Ok(()),
    }
}

fn load_frequency(path: &Option<PathBuf>, name: &str) -> Result<FrequencyList> {
    match path {
        Some(p) => FrequencyList::load(p, name),
        None => Ok(FrequencyList::empty(name)),
    }
}

/// Loads the lexical sources and the embeddings needed by `views`,
/// keeping only vectors for words in `vocab`.
fn load_resources(cfg: &RunConfig, views: ViewSet, vocab: &HashSet<&str>) -> Result<FeatureResources> {
    cfg.require_views(views)?;
    let f = &cfg.features;
    let grades = if f.grades.is_empty() {
        GradeLexicons::default()
    } else {
        GradeLexicons::load(&f.grades)?
    };
    let lexical = LexicalSources {
        subtlex: load_frequency(&f.subtlex, "subtlex")?,
        subimdb: load_frequency(&f.subimdb, "subimdb")?,
        written: load_frequency(&f.written, "written")?,
        spoken: load_frequency(&f.spoken, "spoken")?,
        mixed: load_frequency(&f.mixed, "mixed")?,
        grades,
    };
    let load = |view: ViewKind, path: &Option<PathBuf>| -> Result<Option<EmbeddingModel>> {
        match path {
            Some(p) if views.contains(view) => EmbeddingModel::load_filtered(p, view, |w| vocab.contains(w)).map(Some),
            _ => Ok(None),
        }
    };
    Ok(FeatureResources {
        lexical,
        embedding_a: load(ViewKind::EmbeddingA, &f.embedding_a)?,
        embedding_b: load(ViewKind::EmbeddingB, &f.embedding_b)?,
    })
}

fn load_prepared(cfg: &RunConfig, property: PropertyKind) -> Result<NormDataset> {
    let path = cfg.prepared_norms_path(property);
    if !path.is_file() {
        return Err(Error::Config(format!(
            "prepared norms for {property} not found at {} (run `prepare` first)",
            path.display()
        )));
    }
    load_norms(&path, property, cfg.norms.target_scale)
}

/// Row counts before and after one preparation step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrepareStep {
    pub step: String,
    pub source: Option<PathBuf>,
    pub before: usize,
    pub after: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreparedProperty {
    pub property: PropertyKind,
    pub output: PathBuf,
    pub rows: usize,
    pub steps: Vec<PrepareStep>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrepareOutput {
    pub config: RunConfig,
    pub properties: Vec<PreparedProperty>,
}

/// Normalizes every configured norm source (orthography for European
/// Portuguese lists, then scale conversion), merges lists of the same
/// property and writes one CSV per property plus `prepare_log.json`.
pub fn prepare(cfg: &RunConfig) -> Result<PrepareOutput> {
    if cfg.norms.sources.is_empty() {
        return Err(Error::Config("no [[norms.sources]] configured".into()));
    }
    let ortho = match &cfg.norms.orthography {
        Some(p) => OrthographyMap::load(p)?,
        None => OrthographyMap::starter(),
    };
    let target = cfg.norms.target_scale;
    let mut properties = Vec::new();
    for property in PropertyKind::ALL {
        let sources: Vec<_> = cfg.norms.sources.iter().filter(|s| s.property == property).collect();
        if sources.is_empty() {
            continue;
        }
        let mut steps = Vec::new();
        let mut merged: Option<NormDataset> = None;
        for s in sources {
            let mut ds = load_norms(&s.path, property, s.scale)?;
            let src = Some(s.path.clone());
            steps.push(PrepareStep { step: "load".into(), source: src.clone(), before: 0, after: ds.len() });
            if s.variant == Variant::Ep {
                let before = ds.len();
                ds = apply_orthography(&ds, &ortho);
                steps.push(PrepareStep { step: "orthography".into(), source: src.clone(), before, after: ds.len() });
            }
            if ds.scale() != target {
                ds = convert_scale(&ds, target)?;
                steps.push(PrepareStep { step: format!("scale {}->{target}", s.scale), source: src.clone(), before: ds.len(), after: ds.len() });
            }
            merged = Some(match merged {
                None => ds,
                Some(acc) => {
                    let before = acc.len() + ds.len();
                    let m = merge_datasets(&acc, &ds)?;
                    steps.push(PrepareStep { step: "merge".into(), source: src, before, after: m.len() });
                    m
                }
            });
        }
        let ds = merged.expect("at least one source");
        let output = cfg.out.join("norms").join(format!("{}.csv", property.key()));
        create_parent(&output)?;
        ds.write_csv(&output)?;
        properties.push(PreparedProperty { property, output, rows: ds.len(), steps });
    }
    let out = PrepareOutput { config: cfg.clone(), properties };
    write_json(&cfg.out.join("prepare_log.json"), &out)?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainOutput {
    pub config: RunConfig,
    pub property: PropertyKind,
    pub views: ViewSet,
    pub dataset_size: usize,
    pub training_rows: BTreeMap<ViewKind, usize>,
    pub model: PathBuf,
}

/// Trains the multi-view model of `property` on its prepared norms and
/// writes `<models>/<property>.json` and a training log beside it.
pub fn train(cfg: &RunConfig, property: PropertyKind, views: Option<ViewSet>) -> Result<TrainOutput> {
    let views = views.unwrap_or_else(|| cfg.views_for(property));
    cfg.require_views(views)?;
    let data = load_prepared(cfg, property)?;
    let vocab: HashSet<&str> = data.records().iter().map(|r| r.word.as_str()).collect();
    let resources = load_resources(cfg, views, &vocab)?;
    let model = train_multiview(property, &data, views, &resources, cfg.lambda)?;
    let path = cfg.model_path(property);
    create_parent(&path)?;
    model.save(&path)?;
    let out = TrainOutput {
        config: cfg.clone(),
        property,
        views,
        dataset_size: data.len(),
        training_rows: model.training_rows.clone(),
        model: path,
    };
    write_json(&cfg.models_dir().join(format!("{}_log.json", property.key())), &out)?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalOutput {
    pub config: RunConfig,
    pub report: EvalReport,
}

/// Repeated k-fold evaluation of every view combination (or only `views`)
/// for `property`. Writes `<out>/eval/<property>.json` and `.txt`.
pub fn eval(cfg: &RunConfig, property: PropertyKind, views: Option<ViewSet>) -> Result<EvalOutput> {
    let combos: Vec<ViewSet> = match views {
        Some(v) => vec![v],
        None => ViewSet::all_combinations()
            .into_iter()
            .filter(|c| cfg.require_views(*c).is_ok())
            .collect(),
    };
    if let Some(v) = views {
        cfg.require_views(v)?;
    }
    let data = load_prepared(cfg, property)?;
    cfg.check_fold_plan(data.len())?;
    let union = ViewSet::new(combos.iter().flat_map(|c| c.views()))?;
    let vocab: HashSet<&str> = data.records().iter().map(|r| r.word.as_str()).collect();
    let resources = load_resources(cfg, union, &vocab)?;
    let plan = make_folds(data.len(), cfg.evaluation.k, cfg.evaluation.reps, cfg.seed)?;
    let mut report = cross_validate(property, &data, &resources, &combos, &plan, cfg.lambda)?;
    report.config.seed = cfg.seed;
    let dir = cfg.out.join("eval");
    write_text(&dir.join(format!("{}.txt", property.key())), &report.render_table())?;
    let out = EvalOutput { config: cfg.clone(), report };
    write_json(&dir.join(format!("{}.json", property.key())), &out)?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LexiconOutput {
    pub config: RunConfig,
    pub lexicon: PathBuf,
    pub rows: usize,
    pub pos_counts: BTreeMap<PartOfSpeech, usize>,
    pub excluded: ExclusionCounts,
}

/// Filters the dictionary and annotates the survivors with the four
/// trained models. Writes `<out>/lexicon.csv` and `lexicon_summary.json`.
pub fn build_lexicon(cfg: &RunConfig) -> Result<LexiconOutput> {
    let l = &cfg.lexicon;
    let dictionary = l
        .dictionary
        .as_ref()
        .ok_or_else(|| Error::Config("lexicon.dictionary is not set".into()))?;
    let freq_path = l
        .frequency
        .as_ref()
        .or(cfg.features.mixed.as_ref())
        .ok_or_else(|| Error::Config("lexicon.frequency (or features.mixed) is not set".into()))?;
    let entries = load_dictionary(dictionary)?;
    let loanwords = match &l.loanwords {
        Some(p) => load_word_set(p)?,
        None => HashSet::new(),
    };
    let freq = FrequencyList::load(freq_path, "frequency")?;
    let mut models = Vec::with_capacity(4);
    for p in PropertyKind::ALL {
        let path = cfg.model_path(p);
        if !path.is_file() {
            return Err(Error::Config(format!(
                "model for {p} not found at {} (run `train` first)",
                path.display()
            )));
        }
        models.push(MultiViewModel::load(&path)?);
    }
    let union = ViewSet::new(models.iter().flat_map(|m| m.views()))?;
    let vocab: HashSet<&str> = entries.iter().map(|e| e.word.as_str()).collect();
    let resources = load_resources(cfg, union, &vocab)?;
    let built = build(&entries, &loanwords, &freq, l.min_count, &models, &resources)?;
    let path = cfg.out.join("lexicon.csv");
    create_parent(&path)?;
    write_lexicon(&built.entries, &path)?;
    let out = LexiconOutput {
        config: cfg.clone(),
        lexicon: path,
        rows: built.entries.len(),
        pos_counts: built.pos_counts,
        excluded: built.excluded,
    };
    write_json(&cfg.out.join("lexicon_summary.json"), &out)?;
    Ok(out)
}

fn readability_inputs(cfg: &RunConfig) -> Result<(HashSet<String>, LexiconIndex, Option<PathBuf>)> {
    let easy = match &cfg.readability.easy_words {
        Some(p) => load_word_set(p)?,
        None => HashSet::new(),
    };
    let path = cfg.lexicon_path();
    if path.is_file() {
        let entries = read_lexicon(&path)?;
        Ok((easy, LexiconIndex::new(&entries), Some(path)))
    } else if cfg.readability.lexicon.is_some() {
        Err(Error::Config(format!("lexicon not found at {}", path.display())))
    } else {
        Ok((easy, LexiconIndex::default(), None))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TextReport {
    pub config: RunConfig,
    pub text: PathBuf,
    pub lexicon: Option<PathBuf>,
    pub words: usize,
    pub sentences: usize,
    pub features: TextFeatures,
}

/// All readability features of one text. Writes
/// `<out>/readability/<file stem>.json`.
pub fn readability_text(cfg: &RunConfig, text: &Path) -> Result<TextReport> {
    let body = std::fs::read_to_string(text).map_err(|e| Error::io(text, e))?;
    let (easy, lexicon, lexicon_path) = readability_inputs(cfg)?;
    let profile = profile_text(&body)?;
    let features = text_features(&profile, &easy, &lexicon, cfg.readability.mattr_window);
    let out = TextReport {
        config: cfg.clone(),
        text: text.to_path_buf(),
        lexicon: lexicon_path,
        words: profile.word_count(),
        sentences: profile.sentences,
        features,
    };
    let stem = text.file_stem().map_or("text".into(), |s| s.to_string_lossy().into_owned());
    write_json(&cfg.out.join("readability").join(format!("{stem}.json")), &out)?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub config: RunConfig,
    pub lexicon: Option<PathBuf>,
    pub uncovered_texts: Vec<String>,
    pub evaluation: ReadabilityEvaluation,
}

/// Cross-validated grade classification over the labelled corpus for each
/// default feature subset. Writes `<out>/readability/evaluation.{json,txt}`.
pub fn readability_corpus(cfg: &RunConfig) -> Result<CorpusReport> {
    let r = &cfg.readability;
    let dir = r
        .corpus_dir
        .as_ref()
        .ok_or_else(|| Error::Config("readability.corpus_dir is not set".into()))?;
    let manifest = r.manifest.clone().unwrap_or_else(|| dir.join("manifest.csv"));
    if !manifest.is_file() {
        return Err(Error::Config(format!("manifest not found at {}", manifest.display())));
    }
    let texts = load_corpus(dir, &manifest)?;
    let (easy, lexicon, lexicon_path) = readability_inputs(cfg)?;
    let mut corpus = Vec::with_capacity(texts.len());
    let mut uncovered_texts = Vec::new();
    for t in &texts {
        let profile = profile_text(&t.text).map_err(|e| Error::InvalidInput(format!("{}: {e}", t.file)))?;
        let f = text_features(&profile, &easy, &lexicon, r.mattr_window);
        if f.lexicon_uncovered {
            uncovered_texts.push(t.file.clone());
        }
        corpus.push((f, t.grade));
    }
    let evaluation = evaluate_features(&corpus, &default_feature_subsets(), r.folds, cfg.seed, r.gamma, r.lambda)?;
    let out_dir = cfg.out.join("readability");
    write_text(&out_dir.join("evaluation.txt"), &evaluation.render_table())?;
    let out = CorpusReport { config: cfg.clone(), lexicon: lexicon_path, uncovered_texts, evaluation };
    write_json(&out_dir.join("evaluation.json"), &out)?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrOutput {
    pub config: RunConfig,
    pub lexicon: PathBuf,
    pub matrix: CorrelationMatrix,
}

/// Pairwise correlations of the inferred properties over the lexicon.
/// Writes `<out>/correlations.{json,txt}`.
pub fn corr(cfg: &RunConfig) -> Result<CorrOutput> {
    let path = cfg.lexicon_path();
    if !path.is_file() {
        return Err(Error::Config(format!("lexicon not found at {}", path.display())));
    }
    let matrix = property_correlations(&read_lexicon(&path)?)?;
    write_text(&cfg.out.join("correlations.txt"), &matrix.render_pairs())?;
    let out = CorrOutput { config: cfg.clone(), lexicon: path, matrix };
    write_json(&cfg.out.join("correlations.json"), &out)?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaReport {
    pub config: RunConfig,
    pub property: PropertyKind,
    pub reference: PathBuf,
    pub reference_scale: LikertScale,
    pub shared_words: usize,
    pub alpha: Option<f64>,
}

/// Cronbach's alpha between the lexicon's inferred ratings and a reference
/// norms file, over the words they share. The reference is first mapped
/// onto 1-7. Writes `<out>/alpha_<property>.json`.
pub fn alpha(cfg: &RunConfig, property: PropertyKind, reference: &Path, scale: LikertScale) -> Result<AlphaReport> {
    let path = cfg.lexicon_path();
    if !path.is_file() {
        return Err(Error::Config(format!("lexicon not found at {}", path.display())));
    }
    if !reference.is_file() {
        return Err(Error::Config(format!("reference not found at {}", reference.display())));
    }
    let index = LexiconIndex::new(&read_lexicon(&path)?);
    let reference_ds = convert_scale(&load_norms(reference, property, scale)?, LikertScale::SEVEN_POINT)?;
    let (mut inferred, mut gold) = (Vec::new(), Vec::new());
    for r in reference_ds.records() {
        if let Some(x) = index.get(&r.word) {
            inferred.push(x.get(property));
            gold.push(r.rating);
        }
    }
    let shared_words = gold.len();
    let alpha = cronbach_alpha(&[inferred, gold])?;
    let out = AlphaReport {
        config: cfg.clone(),
        property,
        reference: reference.to_path_buf(),
        reference_scale: scale,
        shared_words,
        alpha,
    };
    write_json(&cfg.out.join(format!("alpha_{}.json", property.key())), &out)?;
    Ok(out)
}
