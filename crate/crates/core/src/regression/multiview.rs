use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{train_ridge, DesignMatrix, RidgeModel};
use crate::error::{Error, Result};
use crate::features::{FeatureResources, FeatureVector, ViewKind};
use crate::norms::{LikertScale, NormDataset, PropertyKind};

/// A non-empty subset of the three views.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ViewSet(u8);

impl ViewSet {
    pub const LEXICAL: ViewSet = ViewSet(0b001);
    pub const ALL: ViewSet = ViewSet(0b111);

    fn bit(view: ViewKind) -> u8 {
        match view {
            ViewKind::Lexical => 0b001,
            ViewKind::EmbeddingA => 0b010,
            ViewKind::EmbeddingB => 0b100,
        }
    }

    pub fn new(views: impl IntoIterator<Item = ViewKind>) -> Result<Self> {
        let bits = views.into_iter().fold(0, |acc, v| acc | Self::bit(v));
        if bits == 0 {
            return Err(Error::InvalidInput("a view set needs at least one view".into()));
        }
        Ok(ViewSet(bits))
    }

    pub fn single(view: ViewKind) -> Self {
        ViewSet(Self::bit(view))
    }

    /// The seven non-empty combinations, singles first, then pairs, then
    /// all three.
    pub fn all_combinations() -> [ViewSet; 7] {
        [0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111].map(ViewSet)
    }

    pub fn contains(self, view: ViewKind) -> bool {
        self.0 & Self::bit(view) != 0
    }

    pub fn views(self) -> impl Iterator<Item = ViewKind> {
        ViewKind::ALL.into_iter().filter(move |v| self.contains(*v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Machine key such as `lexical+embedding_b`.
    pub fn key(self) -> String {
        self.views().map(ViewKind::key).collect::<Vec<_>>().join("+")
    }
}

impl fmt::Display for ViewSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<_> = self.views().map(ViewKind::label).collect();
        f.write_str(&labels.join(" + "))
    }
}

impl fmt::Debug for ViewSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ViewSet({})", self.key())
    }
}

impl FromStr for ViewSet {
    type Err = Error;

    /// Parses `lexical,embedding_a`, `lexical+glove`, and so on.
    fn from_str(s: &str) -> Result<Self> {
        let views = s
            .split([',', '+'])
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(ViewKind::from_str)
            .collect::<Result<Vec<_>>>()?;
        ViewSet::new(views).map_err(|_| Error::Config(format!("empty view list '{s}'")))
    }
}

impl Serialize for ViewSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.key())
    }
}

impl<'de> Deserialize<'de> for ViewSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

const FORMAT_TAG: &str = "psynorm-multiview-v1";

/// One ridge model per selected view; predicts by averaging.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiViewModel {
    pub property: PropertyKind,
    pub scale: LikertScale,
    pub lambda: f64,
    pub submodels: Vec<RidgeModel>,
    /// Number of training rows each view's model saw.
    pub training_rows: BTreeMap<ViewKind, usize>,
}

#[derive(Serialize, Deserialize)]
struct ModelArchive {
    format: String,
    #[serde(flatten)]
    model: MultiViewModel,
}

impl MultiViewModel {
    pub fn new(property: PropertyKind, scale: LikertScale, lambda: f64, submodels: Vec<RidgeModel>) -> Result<Self> {
        let m = MultiViewModel {
            property,
            scale,
            lambda,
            training_rows: BTreeMap::new(),
            submodels,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        if self.submodels.is_empty() || self.submodels.len() > 3 {
            return Err(Error::InvalidInput(format!(
                "a multi-view model needs 1 to 3 submodels, got {}",
                self.submodels.len()
            )));
        }
        ViewSet::new(self.views())?;
        if ViewSet::new(self.views())?.len() != self.submodels.len() {
            return Err(Error::InvalidInput("submodel views must be distinct".into()));
        }
        self.submodels.iter().try_for_each(RidgeModel::validate)
    }

    pub fn views(&self) -> impl Iterator<Item = ViewKind> + '_ {
        self.submodels.iter().map(|m| m.view)
    }

    pub fn view_set(&self) -> ViewSet {
        ViewSet::new(self.views()).expect("validated non-empty")
    }

    pub fn submodel(&self, view: ViewKind) -> Option<&RidgeModel> {
        self.submodels.iter().find(|m| m.view == view)
    }

    /// Predictions of each submodel whose view `lookup` can supply.
    pub fn view_predictions(
        &self,
        mut lookup: impl FnMut(ViewKind) -> Option<FeatureVector>,
    ) -> Result<Vec<(ViewKind, f64)>> {
        let mut out = Vec::with_capacity(self.submodels.len());
        for m in &self.submodels {
            if let Some(x) = lookup(m.view) {
                out.push((m.view, m.predict(&x)?));
            }
        }
        Ok(out)
    }

    /// Mean of the available view predictions, optionally clamped to the
    /// model's scale. `None` if no view is available.
    pub fn fuse(&self, lookup: impl FnMut(ViewKind) -> Option<FeatureVector>, clamp: bool) -> Result<Option<f64>> {
        let preds = self.view_predictions(lookup)?;
        if preds.is_empty() {
            return Ok(None);
        }
        let mean = preds.iter().map(|(_, p)| p).sum::<f64>() / preds.len() as f64;
        Ok(Some(if clamp { self.scale.clamp(mean) } else { mean }))
    }

    pub fn to_json(&self) -> Result<String> {
        let archive = ModelArchive {
            format: FORMAT_TAG.to_string(),
            model: self.clone(),
        };
        Ok(serde_json::to_string_pretty(&archive)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let archive: ModelArchive = serde_json::from_str(text)?;
        if archive.format != FORMAT_TAG {
            return Err(Error::InvalidInput(format!(
                "unsupported model format '{}' (expected {FORMAT_TAG})",
                archive.format
            )));
        }
        archive.model.validate()?;
        Ok(archive.model)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n").map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Io { .. } => e,
            other => Error::parse(path, 0, other.to_string()),
        })
    }
}

type ViewRows = (usize, Vec<Option<Vec<f64>>>);

/// Per-view feature rows for a fixed list of words, computed once and
/// shared by every training run over subsets of those words.
#[derive(Debug, Clone)]
pub(crate) struct FeatureTable {
    /// Per view: dimension and one optional row per word.
    rows: BTreeMap<ViewKind, ViewRows>,
}

impl FeatureTable {
    /// Computes every view in `views` that `resources` can supply. Views
    /// that are not loaded are left out.
    pub(crate) fn build(words: &[&str], views: ViewSet, resources: &FeatureResources) -> Self {
        let rows = views
            .views()
            .filter_map(|v| {
                let dim = resources.dimension(v)?;
                let col = words
                    .iter()
                    .map(|w| resources.features(w, v).map(|f| f.values))
                    .collect();
                Some((v, (dim, col)))
            })
            .collect();
        FeatureTable { rows }
    }

    pub(crate) fn has_view(&self, view: ViewKind) -> bool {
        self.rows.contains_key(&view)
    }

    pub(crate) fn get(&self, view: ViewKind, i: usize) -> Option<&[f64]> {
        self.rows.get(&view).and_then(|(_, col)| col[i].as_deref())
    }

    pub(crate) fn vector(&self, view: ViewKind, i: usize) -> Option<FeatureVector> {
        self.get(view, i).map(|x| FeatureVector {
            view,
            values: x.to_vec(),
        })
    }

    /// Fits one ridge model per view on the rows in `indices`.
    pub(crate) fn fit(
        &self,
        property: PropertyKind,
        scale: LikertScale,
        targets: &[f64],
        indices: &[usize],
        views: ViewSet,
        lambda: f64,
    ) -> Result<MultiViewModel> {
        let mut submodels = Vec::with_capacity(views.len());
        let mut training_rows = BTreeMap::new();
        for view in views.views() {
            let (dim, col) = self.rows.get(&view).ok_or(Error::ViewUnavailable(view))?;
            let mut values = Vec::with_capacity(indices.len() * dim);
            let mut y = Vec::with_capacity(indices.len());
            for &i in indices {
                if let Some(x) = &col[i] {
                    values.extend_from_slice(x);
                    y.push(targets[i]);
                }
            }
            if y.len() < 2 {
                return Err(Error::InsufficientRows { view, rows: y.len() });
            }
            training_rows.insert(view, y.len());
            let x = DesignMatrix::new(y.len(), *dim, values, y)?;
            submodels.push(train_ridge(&x, lambda, view)?);
        }
        Ok(MultiViewModel {
            property,
            scale,
            lambda,
            submodels,
            training_rows,
        })
    }
}

/// Trains one ridge model per view in `views`. Embedding views only use
/// the dataset words that are in vocabulary.
pub fn train_multiview(
    property: PropertyKind,
    data: &NormDataset,
    views: ViewSet,
    resources: &FeatureResources,
    lambda: f64,
) -> Result<MultiViewModel> {
    if data.is_empty() {
        return Err(Error::InvalidInput("training dataset is empty".into()));
    }
    if data.property() != property {
        return Err(Error::Incompatible(format!(
            "dataset holds {} ratings, model is for {property}",
            data.property()
        )));
    }
    if let Some(v) = views.views().find(|v| !resources.has_view(*v)) {
        return Err(Error::ViewUnavailable(v));
    }
    let words: Vec<&str> = data.records().iter().map(|r| r.word.as_str()).collect();
    let targets: Vec<f64> = data.records().iter().map(|r| r.rating).collect();
    let table = FeatureTable::build(&words, views, resources);
    let all: Vec<usize> = (0..words.len()).collect();
    table.fit(property, data.scale(), &targets, &all, views, lambda)
}

/// Averages the predictions of every submodel whose view is available for
/// `word`. Clamping to the model scale is opt-in.
pub fn predict_multiview(model: &MultiViewModel, word: &str, resources: &FeatureResources, clamp: bool) -> Result<f64> {
    model
        .fuse(|v| resources.features(word, v), clamp)?
        .ok_or_else(|| Error::AllViewsAbsent(word.to_string()))
}
