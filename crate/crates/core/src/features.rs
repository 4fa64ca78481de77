//! Per-word feature views.
//!
//! The lexical view is a fixed 13-vector built from frequency lists, word
//! length and six grade-level school dictionaries. The two embedding views
//! are raw vectors read from pre-trained plain-text embedding files.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::normalize_word;

/// Number of lexical features.
pub const LEXICAL_DIM: usize = 13;

/// Names of the lexical features, in vector order.
pub const LEXICAL_FEATURE_NAMES: [&str; LEXICAL_DIM] = [
    "logfreq_subtlex",
    "log_contextual_diversity",
    "logfreq_subimdb",
    "logfreq_written",
    "logfreq_spoken",
    "logfreq_mixed",
    "word_length",
    "grade1",
    "grade2",
    "grade3",
    "grade4",
    "grade5",
    "grade6",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViewKind {
    Lexical,
    /// Skip-Gram trained vectors.
    EmbeddingA,
    /// GloVe trained vectors.
    EmbeddingB,
}

impl ViewKind {
    pub const ALL: [ViewKind; 3] = [ViewKind::Lexical, ViewKind::EmbeddingA, ViewKind::EmbeddingB];

    pub fn key(self) -> &'static str {
        match self {
            ViewKind::Lexical => "lexical",
            ViewKind::EmbeddingA => "embedding_a",
            ViewKind::EmbeddingB => "embedding_b",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ViewKind::Lexical => "Lexical",
            ViewKind::EmbeddingA => "EmbeddingA",
            ViewKind::EmbeddingB => "EmbeddingB",
        }
    }
}

impl fmt::Display for ViewKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ViewKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_lowercase().replace('-', "_").as_str() {
            "lexical" | "lex" => Ok(ViewKind::Lexical),
            "embedding_a" | "embeddinga" | "a" | "skipgram" | "skip_gram" => Ok(ViewKind::EmbeddingA),
            "embedding_b" | "embeddingb" | "b" | "glove" => Ok(ViewKind::EmbeddingB),
            other => Err(Error::Config(format!(
                "unknown view '{other}' (expected lexical, embedding_a or embedding_b)"
            ))),
        }
    }
}

/// Word counts from one corpus, with optional contextual diversity
/// (number of documents containing the word).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FrequencyList {
    name: String,
    counts: HashMap<String, u64>,
    diversity: HashMap<String, u64>,
    total_tokens: u64,
}

impl FrequencyList {
    pub fn empty(name: &str) -> Self {
        FrequencyList {
            name: name.to_string(),
            ..Default::default()
        }
    }

    /// Builds a list from `(word, count)` pairs. Zero counts are dropped;
    /// repeated words (after normalization) are summed.
    pub fn from_counts<S: AsRef<str>>(name: &str, counts: impl IntoIterator<Item = (S, u64)>) -> Result<Self> {
        let mut fl = FrequencyList::empty(name);
        for (w, c) in counts {
            fl.add(normalize_word(w.as_ref())?, c, None);
        }
        fl.total_tokens = fl.counts.values().sum();
        Ok(fl)
    }

    fn add(&mut self, word: String, count: u64, diversity: Option<u64>) {
        if let Some(d) = diversity.filter(|&d| d > 0) {
            let slot = self.diversity.entry(word.clone()).or_default();
            *slot = (*slot).max(d);
        }
        if count > 0 {
            *self.counts.entry(word).or_default() += count;
        }
    }

    pub fn with_diversity<S: AsRef<str>>(mut self, diversity: impl IntoIterator<Item = (S, u64)>) -> Result<Self> {
        for (w, d) in diversity {
            self.add(normalize_word(w.as_ref())?, 0, Some(d));
        }
        Ok(self)
    }

    /// Loads a `word<TAB>count[<TAB>diversity]` file with an optional
    /// `#total=N` line. Without it the total is the sum of counts.
    pub fn load(path: &Path, name: &str) -> Result<Self> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let mut fl = FrequencyList::empty(name);
        let mut declared_total = None;
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line_no = i as u64 + 1;
            let line = line.map_err(|e| Error::io(path, e))?;
            let line = line.trim_end_matches(['\r', '\n']);
            if line.trim().is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(v) = rest.trim().strip_prefix("total=") {
                    let total = v
                        .trim()
                        .parse::<u64>()
                        .map_err(|_| Error::parse(path, line_no, format!("invalid total '{v}'")))?;
                    declared_total = Some(total);
                }
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if !(2..=3).contains(&fields.len()) {
                return Err(Error::parse(
                    path,
                    line_no,
                    format!("expected word<TAB>count[<TAB>diversity], found {} fields", fields.len()),
                ));
            }
            let word = normalize_word(fields[0]).map_err(|e| Error::parse(path, line_no, e.to_string()))?;
            let count = parse_count(path, line_no, fields[1])?;
            let diversity = fields.get(2).map(|f| parse_count(path, line_no, f)).transpose()?;
            fl.add(word, count, diversity);
        }
        let sum: u64 = fl.counts.values().sum();
        fl.total_tokens = match declared_total {
            Some(total) => {
                let max = fl.counts.values().copied().max().unwrap_or(0);
                if total < max {
                    return Err(Error::parse(
                        path,
                        1,
                        format!("declared total {total} is below the largest count {max}"),
                    ));
                }
                total
            }
            None => sum,
        };
        Ok(fl)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn count(&self, word: &str) -> u64 {
        self.counts.get(word).copied().unwrap_or(0)
    }

    pub fn diversity(&self, word: &str) -> u64 {
        self.diversity.get(word).copied().unwrap_or(0)
    }

    /// `ln(count + 1)`; zero for absent words.
    pub fn log_frequency(&self, word: &str) -> f64 {
        (self.count(word) as f64).ln_1p()
    }

    pub fn log_diversity(&self, word: &str) -> f64 {
        (self.diversity(word) as f64).ln_1p()
    }
}

fn parse_count(path: &Path, line: u64, field: &str) -> Result<u64> {
    let v: i128 = field
        .trim()
        .parse()
        .map_err(|_| Error::parse(path, line, format!("count '{field}' is not an integer")))?;
    if v < 0 {
        return Err(Error::parse(path, line, format!("negative count {v}")));
    }
    u64::try_from(v).map_err(|_| Error::parse(path, line, format!("count {v} too large")))
}

/// Free function form of [`FrequencyList::log_frequency`].
pub fn log_frequency(fl: &FrequencyList, word: &str) -> f64 {
    fl.log_frequency(word)
}

/// Six school-dictionary word sets, one per grade level.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GradeLexicons {
    per_grade: [HashSet<String>; 6],
}

impl GradeLexicons {
    pub fn new(per_grade: [HashSet<String>; 6]) -> Self {
        GradeLexicons { per_grade }
    }

    pub fn from_lists<S: AsRef<str>>(lists: [Vec<S>; 6]) -> Result<Self> {
        let mut per_grade: [HashSet<String>; 6] = Default::default();
        for (set, list) in per_grade.iter_mut().zip(lists) {
            for w in list {
                set.insert(normalize_word(w.as_ref())?);
            }
        }
        Ok(GradeLexicons { per_grade })
    }

    /// Loads six one-word-per-line files, in grade order.
    pub fn load<P: AsRef<Path>>(paths: &[P]) -> Result<Self> {
        if paths.len() != 6 {
            return Err(Error::Config(format!(
                "expected 6 grade lexicon files, got {}",
                paths.len()
            )));
        }
        let mut per_grade: [HashSet<String>; 6] = Default::default();
        for (set, path) in per_grade.iter_mut().zip(paths) {
            *set = load_word_set(path.as_ref())?;
        }
        Ok(GradeLexicons { per_grade })
    }

    pub fn contains(&self, grade: usize, word: &str) -> bool {
        self.per_grade[grade].contains(word)
    }
}

/// Reads a plain word list (one word per line, `#` comments and blank
/// lines ignored).
pub fn load_word_set(path: &Path) -> Result<HashSet<String>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut set = HashSet::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        set.insert(normalize_word(t).map_err(|e| Error::parse(path, i as u64 + 1, e.to_string()))?);
    }
    Ok(set)
}

/// The frequency sources behind lexical features 1 to 6.
#[derive(Debug, Clone, Default)]
pub struct LexicalSources {
    /// Subtitle frequencies; its diversity column feeds feature 2.
    pub subtlex: FrequencyList,
    pub subimdb: FrequencyList,
    pub written: FrequencyList,
    pub spoken: FrequencyList,
    pub mixed: FrequencyList,
    pub grades: GradeLexicons,
}

/// A dense feature vector tagged with the view it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub view: ViewKind,
    pub values: Vec<f64>,
}

impl FeatureVector {
    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

/// Builds the 13-dimensional lexical vector. Defined for every word.
pub fn lexical_view(word: &str, sources: &LexicalSources) -> FeatureVector {
    let mut values = Vec::with_capacity(LEXICAL_DIM);
    values.push(sources.subtlex.log_frequency(word));
    values.push(sources.subtlex.log_diversity(word));
    values.push(sources.subimdb.log_frequency(word));
    values.push(sources.written.log_frequency(word));
    values.push(sources.spoken.log_frequency(word));
    values.push(sources.mixed.log_frequency(word));
    values.push(word.chars().count() as f64);
    values.extend((0..6).map(|g| if sources.grades.contains(g, word) { 1.0 } else { 0.0 }));
    FeatureVector {
        view: ViewKind::Lexical,
        values,
    }
}

/// A table of pre-trained word vectors stored contiguously.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingModel {
    kind: ViewKind,
    dimension: usize,
    index: HashMap<String, usize>,
    words: Vec<String>,
    data: Vec<f64>,
    duplicates: usize,
}

impl EmbeddingModel {
    pub fn new(kind: ViewKind, dimension: usize) -> Result<Self> {
        if kind == ViewKind::Lexical {
            return Err(Error::InvalidInput("embedding models must be EmbeddingA or EmbeddingB".into()));
        }
        if dimension == 0 {
            return Err(Error::InvalidInput("embedding dimension must be positive".into()));
        }
        Ok(EmbeddingModel {
            kind,
            dimension,
            index: HashMap::new(),
            words: Vec::new(),
            data: Vec::new(),
            duplicates: 0,
        })
    }

    /// Adds a vector. Returns `false` (and counts a duplicate) if the word
    /// is already present; the first vector is kept.
    pub fn insert(&mut self, word: &str, vector: &[f64]) -> Result<bool> {
        if vector.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: vector.len(),
            });
        }
        if vector.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite component in vector for '{word}'")));
        }
        let word = normalize_word(word)?;
        if self.index.contains_key(&word) {
            self.duplicates += 1;
            return Ok(false);
        }
        self.index.insert(word.clone(), self.words.len());
        self.words.push(word);
        self.data.extend_from_slice(vector);
        Ok(true)
    }

    pub fn from_vectors<S: AsRef<str>>(
        kind: ViewKind,
        dimension: usize,
        vectors: impl IntoIterator<Item = (S, Vec<f64>)>,
    ) -> Result<Self> {
        let mut m = EmbeddingModel::new(kind, dimension)?;
        for (w, v) in vectors {
            m.insert(w.as_ref(), &v)?;
        }
        Ok(m)
    }

    /// Loads a plain-text embedding file: an optional `vocab_size dimension`
    /// header followed by one `word v1 .. vd` line per word.
    pub fn load(path: &Path, kind: ViewKind) -> Result<Self> {
        Self::load_filtered(path, kind, |_| true)
    }

    /// Like [`EmbeddingModel::load`] but keeps only words accepted by
    /// `keep` (after normalization). Useful to bound memory on large
    /// vocabularies. Every line is still validated.
    pub fn load_filtered(path: &Path, kind: ViewKind, keep: impl Fn(&str) -> bool) -> Result<Self> {
        if kind == ViewKind::Lexical {
            return Err(Error::InvalidInput("embedding models must be EmbeddingA or EmbeddingB".into()));
        }
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let mut model: Option<EmbeddingModel> = None;
        let mut buf = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line_no = i as u64 + 1;
            let line = line.map_err(|e| Error::io(path, e))?;
            let mut parts = line.split_whitespace();
            let Some(word) = parts.next() else { continue };
            let rest: Vec<&str> = parts.collect();
            if line_no == 1 && rest.len() == 1 && word.parse::<usize>().is_ok() {
                if let Ok(dim) = rest[0].parse::<usize>() {
                    model = Some(EmbeddingModel::new(kind, dim).map_err(|e| Error::parse(path, 1, e.to_string()))?);
                    continue;
                }
            }
            let m = match &mut model {
                Some(m) => m,
                None => model.insert(
                    EmbeddingModel::new(kind, rest.len()).map_err(|e| Error::parse(path, line_no, e.to_string()))?,
                ),
            };
            if rest.len() != m.dimension {
                return Err(Error::parse(
                    path,
                    line_no,
                    format!("expected {} values, found {}", m.dimension, rest.len()),
                ));
            }
            buf.clear();
            for tok in &rest {
                let v: f64 = tok
                    .parse()
                    .map_err(|_| Error::parse(path, line_no, format!("'{tok}' is not a number")))?;
                if !v.is_finite() {
                    return Err(Error::parse(path, line_no, format!("non-finite value '{tok}'")));
                }
                buf.push(v);
            }
            let norm = normalize_word(word).map_err(|e| Error::parse(path, line_no, e.to_string()))?;
            if keep(&norm) {
                m.insert(&norm, &buf).map_err(|e| Error::parse(path, line_no, e.to_string()))?;
            }
        }
        model.ok_or_else(|| Error::parse(path, 1, "embedding file has no vectors"))
    }

    /// Writes the text format with a header line. Values use the shortest
    /// exact decimal representation.
    pub fn write<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{} {}", self.words.len(), self.dimension)?;
        for (i, w) in self.words.iter().enumerate() {
            write!(out, "{w}")?;
            for v in &self.data[i * self.dimension..(i + 1) * self.dimension] {
                write!(out, " {v}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    pub fn kind(&self) -> ViewKind {
        self.kind
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Number of repeated words skipped while building the model.
    pub fn duplicates(&self) -> usize {
        self.duplicates
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn vector(&self, word: &str) -> Option<&[f64]> {
        self.index
            .get(word)
            .map(|&i| &self.data[i * self.dimension..(i + 1) * self.dimension])
    }

    pub fn contains(&self, word: &str) -> bool {
        self.index.contains_key(word)
    }
}

/// The stored vector for `word`, or `None` when out of vocabulary.
pub fn embedding_view(word: &str, model: &EmbeddingModel) -> Option<FeatureVector> {
    model.vector(word).map(|v| FeatureVector {
        view: model.kind,
        values: v.to_vec(),
    })
}

/// Everything needed to compute any view for any word.
#[derive(Debug, Clone, Default)]
pub struct FeatureResources {
    pub lexical: LexicalSources,
    pub embedding_a: Option<EmbeddingModel>,
    pub embedding_b: Option<EmbeddingModel>,
}

impl FeatureResources {
    pub fn embedding(&self, view: ViewKind) -> Option<&EmbeddingModel> {
        match view {
            ViewKind::Lexical => None,
            ViewKind::EmbeddingA => self.embedding_a.as_ref(),
            ViewKind::EmbeddingB => self.embedding_b.as_ref(),
        }
    }

    /// Whether a resource backing `view` is loaded.
    pub fn has_view(&self, view: ViewKind) -> bool {
        view == ViewKind::Lexical || self.embedding(view).is_some()
    }

    /// Feature vector of `word` in `view`; `None` if the view is not loaded
    /// or the word is out of vocabulary.
    pub fn features(&self, word: &str, view: ViewKind) -> Option<FeatureVector> {
        match view {
            ViewKind::Lexical => Some(lexical_view(word, &self.lexical)),
            _ => self.embedding(view).and_then(|m| embedding_view(word, m)),
        }
    }

    /// Dimension of `view`, if loaded.
    pub fn dimension(&self, view: ViewKind) -> Option<usize> {
        match view {
            ViewKind::Lexical => Some(LEXICAL_DIM),
            _ => self.embedding(view).map(EmbeddingModel::dimension),
        }
    }

    /// Per-view vocabulary coverage of `words`, for logs.
    pub fn coverage<'a>(&self, words: impl IntoIterator<Item = &'a str> + Clone) -> BTreeMap<ViewKind, usize> {
        ViewKind::ALL
            .into_iter()
            .filter(|v| self.has_view(*v))
            .map(|v| {
                let n = words.clone().into_iter().filter(|w| self.features(w, v).is_some()).count();
                (v, n)
            })
            .collect()
    }
}
