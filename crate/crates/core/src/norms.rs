//! Human-rated psycholinguistic norms: loading, Likert rescaling,
//! European-to-Brazilian orthographic adaptation and merging of sources.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

/// The four subjective word properties the toolkit infers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyKind {
    Concreteness,
    #[serde(rename = "aoa")]
    AgeOfAcquisition,
    Imageability,
    #[serde(rename = "subj_frequency")]
    SubjectiveFrequency,
}

impl PropertyKind {
    pub const ALL: [PropertyKind; 4] = [
        PropertyKind::Concreteness,
        PropertyKind::AgeOfAcquisition,
        PropertyKind::Imageability,
        PropertyKind::SubjectiveFrequency,
    ];

    /// Short machine name, also used for file names and CSV columns.
    pub fn key(self) -> &'static str {
        match self {
            PropertyKind::Concreteness => "concreteness",
            PropertyKind::AgeOfAcquisition => "aoa",
            PropertyKind::Imageability => "imageability",
            PropertyKind::SubjectiveFrequency => "subj_frequency",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PropertyKind::Concreteness => "Concreteness",
            PropertyKind::AgeOfAcquisition => "AoA",
            PropertyKind::Imageability => "Imageability",
            PropertyKind::SubjectiveFrequency => "Sub. Freq.",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for PropertyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_lowercase().replace('-', "_").as_str() {
            "concreteness" => Ok(PropertyKind::Concreteness),
            "aoa" | "age_of_acquisition" => Ok(PropertyKind::AgeOfAcquisition),
            "imageability" => Ok(PropertyKind::Imageability),
            "subj_frequency" | "subjective_frequency" | "subjfreq" => {
                Ok(PropertyKind::SubjectiveFrequency)
            }
            other => Err(Error::Config(format!(
                "unknown property '{other}' (expected concreteness, aoa, imageability or subj_frequency)"
            ))),
        }
    }
}

/// A bounded rating scale, e.g. a 7-point Likert scale is `(1, 7)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64)", into = "(f64, f64)")]
pub struct LikertScale {
    min: f64,
    max: f64,
}

impl LikertScale {
    pub const SEVEN_POINT: LikertScale = LikertScale { min: 1.0, max: 7.0 };
    pub const NINE_POINT: LikertScale = LikertScale { min: 1.0, max: 9.0 };

    pub fn new(min: f64, max: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::InvalidScale { min, max });
        }
        Ok(LikertScale { min, max })
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.min + self.max)
    }

    pub fn contains(&self, value: f64) -> bool {
        value >= self.min && value <= self.max
    }

    pub fn clamp(&self, value: f64) -> f64 {
        value.clamp(self.min, self.max)
    }
}

impl TryFrom<(f64, f64)> for LikertScale {
    type Error = Error;

    fn try_from((min, max): (f64, f64)) -> Result<Self> {
        LikertScale::new(min, max)
    }
}

impl From<LikertScale> for (f64, f64) {
    fn from(s: LikertScale) -> Self {
        (s.min, s.max)
    }
}

impl fmt::Display for LikertScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.min, self.max)
    }
}

impl FromStr for LikertScale {
    type Err = Error;

    /// Parses `"1-7"` or `"1,7"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("invalid scale '{s}' (expected e.g. 1-7)"));
        let (lo, hi) = s.split_once(['-', ',']).ok_or_else(bad)?;
        let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
        LikertScale::new(lo, hi)
    }
}

/// Canonical word form: NFC, lowercase, trimmed. Rejects empty words and
/// words with inner whitespace.
pub fn normalize_word(raw: &str) -> Result<String> {
    let word: String = raw.trim().nfc().collect::<String>().to_lowercase();
    if word.is_empty() || word.chars().any(char::is_whitespace) {
        return Err(Error::InvalidWord(raw.to_string()));
    }
    Ok(word)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormRecord {
    pub word: String,
    pub rating: f64,
    pub source: String,
}

/// A rated word list for one property on one scale. Words are unique.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormDataset {
    property: PropertyKind,
    scale: LikertScale,
    records: Vec<NormRecord>,
}

impl NormDataset {
    pub fn new(property: PropertyKind, scale: LikertScale, records: Vec<NormRecord>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for r in &records {
            if normalize_word(&r.word)? != r.word {
                return Err(Error::InvalidWord(r.word.clone()));
            }
            check_rating(&r.word, r.rating, &scale)?;
            if !seen.insert(r.word.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate word '{}'", r.word)));
            }
        }
        Ok(NormDataset {
            property,
            scale,
            records,
        })
    }

    /// Convenience constructor from `(word, rating)` pairs; words are
    /// normalized.
    pub fn from_pairs<'a>(
        property: PropertyKind,
        scale: LikertScale,
        source: &str,
        pairs: impl IntoIterator<Item = (&'a str, f64)>,
    ) -> Result<Self> {
        let records = pairs
            .into_iter()
            .map(|(w, r)| {
                Ok(NormRecord {
                    word: normalize_word(w)?,
                    rating: r,
                    source: source.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        NormDataset::new(property, scale, records)
    }

    pub fn property(&self) -> PropertyKind {
        self.property
    }

    pub fn scale(&self) -> LikertScale {
        self.scale
    }

    pub fn records(&self) -> &[NormRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn rating(&self, word: &str) -> Option<f64> {
        self.records.iter().find(|r| r.word == word).map(|r| r.rating)
    }

    pub fn to_map(&self) -> BTreeMap<String, f64> {
        self.records.iter().map(|r| (r.word.clone(), r.rating)).collect()
    }

    /// Writes the canonical `word,rating` CSV. Ratings use the shortest
    /// representation that round-trips exactly.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
        w.write_record(["word", "rating"]).map_err(|e| csv_error(path, e))?;
        for r in &self.records {
            w.write_record([r.word.as_str(), &r.rating.to_string()])
                .map_err(|e| csv_error(path, e))?;
        }
        w.flush().map_err(|e| Error::io(path, e))
    }
}

fn check_rating(word: &str, rating: f64, scale: &LikertScale) -> Result<()> {
    if !rating.is_finite() || !scale.contains(rating) {
        return Err(Error::RatingOutOfRange {
            word: word.to_string(),
            rating,
            min: scale.min,
            max: scale.max,
        });
    }
    Ok(())
}

pub(crate) fn csv_error(path: &Path, err: csv::Error) -> Error {
    let line = err.position().map(|p| p.line()).unwrap_or(0);
    match err.into_kind() {
        csv::ErrorKind::Io(e) => Error::io(path, e),
        other => Error::parse(path, line, format!("{other:?}")),
    }
}

pub(crate) fn open_csv(path: &Path) -> Result<csv::Reader<std::fs::File>> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_error(path, e))
}

/// Reads a CSV file whose first row must match `header` (case-insensitive).
/// Yields `(line, fields)` for every non-empty data row.
pub(crate) fn read_csv_rows(path: &Path, header: &[&str]) -> Result<Vec<(u64, csv::StringRecord)>> {
    let mut reader = open_csv(path)?;
    let mut rows = Vec::new();
    let mut saw_header = false;
    for rec in reader.records() {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if rec.iter().all(str::is_empty) {
            continue;
        }
        if !saw_header {
            let got: Vec<String> = rec.iter().map(|f| f.trim_start_matches('\u{feff}').to_lowercase()).collect();
            if got.len() < header.len() || got.iter().zip(header).any(|(g, h)| g != h) {
                return Err(Error::parse(
                    path,
                    line,
                    format!("expected header '{}'", header.join(",")),
                ));
            }
            saw_header = true;
            continue;
        }
        rows.push((line, rec));
    }
    Ok(rows)
}

pub(crate) fn parse_rating_field(path: &Path, line: u64, field: &str) -> Result<f64> {
    if field.contains(',') {
        return Err(Error::parse(
            path,
            line,
            format!("rating '{field}' uses a comma decimal separator; use a period"),
        ));
    }
    let value: f64 = field
        .parse()
        .map_err(|_| Error::parse(path, line, format!("rating '{field}' is not a number")))?;
    if !value.is_finite() {
        return Err(Error::parse(path, line, format!("rating '{field}' is not finite")));
    }
    Ok(value)
}

/// Loads a `word,rating` CSV. Every error carries the file path and line.
pub fn load_norms(path: &Path, property: PropertyKind, scale: LikertScale) -> Result<NormDataset> {
    let source = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut records = Vec::new();
    let mut first_line: HashMap<String, u64> = HashMap::new();
    for (line, rec) in read_csv_rows(path, &["word", "rating"])? {
        if rec.len() != 2 {
            return Err(Error::parse(
                path,
                line,
                format!("expected 2 fields (word,rating), found {}", rec.len()),
            ));
        }
        let word = normalize_word(&rec[0]).map_err(|e| Error::parse(path, line, e.to_string()))?;
        let rating = parse_rating_field(path, line, &rec[1])?;
        check_rating(&word, rating, &scale).map_err(|e| Error::parse(path, line, e.to_string()))?;
        if let Some(prev) = first_line.insert(word.clone(), line) {
            return Err(Error::parse(
                path,
                line,
                format!("duplicate word '{word}' (first seen on line {prev})"),
            ));
        }
        records.push(NormRecord {
            word,
            rating,
            source: source.clone(),
        });
    }
    Ok(NormDataset {
        property,
        scale,
        records,
    })
}

/// Affine, endpoint-preserving rescaling onto `target`.
pub fn convert_scale(ds: &NormDataset, target: LikertScale) -> Result<NormDataset> {
    if ds.is_empty() {
        return Err(Error::InvalidInput("cannot rescale an empty dataset".into()));
    }
    if ds.scale == target {
        return Ok(ds.clone());
    }
    let from = ds.scale;
    let factor = (target.max - target.min) / (from.max - from.min);
    let records = ds
        .records
        .iter()
        .map(|r| NormRecord {
            rating: target.clamp(target.min + (r.rating - from.min) * factor),
            ..r.clone()
        })
        .collect();
    Ok(NormDataset {
        property: ds.property,
        scale: target,
        records,
    })
}

/// EP to BP word replacements plus words to drop.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OrthographyMap {
    replacements: BTreeMap<String, String>,
    discards: BTreeSet<String>,
}

impl OrthographyMap {
    pub fn new(replacements: BTreeMap<String, String>, discards: BTreeSet<String>) -> Result<Self> {
        let mut norm_repl = BTreeMap::new();
        for (from, to) in replacements {
            norm_repl.insert(normalize_word(&from)?, normalize_word(&to)?);
        }
        let norm_disc = discards
            .iter()
            .map(|w| normalize_word(w))
            .collect::<Result<BTreeSet<_>>>()?;
        if let Some(w) = norm_disc.iter().find(|w| norm_repl.contains_key(*w)) {
            return Err(Error::InvalidInput(format!(
                "'{w}' is both replaced and discarded"
            )));
        }
        Ok(OrthographyMap {
            replacements: norm_repl,
            discards: norm_disc,
        })
    }

    /// The adaptation pairs and discards used as illustrations of the
    /// EP to BP adjustments. Real runs supply a complete map file.
    pub fn starter() -> Self {
        let replacements = [
            ("acção", "ação"),
            ("adopção", "adoção"),
            ("amnistia", "anistia"),
            ("ficheiro", "arquivo"),
            ("assassínio", "assassinato"),
            ("apuramento", "apuração"),
        ]
        .into_iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        let discards = ["faneca", "faia", "rebuçado"]
            .into_iter()
            .map(String::from)
            .collect();
        OrthographyMap::new(replacements, discards).expect("starter map is valid")
    }

    /// Loads an `ep_form,bp_form` CSV; an empty `bp_form` marks a discard.
    pub fn load(path: &Path) -> Result<Self> {
        let mut replacements = BTreeMap::new();
        let mut discards = BTreeSet::new();
        for (line, rec) in read_csv_rows(path, &["ep_form", "bp_form"])? {
            if rec.is_empty() || rec.len() > 2 {
                return Err(Error::parse(path, line, "expected 2 fields (ep_form,bp_form)"));
            }
            let ep = normalize_word(&rec[0]).map_err(|e| Error::parse(path, line, e.to_string()))?;
            let bp = rec.get(1).unwrap_or("");
            let dup = if bp.is_empty() {
                !discards.insert(ep.clone()) || replacements.contains_key(&ep)
            } else {
                let bp = normalize_word(bp).map_err(|e| Error::parse(path, line, e.to_string()))?;
                discards.contains(&ep) || replacements.insert(ep.clone(), bp).is_some()
            };
            if dup {
                return Err(Error::parse(path, line, format!("'{ep}' listed more than once")));
            }
        }
        Ok(OrthographyMap {
            replacements,
            discards,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.replacements.is_empty() && self.discards.is_empty()
    }

    pub fn replacements(&self) -> &BTreeMap<String, String> {
        &self.replacements
    }

    pub fn discards(&self) -> &BTreeSet<String> {
        &self.discards
    }
}

/// Rewrites and drops words. When a rewrite lands on a word already in the
/// dataset the records are combined by averaging their ratings.
pub fn apply_orthography(ds: &NormDataset, map: &OrthographyMap) -> NormDataset {
    let mut out: Vec<(NormRecord, usize)> = Vec::with_capacity(ds.len());
    let mut index: HashMap<String, usize> = HashMap::new();
    for r in &ds.records {
        if map.discards.contains(&r.word) {
            continue;
        }
        let word = map.replacements.get(&r.word).unwrap_or(&r.word).clone();
        match index.get(&word) {
            Some(&i) => {
                let (acc, n) = &mut out[i];
                acc.rating += r.rating;
                *n += 1;
                if !acc.source.split('+').any(|s| s == r.source) {
                    acc.source = format!("{}+{}", acc.source, r.source);
                }
            }
            None => {
                index.insert(word.clone(), out.len());
                out.push((
                    NormRecord {
                        word,
                        ..r.clone()
                    },
                    1,
                ));
            }
        }
    }
    let records = out
        .into_iter()
        .map(|(mut r, n)| {
            if n > 1 {
                r.rating /= n as f64;
            }
            r
        })
        .collect();
    NormDataset {
        property: ds.property,
        scale: ds.scale,
        records,
    }
}

/// Union of two datasets on the same property and scale; shared words get
/// the mean of both ratings.
pub fn merge_datasets(a: &NormDataset, b: &NormDataset) -> Result<NormDataset> {
    if a.property != b.property {
        return Err(Error::Incompatible(format!(
            "property {} vs {}",
            a.property, b.property
        )));
    }
    if a.scale != b.scale {
        return Err(Error::Incompatible(format!(
            "scale {} vs {} (convert first)",
            a.scale, b.scale
        )));
    }
    let in_b: HashMap<&str, &NormRecord> = b.records.iter().map(|r| (r.word.as_str(), r)).collect();
    let mut records: Vec<NormRecord> = a
        .records
        .iter()
        .map(|ra| match in_b.get(ra.word.as_str()) {
            Some(rb) => NormRecord {
                word: ra.word.clone(),
                rating: 0.5 * (ra.rating + rb.rating),
                source: format!("{}+{}", ra.source, rb.source),
            },
            None => ra.clone(),
        })
        .collect();
    let in_a: BTreeSet<&str> = a.records.iter().map(|r| r.word.as_str()).collect();
    records.extend(b.records.iter().filter(|r| !in_a.contains(r.word.as_str())).cloned());
    Ok(NormDataset {
        property: a.property,
        scale: a.scale,
        records,
    })
}
