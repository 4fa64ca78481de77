//! Building the annotated word list: dictionary entries are filtered by
//! part of speech, loanword status and corpus frequency, then annotated
//! with the four clamped multi-view predictions.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{FeatureResources, FrequencyList};
use crate::norms::{csv_error, normalize_word, parse_rating_field, read_csv_rows, LikertScale, PropertyKind};
use crate::regression::MultiViewModel;

/// Default minimum corpus count for a word to enter the lexicon.
pub const DEFAULT_MIN_COUNT: u64 = 8;

pub const LEXICON_HEADER: [&str; 7] = [
    "word",
    "pos",
    "count",
    "concreteness",
    "aoa",
    "imageability",
    "subj_frequency",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartOfSpeech {
    Noun,
    Verb,
    Adjective,
    Adverb,
    Other,
}

impl PartOfSpeech {
    pub fn key(self) -> &'static str {
        match self {
            PartOfSpeech::Noun => "noun",
            PartOfSpeech::Verb => "verb",
            PartOfSpeech::Adjective => "adjective",
            PartOfSpeech::Adverb => "adverb",
            PartOfSpeech::Other => "other",
        }
    }

    pub fn is_content_word(self) -> bool {
        self != PartOfSpeech::Other
    }
}

impl fmt::Display for PartOfSpeech {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for PartOfSpeech {
    type Err = std::convert::Infallible;

    /// Accepts English or Portuguese names and common abbreviations.
    /// Anything unrecognized is `Other`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let first = s.split([';', '|', '/']).next().unwrap_or("").trim().to_lowercase();
        let first = first.trim_end_matches('.');
        Ok(match first {
            "noun" | "n" | "s" | "sm" | "sf" | "substantivo" => PartOfSpeech::Noun,
            "verb" | "v" | "verbo" => PartOfSpeech::Verb,
            "adjective" | "adj" | "a" | "adjetivo" => PartOfSpeech::Adjective,
            "adverb" | "adv" | "advérbio" | "adverbio" => PartOfSpeech::Adverb,
            _ => PartOfSpeech::Other,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DictionaryEntry {
    pub word: String,
    /// The entry's first grammatical category.
    pub pos: PartOfSpeech,
}

/// The four ratings of a word, indexed by [`PropertyKind::index`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropertyRatings(pub [f64; 4]);

impl PropertyRatings {
    pub fn get(&self, p: PropertyKind) -> f64 {
        self.0[p.index()]
    }

    pub fn set(&mut self, p: PropertyKind, v: f64) {
        self.0[p.index()] = v;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LexiconEntry {
    pub word: String,
    pub pos: PartOfSpeech,
    pub corpus_count: u64,
    pub ratings: PropertyRatings,
}

/// Why dictionary entries were left out.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionCounts {
    pub duplicate: usize,
    pub pos: usize,
    pub loanword: usize,
    pub low_count: usize,
    /// No view of some model was available for the word.
    pub no_features: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LexiconBuild {
    pub entries: Vec<LexiconEntry>,
    pub pos_counts: BTreeMap<PartOfSpeech, usize>,
    pub excluded: ExclusionCounts,
}

/// Loads a `word,pos` CSV. Repeated words keep their first row.
pub fn load_dictionary(path: &Path) -> Result<Vec<DictionaryEntry>> {
    read_csv_rows(path, &["word", "pos"])?
        .into_iter()
        .map(|(line, rec)| {
            if rec.len() != 2 {
                return Err(Error::parse(path, line, "expected 2 fields (word,pos)"));
            }
            let word = normalize_word(&rec[0]).map_err(|e| Error::parse(path, line, e.to_string()))?;
            let pos = rec[1].parse().unwrap_or(PartOfSpeech::Other);
            Ok(DictionaryEntry { word, pos })
        })
        .collect()
}

fn model_for(models: &[MultiViewModel], p: PropertyKind) -> Result<&MultiViewModel> {
    let m = models.iter().find(|m| m.property == p).ok_or(Error::MissingModel(p))?;
    if m.scale != LikertScale::SEVEN_POINT {
        return Err(Error::Incompatible(format!(
            "model for {p} is on scale {}, the lexicon requires 1-7",
            m.scale
        )));
    }
    Ok(m)
}

/// Filters `entries` and annotates the survivors. Output is sorted by word
/// (Unicode code point order).
pub fn build_lexicon(
    entries: &[DictionaryEntry],
    loanwords: &HashSet<String>,
    freq: &FrequencyList,
    min_count: u64,
    models: &[MultiViewModel],
    resources: &FeatureResources,
) -> Result<LexiconBuild> {
    let ordered: Vec<&MultiViewModel> = PropertyKind::ALL
        .iter()
        .map(|p| model_for(models, *p))
        .collect::<Result<_>>()?;

    let mut excluded = ExclusionCounts::default();
    let mut seen = HashSet::new();
    let mut candidates = Vec::new();
    for e in entries {
        if !seen.insert(e.word.as_str()) {
            excluded.duplicate += 1;
        } else if !e.pos.is_content_word() {
            excluded.pos += 1;
        } else if loanwords.contains(&e.word) {
            excluded.loanword += 1;
        } else if freq.count(&e.word) < min_count {
            excluded.low_count += 1;
        } else {
            candidates.push(e);
        }
    }

    let annotated: Vec<Option<LexiconEntry>> = candidates
        .par_iter()
        .map(|e| {
            let mut ratings = PropertyRatings([0.0; 4]);
            for (p, m) in PropertyKind::ALL.iter().zip(&ordered) {
                match m.fuse(|v| resources.features(&e.word, v), true)? {
                    Some(r) => ratings.set(*p, r),
                    None => return Ok(None),
                }
            }
            Ok(Some(LexiconEntry {
                word: e.word.clone(),
                pos: e.pos,
                corpus_count: freq.count(&e.word),
                ratings,
            }))
        })
        .collect::<Result<_>>()?;

    let mut out: Vec<LexiconEntry> = Vec::with_capacity(annotated.len());
    for a in annotated {
        match a {
            Some(e) => out.push(e),
            None => excluded.no_features += 1,
        }
    }
    out.sort_by(|a, b| a.word.cmp(&b.word));
    let mut pos_counts = BTreeMap::new();
    for e in &out {
        *pos_counts.entry(e.pos).or_insert(0) += 1;
    }
    Ok(LexiconBuild {
        entries: out,
        pos_counts,
        excluded,
    })
}

/// Writes the lexicon CSV with ratings at 3 decimals, rows sorted by word.
pub fn write_lexicon(lexicon: &[LexiconEntry], path: &Path) -> Result<()> {
    let mut rows: Vec<&LexiconEntry> = lexicon.iter().collect();
    rows.sort_by(|a, b| a.word.cmp(&b.word));
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    w.write_record(LEXICON_HEADER).map_err(|e| csv_error(path, e))?;
    for e in rows {
        let r = e.ratings.0;
        w.write_record([
            e.word.clone(),
            e.pos.key().to_string(),
            e.corpus_count.to_string(),
            format!("{:.3}", r[0]),
            format!("{:.3}", r[1]),
            format!("{:.3}", r[2]),
            format!("{:.3}", r[3]),
        ])
        .map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Reads a lexicon CSV written by [`write_lexicon`].
pub fn read_lexicon(path: &Path) -> Result<Vec<LexiconEntry>> {
    read_csv_rows(path, &LEXICON_HEADER)?
        .into_iter()
        .map(|(line, rec)| {
            if rec.len() != LEXICON_HEADER.len() {
                return Err(Error::parse(path, line, format!("expected {} fields", LEXICON_HEADER.len())));
            }
            let word = normalize_word(&rec[0]).map_err(|e| Error::parse(path, line, e.to_string()))?;
            let pos = rec[1].parse().unwrap_or(PartOfSpeech::Other);
            let corpus_count = rec[2]
                .parse()
                .map_err(|_| Error::parse(path, line, format!("invalid count '{}'", &rec[2])))?;
            let mut ratings = PropertyRatings([0.0; 4]);
            for (i, slot) in ratings.0.iter_mut().enumerate() {
                *slot = parse_rating_field(path, line, &rec[3 + i])?;
            }
            Ok(LexiconEntry {
                word,
                pos,
                corpus_count,
                ratings,
            })
        })
        .collect()
}

/// Word to ratings lookup over a lexicon.
#[derive(Debug, Clone, Default)]
pub struct LexiconIndex {
    map: HashMap<String, PropertyRatings>,
}

impl LexiconIndex {
    pub fn new(entries: &[LexiconEntry]) -> Self {
        LexiconIndex {
            map: entries.iter().map(|e| (e.word.clone(), e.ratings)).collect(),
        }
    }

    pub fn get(&self, word: &str) -> Option<&PropertyRatings> {
        self.map.get(word)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

impl FromIterator<(String, PropertyRatings)> for LexiconIndex {
    fn from_iter<T: IntoIterator<Item = (String, PropertyRatings)>>(iter: T) -> Self {
        LexiconIndex {
            map: iter.into_iter().collect(),
        }
    }
}
