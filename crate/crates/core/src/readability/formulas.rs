use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::profile::TextProfile;

pub const DEFAULT_MATTR_WINDOW: usize = 50;

/// Upper bound on the hapax ratio `V1/V` in Honoré's statistic, which is
/// singular when every type is a hapax.
pub const HONORE_HAPAX_RATIO_CAP: f64 = 0.9999;

/// Flesch reading ease with the Brazilian Portuguese constants.
pub fn flesch_bp(words: usize, sentences: usize, syllables: usize) -> f64 {
    248.835 - 1.015 * (words as f64 / sentences as f64) - 84.6 * (syllables as f64 / words as f64)
}

/// Honoré's R: `100 ln N / (1 - V1/V)`.
pub fn honore(tokens: usize, types: usize, hapaxes: usize) -> f64 {
    let ratio = (hapaxes as f64 / types as f64).min(HONORE_HAPAX_RATIO_CAP);
    100.0 * (tokens as f64).ln() / (1.0 - ratio)
}

/// Brunét's W: `N^(V^-0.165)`.
pub fn brunet(tokens: usize, types: usize) -> f64 {
    (tokens as f64).powf((types as f64).powf(-0.165))
}

pub fn dale_chall(words: usize, sentences: usize, hard_words: usize) -> f64 {
    0.1579 * (100.0 * hard_words as f64 / words as f64) + 0.0496 * (words as f64 / sentences as f64)
}

pub fn gunning_fog(words: usize, sentences: usize, complex_words: usize) -> f64 {
    0.4 * (words as f64 / sentences as f64 + 100.0 * complex_words as f64 / words as f64)
}

/// Moving-average type-token ratio over all windows of `min(window, N)`
/// consecutive tokens.
pub fn mattr<S: AsRef<str>>(tokens: &[S], window: usize) -> f64 {
    let n = tokens.len();
    if n == 0 {
        return 0.0;
    }
    let w = window.clamp(1, n);
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for t in &tokens[..w] {
        *counts.entry(t.as_ref()).or_insert(0) += 1;
    }
    let mut type_sum = counts.len();
    for i in w..n {
        let out = tokens[i - w].as_ref();
        let c = counts.get_mut(out).expect("token in window");
        *c -= 1;
        if *c == 0 {
            counts.remove(out);
        }
        *counts.entry(tokens[i].as_ref()).or_insert(0) += 1;
        type_sum += counts.len();
    }
    let windows = n - w + 1;
    type_sum as f64 / (windows * w) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicScores {
    pub flesch_bp: f64,
    pub honore: f64,
    pub brunet: f64,
    pub dale_chall: f64,
    pub gunning_fog: f64,
    pub mattr: f64,
}

impl ClassicScores {
    pub fn named(&self) -> [(&'static str, f64); 6] {
        [
            ("flesch_bp", self.flesch_bp),
            ("honore", self.honore),
            ("brunet", self.brunet),
            ("dale_chall", self.dale_chall),
            ("gunning_fog", self.gunning_fog),
            ("mattr", self.mattr),
        ]
    }
}

/// The six classic formulas. Tokens outside `easy_words` are hard words
/// for Dale-Chall; tokens with three or more syllables are complex words
/// for Gunning Fog.
pub fn classic_formulas(p: &TextProfile, easy_words: &HashSet<String>, mattr_window: usize) -> ClassicScores {
    let words = p.word_count();
    let sentences = p.sentences.max(1);
    let hard = p.tokens.iter().filter(|t| !easy_words.contains(*t)).count();
    let complex = p.syllable_counts.iter().filter(|&&s| s >= 3).count();
    ClassicScores {
        flesch_bp: flesch_bp(words, sentences, p.syllables()),
        honore: honore(words, p.types(), p.hapaxes()),
        brunet: brunet(words, p.types()),
        dale_chall: dale_chall(words, sentences, hard),
        gunning_fog: gunning_fog(words, sentences, complex),
        mattr: mattr(&p.tokens, mattr_window),
    }
}
