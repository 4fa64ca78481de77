use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Token, sentence and syllable counts of one text.
#[derive(Debug, Clone, PartialEq)]
pub struct TextProfile {
    pub tokens: Vec<String>,
    pub sentences: usize,
    pub type_counts: BTreeMap<String, usize>,
    pub syllable_counts: Vec<usize>,
}

impl TextProfile {
    pub fn word_count(&self) -> usize {
        self.tokens.len()
    }

    pub fn types(&self) -> usize {
        self.type_counts.len()
    }

    /// Types occurring exactly once.
    pub fn hapaxes(&self) -> usize {
        self.type_counts.values().filter(|&&c| c == 1).count()
    }

    pub fn syllables(&self) -> usize {
        self.syllable_counts.iter().sum()
    }
}

fn is_vowel(c: char) -> bool {
    matches!(
        c,
        'a' | 'e' | 'i' | 'o' | 'u' | 'y'
            | 'á' | 'à' | 'â' | 'ã' | 'ä'
            | 'é' | 'è' | 'ê' | 'ë'
            | 'í' | 'ì' | 'î' | 'ï'
            | 'ó' | 'ò' | 'ô' | 'õ' | 'ö'
            | 'ú' | 'ù' | 'û' | 'ü'
    )
}

/// Number of vowel groups in a lowercase word, at least 1.
pub fn count_syllables(word: &str) -> usize {
    let mut groups = 0;
    let mut in_vowel = false;
    for c in word.chars() {
        let v = is_vowel(c);
        if v && !in_vowel {
            groups += 1;
        }
        in_vowel = v;
    }
    groups.max(1)
}

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?' | '…')
}

/// Splits `text` into lowercase word tokens (maximal runs of letters and
/// hyphens) and counts sentences (segments ending in `.`, `!`, `?` or `…`
/// followed by whitespace or end of text, plus a trailing unterminated
/// segment).
pub fn profile_text(text: &str) -> Result<TextProfile> {
    let mut tokens = Vec::new();
    let mut sentences = 0;
    let mut tokens_in_sentence = 0;
    let mut current = String::new();

    let flush = |current: &mut String, tokens: &mut Vec<String>, count: &mut usize| {
        let t = current.trim_matches('-');
        if !t.is_empty() {
            tokens.push(t.to_lowercase());
            *count += 1;
        }
        current.clear();
    };

    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c.is_alphabetic() || c == '-' {
            current.push(c);
            continue;
        }
        flush(&mut current, &mut tokens, &mut tokens_in_sentence);
        if is_terminator(c) && chars.peek().is_none_or(|n| n.is_whitespace()) && tokens_in_sentence > 0 {
            sentences += 1;
            tokens_in_sentence = 0;
        }
    }
    flush(&mut current, &mut tokens, &mut tokens_in_sentence);
    if tokens_in_sentence > 0 {
        sentences += 1;
    }
    if tokens.is_empty() {
        return Err(Error::InvalidInput("text has no word tokens".into()));
    }

    let mut type_counts = BTreeMap::new();
    for t in &tokens {
        *type_counts.entry(t.clone()).or_insert(0) += 1;
    }
    let syllable_counts = tokens.iter().map(|t| count_syllables(t)).collect();
    Ok(TextProfile {
        tokens,
        sentences,
        type_counts,
        syllable_counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_sentences_four_tokens() {
        let p = profile_text("O sol. A lua!").unwrap();
        assert_eq!(p.sentences, 2);
        assert_eq!(p.tokens, ["o", "sol", "a", "lua"]);
    }

    #[test]
    fn syllables_by_vowel_groups() {
        assert_eq!(count_syllables("casa"), 2);
        assert_eq!(count_syllables("pão"), 1);
        assert_eq!(count_syllables("psst"), 1);
        assert_eq!(count_syllables("árvore"), 3);
    }

    #[test]
    fn empty_text_is_an_error() {
        assert!(profile_text("").is_err());
        assert!(profile_text(" 123 ... ").is_err());
    }

    #[test]
    fn tokenization_details() {
        let p = profile_text("Bem-vindo, João! 3 gatos - e mais... Fim").unwrap();
        assert_eq!(p.tokens, ["bem-vindo", "joão", "gatos", "e", "mais", "fim"]);
        assert_eq!(p.sentences, 3);
        // decimal point followed by a digit does not split
        let p = profile_text("Custa 2.5 reais hoje").unwrap();
        assert_eq!(p.sentences, 1);
    }

    #[test]
    fn type_statistics() {
        let p = profile_text("a casa a rua a casa sol").unwrap();
        assert_eq!(p.word_count(), 7);
        assert_eq!(p.types(), 4);
        assert_eq!(p.hapaxes(), 2);
    }
}
