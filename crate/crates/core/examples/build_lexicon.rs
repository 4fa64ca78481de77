// Filtering a dictionary and annotating it with four property models,
// then correlating the inferred properties.

use std::collections::HashSet;

use psynorm::evaluation::property_correlations;
use psynorm::lexicon::{build_lexicon, DictionaryEntry, PartOfSpeech, DEFAULT_MIN_COUNT};
use psynorm::regression::train_multiview;
use psynorm::synthetic::linear_norms;
use psynorm::{FrequencyList, PropertyKind, Result, ViewSet};

pub fn run_example() -> Result<()> {
    let base = linear_norms(PropertyKind::Concreteness, 500, 6, 0.2, 3);
    let resources = &base.resources;
    let mut models = Vec::new();
    for (i, p) in PropertyKind::ALL.into_iter().enumerate() {
        // the same words rated by different linear functions
        let data = linear_norms(p, 500, 6, 0.2, 3 + 10 * i as u64);
        let pairs: Vec<(&str, f64)> = base
            .dataset
            .records()
            .iter()
            .zip(data.dataset.records())
            .map(|(w, r)| (w.word.as_str(), r.rating))
            .collect();
        let ds = psynorm::NormDataset::from_pairs(p, data.dataset.scale(), "synthetic", pairs)?;
        models.push(train_multiview(p, &ds, ViewSet::ALL, resources, 1.0)?);
    }

    let entries: Vec<DictionaryEntry> = base
        .dataset
        .records()
        .iter()
        .enumerate()
        .map(|(i, r)| DictionaryEntry {
            word: r.word.clone(),
            pos: if i % 7 == 0 { PartOfSpeech::Other } else { PartOfSpeech::Noun },
        })
        .collect();
    let freq = FrequencyList::from_counts("mixed", entries.iter().enumerate().map(|(i, e)| (e.word.as_str(), i as u64)))?;
    let loanwords: HashSet<String> = [entries[1].word.clone()].into();

    let built = build_lexicon(&entries, &loanwords, &freq, DEFAULT_MIN_COUNT, &models, resources)?;
    println!("{} entries, excluded {:?}", built.entries.len(), built.excluded);
    for e in built.entries.iter().take(3) {
        println!("{:<10} {:?}", e.word, e.ratings.0);
    }
    print!("{}", property_correlations(&built.entries)?.render_pairs());
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
