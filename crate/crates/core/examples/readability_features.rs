// Classic readability formulas and lexicon-based psycholinguistic
// features of a short text.

use std::collections::HashSet;

use psynorm::lexicon::{LexiconIndex, PropertyRatings};
use psynorm::readability::{profile_text, text_features};
use psynorm::Result;

pub fn run_example() -> Result<()> {
    let text = "O menino viu o gato na casa. O gato correu para o jardim! \
                A hipótese do cientista era significativa para a investigação.";
    let profile = profile_text(text)?;
    println!(
        "{} words, {} sentences, {} syllables, {} types",
        profile.word_count(),
        profile.sentences,
        profile.syllables(),
        profile.types()
    );

    let easy: HashSet<String> = ["o", "a", "menino", "gato", "casa", "viu", "na"].map(String::from).into();
    let lexicon: LexiconIndex = [
        ("gato", [6.5, 2.1, 6.8, 5.0]),
        ("casa", [6.2, 1.8, 6.5, 6.4]),
        ("hipótese", [2.0, 5.9, 2.4, 3.1]),
    ]
    .into_iter()
    .map(|(w, r)| (w.to_string(), PropertyRatings(r)))
    .collect();

    let f = text_features(&profile, &easy, &lexicon, 10);
    for (name, value) in &f.values {
        println!("{name:<22}{value:>9.3}");
    }
    println!("covered tokens: {}", f.covered_tokens);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
