// The 13-dimensional lexical view: log frequencies, word length and
// grade-lexicon membership.

use psynorm::features::{lexical_view, LexicalSources, LEXICAL_FEATURE_NAMES};
use psynorm::{FrequencyList, GradeLexicons, Result};

pub fn run_example() -> Result<()> {
    let subtlex = FrequencyList::from_counts("subtlex", [("casa", 5200), ("gato", 800), ("hipótese", 12)])?
        .with_diversity([("casa", 900), ("gato", 310), ("hipótese", 9)])?;
    let mixed = FrequencyList::from_counts("mixed", [("casa", 9100), ("gato", 1200), ("hipótese", 340)])?;
    let grades = GradeLexicons::from_lists([
        vec!["casa", "gato"],
        vec!["casa"],
        vec![],
        vec![],
        vec!["hipótese"],
        vec![],
    ])?;
    let sources = LexicalSources {
        subtlex,
        mixed,
        grades,
        ..Default::default()
    };

    for word in ["casa", "hipótese", "inexistente"] {
        let v = lexical_view(word, &sources);
        println!("{word}");
        for (name, value) in LEXICAL_FEATURE_NAMES.iter().zip(&v.values) {
            println!("  {name:<22}{value:>8.3}");
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
