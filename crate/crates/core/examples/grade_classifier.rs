// Grade-level classification: a kernel classifier on synthetic feature
// blobs, then the cross-validated comparison of feature subsets on
// generated texts.

use std::collections::HashSet;

use psynorm::lexicon::LexiconIndex;
use psynorm::readability::{
    default_feature_subsets, evaluate_features, macro_f1, profile_text, text_features, train_grade_classifier,
    GradeLabel, DEFAULT_CLASSIFIER_LAMBDA,
};
use psynorm::synthetic::{grade_blobs, grade_text};
use psynorm::Result;

pub fn run_example() -> Result<()> {
    let train = grade_blobs(30, 3, 0.2, 1);
    let test = grade_blobs(10, 3, 0.2, 2);
    let (x, y): (Vec<Vec<f64>>, Vec<GradeLabel>) = train.into_iter().unzip();
    let clf = train_grade_classifier(&x, &y, None, DEFAULT_CLASSIFIER_LAMBDA)?;
    let gold: Vec<GradeLabel> = test.iter().map(|(_, g)| *g).collect();
    let pred: Vec<GradeLabel> = test.iter().map(|(x, _)| clf.predict(x)).collect::<Result<_>>()?;
    println!("held-out blobs: macro-F1 {:.3} (gamma {:.3})", macro_f1(&gold, &pred), clf.gamma());

    let easy: HashSet<String> = ["o", "a", "menino", "menina", "casa", "sol", "bola", "gato", "e"]
        .map(String::from)
        .into();
    let lexicon = LexiconIndex::default();
    let mut corpus = Vec::new();
    for i in 0..20u64 {
        for g in GradeLabel::ALL {
            let p = profile_text(&grade_text(g, 6, i * 4 + g.index() as u64))?;
            corpus.push((text_features(&p, &easy, &lexicon, 20), g));
        }
    }
    let eval = evaluate_features(&corpus, &default_feature_subsets(), 10, 42, None, DEFAULT_CLASSIFIER_LAMBDA)?;
    print!("{}", eval.render_table());
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
