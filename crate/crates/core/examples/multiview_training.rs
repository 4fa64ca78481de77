// One ridge model per view, averaged at prediction time over the views
// available for the word.

use psynorm::regression::{predict_multiview, train_multiview};
use psynorm::synthetic::linear_norms;
use psynorm::{MultiViewModel, PropertyKind, Result, ViewKind, ViewSet};

pub fn run_example() -> Result<()> {
    let data = linear_norms(PropertyKind::Concreteness, 300, 8, 0.2, 7);
    let views = ViewSet::new([ViewKind::EmbeddingA, ViewKind::EmbeddingB])?;
    let model = train_multiview(PropertyKind::Concreteness, &data.dataset, views, &data.resources, 1.0)?;
    println!("trained [{}] with rows {:?}", model.view_set(), model.training_rows);

    for r in data.dataset.records().iter().take(5) {
        let per_view = model.view_predictions(|v| data.resources.features(&r.word, v))?;
        let fused = predict_multiview(&model, &r.word, &data.resources, true)?;
        println!("{:<10} gold {:.2}  views {:?}  fused {:.2}", r.word, r.rating, per_view, fused);
    }

    let restored = MultiViewModel::from_json(&model.to_json()?)?;
    assert_eq!(restored, model);
    println!("archive round trip ok; has {}: {}", ViewKind::Lexical, restored.submodel(ViewKind::Lexical).is_some());
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
