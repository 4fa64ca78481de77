// Reading and writing word vectors in the plain-text format, with an
// optional `count dim` header line.

use std::io::Write;

use psynorm::features::embedding_view;
use psynorm::{EmbeddingModel, Error, Result, ViewKind};

pub fn run_example() -> Result<()> {
    let dir = std::env::temp_dir().join(format!("psynorm-embeddings-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| Error::Config(e.to_string()))?;
    let path = dir.join("vectors.txt");
    let mut f = std::fs::File::create(&path).map_err(|e| Error::Config(e.to_string()))?;
    writeln!(f, "4 3\ncasa 0.1 0.2 0.3\nGato 0.5 -0.1 0.0\nsol 1 2 3\ncasa 9 9 9")
        .map_err(|e| Error::Config(e.to_string()))?;
    drop(f);

    let model = EmbeddingModel::load(&path, ViewKind::EmbeddingA)?;
    println!(
        "{} words, dimension {}, {} duplicate(s) ignored",
        model.len(),
        model.dimension(),
        model.duplicates()
    );
    println!("gato -> {:?}", model.vector("gato"));

    let keep = ["casa", "sol"];
    let filtered = EmbeddingModel::load_filtered(&path, ViewKind::EmbeddingA, |w| keep.contains(&w))?;
    println!("filtered vocabulary: {:?}", filtered.words());
    println!("casa view: {:?}", embedding_view("casa", &filtered).map(|v| v.values));

    let mut buf = Vec::new();
    filtered.write(&mut buf).map_err(|e| Error::Config(e.to_string()))?;
    print!("{}", String::from_utf8_lossy(&buf));
    std::fs::remove_dir_all(&dir).ok();
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
