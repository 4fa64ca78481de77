//! A complete on-disk workspace of synthetic inputs for command tests.

#![allow(dead_code)]

pub mod oracle;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use psynorm::readability::GradeLabel;
use psynorm::synthetic::{grade_text, linear_norms, word};
use psynorm::{PropertyKind, ViewKind};

pub struct Workspace {
    pub dir: tempfile::TempDir,
    pub config: PathBuf,
    pub words: Vec<String>,
}

impl Workspace {
    pub fn path(&self, rel: &str) -> PathBuf {
        self.dir.path().join(rel)
    }

    pub fn out(&self) -> PathBuf {
        self.path("out")
    }
}

pub fn write(path: &Path, text: &str) {
    if let Some(d) = path.parent() {
        std::fs::create_dir_all(d).unwrap();
    }
    std::fs::write(path, text).unwrap();
}

fn csv_norms(rows: impl Iterator<Item = (String, f64)>) -> String {
    let mut s = String::from("word,rating\n");
    for (w, r) in rows {
        let _ = writeln!(s, "{w},{r}");
    }
    s
}

/// `n` words with two 8-d embeddings, four property norm files (AoA split
/// into a 1-7 and a 1-9 list sharing 50 words), frequency lists, grade
/// lexicons, a dictionary, a loanword list and a small labelled corpus.
pub fn workspace(n: usize, extra_config: &str) -> Workspace {
    assert!(n >= 320);
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();
    let base = linear_norms(PropertyKind::Concreteness, n, 8, 0.2, 5);
    let words: Vec<String> = (0..n).map(word).collect();
    let emb_a = base.resources.embedding(ViewKind::EmbeddingA).unwrap();
    let emb_b = base.resources.embedding(ViewKind::EmbeddingB).unwrap();
    for (name, m) in [("emb_a.txt", emb_a), ("emb_b.txt", emb_b)] {
        let mut buf = Vec::new();
        m.write(&mut buf).unwrap();
        std::fs::write(root.join(name), buf).unwrap();
    }

    let rating = |p: usize, i: usize| -> f64 {
        let a = emb_a.vector(&words[i]).unwrap();
        let b = emb_b.vector(&words[i]).unwrap();
        let v = 4.0 + 0.6 * a[p] + 0.4 * b[p + 4] + 0.1 * ((i * 7 + p) as f64).sin();
        (v.clamp(1.0, 7.0) * 1000.0).round() / 1000.0
    };
    for p in PropertyKind::ALL {
        let i = p.index();
        if p == PropertyKind::AgeOfAcquisition {
            write(&root.join("norms/aoa_bp.csv"), &csv_norms((0..300).map(|j| (words[j].clone(), rating(i, j)))));
            let nine = (250..n).map(|j| (words[j].clone(), 1.0 + (rating(i, j) - 1.0) * 8.0 / 6.0));
            write(&root.join("norms/aoa_ep.csv"), &csv_norms(nine));
        } else {
            let rows = (0..n).filter(|j| j % 5 != i).map(|j| (words[j].clone(), rating(i, j)));
            write(&root.join(format!("norms/{}.csv", p.key())), &csv_norms(rows));
        }
    }

    let mut mixed = String::from("#total=10000000\n");
    let mut subtlex = String::new();
    for (i, w) in words.iter().enumerate() {
        let _ = writeln!(mixed, "{w}\t{}", (i * 37) % 200);
        let _ = writeln!(subtlex, "{w}\t{}\t{}", (i * 13) % 90 + 1, (i * 13) % 40 + 1);
    }
    write(&root.join("freq/mixed.tsv"), &mixed);
    write(&root.join("freq/subtlex.tsv"), &subtlex);
    for g in 0..6 {
        let list: String = words.iter().skip(g).step_by(6 + g).map(|w| format!("{w}\n")).collect();
        write(&root.join(format!("grades/g{}.txt", g + 1)), &list);
    }

    let mut dict = String::from("word,pos\n");
    for (i, w) in words.iter().enumerate() {
        let pos = ["noun", "verb", "adj", "adv", "prep"][i % 5];
        let _ = writeln!(dict, "{w},{pos}");
    }
    dict.push_str("naovocab,noun\n");
    write(&root.join("lexicon/dictionary.csv"), &dict);
    write(&root.join("lexicon/loanwords.txt"), &format!("{}\n{}\n", words[0], words[1]));

    write(&root.join("readability/easy.txt"), "o\na\nmenino\nmenina\ncasa\nsol\nbola\ngato\ne\n");
    let mut manifest = String::from("file,grade\n");
    for i in 0..6u64 {
        for g in GradeLabel::ALL {
            let file = format!("t{i}_{}.txt", g.index());
            write(&root.join("readability/texts").join(&file), &grade_text(g, 5, i * 4 + g.index() as u64));
            let _ = writeln!(manifest, "{file},{}", g.index() + 3);
        }
    }
    write(&root.join("readability/texts/manifest.csv"), &manifest);

    let config = root.join("psynorm.toml");
    write(
        &config,
        &format!(
            r#"seed = 42
lambda = 1.0
out = "out"

[norms]
target_scale = [1.0, 7.0]

[[norms.sources]]
property = "concreteness"
path = "norms/concreteness.csv"
scale = [1.0, 7.0]

[[norms.sources]]
property = "aoa"
path = "norms/aoa_bp.csv"
scale = [1.0, 7.0]

[[norms.sources]]
property = "aoa"
path = "norms/aoa_ep.csv"
scale = [1.0, 9.0]
variant = "ep"

[[norms.sources]]
property = "imageability"
path = "norms/imageability.csv"
scale = [1.0, 7.0]

[[norms.sources]]
property = "subj_frequency"
path = "norms/subj_frequency.csv"
scale = [1.0, 7.0]

[features]
subtlex = "freq/subtlex.tsv"
mixed = "freq/mixed.tsv"
grades = ["grades/g1.txt", "grades/g2.txt", "grades/g3.txt", "grades/g4.txt", "grades/g5.txt", "grades/g6.txt"]
embedding_a = "emb_a.txt"
embedding_b = "emb_b.txt"

[evaluation]
k = 3
reps = 2

[lexicon]
dictionary = "lexicon/dictionary.csv"
loanwords = "lexicon/loanwords.txt"

[readability]
easy_words = "readability/easy.txt"
corpus_dir = "readability/texts"
mattr_window = 20
folds = 4
{extra_config}"#
        ),
    );
    Workspace { dir, config, words }
}
