//! Acceptance criteria. Each check prints one PASS/FAIL line; the process
//! fails if any check fails.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::oracle;
use psynorm::cli::{self, NormSource, RunConfig, Variant};
use psynorm::evaluation::{cronbach_alpha, cross_validate, make_folds, pearson, spearman};
use psynorm::norms::{convert_scale, load_norms, LikertScale, NormDataset};
use psynorm::readability::{
    brunet, evaluate_features, flesch_bp, honore, mattr, profile_text, FeatureSubset, GradeLabel, TextFeatures,
};
use psynorm::regression::{predict_multiview, train_multiview, train_ridge, DesignMatrix};
use psynorm::synthetic::{grade_blobs, linear_norms, overlapping_sources, random_embeddings, word};
use psynorm::{FeatureResources, PropertyKind, ViewKind, ViewSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: f64) -> Result<(), String> {
    check(
        elapsed.as_secs_f64() < limit,
        format!("took {:.2}s, limit {limit}s", elapsed.as_secs_f64()),
    )
}

fn ridge_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for case in 0..200 {
        let n = rng.random_range(5..=100);
        let d = rng.random_range(1..=30);
        let lambda = [0.01, 0.5, 10.0][case % 3];
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..d).map(|_| rng.random_range(-3.0..3.0)).collect())
            .collect();
        let y: Vec<f64> = (0..n).map(|_| rng.random_range(1.0..7.0)).collect();
        let x = DesignMatrix::from_rows(&rows, y.clone()).map_err(|e| e.to_string())?;
        let m = train_ridge(&x, lambda, ViewKind::EmbeddingA).map_err(|e| e.to_string())?;
        let (w, b) = oracle::ridge(&rows, &y, lambda);
        let diff = m.weights.iter().zip(&w).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt();
        let norm = w.iter().map(|q| q * q).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
        worst = worst.max(diff / norm).max((m.intercept - b).abs() / b.abs().max(1.0));
    }
    check(worst <= 1e-8, format!("max relative error {worst:.2e}"))?;
    within(start.elapsed(), 10.0)?;
    Ok(format!("200 instances, max relative error {worst:.2e}, {:.2}s", start.elapsed().as_secs_f64()))
}

fn synthetic_recovery() -> Outcome {
    let start = Instant::now();
    let data = linear_norms(PropertyKind::Concreteness, 2000, 20, 0.1, 7);
    let plan = make_folds(2000, 5, 1, 42).map_err(|e| e.to_string())?;
    let views = ViewSet::single(ViewKind::EmbeddingA);
    let report = cross_validate(PropertyKind::Concreteness, &data.dataset, &data.resources, &[views], &plan, 1.0)
        .map_err(|e| e.to_string())?;
    let r = &report.results[0];
    let (p, m) = (r.pearson.ok_or("pearson undefined")?, r.mse.ok_or("mse undefined")?);
    check(p >= 0.98 && m <= 0.02, format!("r = {p:.4}, MSE = {m:.4}"))?;
    within(start.elapsed(), 30.0)?;
    Ok(format!("r = {p:.4}, MSE = {m:.4}, {:.2}s", start.elapsed().as_secs_f64()))
}

fn fusion_exactness() -> Outcome {
    let data = linear_norms(PropertyKind::Imageability, 400, 6, 0.3, 3);
    let model = train_multiview(PropertyKind::Imageability, &data.dataset, ViewSet::ALL, &data.resources, 0.7)
        .map_err(|e| e.to_string())?;
    // 1000 new words; EmbeddingB knows every other one, EmbeddingA two in three
    let words: Vec<String> = (10_000..11_000).map(word).collect();
    let a_words: Vec<String> = words.iter().enumerate().filter(|(i, _)| i % 3 != 0).map(|(_, w)| w.clone()).collect();
    let b_words: Vec<String> = words.iter().step_by(2).cloned().collect();
    let res = FeatureResources {
        lexical: data.resources.lexical.clone(),
        embedding_a: Some(random_embeddings(ViewKind::EmbeddingA, &a_words, 6, 5)),
        embedding_b: Some(random_embeddings(ViewKind::EmbeddingB, &b_words, 6, 6)),
    };
    let mut worst = 0.0f64;
    for w in &words {
        let mut preds = Vec::new();
        for sub in &model.submodels {
            if let Some(f) = res.features(w, sub.view) {
                let s = &sub.standardizer;
                let z = f.values.iter().zip(&s.means).zip(&s.stds).map(|((v, m), sd)| (v - m) / sd);
                preds.push(sub.intercept + z.zip(&sub.weights).map(|(a, b)| a * b).sum::<f64>());
            }
        }
        let expect = preds.iter().sum::<f64>() / preds.len() as f64;
        let got = predict_multiview(&model, w, &res, false).map_err(|e| e.to_string())?;
        worst = worst.max((got - expect).abs());
    }
    check(worst <= 1e-12, format!("max deviation {worst:.2e}"))?;
    Ok(format!("1000 words, max deviation {worst:.2e}"))
}

fn fold_soundness() -> Outcome {
    let mut plans = 0;
    for n in 5..=200 {
        for k in [2, 5, 10] {
            for reps in [1, 20] {
                let seed = (n * 31 + k * 7 + reps) as u64;
                if n < k {
                    check(make_folds(n, k, reps, seed).is_err(), format!("n={n} k={k} accepted"))?;
                    continue;
                }
                let plan = make_folds(n, k, reps, seed).map_err(|e| e.to_string())?;
                for rep in 0..reps {
                    let mut seen = vec![0u8; n];
                    let sizes: Vec<usize> = (0..k).map(|f| plan.test_indices(rep, f).len()).collect();
                    for f in 0..k {
                        plan.test_indices(rep, f).iter().for_each(|&i| seen[i] += 1);
                    }
                    check(seen.iter().all(|&c| c == 1), format!("n={n} k={k} rep={rep}: not a partition"))?;
                    let spread = sizes.iter().max().unwrap() - sizes.iter().min().unwrap();
                    check(spread <= 1, format!("n={n} k={k}: fold sizes {sizes:?}"))?;
                }
                plans += 1;
            }
        }
    }
    Ok(format!("{plans} plans checked; n < k rejected"))
}

fn statistics_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst = 0.0f64;
    let mut checked = 0;
    while checked < 1000 {
        let n = rng.random_range(3..50);
        let a: Vec<f64> = (0..n).map(|_| rng.random_range(0..8) as f64).collect();
        let b: Vec<f64> = (0..n).map(|_| rng.random_range(0..8) as f64).collect();
        let expect = oracle::pearson(&oracle::ranks(&a), &oracle::ranks(&b));
        let got = spearman(&a, &b).map_err(|e| e.to_string())?;
        match got {
            Some(r) => worst = worst.max((r - expect).abs()),
            None => check(!expect.is_finite(), "spearman undefined on non-constant input")?,
        }
        checked += 1;
    }
    check(worst <= 1e-10, format!("spearman max deviation {worst:.2e}"))?;
    let r = pearson(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]).map_err(|e| e.to_string())?.ok_or("undefined")?;
    check((r - 0.8).abs() <= 1e-12, format!("pearson = {r}"))?;
    let rater: Vec<f64> = (0..30).map(|_| rng.random_range(1.0..7.0)).collect();
    let shifted: Vec<f64> = rater.iter().map(|x| x + 1.5).collect();
    let alpha = cronbach_alpha(&[rater, shifted]).map_err(|e| e.to_string())?.ok_or("undefined")?;
    check((alpha - 1.0).abs() <= 1e-12, format!("alpha = {alpha}"))?;
    Ok(format!("spearman max deviation {worst:.2e}; pearson = {r}; alpha = {alpha}"))
}

fn scale_conversion() -> Outcome {
    let convert = |ratings: &[f64]| -> Result<Vec<f64>, String> {
        let words: Vec<String> = (0..ratings.len()).map(word).collect();
        let pairs = words.iter().map(String::as_str).zip(ratings.iter().copied());
        let ds = NormDataset::from_pairs(PropertyKind::AgeOfAcquisition, LikertScale::NINE_POINT, "t", pairs)
            .map_err(|e| e.to_string())?;
        let out = convert_scale(&ds, LikertScale::SEVEN_POINT).map_err(|e| e.to_string())?;
        Ok(out.records().iter().map(|r| r.rating).collect())
    };
    let v = convert(&[1.0, 9.0, 5.0])?;
    check(v[0] == 1.0 && v[1] == 7.0, format!("endpoints map to {} and {}", v[0], v[1]))?;
    check((v[2] - 4.0).abs() <= 1e-12, format!("midpoint maps to {}", v[2]))?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let mut triples = 0;
    while triples < 1000 {
        let t: Vec<f64> = (0..3).map(|_| rng.random_range(1.0..=9.0)).collect();
        if (t[2] - t[0]).abs() < 1e-3 {
            continue;
        }
        let f = convert(&t)?;
        worst = worst.max(((f[1] - f[0]) / (f[2] - f[0]) - (t[1] - t[0]) / (t[2] - t[0])).abs());
        triples += 1;
    }
    check(worst <= 1e-9, format!("ratio deviation {worst:.2e}"))?;
    Ok(format!("endpoints exact, midpoint {}, 1000 triples within {worst:.2e}", v[2]))
}

fn aoa_merge() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (a, b) = overlapping_sources(PropertyKind::AgeOfAcquisition, 765, 1717, 114, 11);
    let (pa, pb) = (dir.path().join("aoa_bp.csv"), dir.path().join("aoa_ep.csv"));
    a.write_csv(&pa).map_err(|e| e.to_string())?;
    b.write_csv(&pb).map_err(|e| e.to_string())?;
    let mut cfg = RunConfig { out: dir.path().join("out"), ..Default::default() };
    cfg.norms.sources = vec![
        NormSource { property: PropertyKind::AgeOfAcquisition, path: pa, scale: LikertScale::SEVEN_POINT, variant: Variant::Bp },
        NormSource { property: PropertyKind::AgeOfAcquisition, path: pb, scale: LikertScale::NINE_POINT, variant: Variant::Ep },
    ];
    cfg.validate().map_err(|e| e.to_string())?;
    let out = cli::prepare(&cfg).map_err(|e| e.to_string())?;
    let written = load_norms(&out.properties[0].output, PropertyKind::AgeOfAcquisition, LikertScale::SEVEN_POINT)
        .map_err(|e| e.to_string())?;
    check(written.len() == 2368, format!("{} rows", written.len()))?;
    check(written.records().iter().all(|r| (1.0..=7.0).contains(&r.rating)), "rating off scale")?;
    Ok(format!("765 + 1717 with 114 shared -> {} rows", written.len()))
}

fn readability_formulas() -> Outcome {
    let f = flesch_bp(10, 1, 20);
    check((f - 69.485).abs() <= 1e-9, format!("flesch_bp = {f}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let n = rng.random_range(1..120);
        let mut tokens: Vec<String> = (0..n).map(|_| word(rng.random_range(0..40))).collect();
        let types = tokens.iter().collect::<std::collections::HashSet<_>>().len();
        let ttr = types as f64 / n as f64;
        let m = mattr(&tokens, n + rng.random_range(0..5));
        check((m - ttr).abs() <= 1e-12, format!("mattr {m} vs ttr {ttr}"))?;
        let p = profile_text(&(tokens.join(" ") + ".")).map_err(|e| e.to_string())?;
        tokens.shuffle(&mut rng);
        let q = profile_text(&(tokens.join(" ") + ".")).map_err(|e| e.to_string())?;
        check(
            honore(p.word_count(), p.types(), p.hapaxes()) == honore(q.word_count(), q.types(), q.hapaxes()),
            "honore changed under shuffling",
        )?;
        check(brunet(p.word_count(), p.types()) == brunet(q.word_count(), q.types()), "brunet changed under shuffling")?;
    }
    Ok(format!("flesch_bp = {f:.3}; mattr = TTR and honore/brunet shuffle-invariant on 200 texts"))
}

fn classifier_sanity() -> Outcome {
    let row = |pairs: Vec<(String, f64)>| TextFeatures {
        values: pairs.into_iter().collect::<BTreeMap<_, _>>(),
        covered_tokens: 0,
        lexicon_uncovered: true,
    };
    let blobs = grade_blobs(40, 2, 0.25, 17);
    let corpus: Vec<(TextFeatures, GradeLabel)> = blobs
        .iter()
        .map(|(x, g)| (row(vec![("x".into(), x[0]), ("y".into(), x[1]), ("c".into(), 3.0)]), *g))
        .collect();
    let subsets = [FeatureSubset::new("blobs", &["x", "y"]), FeatureSubset::new("constant", &["c"])];
    let eval = evaluate_features(&corpus, &subsets, 10, 42, None, 0.1).map_err(|e| e.to_string())?;
    let f1 = eval.rows[0].macro_f1;

    // nearest centroid on the same folds, for reference
    let labels: Vec<GradeLabel> = blobs.iter().map(|(_, g)| *g).collect();
    let plan = make_folds(blobs.len(), 10, 1, 42).map_err(|e| e.to_string())?;
    let mut nc = labels.clone();
    let folds: Vec<Vec<usize>> = (0..10).map(|f| plan.test_indices(0, f).to_vec()).collect();
    for test in &folds {
        let mut centroids = [[0.0f64; 3]; 4];
        for (_, (x, g)) in blobs.iter().enumerate().filter(|(i, _)| !test.contains(i)) {
            let c = &mut centroids[g.index()];
            c[0] += x[0];
            c[1] += x[1];
            c[2] += 1.0;
        }
        for &i in test {
            let x = &blobs[i].0;
            let d = |c: &[f64; 3]| (x[0] - c[0] / c[2]).powi(2) + (x[1] - c[1] / c[2]).powi(2);
            let best = (0..4).min_by(|&a, &b| d(&centroids[a]).total_cmp(&d(&centroids[b]))).unwrap();
            nc[i] = GradeLabel::ALL[best];
        }
    }
    let nc_f1 = oracle::macro_f1(&labels, &nc);
    check(f1 >= 0.9, format!("blob macro-F1 {f1:.3} (nearest centroid {nc_f1:.3})"))?;

    let baseline = oracle::macro_f1(&labels, &oracle::majority_predictions(&labels, &folds));
    let constant = eval.rows[1].macro_f1;
    check((constant - baseline).abs() <= 1e-12, format!("constant feature F1 {constant} vs baseline {baseline}"))?;
    Ok(format!("blob macro-F1 {f1:.3} (nearest centroid {nc_f1:.3}); constant feature {constant:.3} = majority baseline"))
}

fn determinism() -> Outcome {
    let ws = common::workspace(400, "");
    let mut cfg = RunConfig::load(&ws.config).map_err(|e| e.to_string())?;
    cfg.evaluation.k = 5;
    cfg.evaluation.reps = 3;
    cfg.validate().map_err(|e| e.to_string())?;
    cli::prepare(&cfg).map_err(|e| e.to_string())?;
    let path = cfg.out.join("eval/concreteness.json");
    cli::eval(&cfg, PropertyKind::Concreteness, None).map_err(|e| e.to_string())?;
    let first = std::fs::read(&path).map_err(|e| e.to_string())?;
    cli::eval(&cfg, PropertyKind::Concreteness, None).map_err(|e| e.to_string())?;
    let second = std::fs::read(&path).map_err(|e| e.to_string())?;
    check(first == second, "reports differ")?;
    Ok(format!("two runs, {} identical bytes", first.len()))
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("ridge oracle equivalence", ridge_oracle),
        ("synthetic recovery", synthetic_recovery),
        ("fusion exactness", fusion_exactness),
        ("fold-plan soundness", fold_soundness),
        ("statistics oracles", statistics_oracles),
        ("scale conversion", scale_conversion),
        ("AoA merge pipeline shape", aoa_merge),
        ("readability formulas", readability_formulas),
        ("classifier sanity", classifier_sanity),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
