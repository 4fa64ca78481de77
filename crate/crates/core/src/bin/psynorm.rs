use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use psynorm::cli::{self, Overrides, RunConfig};
use psynorm::norms::LikertScale;
use psynorm::{PropertyKind, Result, ViewSet};

/// Infer psycholinguistic norms, build a rated lexicon and score text
/// readability.
#[derive(Parser)]
#[command(name = "psynorm", version)]
struct Args {
    /// TOML run configuration.
    #[arg(long, global = true, env = "PSYNORM_CONFIG")]
    config: Option<PathBuf>,
    #[arg(long, global = true, env = "PSYNORM_SEED")]
    seed: Option<u64>,
    /// Ridge penalty.
    #[arg(long, global = true, env = "PSYNORM_LAMBDA")]
    lambda: Option<f64>,
    /// View set for train/eval, e.g. `lexical+embedding_b`.
    #[arg(long, global = true, env = "PSYNORM_VIEWS")]
    views: Option<ViewSet>,
    #[arg(long, global = true, env = "PSYNORM_MIN_COUNT")]
    min_count: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, env = "PSYNORM_OUT")]
    out: Option<PathBuf>,
    /// Folds per repetition.
    #[arg(long, global = true, env = "PSYNORM_K")]
    k: Option<usize>,
    /// Cross-validation repetitions.
    #[arg(long, global = true, env = "PSYNORM_REPS")]
    reps: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize, convert and merge the configured norm lists.
    Prepare,
    /// Train the model for one property.
    Train { property: PropertyKind },
    /// Cross-validate view combinations for one property.
    Eval { property: PropertyKind },
    /// Filter the dictionary and annotate it with the trained models.
    BuildLexicon,
    /// Features of one text, or the grade-classification evaluation.
    Readability {
        #[arg(long)]
        text: Option<PathBuf>,
    },
    /// Correlations among the inferred properties.
    Corr,
    /// Cronbach's alpha against a reference norms file.
    Alpha {
        #[arg(long)]
        property: PropertyKind,
        #[arg(long)]
        reference: PathBuf,
        #[arg(long, default_value = "1-7")]
        scale: LikertScale,
    },
}

fn run(args: Args) -> Result<String> {
    let mut cfg = match &args.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    cfg.apply(&Overrides {
        seed: args.seed,
        lambda: args.lambda,
        min_count: args.min_count,
        out: args.out.clone(),
        k: args.k,
        reps: args.reps,
    });
    cfg.validate()?;
    Ok(match args.command {
        Command::Prepare => {
            let o = cli::prepare(&cfg)?;
            o.properties
                .iter()
                .map(|p| format!("{}: {} rows -> {}\n", p.property, p.rows, p.output.display()))
                .collect()
        }
        Command::Train { property } => {
            let o = cli::train(&cfg, property, args.views)?;
            format!("{property} [{}] -> {}\n", o.views, o.model.display())
        }
        Command::Eval { property } => cli::eval(&cfg, property, args.views)?.report.render_table(),
        Command::BuildLexicon => {
            let o = cli::build_lexicon(&cfg)?;
            format!("{} entries -> {}\n", o.rows, o.lexicon.display())
        }
        Command::Readability { text: Some(t) } => {
            let o = cli::readability_text(&cfg, &t)?;
            o.features.values.iter().map(|(k, v)| format!("{k}\t{v:.4}\n")).collect()
        }
        Command::Readability { text: None } => cli::readability_corpus(&cfg)?.evaluation.render_table(),
        Command::Corr => cli::corr(&cfg)?.matrix.render_pairs(),
        Command::Alpha { property, reference, scale } => {
            let o = cli::alpha(&cfg, property, &reference, scale)?;
            let a = o.alpha.map_or("undefined".into(), |a| format!("{a:.4}"));
            format!("{property}: alpha = {a} over {} shared words\n", o.shared_words)
        }
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.class().exit_code())
        }
    }
}
