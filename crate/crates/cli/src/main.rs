//! `vocab-bridge`: validate task specs, generate and evaluate datasets, fit
//! thresholds, check attempts and run the task service.
//!
//! Exit codes: 0 success or accepted attempt, 1 rejected attempt or
//! inconsistent spec, 2 usage error or malformed input, 3 I/O or scorer
//! failure.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;
use url::Url;
use vocab_bridge_core::dataset::{generate_dataset, read_jsonl, split_of, write_jsonl, LabeledPair, Split};
use vocab_bridge_core::report::{binary_report, multiclass_report, ReportError};
use vocab_bridge_core::similarity::{
    classify_category, classify_polarity, fit_thresholds, Mode, Scorer, ScorerKind, SimilarityError,
    Thresholds,
};
use vocab_bridge_core::spec::SpecError;
use vocab_bridge_core::{check_attempt, load_task_spec, validate_spec, Attempt, Category, MatchError, TaskSpec};

#[derive(Parser)]
#[command(name = "vocab-bridge", version, about = "Tools for vocabulary design tasks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a task spec and report inconsistencies.
    Validate { spec: PathBuf },
    /// Generate a labelled dataset from a spec's grammars.
    Gen {
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.2)]
        eval_fraction: f64,
        /// Add C5 pairs against the other symbols' descriptions.
        #[arg(long)]
        cross_pair: bool,
    },
    /// Fit classification thresholds on a dataset split.
    Fit {
        dataset: PathBuf,
        #[command(flatten)]
        scoring: Scoring,
        #[arg(long, value_enum, default_value_t = SplitArg::Train)]
        split: SplitArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the binary and multi-class reports for a dataset split.
    Eval {
        dataset: PathBuf,
        #[command(flatten)]
        scoring: Scoring,
        #[arg(long, value_enum, default_value_t = SplitArg::Eval)]
        split: SplitArg,
        /// Thresholds file written by `fit`; defaults apply without one.
        #[arg(long)]
        thresholds: Option<PathBuf>,
    },
    /// Check an attempt against a task and print the verdict.
    Check { spec: PathBuf, attempt: PathBuf },
    /// Run the HTTP task service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, env = "VOCAB_BRIDGE_DATA_DIR")]
        data_dir: PathBuf,
    },
}

#[derive(clap::Args)]
struct Scoring {
    #[arg(long, value_enum)]
    scorer: ScorerArg,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Task spec; required by the grammar scorer.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Remote scorer base URL.
    #[arg(long, env = "VOCAB_BRIDGE_SCORER_URL")]
    endpoint: Option<Url>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScorerArg {
    Lexical,
    Grammar,
    Remote,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Binary,
    Multi,
}

#[derive(Clone, Copy, ValueEnum)]
enum SplitArg {
    Train,
    Eval,
    All,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 3,
        }
    }
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Failure(format!("{}: {e}", path.display()))
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Io { .. } | SpecError::GrammarFile { .. } => CliError::Failure(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<SimilarityError> for CliError {
    fn from(e: SimilarityError) -> Self {
        match e {
            SimilarityError::ScorerUnavailable { .. } => CliError::Failure(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ReportError> for CliError {
    fn from(e: ReportError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Validate { spec } => validate(&spec),
        Command::Gen {
            spec,
            out,
            seed,
            eval_fraction,
            cross_pair,
        } => gen(&spec, &out, seed, eval_fraction, cross_pair),
        Command::Fit {
            dataset,
            scoring,
            split,
            out,
        } => fit(&dataset, &scoring, split, &out),
        Command::Eval {
            dataset,
            scoring,
            split,
            thresholds,
        } => eval(&dataset, &scoring, split, thresholds.as_deref()),
        Command::Check { spec, attempt } => check(&spec, &attempt),
        Command::Serve { port, data_dir } => serve(port, &data_dir),
    }
}

fn validate(path: &Path) -> Result<u8, CliError> {
    let spec = load_task_spec(path)?;
    let diagnostics = validate_spec(&spec);
    if diagnostics.is_empty() {
        println!("{}: ok ({} symbols)", spec.id, spec.symbols.len());
        return Ok(0);
    }
    for d in &diagnostics {
        println!("{}: {d}", spec.id);
    }
    Ok(1)
}

fn gen(path: &Path, out: &Path, seed: u64, eval_fraction: f64, cross_pair: bool) -> Result<u8, CliError> {
    let spec = load_task_spec(path)?;
    let pairs = generate_dataset(&spec, seed, eval_fraction, cross_pair)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let file = File::create(out).map_err(|e| io_error(out, e))?;
    write_jsonl(&pairs, BufWriter::new(file)).map_err(|e| io_error(out, e))?;
    let eval = pairs.iter().filter(|p| p.split == Split::Eval).count();
    println!("{} pairs ({} train, {eval} eval) written to {}", pairs.len(), pairs.len() - eval, out.display());
    Ok(0)
}

fn load_dataset(path: &Path, split: SplitArg) -> Result<Vec<LabeledPair>, CliError> {
    let file = File::open(path).map_err(|e| io_error(path, e))?;
    let pairs = read_jsonl(BufReader::new(file)).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let pairs = match split {
        SplitArg::Train => split_of(&pairs, Split::Train),
        SplitArg::Eval => split_of(&pairs, Split::Eval),
        SplitArg::All => pairs,
    };
    if pairs.is_empty() {
        return Err(CliError::Usage(format!("{}: the selected split is empty", path.display())));
    }
    Ok(pairs)
}

fn scorer_and_spec(scoring: &Scoring) -> Result<(Scorer, Option<TaskSpec>), CliError> {
    let spec = scoring.spec.as_deref().map(load_task_spec).transpose()?;
    let kind = match scoring.scorer {
        ScorerArg::Lexical => ScorerKind::Lexical,
        ScorerArg::Grammar => {
            if spec.is_none() {
                return Err(CliError::Usage("the grammar scorer needs --spec".into()));
            }
            ScorerKind::Grammar
        }
        ScorerArg::Remote => ScorerKind::Remote(scoring.endpoint.clone().ok_or_else(|| {
            CliError::Usage("the remote scorer needs --endpoint or VOCAB_BRIDGE_SCORER_URL".into())
        })?),
    };
    Ok((Scorer::new(&kind), spec))
}

fn mode(scoring: &Scoring) -> Mode {
    match scoring.mode {
        ModeArg::Binary => Mode::Binary,
        ModeArg::Multi => Mode::Multiclass,
    }
}

fn fit(path: &Path, scoring: &Scoring, split: SplitArg, out: &Path) -> Result<u8, CliError> {
    let pairs = load_dataset(path, split)?;
    let (scorer, spec) = scorer_and_spec(scoring)?;
    let base = spec.as_ref().map(|s| s.thresholds).unwrap_or_default();
    let result = fit_thresholds(&pairs, &scorer, spec.as_ref(), mode(scoring), base)?;
    let json = serde_json::to_string_pretty(&result.thresholds).expect("thresholds serialize");
    std::fs::write(out, json + "\n").map_err(|e| io_error(out, e))?;
    println!(
        "{}/{} correct ({:.2}%), thresholds written to {}",
        result.correct,
        result.total,
        100.0 * result.accuracy,
        out.display()
    );
    Ok(0)
}

fn eval(path: &Path, scoring: &Scoring, split: SplitArg, thresholds: Option<&Path>) -> Result<u8, CliError> {
    let pairs = load_dataset(path, split)?;
    let (scorer, spec) = scorer_and_spec(scoring)?;
    let thresholds: Thresholds = match thresholds {
        Some(t) => {
            let text = std::fs::read_to_string(t).map_err(|e| io_error(t, e))?;
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", t.display())))?
        }
        None => spec.as_ref().map(|s| s.thresholds).unwrap_or_default(),
    };
    thresholds.validate()?;
    let scores = scorer.score_pairs(spec.as_ref(), &pairs)?;

    let predicted: Vec<(Category, Category)> = pairs
        .iter()
        .zip(&scores)
        .map(|(p, r)| (p.category, classify_category(r, &thresholds)))
        .collect();
    let binary_rows: Vec<_> = match mode(scoring) {
        Mode::Binary => pairs
            .iter()
            .zip(&scores)
            .map(|(p, r)| (p.category, classify_polarity(r, &thresholds)))
            .collect(),
        Mode::Multiclass => predicted.iter().map(|&(l, c)| (l, c.polarity())).collect(),
    };
    print!("{}", binary_report(&binary_rows)?);
    println!();
    print!("{}", multiclass_report(&predicted)?);
    Ok(0)
}

fn check(spec_path: &Path, attempt_path: &Path) -> Result<u8, CliError> {
    let spec = load_task_spec(spec_path)?;
    let text = std::fs::read_to_string(attempt_path).map_err(|e| io_error(attempt_path, e))?;
    let attempt: Attempt = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", attempt_path.display())))?;
    let verdict = check_attempt(&attempt, &spec).map_err(|e| match e {
        MatchError::Invalid(e) => CliError::Usage(format!("{}: {e}", attempt_path.display())),
        MatchError::Scorer(e) => e.into(),
    })?;
    println!("{}", serde_json::to_string_pretty(&verdict).expect("verdicts serialize"));
    Ok(if verdict.status.is_accepted() { 0 } else { 1 })
}

fn serve(port: u16, data_dir: &Path) -> Result<u8, CliError> {
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()),
        )
        .init();
    let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::Failure(e.to_string()))?;
    runtime
        .block_on(vocab_bridge_service::serve(SocketAddr::from(([0, 0, 0, 0], port)), data_dir))
        .map_err(|e| CliError::Failure(e.to_string()))?;
    Ok(0)
}
