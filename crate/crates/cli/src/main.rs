//! Command-line frontend for the connected-concept extraction pipeline.
//!
//! Exit statuses: 0 success, 1 partial corpus failure, 2 invalid input or
//! configuration, 3 adapter failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use foglift::concepts::ConceptPair;
use foglift::pipeline::{
    run_corpus, run_document, run_evolution, score_file, ExtractorChoice, PipelineConfig,
};
use foglift::preprocess::StripConfig;
use foglift::readability::FormulaVariant;
use foglift::report::{score_rows_tsv, to_json};
use foglift::Error;

#[derive(Parser)]
#[command(name = "foglift", version, about = "Extract connected concepts from scientific text with a Fog Index filter and PPV/sensitivity re-ranking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the two-filter pipeline on a text file or a corpus directory.
    Extract(ExtractArgs),
    /// Emit the chunk-evolution CSV (new/dropped connections per fraction).
    Evolve(EvolveArgs),
    /// Dump per-sentence FI and FI' scores for debugging.
    Score(ScoreArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Input: UTF-8 text file (or directory for `extract`).
    path: PathBuf,

    /// Fog Index formula: the literal variant or Gunning's classic one.
    #[arg(long, value_enum, default_value_t = FormulaArg::Paper)]
    formula: FormulaArg,

    /// External POS tagger command; replaces the built-in noun heuristic.
    #[arg(long, value_name = "CMD")]
    tagger_cmd: Option<String>,

    /// Truncate the text at a References/Acknowledgements/Bibliography line.
    #[arg(long)]
    strip_refs: bool,

    /// Drop leading lines up to the first one ending in a sentence terminator.
    #[arg(long)]
    strip_front: bool,

    /// Replace the bundled stopword list (one word per line).
    #[arg(long, value_name = "FILE")]
    stopwords: Option<PathBuf>,

    /// Replace the bundled suffix whitelist (one word per line).
    #[arg(long, value_name = "FILE")]
    whitelist: Option<PathBuf>,

    /// Write output to a file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExtractArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Concept pair, comma-separated; quote multiword concepts
    /// (e.g. --pair "pyruvate dehydrogenase,ataxia").
    #[arg(long, value_name = "A,B")]
    pair: String,

    /// Fraction of ranked sentences the readability filter keeps.
    #[arg(long, default_value_t = 0.30, value_name = "FRACTION")]
    chunk: f64,

    /// How many frequent pairs the association matrix keeps.
    #[arg(long, default_value_t = 20, value_name = "K")]
    top_pairs: usize,

    /// How many re-ranked pairs form the representative set.
    #[arg(long, default_value_t = 10, value_name = "N")]
    top_rep: usize,

    /// Treat tokens differing by one trailing "s" as equal when matching
    /// concepts.
    #[arg(long)]
    fold_plurals: bool,

    /// Gold-relation file (concept_a<TAB>concept_b per line) for the
    /// annotation column.
    #[arg(long, value_name = "FILE")]
    gold: Option<PathBuf>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct EvolveArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Strictly descending chunk fractions, comma-separated.
    #[arg(long, value_name = "F1,F2,...", default_value = "0.5,0.4,0.3,0.2,0.1")]
    fractions: String,

    /// How many frequent pairs each chunk keeps.
    #[arg(long, default_value_t = 20, value_name = "K")]
    top_pairs: usize,
}

#[derive(Args)]
struct ScoreArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaArg {
    Paper,
    Gunning,
}

impl From<FormulaArg> for FormulaVariant {
    fn from(arg: FormulaArg) -> Self {
        match arg {
            FormulaArg::Paper => FormulaVariant::PaperLiteral,
            FormulaArg::Gunning => FormulaVariant::StandardGunning,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let input = cli.command.input().clone();
    match run(cli) {
        Ok(code) => code,
        Err(error) => {
            // Errors that do not already name a file get the input path.
            if matches!(
                error,
                Error::ReadInput { .. }
                    | Error::WriteOutput { .. }
                    | Error::EmptyCorpus(_)
                    | Error::CorpusFailed(_)
            ) {
                eprintln!("error: {error}");
            } else {
                eprintln!("error: {}: {error}", input.display());
            }
            if let Error::CorpusFailed(failures) = &error {
                for (path, cause) in failures {
                    eprintln!("  {}: {cause}", path.display());
                }
            }
            ExitCode::from(error.exit_code())
        }
    }
}

impl Command {
    fn input(&self) -> &PathBuf {
        match self {
            Command::Extract(args) => &args.common.path,
            Command::Evolve(args) => &args.common.path,
            Command::Score(args) => &args.common.path,
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Extract(args) => extract(args),
        Command::Evolve(args) => evolve(args),
        Command::Score(args) => score(args),
    }
}

fn base_config(common: &CommonArgs) -> PipelineConfig {
    PipelineConfig {
        formula: common.formula.into(),
        extractor: match &common.tagger_cmd {
            Some(command) => ExtractorChoice::Adapter(command.clone()),
            None => ExtractorChoice::Heuristic,
        },
        strip: StripConfig {
            references: common.strip_refs,
            front_matter: common.strip_front,
        },
        stopwords_path: common.stopwords.clone(),
        whitelist_path: common.whitelist.clone(),
        ..PipelineConfig::default()
    }
}

fn extract(args: ExtractArgs) -> Result<ExitCode, Error> {
    let (a, b) = args
        .pair
        .split_once(',')
        .ok_or_else(|| Error::InvalidConfig("--pair expects two comma-separated concepts".to_string()))?;

    let mut config = base_config(&args.common);
    config.pair = Some(ConceptPair::new(a, b)?);
    config.chunk_fraction = args.chunk;
    config.top_k_pairs = args.top_pairs;
    config.top_n_representative = args.top_rep;
    config.fold_plurals = args.fold_plurals;
    config.gold_path = args.gold.clone();

    if args.common.path.is_dir() {
        let report = run_corpus(&args.common.path, &config)?;
        let rendered = match args.format {
            Format::Json => report.to_json(),
            Format::Tsv => report.to_tsv(),
        };
        write_output(&args.common.out, &rendered)?;
        if report.failures.is_empty() {
            Ok(ExitCode::SUCCESS)
        } else {
            Ok(ExitCode::from(1))
        }
    } else {
        let report = run_document(&args.common.path, &config)?;
        let rendered = match args.format {
            Format::Json => report.to_json(),
            Format::Tsv => report.to_tsv(),
        };
        write_output(&args.common.out, &rendered)?;
        Ok(ExitCode::SUCCESS)
    }
}

fn evolve(args: EvolveArgs) -> Result<ExitCode, Error> {
    let mut config = base_config(&args.common);
    config.top_k_pairs = args.top_pairs;
    config.evolution_fractions = parse_fractions(&args.fractions)?;

    let report = run_evolution(&args.common.path, &config)?;
    write_output(&args.common.out, &report.to_csv())?;
    Ok(ExitCode::SUCCESS)
}

fn score(args: ScoreArgs) -> Result<ExitCode, Error> {
    let config = base_config(&args.common);
    let rows = score_file(&args.common.path, &config)?;
    let rendered = match args.format {
        Format::Json => to_json(&rows),
        Format::Tsv => score_rows_tsv(&rows),
    };
    write_output(&args.common.out, &rendered)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_fractions(list: &str) -> Result<Vec<f64>, Error> {
    list.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidConfig(format!("invalid fraction '{part}'")))
        })
        .collect()
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    let newline_terminated = if content.ends_with('\n') {
        content.to_string()
    } else {
        format!("{content}\n")
    };
    match out {
        Some(path) => std::fs::write(path, newline_terminated).map_err(|source| Error::WriteOutput {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{newline_terminated}");
            Ok(())
        }
    }
}
