//! Command-line front end for the dataset pipeline and evaluation harness.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use matekit::dataset::{
    build_dataset, difficulty_report, emit_records, ingest_positions_with, load_records,
    summarize, BuildParams, DatasetVariant, IngestOptions,
};
use matekit::engine::{EngineEndpoint, EngineSession};
use matekit::eval::{
    run_eval, HttpClient, ModelClient, OracleClient, OracleMode, PromptConfig, ReplayClient,
};

#[derive(Parser)]
#[command(name = "matekit", version, about = "Build and evaluate annotated chess move datasets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build annotated samples from a position file.
    Build {
        /// FEN-per-line text file, or CSV with a FEN column.
        #[arg(long)]
        input: PathBuf,
        /// Which explanation fields the samples carry.
        #[arg(long)]
        variant: DatasetVariant,
        /// Minimum ordinal score gap between the two candidates.
        #[arg(long, default_value_t = 150)]
        threshold: i64,
        #[arg(long, default_value_t = 18)]
        depth: u32,
        #[arg(long, default_value_t = 5)]
        multipv: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Engine command line, or `transcript:<path>` to replay a recorded
        /// session.
        #[arg(long)]
        engine: EngineEndpoint,
        #[arg(long)]
        out: PathBuf,
        /// CSV column holding the FEN.
        #[arg(long, default_value = "FEN")]
        fen_column: String,
        /// The inferior candidate must score within this margin of the best.
        #[arg(long, default_value_t = 600)]
        floor_margin: i64,
        /// Tactic lines are truncated to this many plies.
        #[arg(long, default_value_t = 6)]
        max_plies: usize,
    },
    /// Print counts, histograms and gap statistics for a record file.
    Summarize {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Compare variant difficulty via gaps and shallow-search agreement.
    Difficulty {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        engine: EngineEndpoint,
        /// Shallow probe depth.
        #[arg(long, default_value_t = 4)]
        depth: u32,
    },
    /// Evaluate a model client on a record file.
    Eval {
        #[arg(long = "in")]
        input: PathBuf,
        /// One of `replay:<file>`, `oracle`, or `http:<config.json>`.
        #[arg(long)]
        client: String,
        #[arg(long, default_value_t = 0)]
        shots: usize,
        #[arg(long, default_value_t = false)]
        special_tokens: bool,
        #[arg(long)]
        out: PathBuf,
        /// Exemplar record file for few-shot prompts; when omitted, the
        /// first `shots` input records are used and excluded from the test
        /// set.
        #[arg(long)]
        exemplars: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), Box<dyn std::error::Error>> {
    match cli.command {
        Command::Build {
            input,
            variant,
            threshold,
            depth,
            multipv,
            seed,
            engine,
            out,
            fen_column,
            floor_margin,
            max_plies,
        } => {
            let ingested = ingest_positions_with(&input, &IngestOptions { fen_column })?;
            let mut session = EngineSession::open(&engine)?;
            let params = BuildParams {
                variant,
                threshold,
                depth,
                multipv,
                seed,
                floor_margin,
                tactic_max_plies: max_plies,
            };
            let outcome = build_dataset(&ingested.positions, &mut session, &params)?;
            let written = emit_records(&outcome.records, &out)?;
            println!(
                "wrote {written} records to {} ({} positions in, {} skipped rows, \
                 {} without a pair, {} terminal, {} downgraded)",
                out.display(),
                ingested.positions.len(),
                ingested.skipped,
                outcome.skipped_no_pair,
                outcome.skipped_terminal,
                outcome.downgraded,
            );
        }
        Command::Summarize { input } => {
            let records = load_records(&input)?;
            let summary = summarize(&records);
            println!("{}", serde_json::to_string_pretty(&summary)?);
        }
        Command::Difficulty { input, engine, depth } => {
            let records = load_records(&input)?;
            let mut session = EngineSession::open(&engine)?;
            let report = difficulty_report(&records, &mut session, depth)?;
            print!("{report}");
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Command::Eval { input, client, shots, special_tokens, out, exemplars } => {
            let mut records = load_records(&input)?;
            let exemplars = match exemplars {
                Some(path) => load_records(&path)?,
                None if shots > 0 => {
                    if records.len() <= shots {
                        return Err(format!(
                            "need more than {shots} records to split off exemplars"
                        )
                        .into());
                    }
                    records.drain(..shots).collect()
                }
                None => Vec::new(),
            };
            let cfg =
                PromptConfig { shots, exemplars, special_tokens, ..PromptConfig::default() };
            let mut client = make_client(&client, &records, &cfg)?;
            let result = run_eval(client.as_mut(), &records, &cfg)?;
            std::fs::write(&out, serde_json::to_string_pretty(&result)?)?;
            println!(
                "accuracy {:.4} over {} samples ({} errored); wrote {}",
                result.accuracy,
                result.n,
                result.meta.errored,
                out.display()
            );
        }
    }
    Ok(())
}

fn make_client(
    spec: &str,
    records: &[matekit::dataset::SampleRecord],
    cfg: &PromptConfig,
) -> Result<Box<dyn ModelClient>, Box<dyn std::error::Error>> {
    if let Some(path) = spec.strip_prefix("replay:") {
        return Ok(Box::new(ReplayClient::from_path(PathBuf::from(path).as_path())?));
    }
    if let Some(path) = spec.strip_prefix("http:") {
        return Ok(Box::new(HttpClient::from_config_path(PathBuf::from(path).as_path())?));
    }
    if spec == "oracle" {
        return Ok(Box::new(OracleClient::new(records, cfg, OracleMode::Optimal)?));
    }
    Err(format!("unknown client {spec:?}: expected replay:<file>, oracle, or http:<config>")
        .into())
}
