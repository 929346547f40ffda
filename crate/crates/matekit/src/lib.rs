//! matekit builds annotated chess move-selection datasets and evaluates
//! language models on them.
//!
//! The pipeline: ingest positions (FEN lists or puzzle CSVs), rank candidate
//! moves with a UCI engine, keep pairs whose score gap clears a threshold,
//! attach rule-based strategy text and engine-derived tactic lines, emit
//! line-delimited JSON records in four variants (`N`, `S`, `T`, `ST`), and
//! score a model's move choices against the engine-optimal label.
//!
//! # Modules
//!
//! - [`chess`] — positions, FEN/UCI text forms, legal move generation, perft.
//! - [`engine`] — UCI client over a child process or a replayable transcript.
//! - [`strategy`] — rule-based long-term plan classification and rendering.
//! - [`tactics`] — static pattern detectors and engine-derived tactic lines.
//! - [`dataset`] — candidate selection, record emission, summaries.
//! - [`eval`] — prompt building, model clients, accuracy scoring.
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run -p matekit --example parse_and_perft
//! cargo run -p matekit --example engine_transcript
//! cargo run -p matekit --example classify_strategy
//! cargo run -p matekit --example detect_tactics
//! cargo run -p matekit --example build_dataset
//! cargo run -p matekit --example evaluate_model
//! ```
//!
//! The `matekit` binary wraps the same pipeline behind `build`, `summarize`,
//! `difficulty` and `eval` subcommands; see the README.

pub mod chess;
pub mod dataset;
pub mod engine;
pub mod eval;
pub mod strategy;
pub mod tactics;
pub mod util;
