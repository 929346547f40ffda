//! Dataset construction: candidate-pair selection by engine score gap,
//! per-variant annotation, line-delimited JSON emission, and summaries.

mod build;
mod ingest;
mod io;
mod stats;

pub use build::{
    annotate_sample, build_dataset, select_candidates, BuildError, BuildOutcome, BuildParams,
};
pub use ingest::{ingest_positions, ingest_positions_with, IngestError, IngestOptions, Ingested};
pub use io::{emit_records, load_records, DatasetIoError};
pub use stats::{
    difficulty_report, summarize, DatasetSummary, DifficultyReport, GapStats, VariantDifficulty,
};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use crate::chess::{Move, Position};
use crate::engine::Score;

/// The four dataset variants: no explanation, strategy only, tactic only,
/// or both.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub enum DatasetVariant {
    N,
    S,
    T,
    ST,
}

impl DatasetVariant {
    pub const ALL: [DatasetVariant; 4] =
        [DatasetVariant::N, DatasetVariant::S, DatasetVariant::T, DatasetVariant::ST];

    pub fn wants_strategy(self) -> bool {
        matches!(self, DatasetVariant::S | DatasetVariant::ST)
    }

    pub fn wants_tactic(self) -> bool {
        matches!(self, DatasetVariant::T | DatasetVariant::ST)
    }

    /// The variant a sample falls back to when no tactic line exists for one
    /// of its candidates.
    pub fn without_tactic(self) -> DatasetVariant {
        match self {
            DatasetVariant::T => DatasetVariant::N,
            DatasetVariant::ST => DatasetVariant::S,
            v => v,
        }
    }
}

impl fmt::Display for DatasetVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DatasetVariant::N => "N",
            DatasetVariant::S => "S",
            DatasetVariant::T => "T",
            DatasetVariant::ST => "ST",
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid variant {0:?}: expected one of N, S, T, ST")]
pub struct VariantParseError(pub String);

impl FromStr for DatasetVariant {
    type Err = VariantParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "N" => Ok(DatasetVariant::N),
            "S" => Ok(DatasetVariant::S),
            "T" => Ok(DatasetVariant::T),
            "ST" => Ok(DatasetVariant::ST),
            other => Err(VariantParseError(other.to_string())),
        }
    }
}

/// Two engine-ranked moves whose score gap clears the selection threshold.
/// `move_a` is the engine's top choice, so `optimal` is its index (0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidatePair {
    pub move_a: Move,
    pub move_b: Move,
    pub score_a: Score,
    pub score_b: Score,
    /// Index (0 or 1) of the higher-scored move.
    pub optimal: usize,
    /// Absolute ordinal score difference.
    pub gap: i64,
}

/// One candidate move inside a record; explanation fields are present
/// exactly when the variant carries them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateEntry {
    pub uci: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub strategy_text: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tactic_text: Option<String>,
}

/// Generation settings recorded on every sample for reproducibility.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleMeta {
    pub engine_depth: u32,
    pub threshold: i64,
    pub generator_version: String,
    /// Per-record seed governing candidate order.
    pub seed: u64,
}

/// One emitted dataset sample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub fen: String,
    pub candidates: [CandidateEntry; 2],
    /// Index of the optimal candidate.
    pub label: usize,
    pub variant: DatasetVariant,
    pub gap: i64,
    pub meta: SampleMeta,
}

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("fen does not parse: {0}")]
    BadFen(#[from] crate::chess::FenError),
    #[error("candidate {index} move {uci:?} does not parse")]
    BadMove { index: usize, uci: String },
    #[error("candidate {index} move {uci} is not legal in the position")]
    IllegalMove { index: usize, uci: String },
    #[error("candidates are identical ({0})")]
    DuplicateMoves(String),
    #[error("label {0} is not 0 or 1")]
    BadLabel(usize),
    #[error("gap {gap} is below the recorded threshold {threshold}")]
    GapBelowThreshold { gap: i64, threshold: i64 },
    #[error("candidate {index}: {field} must be {expected} for variant {variant}")]
    VariantFieldMismatch {
        index: usize,
        field: &'static str,
        expected: &'static str,
        variant: DatasetVariant,
    },
}

impl SampleRecord {
    /// The candidate entry the label points at.
    pub fn optimal(&self) -> &CandidateEntry {
        &self.candidates[self.label]
    }

    pub fn position(&self) -> Result<Position, crate::chess::FenError> {
        self.fen.parse()
    }

    /// Re-validates everything checkable without an engine: the FEN parses,
    /// both moves are distinct and legal, the label is in range, the gap
    /// clears the recorded threshold, and explanation fields follow the
    /// variant discipline.
    pub fn validate(&self) -> Result<(), RecordError> {
        let position: Position = self.fen.parse()?;
        let legal = position.legal_moves();
        let mut moves = Vec::with_capacity(2);
        for (index, candidate) in self.candidates.iter().enumerate() {
            let mv: Move = candidate
                .uci
                .parse()
                .map_err(|_| RecordError::BadMove { index, uci: candidate.uci.clone() })?;
            if !legal.contains(&mv) {
                return Err(RecordError::IllegalMove { index, uci: candidate.uci.clone() });
            }
            moves.push(mv);
        }
        if moves[0] == moves[1] {
            return Err(RecordError::DuplicateMoves(self.candidates[0].uci.clone()));
        }
        if self.label > 1 {
            return Err(RecordError::BadLabel(self.label));
        }
        if self.gap < self.meta.threshold {
            return Err(RecordError::GapBelowThreshold {
                gap: self.gap,
                threshold: self.meta.threshold,
            });
        }
        for (index, candidate) in self.candidates.iter().enumerate() {
            let strategy = ("strategy_text", candidate.strategy_text.is_some());
            let tactic = ("tactic_text", candidate.tactic_text.is_some());
            for (field, present) in [strategy, tactic] {
                let wanted = match field {
                    "strategy_text" => self.variant.wants_strategy(),
                    _ => self.variant.wants_tactic(),
                };
                if present != wanted {
                    return Err(RecordError::VariantFieldMismatch {
                        index,
                        field,
                        expected: if wanted { "present" } else { "absent" },
                        variant: self.variant,
                    });
                }
            }
        }
        Ok(())
    }
}
