//! UCI engine client: score types, the session state machine, and transports
//! for driving either a child process or a recorded transcript.

mod session;
mod transport;

pub use session::{EngineSession, SessionConfig};
pub use transport::{ProcessTransport, Transport, TranscriptTransport};

use std::cmp::Ordering;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chess::Move;

/// The ordinal magnitude assigned to the fastest mate. Far above any
/// realistic centipawn value, so mating lines always dominate.
pub const MATE_ORDINAL: i64 = 100_000;

/// Engine evaluation from the side-to-move perspective: either centipawns or
/// a signed mate distance (positive when the side to move delivers mate).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Score {
    Cp(i32),
    Mate(i32),
}

impl Score {
    /// Order-preserving integer mapping: `Mate(k) -> 100000 - k` for winning
    /// mates, `Mate(-k) -> -100000 + k` for losing ones, centipawns map to
    /// themselves. Makes cp and mate scores comparable under one threshold.
    pub fn ordinal(self) -> i64 {
        match self {
            Score::Cp(v) => v as i64,
            Score::Mate(m) if m > 0 => MATE_ORDINAL - m as i64,
            Score::Mate(m) => -MATE_ORDINAL - m as i64,
        }
    }

    fn class(self) -> u8 {
        match self {
            Score::Mate(m) if m > 0 => 2,
            Score::Cp(_) => 1,
            Score::Mate(_) => 0,
        }
    }
}

impl PartialOrd for Score {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Score {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.class().cmp(&other.class()) {
            Ordering::Equal => match (self, other) {
                (Score::Cp(a), Score::Cp(b)) => a.cmp(b),
                // Within either mate class a shorter distance is better for
                // the winner and worse for the loser; both reduce to the
                // reversed numeric order.
                (Score::Mate(a), Score::Mate(b)) => b.cmp(a),
                _ => unreachable!("same class implies same variant"),
            },
            ord => ord,
        }
    }
}

/// One ranked line of a MultiPV analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoredLine {
    /// MultiPV rank, 1-based; ranks in one analysis are contiguous from 1.
    pub rank: u32,
    /// Score from the side-to-move perspective of the analyzed position.
    pub score: Score,
    /// Principal variation; the first move is legal in the analyzed position.
    pub pv: Vec<Move>,
}

/// Parameters for one `go depth` search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub depth: u32,
    pub multipv: u32,
    /// When set, restricts root moves via `searchmoves`.
    pub move_filter: Option<Vec<Move>>,
}

impl AnalysisRequest {
    pub fn new(depth: u32) -> AnalysisRequest {
        AnalysisRequest { depth, multipv: 1, move_filter: None }
    }

    pub fn multipv(mut self, n: u32) -> AnalysisRequest {
        self.multipv = n;
        self
    }

    pub fn search_moves(mut self, moves: Vec<Move>) -> AnalysisRequest {
        self.move_filter = Some(moves);
        self
    }
}

/// Result of one analysis. `best_move == None` signals that the engine
/// reported `bestmove (none)`, i.e. the position has no legal moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub lines: Vec<ScoredLine>,
    pub best_move: Option<Move>,
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("i/o error talking to engine: {0}")]
    Io(#[from] std::io::Error),
    #[error("timed out waiting for engine output")]
    Timeout,
    #[error("engine closed the connection")]
    Closed,
    #[error("handshake failed: {0}")]
    Handshake(String),
    #[error("transcript desync: script expected {expected:?}, client sent {sent:?}")]
    Desync { expected: String, sent: String },
    #[error("cannot parse engine output line {0:?}")]
    Parse(String),
    #[error("engine pv starts with {0:?}, which is illegal in the analyzed position")]
    IllegalPv(String),
    #[error("move {0} is not legal in the analyzed position")]
    IllegalMove(Move),
    #[error("engine returned no score for the requested move")]
    NoScore,
    #[error("multipv ranks {0:?} are not contiguous from 1")]
    BadRanks(Vec<u32>),
    #[error("cannot launch engine {command:?}: {source}")]
    Spawn { command: String, source: std::io::Error },
}

/// Where an engine session comes from: a child process command line, or a
/// transcript file replayed verbatim (prefix `transcript:`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineEndpoint {
    Command(String),
    TranscriptFile(PathBuf),
}

impl FromStr for EngineEndpoint {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.strip_prefix("transcript:") {
            Some(path) => EngineEndpoint::TranscriptFile(PathBuf::from(path)),
            None => EngineEndpoint::Command(s.to_string()),
        })
    }
}
