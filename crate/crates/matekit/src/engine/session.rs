//! One exclusive conversation with a UCI engine.
//!
//! A session performs the `uci`/`isready` handshake on open and then runs one
//! search at a time; `analyze` takes `&mut self`, so two searches can never be
//! in flight on the same session. Parallel workloads use a pool of sessions.

use std::path::Path;
use std::time::Duration;

use crate::chess::{Move, Position};

use super::transport::{ProcessTransport, Transport, TranscriptTransport};
use super::{Analysis, AnalysisRequest, EngineEndpoint, EngineError, Score, ScoredLine};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SessionConfig {
    pub handshake_timeout: Duration,
    pub search_timeout: Duration,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            handshake_timeout: Duration::from_secs(10),
            search_timeout: Duration::from_secs(120),
        }
    }
}

pub struct EngineSession {
    transport: Box<dyn Transport>,
    config: SessionConfig,
    name: Option<String>,
}

impl EngineSession {
    /// Opens a session on the given endpoint and completes the handshake.
    pub fn open(endpoint: &EngineEndpoint) -> Result<EngineSession, EngineError> {
        EngineSession::open_with(endpoint, SessionConfig::default())
    }

    pub fn open_with(
        endpoint: &EngineEndpoint,
        config: SessionConfig,
    ) -> Result<EngineSession, EngineError> {
        let transport: Box<dyn Transport> = match endpoint {
            EngineEndpoint::Command(cmd) => Box::new(ProcessTransport::spawn(cmd)?),
            EngineEndpoint::TranscriptFile(path) => {
                Box::new(TranscriptTransport::from_path(Path::new(path))?)
            }
        };
        EngineSession::from_transport(transport, config)
    }

    /// Opens a session over an in-memory transcript, mostly for tests and
    /// examples.
    pub fn open_transcript(script: &str) -> Result<EngineSession, EngineError> {
        EngineSession::from_transport(
            Box::new(TranscriptTransport::from_str(script)),
            SessionConfig::default(),
        )
    }

    pub fn from_transport(
        transport: Box<dyn Transport>,
        config: SessionConfig,
    ) -> Result<EngineSession, EngineError> {
        let mut session = EngineSession { transport, config, name: None };
        session.handshake()?;
        Ok(session)
    }

    /// Engine name from the `id name` banner line, if it sent one.
    pub fn engine_name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    fn handshake(&mut self) -> Result<(), EngineError> {
        self.transport.send_line("uci")?;
        loop {
            let line = self.recv_handshake()?;
            if let Some(rest) = line.strip_prefix("id name ") {
                self.name = Some(rest.to_string());
            }
            if line.trim() == "uciok" {
                break;
            }
        }
        self.transport.send_line("isready")?;
        loop {
            if self.recv_handshake()?.trim() == "readyok" {
                return Ok(());
            }
        }
    }

    fn recv_handshake(&mut self) -> Result<String, EngineError> {
        self.transport.recv_line(self.config.handshake_timeout).map_err(|e| match e {
            EngineError::Timeout => {
                EngineError::Handshake("timed out waiting for uciok/readyok".to_string())
            }
            EngineError::Closed => {
                EngineError::Handshake("engine closed during handshake".to_string())
            }
            other => other,
        })
    }

    /// Runs a `go depth` search and collects the final info line per MultiPV
    /// rank. `best_move` is `None` when the engine answers `bestmove (none)`,
    /// i.e. the position has no legal moves.
    pub fn analyze(
        &mut self,
        pos: &Position,
        req: &AnalysisRequest,
    ) -> Result<Analysis, EngineError> {
        self.transport
            .send_line(&format!("setoption name MultiPV value {}", req.multipv))?;
        self.transport.send_line(&format!("position fen {}", pos.fen()))?;
        let mut go = format!("go depth {}", req.depth);
        if let Some(filter) = &req.move_filter {
            go.push_str(" searchmoves");
            for mv in filter {
                go.push_str(&format!(" {mv}"));
            }
        }
        self.transport.send_line(&go)?;

        // rank -> latest (score, pv) seen for that rank
        let mut latest: Vec<Option<(Score, Vec<Move>)>> = vec![None; req.multipv as usize];
        let best_move;
        loop {
            let line = self.transport.recv_line(self.config.search_timeout)?;
            let trimmed = line.trim();
            if let Some(rest) = trimmed.strip_prefix("bestmove") {
                let token = rest.split_whitespace().next().unwrap_or("");
                best_move = match token {
                    "(none)" => None,
                    "" => return Err(EngineError::Parse(line.clone())),
                    mv => Some(mv.parse::<Move>().map_err(|_| EngineError::Parse(line.clone()))?),
                };
                break;
            }
            if trimmed.starts_with("info") {
                if let Some(info) = parse_info_line(trimmed)? {
                    let idx = info.rank as usize - 1;
                    if idx >= latest.len() {
                        latest.resize(idx + 1, None);
                    }
                    latest[idx] = Some((info.score, info.pv));
                }
            }
            // Other chatter (e.g. "info string ...") is ignored.
        }

        let mut lines = Vec::new();
        for (idx, slot) in latest.into_iter().enumerate() {
            if let Some((score, pv)) = slot {
                lines.push(ScoredLine { rank: idx as u32 + 1, score, pv });
            }
        }
        // Ranks must be contiguous from 1: a hole means we dropped a rank.
        for (i, line) in lines.iter().enumerate() {
            if line.rank != i as u32 + 1 {
                return Err(EngineError::BadRanks(lines.iter().map(|l| l.rank).collect()));
            }
        }

        let legal = pos.legal_moves();
        for line in &lines {
            let first = line.pv.first().ok_or(EngineError::NoScore)?;
            if !legal.contains(first) {
                return Err(EngineError::IllegalPv(first.to_string()));
            }
        }
        Ok(Analysis { lines, best_move })
    }

    /// Scores one specific move by searching with `searchmoves` restricted to
    /// it, guaranteeing a score even when the move is far from best.
    pub fn score_move(
        &mut self,
        pos: &Position,
        mv: Move,
        depth: u32,
    ) -> Result<Score, EngineError> {
        Ok(self.analyze_move(pos, mv, depth)?.score)
    }

    /// Like [`EngineSession::score_move`] but keeps the engine's principal
    /// variation for the move.
    pub fn analyze_move(
        &mut self,
        pos: &Position,
        mv: Move,
        depth: u32,
    ) -> Result<ScoredLine, EngineError> {
        if !pos.legal_moves().contains(&mv) {
            return Err(EngineError::IllegalMove(mv));
        }
        let req = AnalysisRequest::new(depth).search_moves(vec![mv]);
        let analysis = self.analyze(pos, &req)?;
        analysis
            .lines
            .into_iter()
            .find(|l| l.pv.first() == Some(&mv))
            .ok_or(EngineError::NoScore)
    }
}

impl Drop for EngineSession {
    fn drop(&mut self) {
        self.transport.shutdown();
    }
}

struct InfoLine {
    rank: u32,
    score: Score,
    pv: Vec<Move>,
}

/// Parses one `info` line. Returns `Ok(None)` for info lines that carry no
/// score/pv payload (string chatter, currmove progress, mate-0 terminals).
fn parse_info_line(line: &str) -> Result<Option<InfoLine>, EngineError> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    let mut rank = 1u32; // engines omit multipv when it is 1
    let mut score = None;
    let mut pv = Vec::new();
    let mut i = 1;
    while i < tokens.len() {
        match tokens[i] {
            "multipv" => {
                let value = tokens.get(i + 1).ok_or_else(|| EngineError::Parse(line.into()))?;
                rank = value.parse().map_err(|_| EngineError::Parse(line.into()))?;
                if rank == 0 {
                    return Err(EngineError::Parse(line.into()));
                }
                i += 2;
            }
            "score" => {
                let kind = tokens.get(i + 1).ok_or_else(|| EngineError::Parse(line.into()))?;
                let value: i32 = tokens
                    .get(i + 2)
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| EngineError::Parse(line.into()))?;
                // "mate 0" appears on terminal positions; such lines carry no
                // pv and are dropped below, so only flag it as malformed when
                // a pv is actually attached.
                score = Some(match *kind {
                    "cp" => Ok(Score::Cp(value)),
                    "mate" if value != 0 => Ok(Score::Mate(value)),
                    _ => Err(()),
                });
                i += 3;
            }
            "pv" => {
                for token in &tokens[i + 1..] {
                    pv.push(token.parse::<Move>().map_err(|_| EngineError::Parse(line.into()))?);
                }
                i = tokens.len();
            }
            "string" => break, // free-form text to end of line
            _ => i += 1,
        }
    }
    match (score, pv.is_empty()) {
        (Some(Ok(score)), false) => Ok(Some(InfoLine { rank, score, pv })),
        (Some(Err(())), false) => Err(EngineError::Parse(line.into())),
        _ => Ok(None),
    }
}
