//! Prompt text construction and answer extraction.

use regex::Regex;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::chess::{Move, Position};
use crate::dataset::{CandidateEntry, SampleRecord};

use super::PromptConfig;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PromptError {
    #[error("requested {requested} shots but the exemplar pool has {available}")]
    NotEnoughExemplars { requested: usize, available: usize },
    #[error("record fen does not parse: {0}")]
    BadFen(#[from] crate::chess::FenError),
}

/// Renders a position as text. Plain mode is the FEN itself; special-token
/// mode separates board rows with ` <line> ` and prefixes the side to move
/// with ` <color> `, leaving the remaining FEN fields untouched. Stripping
/// the tokens restores the FEN exactly.
pub fn format_position_text(pos: &Position, special_tokens: bool) -> String {
    let fen = pos.fen();
    if !special_tokens {
        return fen;
    }
    let (placement, rest) = fen.split_once(' ').expect("fen has six fields");
    format!("{} <color> {}", placement.replace('/', " <line> "), rest)
}

/// Stable hex identifier for a prompt, used to key replay files.
pub fn prompt_hash(prompt: &str) -> String {
    hex::encode(Sha256::digest(prompt.as_bytes()))
}

const INSTRUCTION: &str = "You are given a chess position and two candidate moves. \
Choose the better move and answer with that move in UCI format.";

fn push_candidates(out: &mut String, candidates: &[CandidateEntry; 2]) {
    for (i, candidate) in candidates.iter().enumerate() {
        out.push_str(&format!("Candidate {}: {}\n", i + 1, candidate.uci));
        if let Some(strategy) = &candidate.strategy_text {
            out.push_str(&format!("Strategy: {strategy}\n"));
        }
        if let Some(tactic) = &candidate.tactic_text {
            out.push_str(&format!("Tactic: {tactic}\n"));
        }
    }
}

/// Builds the deterministic prompt for one test record: an instruction
/// header, `shots` labeled exemplars, then the unlabeled test position.
pub fn build_prompt(test: &SampleRecord, cfg: &PromptConfig) -> Result<String, PromptError> {
    if cfg.shots > cfg.exemplars.len() {
        return Err(PromptError::NotEnoughExemplars {
            requested: cfg.shots,
            available: cfg.exemplars.len(),
        });
    }
    let mut out = String::new();
    out.push_str(INSTRUCTION);
    out.push_str("\n\n");
    for (i, exemplar) in cfg.exemplars[..cfg.shots].iter().enumerate() {
        let position: Position = exemplar.fen.parse()?;
        out.push_str(&format!("Example {}:\n", i + 1));
        out.push_str(&format!(
            "Position: {}\n",
            format_position_text(&position, cfg.special_tokens)
        ));
        push_candidates(&mut out, &exemplar.candidates);
        out.push_str(&format!("Best move: {}\n\n", exemplar.optimal().uci));
    }
    let position: Position = test.fen.parse()?;
    out.push_str(&format!(
        "Position: {}\n",
        format_position_text(&position, cfg.special_tokens)
    ));
    push_candidates(&mut out, &test.candidates);
    out.push_str("Best move:");
    Ok(out)
}

/// Scans free-form response text for candidate moves (case-insensitive, on
/// word boundaries) and returns the last one mentioned; models conventionally
/// end with their final answer. `None` when no candidate appears. Never
/// returns a move outside the candidate list.
pub fn parse_move_from_response(text: &str, candidates: &[Move]) -> Option<Move> {
    let mut best: Option<(usize, usize, Move)> = None; // (start, len, move)
    for &mv in candidates {
        let pattern = format!(r"(?i)\b{}\b", mv);
        let re = Regex::new(&pattern).expect("uci text is a valid regex literal");
        for found in re.find_iter(text) {
            let key = (found.start(), found.len(), mv);
            if best.map_or(true, |(s, l, _)| (found.start(), found.len()) > (s, l)) {
                best = Some(key);
            }
        }
    }
    best.map(|(_, _, mv)| mv)
}
