//! Shared test support: an independent naive move generator, brute-force
//! tactic oracles, transcript builders and synthetic records.
//!
//! Everything here deliberately re-derives chess rules from scratch with the
//! dumbest workable formulation (exhaustive square loops, explicit geometry)
//! so it can serve as an oracle for the optimized library paths. Only the
//! plain data types are shared with the library.

#![allow(dead_code)]

pub mod oracle;
pub mod tactics_oracle;

use matekit::chess::{Move, Position};
use matekit::dataset::{CandidateEntry, DatasetVariant, SampleMeta, SampleRecord};

/// Standard UCI handshake preamble for scripted engines.
pub const HANDSHAKE: &str = "> uci\n< id name scripted\n< uciok\n> isready\n< readyok\n";

/// Scripts one MultiPV analysis block exactly as the session will issue it.
pub fn multipv_block(fen: &str, depth: u32, multipv: u32, lines: &[(u32, String, String)]) -> String {
    let mut s = format!(
        "> setoption name MultiPV value {multipv}\n> position fen {fen}\n> go depth {depth}\n"
    );
    for (rank, score, pv) in lines {
        s.push_str(&format!("< info depth {depth} multipv {rank} score {score} pv {pv}\n"));
    }
    let best = lines
        .first()
        .map(|l| l.2.split(' ').next().unwrap().to_string())
        .unwrap_or_else(|| "(none)".to_string());
    s.push_str(&format!("< bestmove {best}\n"));
    s
}

/// Scripts one `searchmoves` analysis block (MultiPV 1).
pub fn searchmoves_block(fen: &str, depth: u32, mv: &str, score: &str, pv: &str) -> String {
    format!(
        "> setoption name MultiPV value 1\n\
         > position fen {fen}\n\
         > go depth {depth} searchmoves {mv}\n\
         < info depth {depth} multipv 1 score {score} pv {pv}\n\
         < bestmove {mv}\n"
    )
}

/// Builds a transcript that serves each position a cp 120 / cp -80 pair over
/// its first two legal moves, which clears a 150 threshold with gap 200.
pub fn simple_pair_transcript(positions: &[Position], depth: u32, multipv: u32) -> String {
    let mut script = String::from(HANDSHAKE);
    for pos in positions {
        let moves = pos.legal_moves();
        assert!(moves.len() >= 2, "transcript positions need two moves");
        let lines = vec![
            (1, "cp 120".to_string(), moves[0].to_string()),
            (2, "cp -80".to_string(), moves[1].to_string()),
        ];
        script.push_str(&multipv_block(&pos.fen(), depth, multipv, &lines));
    }
    script
}

/// Random playout positions guaranteed to have at least two legal moves.
pub fn playout_positions(count: usize, base_seed: u64, plies: usize) -> Vec<Position> {
    let mut out = Vec::with_capacity(count);
    let mut seed = base_seed;
    while out.len() < count {
        let pos = matekit::chess::random_playout(seed, plies);
        seed += 1;
        if pos.legal_moves().len() >= 2 {
            out.push(pos);
        }
    }
    out
}

/// A synthetic two-candidate record over the initial position.
pub fn synthetic_record(index: u64, label: usize) -> SampleRecord {
    let (a, b) = if label == 0 { ("e2e4", "d2d4") } else { ("d2d4", "e2e4") };
    SampleRecord {
        fen: matekit::chess::START_FEN.to_string(),
        candidates: [
            CandidateEntry { uci: a.into(), strategy_text: None, tactic_text: None },
            CandidateEntry { uci: b.into(), strategy_text: None, tactic_text: None },
        ],
        label: if label == 0 { 0 } else { 1 },
        variant: DatasetVariant::N,
        gap: 200,
        meta: SampleMeta {
            engine_depth: 10,
            threshold: 150,
            generator_version: "test".into(),
            seed: index,
        },
    }
}

/// 1000 distinguishable two-choice records (the seed field varies, so the
/// prompts differ record to record).
pub fn synthetic_records(n: usize) -> Vec<SampleRecord> {
    (0..n as u64).map(|i| synthetic_record(i, (i % 2) as usize)).collect()
}

/// Random but legal move values for text round-trip checks.
pub fn random_moves(n: usize, seed: u64) -> Vec<Move> {
    use matekit::chess::{PieceKind, Square};
    let mut out = Vec::with_capacity(n);
    let mut state = seed;
    let mut next = || {
        state = matekit::util::splitmix64(state);
        state
    };
    while out.len() < n {
        let from = Square::from_index((next() % 64) as u8);
        let to = Square::from_index((next() % 64) as u8);
        if from == to {
            continue;
        }
        let promotion = match next() % 5 {
            0 => Some(PieceKind::Knight),
            1 => Some(PieceKind::Bishop),
            2 => Some(PieceKind::Rook),
            3 => Some(PieceKind::Queen),
            _ => None,
        };
        out.push(Move { from, to, promotion });
    }
    out
}
