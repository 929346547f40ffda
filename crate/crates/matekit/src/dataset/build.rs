//! Candidate selection and sample annotation.

use thiserror::Error;

use crate::chess::{Move, Position};
use crate::engine::{AnalysisRequest, EngineError, EngineSession};
use crate::strategy::{classify_strategy, extract_features, position_seed, render_strategy_text};
use crate::tactics::extract_tactic_line;
use crate::util::splitmix64;

use super::{CandidateEntry, CandidatePair, DatasetVariant, SampleMeta, SampleRecord};

/// Everything the builder needs to know; all values are recorded into the
/// emitted samples' metadata.
#[derive(Debug, Clone)]
pub struct BuildParams {
    pub variant: DatasetVariant,
    /// Minimum ordinal score gap between the two candidates.
    pub threshold: i64,
    pub depth: u32,
    pub multipv: u32,
    pub seed: u64,
    /// The inferior candidate must still score within this margin of the
    /// best move, so it stays a reasonable move rather than a giveaway.
    pub floor_margin: i64,
    pub tactic_max_plies: usize,
}

impl Default for BuildParams {
    fn default() -> Self {
        BuildParams {
            variant: DatasetVariant::N,
            threshold: 150,
            depth: 18,
            multipv: 5,
            seed: 0,
            floor_margin: 600,
            tactic_max_plies: 6,
        }
    }
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("position has fewer than two legal moves")]
    TooFewMoves,
    #[error("candidate move {0} is not legal in the sample position")]
    IllegalCandidate(Move),
}

/// What a build run produced, with skip accounting.
#[derive(Debug)]
pub struct BuildOutcome {
    pub records: Vec<SampleRecord>,
    /// Positions with no qualifying candidate pair.
    pub skipped_no_pair: usize,
    /// Positions dropped for having fewer than two legal moves.
    pub skipped_terminal: usize,
    /// Samples that fell back to an explanation-free variant because a
    /// candidate had no tactic line.
    pub downgraded: usize,
}

/// Ranks the position with MultiPV and picks the top move plus the
/// highest-ranked alternative whose ordinal gap reaches the threshold while
/// staying above the reasonability floor. `None` when no alternative
/// qualifies.
pub fn select_candidates(
    pos: &Position,
    session: &mut EngineSession,
    params: &BuildParams,
) -> Result<Option<CandidatePair>, BuildError> {
    if pos.legal_moves().len() < 2 {
        return Err(BuildError::TooFewMoves);
    }
    let req = AnalysisRequest::new(params.depth).multipv(params.multipv);
    let analysis = session.analyze(pos, &req)?;
    let Some(best) = analysis.lines.first() else {
        return Ok(None);
    };
    let best_move = best.pv[0];
    let best_ordinal = best.score.ordinal();
    let floor = best_ordinal - params.floor_margin;

    for line in &analysis.lines[1..] {
        let ordinal = line.score.ordinal();
        let gap = best_ordinal - ordinal;
        if gap >= params.threshold && ordinal >= floor {
            let alt = line.pv[0];
            if alt == best_move {
                continue;
            }
            return Ok(Some(CandidatePair {
                move_a: best_move,
                move_b: alt,
                score_a: best.score,
                score_b: line.score,
                optimal: 0,
                gap,
            }));
        }
    }
    Ok(None)
}

/// Builds one record for the pair: attaches the explanations the variant
/// asks for, shuffles candidate order from the record seed, and falls back
/// to the tactic-free variant when a candidate has no tactic line.
pub fn annotate_sample(
    pos: &Position,
    pair: &CandidatePair,
    variant: DatasetVariant,
    session: &mut EngineSession,
    record_seed: u64,
    params: &BuildParams,
) -> Result<SampleRecord, BuildError> {
    let moves = [pair.move_a, pair.move_b];

    let mut tactic_texts: [Option<String>; 2] = [None, None];
    let mut variant = variant;
    if variant.wants_tactic() {
        for (slot, &mv) in tactic_texts.iter_mut().zip(&moves) {
            let line =
                extract_tactic_line(pos, mv, session, params.depth, params.tactic_max_plies)?;
            *slot = line.map(|l| l.end_description);
        }
        if tactic_texts.iter().any(Option::is_none) {
            variant = variant.without_tactic();
            tactic_texts = [None, None];
        }
    }

    let mut entries = Vec::with_capacity(2);
    for (idx, &mv) in moves.iter().enumerate() {
        let strategy_text = if variant.wants_strategy() {
            let after = pos.apply_move(mv).map_err(|e| BuildError::IllegalCandidate(e.0))?;
            let features = extract_features(&after).pov(pos.side_to_move());
            let category = classify_strategy(&features);
            Some(render_strategy_text(category, &features, position_seed(&after)).text)
        } else {
            None
        };
        entries.push(CandidateEntry {
            uci: mv.to_string(),
            strategy_text,
            tactic_text: tactic_texts[idx].take(),
        });
    }

    // Seeded order shuffle so the optimal move is not always listed first.
    let swap = splitmix64(record_seed) & 1 == 1;
    let (candidates, label) = if swap {
        let [a, b] = <[CandidateEntry; 2]>::try_from(entries).expect("two entries");
        ([b, a], 1 - pair.optimal)
    } else {
        (<[CandidateEntry; 2]>::try_from(entries).expect("two entries"), pair.optimal)
    };

    Ok(SampleRecord {
        fen: pos.fen(),
        candidates,
        label,
        variant,
        gap: pair.gap,
        meta: SampleMeta {
            engine_depth: params.depth,
            threshold: params.threshold,
            generator_version: env!("CARGO_PKG_VERSION").to_string(),
            seed: record_seed,
        },
    })
}

/// Runs the full pipeline over a position stream. Positions without a
/// qualifying pair are skipped; ordering follows the input, so a fixed seed
/// and a fixed engine transcript reproduce the output byte for byte.
pub fn build_dataset(
    positions: &[Position],
    session: &mut EngineSession,
    params: &BuildParams,
) -> Result<BuildOutcome, BuildError> {
    let mut outcome = BuildOutcome {
        records: Vec::new(),
        skipped_no_pair: 0,
        skipped_terminal: 0,
        downgraded: 0,
    };
    for (index, pos) in positions.iter().enumerate() {
        let pair = match select_candidates(pos, session, params) {
            Ok(Some(pair)) => pair,
            Ok(None) => {
                outcome.skipped_no_pair += 1;
                continue;
            }
            Err(BuildError::TooFewMoves) => {
                outcome.skipped_terminal += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let record_seed =
            splitmix64(params.seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let record = annotate_sample(pos, &pair, params.variant, session, record_seed, params)?;
        if record.variant != params.variant {
            outcome.downgraded += 1;
        }
        outcome.records.push(record);
    }
    Ok(outcome)
}
