//! Engine-derived tactic lines and factual end-position descriptions.

use crate::chess::{Color, Move, Position};
use crate::engine::{EngineError, EngineSession};

use super::{detect_battery, detect_forks, detect_pins, detect_xray, TacticInstance, TacticLine};

/// A truncated line is kept only when it swings at least this much material
/// (in pawn units) or ends in checkmate; anything quieter has no short-term
/// tactic to describe.
pub const MATERIAL_SWING_KEEP: i32 = 2;

/// Derives a short tactic line for `mv`: takes the engine's principal
/// variation (searched with `searchmoves`), truncates it to `max_plies`,
/// replays it, and keeps it only if it is forcing per
/// [`MATERIAL_SWING_KEEP`]. Returns `Ok(None)` for quiet moves.
pub fn extract_tactic_line(
    pos: &Position,
    mv: Move,
    session: &mut EngineSession,
    depth: u32,
    max_plies: usize,
) -> Result<Option<TacticLine>, EngineError> {
    let line = session.analyze_move(pos, mv, depth)?;
    let mut moves = line.pv;
    moves.truncate(max_plies);
    if moves.is_empty() {
        return Ok(None);
    }

    let mover = pos.side_to_move();
    let mut end = pos.clone();
    let mut replayed = Vec::with_capacity(moves.len());
    for m in moves {
        match end.apply_move(m) {
            Ok(next) => {
                end = next;
                replayed.push(m);
            }
            // Engines occasionally emit pv tails from interrupted searches;
            // keep the legal prefix.
            Err(_) => break,
        }
    }

    let balance = |p: &Position| p.material(mover) - p.material(mover.opponent());
    let material_delta_after = balance(&end) - balance(pos);
    let is_mate = end.is_checkmate();
    if material_delta_after.abs() < MATERIAL_SWING_KEEP && !is_mate {
        return Ok(None);
    }

    let gives_check = end.in_check(end.side_to_move());
    let patterns = end_patterns(&end, mover);
    let end_description = describe_resulting_position(
        replayed.len(),
        &end,
        material_delta_after,
        gives_check,
        &patterns,
    );
    Ok(Some(TacticLine {
        moves: replayed,
        end_description,
        material_delta_after,
        gives_check,
    }))
}

/// Static patterns on the final board executed by `mover`'s pieces.
pub(crate) fn end_patterns(end: &Position, mover: Color) -> Vec<TacticInstance> {
    let mut patterns = Vec::new();
    for detector in [detect_pins, detect_forks, detect_battery, detect_xray] {
        patterns.extend(
            detector(end)
                .into_iter()
                .filter(|i| end.piece_at(i.actor).is_some_and(|p| p.color == mover)),
        );
    }
    patterns
}

/// Renders a deterministic factual sentence about the position a tactic line
/// lands in: length, material outcome, check/mate status, and any static
/// patterns present. Identical inputs produce identical text.
pub fn describe_resulting_position(
    plies: usize,
    end: &Position,
    material_delta: i32,
    gives_check: bool,
    patterns: &[TacticInstance],
) -> String {
    let mut text = format!(
        "After this {plies}-{} sequence, ",
        if plies == 1 { "ply" } else { "plies" }
    );
    text.push_str(&match material_delta {
        0 => "material is unchanged".to_string(),
        d if d > 0 => format!("the moving side wins {}", material_phrase(d)),
        d => format!("the moving side gives up {}", material_phrase(-d)),
    });

    if end.is_checkmate() {
        // With an odd number of plies the original mover made the last move.
        if plies % 2 == 1 {
            text.push_str(" and delivers checkmate");
        } else {
            text.push_str(" and walks into checkmate");
        }
    } else if end.is_stalemate() {
        text.push_str(" and the position is stalemate");
    } else if gives_check {
        text.push_str(" and leaves the opposing king in check");
    }
    text.push('.');

    if !patterns.is_empty() {
        let phrases: Vec<String> = patterns
            .iter()
            .map(|p| format!("{} by the piece on {}", p.pattern.phrase(), p.actor))
            .collect();
        text.push_str(&format!(" The final position features {}.", phrases.join(", ")));
    }
    text
}

fn material_phrase(n: i32) -> String {
    match n {
        1 => "a pawn".to_string(),
        2 => "two pawns".to_string(),
        3 => "a knight's worth of material".to_string(),
        5 => "a rook's worth of material".to_string(),
        9 => "a queen's worth of material".to_string(),
        n => format!("{n} pawns' worth of material"),
    }
}
