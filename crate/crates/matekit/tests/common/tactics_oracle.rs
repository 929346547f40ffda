//! Brute-force re-derivations of the static tactic detectors: exhaustive
//! square loops and explicit geometry, no ray walking, no shared logic.

use matekit::chess::{Color, PieceKind, Position, Square};
use matekit::tactics::{TacticInstance, TacticPattern};

use super::oracle::NaiveState;

fn value(kind: PieceKind) -> i32 {
    match kind {
        PieceKind::Pawn => 1,
        PieceKind::Knight | PieceKind::Bishop => 3,
        PieceKind::Rook => 5,
        PieceKind::Queen => 9,
        PieceKind::King => 0,
    }
}

fn dir_between(a: Square, b: Square) -> Option<(i8, i8)> {
    let df = b.file() as i8 - a.file() as i8;
    let dr = b.rank() as i8 - a.rank() as i8;
    if (df == 0 && dr == 0) || !(df == 0 || dr == 0 || df.abs() == dr.abs()) {
        return None;
    }
    Some((df.signum(), dr.signum()))
}

fn kind_moves_along(kind: PieceKind, dir: (i8, i8)) -> bool {
    let diagonal = dir.0 != 0 && dir.1 != 0;
    match kind {
        PieceKind::Bishop => diagonal,
        PieceKind::Rook => !diagonal,
        PieceKind::Queen => true,
        _ => false,
    }
}

fn empty_between(pos: &Position, a: Square, b: Square) -> bool {
    let Some((sf, sr)) = dir_between(a, b) else { return false };
    let steps = (b.file() as i8 - a.file() as i8)
        .abs()
        .max((b.rank() as i8 - a.rank() as i8).abs());
    (1..steps).all(|i| {
        pos.piece_at(Square::new(
            (a.file() as i8 + sf * i) as u8,
            (a.rank() as i8 + sr * i) as u8,
        ))
        .is_none()
    })
}

fn sorted(mut out: Vec<TacticInstance>) -> Vec<TacticInstance> {
    out.sort_by_key(|i| (i.actor, i.through, i.targets.clone()));
    out
}

/// Slider / blocker / rear triples by exhaustive triple loop.
fn line_triples(pos: &Position) -> Vec<(Square, PieceKind, Color, Square, Square)> {
    let occupied: Vec<Square> = Square::all().filter(|&s| pos.piece_at(s).is_some()).collect();
    let mut out = Vec::new();
    for &attacker in &occupied {
        let a = pos.piece_at(attacker).unwrap();
        if !matches!(a.kind, PieceKind::Bishop | PieceKind::Rook | PieceKind::Queen) {
            continue;
        }
        for &blocker in &occupied {
            if blocker == attacker {
                continue;
            }
            let Some(dir_ab) = dir_between(attacker, blocker) else { continue };
            if !kind_moves_along(a.kind, dir_ab) || !empty_between(pos, attacker, blocker) {
                continue;
            }
            for &rear in &occupied {
                if rear == attacker || rear == blocker {
                    continue;
                }
                if dir_between(blocker, rear) != Some(dir_ab) {
                    continue;
                }
                if empty_between(pos, blocker, rear) {
                    out.push((attacker, a.kind, a.color, blocker, rear));
                }
            }
        }
    }
    out
}

pub fn oracle_pins(pos: &Position) -> Vec<TacticInstance> {
    let mut out = Vec::new();
    for (attacker, _, color, blocker, rear) in line_triples(pos) {
        let b = pos.piece_at(blocker).unwrap();
        let r = pos.piece_at(rear).unwrap();
        if b.color == color || r.color == color || b.kind == PieceKind::King {
            continue;
        }
        if r.kind == PieceKind::King || value(r.kind) > value(b.kind) {
            out.push(TacticInstance {
                pattern: TacticPattern::Pin,
                actor: attacker,
                targets: vec![rear],
                through: Some(blocker),
            });
        }
    }
    sorted(out)
}

pub fn oracle_xrays(pos: &Position) -> Vec<TacticInstance> {
    let mut out = Vec::new();
    for (attacker, _, color, blocker, rear) in line_triples(pos) {
        let b = pos.piece_at(blocker).unwrap();
        let r = pos.piece_at(rear).unwrap();
        if b.color != color && r.color != color {
            out.push(TacticInstance {
                pattern: TacticPattern::XRay,
                actor: attacker,
                targets: vec![rear],
                through: Some(blocker),
            });
        }
    }
    sorted(out)
}

pub fn oracle_batteries(pos: &Position) -> Vec<TacticInstance> {
    let occupied: Vec<Square> = Square::all().filter(|&s| pos.piece_at(s).is_some()).collect();
    let mut out = Vec::new();
    for &a_sq in &occupied {
        for &b_sq in &occupied {
            if b_sq <= a_sq {
                continue;
            }
            let a = pos.piece_at(a_sq).unwrap();
            let b = pos.piece_at(b_sq).unwrap();
            if a.color != b.color {
                continue;
            }
            let Some(dir) = dir_between(a_sq, b_sq) else { continue };
            let diagonal = dir.0 != 0 && dir.1 != 0;
            let ok = |k: PieceKind| {
                if diagonal {
                    matches!(k, PieceKind::Queen | PieceKind::Bishop)
                } else {
                    matches!(k, PieceKind::Queen | PieceKind::Rook)
                }
            };
            if ok(a.kind) && ok(b.kind) && empty_between(pos, a_sq, b_sq) {
                out.push(TacticInstance {
                    pattern: TacticPattern::Battery,
                    actor: a_sq,
                    targets: vec![b_sq],
                    through: None,
                });
            }
        }
    }
    sorted(out)
}

pub fn oracle_forks(pos: &Position) -> Vec<TacticInstance> {
    let state = NaiveState::from_position(pos);
    let mut out = Vec::new();
    for actor in Square::all() {
        let Some(piece) = pos.piece_at(actor) else { continue };
        let mut targets = Vec::new();
        for target_sq in Square::all() {
            let Some(target) = pos.piece_at(target_sq) else { continue };
            if target.color == piece.color || !state_attacks(&state, actor, target_sq) {
                continue;
            }
            let profitable = if target.kind == PieceKind::King {
                true
            } else {
                let undefended = !state.attacked_by(target_sq, target.color);
                if piece.kind == PieceKind::King {
                    undefended
                } else {
                    undefended || value(target.kind) > value(piece.kind)
                }
            };
            if profitable {
                targets.push(target_sq);
            }
        }
        targets.sort();
        if targets.len() >= 2 {
            out.push(TacticInstance {
                pattern: TacticPattern::Fork,
                actor,
                targets,
                through: None,
            });
        }
    }
    sorted(out)
}

// NaiveState::attacks is private to the oracle module; re-expose the check
// through attacked_by-style enumeration.
fn state_attacks(state: &NaiveState, from: Square, to: Square) -> bool {
    state.attacks_from(from, to)
}
