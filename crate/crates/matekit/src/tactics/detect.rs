//! Static tactic pattern detectors.
//!
//! All detectors are pure functions of the position (plus a move for the
//! per-move patterns). Board-level detectors scan both colors; outputs are
//! sorted by actor square so results compare as plain equality.

use std::collections::HashMap;

use crate::chess::{
    Color, Move, Piece, PieceKind, Position, Square, BISHOP_DIRS, KING_STEPS, KNIGHT_STEPS,
    ROOK_DIRS,
};

use super::{TacticInstance, TacticLine, TacticPattern};

fn slider_dirs(kind: PieceKind) -> &'static [(i8, i8)] {
    match kind {
        PieceKind::Bishop => &BISHOP_DIRS,
        PieceKind::Rook => &ROOK_DIRS,
        PieceKind::Queen => &QUEEN_DIRS,
        _ => &[],
    }
}

const QUEEN_DIRS: [(i8, i8); 8] =
    [(1, 1), (1, -1), (-1, 1), (-1, -1), (1, 0), (-1, 0), (0, 1), (0, -1)];

/// Walks a ray from `from` and returns the first two pieces on it.
fn first_two_on_ray(
    pos: &Position,
    from: Square,
    dir: (i8, i8),
) -> (Option<(Square, Piece)>, Option<(Square, Piece)>) {
    let mut found = Vec::with_capacity(2);
    let mut cur = from;
    while let Some(next) = cur.offset(dir.0, dir.1) {
        cur = next;
        if let Some(piece) = pos.piece_at(cur) {
            found.push((cur, piece));
            if found.len() == 2 {
                break;
            }
        }
    }
    let mut it = found.into_iter();
    (it.next(), it.next())
}

fn sort_instances(mut out: Vec<TacticInstance>) -> Vec<TacticInstance> {
    out.sort_by_key(|i| (i.actor, i.through, i.targets.clone()));
    out
}

/// Pins: a slider attacks an enemy piece that shields a more valuable piece
/// (or the king) on the same line. The shield is never the king itself; a
/// checked king is not pinned and attack-through-king is reported by
/// [`detect_xray`].
pub fn detect_pins(pos: &Position) -> Vec<TacticInstance> {
    let mut out = Vec::new();
    for (actor, piece) in pos.pieces().filter(|(_, p)| p.kind.is_slider()) {
        for &dir in slider_dirs(piece.kind) {
            let (Some((blocker_sq, blocker)), Some((rear_sq, rear))) =
                first_two_on_ray(pos, actor, dir)
            else {
                continue;
            };
            if blocker.color == piece.color || rear.color == piece.color {
                continue;
            }
            if blocker.kind == PieceKind::King {
                continue;
            }
            if rear.kind == PieceKind::King || rear.kind.value() > blocker.kind.value() {
                out.push(TacticInstance {
                    pattern: TacticPattern::Pin,
                    actor,
                    targets: vec![rear_sq],
                    through: Some(blocker_sq),
                });
            }
        }
    }
    sort_instances(out)
}

/// X-ray: a slider acting through exactly one interposed enemy piece at
/// another enemy piece beyond it, with no value condition. The skewer
/// (attack through the king) is this pattern with the king in front.
pub fn detect_xray(pos: &Position) -> Vec<TacticInstance> {
    let mut out = Vec::new();
    for (actor, piece) in pos.pieces().filter(|(_, p)| p.kind.is_slider()) {
        for &dir in slider_dirs(piece.kind) {
            let (Some((blocker_sq, blocker)), Some((rear_sq, rear))) =
                first_two_on_ray(pos, actor, dir)
            else {
                continue;
            };
            if blocker.color != piece.color && rear.color != piece.color {
                out.push(TacticInstance {
                    pattern: TacticPattern::XRay,
                    actor,
                    targets: vec![rear_sq],
                    through: Some(blocker_sq),
                });
            }
        }
    }
    sort_instances(out)
}

/// Whether capturing or attacking `target` with a piece of `attacker_kind`
/// is worthwhile: the target is the king, outvalues the attacker, or hangs
/// undefended. Kings only ever profit from undefended targets.
fn profitable_target(
    pos: &Position,
    attacker_kind: PieceKind,
    target_sq: Square,
    target: Piece,
) -> bool {
    if target.kind == PieceKind::King {
        return true;
    }
    let undefended = pos.attackers_to(target_sq, target.color).is_empty();
    if attacker_kind == PieceKind::King {
        return undefended;
    }
    undefended || target.kind.value() > attacker_kind.value()
}

/// Squares attacked by the piece on `from` (capture pattern only; pawn
/// pushes are not attacks).
fn attack_squares(pos: &Position, from: Square, piece: Piece) -> Vec<Square> {
    let mut out = Vec::new();
    match piece.kind {
        PieceKind::Pawn => {
            for df in [-1i8, 1] {
                if let Some(sq) = from.offset(df, piece.color.forward()) {
                    out.push(sq);
                }
            }
        }
        PieceKind::Knight | PieceKind::King => {
            let steps: &[(i8, i8)] =
                if piece.kind == PieceKind::Knight { &KNIGHT_STEPS } else { &KING_STEPS };
            for &(df, dr) in steps {
                if let Some(sq) = from.offset(df, dr) {
                    out.push(sq);
                }
            }
        }
        _ => {
            for &(df, dr) in slider_dirs(piece.kind) {
                let mut cur = from;
                while let Some(next) = cur.offset(df, dr) {
                    out.push(next);
                    if pos.piece_at(next).is_some() {
                        break;
                    }
                    cur = next;
                }
            }
        }
    }
    out
}

/// Forks: any piece attacking two or more profitable enemy targets
/// simultaneously (the king always counts). Both colors are scanned.
pub fn detect_forks(pos: &Position) -> Vec<TacticInstance> {
    let mut out = Vec::new();
    for (actor, piece) in pos.pieces() {
        let mut targets: Vec<Square> = attack_squares(pos, actor, piece)
            .into_iter()
            .filter(|&sq| {
                pos.piece_at(sq).is_some_and(|victim| {
                    victim.color != piece.color && profitable_target(pos, piece.kind, sq, victim)
                })
            })
            .collect();
        targets.sort();
        targets.dedup();
        if targets.len() >= 2 {
            out.push(TacticInstance {
                pattern: TacticPattern::Fork,
                actor,
                targets,
                through: None,
            });
        }
    }
    sort_instances(out)
}

fn aligned_dir(a: Square, b: Square) -> Option<(i8, i8)> {
    let df = b.file() as i8 - a.file() as i8;
    let dr = b.rank() as i8 - a.rank() as i8;
    if df == 0 && dr == 0 {
        return None;
    }
    if df == 0 || dr == 0 || df.abs() == dr.abs() {
        Some((df.signum(), dr.signum()))
    } else {
        None
    }
}

fn clear_between(pos: &Position, a: Square, b: Square, dir: (i8, i8)) -> bool {
    let mut cur = a;
    while let Some(next) = cur.offset(dir.0, dir.1) {
        if next == b {
            return true;
        }
        if pos.piece_at(next).is_some() {
            return false;
        }
        cur = next;
    }
    false
}

/// Batteries: two same-colored line pieces stacked with nothing between
/// them — queen/rook pairs on a rank or file, queen/bishop pairs on a
/// diagonal. The lower square is reported as the actor.
pub fn detect_battery(pos: &Position) -> Vec<TacticInstance> {
    let sliders: Vec<(Square, Piece)> = pos.pieces().filter(|(_, p)| p.kind.is_slider()).collect();
    let mut out = Vec::new();
    for (i, &(a_sq, a)) in sliders.iter().enumerate() {
        for &(b_sq, b) in &sliders[i + 1..] {
            if a.color != b.color {
                continue;
            }
            let Some(dir) = aligned_dir(a_sq, b_sq) else { continue };
            let diagonal = dir.0 != 0 && dir.1 != 0;
            let battery_kinds = |k: PieceKind| {
                if diagonal {
                    matches!(k, PieceKind::Queen | PieceKind::Bishop)
                } else {
                    matches!(k, PieceKind::Queen | PieceKind::Rook)
                }
            };
            if battery_kinds(a.kind) && battery_kinds(b.kind) && clear_between(pos, a_sq, b_sq, dir)
            {
                out.push(TacticInstance {
                    pattern: TacticPattern::Battery,
                    actor: a_sq.min(b_sq),
                    targets: vec![a_sq.max(b_sq)],
                    through: None,
                });
            }
        }
    }
    sort_instances(out)
}

/// Discovered attack: moving the piece on `mv.from` opens a line from a
/// friendly slider to an enemy piece worth at least a minor piece, or the
/// king. Returns the revealed slider as actor with everything it newly
/// attacks through the vacated square.
pub fn detect_discovered(pos: &Position, mv: Move) -> Option<TacticInstance> {
    let mover = pos.piece_at(mv.from)?.color;
    let after = pos.apply_move(mv).ok()?;

    // (slider square -> targets) for attacks that pass through mv.from.
    let mut revealed: HashMap<Square, Vec<Square>> = HashMap::new();
    for (target_sq, target) in after.pieces() {
        if target.color == mover {
            continue;
        }
        if target.kind != PieceKind::King && target.kind.value() < 3 {
            continue;
        }
        for attacker in after.attackers_to(target_sq, mover) {
            if attacker == mv.to {
                continue;
            }
            let is_slider = after.piece_at(attacker).is_some_and(|p| p.kind.is_slider());
            if !is_slider {
                continue;
            }
            let was_attacking = pos.attackers_to(target_sq, mover).contains(&attacker);
            if was_attacking {
                continue;
            }
            // The opened line must run through the vacated square.
            let through_vacated = aligned_dir(attacker, target_sq)
                .is_some_and(|dir| {
                    let mut cur = attacker;
                    while let Some(next) = cur.offset(dir.0, dir.1) {
                        if next == target_sq {
                            return false;
                        }
                        if next == mv.from {
                            return true;
                        }
                        cur = next;
                    }
                    false
                });
            if through_vacated {
                revealed.entry(attacker).or_default().push(target_sq);
            }
        }
    }

    // Prefer the slider revealing the most valuable threat (king first).
    let best = revealed.into_iter().max_by_key(|(actor, targets)| {
        let strongest = targets
            .iter()
            .map(|&t| match after.piece_at(t).map(|p| p.kind) {
                Some(PieceKind::King) => 100,
                Some(kind) => kind.value(),
                None => 0,
            })
            .max()
            .unwrap_or(0);
        (strongest, std::cmp::Reverse(*actor))
    });
    best.map(|(actor, mut targets)| {
        targets.sort();
        targets.dedup();
        TacticInstance { pattern: TacticPattern::DiscoveredAttack, actor, targets, through: None }
    })
}

/// Double attack: after the move, the mover has created two or more distinct
/// profitable threats — the union of the moved piece's new attacks and any
/// discovered attack. A fork created by the move is the single-piece case.
pub fn detect_double_attack(pos: &Position, mv: Move) -> Option<TacticInstance> {
    let piece = pos.piece_at(mv.from)?;
    let mover = piece.color;
    let after = pos.apply_move(mv).ok()?;
    let placed = after.piece_at(mv.to)?;

    let before_attacks = attack_squares(pos, mv.from, piece);
    let mut targets: Vec<Square> = attack_squares(&after, mv.to, placed)
        .into_iter()
        .filter(|&sq| {
            after.piece_at(sq).is_some_and(|victim| {
                victim.color != mover
                    && !before_attacks.contains(&sq)
                    && profitable_target(&after, placed.kind, sq, victim)
            })
        })
        .collect();

    if let Some(disc) = detect_discovered(pos, mv) {
        targets.extend(disc.targets);
    }
    targets.sort();
    targets.dedup();
    if targets.len() >= 2 {
        Some(TacticInstance {
            pattern: TacticPattern::DoubleAttack,
            actor: mv.to,
            targets,
            through: None,
        })
    } else {
        None
    }
}

/// Greek gift precondition: the classical bishop-sacrifice setup with bishop,
/// knight and queen on their home attacking posts, a capturable h-pawn in
/// front of the castled enemy king, and the sacrifice diagonal open. The side
/// to move is checked first, then the opponent.
pub fn detect_greek_gift(pos: &Position) -> Option<TacticInstance> {
    let stm = pos.side_to_move();
    greek_gift_for(pos, stm).or_else(|| greek_gift_for(pos, stm.opponent()))
}

fn greek_gift_for(pos: &Position, attacker: Color) -> Option<TacticInstance> {
    let sq = |s: &str| -> Square { s.parse().expect("literal square") };
    let (bishop, knight, queen, king, pawn, path): (_, _, _, _, _, [&str; 3]) = match attacker {
        Color::White => ("d3", "f3", "d1", "g8", "h7", ["e4", "f5", "g6"]),
        Color::Black => ("d6", "f6", "d8", "g1", "h2", ["e5", "f4", "g3"]),
    };
    let defender = attacker.opponent();
    let has = |s: &str, color: Color, kind: PieceKind| {
        pos.piece_at(sq(s)) == Some(Piece::new(color, kind))
    };
    let setup = has(bishop, attacker, PieceKind::Bishop)
        && has(knight, attacker, PieceKind::Knight)
        && has(queen, attacker, PieceKind::Queen)
        && has(king, defender, PieceKind::King)
        && has(pawn, defender, PieceKind::Pawn)
        && path.iter().all(|s| pos.piece_at(sq(s)).is_none());
    setup.then(|| TacticInstance {
        pattern: TacticPattern::GreekGift,
        actor: sq(bishop),
        targets: vec![sq(pawn)],
        through: None,
    })
}

/// Windmill: within the line, one piece delivers two or more discovered
/// checks and returns to a square it already occupied.
pub fn detect_windmill(line: &TacticLine, pos: &Position) -> bool {
    struct Track {
        squares: Vec<Square>,
        discovered_checks: usize,
        revisited: bool,
    }

    let mut tracks: Vec<Track> = Vec::new();
    let mut owner: HashMap<(Color, Square), usize> = HashMap::new();
    let mut cur = pos.clone();

    for &mv in &line.moves {
        let mover = cur.side_to_move();
        let enemy_king = cur.king_square(mover.opponent());
        let discovered_check = detect_discovered(&cur, mv)
            .is_some_and(|d| d.targets.contains(&enemy_king));

        let next = match cur.apply_move(mv) {
            Ok(p) => p,
            Err(_) => return false,
        };

        let id = owner.remove(&(mover, mv.from)).unwrap_or_else(|| {
            tracks.push(Track {
                squares: vec![mv.from],
                discovered_checks: 0,
                revisited: false,
            });
            tracks.len() - 1
        });
        let track = &mut tracks[id];
        if discovered_check {
            track.discovered_checks += 1;
        }
        if track.squares.contains(&mv.to) {
            track.revisited = true;
        }
        track.squares.push(mv.to);
        // A capture ends the victim's track.
        owner.remove(&(mover.opponent(), mv.to));
        owner.insert((mover, mv.to), id);
        cur = next;
    }

    tracks.iter().any(|t| t.discovered_checks >= 2 && t.revisited)
}
