//! Legal move generation, attack queries and perft counting.
//!
//! Pseudo-legal moves are generated per piece from step tables, then filtered
//! by applying each candidate and rejecting those that leave the mover's king
//! attacked. Castling legality (king not in or through check) is checked up
//! front.

use super::{Color, Move, PieceKind, Position, Square};

pub(crate) const KNIGHT_STEPS: [(i8, i8); 8] =
    [(1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2)];
pub(crate) const KING_STEPS: [(i8, i8); 8] =
    [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];
pub(crate) const BISHOP_DIRS: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
pub(crate) const ROOK_DIRS: [(i8, i8); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// Whether any piece of `by` attacks `sq`.
pub(crate) fn is_attacked(pos: &Position, sq: Square, by: Color) -> bool {
    // Pawns: a `by` pawn attacks sq from one rank behind (relative to `by`).
    for df in [-1i8, 1] {
        if let Some(from) = sq.offset(df, -by.forward()) {
            if pos.piece_at(from).is_some_and(|p| p.color == by && p.kind == PieceKind::Pawn) {
                return true;
            }
        }
    }
    for (steps, kind) in [(&KNIGHT_STEPS, PieceKind::Knight), (&KING_STEPS, PieceKind::King)] {
        for &(df, dr) in steps.iter() {
            if let Some(from) = sq.offset(df, dr) {
                if pos.piece_at(from).is_some_and(|p| p.color == by && p.kind == kind) {
                    return true;
                }
            }
        }
    }
    for (dirs, diagonal) in [(&BISHOP_DIRS, true), (&ROOK_DIRS, false)] {
        for &(df, dr) in dirs.iter() {
            let mut cur = sq;
            while let Some(next) = cur.offset(df, dr) {
                cur = next;
                if let Some(p) = pos.piece_at(cur) {
                    if p.color == by
                        && (p.kind == PieceKind::Queen
                            || p.kind == if diagonal { PieceKind::Bishop } else { PieceKind::Rook })
                    {
                        return true;
                    }
                    break;
                }
            }
        }
    }
    false
}

/// All squares of `by`-colored pieces attacking `sq`, ascending by index.
pub(crate) fn attackers_to(pos: &Position, sq: Square, by: Color) -> Vec<Square> {
    let mut out = Vec::new();
    for df in [-1i8, 1] {
        if let Some(from) = sq.offset(df, -by.forward()) {
            if pos.piece_at(from).is_some_and(|p| p.color == by && p.kind == PieceKind::Pawn) {
                out.push(from);
            }
        }
    }
    for (steps, kind) in [(&KNIGHT_STEPS, PieceKind::Knight), (&KING_STEPS, PieceKind::King)] {
        for &(df, dr) in steps.iter() {
            if let Some(from) = sq.offset(df, dr) {
                if pos.piece_at(from).is_some_and(|p| p.color == by && p.kind == kind) {
                    out.push(from);
                }
            }
        }
    }
    for (dirs, diagonal) in [(&BISHOP_DIRS, true), (&ROOK_DIRS, false)] {
        for &(df, dr) in dirs.iter() {
            let mut cur = sq;
            while let Some(next) = cur.offset(df, dr) {
                cur = next;
                if let Some(p) = pos.piece_at(cur) {
                    if p.color == by
                        && (p.kind == PieceKind::Queen
                            || p.kind == if diagonal { PieceKind::Bishop } else { PieceKind::Rook })
                    {
                        out.push(cur);
                    }
                    break;
                }
            }
        }
    }
    out.sort();
    out
}

/// Pseudo-legal destination squares for the piece on `from` (moves that obey
/// piece geometry and occupancy but may leave the king in check). Pawn moves
/// include pushes; castling is not included here.
pub(crate) fn pseudo_destinations(pos: &Position, from: Square) -> Vec<Square> {
    let piece = match pos.piece_at(from) {
        Some(p) => p,
        None => return Vec::new(),
    };
    let us = piece.color;
    let mut out = Vec::new();
    match piece.kind {
        PieceKind::Pawn => {
            let fwd = us.forward();
            if let Some(one) = from.offset(0, fwd) {
                if pos.piece_at(one).is_none() {
                    out.push(one);
                    let start_rank = if us == Color::White { 1 } else { 6 };
                    if from.rank() == start_rank {
                        if let Some(two) = from.offset(0, 2 * fwd) {
                            if pos.piece_at(two).is_none() {
                                out.push(two);
                            }
                        }
                    }
                }
            }
            for df in [-1i8, 1] {
                if let Some(to) = from.offset(df, fwd) {
                    let capturable = pos.piece_at(to).is_some_and(|p| p.color != us)
                        || pos.en_passant() == Some(to);
                    if capturable {
                        out.push(to);
                    }
                }
            }
        }
        PieceKind::Knight | PieceKind::King => {
            let steps: &[(i8, i8)] =
                if piece.kind == PieceKind::Knight { &KNIGHT_STEPS } else { &KING_STEPS };
            for &(df, dr) in steps {
                if let Some(to) = from.offset(df, dr) {
                    if pos.piece_at(to).map_or(true, |p| p.color != us) {
                        out.push(to);
                    }
                }
            }
        }
        PieceKind::Bishop | PieceKind::Rook | PieceKind::Queen => {
            let dirs: &[(i8, i8)] = match piece.kind {
                PieceKind::Bishop => &BISHOP_DIRS,
                PieceKind::Rook => &ROOK_DIRS,
                _ => &[(1, 1), (1, -1), (-1, 1), (-1, -1), (1, 0), (-1, 0), (0, 1), (0, -1)],
            };
            for &(df, dr) in dirs {
                let mut cur = from;
                while let Some(to) = cur.offset(df, dr) {
                    match pos.piece_at(to) {
                        None => out.push(to),
                        Some(p) => {
                            if p.color != us {
                                out.push(to);
                            }
                            break;
                        }
                    }
                    cur = to;
                }
            }
        }
    }
    out
}

const PROMOTIONS: [PieceKind; 4] =
    [PieceKind::Knight, PieceKind::Bishop, PieceKind::Rook, PieceKind::Queen];

pub(crate) fn legal_moves(pos: &Position) -> Vec<Move> {
    let us = pos.side_to_move();
    let mut moves = Vec::with_capacity(48);

    for (from, piece) in pos.pieces().filter(|(_, p)| p.color == us) {
        for to in pseudo_destinations(pos, from) {
            if piece.kind == PieceKind::Pawn && (to.rank() == 0 || to.rank() == 7) {
                for kind in PROMOTIONS {
                    moves.push(Move::promoting(from, to, kind));
                }
            } else {
                moves.push(Move::new(from, to));
            }
        }
    }

    moves.retain(|&mv| !pos.apply_unchecked(mv).in_check(us));

    // Castling: rights checked, path empty, king not in or passing through check.
    let rank = if us == Color::White { 0 } else { 7 };
    let king_from = Square::new(4, rank);
    let rights = pos.castling();
    let (kingside, queenside) = match us {
        Color::White => (rights.white_kingside, rights.white_queenside),
        Color::Black => (rights.black_kingside, rights.black_queenside),
    };
    let them = us.opponent();
    let has_king = pos
        .piece_at(king_from)
        .is_some_and(|p| p.kind == PieceKind::King && p.color == us);
    if has_king && !is_attacked(pos, king_from, them) {
        if kingside
            && pos.piece_at(Square::new(5, rank)).is_none()
            && pos.piece_at(Square::new(6, rank)).is_none()
            && pos
                .piece_at(Square::new(7, rank))
                .is_some_and(|p| p.kind == PieceKind::Rook && p.color == us)
            && !is_attacked(pos, Square::new(5, rank), them)
            && !is_attacked(pos, Square::new(6, rank), them)
        {
            moves.push(Move::new(king_from, Square::new(6, rank)));
        }
        if queenside
            && pos.piece_at(Square::new(3, rank)).is_none()
            && pos.piece_at(Square::new(2, rank)).is_none()
            && pos.piece_at(Square::new(1, rank)).is_none()
            && pos
                .piece_at(Square::new(0, rank))
                .is_some_and(|p| p.kind == PieceKind::Rook && p.color == us)
            && !is_attacked(pos, Square::new(3, rank), them)
            && !is_attacked(pos, Square::new(2, rank), them)
        {
            moves.push(Move::new(king_from, Square::new(2, rank)));
        }
    }

    moves
}

pub(crate) fn perft(pos: &Position, depth: u32) -> u64 {
    if depth == 0 {
        return 1;
    }
    let moves = legal_moves(pos);
    if depth == 1 {
        return moves.len() as u64;
    }
    moves.iter().map(|&mv| perft(&pos.apply_unchecked(mv), depth - 1)).sum()
}

#[cfg(test)]
mod tests {
    use super::super::{Piece, START_FEN};
    use super::*;

    fn pos(fen: &str) -> Position {
        Position::from_fen(fen).unwrap()
    }

    fn sq(s: &str) -> Square {
        s.parse().unwrap()
    }

    fn mv(s: &str) -> Move {
        s.parse().unwrap()
    }

    #[test]
    fn initial_position_has_twenty_moves() {
        assert_eq!(Position::initial().legal_moves().len(), 20);
    }

    #[test]
    fn known_perft_values_from_the_start() {
        let p = Position::initial();
        assert_eq!(p.perft(0), 1);
        assert_eq!(p.perft(1), 20);
        assert_eq!(p.perft(2), 400);
        assert_eq!(p.perft(3), 8902);
    }

    #[test]
    fn kiwipete_perft() {
        let p = pos("r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1");
        assert_eq!(p.perft(1), 48);
        assert_eq!(p.perft(2), 2039);
        assert_eq!(p.perft(3), 97862);
    }

    #[test]
    fn en_passant_and_promotion_perft() {
        // Position 3 from the standard perft suite.
        let p = pos("8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1");
        assert_eq!(p.perft(1), 14);
        assert_eq!(p.perft(2), 191);
        assert_eq!(p.perft(3), 2812);
    }

    #[test]
    fn absolutely_pinned_knight_cannot_move() {
        let p = pos("4k3/8/2n5/1B6/8/8/8/4K3 b - - 0 1");
        let c6 = sq("c6");
        assert!(p.legal_moves().iter().all(|m| m.from != c6));
    }

    #[test]
    fn stalemate_has_no_legal_moves() {
        let p = pos("7k/5Q2/6K1/8/8/8/8/8 b - - 0 1");
        assert!(p.legal_moves().is_empty());
        assert!(p.is_stalemate());
        assert!(!p.is_checkmate());
    }

    #[test]
    fn back_rank_mate_is_checkmate() {
        let p = pos("6k1/5ppp/8/8/8/8/8/R5K1 b - - 0 1");
        // Not mate: king is not attacked yet.
        assert!(!p.is_checkmate());
        let p = pos("R5k1/5ppp/8/8/8/8/8/6K1 b - - 0 1");
        assert!(p.is_checkmate());
    }

    #[test]
    fn apply_double_push_sets_en_passant_and_clocks() {
        let p = Position::initial();
        let next = p.apply_move(mv("e2e4")).unwrap();
        assert_eq!(next.en_passant(), Some(sq("e3")));
        assert_eq!(next.side_to_move(), Color::Black);
        assert_eq!(next.halfmove_clock(), 0);
        assert_eq!(next.fullmove_number(), 1);
        assert_eq!(next.fen(), "rnbqkbnr/pppppppp/8/8/4P3/8/PPPP1PPP/RNBQKBNR b KQkq e3 0 1");
    }

    #[test]
    fn quiet_knight_move_increments_halfmove_clock() {
        let p = Position::initial();
        let next = p.apply_move(mv("g1f3")).unwrap();
        assert_eq!(next.halfmove_clock(), 1);
        assert_eq!(next.en_passant(), None);
    }

    #[test]
    fn king_move_clears_both_castling_flags() {
        let p = pos("r3k2r/8/8/8/8/8/8/R3K2R w KQkq - 0 1");
        let next = p.apply_move(mv("e1d1")).unwrap();
        assert!(!next.castling().white_kingside);
        assert!(!next.castling().white_queenside);
        assert!(next.castling().black_kingside && next.castling().black_queenside);
    }

    #[test]
    fn rook_capture_revokes_opponent_right() {
        let p = pos("r3k2r/8/8/8/8/8/8/R3K2R w KQkq - 0 1");
        let next = p.apply_move(mv("a1a8")).unwrap();
        assert!(!next.castling().black_queenside);
        assert!(next.castling().black_kingside);
        assert!(!next.castling().white_queenside); // our rook left a1
        assert_eq!(next.halfmove_clock(), 0); // capture resets
    }

    #[test]
    fn castling_moves_the_rook_too() {
        let p = pos("r3k2r/8/8/8/8/8/8/R3K2R w KQkq - 0 1");
        let next = p.apply_move(mv("e1g1")).unwrap();
        assert_eq!(next.piece_at(sq("f1")), Some(Piece::new(Color::White, PieceKind::Rook)));
        assert_eq!(next.piece_at(sq("h1")), None);
        let next = p.apply_move(mv("e1c1")).unwrap();
        assert_eq!(next.piece_at(sq("d1")), Some(Piece::new(Color::White, PieceKind::Rook)));
        assert_eq!(next.piece_at(sq("a1")), None);
    }

    #[test]
    fn castling_through_check_is_illegal() {
        // Black rook on f8 guards f1.
        let p = pos("4kr2/8/8/8/8/8/8/R3K2R w KQ - 0 1");
        assert!(!p.legal_moves().contains(&mv("e1g1")));
        assert!(p.legal_moves().contains(&mv("e1c1")));
    }

    #[test]
    fn en_passant_capture_removes_the_pawn() {
        let p = pos("4k3/8/8/3Pp3/8/8/8/4K3 w - e6 0 2");
        let next = p.apply_move(mv("d5e6")).unwrap();
        assert_eq!(next.piece_at(sq("e5")), None);
        assert_eq!(next.piece_at(sq("e6")), Some(Piece::new(Color::White, PieceKind::Pawn)));
        assert_eq!(next.halfmove_clock(), 0);
    }

    #[test]
    fn promotion_produces_all_four_pieces() {
        let p = pos("4k3/1P6/8/8/8/8/8/4K3 w - - 0 1");
        let promos: Vec<Move> = p.legal_moves().into_iter().filter(|m| m.from == sq("b7")).collect();
        assert_eq!(promos.len(), 4);
        assert!(promos.iter().all(|m| m.promotion.is_some()));
        let queen = p.apply_move(mv("b7b8q")).unwrap();
        assert_eq!(queen.piece_at(sq("b8")), Some(Piece::new(Color::White, PieceKind::Queen)));
    }

    #[test]
    fn illegal_moves_are_rejected() {
        let p = Position::initial();
        assert_eq!(p.apply_move(mv("e2e5")), Err(super::super::IllegalMove(mv("e2e5"))));
        assert!(p.apply_move(mv("e7e5")).is_err()); // not our piece
    }

    #[test]
    fn attackers_examples() {
        let p = Position::initial();
        assert!(p.attackers_to(sq("e4"), Color::White).is_empty());

        let p = pos("3q3k/5N2/8/8/8/8/8/4K3 b - - 0 1");
        assert_eq!(p.attackers_to(sq("d8"), Color::White), vec![sq("f7")]);
        assert_eq!(p.attackers_to(sq("h8"), Color::White), vec![sq("f7")]);

        let p = pos("r3k3/8/8/8/8/8/8/4K3 b - - 0 1");
        assert_eq!(p.attackers_to(sq("a1"), Color::Black), vec![sq("a8")]);
        let blocked = pos("r3k3/8/8/8/p7/8/8/4K3 b - - 0 1");
        assert!(blocked.attackers_to(sq("a1"), Color::Black).is_empty());
    }

    #[test]
    fn mirror_is_an_involution_and_preserves_move_counts() {
        let fens = [
            START_FEN,
            "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1",
            "4k3/8/8/3Pp3/8/8/8/4K3 w - e6 0 2",
        ];
        for fen in fens {
            let p = pos(fen);
            assert_eq!(p.mirror().mirror(), p, "mirror not involutive for {fen}");
            assert_eq!(
                p.legal_moves().len(),
                p.mirror().legal_moves().len(),
                "mirror changed move count for {fen}"
            );
        }
        // The start is symmetric: mirroring changes only the side to move.
        assert_eq!(
            Position::initial().mirror().fen(),
            START_FEN.replace(" w ", " b ")
        );
    }

    #[test]
    fn mirror_swaps_material() {
        let p = pos("4k3/8/8/8/8/8/8/R3K3 w - - 0 1");
        let m = p.mirror();
        assert_eq!(p.material(Color::White) - p.material(Color::Black), 5);
        assert_eq!(m.material(Color::White) - m.material(Color::Black), -5);
    }
}
