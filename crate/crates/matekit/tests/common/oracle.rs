//! A second, deliberately naive move generator used as the perft oracle.
//!
//! All rules are re-derived here with exhaustive from/to square loops and
//! explicit geometry checks; no generation logic is shared with the library.

use matekit::chess::{CastlingRights, Color, Move, Piece, PieceKind, Position, Square};

/// Minimal game state the naive generator works on.
#[derive(Clone)]
pub struct NaiveState {
    cells: [Option<Piece>; 64],
    stm: Color,
    castling: CastlingRights,
    ep: Option<Square>,
}

impl NaiveState {
    pub fn from_position(pos: &Position) -> NaiveState {
        let mut cells = [None; 64];
        for (sq, piece) in pos.pieces() {
            cells[sq.index()] = Some(piece);
        }
        NaiveState { cells, stm: pos.side_to_move(), castling: pos.castling(), ep: pos.en_passant() }
    }

    fn at(&self, sq: Square) -> Option<Piece> {
        self.cells[sq.index()]
    }

    fn fwd(color: Color) -> i8 {
        match color {
            Color::White => 1,
            Color::Black => -1,
        }
    }

    /// Straight-line path between two squares exclusive; empty when the
    /// squares are not aligned.
    fn path(from: Square, to: Square) -> Option<Vec<Square>> {
        let df = to.file() as i8 - from.file() as i8;
        let dr = to.rank() as i8 - from.rank() as i8;
        if !(df == 0 || dr == 0 || df.abs() == dr.abs()) || (df == 0 && dr == 0) {
            return None;
        }
        let steps = df.abs().max(dr.abs());
        let (sf, sr) = (df.signum(), dr.signum());
        let mut squares = Vec::new();
        for i in 1..steps {
            squares.push(Square::new(
                (from.file() as i8 + sf * i) as u8,
                (from.rank() as i8 + sr * i) as u8,
            ));
        }
        Some(squares)
    }

    fn path_clear(&self, from: Square, to: Square) -> bool {
        Self::path(from, to).is_some_and(|squares| squares.iter().all(|&s| self.at(s).is_none()))
    }

    /// Does the piece on `from` attack `to` (capture geometry only)?
    fn attacks(&self, from: Square, to: Square) -> bool {
        let Some(piece) = self.at(from) else { return false };
        let df = to.file() as i8 - from.file() as i8;
        let dr = to.rank() as i8 - from.rank() as i8;
        if df == 0 && dr == 0 {
            return false;
        }
        match piece.kind {
            PieceKind::Pawn => df.abs() == 1 && dr == Self::fwd(piece.color),
            PieceKind::Knight => (df.abs() == 1 && dr.abs() == 2) || (df.abs() == 2 && dr.abs() == 1),
            PieceKind::King => df.abs() <= 1 && dr.abs() <= 1,
            PieceKind::Bishop => df.abs() == dr.abs() && self.path_clear(from, to),
            PieceKind::Rook => (df == 0 || dr == 0) && self.path_clear(from, to),
            PieceKind::Queen => {
                (df == 0 || dr == 0 || df.abs() == dr.abs()) && self.path_clear(from, to)
            }
        }
    }

    pub fn attacked_by(&self, sq: Square, by: Color) -> bool {
        Square::all()
            .any(|s| self.at(s).is_some_and(|p| p.color == by) && self.attacks(s, sq))
    }

    /// Public capture-geometry probe for the tactic oracles.
    pub fn attacks_from(&self, from: Square, to: Square) -> bool {
        self.attacks(from, to)
    }

    fn king_square(&self, color: Color) -> Square {
        Square::all()
            .find(|&s| self.at(s) == Some(Piece::new(color, PieceKind::King)))
            .expect("king present")
    }

    /// Geometric (pseudo-legal) validity of a non-castling move.
    fn pseudo_ok(&self, mv: Move) -> bool {
        let Some(piece) = self.at(mv.from) else { return false };
        if piece.color != self.stm {
            return false;
        }
        if self.at(mv.to).is_some_and(|p| p.color == self.stm) {
            return false;
        }
        let df = mv.to.file() as i8 - mv.from.file() as i8;
        let dr = mv.to.rank() as i8 - mv.from.rank() as i8;
        let geometric = match piece.kind {
            PieceKind::Pawn => {
                let fwd = Self::fwd(piece.color);
                let start_rank = if piece.color == Color::White { 1 } else { 6 };
                let push = df == 0 && dr == fwd && self.at(mv.to).is_none();
                let double = df == 0
                    && dr == 2 * fwd
                    && mv.from.rank() == start_rank
                    && self.at(mv.to).is_none()
                    && self.at(mv.from.offset(0, fwd).unwrap()).is_none();
                let capture = df.abs() == 1
                    && dr == fwd
                    && (self.at(mv.to).is_some_and(|p| p.color != piece.color)
                        || self.ep == Some(mv.to));
                push || double || capture
            }
            PieceKind::King => df.abs() <= 1 && dr.abs() <= 1 && (df, dr) != (0, 0),
            _ => self.attacks(mv.from, mv.to),
        };
        if !geometric {
            return false;
        }
        // Promotion discipline: exactly on the last rank, one of four kinds.
        let last_rank = if piece.color == Color::White { 7 } else { 0 };
        if piece.kind == PieceKind::Pawn && mv.to.rank() == last_rank {
            matches!(
                mv.promotion,
                Some(PieceKind::Knight | PieceKind::Bishop | PieceKind::Rook | PieceKind::Queen)
            )
        } else {
            mv.promotion.is_none()
        }
    }

    pub fn apply(&self, mv: Move) -> NaiveState {
        let mut next = self.clone();
        let piece = self.at(mv.from).expect("move origin occupied");
        next.cells[mv.from.index()] = None;
        next.cells[mv.to.index()] = Some(match mv.promotion {
            Some(kind) => Piece::new(piece.color, kind),
            None => piece,
        });
        // En passant capture.
        if piece.kind == PieceKind::Pawn && self.ep == Some(mv.to) && self.at(mv.to).is_none() {
            let victim = mv.to.offset(0, -Self::fwd(piece.color)).unwrap();
            next.cells[victim.index()] = None;
        }
        // Castling rook hop.
        if piece.kind == PieceKind::King
            && mv.from.file() == 4
            && (mv.to.file() as i8 - 4).abs() == 2
        {
            let rank = mv.from.rank();
            let (rook_from, rook_to) = if mv.to.file() == 6 { (7, 5) } else { (0, 3) };
            next.cells[Square::new(rook_to, rank).index()] =
                next.cells[Square::new(rook_from, rank).index()].take();
        }
        // Rights.
        if piece.kind == PieceKind::King {
            if piece.color == Color::White {
                next.castling.white_kingside = false;
                next.castling.white_queenside = false;
            } else {
                next.castling.black_kingside = false;
                next.castling.black_queenside = false;
            }
        }
        for sq in [mv.from, mv.to] {
            match (sq.file(), sq.rank()) {
                (0, 0) => next.castling.white_queenside = false,
                (7, 0) => next.castling.white_kingside = false,
                (0, 7) => next.castling.black_queenside = false,
                (7, 7) => next.castling.black_kingside = false,
                _ => {}
            }
        }
        next.ep = if piece.kind == PieceKind::Pawn
            && (mv.to.rank() as i8 - mv.from.rank() as i8).abs() == 2
        {
            mv.from.offset(0, Self::fwd(piece.color))
        } else {
            None
        };
        next.stm = match self.stm {
            Color::White => Color::Black,
            Color::Black => Color::White,
        };
        next
    }

    /// All legal moves via exhaustive from/to enumeration plus castling.
    pub fn legal_moves(&self) -> Vec<Move> {
        let mut out = Vec::new();
        let promos =
            [None, Some(PieceKind::Knight), Some(PieceKind::Bishop), Some(PieceKind::Rook), Some(PieceKind::Queen)];
        for from in Square::all() {
            for to in Square::all() {
                for promotion in promos {
                    let mv = Move { from, to, promotion };
                    if !self.pseudo_ok(mv) {
                        continue;
                    }
                    let next = self.apply(mv);
                    if !next.attacked_by(next.king_square(self.stm), next.stm) {
                        out.push(mv);
                    }
                }
            }
        }
        // Castling, checked explicitly.
        let rank = if self.stm == Color::White { 0 } else { 7 };
        let them = match self.stm {
            Color::White => Color::Black,
            Color::Black => Color::White,
        };
        let king_home = Square::new(4, rank);
        let (kingside, queenside) = match self.stm {
            Color::White => (self.castling.white_kingside, self.castling.white_queenside),
            Color::Black => (self.castling.black_kingside, self.castling.black_queenside),
        };
        if self.at(king_home) == Some(Piece::new(self.stm, PieceKind::King))
            && !self.attacked_by(king_home, them)
        {
            if kingside
                && self.at(Square::new(7, rank)) == Some(Piece::new(self.stm, PieceKind::Rook))
                && [5u8, 6]
                    .iter()
                    .all(|&f| self.at(Square::new(f, rank)).is_none())
                && [5u8, 6]
                    .iter()
                    .all(|&f| !self.attacked_by(Square::new(f, rank), them))
            {
                out.push(Move::new(king_home, Square::new(6, rank)));
            }
            if queenside
                && self.at(Square::new(0, rank)) == Some(Piece::new(self.stm, PieceKind::Rook))
                && [1u8, 2, 3]
                    .iter()
                    .all(|&f| self.at(Square::new(f, rank)).is_none())
                && [2u8, 3]
                    .iter()
                    .all(|&f| !self.attacked_by(Square::new(f, rank), them))
            {
                out.push(Move::new(king_home, Square::new(2, rank)));
            }
        }
        out
    }

    pub fn perft(&self, depth: u32) -> u64 {
        if depth == 0 {
            return 1;
        }
        let moves = self.legal_moves();
        if depth == 1 {
            return moves.len() as u64;
        }
        moves.iter().map(|&mv| self.apply(mv).perft(depth - 1)).sum()
    }
}

/// Root move list according to the naive generator, sorted for comparison.
pub fn naive_moves_sorted(pos: &Position) -> Vec<String> {
    let mut moves: Vec<String> =
        NaiveState::from_position(pos).legal_moves().iter().map(Move::to_string).collect();
    moves.sort();
    moves
}

pub fn naive_perft(pos: &Position, depth: u32) -> u64 {
    NaiveState::from_position(pos).perft(depth)
}
