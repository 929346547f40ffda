//! Chess domain model: squares, pieces, moves, full positions, FEN and UCI
//! text forms, legal move generation and perft counting.
//!
//! `Position` and `Move` are immutable values; every operation here is a pure
//! function, so they can be shared freely between threads.

mod fen;
mod movegen;
mod playout;

pub use fen::FenError;
pub use playout::random_playout;

pub(crate) use movegen::{
    pseudo_destinations, BISHOP_DIRS, KING_STEPS, KNIGHT_STEPS, ROOK_DIRS,
};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Side to move or piece owner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn opponent(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }

    /// FEN side-to-move letter, `w` or `b`.
    pub fn fen_char(self) -> char {
        match self {
            Color::White => 'w',
            Color::Black => 'b',
        }
    }

    /// Rank direction pawns of this color advance in (+1 for white).
    pub(crate) fn forward(self) -> i8 {
        match self {
            Color::White => 1,
            Color::Black => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PieceKind {
    Pawn,
    Knight,
    Bishop,
    Rook,
    Queen,
    King,
}

impl PieceKind {
    /// Conventional exchange value in pawn units. The king has no exchange
    /// value; callers that care about royalty must special-case it.
    pub fn value(self) -> i32 {
        match self {
            PieceKind::Pawn => 1,
            PieceKind::Knight | PieceKind::Bishop => 3,
            PieceKind::Rook => 5,
            PieceKind::Queen => 9,
            PieceKind::King => 0,
        }
    }

    /// Lowercase FEN/UCI letter for this kind.
    pub fn letter(self) -> char {
        match self {
            PieceKind::Pawn => 'p',
            PieceKind::Knight => 'n',
            PieceKind::Bishop => 'b',
            PieceKind::Rook => 'r',
            PieceKind::Queen => 'q',
            PieceKind::King => 'k',
        }
    }

    fn from_letter(c: char) -> Option<PieceKind> {
        Some(match c.to_ascii_lowercase() {
            'p' => PieceKind::Pawn,
            'n' => PieceKind::Knight,
            'b' => PieceKind::Bishop,
            'r' => PieceKind::Rook,
            'q' => PieceKind::Queen,
            'k' => PieceKind::King,
            _ => return None,
        })
    }

    pub fn is_slider(self) -> bool {
        matches!(self, PieceKind::Bishop | PieceKind::Rook | PieceKind::Queen)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Piece {
    pub kind: PieceKind,
    pub color: Color,
}

impl Piece {
    pub fn new(color: Color, kind: PieceKind) -> Piece {
        Piece { kind, color }
    }

    /// FEN letter: uppercase for white, lowercase for black.
    pub fn fen_char(self) -> char {
        match self.color {
            Color::White => self.kind.letter().to_ascii_uppercase(),
            Color::Black => self.kind.letter(),
        }
    }

    pub fn from_fen_char(c: char) -> Option<Piece> {
        let kind = PieceKind::from_letter(c)?;
        let color = if c.is_ascii_uppercase() { Color::White } else { Color::Black };
        Some(Piece { kind, color })
    }
}

/// Board coordinate. File 0..8 maps to a..h, rank 0..8 maps to 1..8.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square(u8);

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid square {0:?}: expected a file letter a-h and a rank digit 1-8")]
pub struct SquareParseError(pub String);

impl Square {
    pub const COUNT: usize = 64;

    /// Builds a square from 0-based file and rank. Panics out of range.
    pub fn new(file: u8, rank: u8) -> Square {
        assert!(file < 8 && rank < 8, "square coordinates out of range: file {file}, rank {rank}");
        Square(rank * 8 + file)
    }

    pub fn from_index(index: u8) -> Square {
        assert!(index < 64, "square index out of range: {index}");
        Square(index)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn file(self) -> u8 {
        self.0 % 8
    }

    pub fn rank(self) -> u8 {
        self.0 / 8
    }

    /// Square shifted by (file, rank) deltas, or `None` off the board.
    pub fn offset(self, df: i8, dr: i8) -> Option<Square> {
        let f = self.file() as i8 + df;
        let r = self.rank() as i8 + dr;
        if (0..8).contains(&f) && (0..8).contains(&r) {
            Some(Square::new(f as u8, r as u8))
        } else {
            None
        }
    }

    /// Vertical flip, used when mirroring positions.
    pub fn flip_rank(self) -> Square {
        Square::new(self.file(), 7 - self.rank())
    }

    pub fn all() -> impl Iterator<Item = Square> {
        (0..64).map(Square)
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", (b'a' + self.file()) as char, self.rank() + 1)
    }
}

impl fmt::Debug for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Square {
    type Err = SquareParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        let (Some(fc), Some(rc), None) = (chars.next(), chars.next(), chars.next()) else {
            return Err(SquareParseError(s.to_string()));
        };
        if !('a'..='h').contains(&fc) || !('1'..='8').contains(&rc) {
            return Err(SquareParseError(s.to_string()));
        }
        Ok(Square::new(fc as u8 - b'a', rc as u8 - b'1'))
    }
}

/// A move in from/to form with an optional promotion piece, mirroring the
/// UCI text encoding (`e2e4`, `e7e8q`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub from: Square,
    pub to: Square,
    pub promotion: Option<PieceKind>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveParseError {
    #[error("move text {0:?} must be 4 or 5 characters")]
    BadLength(String),
    #[error("move text {0:?} has an out-of-range coordinate")]
    BadSquare(String),
    #[error("invalid promotion letter {1:?} in {0:?}: expected one of n, b, r, q")]
    BadPromotion(String, char),
}

impl Move {
    pub fn new(from: Square, to: Square) -> Move {
        Move { from, to, promotion: None }
    }

    pub fn promoting(from: Square, to: Square, kind: PieceKind) -> Move {
        Move { from, to, promotion: Some(kind) }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.from, self.to)?;
        if let Some(kind) = self.promotion {
            write!(f, "{}", kind.letter())?;
        }
        Ok(())
    }
}

impl FromStr for Move {
    type Err = MoveParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.len() != 4 && s.len() != 5 {
            return Err(MoveParseError::BadLength(s.to_string()));
        }
        let from: Square = s[0..2].parse().map_err(|_| MoveParseError::BadSquare(s.to_string()))?;
        let to: Square = s[2..4].parse().map_err(|_| MoveParseError::BadSquare(s.to_string()))?;
        let promotion = match s[4..].chars().next() {
            None => None,
            Some(c) => match c {
                'n' => Some(PieceKind::Knight),
                'b' => Some(PieceKind::Bishop),
                'r' => Some(PieceKind::Rook),
                'q' => Some(PieceKind::Queen),
                _ => return Err(MoveParseError::BadPromotion(s.to_string(), c)),
            },
        };
        Ok(Move { from, to, promotion })
    }
}

/// Per-side castling availability, one flag per FEN castling token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CastlingRights {
    pub white_kingside: bool,
    pub white_queenside: bool,
    pub black_kingside: bool,
    pub black_queenside: bool,
}

impl CastlingRights {
    pub fn all() -> CastlingRights {
        CastlingRights {
            white_kingside: true,
            white_queenside: true,
            black_kingside: true,
            black_queenside: true,
        }
    }

    pub fn none() -> CastlingRights {
        CastlingRights::default()
    }

    pub fn any(self) -> bool {
        self.white_kingside || self.white_queenside || self.black_kingside || self.black_queenside
    }

    /// Swaps white and black rights (vertical mirror).
    fn swapped(self) -> CastlingRights {
        CastlingRights {
            white_kingside: self.black_kingside,
            white_queenside: self.black_queenside,
            black_kingside: self.white_kingside,
            black_queenside: self.white_queenside,
        }
    }
}

/// Violation of a structural position invariant.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PositionError {
    #[error("{0:?} has no king")]
    NoKing(Color),
    #[error("{0:?} has more than one king")]
    MultipleKings(Color),
    #[error("pawn on back rank at {0}")]
    PawnOnBackRank(Square),
    #[error("the side not to move is in check")]
    OpponentInCheck,
    #[error("castling right {0:?} set but king or rook is off its home square")]
    CastlingWithoutHomePieces(char),
    #[error("en passant square {0} is not on the capture rank for the side to move")]
    BadEnPassantRank(Square),
}

/// Attempt to apply a move that is not legal in the position.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("move {0} is not legal in this position")]
pub struct IllegalMove(pub Move);

/// Full game state: piece placement plus the five auxiliary FEN fields.
///
/// Equality is field-wise over all six components, which is what the FEN
/// round-trip guarantees rely on.
#[derive(Clone, PartialEq, Eq)]
pub struct Position {
    board: [Option<Piece>; 64],
    side_to_move: Color,
    castling: CastlingRights,
    en_passant: Option<Square>,
    halfmove_clock: u32,
    fullmove_number: u32,
}

pub const START_FEN: &str = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

impl Position {
    /// The standard initial position.
    pub fn initial() -> Position {
        START_FEN.parse().expect("start FEN is valid")
    }

    pub fn piece_at(&self, sq: Square) -> Option<Piece> {
        self.board[sq.index()]
    }

    pub fn side_to_move(&self) -> Color {
        self.side_to_move
    }

    pub fn castling(&self) -> CastlingRights {
        self.castling
    }

    pub fn en_passant(&self) -> Option<Square> {
        self.en_passant
    }

    pub fn halfmove_clock(&self) -> u32 {
        self.halfmove_clock
    }

    pub fn fullmove_number(&self) -> u32 {
        self.fullmove_number
    }

    /// Iterates over all occupied squares.
    pub fn pieces(&self) -> impl Iterator<Item = (Square, Piece)> + '_ {
        Square::all().filter_map(move |sq| self.piece_at(sq).map(|p| (sq, p)))
    }

    /// The king square for `color`. Valid positions always have one.
    pub fn king_square(&self, color: Color) -> Square {
        self.pieces()
            .find(|(_, p)| p.kind == PieceKind::King && p.color == color)
            .map(|(sq, _)| sq)
            .expect("valid position has a king per side")
    }

    /// Sum of conventional piece values (kings excluded) for one side.
    pub fn material(&self, color: Color) -> i32 {
        self.pieces()
            .filter(|(_, p)| p.color == color)
            .map(|(_, p)| p.kind.value())
            .sum()
    }

    /// All legal moves for the side to move.
    pub fn legal_moves(&self) -> Vec<Move> {
        movegen::legal_moves(self)
    }

    /// Whether `color`'s king is currently attacked.
    pub fn in_check(&self, color: Color) -> bool {
        movegen::is_attacked(self, self.king_square(color), color.opponent())
    }

    /// True if the side to move has no legal moves and is in check.
    pub fn is_checkmate(&self) -> bool {
        self.legal_moves().is_empty() && self.in_check(self.side_to_move)
    }

    /// True if the side to move has no legal moves and is not in check.
    pub fn is_stalemate(&self) -> bool {
        self.legal_moves().is_empty() && !self.in_check(self.side_to_move)
    }

    /// Squares holding `by`-colored pieces that attack `sq`, ascending.
    pub fn attackers_to(&self, sq: Square, by: Color) -> Vec<Square> {
        movegen::attackers_to(self, sq, by)
    }

    /// Applies a legal move, returning the successor position.
    pub fn apply_move(&self, mv: Move) -> Result<Position, IllegalMove> {
        if !self.legal_moves().contains(&mv) {
            return Err(IllegalMove(mv));
        }
        Ok(self.apply_unchecked(mv))
    }

    /// Leaf count of the legal move tree at exactly `depth`.
    pub fn perft(&self, depth: u32) -> u64 {
        movegen::perft(self, depth)
    }

    /// Vertical flip with colors, side to move, castling rights and the en
    /// passant square swapped. An involution: `p.mirror().mirror() == p`.
    pub fn mirror(&self) -> Position {
        let mut board = [None; 64];
        for (sq, piece) in self.pieces() {
            board[sq.flip_rank().index()] =
                Some(Piece::new(piece.color.opponent(), piece.kind));
        }
        Position {
            board,
            side_to_move: self.side_to_move.opponent(),
            castling: self.castling.swapped(),
            en_passant: self.en_passant.map(Square::flip_rank),
            halfmove_clock: self.halfmove_clock,
            fullmove_number: self.fullmove_number,
        }
    }

    /// Checks the structural invariants every `Position` must satisfy.
    pub fn validate(&self) -> Result<(), PositionError> {
        for color in [Color::White, Color::Black] {
            let kings = self
                .pieces()
                .filter(|(_, p)| p.kind == PieceKind::King && p.color == color)
                .count();
            if kings == 0 {
                return Err(PositionError::NoKing(color));
            }
            if kings > 1 {
                return Err(PositionError::MultipleKings(color));
            }
        }
        for (sq, piece) in self.pieces() {
            if piece.kind == PieceKind::Pawn && (sq.rank() == 0 || sq.rank() == 7) {
                return Err(PositionError::PawnOnBackRank(sq));
            }
        }
        if self.in_check(self.side_to_move.opponent()) {
            return Err(PositionError::OpponentInCheck);
        }
        let home = |sq: &str, piece: Piece| -> bool {
            let sq: Square = sq.parse().expect("literal square");
            self.piece_at(sq) == Some(piece)
        };
        let checks = [
            (self.castling.white_kingside, 'K', "e1", "h1", Color::White),
            (self.castling.white_queenside, 'Q', "e1", "a1", Color::White),
            (self.castling.black_kingside, 'k', "e8", "h8", Color::Black),
            (self.castling.black_queenside, 'q', "e8", "a8", Color::Black),
        ];
        for (right, token, king_sq, rook_sq, color) in checks {
            if right
                && !(home(king_sq, Piece::new(color, PieceKind::King))
                    && home(rook_sq, Piece::new(color, PieceKind::Rook)))
            {
                return Err(PositionError::CastlingWithoutHomePieces(token));
            }
        }
        if let Some(ep) = self.en_passant {
            let expected_rank = match self.side_to_move {
                Color::White => 5, // opponent's double push landed on rank 6
                Color::Black => 2,
            };
            if ep.rank() != expected_rank {
                return Err(PositionError::BadEnPassantRank(ep));
            }
        }
        Ok(())
    }

    // -- crate-internal construction and mutation --

    pub(crate) fn empty() -> Position {
        Position {
            board: [None; 64],
            side_to_move: Color::White,
            castling: CastlingRights::none(),
            en_passant: None,
            halfmove_clock: 0,
            fullmove_number: 1,
        }
    }

    pub(crate) fn set_piece(&mut self, sq: Square, piece: Option<Piece>) {
        self.board[sq.index()] = piece;
    }

    pub(crate) fn set_side_to_move(&mut self, c: Color) {
        self.side_to_move = c;
    }

    pub(crate) fn set_castling(&mut self, c: CastlingRights) {
        self.castling = c;
    }

    pub(crate) fn set_en_passant(&mut self, sq: Option<Square>) {
        self.en_passant = sq;
    }

    pub(crate) fn set_clocks(&mut self, halfmove: u32, fullmove: u32) {
        self.halfmove_clock = halfmove;
        self.fullmove_number = fullmove;
    }

    /// Applies a move assumed to be legal (or at least pseudo-legal when
    /// called from the generator's legality filter).
    pub(crate) fn apply_unchecked(&self, mv: Move) -> Position {
        let mut next = self.clone();
        let piece = self.piece_at(mv.from).expect("move origin is occupied");
        let mover = piece.color;
        let captured = self.piece_at(mv.to);

        next.set_piece(mv.from, None);
        let placed = match mv.promotion {
            Some(kind) => Piece::new(mover, kind),
            None => piece,
        };
        next.set_piece(mv.to, Some(placed));

        // En passant capture removes the pawn behind the target square.
        let is_ep_capture = piece.kind == PieceKind::Pawn && Some(mv.to) == self.en_passant;
        if is_ep_capture {
            let victim = mv.to.offset(0, -mover.forward()).expect("ep victim on board");
            next.set_piece(victim, None);
        }

        // Castling: move the rook as well.
        if piece.kind == PieceKind::King && mv.from.file() == 4 {
            let rank = mv.from.rank();
            if mv.to.file() == 6 {
                next.set_piece(Square::new(7, rank), None);
                next.set_piece(Square::new(5, rank), Some(Piece::new(mover, PieceKind::Rook)));
            } else if mv.to.file() == 2 {
                next.set_piece(Square::new(0, rank), None);
                next.set_piece(Square::new(3, rank), Some(Piece::new(mover, PieceKind::Rook)));
            }
        }

        // Castling rights: king moves clear both, rook moves or captures on a
        // rook home square clear the matching one.
        let mut castling = self.castling;
        if piece.kind == PieceKind::King {
            match mover {
                Color::White => {
                    castling.white_kingside = false;
                    castling.white_queenside = false;
                }
                Color::Black => {
                    castling.black_kingside = false;
                    castling.black_queenside = false;
                }
            }
        }
        for sq in [mv.from, mv.to] {
            match (sq.file(), sq.rank()) {
                (0, 0) => castling.white_queenside = false,
                (7, 0) => castling.white_kingside = false,
                (0, 7) => castling.black_queenside = false,
                (7, 7) => castling.black_kingside = false,
                _ => {}
            }
        }
        next.set_castling(castling);

        // En passant target appears only after a double pawn push.
        let double_push = piece.kind == PieceKind::Pawn
            && (mv.to.rank() as i8 - mv.from.rank() as i8).abs() == 2;
        next.set_en_passant(if double_push {
            mv.from.offset(0, mover.forward())
        } else {
            None
        });

        let halfmove = if piece.kind == PieceKind::Pawn || captured.is_some() || is_ep_capture {
            0
        } else {
            self.halfmove_clock + 1
        };
        let fullmove = match mover {
            Color::White => self.fullmove_number,
            Color::Black => self.fullmove_number + 1,
        };
        next.set_clocks(halfmove, fullmove);
        next.set_side_to_move(mover.opponent());
        next
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Position({})", self.fen())
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fen())
    }
}

impl FromStr for Position {
    type Err = FenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Position::from_fen(s)
    }
}
