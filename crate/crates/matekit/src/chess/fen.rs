//! FEN parsing and rendering.
//!
//! The record has six space-separated fields; the two clock fields may be
//! omitted on input (common in puzzle dumps) and default to `0` and `1`.
//! Output always carries all six fields.

use std::fmt::Write as _;

use thiserror::Error;

use super::{CastlingRights, Color, Piece, Position, PositionError, Square};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FenError {
    #[error("expected 4 to 6 space-separated fields, found {0}")]
    FieldCount(usize),
    #[error("field 1 (placement): expected 8 ranks, found {0}")]
    RankCount(usize),
    #[error("field 1 (placement): row {row} describes {squares} squares, expected 8")]
    RankWidth { row: usize, squares: usize },
    #[error("field 1 (placement): illegal piece letter {0:?}")]
    BadPieceChar(char),
    #[error("field 2 (side to move): expected \"w\" or \"b\", found {0:?}")]
    BadSide(String),
    #[error("field 3 (castling): invalid token {0:?}")]
    BadCastling(String),
    #[error("field 4 (en passant): invalid square {0:?}")]
    BadEnPassant(String),
    #[error("field 5 (halfmove clock): {0:?} is not a non-negative integer")]
    BadHalfmove(String),
    #[error("field 6 (fullmove number): {0:?} is not a positive integer")]
    BadFullmove(String),
    #[error("position invalid: {0}")]
    Invalid(#[from] PositionError),
}

impl Position {
    /// Parses a FEN record and validates the resulting position.
    pub fn from_fen(text: &str) -> Result<Position, FenError> {
        let fields: Vec<&str> = text.split_whitespace().collect();
        if !(4..=6).contains(&fields.len()) {
            return Err(FenError::FieldCount(fields.len()));
        }

        let mut pos = Position::empty();

        // Field 1: placement, ranks 8 down to 1.
        let rows: Vec<&str> = fields[0].split('/').collect();
        if rows.len() != 8 {
            return Err(FenError::RankCount(rows.len()));
        }
        for (i, row) in rows.iter().enumerate() {
            let rank = 7 - i as u8;
            let mut file = 0u32;
            for c in row.chars() {
                if let Some(n) = c.to_digit(10) {
                    if n == 0 || n > 8 {
                        return Err(FenError::BadPieceChar(c));
                    }
                    file += n;
                } else {
                    let piece = Piece::from_fen_char(c).ok_or(FenError::BadPieceChar(c))?;
                    if file >= 8 {
                        return Err(FenError::RankWidth { row: i + 1, squares: file as usize + 1 });
                    }
                    pos.set_piece(Square::new(file as u8, rank), Some(piece));
                    file += 1;
                }
            }
            if file != 8 {
                return Err(FenError::RankWidth { row: i + 1, squares: file as usize });
            }
        }

        // Field 2: side to move.
        pos.set_side_to_move(match fields[1] {
            "w" => Color::White,
            "b" => Color::Black,
            other => return Err(FenError::BadSide(other.to_string())),
        });

        // Field 3: castling rights.
        let mut castling = CastlingRights::none();
        if fields[2] != "-" {
            if fields[2].is_empty() {
                return Err(FenError::BadCastling(fields[2].to_string()));
            }
            for c in fields[2].chars() {
                let flag = match c {
                    'K' => &mut castling.white_kingside,
                    'Q' => &mut castling.white_queenside,
                    'k' => &mut castling.black_kingside,
                    'q' => &mut castling.black_queenside,
                    _ => return Err(FenError::BadCastling(fields[2].to_string())),
                };
                if *flag {
                    // Repeated token.
                    return Err(FenError::BadCastling(fields[2].to_string()));
                }
                *flag = true;
            }
        }
        pos.set_castling(castling);

        // Field 4: en passant target.
        if fields[3] != "-" {
            let sq: Square = fields[3]
                .parse()
                .map_err(|_| FenError::BadEnPassant(fields[3].to_string()))?;
            pos.set_en_passant(Some(sq));
        }

        // Fields 5 and 6: clocks, optional.
        let halfmove = match fields.get(4) {
            None => 0,
            Some(s) => s.parse::<u32>().map_err(|_| FenError::BadHalfmove(s.to_string()))?,
        };
        let fullmove = match fields.get(5) {
            None => 1,
            Some(s) => match s.parse::<u32>() {
                Ok(n) if n >= 1 => n,
                _ => return Err(FenError::BadFullmove(s.to_string())),
            },
        };
        pos.set_clocks(halfmove, fullmove);

        pos.validate()?;
        Ok(pos)
    }

    /// Renders the six-field FEN record for this position.
    pub fn fen(&self) -> String {
        let mut out = String::with_capacity(80);
        for rank in (0..8).rev() {
            let mut empty = 0;
            for file in 0..8 {
                match self.piece_at(Square::new(file, rank)) {
                    Some(piece) => {
                        if empty > 0 {
                            write!(out, "{empty}").unwrap();
                            empty = 0;
                        }
                        out.push(piece.fen_char());
                    }
                    None => empty += 1,
                }
            }
            if empty > 0 {
                write!(out, "{empty}").unwrap();
            }
            if rank > 0 {
                out.push('/');
            }
        }
        out.push(' ');
        out.push(self.side_to_move().fen_char());
        out.push(' ');
        let castling = self.castling();
        if castling.any() {
            if castling.white_kingside {
                out.push('K');
            }
            if castling.white_queenside {
                out.push('Q');
            }
            if castling.black_kingside {
                out.push('k');
            }
            if castling.black_queenside {
                out.push('q');
            }
        } else {
            out.push('-');
        }
        out.push(' ');
        match self.en_passant() {
            Some(sq) => write!(out, "{sq}").unwrap(),
            None => out.push('-'),
        }
        write!(out, " {} {}", self.halfmove_clock(), self.fullmove_number()).unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Color, PieceKind, START_FEN};
    use super::*;

    #[test]
    fn parses_initial_position() {
        let p = Position::from_fen(START_FEN).unwrap();
        assert_eq!(p.side_to_move(), Color::White);
        assert!(p.castling().white_kingside && p.castling().black_queenside);
        assert_eq!(p.en_passant(), None);
        assert_eq!(p.halfmove_clock(), 0);
        assert_eq!(p.fullmove_number(), 1);
        let e2: Square = "e2".parse().unwrap();
        assert_eq!(p.piece_at(e2), Some(Piece::new(Color::White, PieceKind::Pawn)));
        assert_eq!(p.pieces().count(), 32);
    }

    #[test]
    fn parses_two_king_position() {
        let p = Position::from_fen("4k3/8/8/8/8/8/8/4K3 w - - 0 1").unwrap();
        assert!(!p.castling().any());
        assert_eq!(p.en_passant(), None);
        assert_eq!(p.pieces().count(), 2);
    }

    #[test]
    fn rejects_missing_kings() {
        let err = Position::from_fen("8/8/8/8/8/8/8/8 w - - 0 1").unwrap_err();
        assert_eq!(err, FenError::Invalid(PositionError::NoKing(Color::White)));
    }

    #[test]
    fn rejects_row_not_summing_to_eight() {
        let err = Position::from_fen("rnbqkbnr/ppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1")
            .unwrap_err();
        assert_eq!(err, FenError::RankWidth { row: 2, squares: 7 });
    }

    #[test]
    fn rejects_bad_field_counts_and_letters() {
        assert!(matches!(
            Position::from_fen("4k3/8/8/8/8/8/8/4K3 w -"),
            Err(FenError::FieldCount(3))
        ));
        assert!(matches!(
            Position::from_fen("4x3/8/8/8/8/8/8/4K3 w - - 0 1"),
            Err(FenError::BadPieceChar('x'))
        ));
        assert!(matches!(
            Position::from_fen("4k3/8/8/8/8/8/8/4K3 W - - 0 1"),
            Err(FenError::BadSide(_))
        ));
        assert!(matches!(
            Position::from_fen("4k3/8/8/8/8/8/8/4K3 w KX - 0 1"),
            Err(FenError::BadCastling(_))
        ));
        assert!(matches!(
            Position::from_fen("4k3/8/8/8/8/8/8/4K3 w - e9 0 1"),
            Err(FenError::BadEnPassant(_))
        ));
        assert!(matches!(
            Position::from_fen("4k3/8/8/8/8/8/8/4K3 w - - -3 1"),
            Err(FenError::BadHalfmove(_))
        ));
        assert!(matches!(
            Position::from_fen("4k3/8/8/8/8/8/8/4K3 w - - 0 0"),
            Err(FenError::BadFullmove(_))
        ));
    }

    #[test]
    fn rejects_castling_rights_without_home_pieces() {
        let err = Position::from_fen("4k3/8/8/8/8/8/8/4K3 w K - 0 1").unwrap_err();
        assert_eq!(err, FenError::Invalid(PositionError::CastlingWithoutHomePieces('K')));
    }

    #[test]
    fn rejects_multiple_kings() {
        let err = Position::from_fen("4k3/8/8/8/8/8/8/2K1K3 w - - 0 1").unwrap_err();
        assert_eq!(err, FenError::Invalid(PositionError::MultipleKings(Color::White)));
    }

    #[test]
    fn clock_fields_optional_on_input_always_emitted() {
        let p = Position::from_fen("4k3/8/8/8/8/8/8/4K3 w - -").unwrap();
        assert_eq!(p.halfmove_clock(), 0);
        assert_eq!(p.fullmove_number(), 1);
        assert_eq!(p.fen(), "4k3/8/8/8/8/8/8/4K3 w - - 0 1");
    }

    #[test]
    fn round_trips_initial_fen() {
        let p = Position::from_fen(START_FEN).unwrap();
        assert_eq!(p.fen(), START_FEN);
        assert_eq!(Position::from_fen(&p.fen()).unwrap(), p);
    }

    #[test]
    fn en_passant_rank_must_match_side_to_move() {
        // White to move: the en passant target must sit on rank 6.
        let err = Position::from_fen("4k3/8/8/8/8/8/8/4K3 w - e3 0 1").unwrap_err();
        assert_eq!(
            err,
            FenError::Invalid(PositionError::BadEnPassantRank("e3".parse().unwrap()))
        );
        let p = Position::from_fen("rnbqkbnr/ppp1pppp/8/3pP3/8/8/PPPP1PPP/RNBQKBNR w KQkq d6 0 3")
            .unwrap();
        assert_eq!(p.en_passant(), Some("d6".parse().unwrap()));
    }
}
