//! Rule-based long-term strategy classification.
//!
//! Five plan categories are derived from board features: material count,
//! piece activity, pawn structure, space and king safety. Features are
//! measured from White's point of view (positive favors White); use
//! [`StrategyFeatures::pov`] to re-orient them for the side a text is
//! written for. Classification looks only at magnitudes and per-side
//! comparisons, so it is independent of the orientation.

mod templates;

pub use templates::{
    position_seed, render_strategy_text, render_strategy_text_with, StrategyAnnotation,
    StrategyTemplates, TemplateError,
};

use serde::{Deserialize, Serialize};

use crate::chess::{pseudo_destinations, Color, PieceKind, Position, Square, KING_STEPS};

/// The five long-term plan categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyCategory {
    MaterialCount,
    PieceActivity,
    PawnStructure,
    Space,
    KingSafety,
}

impl StrategyCategory {
    pub const ALL: [StrategyCategory; 5] = [
        StrategyCategory::MaterialCount,
        StrategyCategory::PieceActivity,
        StrategyCategory::PawnStructure,
        StrategyCategory::Space,
        StrategyCategory::KingSafety,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StrategyCategory::MaterialCount => "material_count",
            StrategyCategory::PieceActivity => "piece_activity",
            StrategyCategory::PawnStructure => "pawn_structure",
            StrategyCategory::Space => "space",
            StrategyCategory::KingSafety => "king_safety",
        }
    }
}

/// Per-side pawn structure counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PawnCounts {
    pub doubled: u32,
    pub isolated: u32,
    pub passed: u32,
}

/// Board measurements backing the classifier. Signed deltas are
/// white-minus-black; mirroring a position negates every delta and swaps the
/// per-side counters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyFeatures {
    /// Material difference in pawn units (P=1, N=B=3, R=5, Q=9).
    pub material_delta: i32,
    /// Centralization weight sum plus 0.1 x pseudo-mobility difference.
    pub activity_delta: f64,
    /// Difference in squares controlled or occupied in the opposing half.
    pub space_delta: i32,
    pub white_pawns: PawnCounts,
    pub black_pawns: PawnCounts,
    /// Friendly pawns on the three files around the king, up to two ranks
    /// ahead of it.
    pub white_king_shield: u32,
    pub black_king_shield: u32,
    /// Enemy pieces attacking any square of the king's 8-neighborhood.
    pub white_king_attackers: u32,
    pub black_king_attackers: u32,
    pub total_pawns: u32,
}

impl StrategyFeatures {
    /// Re-orients the features so positive deltas favor `side`.
    pub fn pov(self, side: Color) -> StrategyFeatures {
        match side {
            Color::White => self,
            Color::Black => StrategyFeatures {
                material_delta: -self.material_delta,
                activity_delta: -self.activity_delta,
                space_delta: -self.space_delta,
                white_pawns: self.black_pawns,
                black_pawns: self.white_pawns,
                white_king_shield: self.black_king_shield,
                black_king_shield: self.white_king_shield,
                white_king_attackers: self.black_king_attackers,
                black_king_attackers: self.white_king_attackers,
                total_pawns: self.total_pawns,
            },
        }
    }

    /// (doubled + isolated) difference, white minus black.
    pub fn structure_delta(&self) -> i32 {
        (self.white_pawns.doubled + self.white_pawns.isolated) as i32
            - (self.black_pawns.doubled + self.black_pawns.isolated) as i32
    }

    pub fn passed_delta(&self) -> i32 {
        self.white_pawns.passed as i32 - self.black_pawns.passed as i32
    }
}

/// Trigger thresholds for the classification cascade. The defaults fire on
/// textbook examples; every value can be overridden.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyThresholds {
    /// King safety fires when a shield is at most this thin...
    pub shield_max: u32,
    /// ...and at least this many enemy pieces swarm that king.
    pub attackers_min: u32,
    pub material_min: i32,
    pub activity_min: f64,
    pub space_total_pawns_min: u32,
    pub space_min: i32,
    /// Doubled+isolated difference that flags a structure battle.
    pub structure_min: i32,
    pub passed_min: i32,
}

impl Default for StrategyThresholds {
    fn default() -> Self {
        StrategyThresholds {
            shield_max: 1,
            attackers_min: 2,
            material_min: 1,
            activity_min: 3.0,
            space_total_pawns_min: 12,
            space_min: 4,
            structure_min: 2,
            passed_min: 1,
        }
    }
}

/// Centralization weight: 2 on the four center squares, 1 on the surrounding
/// twelve-square ring, 0 elsewhere.
fn centralization(sq: Square) -> i32 {
    let f = sq.file();
    let r = sq.rank();
    if (3..=4).contains(&f) && (3..=4).contains(&r) {
        2
    } else if (2..=5).contains(&f) && (2..=5).contains(&r) {
        1
    } else {
        0
    }
}

/// Measures every classifier feature on a valid position. Total over all
/// pieces; never fails.
pub fn extract_features(pos: &Position) -> StrategyFeatures {
    let mut material = [0i32; 2];
    let mut central = [0i32; 2];
    let mut mobility = [0i32; 2];
    let mut pawn_files: [[u32; 8]; 2] = [[0; 8]; 2];
    let mut space = [0i32; 2];

    let idx = |c: Color| match c {
        Color::White => 0usize,
        Color::Black => 1,
    };

    for (sq, piece) in pos.pieces() {
        let side = idx(piece.color);
        material[side] += piece.kind.value();
        match piece.kind {
            PieceKind::Pawn => pawn_files[side][sq.file() as usize] += 1,
            PieceKind::King => {}
            _ => {
                central[side] += centralization(sq);
                mobility[side] += pseudo_destinations(pos, sq).len() as i32;
            }
        }
    }

    // Space: squares in the opposing half that a side occupies or attacks.
    for sq in Square::all() {
        for color in [Color::White, Color::Black] {
            let in_enemy_half = match color {
                Color::White => sq.rank() >= 4,
                Color::Black => sq.rank() <= 3,
            };
            if !in_enemy_half {
                continue;
            }
            let occupied = pos.piece_at(sq).is_some_and(|p| p.color == color);
            if occupied || !pos.attackers_to(sq, color).is_empty() {
                space[idx(color)] += 1;
            }
        }
    }

    let mut pawns = [PawnCounts::default(); 2];
    for color in [Color::White, Color::Black] {
        let side = idx(color);
        let own = pawn_files[side];
        for file in 0..8 {
            if own[file] >= 2 {
                pawns[side].doubled += own[file] - 1;
            }
        }
        for (sq, piece) in pos.pieces() {
            if piece.color != color || piece.kind != PieceKind::Pawn {
                continue;
            }
            let file = sq.file() as usize;
            let left = file.checked_sub(1).map(|f| own[f]).unwrap_or(0);
            let right = if file + 1 < 8 { own[file + 1] } else { 0 };
            if left == 0 && right == 0 {
                pawns[side].isolated += 1;
            }
            if is_passed(pos, sq, color) {
                pawns[side].passed += 1;
            }
        }
    }

    let mut shield = [0u32; 2];
    let mut attackers = [0u32; 2];
    for color in [Color::White, Color::Black] {
        let side = idx(color);
        let king = pos.king_square(color);
        shield[side] = king_shield(pos, king, color);
        attackers[side] = king_zone_attackers(pos, king, color.opponent());
    }

    StrategyFeatures {
        material_delta: material[0] - material[1],
        activity_delta: (central[0] - central[1]) as f64 + 0.1 * (mobility[0] - mobility[1]) as f64,
        space_delta: space[0] - space[1],
        white_pawns: pawns[0],
        black_pawns: pawns[1],
        white_king_shield: shield[0],
        black_king_shield: shield[1],
        white_king_attackers: attackers[0],
        black_king_attackers: attackers[1],
        total_pawns: pawn_files.iter().flatten().sum(),
    }
}

fn is_passed(pos: &Position, sq: Square, color: Color) -> bool {
    let fwd = color.forward();
    let mut rank = sq.rank() as i8 + fwd;
    while (0..8).contains(&rank) {
        for df in -1i8..=1 {
            let file = sq.file() as i8 + df;
            if !(0..8).contains(&file) {
                continue;
            }
            if pos
                .piece_at(Square::new(file as u8, rank as u8))
                .is_some_and(|p| p.kind == PieceKind::Pawn && p.color != color)
            {
                return false;
            }
        }
        rank += fwd;
    }
    true
}

/// Friendly pawns on the king's file and the two adjacent files, one or two
/// ranks ahead of the king.
fn king_shield(pos: &Position, king: Square, color: Color) -> u32 {
    let fwd = color.forward();
    let mut count = 0;
    for df in -1i8..=1 {
        for dr in [fwd, 2 * fwd] {
            if let Some(sq) = king.offset(df, dr) {
                if pos.piece_at(sq).is_some_and(|p| p.kind == PieceKind::Pawn && p.color == color) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Number of distinct `by`-colored pieces attacking the 8-neighborhood of
/// `king`.
fn king_zone_attackers(pos: &Position, king: Square, by: Color) -> u32 {
    let mut seen: Vec<Square> = Vec::new();
    for (df, dr) in KING_STEPS {
        if let Some(zone) = king.offset(df, dr) {
            for attacker in pos.attackers_to(zone, by) {
                if !seen.contains(&attacker) {
                    seen.push(attacker);
                }
            }
        }
    }
    seen.len() as u32
}

/// Deterministic priority cascade over the feature magnitudes.
pub fn classify_strategy(features: &StrategyFeatures) -> StrategyCategory {
    classify_strategy_with(features, &StrategyThresholds::default())
}

pub fn classify_strategy_with(
    f: &StrategyFeatures,
    t: &StrategyThresholds,
) -> StrategyCategory {
    let white_exposed =
        f.white_king_shield <= t.shield_max && f.white_king_attackers >= t.attackers_min;
    let black_exposed =
        f.black_king_shield <= t.shield_max && f.black_king_attackers >= t.attackers_min;
    if white_exposed || black_exposed {
        StrategyCategory::KingSafety
    } else if f.material_delta.abs() >= t.material_min {
        StrategyCategory::MaterialCount
    } else if f.activity_delta.abs() >= t.activity_min {
        StrategyCategory::PieceActivity
    } else if f.total_pawns >= t.space_total_pawns_min && f.space_delta.abs() >= t.space_min {
        StrategyCategory::Space
    } else if f.structure_delta().abs() >= t.structure_min
        || f.passed_delta().abs() >= t.passed_min
    {
        StrategyCategory::PawnStructure
    } else {
        StrategyCategory::PieceActivity
    }
}
