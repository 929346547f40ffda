//! Short-term tactic detection.
//!
//! Static pattern detectors cover the eight-pattern taxonomy (pin, fork,
//! battery, x-ray, discovered attack, double attack, windmill, Greek gift);
//! [`extract_tactic_line`] derives concrete move sequences from an engine's
//! principal variation and describes the resulting position factually.

mod detect;
mod line;

pub use detect::{
    detect_battery, detect_discovered, detect_double_attack, detect_forks, detect_greek_gift,
    detect_pins, detect_windmill, detect_xray,
};
pub use line::{describe_resulting_position, extract_tactic_line, MATERIAL_SWING_KEEP};

use crate::chess::{Move, Square};

/// The eight detected tactic patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TacticPattern {
    Pin,
    Fork,
    Battery,
    XRay,
    DiscoveredAttack,
    DoubleAttack,
    Windmill,
    GreekGift,
}

impl TacticPattern {
    pub fn name(self) -> &'static str {
        match self {
            TacticPattern::Pin => "pin",
            TacticPattern::Fork => "fork",
            TacticPattern::Battery => "battery",
            TacticPattern::XRay => "x_ray",
            TacticPattern::DiscoveredAttack => "discovered_attack",
            TacticPattern::DoubleAttack => "double_attack",
            TacticPattern::Windmill => "windmill",
            TacticPattern::GreekGift => "greek_gift",
        }
    }

    /// Human phrasing used in position descriptions.
    pub fn phrase(self) -> &'static str {
        match self {
            TacticPattern::Pin => "a pin",
            TacticPattern::Fork => "a fork",
            TacticPattern::Battery => "a battery",
            TacticPattern::XRay => "an x-ray",
            TacticPattern::DiscoveredAttack => "a discovered attack",
            TacticPattern::DoubleAttack => "a double attack",
            TacticPattern::Windmill => "a windmill",
            TacticPattern::GreekGift => "a Greek gift sacrifice",
        }
    }
}

/// One static pattern hit: the acting piece, what it targets, and for
/// line-piece patterns the square it acts through.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TacticInstance {
    pub pattern: TacticPattern,
    pub actor: Square,
    pub targets: Vec<Square>,
    pub through: Option<Square>,
}

/// An engine-derived forcing sequence (at most six plies) with a factual
/// description of where it lands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TacticLine {
    pub moves: Vec<Move>,
    pub end_description: String,
    /// Material swing over the line in pawn units, from the perspective of
    /// the side playing the first move.
    pub material_delta_after: i32,
    /// Whether the side to move at the end of the line stands in check.
    pub gives_check: bool,
}
