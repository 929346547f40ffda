//! Seeded random playouts, used to fuzz the rest of the toolkit with
//! realistic mid-game positions.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use super::Position;

/// Plays up to `max_plies` random legal moves from the initial position and
/// returns where the game ended up. Deterministic in `seed`. Stops early on
/// checkmate or stalemate.
pub fn random_playout(seed: u64, max_plies: usize) -> Position {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pos = Position::initial();
    for _ in 0..max_plies {
        let moves = pos.legal_moves();
        if moves.is_empty() {
            break;
        }
        let mv = moves[rng.gen_range(0..moves.len())];
        pos = pos.apply_move(mv).expect("generated move is legal");
    }
    pos
}
