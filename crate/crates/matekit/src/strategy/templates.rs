//! Natural-language rendering of strategy plans.
//!
//! Each category owns a pool of at least twenty templates. Selection is
//! `seed % pool_size`, so identical inputs always render identical text and
//! consecutive seeds walk the whole pool. Pools load from plain-text files
//! (one template per line, `{n}` substituted with the category magnitude);
//! the defaults below are compiled in.

use std::path::Path;

use thiserror::Error;

use crate::chess::Position;
use crate::util::fnv1a64;

use super::{StrategyCategory, StrategyFeatures};

pub const MIN_POOL_SIZE: usize = 20;

const BUILTIN: [(StrategyCategory, &str); 5] = [
    (StrategyCategory::MaterialCount, include_str!("../../resources/strategy/material_count.txt")),
    (StrategyCategory::PieceActivity, include_str!("../../resources/strategy/piece_activity.txt")),
    (StrategyCategory::PawnStructure, include_str!("../../resources/strategy/pawn_structure.txt")),
    (StrategyCategory::Space, include_str!("../../resources/strategy/space.txt")),
    (StrategyCategory::KingSafety, include_str!("../../resources/strategy/king_safety.txt")),
];

#[derive(Debug, Error)]
pub enum TemplateError {
    #[error("cannot read template file {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("template pool for {category:?} has {found} templates, need at least {MIN_POOL_SIZE}")]
    PoolTooSmall { category: StrategyCategory, found: usize },
}

/// A rendered plan: which category, which template, and the final text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyAnnotation {
    pub category: StrategyCategory,
    pub template_id: usize,
    pub text: String,
}

/// The five template pools.
#[derive(Debug, Clone)]
pub struct StrategyTemplates {
    pools: [Vec<String>; 5],
}

impl StrategyTemplates {
    /// The compiled-in pools.
    pub fn builtin() -> StrategyTemplates {
        let mut pools: [Vec<String>; 5] = Default::default();
        for (category, text) in BUILTIN {
            pools[category as usize] = parse_pool(text);
        }
        let t = StrategyTemplates { pools };
        debug_assert!(t.check_sizes().is_ok());
        t
    }

    /// Loads pools from `<dir>/<category>.txt` for all five categories.
    pub fn from_dir(dir: &Path) -> Result<StrategyTemplates, TemplateError> {
        let mut pools: [Vec<String>; 5] = Default::default();
        for category in StrategyCategory::ALL {
            let path = dir.join(format!("{}.txt", category.name()));
            let text = std::fs::read_to_string(&path)
                .map_err(|source| TemplateError::Io { path: path.display().to_string(), source })?;
            pools[category as usize] = parse_pool(&text);
        }
        let t = StrategyTemplates { pools };
        t.check_sizes()?;
        Ok(t)
    }

    fn check_sizes(&self) -> Result<(), TemplateError> {
        for category in StrategyCategory::ALL {
            let found = self.pool(category).len();
            if found < MIN_POOL_SIZE {
                return Err(TemplateError::PoolTooSmall { category, found });
            }
        }
        Ok(())
    }

    pub fn pool(&self, category: StrategyCategory) -> &[String] {
        &self.pools[category as usize]
    }
}

fn parse_pool(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

/// Stable 64-bit hash of a position, used as the template-selection seed.
pub fn position_seed(pos: &Position) -> u64 {
    fnv1a64(pos.fen().as_bytes())
}

/// Renders a plan with the built-in pools. `seed` picks the template
/// (`seed % pool_size`); `{n}` is substituted with the magnitude relevant to
/// the category. Deterministic: equal inputs yield byte-identical text.
pub fn render_strategy_text(
    category: StrategyCategory,
    features: &StrategyFeatures,
    seed: u64,
) -> StrategyAnnotation {
    static BUILTIN_POOLS: std::sync::OnceLock<StrategyTemplates> = std::sync::OnceLock::new();
    render_strategy_text_with(
        category,
        features,
        seed,
        BUILTIN_POOLS.get_or_init(StrategyTemplates::builtin),
    )
}

pub fn render_strategy_text_with(
    category: StrategyCategory,
    features: &StrategyFeatures,
    seed: u64,
    templates: &StrategyTemplates,
) -> StrategyAnnotation {
    let pool = templates.pool(category);
    let template_id = (seed % pool.len() as u64) as usize;
    let magnitude = match category {
        StrategyCategory::MaterialCount => features.material_delta.abs(),
        StrategyCategory::PieceActivity => features.activity_delta.abs().round() as i32,
        StrategyCategory::Space => features.space_delta.abs(),
        StrategyCategory::PawnStructure => {
            features.structure_delta().abs().max(features.passed_delta().abs())
        }
        StrategyCategory::KingSafety => features
            .white_king_attackers
            .max(features.black_king_attackers) as i32,
    };
    let text = pool[template_id].replace("{n}", &magnitude.to_string());
    StrategyAnnotation { category, template_id, text }
}

#[cfg(test)]
mod tests {
    use super::super::extract_features;
    use super::*;

    fn sample_features() -> StrategyFeatures {
        extract_features(&"4k3/8/8/8/8/8/8/R3K3 w - - 0 1".parse().unwrap())
    }

    #[test]
    fn builtin_pools_have_at_least_twenty_templates() {
        let t = StrategyTemplates::builtin();
        for category in StrategyCategory::ALL {
            assert!(
                t.pool(category).len() >= MIN_POOL_SIZE,
                "{category:?} pool too small"
            );
        }
    }

    #[test]
    fn seed_zero_selects_template_zero_and_mentions_material() {
        let f = sample_features();
        let a = render_strategy_text(StrategyCategory::MaterialCount, &f, 0);
        assert_eq!(a.template_id, 0);
        assert!(a.text.to_lowercase().contains("material"));
        assert!(a.text.contains('5'), "magnitude substituted: {}", a.text);
    }

    #[test]
    fn rendering_is_deterministic() {
        let f = sample_features();
        let a = render_strategy_text(StrategyCategory::Space, &f, 41);
        let b = render_strategy_text(StrategyCategory::Space, &f, 41);
        assert_eq!(a, b);
    }

    #[test]
    fn consecutive_seeds_step_through_the_pool() {
        let f = sample_features();
        let t = StrategyTemplates::builtin();
        let size = t.pool(StrategyCategory::KingSafety).len() as u64;
        for seed in 0..2 * size {
            let a = render_strategy_text(StrategyCategory::KingSafety, &f, seed);
            let b = render_strategy_text(StrategyCategory::KingSafety, &f, seed + 1);
            assert_eq!((a.template_id + 1) % size as usize, b.template_id);
        }
    }

    #[test]
    fn seeds_zero_to_ninety_nine_reach_every_template() {
        let f = sample_features();
        for category in StrategyCategory::ALL {
            let t = StrategyTemplates::builtin();
            let size = t.pool(category).len();
            let mut hit = vec![false; size];
            for seed in 0..100u64 {
                hit[render_strategy_text(category, &f, seed).template_id] = true;
            }
            assert!(hit.iter().all(|&h| h), "{category:?}: unreached templates");
        }
    }

    #[test]
    fn no_template_is_empty_and_substitution_leaves_no_placeholder() {
        let f = sample_features();
        for category in StrategyCategory::ALL {
            let size = StrategyTemplates::builtin().pool(category).len() as u64;
            for seed in 0..size {
                let a = render_strategy_text(category, &f, seed);
                assert!(!a.text.is_empty());
                assert!(!a.text.contains("{n}"), "unsubstituted: {}", a.text);
            }
        }
    }

    #[test]
    fn pools_load_from_directory() {
        let t = StrategyTemplates::from_dir(Path::new(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/resources/strategy"
        )))
        .unwrap();
        for category in StrategyCategory::ALL {
            assert_eq!(t.pool(category).len(), 20);
        }
    }

    #[test]
    fn position_seed_is_stable() {
        let p: Position = crate::chess::START_FEN.parse().unwrap();
        assert_eq!(position_seed(&p), position_seed(&p));
        let q = p.apply_move("e2e4".parse().unwrap()).unwrap();
        assert_ne!(position_seed(&p), position_seed(&q));
    }
}
