//! Dataset summaries and the engine-proxy difficulty report.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::engine::{AnalysisRequest, EngineSession};
use crate::strategy::{classify_strategy, extract_features, StrategyCategory};
use crate::tactics::{
    detect_battery, detect_discovered, detect_double_attack, detect_forks, detect_greek_gift,
    detect_pins, detect_xray,
};

use super::{BuildError, DatasetVariant, SampleRecord};

/// Distribution of the ordinal score gaps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapStats {
    pub mean: f64,
    pub min: i64,
    pub p25: i64,
    pub p50: i64,
    pub p75: i64,
    pub max: i64,
}

impl GapStats {
    fn from_gaps(mut gaps: Vec<i64>) -> Option<GapStats> {
        if gaps.is_empty() {
            return None;
        }
        gaps.sort_unstable();
        let n = gaps.len();
        let q = |f: f64| gaps[((n - 1) as f64 * f).round() as usize];
        Some(GapStats {
            mean: gaps.iter().sum::<i64>() as f64 / n as f64,
            min: gaps[0],
            p25: q(0.25),
            p50: q(0.50),
            p75: q(0.75),
            max: gaps[n - 1],
        })
    }
}

/// Counts per variant, per strategy category and per tactic pattern, plus the
/// gap distribution. Histograms assign one label per annotated record,
/// re-derived deterministically from the record itself, so totals equal the
/// counts of records carrying the respective annotation.
#[derive(Debug, Clone, Serialize)]
pub struct DatasetSummary {
    pub total: usize,
    pub variant_counts: BTreeMap<DatasetVariant, usize>,
    pub strategy_histogram: BTreeMap<StrategyCategory, usize>,
    pub tactic_histogram: BTreeMap<String, usize>,
    pub gap: Option<GapStats>,
}

/// Summarizes a record list without touching an engine. The strategy label
/// of a record is the recomputed category of its optimal candidate; the
/// tactic label is the first static pattern matching the optimal move, or
/// `line_only` when the tactic exists purely as an engine line.
pub fn summarize(records: &[SampleRecord]) -> DatasetSummary {
    let mut variant_counts = BTreeMap::new();
    let mut strategy_histogram = BTreeMap::new();
    let mut tactic_histogram = BTreeMap::new();
    let mut gaps = Vec::with_capacity(records.len());

    for record in records {
        *variant_counts.entry(record.variant).or_insert(0) += 1;
        gaps.push(record.gap);

        let Ok(pos) = record.position() else { continue };
        let Ok(mv) = record.optimal().uci.parse::<crate::chess::Move>() else { continue };

        if record.optimal().strategy_text.is_some() {
            if let Ok(after) = pos.apply_move(mv) {
                let features = extract_features(&after).pov(pos.side_to_move());
                *strategy_histogram.entry(classify_strategy(&features)).or_insert(0) += 1;
            }
        }

        if record.optimal().tactic_text.is_some() {
            let label = if detect_discovered(&pos, mv).is_some() {
                "discovered_attack"
            } else if detect_double_attack(&pos, mv).is_some() {
                "double_attack"
            } else if !detect_forks(&pos).is_empty() {
                "fork"
            } else if !detect_pins(&pos).is_empty() {
                "pin"
            } else if !detect_battery(&pos).is_empty() {
                "battery"
            } else if !detect_xray(&pos).is_empty() {
                "x_ray"
            } else if detect_greek_gift(&pos).is_some() {
                "greek_gift"
            } else {
                "line_only"
            };
            *tactic_histogram.entry(label.to_string()).or_insert(0) += 1;
        }
    }

    DatasetSummary {
        total: records.len(),
        variant_counts,
        strategy_histogram,
        tactic_histogram,
        gap: GapStats::from_gaps(gaps),
    }
}

/// Engine-proxy difficulty measurements for one variant.
#[derive(Debug, Clone, Serialize)]
pub struct VariantDifficulty {
    pub n: usize,
    pub gap: GapStats,
    /// Fraction of records where a shallow search already finds the labeled
    /// optimal move — higher agreement suggests easier samples.
    pub shallow_agreement: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DifficultyReport {
    pub shallow_depth: u32,
    /// Only variants actually present in the input appear here.
    pub variants: BTreeMap<DatasetVariant, VariantDifficulty>,
}

impl fmt::Display for DifficultyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<8} {:>6} {:>10} {:>8} {:>8} {:>10}",
            "variant", "n", "gap mean", "gap p50", "gap max", "agreement"
        )?;
        for (variant, d) in &self.variants {
            writeln!(
                f,
                "{:<8} {:>6} {:>10.1} {:>8} {:>8} {:>9.1}%",
                variant.to_string(),
                d.n,
                d.gap.mean,
                d.gap.p50,
                d.gap.max,
                d.shallow_agreement * 100.0
            )?;
        }
        Ok(())
    }
}

/// Compares variants by gap distribution and by agreement between a shallow
/// engine search (`depth` is typically 4) and the recorded label.
pub fn difficulty_report(
    records: &[SampleRecord],
    session: &mut EngineSession,
    shallow_depth: u32,
) -> Result<DifficultyReport, BuildError> {
    let mut per_variant: BTreeMap<DatasetVariant, (Vec<i64>, usize, usize)> = BTreeMap::new();
    for record in records {
        let entry = per_variant.entry(record.variant).or_default();
        entry.0.push(record.gap);
        entry.1 += 1;
        let pos = match record.position() {
            Ok(p) => p,
            Err(_) => continue,
        };
        let analysis = session.analyze(&pos, &AnalysisRequest::new(shallow_depth))?;
        if let Some(best) = analysis.best_move {
            if best.to_string() == record.optimal().uci {
                entry.2 += 1;
            }
        }
    }

    let variants = per_variant
        .into_iter()
        .map(|(variant, (gaps, n, agreed))| {
            let gap = GapStats::from_gaps(gaps).expect("variant has at least one record");
            (variant, VariantDifficulty { n, gap, shallow_agreement: agreed as f64 / n as f64 })
        })
        .collect();
    Ok(DifficultyReport { shallow_depth, variants })
}
