//! The evaluation loop: prompt, query, parse, score.

use thiserror::Error;

use crate::chess::Move;
use crate::dataset::SampleRecord;

use super::prompt::{build_prompt, parse_move_from_response, PromptError};
use super::{EvalResult, ModelClient, PerSample, PromptConfig, RunMeta};

/// A run aborts once more than this fraction of samples has errored.
pub const DEFAULT_ERROR_RATE_LIMIT: f64 = 0.2;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Prompt(#[from] PromptError),
    #[error("no records to evaluate")]
    NoRecords,
    #[error("an exemplar also appears in the test set (index {0})")]
    ExemplarOverlap(usize),
    #[error("aborting: {errored} of {n} samples errored (limit {limit})")]
    ErrorRateExceeded { errored: usize, n: usize, limit: f64 },
}

/// Evaluates `records` with the default 20% error-rate limit.
pub fn run_eval(
    client: &mut dyn ModelClient,
    records: &[SampleRecord],
    cfg: &PromptConfig,
) -> Result<EvalResult, EvalError> {
    run_eval_with_error_limit(client, records, cfg, DEFAULT_ERROR_RATE_LIMIT)
}

/// One prompt per record; a sample scores when the extracted move is the
/// labeled optimal one. Unparseable responses count as incorrect; transport
/// failures mark the sample errored (and incorrect) and the run continues
/// until the error rate crosses `error_rate_limit`.
pub fn run_eval_with_error_limit(
    client: &mut dyn ModelClient,
    records: &[SampleRecord],
    cfg: &PromptConfig,
    error_rate_limit: f64,
) -> Result<EvalResult, EvalError> {
    if records.is_empty() {
        return Err(EvalError::NoRecords);
    }
    for (index, record) in records.iter().enumerate() {
        if cfg.exemplars.contains(record) {
            return Err(EvalError::ExemplarOverlap(index));
        }
    }

    let n = records.len();
    let mut per_sample = Vec::with_capacity(n);
    let mut errored = 0usize;

    for (index, record) in records.iter().enumerate() {
        let prompt = build_prompt(record, cfg)?;
        let candidates: Vec<Move> = record
            .candidates
            .iter()
            .filter_map(|c| c.uci.parse().ok())
            .collect();
        let optimal: Option<Move> = record.optimal().uci.parse().ok();

        let sample = match client.send(&prompt) {
            Ok(response) => {
                let extracted = parse_move_from_response(&response, &candidates);
                let correct = extracted.is_some() && extracted == optimal;
                PerSample {
                    index,
                    extracted: extracted.map(|m| m.to_string()),
                    correct,
                    error: None,
                }
            }
            Err(e) => {
                errored += 1;
                PerSample { index, extracted: None, correct: false, error: Some(e.to_string()) }
            }
        };
        per_sample.push(sample);

        if errored as f64 > error_rate_limit * n as f64 {
            return Err(EvalError::ErrorRateExceeded { errored, n, limit: error_rate_limit });
        }
    }

    let correct = per_sample.iter().filter(|s| s.correct).count();
    Ok(EvalResult {
        accuracy: correct as f64 / n as f64,
        n,
        per_sample,
        meta: RunMeta {
            client: client.name(),
            shots: cfg.shots,
            special_tokens: cfg.special_tokens,
            template_id: cfg.template_id.clone(),
            errored,
        },
    })
}
