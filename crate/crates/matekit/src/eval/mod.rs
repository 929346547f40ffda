//! Model evaluation harness: prompt construction, model clients, answer
//! extraction and accuracy scoring.

mod client;
mod prompt;
mod run;

pub use client::{
    write_replay_file, ClientError, HttpClient, HttpClientConfig, ModelClient, OracleClient,
    OracleMode, ReplayClient, ReplayEntry,
};
pub use prompt::{
    build_prompt, format_position_text, parse_move_from_response, prompt_hash, PromptError,
};
pub use run::{run_eval, run_eval_with_error_limit, EvalError, DEFAULT_ERROR_RATE_LIMIT};

use serde::{Deserialize, Serialize};

use crate::dataset::SampleRecord;

/// How prompts are built for a run.
#[derive(Debug, Clone)]
pub struct PromptConfig {
    /// Number of worked examples prepended to each test prompt (0 =
    /// zero-shot).
    pub shots: usize,
    /// Pool the examples are drawn from; must be disjoint from the test set.
    pub exemplars: Vec<SampleRecord>,
    /// Replace FEN row separators with `<line>` tokens and mark the side to
    /// move with `<color>`.
    pub special_tokens: bool,
    /// Version tag recorded in run metadata; prompts are only comparable
    /// within one template version.
    pub template_id: String,
}

impl Default for PromptConfig {
    fn default() -> Self {
        PromptConfig {
            shots: 0,
            exemplars: Vec::new(),
            special_tokens: false,
            template_id: "v1".to_string(),
        }
    }
}

/// Outcome for one evaluated record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerSample {
    /// Index of the record in the evaluated list.
    pub index: usize,
    /// The candidate move extracted from the response, if any.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub extracted: Option<String>,
    pub correct: bool,
    /// Transport or client failure; errored samples count as incorrect.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

/// Run metadata stored alongside the scores so results stay auditable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub client: String,
    pub shots: usize,
    pub special_tokens: bool,
    pub template_id: String,
    pub errored: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    /// Fraction of samples where the model produced the optimal move.
    pub accuracy: f64,
    pub n: usize,
    pub per_sample: Vec<PerSample>,
    pub meta: RunMeta,
}

impl EvalResult {
    /// Recomputes accuracy from the per-sample log; always equals
    /// `self.accuracy`.
    pub fn recomputed_accuracy(&self) -> f64 {
        if self.per_sample.is_empty() {
            return 0.0;
        }
        self.per_sample.iter().filter(|s| s.correct).count() as f64 / self.per_sample.len() as f64
    }
}
