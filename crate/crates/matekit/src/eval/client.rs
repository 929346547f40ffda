//! Model clients: hermetic replay and oracle clients plus a config-driven
//! HTTP adapter for real endpoints.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::SampleRecord;

use super::prompt::{build_prompt, prompt_hash};
use super::PromptConfig;

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("no recorded response for prompt hash {0}")]
    MissingResponse(String),
    #[error("cannot read replay file {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{line}: malformed replay entry: {source}")]
    Malformed { path: String, line: usize, source: serde_json::Error },
    #[error("http request failed: {0}")]
    Http(String),
    #[error("response field path {0:?} not found in reply")]
    MissingField(String),
    #[error("cannot build prompt for oracle: {0}")]
    Prompt(#[from] super::prompt::PromptError),
}

/// Anything that can answer a prompt. A replay client answers identical
/// prompts identically.
pub trait ModelClient {
    fn send(&mut self, prompt: &str) -> Result<String, ClientError>;
    /// Short description recorded in run metadata.
    fn name(&self) -> String;
}

/// One line of a replay file.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ReplayEntry {
    pub prompt_hash: String,
    pub response: String,
}

/// Serves responses keyed by prompt hash from a recorded file.
pub struct ReplayClient {
    responses: HashMap<String, String>,
    source: String,
}

impl ReplayClient {
    pub fn from_path(path: &Path) -> Result<ReplayClient, ClientError> {
        let display = path.display().to_string();
        let file = std::fs::File::open(path)
            .map_err(|source| ClientError::Io { path: display.clone(), source })?;
        let mut responses = HashMap::new();
        for (idx, line) in BufReader::new(file).lines().enumerate() {
            let line =
                line.map_err(|source| ClientError::Io { path: display.clone(), source })?;
            if line.trim().is_empty() {
                continue;
            }
            let entry: ReplayEntry =
                serde_json::from_str(&line).map_err(|source| ClientError::Malformed {
                    path: display.clone(),
                    line: idx + 1,
                    source,
                })?;
            responses.insert(entry.prompt_hash, entry.response);
        }
        Ok(ReplayClient { responses, source: display })
    }

    pub fn from_entries(entries: Vec<ReplayEntry>) -> ReplayClient {
        ReplayClient {
            responses: entries.into_iter().map(|e| (e.prompt_hash, e.response)).collect(),
            source: "(in-memory)".to_string(),
        }
    }
}

impl ModelClient for ReplayClient {
    fn send(&mut self, prompt: &str) -> Result<String, ClientError> {
        let hash = prompt_hash(prompt);
        self.responses
            .get(&hash)
            .cloned()
            .ok_or(ClientError::MissingResponse(hash))
    }

    fn name(&self) -> String {
        format!("replay:{}", self.source)
    }
}

/// Writes a replay file, one JSON entry per line.
pub fn write_replay_file(entries: &[ReplayEntry], path: &Path) -> Result<(), ClientError> {
    let display = path.display().to_string();
    let io_err = |source| ClientError::Io { path: display.clone(), source };
    let mut file = std::fs::File::create(path).map_err(io_err)?;
    for entry in entries {
        let json = serde_json::to_string(entry).expect("replay entry serializes");
        file.write_all(json.as_bytes()).map_err(io_err)?;
        file.write_all(b"\n").map_err(io_err)?;
    }
    Ok(())
}

/// How a scripted oracle answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// Always the labeled optimal move.
    Optimal,
    /// Always the other candidate.
    Pessimal,
    /// A seeded uniform pick between the two candidates.
    Random { seed: u64 },
}

/// A scripted responder built ahead of time from the records under
/// evaluation; useful for calibrating the harness (perfect, worst-case and
/// chance-level baselines).
pub struct OracleClient {
    responses: HashMap<String, String>,
    mode: OracleMode,
}

impl OracleClient {
    pub fn new(
        records: &[SampleRecord],
        cfg: &PromptConfig,
        mode: OracleMode,
    ) -> Result<OracleClient, ClientError> {
        let mut rng = match mode {
            OracleMode::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut responses = HashMap::new();
        for record in records {
            let prompt = build_prompt(record, cfg)?;
            let pick = match (&mode, rng.as_mut()) {
                (OracleMode::Optimal, _) => record.label,
                (OracleMode::Pessimal, _) => 1 - record.label,
                (OracleMode::Random { .. }, Some(rng)) => rng.gen_range(0..2),
                (OracleMode::Random { .. }, None) => unreachable!(),
            };
            let answer = format!("The best move is {}.", record.candidates[pick].uci);
            responses.insert(prompt_hash(&prompt), answer);
        }
        Ok(OracleClient { responses, mode })
    }
}

impl ModelClient for OracleClient {
    fn send(&mut self, prompt: &str) -> Result<String, ClientError> {
        let hash = prompt_hash(prompt);
        self.responses
            .get(&hash)
            .cloned()
            .ok_or(ClientError::MissingResponse(hash))
    }

    fn name(&self) -> String {
        match self.mode {
            OracleMode::Optimal => "oracle:optimal".to_string(),
            OracleMode::Pessimal => "oracle:pessimal".to_string(),
            OracleMode::Random { seed } => format!("oracle:random:{seed}"),
        }
    }
}

/// Config-driven HTTP adapter. The request body template carries a
/// `{prompt}` slot that receives the JSON-escaped prompt; the response is
/// decoded as JSON and the answer extracted at a dot-separated field path
/// (array indices are numeric segments), e.g. `choices.0.message.content`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HttpClientConfig {
    pub url: String,
    #[serde(default = "default_method")]
    pub method: String,
    #[serde(default)]
    pub headers: std::collections::BTreeMap<String, String>,
    pub body_template: String,
    pub response_path: String,
}

fn default_method() -> String {
    "POST".to_string()
}

pub struct HttpClient {
    config: HttpClientConfig,
    agent: reqwest::blocking::Client,
}

impl HttpClient {
    pub fn new(config: HttpClientConfig) -> HttpClient {
        HttpClient { config, agent: reqwest::blocking::Client::new() }
    }

    pub fn from_config_path(path: &Path) -> Result<HttpClient, ClientError> {
        let display = path.display().to_string();
        let text = std::fs::read_to_string(path)
            .map_err(|source| ClientError::Io { path: display.clone(), source })?;
        let config: HttpClientConfig = serde_json::from_str(&text)
            .map_err(|source| ClientError::Malformed { path: display, line: 1, source })?;
        Ok(HttpClient::new(config))
    }

    fn extract_field<'a>(
        value: &'a serde_json::Value,
        path: &str,
    ) -> Option<&'a serde_json::Value> {
        let mut cur = value;
        for segment in path.split('.') {
            cur = match segment.parse::<usize>() {
                Ok(index) => cur.get(index)?,
                Err(_) => cur.get(segment)?,
            };
        }
        Some(cur)
    }
}

impl ModelClient for HttpClient {
    fn send(&mut self, prompt: &str) -> Result<String, ClientError> {
        // JSON-escape the prompt, minus the surrounding quotes.
        let escaped = serde_json::to_string(prompt).expect("string serializes");
        let body = self
            .config
            .body_template
            .replace("{prompt}", &escaped[1..escaped.len() - 1]);
        let method: reqwest::Method = self
            .config
            .method
            .parse()
            .map_err(|_| ClientError::Http(format!("bad method {:?}", self.config.method)))?;
        let mut request = self.agent.request(method, &self.config.url).body(body);
        for (key, value) in &self.config.headers {
            request = request.header(key, value);
        }
        let response = request.send().map_err(|e| ClientError::Http(e.to_string()))?;
        let status = response.status();
        if !status.is_success() {
            return Err(ClientError::Http(format!("status {status}")));
        }
        let text = response.text().map_err(|e| ClientError::Http(e.to_string()))?;
        let json: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| ClientError::Http(e.to_string()))?;
        let field = Self::extract_field(&json, &self.config.response_path)
            .ok_or_else(|| ClientError::MissingField(self.config.response_path.clone()))?;
        match field {
            serde_json::Value::String(s) => Ok(s.clone()),
            other => Ok(other.to_string()),
        }
    }

    fn name(&self) -> String {
        format!("http:{}", self.config.url)
    }
}
