use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use super::{ChatMessage, NodeId, Transcript};

pub const API_KEY_ENV: &str = "PSW_LLM_API_KEY";
pub const DEFAULT_ENDPOINT: &str = "https://api.openai.com/v1/chat/completions";
pub const DEFAULT_MODEL_ID: &str = "gpt-4-0125-preview";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChatRequest {
    pub model: String,
    pub temperature: f64,
    pub messages: Vec<ChatMessage>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Usage {
    pub prompt_tokens: Option<u64>,
    pub completion_tokens: Option<u64>,
    pub total_tokens: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChatResponse {
    pub content: String,
    pub usage: Option<Usage>,
}

#[derive(Debug, Error)]
pub enum TransportError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("http error: {0}")]
    Http(String),
    #[error("malformed response: {0}")]
    Protocol(String),
    #[error("gave up after {attempts} attempts: {last}")]
    RetriesExhausted { attempts: u32, last: Box<TransportError> },
    #[error("no recorded response for node `{node}` (call #{occurrence})")]
    FixtureMiss { node: NodeId, occurrence: usize },
    #[error("prompt for node `{node}` differs from the recorded one")]
    FixtureMismatch { node: NodeId },
    #[error("could not load fixtures from {path}: {message}")]
    FixtureLoad { path: PathBuf, message: String },
}

/// Minimal JSON-over-HTTPS POST, so tests can substitute a fake.
pub trait HttpClient: Send + Sync {
    fn post_json(&self, url: &str, bearer: &str, body: &Value) -> Result<Value, TransportError>;
}

pub struct ReqwestClient {
    client: reqwest::blocking::Client,
}

impl ReqwestClient {
    pub fn new(timeout: Duration) -> Result<Self, TransportError> {
        let client = reqwest::blocking::Client::builder()
            .timeout(timeout)
            .build()
            .map_err(|e| TransportError::Config(e.to_string()))?;
        Ok(ReqwestClient { client })
    }
}

impl HttpClient for ReqwestClient {
    fn post_json(&self, url: &str, bearer: &str, body: &Value) -> Result<Value, TransportError> {
        let resp = self
            .client
            .post(url)
            .bearer_auth(bearer)
            .json(body)
            .send()
            .map_err(|e| TransportError::Http(e.to_string()))?;
        let status = resp.status();
        if !status.is_success() {
            let text = resp.text().unwrap_or_default();
            return Err(TransportError::Http(format!("status {status}: {text}")));
        }
        resp.json().map_err(|e| TransportError::Protocol(e.to_string()))
    }
}

/// An HTTP client that refuses every call. Used in Replay mode so that a
/// network attempt would be loud.
struct NoNetwork;

impl HttpClient for NoNetwork {
    fn post_json(&self, url: &str, _: &str, _: &Value) -> Result<Value, TransportError> {
        Err(TransportError::Config(format!(
            "network access to {url} attempted in replay mode"
        )))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiveConfig {
    pub endpoint: String,
    pub model_id: String,
    pub temperature: f64,
    pub api_key: Option<String>,
    /// Retries after the first failed attempt.
    pub retries: u32,
    /// Delay before the first retry; doubled for each further one.
    pub base_delay: Duration,
    pub timeout: Duration,
}

impl Default for LiveConfig {
    fn default() -> Self {
        LiveConfig {
            endpoint: DEFAULT_ENDPOINT.to_string(),
            model_id: DEFAULT_MODEL_ID.to_string(),
            temperature: 0.0,
            api_key: None,
            retries: 3,
            base_delay: Duration::from_secs(1),
            timeout: Duration::from_secs(120),
        }
    }
}

impl LiveConfig {
    /// Defaults with the API key taken from the environment.
    pub fn from_env() -> Self {
        LiveConfig {
            api_key: std::env::var(API_KEY_ENV).ok().filter(|k| !k.is_empty()),
            ..Self::default()
        }
    }
}

/// Recorded responses, looked up by node. Repeated calls to the same node
/// (extraction repairs, for example) consume responses in order.
#[derive(Debug, Default)]
pub struct FixtureSet {
    model_id: Option<String>,
    entries: BTreeMap<NodeId, Vec<(Vec<ChatMessage>, String)>>,
    cursor: Mutex<BTreeMap<NodeId, usize>>,
}

impl FixtureSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds every node of a transcript-shaped record.
    pub fn add_transcript(&mut self, t: &Transcript) {
        self.model_id.get_or_insert_with(|| t.model_id.clone());
        for n in &t.nodes {
            self.entries
                .entry(n.node)
                .or_default()
                .push((n.prompt.clone(), n.response.clone()));
        }
    }

    pub fn add_response(&mut self, node: NodeId, response: impl Into<String>) {
        self.entries
            .entry(node)
            .or_default()
            .push((Vec::new(), response.into()));
    }

    /// Removes all responses for `node`.
    pub fn remove(&mut self, node: NodeId) {
        self.entries.remove(&node);
    }

    pub fn nodes(&self) -> Vec<NodeId> {
        self.entries.keys().copied().collect()
    }

    /// Loads every `*.json` file in `dir` (sorted by name) as a transcript.
    pub fn load_dir(dir: &Path) -> Result<Self, TransportError> {
        let load_err = |message: String| TransportError::FixtureLoad {
            path: dir.to_path_buf(),
            message,
        };
        let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| load_err(e.to_string()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        if files.is_empty() {
            return Err(load_err("no .json fixture files".into()));
        }
        let mut set = FixtureSet::new();
        for f in files {
            let t = Transcript::load(&f).map_err(|e| TransportError::FixtureLoad {
                path: f.clone(),
                message: e.to_string(),
            })?;
            set.add_transcript(&t);
        }
        Ok(set)
    }

    fn next(&self, node: NodeId, messages: &[ChatMessage]) -> Result<String, TransportError> {
        let mut cursor = self.cursor.lock().expect("fixture cursor poisoned");
        let k = cursor.entry(node).or_insert(0);
        let (recorded, response) =
            self.entries
                .get(&node)
                .and_then(|v| v.get(*k))
                .ok_or(TransportError::FixtureMiss {
                    node,
                    occurrence: *k + 1,
                })?;
        if !recorded.is_empty() && recorded != messages {
            return Err(TransportError::FixtureMismatch { node });
        }
        *k += 1;
        Ok(response.clone())
    }
}

#[derive(Debug)]
pub enum TransportMode {
    Live(LiveConfig),
    Replay(FixtureSet),
}

pub struct LlmTransport {
    mode: TransportMode,
    http: Box<dyn HttpClient>,
}

impl LlmTransport {
    pub fn replay(fixtures: FixtureSet) -> Self {
        LlmTransport {
            mode: TransportMode::Replay(fixtures),
            http: Box::new(NoNetwork),
        }
    }

    pub fn live(config: LiveConfig) -> Result<Self, TransportError> {
        let http = ReqwestClient::new(config.timeout)?;
        Ok(Self::with_http(TransportMode::Live(config), Box::new(http)))
    }

    /// Any mode with a caller-supplied HTTP client.
    pub fn with_http(mode: TransportMode, http: Box<dyn HttpClient>) -> Self {
        LlmTransport { mode, http }
    }

    pub fn mode(&self) -> &TransportMode {
        &self.mode
    }

    pub fn is_replay(&self) -> bool {
        matches!(self.mode, TransportMode::Replay(_))
    }

    pub fn model_id(&self) -> String {
        match &self.mode {
            TransportMode::Live(c) => c.model_id.clone(),
            TransportMode::Replay(f) => f.model_id.clone().unwrap_or_else(|| DEFAULT_MODEL_ID.to_string()),
        }
    }

    pub fn temperature(&self) -> f64 {
        match &self.mode {
            TransportMode::Live(c) => c.temperature,
            TransportMode::Replay(_) => 0.0,
        }
    }

    pub fn request(&self, messages: Vec<ChatMessage>) -> ChatRequest {
        ChatRequest {
            model: self.model_id(),
            temperature: self.temperature(),
            messages,
        }
    }

    pub fn complete(&self, node: NodeId, request: &ChatRequest) -> Result<ChatResponse, TransportError> {
        match &self.mode {
            TransportMode::Replay(f) => Ok(ChatResponse {
                content: f.next(node, &request.messages)?,
                usage: None,
            }),
            TransportMode::Live(cfg) => self.complete_live(cfg, request),
        }
    }

    fn complete_live(&self, cfg: &LiveConfig, request: &ChatRequest) -> Result<ChatResponse, TransportError> {
        let key = cfg
            .api_key
            .as_deref()
            .ok_or_else(|| TransportError::Config(format!("no API key; set {API_KEY_ENV}")))?;
        let body = json!({
            "model": request.model,
            "temperature": request.temperature,
            "messages": request.messages,
        });
        let mut delay = cfg.base_delay;
        let mut attempt = 0;
        loop {
            attempt += 1;
            let err = match self.http.post_json(&cfg.endpoint, key, &body) {
                Ok(v) => match parse_completion(&v) {
                    Ok(r) => return Ok(r),
                    Err(e) => e,
                },
                Err(e) => e,
            };
            if attempt > cfg.retries {
                return Err(TransportError::RetriesExhausted {
                    attempts: attempt,
                    last: Box::new(err),
                });
            }
            std::thread::sleep(delay);
            delay *= 2;
        }
    }
}

fn parse_completion(v: &Value) -> Result<ChatResponse, TransportError> {
    let content = v
        .pointer("/choices/0/message/content")
        .and_then(Value::as_str)
        .ok_or_else(|| TransportError::Protocol("missing choices[0].message.content".into()))?;
    let usage = v.get("usage").map(|u| Usage {
        prompt_tokens: u.get("prompt_tokens").and_then(Value::as_u64),
        completion_tokens: u.get("completion_tokens").and_then(Value::as_u64),
        total_tokens: u.get("total_tokens").and_then(Value::as_u64),
    });
    Ok(ChatResponse {
        content: content.to_string(),
        usage,
    })
}
