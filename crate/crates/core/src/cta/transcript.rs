use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{ChatMessage, NodeId, Usage};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub node: NodeId,
    /// Exactly the messages sent.
    pub prompt: Vec<ChatMessage>,
    pub response: String,
    pub started_at: String,
    pub finished_at: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub usage: Option<Usage>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub run_id: String,
    pub problem_label: String,
    pub problem: String,
    pub model_id: String,
    pub temperature: f64,
    /// False while running and for runs that stopped on an error.
    pub complete: bool,
    pub nodes: Vec<NodeRecord>,
}

impl Transcript {
    pub fn file_name(run_id: &str) -> String {
        format!("{run_id}.transcript.json")
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("transcript serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Writes `<dir>/<run_id>.transcript.json`, replacing any earlier
    /// version of the same run.
    pub fn save(&self, dir: &Path) -> std::io::Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(Self::file_name(&self.run_id));
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, self.to_json())?;
        std::fs::rename(&tmp, &path)?;
        Ok(path)
    }

    pub fn load(path: &Path) -> Result<Self, LoadError> {
        let text = std::fs::read_to_string(path)?;
        Ok(Self::from_json(&text)?)
    }

    pub fn response(&self, node: NodeId) -> Option<&str> {
        self.nodes.iter().find(|n| n.node == node).map(|n| n.response.as_str())
    }

    pub fn responses(&self) -> Vec<String> {
        self.nodes.iter().map(|n| n.response.clone()).collect()
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
