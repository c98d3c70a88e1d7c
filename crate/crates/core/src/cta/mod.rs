//! The cognitive-task-analyst pipeline: six prompt nodes run in order,
//! each seeing every earlier response, plus two one-shot baselines.

mod pipeline;
pub mod prompts;
mod transcript;
mod transport;

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use pipeline::{run_nodes, run_oneshot_formulate, run_oneshot_solve, run_pipeline, RunOptions};
pub use prompts::{render_prompt, system_prompt, PromptTemplate};
pub use transcript::{LoadError, NodeRecord, Transcript};
pub use transport::{
    ChatRequest, ChatResponse, FixtureSet, HttpClient, LiveConfig, LlmTransport, ReqwestClient, TransportError,
    TransportMode, Usage, API_KEY_ENV, DEFAULT_ENDPOINT, DEFAULT_MODEL_ID,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeId {
    Characterize,
    RefineCharacterization,
    Operators,
    RefineOperators,
    SearchControl,
    TestCases,
    /// Reserved for an analysis branch that has no prompts; the sequencer
    /// refuses to run it.
    ProblemSolvingCharacteristics,
    #[serde(rename = "oneshot_formulate")]
    OneShotFormulate,
    #[serde(rename = "oneshot_solve")]
    OneShotSolve,
    Extract,
}

impl NodeId {
    /// The pipeline nodes, in execution order.
    pub const PIPELINE: [NodeId; 6] = [
        NodeId::Characterize,
        NodeId::RefineCharacterization,
        NodeId::Operators,
        NodeId::RefineOperators,
        NodeId::SearchControl,
        NodeId::TestCases,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NodeId::Characterize => "characterize",
            NodeId::RefineCharacterization => "refine_characterization",
            NodeId::Operators => "operators",
            NodeId::RefineOperators => "refine_operators",
            NodeId::SearchControl => "search_control",
            NodeId::TestCases => "test_cases",
            NodeId::ProblemSolvingCharacteristics => "problem_solving_characteristics",
            NodeId::OneShotFormulate => "oneshot_formulate",
            NodeId::OneShotSolve => "oneshot_solve",
            NodeId::Extract => "extract",
        }
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    System,
    User,
    Assistant,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Role::System => "system",
            Role::User => "user",
            Role::Assistant => "assistant",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChatMessage {
    pub role: Role,
    pub content: String,
}

impl ChatMessage {
    pub fn system(content: impl Into<String>) -> Self {
        ChatMessage {
            role: Role::System,
            content: content.into(),
        }
    }

    pub fn user(content: impl Into<String>) -> Self {
        ChatMessage {
            role: Role::User,
            content: content.into(),
        }
    }

    pub fn assistant(content: impl Into<String>) -> Self {
        ChatMessage {
            role: Role::Assistant,
            content: content.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("node `{0}` is reserved and cannot be run")]
    Reserved(NodeId),
    #[error("node `{0}` has no agent template")]
    NotTemplated(NodeId),
    #[error("node `{node}` failed: {source}")]
    Node {
        node: NodeId,
        #[source]
        source: TransportError,
        /// Everything completed before the failure; already persisted when
        /// an output directory was given.
        partial: Box<Transcript>,
    },
    #[error("could not write transcript to {path}: {source}")]
    Persist {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl PipelineError {
    pub fn partial(&self) -> Option<&Transcript> {
        match self {
            PipelineError::Node { partial, .. } => Some(partial),
            _ => None,
        }
    }
}
