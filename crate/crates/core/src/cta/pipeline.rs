use std::path::PathBuf;

use chrono::{SecondsFormat, Utc};

use super::prompts::render_prompt;
use super::{LlmTransport, NodeId, NodeRecord, PipelineError, Transcript};

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Defaults to `<label>-<kind>`, e.g. `f_4_9_to_6-pipeline`.
    pub run_id: Option<String>,
    /// Where to persist the transcript after every node; nothing is
    /// written when `None`.
    pub out_dir: Option<PathBuf>,
}

impl RunOptions {
    pub fn in_dir(dir: impl Into<PathBuf>) -> Self {
        RunOptions {
            run_id: None,
            out_dir: Some(dir.into()),
        }
    }
}

fn now() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true)
}

fn persist(t: &Transcript, opts: &RunOptions) -> Result<(), PipelineError> {
    if let Some(dir) = &opts.out_dir {
        t.save(dir).map_err(|source| PipelineError::Persist {
            path: dir.join(Transcript::file_name(&t.run_id)),
            source,
        })?;
    }
    Ok(())
}

/// Runs `nodes` in order. Each node's prompt carries every earlier
/// response of this run. The transcript is persisted after each node, and
/// on failure the partial transcript (marked incomplete) is both persisted
/// and returned inside the error.
pub fn run_nodes(
    nodes: &[NodeId],
    problem_label: &str,
    problem: &str,
    transport: &LlmTransport,
    opts: &RunOptions,
    kind: &str,
) -> Result<Transcript, PipelineError> {
    if let Some(n) = nodes.iter().find(|n| **n == NodeId::ProblemSolvingCharacteristics) {
        return Err(PipelineError::Reserved(*n));
    }
    if problem.trim().is_empty() {
        return Err(PipelineError::Input("problem description is empty".into()));
    }
    let mut t = Transcript {
        run_id: opts.run_id.clone().unwrap_or_else(|| format!("{problem_label}-{kind}")),
        problem_label: problem_label.to_string(),
        problem: problem.to_string(),
        model_id: transport.model_id(),
        temperature: transport.temperature(),
        complete: false,
        nodes: Vec::new(),
    };
    for &node in nodes {
        let messages = render_prompt(node, problem, &t.responses())?;
        let started_at = now();
        let request = transport.request(messages);
        match transport.complete(node, &request) {
            Ok(resp) => {
                t.nodes.push(NodeRecord {
                    node,
                    prompt: request.messages,
                    response: resp.content,
                    started_at,
                    finished_at: now(),
                    usage: resp.usage,
                });
                persist(&t, opts)?;
            }
            Err(source) => {
                persist(&t, opts)?;
                return Err(PipelineError::Node {
                    node,
                    source,
                    partial: Box::new(t),
                });
            }
        }
    }
    t.complete = true;
    persist(&t, opts)?;
    Ok(t)
}

/// The six-node analysis pipeline.
pub fn run_pipeline(
    problem_label: &str,
    problem: &str,
    transport: &LlmTransport,
    opts: &RunOptions,
) -> Result<Transcript, PipelineError> {
    run_nodes(&NodeId::PIPELINE, problem_label, problem, transport, opts, "pipeline")
}

/// Single-prompt problem-space formulation baseline.
pub fn run_oneshot_formulate(
    problem_label: &str,
    problem: &str,
    transport: &LlmTransport,
    opts: &RunOptions,
) -> Result<Transcript, PipelineError> {
    run_nodes(
        &[NodeId::OneShotFormulate],
        problem_label,
        problem,
        transport,
        opts,
        "oneshot_formulate",
    )
}

/// Single-prompt step-by-step solving baseline.
pub fn run_oneshot_solve(
    problem_label: &str,
    problem: &str,
    transport: &LlmTransport,
    opts: &RunOptions,
) -> Result<Transcript, PipelineError> {
    run_nodes(
        &[NodeId::OneShotSolve],
        problem_label,
        problem,
        transport,
        opts,
        "oneshot_solve",
    )
}
