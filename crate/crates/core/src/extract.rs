//! Turning analyst transcripts into executable `.pspace` specifications.
//!
//! An extra LLM node is asked to write a `.pspace` document; its output is
//! parsed, validated and solved, and on any failure the diagnostics are
//! sent back for a repair, up to a fixed number of attempts.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::cta::{ChatMessage, LlmTransport, NodeId, Transcript, TransportError};
use crate::dsl::{parse, render, usable, validate, Diagnostic, Finding, SpecDocument};
use crate::search::{solve_bfs, BfsResult};

pub const DEFAULT_MAX_ATTEMPTS: u32 = 3;

/// Largest state space the gate will enumerate.
pub const DEFAULT_STATE_LIMIT: u128 = 1 << 20;

const GRAMMAR: &str = r#"space <id> {
  var <id> : 0..<capacity> [unit "<text>"];        # one per state variable
  op <id>(<slot>, ...) {
    pre: <boolean expression over slots>;
    eff: <slot> := <integer expression>; ...      # simultaneous assignments
  }
  constraint no_undo;                              # optional
  constraint no_loop;                              # optional
  failure: <boolean expression over variables>;    # optional
}

instance <id> of <space id> {
  init: <var> = <int>, ...;
  goal: <boolean expression over variables>;
}

Integer expressions: integer literals, names, cap(<name>), sum(), +, -, min(a, b), max(a, b).
Boolean expressions: comparisons (=, !=, <, <=, >, >=) combined with and, or, not, and parentheses.
Operators are instantiated for every ordered tuple of distinct variables.
Values are non-negative integers; express every quantity in one common unit."#;

const SYSTEM: &str = "You convert problem-space formulations into a small specification language. \
Reply with one complete specification in a ```pspace code block and nothing else.";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    LlmEmitted,
    ManualImport,
}

#[derive(Clone, Debug)]
pub struct ExtractionResult {
    pub spec: SpecDocument,
    /// Canonical text of `spec`.
    pub source: String,
    pub attempts: u32,
    pub findings: Vec<Finding>,
    pub provenance: Provenance,
    /// Oracle result for each instance, in document order.
    pub solutions: Vec<(String, BfsResult)>,
    pub written_to: Option<PathBuf>,
}

impl ExtractionResult {
    pub fn usable(&self) -> bool {
        usable(&self.findings)
    }

    /// Oracle solution length of the first instance.
    pub fn solution_length(&self) -> Option<usize> {
        self.solutions.first()?.1.solution.as_ref().map(|s| s.len())
    }
}

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("transcript lacks responses for: {0:?}")]
    Incomplete(Vec<NodeId>),
    #[error("extraction transport failed: {0}")]
    Transport(#[from] TransportError),
    #[error("no usable specification after {attempts} attempts; last problems:\n{}", .diagnostics.join("\n"))]
    Failed { attempts: u32, diagnostics: Vec<String> },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] Diagnostic),
    #[error("specification has blocking findings:\n{}", .0.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("\n"))]
    Validation(Vec<Finding>),
}

#[derive(Clone, Debug)]
pub struct ExtractOptions {
    pub max_attempts: u32,
    pub state_limit: u128,
    /// Directory for `<run_id>.extracted.pspace`.
    pub out_dir: Option<PathBuf>,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            state_limit: DEFAULT_STATE_LIMIT,
            out_dir: None,
        }
    }
}

/// Contents of the first fenced code block, or the whole text.
pub fn strip_code_fence(text: &str) -> &str {
    let Some(start) = text.find("```") else {
        return text.trim();
    };
    let after = &text[start + 3..];
    let body = after.find('\n').map_or("", |i| &after[i + 1..]);
    match body.find("```") {
        Some(end) => &body[..end],
        None => body,
    }
}

pub fn extraction_prompt(transcript: &Transcript) -> Result<Vec<ChatMessage>, ExtractError> {
    let required = [
        NodeId::RefineCharacterization,
        NodeId::Operators,
        NodeId::RefineOperators,
    ];
    let missing: Vec<NodeId> = required
        .iter()
        .copied()
        .filter(|n| transcript.response(*n).is_none())
        .collect();
    if !missing.is_empty() {
        return Err(ExtractError::Incomplete(missing));
    }
    let section = |title: &str, node: NodeId| {
        transcript
            .response(node)
            .map(|r| format!("## {title}\n{r}\n\n"))
            .unwrap_or_default()
    };
    let user = format!(
        "Specification language:\n```\n{GRAMMAR}\n```\n\n## Problem\n{}\n\n{}{}{}{}Write a complete .pspace document for this problem, \
with one instance for the specific example.",
        crate::cta::prompts::literal(&transcript.problem),
        section("Problem characterization", NodeId::RefineCharacterization),
        section("Operators", NodeId::Operators),
        section("Revised operators", NodeId::RefineOperators),
        section("Search control", NodeId::SearchControl),
    );
    Ok(vec![ChatMessage::system(SYSTEM), ChatMessage::user(user)])
}

type Gated = (SpecDocument, Vec<Finding>, Vec<(String, BfsResult)>);

/// Parse, validate and solve. Returns the problems found, if any.
fn gate(text: &str, state_limit: u128) -> Result<Gated, Vec<String>> {
    let doc = parse(strip_code_fence(text)).map_err(|d| vec![d.to_string()])?;
    let findings = validate(&doc);
    if !usable(&findings) {
        return Err(findings
            .iter()
            .filter(|f| f.severity == crate::dsl::Severity::Blocking)
            .map(|f| f.to_string())
            .collect());
    }
    if doc.instances.is_empty() {
        return Err(vec!["a document must declare at least one instance".into()]);
    }
    let space = doc.build_space().map_err(|e| vec![e.to_string()])?;
    if space.state_count() > state_limit {
        return Err(vec![format!(
            "the state space has {} states, more than the limit of {state_limit}",
            space.state_count()
        )]);
    }
    let instances = doc.build_instances().map_err(|e| vec![e.to_string()])?;
    let solutions = instances
        .iter()
        .map(|i| (i.label().to_string(), solve_bfs(i)))
        .collect();
    Ok((doc, findings, solutions))
}

fn write_spec(dir: &Path, run_id: &str, source: &str) -> Result<PathBuf, ExtractError> {
    let path = dir.join(format!("{run_id}.extracted.pspace"));
    std::fs::create_dir_all(dir)
        .and_then(|_| std::fs::write(&path, source))
        .map_err(|source| ExtractError::Io {
            path: path.clone(),
            source,
        })?;
    Ok(path)
}

pub fn extract_spec(
    transcript: &Transcript,
    transport: &LlmTransport,
    opts: &ExtractOptions,
) -> Result<ExtractionResult, ExtractError> {
    let mut messages = extraction_prompt(transcript)?;
    let mut problems = Vec::new();
    for attempt in 1..=opts.max_attempts.max(1) {
        let request = transport.request(messages.clone());
        let reply = transport.complete(NodeId::Extract, &request)?.content;
        match gate(&reply, opts.state_limit) {
            Ok((spec, findings, solutions)) => {
                let source = render(&spec);
                let written_to = match &opts.out_dir {
                    Some(dir) => Some(write_spec(dir, &transcript.run_id, &source)?),
                    None => None,
                };
                return Ok(ExtractionResult {
                    spec,
                    source,
                    attempts: attempt,
                    findings,
                    provenance: Provenance::LlmEmitted,
                    solutions,
                    written_to,
                });
            }
            Err(p) => {
                messages.push(ChatMessage::assistant(reply));
                messages.push(ChatMessage::user(format!(
                    "That specification was rejected:\n{}\nReply with the corrected complete specification.",
                    p.join("\n")
                )));
                problems = p;
            }
        }
    }
    Err(ExtractError::Failed {
        attempts: opts.max_attempts.max(1),
        diagnostics: problems,
    })
}

/// Loads a hand-written specification as if it had been extracted.
pub fn import_manual_spec(path: &Path) -> Result<ExtractionResult, ExtractError> {
    let text = std::fs::read_to_string(path).map_err(|source| ExtractError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let spec = parse(&text)?;
    let findings = validate(&spec);
    if !usable(&findings) {
        return Err(ExtractError::Validation(findings));
    }
    let solutions = spec
        .build_instances()
        .map_err(|e| {
            ExtractError::Validation(vec![Finding {
                kind: crate::dsl::FindingKind::Malformed,
                severity: crate::dsl::Severity::Blocking,
                message: e.to_string(),
                span: None,
            }])
        })?
        .iter()
        .map(|i| (i.label().to_string(), solve_bfs(i)))
        .collect();
    Ok(ExtractionResult {
        source: render(&spec),
        spec,
        attempts: 0,
        findings,
        provenance: Provenance::ManualImport,
        solutions,
        written_to: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fences() {
        assert_eq!(
            strip_code_fence("intro\n```pspace\nspace s {}\n```\nbye"),
            "space s {}\n"
        );
        assert_eq!(strip_code_fence("  space s {}  "), "space s {}");
        assert_eq!(strip_code_fence("```\nopen"), "open");
    }
}
