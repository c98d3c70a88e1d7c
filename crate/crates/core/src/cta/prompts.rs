//! Prompt texts and their assembly.
//!
//! The raw texts under `data/prompts/` keep the line-continuation
//! backslashes of their original string-literal form; [`literal`] applies
//! the same processing a Python string literal would.

use super::{ChatMessage, NodeId, PipelineError};

const GENERAL_SYSTEM: &str = include_str!("../../data/prompts/general_system.txt");
const CHARACTERIZE: &str = include_str!("../../data/prompts/characterize.txt");
const REFINE_CHARACTERIZATION: &str = include_str!("../../data/prompts/refine_characterization.txt");
const OPERATORS: &str = include_str!("../../data/prompts/operators.txt");
const REFINE_OPERATORS: &str = include_str!("../../data/prompts/refine_operators.txt");
const SEARCH_CONTROL: &str = include_str!("../../data/prompts/search_control.txt");
const TEST_CASES: &str = include_str!("../../data/prompts/test_cases.txt");
const ONESHOT_SOLVER: &str = include_str!("../../data/prompts/oneshot_solver.txt");
const ONESHOT_FORMULATE: &str = include_str!("../../data/prompts/oneshot_formulate.txt");

pub const PROBLEM_HEADING: &str = "SPECIFIC PROBLEM:";
pub const CLOSING_LINE: &str = "LIMIT YOUR RESPONSE TO THIS QUESTION ONLY/ASPECT OF ANALYSIS.";
const PROBLEM_SLOT: &str = "{problem_description}";

/// Interprets a raw text the way a triple-quoted string literal body is
/// read: a backslash directly before a newline joins the lines. The file's
/// final newline and a dangling final backslash are dropped.
pub fn literal(raw: &str) -> String {
    let body = raw.strip_suffix('\n').unwrap_or(raw);
    let joined = body.replace("\\\n", "");
    joined.strip_suffix('\\').unwrap_or(&joined).to_string()
}

pub fn general_system_prompt() -> String {
    literal(GENERAL_SYSTEM)
}

/// Analysis instructions for a pipeline node, or `None` for nodes that are
/// not assembled from the agent template.
pub fn analysis_instructions(node: NodeId) -> Option<String> {
    let raw = match node {
        NodeId::Characterize => CHARACTERIZE,
        NodeId::RefineCharacterization => REFINE_CHARACTERIZATION,
        NodeId::Operators => OPERATORS,
        NodeId::RefineOperators => REFINE_OPERATORS,
        NodeId::SearchControl => SEARCH_CONTROL,
        NodeId::TestCases => TEST_CASES,
        NodeId::OneShotFormulate => ONESHOT_FORMULATE,
        _ => return None,
    };
    Some(literal(raw))
}

/// A pipeline node's prompt template.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PromptTemplate {
    pub general_system_prompt: String,
    pub analysis_instructions: String,
    pub closing_line: Option<String>,
}

impl PromptTemplate {
    pub fn for_node(node: NodeId) -> Result<Self, PipelineError> {
        if node == NodeId::ProblemSolvingCharacteristics {
            return Err(PipelineError::Reserved(node));
        }
        let analysis_instructions = analysis_instructions(node).ok_or(PipelineError::NotTemplated(node))?;
        Ok(PromptTemplate {
            general_system_prompt: general_system_prompt(),
            analysis_instructions,
            closing_line: (node != NodeId::OneShotFormulate).then(|| CLOSING_LINE.to_string()),
        })
    }

    /// `general ⧺ SPECIFIC PROBLEM: ⧺ problem ⧺ instructions [⧺ closing]`,
    /// one part per line.
    pub fn assemble(&self, problem: &str) -> String {
        let mut out = format!(
            "{}\n{PROBLEM_HEADING}\n{}\n{}",
            self.general_system_prompt,
            literal(problem),
            self.analysis_instructions
        );
        if let Some(c) = &self.closing_line {
            out.push('\n');
            out.push_str(c);
        }
        out
    }
}

fn check_problem(problem: &str) -> Result<(), PipelineError> {
    if problem.trim().is_empty() {
        Err(PipelineError::Input("problem description is empty".into()))
    } else {
        Ok(())
    }
}

/// The system prompt for `node` (the assembled template; for the one-shot
/// solver, the solver persona with the problem substituted).
pub fn system_prompt(node: NodeId, problem: &str) -> Result<String, PipelineError> {
    check_problem(problem)?;
    if node == NodeId::OneShotSolve {
        return Ok(literal(ONESHOT_SOLVER).replace(PROBLEM_SLOT, &literal(problem)));
    }
    Ok(PromptTemplate::for_node(node)?.assemble(problem))
}

/// Full message list for a node: its system prompt followed by every
/// earlier response, in order, as assistant turns.
pub fn render_prompt(
    node: NodeId,
    problem: &str,
    prior_responses: &[String],
) -> Result<Vec<ChatMessage>, PipelineError> {
    let mut messages = vec![ChatMessage::system(system_prompt(node, problem)?)];
    messages.extend(prior_responses.iter().map(|r| ChatMessage::assistant(r.clone())));
    Ok(messages)
}

/// Flattens a message list into one text, for display and golden files.
pub fn flatten(messages: &[ChatMessage]) -> String {
    messages
        .iter()
        .map(|m| format!("[{}]\n{}\n", m.role, m.content))
        .collect::<Vec<_>>()
        .join("\n")
}
