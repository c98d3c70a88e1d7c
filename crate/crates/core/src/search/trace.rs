//! Line-oriented solution traces:
//!
//! ```text
//! 0: init
//!   j4: 0
//!   j9: 0
//! 1: fill(j9)
//!   j4: 0
//!   j9: 9
//! # stats: expansions=2 generated=4 ...
//! ```

use std::fmt::Write;

use thiserror::Error;

use super::{SearchStats, Solution, Step};
use crate::space::{apply, ProblemInstance, ProblemSpace, StateVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub index: usize,
    pub op: String,
    pub values: Vec<(String, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub entries: Vec<TraceEntry>,
    /// `key=value` pairs from the trailing stats line, if any.
    pub stats: Vec<(String, String)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TraceError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("trace is empty")]
    Empty,
    #[error("step {step}: unknown operator `{op}`")]
    UnknownOperator { step: usize, op: String },
    #[error("step {step}: {message}")]
    Mismatch { step: usize, message: String },
    #[error("step {step}: {source}")]
    Apply {
        step: usize,
        #[source]
        source: crate::space::ModelError,
    },
    #[error("final state {0} does not satisfy the goal")]
    NotAGoal(StateVector),
}

fn stats_line(stats: &SearchStats) -> String {
    let len = stats.solution_length.map_or("none".to_string(), |l| l.to_string());
    format!(
        "# stats: expansions={} generated={} cache_hits={} iterations={} solution_length={} novel_states={} failure_prunes={} constraint_prunes={}",
        stats.expansions,
        stats.generated,
        stats.cache_hits,
        stats.iterations,
        len,
        stats.novel_states,
        stats.failure_prunes,
        stats.constraint_prunes
    )
}

pub fn render_trace(space: &ProblemSpace, solution: &Solution, stats: Option<&SearchStats>) -> String {
    let mut out = String::new();
    let mut block = |n: usize, op: &str, s: &StateVector| {
        writeln!(out, "{n}: {op}").unwrap();
        for (v, x) in space.vars().iter().zip(s.values()) {
            writeln!(out, "  {}: {x}", v.name).unwrap();
        }
    };
    block(0, "init", &solution.initial);
    for (i, step) in solution.steps.iter().enumerate() {
        block(i + 1, &step.op, &step.state);
    }
    if let Some(st) = stats {
        out.push_str(&stats_line(st));
        out.push('\n');
    }
    out
}

pub fn parse_trace(text: &str) -> Result<Trace, TraceError> {
    let mut entries: Vec<TraceEntry> = Vec::new();
    let mut stats = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |message: &str| TraceError::Syntax {
            line: ln + 1,
            message: message.to_string(),
        };
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(kv) = rest.trim().strip_prefix("stats:") {
                for pair in kv.split_whitespace() {
                    let (k, v) = pair.split_once('=').ok_or_else(|| err("malformed stats pair"))?;
                    stats.push((k.to_string(), v.to_string()));
                }
            }
            continue;
        }
        let (head, tail) = line
            .split_once(':')
            .ok_or_else(|| err("expected `<n>: <op>` or `<var>: <value>`"))?;
        let (head, tail) = (head.trim(), tail.trim());
        if let Ok(index) = head.parse::<usize>() {
            if index != entries.len() {
                return Err(err(&format!("expected step {}, found {index}", entries.len())));
            }
            entries.push(TraceEntry {
                index,
                op: tail.to_string(),
                values: Vec::new(),
            });
        } else {
            let value = tail
                .parse::<u32>()
                .map_err(|_| err("variable value must be a non-negative integer"))?;
            let entry = entries
                .last_mut()
                .ok_or_else(|| err("variable line before the first step"))?;
            entry.values.push((head.to_string(), value));
        }
    }
    if entries.is_empty() {
        return Err(TraceError::Empty);
    }
    Ok(Trace { entries, stats })
}

fn check_values(space: &ProblemSpace, step: usize, entry: &TraceEntry, s: &StateVector) -> Result<(), TraceError> {
    if entry.values.len() != space.vars().len() {
        return Err(TraceError::Mismatch {
            step,
            message: format!(
                "expected {} variable lines, found {}",
                space.vars().len(),
                entry.values.len()
            ),
        });
    }
    for ((name, v), (spec, actual)) in entry.values.iter().zip(space.vars().iter().zip(s.values())) {
        if *name != spec.name || v != actual {
            return Err(TraceError::Mismatch {
                step,
                message: format!("trace says {name}: {v}, replay gives {}: {actual}", spec.name),
            });
        }
    }
    Ok(())
}

/// Re-executes a trace through `apply`, checking every recorded state and
/// that the last one is a goal.
pub fn replay_trace(instance: &ProblemInstance, text: &str) -> Result<Solution, TraceError> {
    let trace = parse_trace(text)?;
    let space = instance.space();
    let first = &trace.entries[0];
    if first.op != "init" {
        return Err(TraceError::Mismatch {
            step: 0,
            message: "first step must be `init`".into(),
        });
    }
    check_values(space, 0, first, instance.initial())?;
    let mut cur = instance.initial().clone();
    let mut steps = Vec::new();
    for entry in &trace.entries[1..] {
        let op = space.operator(&entry.op).ok_or_else(|| TraceError::UnknownOperator {
            step: entry.index,
            op: entry.op.clone(),
        })?;
        cur = apply(space, op, &cur).map_err(|source| TraceError::Apply {
            step: entry.index,
            source,
        })?;
        check_values(space, entry.index, entry, &cur)?;
        steps.push(Step {
            op: entry.op.clone(),
            state: cur.clone(),
        });
    }
    if !instance.is_goal(&cur) {
        return Err(TraceError::NotAGoal(cur));
    }
    Ok(Solution {
        initial: instance.initial().clone(),
        steps,
    })
}
