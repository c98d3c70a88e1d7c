//! Weak-method search over problem instances.
//!
//! [`solve_iddfs`] is the main solver: iterative deepening with optional
//! path constraints, failure detection and an evaluation cache.
//! [`solve_bfs`] is an exhaustive breadth-first oracle used to check
//! optimality.

mod bfs;
mod cache;
mod iddfs;
mod trace;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::space::StateVector;

pub use bfs::{solve_bfs, BfsResult};
pub use cache::EvaluationCache;
pub use iddfs::{evaluate, solve_iddfs, Evaluation};
pub use trace::{parse_trace, render_trace, replay_trace, Trace, TraceError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Learning {
    /// No cache.
    None,
    /// A cache that lives for one solve.
    During,
    /// A cache carried across solves by the caller.
    Persist,
}

impl fmt::Display for Learning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Learning::None => "none",
            Learning::During => "during",
            Learning::Persist => "persist",
        })
    }
}

impl FromStr for Learning {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(Learning::None),
            "during" => Ok(Learning::During),
            "persist" | "after" => Ok(Learning::Persist),
            other => Err(format!("unknown learning mode `{other}` (none, during, persist)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ordering {
    /// Grounded operators in canonical (display-name) order.
    Lexicographic,
    /// Operators shuffled at every expansion by a generator seeded once
    /// per solve.
    Seeded(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub failure_detection: bool,
    pub learning: Learning,
    pub max_depth: u32,
    pub ordering: Ordering,
    pub path_constraints_enabled: bool,
    /// Stop once this many states have been expanded.
    pub expansion_budget: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            failure_detection: true,
            learning: Learning::None,
            max_depth: 64,
            ordering: Ordering::Lexicographic,
            path_constraints_enabled: true,
            expansion_budget: None,
        }
    }
}

impl SearchConfig {
    pub fn with_failure_detection(mut self, on: bool) -> Self {
        self.failure_detection = on;
        self
    }

    pub fn with_learning(mut self, learning: Learning) -> Self {
        self.learning = learning;
        self
    }

    pub fn with_max_depth(mut self, depth: u32) -> Self {
        self.max_depth = depth;
        self
    }

    pub fn with_ordering(mut self, ordering: Ordering) -> Self {
        self.ordering = ordering;
        self
    }

    pub fn with_path_constraints(mut self, on: bool) -> Self {
        self.path_constraints_enabled = on;
        self
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.expansion_budget = budget;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchStats {
    /// States whose successors were generated.
    pub expansions: u64,
    /// Successor states produced, including ones pruned afterwards.
    pub generated: u64,
    pub cache_hits: u64,
    /// Deepening rounds completed.
    pub iterations: u32,
    pub solution_length: Option<usize>,
    /// Generated states not seen before: by this solve, or for a
    /// persisted cache, by any earlier solve that used it.
    pub novel_states: u64,
    pub failure_prunes: u64,
    pub constraint_prunes: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SearchStatus {
    Solved,
    /// No solution within `max_depth`, but deeper paths were cut off.
    Exhausted,
    /// A deepening round finished without any depth cutoff, so no
    /// solution exists under the active pruning.
    Unsolvable,
    BudgetExceeded,
}

impl fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            SearchStatus::Solved => "solved",
            SearchStatus::Exhausted => "depth-exhausted",
            SearchStatus::Unsolvable => "unsolvable",
            SearchStatus::BudgetExceeded => "budget-exceeded",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub op: String,
    pub state: StateVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub initial: StateVector,
    pub steps: Vec<Step>,
}

impl Solution {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Initial state followed by every state reached.
    pub fn states(&self) -> Vec<StateVector> {
        std::iter::once(self.initial.clone())
            .chain(self.steps.iter().map(|s| s.state.clone()))
            .collect()
    }

    pub fn final_state(&self) -> &StateVector {
        self.steps.last().map_or(&self.initial, |s| &s.state)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub solution: Option<Solution>,
    pub stats: SearchStats,
}
