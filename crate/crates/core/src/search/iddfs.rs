use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::cache::{EvaluationCache, EXHAUSTIVE};
use super::{Learning, Ordering, SearchConfig, SearchOutcome, SearchStats, SearchStatus, Solution, Step};
use crate::space::{PathConstraint, ProblemInstance, StateVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Evaluation {
    Goal,
    Failure,
    DepthCutoff,
    Ongoing,
}

enum Node {
    Goal,
    Failure,
    Cutoff,
    CacheHit { exhaustive: bool },
    Open,
}

fn classify_node(
    instance: &ProblemInstance,
    s: &StateVector,
    remaining: u32,
    config: &SearchConfig,
    cache: Option<&EvaluationCache>,
    is_root: bool,
) -> Node {
    if instance.is_goal(s) {
        return Node::Goal;
    }
    if config.failure_detection && !is_root && instance.space().is_failure(s) {
        return Node::Failure;
    }
    if remaining == 0 {
        return Node::Cutoff;
    }
    if config.learning != Learning::None {
        if let Some(exhaustive) = cache.and_then(|c| c.lookup(s, remaining)) {
            return Node::CacheHit { exhaustive };
        }
    }
    Node::Open
}

/// Classifies a non-root state the way the solver does before deciding
/// whether to expand it. A cache hit counts as `Failure`.
pub fn evaluate(
    instance: &ProblemInstance,
    s: &StateVector,
    remaining_depth: u32,
    config: &SearchConfig,
    cache: Option<&EvaluationCache>,
) -> Evaluation {
    match classify_node(instance, s, remaining_depth, config, cache, false) {
        Node::Goal => Evaluation::Goal,
        Node::Failure | Node::CacheHit { .. } => Evaluation::Failure,
        Node::Cutoff => Evaluation::DepthCutoff,
        Node::Open => Evaluation::Ongoing,
    }
}

/// No dependency on any state of the current path.
const NO_DEP: usize = usize::MAX;

struct Visit {
    found: bool,
    /// Smallest path index whose presence pruned something in the subtree.
    /// Results that depend on ancestors must not be cached.
    min_dep: usize,
    cutoff: bool,
}

struct OverBudget;

struct Search<'a> {
    instance: &'a ProblemInstance,
    config: &'a SearchConfig,
    cache: &'a mut EvaluationCache,
    no_loop: bool,
    no_undo: bool,
    rng: Option<ChaCha8Rng>,
    order: Vec<usize>,
    path: Vec<StateVector>,
    ops: Vec<usize>,
    stats: SearchStats,
}

impl Search<'_> {
    fn visit(&mut self, i: usize, remaining: u32) -> Result<Visit, OverBudget> {
        let leaf = |cutoff| Visit {
            found: false,
            min_dep: NO_DEP,
            cutoff,
        };
        let s = self.path[i].clone();
        match classify_node(self.instance, &s, remaining, self.config, Some(self.cache), i == 0) {
            Node::Goal => {
                return Ok(Visit {
                    found: true,
                    min_dep: NO_DEP,
                    cutoff: false,
                })
            }
            Node::Failure => {
                self.stats.failure_prunes += 1;
                return Ok(leaf(false));
            }
            Node::Cutoff => return Ok(leaf(true)),
            Node::CacheHit { exhaustive } => {
                self.stats.cache_hits += 1;
                return Ok(leaf(!exhaustive));
            }
            Node::Open => {}
        }

        if self.config.expansion_budget.is_some_and(|b| self.stats.expansions >= b) {
            return Err(OverBudget);
        }
        self.stats.expansions += 1;
        let space = self.instance.space();
        let mut order = self.order.clone();
        if let Some(rng) = self.rng.as_mut() {
            order.shuffle(rng);
        }

        let mut min_dep = NO_DEP;
        let mut cutoff = false;
        for k in order {
            let Some(child) = space.successor(&space.operators()[k], &s) else {
                continue;
            };
            self.stats.generated += 1;
            if self.cache.mark_seen(&child) {
                self.stats.novel_states += 1;
            }
            let pruned_by = if self.no_loop {
                self.path.iter().position(|p| *p == child)
            } else if self.no_undo && i >= 1 && self.path[i - 1] == child {
                Some(i - 1)
            } else {
                None
            };
            if let Some(j) = pruned_by {
                self.stats.constraint_prunes += 1;
                min_dep = min_dep.min(j);
                continue;
            }
            self.path.push(child);
            self.ops.push(k);
            let r = self.visit(i + 1, remaining - 1)?;
            if r.found {
                return Ok(r);
            }
            self.path.pop();
            self.ops.pop();
            min_dep = min_dep.min(r.min_dep);
            cutoff |= r.cutoff;
        }

        if self.config.learning != Learning::None && min_dep >= i {
            self.cache
                .record_failure(&s, if cutoff { remaining } else { EXHAUSTIVE });
        }
        Ok(Visit {
            found: false,
            min_dep,
            cutoff,
        })
    }

    fn solution(&self) -> Solution {
        let space = self.instance.space();
        Solution {
            initial: self.path[0].clone(),
            steps: self
                .ops
                .iter()
                .zip(&self.path[1..])
                .map(|(k, s)| Step {
                    op: space.operators()[*k].display().to_string(),
                    state: s.clone(),
                })
                .collect(),
        }
    }
}

/// Iterative deepening: depth-limited DFS with limits 1, 2, … up to
/// `config.max_depth`, returning the first (hence shortest) solution.
///
/// With `Learning::Persist` the caller's cache is reused across calls; it
/// is cleared automatically when the space, goal or pruning configuration
/// differs from the one it was filled under. `Learning::During` uses the
/// given cache (cleared first) or a private one.
pub fn solve_iddfs(
    instance: &ProblemInstance,
    config: &SearchConfig,
    cache: Option<&mut EvaluationCache>,
) -> SearchOutcome {
    let mut local = EvaluationCache::new();
    let cache = match (config.learning, cache) {
        (Learning::Persist, Some(c)) => {
            c.bind(instance, config);
            c
        }
        (Learning::During, Some(c)) => {
            c.clear();
            c
        }
        _ => &mut local,
    };

    let space = instance.space();
    let constraints = space.path_constraints();
    let enabled = config.path_constraints_enabled;
    let mut search = Search {
        instance,
        config,
        no_loop: enabled && constraints.contains(&PathConstraint::NoLoopOnPath),
        no_undo: enabled && constraints.contains(&PathConstraint::NoUndo),
        rng: match config.ordering {
            Ordering::Lexicographic => None,
            Ordering::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        },
        order: (0..space.operators().len()).collect(),
        path: Vec::new(),
        ops: Vec::new(),
        stats: SearchStats::default(),
        cache,
    };
    search.cache.mark_seen(instance.initial());

    let done = |search: Search<'_>, status, solution: Option<Solution>| {
        let mut stats = search.stats;
        stats.solution_length = solution.as_ref().map(Solution::len);
        SearchOutcome {
            status,
            solution,
            stats,
        }
    };

    if instance.is_goal(instance.initial()) {
        let sol = Solution {
            initial: instance.initial().clone(),
            steps: Vec::new(),
        };
        return done(search, SearchStatus::Solved, Some(sol));
    }

    for limit in 1..=config.max_depth.max(1) {
        search.path = vec![instance.initial().clone()];
        search.ops.clear();
        let r = match search.visit(0, limit) {
            Ok(r) => r,
            Err(OverBudget) => return done(search, SearchStatus::BudgetExceeded, None),
        };
        search.stats.iterations += 1;
        if r.found {
            let sol = search.solution();
            return done(search, SearchStatus::Solved, Some(sol));
        }
        if !r.cutoff {
            return done(search, SearchStatus::Unsolvable, None);
        }
    }
    done(search, SearchStatus::Exhausted, None)
}
