use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet};
use std::hash::{Hash, Hasher};

use super::SearchConfig;
use crate::space::{ProblemInstance, StateVector};

/// Failure memo keyed by state.
///
/// An entry `(s, d)` records that no goal is reachable from `s` within `d`
/// steps under the active constraints, independent of the path that led
/// to `s`. Failure at depth `d` implies failure at every shallower depth,
/// so one number per state suffices; `u32::MAX` marks a subtree that was
/// searched without hitting the depth limit at all.
#[derive(Clone, Debug, Default)]
pub struct EvaluationCache {
    failed: HashMap<StateVector, u32>,
    seen: HashSet<StateVector>,
    fingerprint: Option<u64>,
}

pub(crate) const EXHAUSTIVE: u32 = u32::MAX;

impl EvaluationCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.failed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.failed.is_empty()
    }

    /// States generated by any solve that used this cache.
    pub fn seen_states(&self) -> usize {
        self.seen.len()
    }

    pub fn clear(&mut self) {
        self.failed.clear();
        self.seen.clear();
        self.fingerprint = None;
    }

    /// Whether `s` is known to fail within `remaining` steps. The second
    /// value is true when the entry covers every depth.
    pub fn lookup(&self, s: &StateVector, remaining: u32) -> Option<bool> {
        self.failed
            .get(s)
            .filter(|d| **d >= remaining)
            .map(|d| *d == EXHAUSTIVE)
    }

    pub(crate) fn record_failure(&mut self, s: &StateVector, depth: u32) {
        let e = self.failed.entry(s.clone()).or_insert(depth);
        *e = (*e).max(depth);
    }

    /// Returns true if `s` had not been seen before.
    pub(crate) fn mark_seen(&mut self, s: &StateVector) -> bool {
        if self.seen.contains(s) {
            false
        } else {
            self.seen.insert(s.clone());
            true
        }
    }

    /// Drops everything if the cache was filled for a different space,
    /// goal or constraint configuration.
    pub(crate) fn bind(&mut self, instance: &ProblemInstance, config: &SearchConfig) {
        let fp = fingerprint(instance, config);
        if self.fingerprint != Some(fp) {
            self.failed.clear();
            self.seen.clear();
            self.fingerprint = Some(fp);
        }
    }
}

fn fingerprint(instance: &ProblemInstance, config: &SearchConfig) -> u64 {
    let mut h = DefaultHasher::new();
    let space = instance.space();
    space.vars().hash(&mut h);
    space.schemas().hash(&mut h);
    space.path_constraints().hash(&mut h);
    space.failure_predicate().hash(&mut h);
    instance.goal().hash(&mut h);
    config.failure_detection.hash(&mut h);
    config.path_constraints_enabled.hash(&mut h);
    h.finish()
}
