use std::collections::{HashMap, VecDeque};

use super::{Solution, Step};
use crate::space::{ProblemInstance, StateVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsResult {
    pub solution: Option<Solution>,
    /// Distinct states reachable from the initial state, including it.
    pub reachable_count: usize,
}

/// Exhaustive breadth-first enumeration ignoring path constraints and
/// failure detection. The returned solution is a shortest one; ties go to
/// the canonically first operator sequence.
pub fn solve_bfs(instance: &ProblemInstance) -> BfsResult {
    let space = instance.space();
    let init = instance.initial().clone();
    // state -> (parent, operator index)
    let mut parent: HashMap<StateVector, Option<(StateVector, usize)>> = HashMap::from([(init.clone(), None)]);
    let mut queue = VecDeque::from([init.clone()]);
    let mut goal = instance.is_goal(&init).then(|| init.clone());

    while let Some(s) = queue.pop_front() {
        for (k, op) in space.operators().iter().enumerate() {
            let Some(n) = space.successor(op, &s) else {
                continue;
            };
            if parent.contains_key(&n) {
                continue;
            }
            parent.insert(n.clone(), Some((s.clone(), k)));
            if goal.is_none() && instance.is_goal(&n) {
                goal = Some(n.clone());
            }
            queue.push_back(n);
        }
    }

    let solution = goal.map(|g| {
        let mut steps = Vec::new();
        let mut cur = g;
        while let Some(Some((prev, k))) = parent.get(&cur) {
            steps.push(Step {
                op: space.operators()[*k].display().to_string(),
                state: cur.clone(),
            });
            cur = prev.clone();
        }
        steps.reverse();
        Solution {
            initial: init.clone(),
            steps,
        }
    });
    BfsResult {
        solution,
        reachable_count: parent.len(),
    }
}
