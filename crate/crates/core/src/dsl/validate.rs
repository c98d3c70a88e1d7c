use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::{Span, SpecDocument};
use crate::space::{ProblemSpace, StateVector};

/// State spaces larger than this are not brute-forced; the checks that
/// need enumeration are skipped.
pub const BRUTE_FORCE_LIMIT: u128 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Severity {
    /// The document cannot be used as an executable specification.
    Blocking,
    Advisory,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FindingKind {
    NoGoal,
    UnsatisfiablePrecondition,
    UnreachableGoal,
    VariableNeverWritten,
    FailureSubsumesGoal,
    NoInstances,
    /// The space failed to build; only possible for hand-built documents.
    Malformed,
}

impl FindingKind {
    pub fn severity(self) -> Severity {
        match self {
            FindingKind::NoGoal | FindingKind::UnsatisfiablePrecondition | FindingKind::Malformed => Severity::Blocking,
            _ => Severity::Advisory,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub kind: FindingKind,
    pub severity: Severity,
    pub message: String,
    pub span: Option<Span>,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Blocking => "blocking",
            Severity::Advisory => "advisory",
        };
        match self.span {
            Some(s) => write!(f, "{s}: {sev}: {}", self.message),
            None => write!(f, "{sev}: {}", self.message),
        }
    }
}

fn finding(kind: FindingKind, message: String, span: Option<Span>) -> Finding {
    Finding {
        kind,
        severity: kind.severity(),
        message,
        span,
    }
}

fn reachable(space: &ProblemSpace, init: &StateVector) -> HashSet<StateVector> {
    let mut seen = HashSet::from([init.clone()]);
    let mut queue = VecDeque::from([init.clone()]);
    while let Some(s) = queue.pop_front() {
        for op in space.operators() {
            if let Some(n) = space.successor(op, &s) {
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
    }
    seen
}

/// Semantic checks on a parsed document. Findings are reported, never
/// raised; see [`Severity`] for which ones make a document unusable.
pub fn validate(doc: &SpecDocument) -> Vec<Finding> {
    let mut out = Vec::new();
    let space = match doc.space.build() {
        Ok(s) => s,
        Err(e) => {
            out.push(finding(FindingKind::Malformed, e.to_string(), doc.spans.get("space")));
            return out;
        }
    };
    let enumerable = space.state_count() <= BRUTE_FORCE_LIMIT;

    if doc.instances.is_empty() {
        out.push(finding(
            FindingKind::NoInstances,
            "document declares no problem instances".into(),
            doc.spans.get("space"),
        ));
    }

    if enumerable {
        let states: Vec<StateVector> = space.all_states().collect();
        for op in space.operators() {
            if !states.iter().any(|s| crate::space::applicable(op, s)) {
                let schema = &space.schemas()[op.schema_index()].name;
                out.push(finding(
                    FindingKind::UnsatisfiablePrecondition,
                    format!("precondition of {op} is false in every legal state"),
                    doc.spans.get(&format!("op:{schema}")),
                ));
            }
        }
    }

    for (i, v) in space.vars().iter().enumerate() {
        let written = space.operators().iter().any(|op| {
            let schema = &space.schemas()[op.schema_index()];
            schema
                .effects
                .iter()
                .any(|e| schema.params.iter().position(|p| *p == e.slot).map(|k| op.binding()[k]) == Some(i))
        });
        if !written {
            out.push(finding(
                FindingKind::VariableNeverWritten,
                format!("no operator ever changes `{}`", v.name),
                doc.spans.get(&format!("var:{}", v.name)),
            ));
        }
    }

    for inst in &doc.instances {
        let Some(goal) = &inst.goal else {
            out.push(finding(
                FindingKind::NoGoal,
                format!("instance `{}` has no goal expression", inst.label),
                doc.spans.get(&format!("instance:{}", inst.label)),
            ));
            continue;
        };
        let goal_span = doc.spans.get(&format!("goal:{}", inst.label));
        let Ok(compiled) = space.compile_state_predicate(goal, "goal") else {
            out.push(finding(
                FindingKind::Malformed,
                format!("goal of `{}` does not compile", inst.label),
                goal_span,
            ));
            continue;
        };
        if !enumerable {
            continue;
        }
        let init = StateVector(inst.init.clone());
        if !reachable(&space, &init).iter().any(|s| compiled.eval(s.values())) {
            out.push(finding(
                FindingKind::UnreachableGoal,
                format!(
                    "no state reachable from the initial state of `{}` satisfies its goal",
                    inst.label
                ),
                goal_span,
            ));
        }
        let goal_states: Vec<StateVector> = space.all_states().filter(|s| compiled.eval(s.values())).collect();
        if space.failure_predicate().is_some()
            && !goal_states.is_empty()
            && goal_states.iter().all(|s| space.is_failure(s))
        {
            out.push(finding(
                FindingKind::FailureSubsumesGoal,
                format!("every goal state of `{}` is also a failure state", inst.label),
                goal_span,
            ));
        }
    }
    out
}

/// True iff none of the findings is blocking.
pub fn usable(findings: &[Finding]) -> bool {
    findings.iter().all(|f| f.severity != Severity::Blocking)
}
