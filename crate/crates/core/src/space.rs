//! Executable problem spaces: bounded integer state variables, operator
//! schemas grounded over those variables, path constraints, and goal /
//! failure classification.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{compile_bool, compile_int, BoolExpr, Expr, ExprError, IntExpr};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSpec {
    pub name: String,
    pub capacity: u32,
    /// Documentation only; never interpreted.
    pub unit: Option<String>,
}

impl VarSpec {
    pub fn new(name: impl Into<String>, capacity: u32) -> Self {
        VarSpec {
            name: name.into(),
            capacity,
            unit: None,
        }
    }

    pub fn with_unit(mut self, unit: impl Into<String>) -> Self {
        self.unit = Some(unit.into());
        self
    }
}

/// One value per state variable, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StateVector(pub Vec<u32>);

impl StateVector {
    pub fn zeros(len: usize) -> Self {
        StateVector(vec![0; len])
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<u32>> for StateVector {
    fn from(v: Vec<u32>) -> Self {
        StateVector(v)
    }
}

impl<const N: usize> From<[u32; N]> for StateVector {
    fn from(v: [u32; N]) -> Self {
        StateVector(v.to_vec())
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Effect {
    pub slot: String,
    pub value: Expr,
}

impl Effect {
    pub fn new(slot: impl Into<String>, value: Expr) -> Self {
        Effect {
            slot: slot.into(),
            value,
        }
    }
}

/// An operator over a tuple of pairwise-distinct variable slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OperatorSchema {
    pub name: String,
    pub params: Vec<String>,
    pub precondition: Expr,
    /// Applied simultaneously: every right-hand side reads the old state.
    pub effects: Vec<Effect>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PathConstraint {
    /// Reject a successor equal to the state before the previous step.
    NoUndo,
    /// Reject a successor equal to any state on the current path.
    NoLoopOnPath,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundOperator {
    schema: usize,
    binding: Vec<usize>,
    display: String,
    precondition: BoolExpr,
    effects: Vec<(usize, IntExpr)>,
}

impl GroundOperator {
    /// Canonical name such as `pour(j9,j4)`.
    pub fn display(&self) -> &str {
        &self.display
    }

    pub fn schema_index(&self) -> usize {
        self.schema
    }

    /// Variable index bound to each schema parameter, in parameter order.
    pub fn binding(&self) -> &[usize] {
        &self.binding
    }
}

impl fmt::Display for GroundOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("problem space needs at least one {0}")]
    Empty(&'static str),
    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("operator `{schema}` references undeclared slot `{slot}`")]
    UndeclaredSlot { schema: String, slot: String },
    #[error("operator `{schema}` assigns slot `{slot}` more than once")]
    DoubleAssignment { schema: String, slot: String },
    #[error("operator `{schema}` has {params} parameters but the space has only {vars} variables")]
    Arity { schema: String, params: usize, vars: usize },
    #[error("{context}: {source}")]
    Expr {
        context: String,
        #[source]
        source: ExprError,
    },
    #[error("state {state} does not match the space's {expected} variables")]
    Width { state: StateVector, expected: usize },
    #[error("state {state} violates the bounds of `{var}` (capacity {capacity})")]
    Bounds {
        state: StateVector,
        var: String,
        capacity: u32,
    },
    #[error("{op} is not applicable in state {state}")]
    NotApplicable { op: String, state: StateVector },
    #[error("{op} applied to {state} produces a value outside the bounds of `{var}`")]
    EffectOutOfBounds {
        op: String,
        state: StateVector,
        var: String,
    },
}

#[derive(Clone, Debug)]
pub struct ProblemSpace {
    name: String,
    vars: Vec<VarSpec>,
    schemas: Vec<OperatorSchema>,
    path_constraints: BTreeSet<PathConstraint>,
    failure: Option<Expr>,
    grounded: Vec<GroundOperator>,
    failure_compiled: Option<BoolExpr>,
}

impl PartialEq for ProblemSpace {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.vars == other.vars
            && self.schemas == other.schemas
            && self.path_constraints == other.path_constraints
            && self.failure == other.failure
    }
}

impl Eq for ProblemSpace {}

impl ProblemSpace {
    pub fn new(
        name: impl Into<String>,
        vars: Vec<VarSpec>,
        schemas: Vec<OperatorSchema>,
        path_constraints: BTreeSet<PathConstraint>,
        failure: Option<Expr>,
    ) -> Result<Self, ModelError> {
        if vars.is_empty() {
            return Err(ModelError::Empty("variable"));
        }
        if schemas.is_empty() {
            return Err(ModelError::Empty("operator schema"));
        }
        check_unique("variable", vars.iter().map(|v| v.name.as_str()))?;
        check_unique("operator", schemas.iter().map(|s| s.name.as_str()))?;

        let mut space = ProblemSpace {
            name: name.into(),
            vars,
            schemas,
            path_constraints,
            failure,
            grounded: Vec::new(),
            failure_compiled: None,
        };
        space.grounded = ground_operators(&space)?;
        space.failure_compiled = match &space.failure {
            Some(f) => Some(space.compile_state_predicate(f, "failure predicate")?),
            None => None,
        };
        Ok(space)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &[VarSpec] {
        &self.vars
    }

    pub fn schemas(&self) -> &[OperatorSchema] {
        &self.schemas
    }

    pub fn path_constraints(&self) -> &BTreeSet<PathConstraint> {
        &self.path_constraints
    }

    pub fn failure_predicate(&self) -> Option<&Expr> {
        self.failure.as_ref()
    }

    /// Grounded operators in canonical order.
    pub fn operators(&self) -> &[GroundOperator] {
        &self.grounded
    }

    pub fn operator(&self, display: &str) -> Option<&GroundOperator> {
        self.grounded.iter().find(|o| o.display == display)
    }

    pub fn capacities(&self) -> Vec<u32> {
        self.vars.iter().map(|v| v.capacity).collect()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    /// Number of states inside the bounds, saturating.
    pub fn state_count(&self) -> u128 {
        self.vars
            .iter()
            .fold(1u128, |acc, v| acc.saturating_mul(u128::from(v.capacity) + 1))
    }

    /// Every in-bounds state, in lexicographic order.
    pub fn all_states(&self) -> impl Iterator<Item = StateVector> + '_ {
        let caps = self.capacities();
        let mut next = Some(vec![0u32; caps.len()]);
        std::iter::from_fn(move || {
            let current = next.take()?;
            let mut succ = current.clone();
            for i in (0..succ.len()).rev() {
                if succ[i] < caps[i] {
                    succ[i] += 1;
                    next = Some(succ);
                    break;
                }
                succ[i] = 0;
            }
            Some(StateVector(current))
        })
    }

    pub fn check_state(&self, s: &StateVector) -> Result<(), ModelError> {
        if s.len() != self.vars.len() {
            return Err(ModelError::Width {
                state: s.clone(),
                expected: self.vars.len(),
            });
        }
        for (v, spec) in s.0.iter().zip(&self.vars) {
            if *v > spec.capacity {
                return Err(ModelError::Bounds {
                    state: s.clone(),
                    var: spec.name.clone(),
                    capacity: spec.capacity,
                });
            }
        }
        Ok(())
    }

    pub fn is_failure(&self, s: &StateVector) -> bool {
        self.failure_compiled.as_ref().is_some_and(|f| f.eval(s.values()))
    }

    /// Compiles a boolean expression whose names are state variables.
    pub fn compile_state_predicate(&self, e: &Expr, context: &str) -> Result<BoolExpr, ModelError> {
        let scope = |n: &str| self.var_index(n);
        compile_bool(e, &scope, &self.capacities()).map_err(|source| ModelError::Expr {
            context: context.to_string(),
            source,
        })
    }

    /// Successor of `s` under `op`, or `None` when the precondition fails or
    /// an effect leaves the bounds.
    pub fn successor(&self, op: &GroundOperator, s: &StateVector) -> Option<StateVector> {
        if !op.precondition.eval(s.values()) {
            return None;
        }
        self.effect_result(op, s).ok()
    }

    fn effect_result(&self, op: &GroundOperator, s: &StateVector) -> Result<StateVector, ModelError> {
        let mut next = s.clone();
        for (idx, rhs) in &op.effects {
            let v = rhs.eval(s.values());
            let cap = self.vars[*idx].capacity;
            if v < 0 || v > i64::from(cap) {
                return Err(ModelError::EffectOutOfBounds {
                    op: op.display.clone(),
                    state: s.clone(),
                    var: self.vars[*idx].name.clone(),
                });
            }
            next.0[*idx] = v as u32;
        }
        Ok(next)
    }
}

fn check_unique<'a>(kind: &'static str, names: impl Iterator<Item = &'a str>) -> Result<(), ModelError> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(ModelError::Duplicate {
                kind,
                name: n.to_string(),
            });
        }
    }
    Ok(())
}

fn check_schema(schema: &OperatorSchema, var_count: usize) -> Result<(), ModelError> {
    check_unique("slot", schema.params.iter().map(String::as_str))?;
    if schema.params.len() > var_count {
        return Err(ModelError::Arity {
            schema: schema.name.clone(),
            params: schema.params.len(),
            vars: var_count,
        });
    }
    let declared = |n: &str| schema.params.iter().any(|p| p == n);
    let undeclared = |slot: &str| ModelError::UndeclaredSlot {
        schema: schema.name.clone(),
        slot: slot.to_string(),
    };
    for r in schema.precondition.references() {
        if !declared(r) {
            return Err(undeclared(r));
        }
    }
    let mut assigned = HashSet::new();
    for eff in &schema.effects {
        if !declared(&eff.slot) {
            return Err(undeclared(&eff.slot));
        }
        if !assigned.insert(eff.slot.as_str()) {
            return Err(ModelError::DoubleAssignment {
                schema: schema.name.clone(),
                slot: eff.slot.clone(),
            });
        }
        for r in eff.value.references() {
            if !declared(r) {
                return Err(undeclared(r));
            }
        }
    }
    Ok(())
}

/// All k-permutations of `0..n`, in lexicographic order.
fn permutations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Instantiates every schema over ordered tuples of distinct variables.
///
/// The result is sorted by display name, so equal spaces always ground to
/// identical lists.
pub fn ground_operators(space: &ProblemSpace) -> Result<Vec<GroundOperator>, ModelError> {
    let caps = space.capacities();
    let mut out = Vec::new();
    for (si, schema) in space.schemas.iter().enumerate() {
        check_schema(schema, space.vars.len())?;
        for binding in permutations(space.vars.len(), schema.params.len()) {
            let scope = |n: &str| schema.params.iter().position(|p| p == n).map(|i| binding[i]);
            let ctx = |what: &str| format!("operator `{}` {what}", schema.name);
            let precondition =
                compile_bool(&schema.precondition, &scope, &caps).map_err(|source| ModelError::Expr {
                    context: ctx("precondition"),
                    source,
                })?;
            let effects = schema
                .effects
                .iter()
                .map(|eff| {
                    let target = scope(&eff.slot).expect("slot checked above");
                    compile_int(&eff.value, &scope, &caps)
                        .map(|e| (target, e))
                        .map_err(|source| ModelError::Expr {
                            context: ctx(&format!("effect on `{}`", eff.slot)),
                            source,
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let args: Vec<&str> = binding.iter().map(|i| space.vars[*i].name.as_str()).collect();
            out.push(GroundOperator {
                schema: si,
                display: format!("{}({})", schema.name, args.join(",")),
                binding,
                precondition,
                effects,
            });
        }
    }
    out.sort_by(|a, b| a.display.cmp(&b.display));
    Ok(out)
}

/// True iff the operator's precondition holds in `s`.
pub fn applicable(op: &GroundOperator, s: &StateVector) -> bool {
    op.precondition.eval(s.values())
}

/// Applies `op` to `s`, returning the new state. `s` is left untouched.
pub fn apply(space: &ProblemSpace, op: &GroundOperator, s: &StateVector) -> Result<StateVector, ModelError> {
    space.check_state(s)?;
    if !applicable(op, s) {
        return Err(ModelError::NotApplicable {
            op: op.display.clone(),
            state: s.clone(),
        });
    }
    space.effect_result(op, s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Goal,
    Failure,
    Ongoing,
}

#[derive(Clone, Debug)]
pub struct ProblemInstance {
    label: String,
    space: Arc<ProblemSpace>,
    initial: StateVector,
    goal: Expr,
    goal_compiled: BoolExpr,
}

impl PartialEq for ProblemInstance {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label
            && self.space == other.space
            && self.initial == other.initial
            && self.goal == other.goal
    }
}

impl Eq for ProblemInstance {}

impl ProblemInstance {
    pub fn new(
        label: impl Into<String>,
        space: Arc<ProblemSpace>,
        initial: StateVector,
        goal: Expr,
    ) -> Result<Self, ModelError> {
        space.check_state(&initial)?;
        let goal_compiled = space.compile_state_predicate(&goal, "goal")?;
        Ok(ProblemInstance {
            label: label.into(),
            space,
            initial,
            goal,
            goal_compiled,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn space(&self) -> &Arc<ProblemSpace> {
        &self.space
    }

    pub fn initial(&self) -> &StateVector {
        &self.initial
    }

    pub fn goal(&self) -> &Expr {
        &self.goal
    }

    pub fn is_goal(&self, s: &StateVector) -> bool {
        self.goal_compiled.eval(s.values())
    }
}

/// Goal if the goal holds; otherwise Failure if detection is on and the
/// failure predicate holds; otherwise Ongoing.
pub fn classify(instance: &ProblemInstance, s: &StateVector, failure_detection: bool) -> Classification {
    if instance.is_goal(s) {
        Classification::Goal
    } else if failure_detection && instance.space.is_failure(s) {
        Classification::Failure
    } else {
        Classification::Ongoing
    }
}

/// Standard container operators: `empty`, `fill`, `pour`.
pub fn container_schemas() -> Vec<OperatorSchema> {
    use crate::expr::CmpOp;
    vec![
        OperatorSchema {
            name: "empty".into(),
            params: vec!["a".into()],
            precondition: Expr::cmp(CmpOp::Gt, Expr::var("a"), Expr::int(0)),
            effects: vec![Effect::new("a", Expr::int(0))],
        },
        OperatorSchema {
            name: "fill".into(),
            params: vec!["a".into()],
            precondition: Expr::cmp(CmpOp::Lt, Expr::var("a"), Expr::cap("a")),
            effects: vec![Effect::new("a", Expr::cap("a"))],
        },
        OperatorSchema {
            name: "pour".into(),
            params: vec!["a".into(), "b".into()],
            precondition: Expr::and(
                Expr::cmp(CmpOp::Gt, Expr::var("a"), Expr::int(0)),
                Expr::cmp(CmpOp::Lt, Expr::var("b"), Expr::cap("b")),
            ),
            effects: vec![
                Effect::new(
                    "a",
                    Expr::max(
                        Expr::int(0),
                        Expr::sub(Expr::var("a"), Expr::sub(Expr::cap("b"), Expr::var("b"))),
                    ),
                ),
                Effect::new(
                    "b",
                    Expr::min(Expr::cap("b"), Expr::add(Expr::var("b"), Expr::var("a"))),
                ),
            ],
        },
    ]
}

/// "All containers empty or all containers full" over the given variables.
pub fn all_empty_or_full(vars: &[VarSpec]) -> Expr {
    let conj = |f: &dyn Fn(&VarSpec) -> Expr| vars.iter().map(f).reduce(Expr::and).expect("at least one variable");
    Expr::or(
        conj(&|v| Expr::eq(Expr::var(&v.name), Expr::int(0))),
        conj(&|v| Expr::eq(Expr::var(&v.name), Expr::cap(&v.name))),
    )
}

/// Container space with the standard operators, both path constraints and
/// the all-empty-or-all-full failure predicate.
pub fn container_space(name: &str, vars: Vec<VarSpec>) -> Result<ProblemSpace, ModelError> {
    let failure = all_empty_or_full(&vars);
    ProblemSpace::new(
        name,
        vars,
        container_schemas(),
        [PathConstraint::NoUndo, PathConstraint::NoLoopOnPath].into(),
        Some(failure),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jugs(caps: &[(&str, u32)]) -> Arc<ProblemSpace> {
        let vars = caps.iter().map(|(n, c)| VarSpec::new(*n, *c)).collect();
        Arc::new(container_space("jugs", vars).unwrap())
    }

    fn op<'a>(space: &'a ProblemSpace, name: &str) -> &'a GroundOperator {
        space.operator(name).unwrap_or_else(|| panic!("no operator {name}"))
    }

    #[test]
    fn grounding_counts() {
        assert_eq!(jugs(&[("j4", 4), ("j9", 9)]).operators().len(), 6);
        assert_eq!(jugs(&[("j2", 2), ("j3", 3), ("j5", 5)]).operators().len(), 12);

        let fill_only = ProblemSpace::new(
            "one",
            vec![VarSpec::new("x", 3)],
            vec![container_schemas().remove(1)],
            BTreeSet::new(),
            None,
        )
        .unwrap();
        assert_eq!(fill_only.operators().len(), 1);
        assert_eq!(fill_only.operators()[0].display(), "fill(x)");
    }

    #[test]
    fn grounding_is_sorted_and_ordered_pairs() {
        let s = jugs(&[("j4", 4), ("j9", 9)]);
        let names: Vec<_> = s.operators().iter().map(|o| o.display()).collect();
        assert_eq!(
            names,
            [
                "empty(j4)",
                "empty(j9)",
                "fill(j4)",
                "fill(j9)",
                "pour(j4,j9)",
                "pour(j9,j4)"
            ]
        );
    }

    #[test]
    fn undeclared_slot_is_structural_error() {
        let mut schemas = container_schemas();
        schemas[0].effects[0].slot = "zz".into();
        let err = ProblemSpace::new("bad", vec![VarSpec::new("x", 1)], schemas, BTreeSet::new(), None).unwrap_err();
        assert!(matches!(err, ModelError::UndeclaredSlot { .. }));
    }

    #[test]
    fn double_assignment_rejected() {
        let mut schemas = container_schemas();
        schemas[0].effects.push(Effect::new("a", Expr::int(0)));
        let err = ProblemSpace::new("bad", vec![VarSpec::new("x", 1)], schemas, BTreeSet::new(), None).unwrap_err();
        assert!(matches!(err, ModelError::DoubleAssignment { .. }));
    }

    #[test]
    fn empty_space_rejected() {
        assert_eq!(
            ProblemSpace::new("e", vec![], container_schemas(), BTreeSet::new(), None).unwrap_err(),
            ModelError::Empty("variable")
        );
        assert_eq!(
            ProblemSpace::new("e", vec![VarSpec::new("x", 1)], vec![], BTreeSet::new(), None).unwrap_err(),
            ModelError::Empty("operator schema")
        );
    }

    #[test]
    fn applicability() {
        let s = jugs(&[("j4", 4), ("j9", 9)]);
        assert!(applicable(op(&s, "fill(j9)"), &[0, 0].into()));
        assert!(!applicable(op(&s, "fill(j9)"), &[0, 9].into()));
        assert!(!applicable(op(&s, "pour(j9,j4)"), &[0, 0].into()));
    }

    #[test]
    fn apply_matches_recorded_steps() {
        let s = jugs(&[("j4", 4), ("j9", 9)]);
        let pour = op(&s, "pour(j9,j4)");
        assert_eq!(apply(&s, pour, &[0, 9].into()).unwrap(), [4, 5].into());
        assert_eq!(apply(&s, op(&s, "empty(j4)"), &[4, 5].into()).unwrap(), [0, 5].into());
        assert_eq!(apply(&s, pour, &[1, 9].into()).unwrap(), [4, 6].into());

        let big = jugs(&[("j17", 17), ("j9", 9)]);
        assert_eq!(
            apply(&big, op(&big, "fill(j17)"), &[0, 0].into()).unwrap(),
            [17, 0].into()
        );
    }

    #[test]
    fn apply_outside_precondition_is_an_error() {
        let s = jugs(&[("j4", 4), ("j9", 9)]);
        let err = apply(&s, op(&s, "fill(j9)"), &[0, 9].into()).unwrap_err();
        assert!(matches!(err, ModelError::NotApplicable { .. }));
        let err = apply(&s, op(&s, "fill(j9)"), &[5, 0].into()).unwrap_err();
        assert!(matches!(err, ModelError::Bounds { .. }));
    }

    #[test]
    fn classification() {
        let space = jugs(&[("j4", 4), ("j9", 9)]);
        let goal = Expr::or(
            Expr::eq(Expr::var("j4"), Expr::int(6)),
            Expr::eq(Expr::var("j9"), Expr::int(6)),
        );
        let inst = ProblemInstance::new("f", space, [0, 0].into(), goal).unwrap();
        assert_eq!(classify(&inst, &[4, 6].into(), true), Classification::Goal);
        assert_eq!(classify(&inst, &[0, 0].into(), true), Classification::Failure);
        assert_eq!(classify(&inst, &[0, 0].into(), false), Classification::Ongoing);
        assert_eq!(classify(&inst, &[2, 3].into(), true), Classification::Ongoing);
        assert_eq!(classify(&inst, &[4, 9].into(), true), Classification::Failure);
    }

    #[test]
    fn goal_dominates_failure() {
        let space = jugs(&[("a", 2), ("b", 2)]);
        let goal = Expr::eq(Expr::var("a"), Expr::int(2));
        let inst = ProblemInstance::new("g", space, [0, 0].into(), goal).unwrap();
        assert_eq!(classify(&inst, &[2, 2].into(), true), Classification::Goal);
    }

    #[test]
    fn instance_rejects_out_of_bounds_initial() {
        let space = jugs(&[("j4", 4), ("j9", 9)]);
        let err = ProblemInstance::new("i", space, [7, 0].into(), Expr::eq(Expr::var("j4"), Expr::int(1))).unwrap_err();
        assert!(matches!(err, ModelError::Bounds { .. }));
    }

    #[test]
    fn all_states_enumerates_grid() {
        let s = jugs(&[("j4", 4), ("j9", 9)]);
        let states: Vec<_> = s.all_states().collect();
        assert_eq!(states.len(), 50);
        assert_eq!(s.state_count(), 50);
        assert_eq!(states.first().unwrap(), &StateVector::from([0, 0]));
        assert_eq!(states.last().unwrap(), &StateVector::from([4, 9]));
    }
}
