use proptest::prelude::*;
use proptest::strategy::ValueTree;

use psw::bundled::CASES;
use psw::space::{applicable, apply, container_space, GroundOperator, ProblemSpace, StateVector, VarSpec};

fn kind(space: &ProblemSpace, op: &GroundOperator) -> String {
    space.schemas()[op.schema_index()].name.clone()
}

/// Checks one application against the plain arithmetic of containers.
fn check_apply(space: &ProblemSpace, op: &GroundOperator, s: &StateVector) -> Result<(), String> {
    let caps = space.capacities();
    let Some(next) = space.successor(op, s) else {
        return Ok(());
    };
    let (a, b) = (s.values(), next.values());
    if b.iter().zip(&caps).any(|(v, c)| v > c) {
        return Err(format!("{} on {s} leaves bounds: {next}", op.display()));
    }
    let bind = op.binding();
    let untouched = (0..a.len()).filter(|i| !bind.contains(i)).all(|i| a[i] == b[i]);
    if !untouched {
        return Err(format!("{} on {s} changed an unbound variable", op.display()));
    }
    match kind(space, op).as_str() {
        "pour" => {
            let (x, y) = (bind[0], bind[1]);
            let moved = a[x].min(caps[y] - a[y]);
            if b[x] != a[x] - moved || b[y] != a[y] + moved {
                return Err(format!(
                    "{} on {s} gave {next}, expected transfer of {moved}",
                    op.display()
                ));
            }
            if a.iter().sum::<u32>() != b.iter().sum::<u32>() {
                return Err("pour changed the total".into());
            }
        }
        "fill" if b[bind[0]] != caps[bind[0]] => return Err("fill did not fill".into()),
        "empty" if b[bind[0]] != 0 => return Err("empty did not empty".into()),
        _ => {}
    }
    Ok(())
}

fn random_state(space: &ProblemSpace, seeds: &[u32]) -> StateVector {
    StateVector(space.capacities().iter().zip(seeds).map(|(c, r)| r % (c + 1)).collect())
}

#[test]
fn transfer_is_exact_on_every_state_of_the_4_9_space() {
    let space = CASES[0].instance().space().clone();
    let states: Vec<StateVector> = space.all_states().collect();
    assert_eq!(states.len(), 50);
    let mut checked = 0;
    for s in &states {
        for op in space.operators() {
            check_apply(&space, op, s).unwrap();
            if kind(&space, op) == "pour" && applicable(op, s) {
                checked += 1;
            }
        }
    }
    assert!(checked > 50);
}

#[test]
fn ten_thousand_random_applies_per_bundled_space() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for case in &CASES {
        let space = case.instance().space().clone();
        let n = space.vars().len();
        let n_ops = space.operators().len();
        let strategy = (proptest::collection::vec(any::<u32>(), n), 0..n_ops);
        let mut violations = 0;
        for _ in 0..10_000 {
            let (seeds, k) = strategy.new_tree(&mut runner).unwrap().current();
            let s = random_state(&space, &seeds);
            if check_apply(&space, &space.operators()[k], &s).is_err() {
                violations += 1;
            }
        }
        assert_eq!(violations, 0, "{}", case.label);
    }
}

#[test]
fn fill_is_idempotent_and_empty_then_fill_is_full() {
    let space = CASES[4].instance().space().clone();
    for s in space.all_states() {
        for op in space.operators().iter().filter(|o| kind(&space, o) == "fill") {
            if let Some(t) = space.successor(op, &s) {
                assert!(space.successor(op, &t).is_none(), "fill applies twice on {t}");
            }
        }
    }
}

#[test]
fn applying_an_inapplicable_operator_is_an_error() {
    let space = CASES[0].instance().space().clone();
    let empty = space.operator("empty(j4)").unwrap();
    assert!(apply(&space, empty, &StateVector::from(vec![0, 3])).is_err());
    assert_eq!(
        apply(&space, empty, &StateVector::from(vec![2, 3])).unwrap(),
        StateVector::from(vec![0, 3])
    );
}

#[test]
fn grounding_covers_ordered_pairs() {
    let space = container_space(
        "three",
        vec![VarSpec::new("a", 2), VarSpec::new("b", 3), VarSpec::new("c", 5)],
    )
    .unwrap();
    // 3 fills, 3 empties, 6 ordered pours
    assert_eq!(space.operators().len(), 12);
    assert!(space.operator("pour(c,a)").is_some());
    assert!(space.operator("pour(a,a)").is_none());
}

proptest! {
    #[test]
    fn arbitrary_capacities_keep_invariants(caps in proptest::collection::vec(1u32..12, 2..4),
                                            seeds in proptest::collection::vec(any::<u32>(), 4)) {
        let vars = caps.iter().enumerate().map(|(i, c)| VarSpec::new(format!("v{i}"), *c)).collect();
        let space = container_space("p", vars).unwrap();
        let s = random_state(&space, &seeds);
        for op in space.operators() {
            prop_assert!(check_apply(&space, op, &s).is_ok());
        }
    }
}
