use std::sync::Arc;

use psw::bundled::CASES;
use psw::expr::Expr;
use psw::search::{
    evaluate, render_trace, replay_trace, solve_bfs, solve_iddfs, Evaluation, EvaluationCache, Learning, Ordering,
    SearchConfig, SearchStatus, TraceError,
};
use psw::space::{apply, container_space, ProblemInstance, StateVector, VarSpec};

fn all_configs() -> Vec<SearchConfig> {
    let mut v = Vec::new();
    for fd in [true, false] {
        for learning in [Learning::None, Learning::During, Learning::Persist] {
            v.push(
                SearchConfig::default()
                    .with_failure_detection(fd)
                    .with_learning(learning),
            );
        }
    }
    v
}

#[test]
fn iddfs_matches_the_oracle_under_every_configuration() {
    for case in &CASES {
        let inst = case.instance();
        let oracle = solve_bfs(&inst).solution.unwrap().len();
        assert_eq!(oracle, case.min_solution);
        for config in all_configs() {
            let out = solve_iddfs(&inst, &config, None);
            assert_eq!(out.status, SearchStatus::Solved);
            assert_eq!(out.solution.unwrap().len(), oracle, "{} {config:?}", case.label);
            assert_eq!(out.stats.solution_length, Some(oracle));
        }
    }
}

#[test]
fn seeded_orderings_keep_the_minimum_length() {
    for case in &CASES {
        let inst = case.instance();
        for seed in [1, 7, 42, 2024] {
            let config = SearchConfig::default().with_ordering(Ordering::Seeded(seed));
            let a = solve_iddfs(&inst, &config, None);
            let b = solve_iddfs(&inst, &config, None);
            assert_eq!(a.solution.as_ref().unwrap().len(), case.min_solution);
            assert_eq!(a, b, "seeded runs must repeat");
        }
    }
}

#[test]
fn solutions_replay_through_apply_to_a_goal() {
    for case in &CASES {
        let inst = case.instance();
        let sol = solve_iddfs(&inst, &SearchConfig::default(), None).solution.unwrap();
        let space = inst.space();
        let mut s = inst.initial().clone();
        for step in &sol.steps {
            s = apply(space, space.operator(&step.op).unwrap(), &s).unwrap();
            assert_eq!(s, step.state);
        }
        assert!(inst.is_goal(&s));
    }
}

#[test]
fn traces_round_trip_and_tampering_is_caught() {
    let inst = CASES[0].instance();
    let out = solve_iddfs(&inst, &SearchConfig::default(), None);
    let sol = out.solution.unwrap();
    let text = render_trace(inst.space(), &sol, Some(&out.stats));
    assert_eq!(replay_trace(&inst, &text).unwrap(), sol);

    let tampered = text.replacen("  j9: 9", "  j9: 8", 1);
    assert!(matches!(
        replay_trace(&inst, &tampered),
        Err(TraceError::Mismatch { .. })
    ));
    let unknown = text.replacen("fill(j9)", "fill(j7)", 1);
    assert!(matches!(
        replay_trace(&inst, &unknown),
        Err(TraceError::UnknownOperator { .. })
    ));
    let cut: String = text.lines().take(6).map(|l| format!("{l}\n")).collect();
    assert!(matches!(replay_trace(&inst, &cut), Err(TraceError::NotAGoal(_))));
    assert!(matches!(replay_trace(&inst, ""), Err(TraceError::Empty)));
}

#[test]
fn failure_detection_never_changes_length_and_never_adds_expansions() {
    for case in &CASES {
        let inst = case.instance();
        let on = solve_iddfs(&inst, &SearchConfig::default(), None);
        let off = solve_iddfs(&inst, &SearchConfig::default().with_failure_detection(false), None);
        assert_eq!(on.solution.unwrap().len(), off.solution.unwrap().len());
        assert!(on.stats.expansions <= off.stats.expansions, "{}", case.label);
    }
}

#[test]
fn learning_modes_are_ordered_by_expansions() {
    for case in &CASES {
        let inst = case.instance();
        let mut cache = EvaluationCache::new();
        let none = solve_iddfs(&inst, &SearchConfig::default(), None).stats.expansions;
        let during = solve_iddfs(&inst, &SearchConfig::default().with_learning(Learning::During), None)
            .stats
            .expansions;
        let persist_cfg = SearchConfig::default().with_learning(Learning::Persist);
        solve_iddfs(&inst, &persist_cfg, Some(&mut cache));
        let warm = solve_iddfs(&inst, &persist_cfg, Some(&mut cache));
        assert!(warm.stats.expansions <= during && during <= none, "{}", case.label);
        assert_eq!(warm.stats.novel_states, 0);
        assert_eq!(warm.solution.unwrap().len(), case.min_solution);
    }
}

#[test]
fn persisted_cache_is_dropped_when_the_problem_changes() {
    let mut cache = EvaluationCache::new();
    let persist = SearchConfig::default().with_learning(Learning::Persist);
    let f = CASES[0].instance();
    solve_iddfs(&f, &persist, Some(&mut cache));
    assert!(!cache.is_empty());
    // Same space, different goal: stale failures must not leak in.
    let other = ProblemInstance::new(
        "other",
        Arc::clone(f.space()),
        StateVector::from(vec![0, 0]),
        Expr::eq(Expr::var("j4"), Expr::int(3)),
    )
    .unwrap();
    let out = solve_iddfs(&other, &persist, Some(&mut cache));
    assert_eq!(out.solution.unwrap().len(), solve_bfs(&other).solution.unwrap().len());
    assert!(out.stats.novel_states > 0);
    let fd_off = persist.clone().with_failure_detection(false);
    let out = solve_iddfs(&f, &fd_off, Some(&mut cache));
    assert_eq!(out.solution.unwrap().len(), 8);
}

#[test]
fn root_goal_and_root_failure() {
    let inst = CASES[0].instance();
    // The all-empty start is a failure state, yet the search proceeds from it.
    assert!(inst.space().is_failure(inst.initial()));
    assert_eq!(
        evaluate(&inst, inst.initial(), 3, &SearchConfig::default(), None),
        Evaluation::Failure
    );
    let trivially = ProblemInstance::new(
        "t",
        Arc::clone(inst.space()),
        StateVector::from(vec![0, 0]),
        Expr::eq(Expr::var("j4"), Expr::int(0)),
    )
    .unwrap();
    let out = solve_iddfs(&trivially, &SearchConfig::default(), None);
    assert_eq!(out.status, SearchStatus::Solved);
    assert_eq!(out.solution.unwrap().len(), 0);
}

#[test]
fn unreachable_goal_is_unsolvable_and_depth_limits_report_exhaustion() {
    let space = Arc::new(container_space("even", vec![VarSpec::new("a", 2), VarSpec::new("b", 4)]).unwrap());
    let odd = ProblemInstance::new(
        "odd",
        space,
        StateVector::from(vec![0, 0]),
        Expr::eq(Expr::var("b"), Expr::int(3)),
    )
    .unwrap();
    assert!(solve_bfs(&odd).solution.is_none());
    let out = solve_iddfs(&odd, &SearchConfig::default().with_failure_detection(false), None);
    assert_eq!(out.status, SearchStatus::Unsolvable);
    assert!(out.solution.is_none());

    let f = CASES[0].instance();
    let shallow = solve_iddfs(&f, &SearchConfig::default().with_max_depth(5), None);
    assert_eq!(shallow.status, SearchStatus::Exhausted);
    assert_eq!(shallow.stats.iterations, 5);
}

#[test]
fn expansion_budget_stops_the_search() {
    let f = CASES[2].instance();
    let out = solve_iddfs(&f, &SearchConfig::default().with_budget(Some(50)), None);
    assert_eq!(out.status, SearchStatus::BudgetExceeded);
    assert!(out.stats.expansions <= 50);
}

#[test]
fn path_constraints_cut_expansions_at_fixed_depth() {
    let f = CASES[2].instance();
    let base = SearchConfig::default().with_max_depth(10).with_failure_detection(false);
    let on = solve_iddfs(&f, &base, None).stats.expansions;
    let off = solve_iddfs(&f, &base.clone().with_path_constraints(false), None)
        .stats
        .expansions;
    assert!(off >= 10 * on, "on={on} off={off}");
}

#[test]
fn lexicographic_stats_are_stable() {
    let f = CASES[0].instance();
    let a = solve_iddfs(&f, &SearchConfig::default(), None);
    let b = solve_iddfs(&f, &SearchConfig::default(), None);
    assert_eq!(a, b);
}
