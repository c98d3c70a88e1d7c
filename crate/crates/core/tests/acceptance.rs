//! Runs criteria 1-10 and prints one PASS/FAIL line per criterion.

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use psw::bench::{run_matrix, BenchMatrix};
use psw::bundled::CASES;
use psw::cta::{
    run_pipeline, system_prompt, FixtureSet, HttpClient, LlmTransport, NodeId, RunOptions, TransportError,
    TransportMode,
};
use psw::dsl::{parse, usable, validate};
use psw::extract::{extract_spec, ExtractOptions};
use psw::search::{render_trace, replay_trace, solve_bfs, solve_iddfs, EvaluationCache, Learning, SearchConfig};
use psw::space::StateVector;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn manifest(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn c1_minimum_lengths() -> Check {
    let mut lens = Vec::new();
    let mut slowest = Duration::ZERO;
    for case in &CASES {
        let inst = case.instance();
        let oracle = solve_bfs(&inst).solution.map(|s| s.len());
        let config = SearchConfig::default().with_learning(Learning::During);
        let start = Instant::now();
        let out = solve_iddfs(&inst, &config, None);
        let took = start.elapsed();
        slowest = slowest.max(took);
        let got = out.solution.map(|s| s.len());
        ensure(got == Some(case.min_solution) && oracle == got, || {
            format!(
                "{}: solver {got:?}, oracle {oracle:?}, expected {}",
                case.name, case.min_solution
            )
        })?;
        ensure(took < Duration::from_secs(5), || format!("{} took {took:?}", case.name))?;
        lens.push(case.min_solution.to_string());
    }
    Ok(format!(
        "lengths {} (slowest {:.1} ms)",
        lens.join(","),
        slowest.as_secs_f64() * 1e3
    ))
}

fn c2_trace_fidelity() -> Check {
    let expected: Vec<StateVector> = [(0, 0), (0, 9), (4, 5), (0, 5), (4, 1), (0, 1), (1, 0), (1, 9), (4, 6)]
        .iter()
        .map(|&(a, b)| StateVector::from(vec![a, b]))
        .collect();
    let inst = CASES[0].instance();
    let out = solve_iddfs(&inst, &SearchConfig::default(), None);
    let sol = out.solution.ok_or("no solution")?;
    let text = render_trace(inst.space(), &sol, Some(&out.stats));
    let replayed = replay_trace(&inst, &text).map_err(|e| e.to_string())?;
    let states = replayed.states();
    ensure(states == expected, || format!("visited {states:?}"))?;
    Ok("(0,0)->(0,9)->(4,5)->(0,5)->(4,1)->(0,1)->(1,0)->(1,9)->(4,6) replayed through apply".into())
}

fn c3_warm_cache() -> Check {
    let mut counts = Vec::new();
    for case in &CASES {
        let inst = case.instance();
        let cfg = SearchConfig::default().with_learning(Learning::Persist);
        let mut cache = EvaluationCache::new();
        solve_iddfs(&inst, &cfg, Some(&mut cache));
        let again = solve_iddfs(&inst, &cfg, Some(&mut cache));
        ensure(again.stats.novel_states == 0, || {
            format!("{}: {} novel states on re-solve", case.name, again.stats.novel_states)
        })?;
        counts.push(again.stats.novel_states.to_string());
    }
    Ok(format!("novel states on re-solve: {}", counts.join(",")))
}

fn c4_pruning_direction() -> Check {
    let mut parts = Vec::new();
    for case in &CASES {
        let inst = case.instance();
        let on = solve_iddfs(&inst, &SearchConfig::default(), None).stats.expansions;
        let off = solve_iddfs(&inst, &SearchConfig::default().with_failure_detection(false), None)
            .stats
            .expansions;
        ensure(on <= off, || format!("{}: fd on {on} > off {off}", case.name))?;
        if case.label == "f_4_9_to_6" {
            ensure(on < off, || format!("F(4,9)->6 not strictly reduced: {on} vs {off}"))?;
        }
        parts.push(format!("{} {on}/{off}", case.name));
    }
    Ok(format!("expansions fd on/off: {}", parts.join(", ")))
}

fn c5_search_control() -> Check {
    let inst = psw::bundled::case("f_9_17_to_5").unwrap().instance();
    let base = SearchConfig::default().with_max_depth(10).with_failure_detection(false);
    let start = Instant::now();
    let on = solve_iddfs(&inst, &base, None).stats.expansions;
    let off = solve_iddfs(&inst, &base.clone().with_path_constraints(false), None)
        .stats
        .expansions;
    let took = start.elapsed();
    let ratio = off as f64 / on as f64;
    ensure(ratio >= 10.0, || format!("only {ratio:.1}x ({on} vs {off})"))?;
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!(
        "{off} -> {on} expansions ({ratio:.1}x) in {:.2} s",
        took.as_secs_f64()
    ))
}

fn c6_operator_algebra() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut applies = 0u64;
    let mut violations = Vec::new();
    for case in &CASES {
        let space = case.instance().space().clone();
        let caps = space.capacities();
        for _ in 0..10_000 {
            let s = StateVector(caps.iter().map(|&c| rng.gen_range(0..=c)).collect());
            let op = &space.operators()[rng.gen_range(0..space.operators().len())];
            applies += 1;
            let Some(n) = space.successor(op, &s) else { continue };
            let (a, b) = (s.values(), n.values());
            if b.iter().zip(&caps).any(|(v, c)| v > c) {
                violations.push(format!("{} {} on {s}: out of bounds", case.name, op.display()));
            }
            if space.schemas()[op.schema_index()].name == "pour" && a.iter().sum::<u32>() != b.iter().sum::<u32>() {
                violations.push(format!("{} {} on {s}: volume changed", case.name, op.display()));
            }
        }
    }
    let space = CASES[0].instance().space().clone();
    let caps = space.capacities();
    let mut exhaustive = 0;
    for s in space.all_states() {
        for op in space
            .operators()
            .iter()
            .filter(|o| space.schemas()[o.schema_index()].name == "pour")
        {
            let (x, y) = (op.binding()[0], op.binding()[1]);
            let a = s.values();
            let want = if a[x] > 0 && a[y] < caps[y] {
                let moved = a[x].min(caps[y] - a[y]);
                let mut v = a.to_vec();
                v[x] -= moved;
                v[y] += moved;
                Some(StateVector(v))
            } else {
                None
            };
            if space.successor(op, &s) != want {
                violations.push(format!("{} on {s}: transfer inexact", op.display()));
            }
        }
        exhaustive += 1;
    }
    ensure(exhaustive == 50, || format!("(4,9) space has {exhaustive} states"))?;
    ensure(violations.is_empty(), || violations.join("; "))?;
    Ok(format!(
        "{applies} random applies, {exhaustive} exhaustive states, 0 violations"
    ))
}

fn c7_prompt_bytes() -> Check {
    let mut n = 0;
    for case in &CASES {
        for node in NodeId::PIPELINE {
            let path = manifest(&format!("tests/golden/prompts/{}/{}.txt", case.label, node.as_str()));
            let golden = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            let got = system_prompt(node, case.problem_text()).map_err(|e| e.to_string())?;
            ensure(got == golden, || format!("{} / {node} differs", case.name))?;
            n += 1;
        }
    }
    Ok(format!("{n} prompts byte-identical"))
}

#[derive(Clone, Default)]
struct Counting(Arc<AtomicUsize>);

impl HttpClient for Counting {
    fn post_json(&self, _: &str, _: &str, _: &serde_json::Value) -> Result<serde_json::Value, TransportError> {
        self.0.fetch_add(1, AtomicOrdering::SeqCst);
        Err(TransportError::Http("network used".into()))
    }
}

fn c8_replay() -> Check {
    let calls = Counting::default();
    for case in &CASES {
        let fixtures =
            FixtureSet::load_dir(&manifest(&format!("data/fixtures/{}", case.label))).map_err(|e| e.to_string())?;
        let transport = LlmTransport::with_http(TransportMode::Replay(fixtures), Box::new(calls.clone()));
        let t = run_pipeline(case.label, case.problem_text(), &transport, &RunOptions::default())
            .map_err(|e| format!("{}: {e}", case.name))?;
        let nodes: Vec<NodeId> = t.nodes.iter().map(|n| n.node).collect();
        ensure(t.complete && nodes == NodeId::PIPELINE, || {
            format!("{}: nodes {nodes:?}", case.name)
        })?;
        if case.label == "a_4_9_to_6" {
            let r = t.response(NodeId::RefineOperators).unwrap_or_default();
            ensure(r.contains("max(0, FHDx"), || {
                "A(4,9)->6 revised transfer lacks max(0, FHDx".into()
            })?;
        }
    }
    let n = calls.0.load(AtomicOrdering::SeqCst);
    ensure(n == 0, || format!("{n} network calls"))?;
    Ok("6 six-node transcripts, 0 network calls, A(4,9) max(0, FHDx present".into())
}

fn c9_extraction_gate() -> Check {
    for case in &CASES {
        let doc = parse(case.spec).map_err(|d| format!("{}: {d}", case.name))?;
        ensure(usable(&validate(&doc)), || {
            format!("{}: hand spec has blocking findings", case.name)
        })?;
        let len = solve_iddfs(&case.instance(), &SearchConfig::default(), None)
            .solution
            .map(|s| s.len());
        ensure(len == Some(case.min_solution), || {
            format!("{}: hand spec solves to {len:?}", case.name)
        })?;

        let dir = manifest(&format!("data/fixtures/{}", case.label));
        let transport = LlmTransport::replay(FixtureSet::load_dir(&dir).map_err(|e| e.to_string())?);
        let t = run_pipeline(case.label, case.problem_text(), &transport, &RunOptions::default())
            .map_err(|e| e.to_string())?;
        let r = extract_spec(&t, &transport, &ExtractOptions::default()).map_err(|e| format!("{}: {e}", case.name))?;
        ensure(r.usable(), || format!("{}: extracted spec not usable", case.name))?;
        let inst = r.spec.instance(None).map_err(|e| e.to_string())?;
        let len = solve_iddfs(&inst, &SearchConfig::default(), None)
            .solution
            .map(|s| s.len());
        ensure(len == Some(case.min_solution), || {
            format!("{}: extracted spec solves to {len:?}", case.name)
        })?;
    }
    Ok("6 hand-encoded + 6 extracted specs usable and solve to the criterion-1 lengths".into())
}

fn c10_determinism() -> Check {
    let a = run_matrix(&BenchMatrix::standard());
    let b = run_matrix(&BenchMatrix::standard());
    let (ta, tb) = (a.to_csv() + &a.to_table(), b.to_csv() + &b.to_table());
    ensure(ta == tb, || "bench reports differ between runs".into())?;
    Ok(format!("two full runs byte-identical ({} bytes)", ta.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("minimum solution lengths", c1_minimum_lengths),
        ("trace fidelity", c2_trace_fidelity),
        ("warm-cache property", c3_warm_cache),
        ("pruning direction", c4_pruning_direction),
        ("search-control magnitude", c5_search_control),
        ("operator algebra", c6_operator_algebra),
        ("prompt byte-exactness", c7_prompt_bytes),
        ("replay hermeticity", c8_replay),
        ("extraction gate", c9_extraction_gate),
        ("determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
