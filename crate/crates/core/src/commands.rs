use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use psw::bench::{run_matrix, BenchMatrix};
use psw::config::Settings;
use psw::cta::{
    run_nodes, run_oneshot_formulate, run_oneshot_solve, run_pipeline, FixtureSet, LlmTransport, NodeId, RunOptions,
    Transcript,
};
use psw::dsl::{parse, validate, SpecDocument};
use psw::extract::{extract_spec, import_manual_spec, ExtractOptions, ExtractionResult};
use psw::search::{render_trace, solve_bfs, solve_iddfs, EvaluationCache, Learning, Ordering, SearchConfig};

#[derive(Parser)]
#[command(name = "psw", version, about = "Problem-space workbench")]
pub struct Cli {
    /// Settings file (flat key = value); flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance by iterative deepening.
    Solve {
        spec: PathBuf,
        #[arg(long)]
        instance: Option<String>,
        #[arg(long, value_enum, default_value = "on")]
        fd: Switch,
        #[arg(long, default_value = "none")]
        learning: Learning,
        /// Shuffle operators with this seed instead of lexicographic order.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_depth: Option<u32>,
        #[arg(long)]
        budget: Option<u64>,
        /// Disable the space's path constraints.
        #[arg(long)]
        no_constraints: bool,
        /// Print the solution trace.
        #[arg(long)]
        trace: bool,
    },
    /// Breadth-first minimum solution length and reachable-state count.
    Oracle {
        spec: PathBuf,
        #[arg(long)]
        instance: Option<String>,
    },
    /// Report validation findings.
    Validate { spec: PathBuf },
    /// Run the analyst pipeline (or a one-shot baseline) on a problem text.
    Formulate {
        problem: PathBuf,
        #[command(flatten)]
        transport: TransportArgs,
        /// Problem label; defaults to the file stem.
        #[arg(long)]
        label: Option<String>,
        #[arg(long, value_enum)]
        oneshot: Option<OneShot>,
        #[arg(long, default_value = "runs")]
        out: PathBuf,
    },
    /// Turn a pipeline transcript into a `.pspace` file.
    Extract {
        transcript: PathBuf,
        #[command(flatten)]
        transport: TransportArgs,
        /// Import this hand-written spec instead of asking the model.
        #[arg(long, conflicts_with_all = ["replay", "live"])]
        manual: Option<PathBuf>,
        #[arg(long, default_value = "runs")]
        out: PathBuf,
    },
    /// Run the evaluation matrix over the bundled cases.
    Bench {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        reps: Option<u32>,
        #[arg(long)]
        budget: Option<u64>,
        /// Run cases one after another.
        #[arg(long)]
        serial: bool,
    },
    /// Re-render a transcript's prompts and check them against the record.
    Replay { transcript: PathBuf },
}

#[derive(Args)]
struct TransportArgs {
    /// Directory of recorded transcripts to answer from.
    #[arg(long, conflicts_with = "live")]
    replay: Option<PathBuf>,
    /// Call the configured endpoint (needs PSW_LLM_API_KEY).
    #[arg(long)]
    live: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum OneShot {
    Formulate,
    Solve,
}

impl Cli {
    pub fn run(self) -> Result<()> {
        let settings = match &self.config {
            Some(p) => Settings::load(p)?,
            None => Settings::default(),
        };
        match self.command {
            Command::Solve {
                spec,
                instance,
                fd,
                learning,
                seed,
                max_depth,
                budget,
                no_constraints,
                trace,
            } => {
                let doc = load_spec(&spec)?;
                let inst = doc.instance(instance.as_deref())?;
                let defaults = SearchConfig::default();
                let config = SearchConfig::default()
                    .with_failure_detection(matches!(fd, Switch::On))
                    .with_learning(learning)
                    .with_ordering(seed.map_or(Ordering::Lexicographic, Ordering::Seeded))
                    .with_max_depth(max_depth.or(settings.max_depth).unwrap_or(defaults.max_depth))
                    .with_path_constraints(!no_constraints)
                    .with_budget(budget.or(settings.expansion_budget));
                let mut cache = EvaluationCache::new();
                let out = solve_iddfs(&inst, &config, Some(&mut cache));
                println!("instance: {}", inst.label());
                println!("status: {}", out.status);
                match &out.solution {
                    Some(sol) if trace => print!("{}", render_trace(inst.space(), sol, Some(&out.stats))),
                    Some(sol) => {
                        println!("length: {}", sol.len());
                        for step in &sol.steps {
                            println!("  {} -> {}", step.op, step.state);
                        }
                    }
                    None => {}
                }
                if !trace || out.solution.is_none() {
                    println!("stats: {:?}", out.stats);
                }
                Ok(())
            }
            Command::Oracle { spec, instance } => {
                let doc = load_spec(&spec)?;
                let inst = doc.instance(instance.as_deref())?;
                let r = solve_bfs(&inst);
                println!("instance: {}", inst.label());
                match &r.solution {
                    Some(s) => println!("min_solution: {}", s.len()),
                    None => println!("min_solution: unreachable"),
                }
                println!("reachable_states: {}", r.reachable_count);
                Ok(())
            }
            Command::Validate { spec } => {
                let doc = load_spec(&spec)?;
                let findings = validate(&doc);
                if findings.is_empty() {
                    println!("{}: no findings", spec.display());
                }
                for f in &findings {
                    println!("{}: {f}", spec.display());
                }
                if !psw::dsl::usable(&findings) {
                    bail!("specification has blocking findings");
                }
                Ok(())
            }
            Command::Formulate {
                problem,
                transport,
                label,
                oneshot,
                out,
            } => {
                let text =
                    std::fs::read_to_string(&problem).with_context(|| format!("reading {}", problem.display()))?;
                let text = text.strip_suffix('\n').unwrap_or(&text);
                let label = label.unwrap_or_else(|| file_stem(&problem));
                let transport = make_transport(&transport, &settings)?;
                let opts = RunOptions::in_dir(&out);
                let t = match oneshot {
                    None => run_pipeline(&label, text, &transport, &opts),
                    Some(OneShot::Formulate) => run_oneshot_formulate(&label, text, &transport, &opts),
                    Some(OneShot::Solve) => run_oneshot_solve(&label, text, &transport, &opts),
                };
                let t = match t {
                    Ok(t) => t,
                    Err(e) => {
                        if let Some(p) = e.partial() {
                            eprintln!(
                                "partial transcript with {} node(s) saved as {}",
                                p.nodes.len(),
                                out.join(Transcript::file_name(&p.run_id)).display()
                            );
                        }
                        return Err(e.into());
                    }
                };
                for n in &t.nodes {
                    println!("{:<24} {} chars", n.node.as_str(), n.response.len());
                }
                println!("transcript: {}", out.join(Transcript::file_name(&t.run_id)).display());
                Ok(())
            }
            Command::Extract {
                transcript,
                transport,
                manual,
                out,
            } => {
                let result = match manual {
                    Some(path) => import_manual_spec(&path)?,
                    None => {
                        let t = Transcript::load(&transcript)
                            .with_context(|| format!("loading {}", transcript.display()))?;
                        let transport = make_transport(&transport, &settings)?;
                        let opts = ExtractOptions {
                            out_dir: Some(out),
                            ..ExtractOptions::default()
                        };
                        extract_spec(&t, &transport, &opts)?
                    }
                };
                report_extraction(&result);
                Ok(())
            }
            Command::Bench {
                out,
                reps,
                budget,
                serial,
            } => {
                let mut matrix =
                    BenchMatrix::standard().with_repetitions(reps.or(settings.bench_repetitions).unwrap_or(5));
                if let Some(b) = budget.or(settings.expansion_budget) {
                    matrix.budget = b;
                }
                if let Some(d) = settings.max_depth {
                    matrix.base = matrix.base.with_max_depth(d);
                }
                matrix.parallel = !serial;
                let report = run_matrix(&matrix);
                print!("{}", report.to_table());
                println!();
                print!("{}", report.timing_table());
                if let Some(dir) = out {
                    std::fs::create_dir_all(&dir)?;
                    std::fs::write(dir.join("bench.csv"), report.to_csv())?;
                    std::fs::write(dir.join("bench.txt"), report.to_table())?;
                    std::fs::write(dir.join("timing.txt"), report.timing_table())?;
                    println!("wrote {}", dir.display());
                }
                Ok(())
            }
            Command::Replay { transcript } => {
                let t = Transcript::load(&transcript).with_context(|| format!("loading {}", transcript.display()))?;
                let nodes: Vec<NodeId> = t
                    .nodes
                    .iter()
                    .map(|n| n.node)
                    .filter(|n| *n != NodeId::Extract)
                    .collect();
                let mut fixtures = FixtureSet::new();
                fixtures.add_transcript(&t);
                let transport = LlmTransport::replay(fixtures);
                let again = run_nodes(
                    &nodes,
                    &t.problem_label,
                    &t.problem,
                    &transport,
                    &RunOptions::default(),
                    "replay",
                )?;
                for (a, b) in t.nodes.iter().filter(|n| n.node != NodeId::Extract).zip(&again.nodes) {
                    if a.prompt != b.prompt || a.response != b.response {
                        bail!("node `{}` does not replay identically", a.node);
                    }
                    println!("{:<24} ok", a.node.as_str());
                }
                println!("{} node(s) replayed without network access", again.nodes.len());
                Ok(())
            }
        }
    }
}

fn file_stem(p: &Path) -> String {
    p.file_stem()
        .map_or_else(|| "problem".into(), |s| s.to_string_lossy().into_owned())
}

fn load_spec(path: &Path) -> Result<SpecDocument> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).map_err(|d| anyhow::anyhow!("{}:{d}", path.display()))
}

fn make_transport(args: &TransportArgs, settings: &Settings) -> Result<LlmTransport> {
    match (&args.replay, args.live) {
        (Some(dir), _) => Ok(LlmTransport::replay(FixtureSet::load_dir(dir)?)),
        (None, true) => Ok(LlmTransport::live(settings.live_config())?),
        (None, false) => bail!("choose --replay DIR or --live"),
    }
}

fn report_extraction(r: &ExtractionResult) {
    println!("provenance: {:?}", r.provenance);
    println!("attempts: {}", r.attempts);
    for f in &r.findings {
        println!("finding: {f}");
    }
    for (label, bfs) in &r.solutions {
        match &bfs.solution {
            Some(s) => println!("instance {label}: min_solution {}", s.len()),
            None => println!("instance {label}: goal unreachable"),
        }
    }
    if let Some(p) = &r.written_to {
        println!("written: {}", p.display());
    }
}
