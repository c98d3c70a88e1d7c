//! The evaluation matrix: every bundled case under failure detection
//! on/off and the three learning modes.
//!
//! Reports are deterministic for lexicographic ordering; wall-clock times
//! are kept apart from the tables so that two runs compare byte-for-byte.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::bundled::{Case, CASES};
use crate::search::{solve_bfs, solve_iddfs, EvaluationCache, Learning, SearchConfig, SearchStatus};
use crate::space::ProblemInstance;

pub const DEFAULT_REPETITIONS: u32 = 5;
pub const DEFAULT_BUDGET: u64 = 5_000_000;

pub const LEARNING_MODES: [Learning; 3] = [Learning::None, Learning::During, Learning::Persist];

/// Search-state counts published for the original agent, per case, in
/// column order fd-on none/during/persist, fd-off none/during/persist.
/// Those count a different thing under random operator choice, so they
/// are shown next to our numbers and never compared with them.
pub const REFERENCE_STATES: [(&str, [&str; 6]); 5] = [
    ("f_4_9_to_6", ["5104", "332", "0", "19055", "556", "0"]),
    ("f_3_5_to_4", ["841", "89", "0", "1916", "193", "0"]),
    ("f_9_17_to_5", ["21.4M", "1254", "0", "n/a", "1114", "0"]),
    ("v_4qt_9gal_to_6gal", ["862", "97", "0", "1929", "136", "0"]),
    ("v_2_3_5_to_4", ["363", "212", "0", "421", "199", "0"]),
];

#[derive(Clone, Debug)]
pub struct BenchCase {
    pub label: String,
    pub name: String,
    /// An invalid case still gets a row, carrying the error.
    pub instance: Result<ProblemInstance, String>,
}

impl BenchCase {
    pub fn bundled(case: &Case) -> Self {
        BenchCase {
            label: case.label.to_string(),
            name: case.name.to_string(),
            instance: case
                .document()
                .map_err(|d| d.to_string())
                .and_then(|doc| doc.instance(Some(case.label)).map_err(|e| e.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellConfig {
    pub failure_detection: bool,
    pub learning: Learning,
}

impl CellConfig {
    pub fn all() -> Vec<CellConfig> {
        [true, false]
            .into_iter()
            .flat_map(|fd| {
                LEARNING_MODES.into_iter().map(move |learning| CellConfig {
                    failure_detection: fd,
                    learning,
                })
            })
            .collect()
    }

    pub fn column_name(&self) -> String {
        format!(
            "fd_{}_{}",
            if self.failure_detection { "on" } else { "off" },
            self.learning
        )
    }
}

#[derive(Clone, Debug)]
pub struct BenchMatrix {
    pub cases: Vec<BenchCase>,
    pub configs: Vec<CellConfig>,
    pub repetitions: u32,
    pub budget: u64,
    pub base: SearchConfig,
    /// Run cases on separate threads.
    pub parallel: bool,
}

impl BenchMatrix {
    /// All six bundled cases, all six configurations.
    pub fn standard() -> Self {
        BenchMatrix {
            cases: CASES.iter().map(BenchCase::bundled).collect(),
            configs: CellConfig::all(),
            repetitions: DEFAULT_REPETITIONS,
            budget: DEFAULT_BUDGET,
            base: SearchConfig::default(),
            parallel: true,
        }
    }

    pub fn with_repetitions(mut self, n: u32) -> Self {
        self.repetitions = n.max(1);
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellResult {
    pub config: CellConfig,
    pub status: SearchStatus,
    pub solution_length: Option<usize>,
    pub runs: u32,
    pub mean_expansions: f64,
    pub mean_generated: f64,
    pub mean_novel_states: f64,
    pub mean_cache_hits: f64,
    pub mean_time: Duration,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseRow {
    pub label: String,
    pub name: String,
    pub outcome: Result<CaseResults, String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseResults {
    /// Oracle minimum; `None` when the goal is unreachable.
    pub min_solution: Option<usize>,
    pub cells: Vec<CellResult>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub configs: Vec<CellConfig>,
    pub repetitions: u32,
    pub rows: Vec<CaseRow>,
}

fn mean(total: u128, n: u32) -> f64 {
    total as f64 / f64::from(n)
}

fn run_cell(instance: &ProblemInstance, matrix: &BenchMatrix, cell: CellConfig) -> CellResult {
    let config = matrix
        .base
        .clone()
        .with_failure_detection(cell.failure_detection)
        .with_learning(cell.learning)
        .with_budget(Some(matrix.budget));
    let (mut exp, mut gen, mut novel, mut hits) = (0u128, 0u128, 0u128, 0u128);
    let mut time = Duration::ZERO;
    let mut runs = 0;
    let mut last = None;
    for _ in 0..matrix.repetitions {
        let mut cache = EvaluationCache::new();
        if cell.learning == Learning::Persist {
            // The measured solve is the re-solve on a warm cache.
            solve_iddfs(instance, &config, Some(&mut cache));
        }
        let start = Instant::now();
        let out = solve_iddfs(instance, &config, Some(&mut cache));
        time += start.elapsed();
        runs += 1;
        exp += u128::from(out.stats.expansions);
        gen += u128::from(out.stats.generated);
        novel += u128::from(out.stats.novel_states);
        hits += u128::from(out.stats.cache_hits);
        let stop = out.status == SearchStatus::BudgetExceeded;
        last = Some(out);
        if stop {
            // Hitting the cap would only repeat; once is enough.
            break;
        }
    }
    let last = last.expect("at least one repetition");
    CellResult {
        config: cell,
        status: last.status,
        solution_length: last.solution.as_ref().map(|s| s.len()),
        runs,
        mean_expansions: mean(exp, runs),
        mean_generated: mean(gen, runs),
        mean_novel_states: mean(novel, runs),
        mean_cache_hits: mean(hits, runs),
        mean_time: time / runs,
    }
}

fn run_case(case: &BenchCase, matrix: &BenchMatrix) -> CaseRow {
    let outcome = case.instance.clone().map(|instance| CaseResults {
        min_solution: solve_bfs(&instance).solution.map(|s| s.len()),
        cells: matrix
            .configs
            .iter()
            .map(|&cell| run_cell(&instance, matrix, cell))
            .collect(),
    });
    CaseRow {
        label: case.label.clone(),
        name: case.name.clone(),
        outcome,
    }
}

pub fn run_matrix(matrix: &BenchMatrix) -> BenchReport {
    let rows = if matrix.parallel && matrix.cases.len() > 1 {
        std::thread::scope(|scope| {
            let handles: Vec<_> = matrix
                .cases
                .iter()
                .map(|c| scope.spawn(move || run_case(c, matrix)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("bench worker panicked"))
                .collect()
        })
    } else {
        matrix.cases.iter().map(|c| run_case(c, matrix)).collect()
    };
    BenchReport {
        configs: matrix.configs.clone(),
        repetitions: matrix.repetitions,
        rows,
    }
}

fn fmt_mean(v: f64) -> String {
    if v.fract() == 0.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.1}")
    }
}

fn fmt_len(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |n| n.to_string())
}

impl CellResult {
    fn expansions_cell(&self) -> String {
        match self.status {
            SearchStatus::Solved => fmt_mean(self.mean_expansions),
            other => other.to_string(),
        }
    }
}

impl BenchReport {
    /// One line per (case, configuration); deterministic.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "case,min_soln,failure_detection,learning,status,solution_length,runs,expansions,generated,novel_states,cache_hits\n",
        );
        for row in &self.rows {
            match &row.outcome {
                Err(e) => {
                    let _ = writeln!(out, "{},,,,error: {},,,,,,", row.label, e.replace([',', '\n'], " "));
                }
                Ok(r) => {
                    for c in &r.cells {
                        let _ = writeln!(
                            out,
                            "{},{},{},{},{},{},{},{},{},{},{}",
                            row.label,
                            fmt_len(r.min_solution),
                            if c.config.failure_detection { "on" } else { "off" },
                            c.config.learning,
                            c.status,
                            fmt_len(c.solution_length),
                            c.runs,
                            fmt_mean(c.mean_expansions),
                            fmt_mean(c.mean_generated),
                            fmt_mean(c.mean_novel_states),
                            fmt_mean(c.mean_cache_hits),
                        );
                    }
                }
            }
        }
        out
    }

    fn grid(&self, title: &str, header: Vec<String>, body: Vec<Vec<String>>) -> String {
        let widths: Vec<usize> = (0..header.len())
            .map(|i| {
                body.iter()
                    .map(|r| r.get(i).map_or(0, |s| s.len()))
                    .chain([header[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, w) in widths.iter().enumerate() {
                let cell = cells.get(i).map_or("", |c| c.as_str());
                if i == 0 {
                    let _ = write!(s, "{cell:<w$}");
                } else {
                    let _ = write!(s, "  {cell:>w$}");
                }
            }
            s.trim_end().to_string()
        };
        let mut out = format!("{title}\n");
        out.push_str(&line(&header));
        out.push('\n');
        out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * (widths.len() - 1)));
        out.push('\n');
        for r in &body {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }

    fn metric_table(&self, title: &str, metric: impl Fn(&CellResult) -> String) -> String {
        let mut header = vec!["case".to_string(), "min_soln".to_string()];
        header.extend(self.configs.iter().map(CellConfig::column_name));
        let body = self
            .rows
            .iter()
            .map(|row| {
                let mut cells = vec![row.name.clone()];
                match &row.outcome {
                    Err(e) => cells.push(format!("error: {e}")),
                    Ok(r) => {
                        cells.push(fmt_len(r.min_solution));
                        cells.extend(r.cells.iter().map(&metric));
                    }
                }
                cells
            })
            .collect();
        self.grid(title, header, body)
    }

    /// Aligned tables of expansions and of newly generated states, plus the
    /// published reference counts; deterministic.
    pub fn to_table(&self) -> String {
        let mut out = self.metric_table(
            &format!("Expansions (mean of {} runs)", self.repetitions),
            CellResult::expansions_cell,
        );
        out.push('\n');
        out.push_str(&self.metric_table("Novel states generated", |c| fmt_mean(c.mean_novel_states)));
        out.push('\n');
        out.push_str(&self.reference_table());
        out
    }

    fn reference_table(&self) -> String {
        let header = vec![
            "case".to_string(),
            "fd_on_none".to_string(),
            "fd_on_during".to_string(),
            "fd_on_persist".to_string(),
            "fd_off_none".to_string(),
            "fd_off_during".to_string(),
            "fd_off_persist".to_string(),
        ];
        let body = self
            .rows
            .iter()
            .filter_map(|row| {
                let (_, values) = REFERENCE_STATES.iter().find(|(l, _)| *l == row.label)?;
                let mut cells = vec![row.name.clone()];
                cells.extend(values.iter().map(|v| v.to_string()));
                Some(cells)
            })
            .collect();
        self.grid(
            "Published search-state counts (different agent and metric; NOT comparable)",
            header,
            body,
        )
    }

    /// Mean wall-clock time per cell in milliseconds. Varies between runs.
    pub fn timing_table(&self) -> String {
        self.metric_table("Mean solve time (ms)", |c| {
            format!("{:.3}", c.mean_time.as_secs_f64() * 1e3)
        })
    }

    pub fn cell(&self, label: &str, config: CellConfig) -> Option<&CellResult> {
        let row = self.rows.iter().find(|r| r.label == label)?;
        row.outcome.as_ref().ok()?.cells.iter().find(|c| c.config == config)
    }
}
