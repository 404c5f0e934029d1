//! Benchmark harness and per-run instrumentation.
//!
//! Reports serialize to JSON with the field names of [`BenchReport`] and
//! [`ColoringStats`]; [`write_csv`] flattens them to one row per run.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coloring::parallel::{color_catalyurek_with, color_rsoc_with, ParallelConfig};
use crate::coloring::{count_colors, first_fit_sequential, verify_coloring, Coloring};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_REPEATS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Seq,
    Catalyurek,
    Rsoc,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Seq, Algorithm::Catalyurek, Algorithm::Rsoc];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Seq => "seq",
            Algorithm::Catalyurek => "catalyurek",
            Algorithm::Rsoc => "rsoc",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown algorithm `{s}`")))
    }
}

/// Instrumentation for one coloring run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColoringStats {
    pub algorithm: Algorithm,
    pub thread_count: usize,
    /// Iterations of the repair loop.
    pub rounds: usize,
    pub conflicts_total: usize,
    /// Defects found (Catalyurek) or vertices recolored (RSOC) per round.
    pub conflicts_per_round: Vec<usize>,
    pub barrier_events: usize,
    pub num_colors: usize,
    pub wall_time_ns: u64,
    pub fallback_triggered: bool,
}

impl ColoringStats {
    /// Barriers inside the repair loop, i.e. excluding the initial barrier
    /// that RSOC places after its tentative pass.
    pub fn loop_barriers(&self) -> usize {
        match self.algorithm {
            Algorithm::Rsoc => self.barrier_events.saturating_sub(1),
            _ => self.barrier_events,
        }
    }

    /// Checks the bookkeeping identities; `max_degree` bounds the colors.
    pub fn check(&self, max_degree: usize) -> std::result::Result<(), String> {
        if self.conflicts_total != self.conflicts_per_round.iter().sum::<usize>() {
            return Err("conflicts_total differs from the per-round sum".into());
        }
        if self.conflicts_per_round.len() != self.rounds {
            return Err("one conflict count per round expected".into());
        }
        let expected_barriers = match self.algorithm {
            Algorithm::Seq => 0,
            Algorithm::Catalyurek => 2 * self.rounds,
            Algorithm::Rsoc => self.rounds + 1,
        };
        if self.barrier_events != expected_barriers {
            return Err(format!(
                "{} barrier events for {} rounds of {}",
                self.barrier_events, self.rounds, self.algorithm
            ));
        }
        if self.num_colors > max_degree + 1 {
            return Err(format!(
                "{} colors exceeds max degree + 1 = {}",
                self.num_colors,
                max_degree + 1
            ));
        }
        Ok(())
    }
}

/// Sequential First-Fit with the same instrumentation as the parallel runs.
pub fn color_sequential(g: &Graph) -> (Coloring, ColoringStats) {
    let start = Instant::now();
    let coloring = first_fit_sequential(g);
    let wall_time_ns = start.elapsed().as_nanos() as u64;
    let stats = ColoringStats {
        algorithm: Algorithm::Seq,
        thread_count: 1,
        rounds: 1,
        conflicts_total: 0,
        conflicts_per_round: vec![0],
        barrier_events: 0,
        num_colors: count_colors(&coloring).expect("greedy coloring is complete"),
        wall_time_ns,
        fallback_triggered: false,
    };
    (coloring, stats)
}

/// Runs `algorithm` on `g`. The thread count of `cfg` is ignored for `Seq`.
pub fn color_graph(g: &Graph, algorithm: Algorithm, cfg: &ParallelConfig) -> Result<(Coloring, ColoringStats)> {
    match algorithm {
        Algorithm::Seq => Ok(color_sequential(g)),
        Algorithm::Catalyurek => color_catalyurek_with(g, cfg),
        Algorithm::Rsoc => color_rsoc_with(g, cfg),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub num_vertices: usize,
    pub num_edges: usize,
    pub max_degree: usize,
}

impl GraphStats {
    pub fn of(g: &Graph) -> Self {
        GraphStats {
            num_vertices: g.num_vertices(),
            num_edges: g.num_edges(),
            max_degree: g.max_degree(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub mean_wall_time_ns: f64,
    pub min_wall_time_ns: u64,
    pub max_wall_time_ns: u64,
    pub mean_conflicts: f64,
    pub mean_rounds: f64,
    pub fallback_runs: usize,
}

impl Aggregate {
    fn of(runs: &[ColoringStats]) -> Self {
        let n = runs.len().max(1) as f64;
        Aggregate {
            mean_wall_time_ns: runs.iter().map(|r| r.wall_time_ns as f64).sum::<f64>() / n,
            min_wall_time_ns: runs.iter().map(|r| r.wall_time_ns).min().unwrap_or(0),
            max_wall_time_ns: runs.iter().map(|r| r.wall_time_ns).max().unwrap_or(0),
            mean_conflicts: runs.iter().map(|r| r.conflicts_total as f64).sum::<f64>() / n,
            mean_rounds: runs.iter().map(|r| r.rounds as f64).sum::<f64>() / n,
            fallback_runs: runs.iter().filter(|r| r.fallback_triggered).count(),
        }
    }
}

/// All repeats at one thread count.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThreadEntry {
    pub thread_count: usize,
    pub runs: Vec<ColoringStats>,
    pub aggregate: Aggregate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub graph_name: String,
    pub graph_stats: GraphStats,
    pub algorithm: Algorithm,
    pub repeats: usize,
    pub entries: Vec<ThreadEntry>,
}

impl BenchReport {
    pub fn entry(&self, thread_count: usize) -> Option<&ThreadEntry> {
        self.entries.iter().find(|e| e.thread_count == thread_count)
    }

    pub fn any_fallback(&self) -> bool {
        self.entries.iter().any(|e| e.aggregate.fallback_runs > 0)
    }

    /// Structural checks on an emitted or deserialized report.
    pub fn check(&self) -> std::result::Result<(), String> {
        for e in &self.entries {
            if e.runs.len() != self.repeats {
                return Err(format!(
                    "{} runs at {} threads, expected {}",
                    e.runs.len(),
                    e.thread_count,
                    self.repeats
                ));
            }
            for r in &e.runs {
                if r.algorithm != self.algorithm {
                    return Err("run algorithm differs from report".into());
                }
                r.check(self.graph_stats.max_degree)?;
            }
            if Aggregate::of(&e.runs) != e.aggregate {
                return Err(format!("stale aggregate at {} threads", e.thread_count));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::parse(e.line(), e.to_string()))
    }
}

/// Colors `g` `repeats` times at each thread count, verifying every result.
pub fn run_benchmark(
    g: &Graph,
    graph_name: &str,
    algorithm: Algorithm,
    thread_counts: &[usize],
    repeats: usize,
) -> Result<BenchReport> {
    run_benchmark_with(
        g,
        graph_name,
        algorithm,
        thread_counts,
        repeats,
        &ParallelConfig::new(1),
    )
}

/// [`run_benchmark`] with explicit chunking and round-cap settings; the
/// thread count in `base` is replaced by each entry of `thread_counts`.
pub fn run_benchmark_with(
    g: &Graph,
    graph_name: &str,
    algorithm: Algorithm,
    thread_counts: &[usize],
    repeats: usize,
    base: &ParallelConfig,
) -> Result<BenchReport> {
    if repeats == 0 {
        return Err(Error::InvalidParams("repeats must be at least 1".into()));
    }
    if thread_counts.is_empty() || thread_counts.contains(&0) {
        return Err(Error::InvalidParams(
            "thread counts must be non-empty and positive".into(),
        ));
    }
    let mut entries = Vec::with_capacity(thread_counts.len());
    for &threads in thread_counts {
        let cfg = ParallelConfig {
            threads,
            ..base.clone()
        };
        let mut runs = Vec::with_capacity(repeats);
        for _ in 0..repeats {
            let (coloring, stats) = color_graph(g, algorithm, &cfg)?;
            let report = verify_coloring(g, &coloring)?;
            if !report.is_empty() {
                return Err(Error::Verification {
                    algorithm: algorithm.to_string(),
                    violations: report.violations.len(),
                });
            }
            runs.push(stats);
        }
        entries.push(ThreadEntry {
            thread_count: threads,
            aggregate: Aggregate::of(&runs),
            runs,
        });
    }
    Ok(BenchReport {
        graph_name: graph_name.to_string(),
        graph_stats: GraphStats::of(g),
        algorithm,
        repeats,
        entries,
    })
}

/// Speedup of `a` over `b` at each thread count both reports share:
/// `mean_wall(b) / mean_wall(a)`.
pub fn relative_speedup(a: &BenchReport, b: &BenchReport) -> Vec<(usize, f64)> {
    a.entries
        .iter()
        .filter_map(|ea| {
            let eb = b.entry(ea.thread_count)?;
            Some((
                ea.thread_count,
                eb.aggregate.mean_wall_time_ns / ea.aggregate.mean_wall_time_ns,
            ))
        })
        .collect()
}

#[derive(Serialize)]
struct CsvRow {
    algorithm: Algorithm,
    threads: usize,
    run_index: usize,
    rounds: usize,
    conflicts_total: usize,
    num_colors: usize,
    wall_time_ns: u64,
}

/// One row per run across all `reports`, with a header line.
pub fn write_csv<W: Write>(reports: &[BenchReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for report in reports {
        for entry in &report.entries {
            for (run_index, r) in entry.runs.iter().enumerate() {
                w.serialize(CsvRow {
                    algorithm: r.algorithm,
                    threads: entry.thread_count,
                    run_index,
                    rounds: r.rounds,
                    conflicts_total: r.conflicts_total,
                    num_colors: r.num_colors,
                    wall_time_ns: r.wall_time_ns,
                })
                .map_err(|e| Error::Io(std::io::Error::other(e)))?;
            }
        }
    }
    w.flush()?;
    Ok(())
}
