//! Deterministic model of speculative coloring under SIMT-style lockstep
//! execution.
//!
//! Vertices are mapped to lanes. In each round every vertex that is uncolored
//! or shares a color with a neighbor is pending, and each lane walks its
//! pending vertices in ascending id order. Lanes advance in lockstep: at step
//! `k` every lane computes the smallest available color for its `k`-th
//! pending vertex from the same shared state, then all step-`k` decisions
//! commit at once. Commits from earlier steps, including the lane's own, are
//! visible to later steps.
//!
//! Two adjacent vertices on different lanes at the same step always choose
//! the same color, so with one vertex per lane the pair flips between two
//! colors forever.

use crate::coloring::{verify_coloring, Coloring, ForbiddenMarks, UNCOLORED};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LockstepOutcome {
    pub converged: bool,
    pub rounds_executed: usize,
    /// Coloring after each executed round.
    pub color_trace: Vec<Coloring>,
}

impl LockstepOutcome {
    pub fn final_coloring(&self) -> Option<&Coloring> {
        self.color_trace.last()
    }
}

/// Simulates lockstep rounds until the coloring is proper or `round_cap`
/// rounds have run. `lanes[v]` is the lane that owns vertex `v`.
pub fn lockstep_color(g: &Graph, lanes: &[usize], round_cap: usize) -> Result<LockstepOutcome> {
    let n = g.num_vertices();
    if lanes.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: lanes.len(),
        });
    }
    if round_cap == 0 {
        return Err(Error::InvalidParams("round cap must be at least 1".into()));
    }
    let lane_count = lanes.iter().copied().max().map_or(0, |m| m + 1);
    let mut colors = vec![UNCOLORED; n];
    let mut marks = ForbiddenMarks::for_graph(g);
    let mut trace = Vec::new();
    let mut queues: Vec<Vec<VertexId>> = vec![Vec::new(); lane_count];
    let mut decisions: Vec<(VertexId, u32)> = Vec::with_capacity(lane_count);

    for round in 1..=round_cap {
        queues.iter_mut().for_each(Vec::clear);
        for v in 0..n as VertexId {
            let own = colors[v as usize];
            if own == UNCOLORED || g.neighbors(v).iter().any(|&w| colors[w as usize] == own) {
                queues[lanes[v as usize]].push(v);
            }
        }

        let steps = queues.iter().map(Vec::len).max().unwrap_or(0);
        for step in 0..steps {
            decisions.clear();
            for queue in &queues {
                if let Some(&v) = queue.get(step) {
                    decisions.push((v, marks.smallest_available(g, colors.as_slice(), v)));
                }
            }
            for &(v, c) in &decisions {
                colors[v as usize] = c;
            }
        }

        let snapshot = Coloring::from_vec(colors.clone());
        let proper = verify_coloring(g, &snapshot)?.is_empty();
        trace.push(snapshot);
        if proper {
            return Ok(LockstepOutcome {
                converged: true,
                rounds_executed: round,
                color_trace: trace,
            });
        }
    }
    Ok(LockstepOutcome {
        converged: false,
        rounds_executed: round_cap,
        color_trace: trace,
    })
}

/// Lane assignment `v -> v % lanes`.
pub fn cyclic_lanes(num_vertices: usize, lanes: usize) -> Vec<usize> {
    (0..num_vertices).map(|v| v % lanes.max(1)).collect()
}
