//! Greedy coloring, conflict detection and verification.
//!
//! Colors are 0-based; [`UNCOLORED`] marks a vertex without a color. The
//! speculative parallel variants live in [`parallel`].

use std::ops::Index;
use std::sync::atomic::{AtomicU32, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub mod parallel;

pub type Color = u32;

/// Sentinel for "no color assigned".
pub const UNCOLORED: Color = Color::MAX;

/// Partner id reported for violations that are not tied to an edge.
pub const NO_VERTEX: VertexId = VertexId::MAX;

/// Per-vertex color assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring(Vec<Color>);

impl Coloring {
    pub fn uncolored(num_vertices: usize) -> Self {
        Coloring(vec![UNCOLORED; num_vertices])
    }

    pub fn from_vec(colors: Vec<Color>) -> Self {
        Coloring(colors)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Color> {
        self.0
    }

    pub fn set(&mut self, v: VertexId, color: Color) {
        self.0[v as usize] = color;
    }

    pub fn is_complete(&self) -> bool {
        !self.0.contains(&UNCOLORED)
    }

    /// True when the used colors are exactly `0..k` for some `k`.
    pub fn is_dense(&self) -> bool {
        let Some(&max) = self.0.iter().filter(|&&c| c != UNCOLORED).max() else {
            return true;
        };
        let mut used = vec![false; max as usize + 1];
        for &c in self.0.iter().filter(|&&c| c != UNCOLORED) {
            used[c as usize] = true;
        }
        used.into_iter().all(|u| u)
    }
}

impl Index<VertexId> for Coloring {
    type Output = Color;

    fn index(&self, v: VertexId) -> &Color {
        &self.0[v as usize]
    }
}

/// Read access to a color array, shared by the sequential path (plain
/// slices) and the parallel path (relaxed atomic cells).
pub(crate) trait ColorSource {
    fn color_of(&self, v: VertexId) -> Color;
}

impl ColorSource for [Color] {
    #[inline]
    fn color_of(&self, v: VertexId) -> Color {
        self[v as usize]
    }
}

impl ColorSource for [AtomicU32] {
    #[inline]
    fn color_of(&self, v: VertexId) -> Color {
        self[v as usize].load(Ordering::Relaxed)
    }
}

/// Duplicate-free ordered list of vertices awaiting inspection.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Worklist(Vec<VertexId>);

impl Worklist {
    pub fn new(vertices: Vec<VertexId>, num_vertices: usize) -> Result<Self> {
        let mut seen = vec![false; num_vertices];
        for &v in &vertices {
            let slot = seen.get_mut(v as usize).ok_or(Error::VertexOutOfRange {
                vertex: v as u64,
                num_vertices,
            })?;
            if *slot {
                return Err(Error::InvalidParams(format!("vertex {v} listed twice")));
            }
            *slot = true;
        }
        Ok(Worklist(vertices))
    }

    /// Every vertex of a graph with `num_vertices` vertices, ascending.
    pub fn all(num_vertices: usize) -> Self {
        Worklist((0..num_vertices as VertexId).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }
}

/// Epoch-stamped forbidden-color marks, reusable across vertices without
/// clearing.
#[derive(Clone, Debug)]
pub struct ForbiddenMarks {
    stamps: Vec<u32>,
    epoch: u32,
}

impl ForbiddenMarks {
    /// `capacity` should be at least the graph's max degree plus one.
    pub fn new(capacity: usize) -> Self {
        ForbiddenMarks {
            stamps: vec![0; capacity],
            epoch: 0,
        }
    }

    pub fn for_graph(g: &Graph) -> Self {
        Self::new(g.max_degree() + 1)
    }

    pub(crate) fn smallest_available<S: ColorSource + ?Sized>(&mut self, g: &Graph, colors: &S, v: VertexId) -> Color {
        let adj = g.neighbors(v);
        let limit = adj.len();
        if self.stamps.len() <= limit {
            self.stamps.resize(limit + 1, 0);
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamps.fill(0);
            self.epoch = 1;
        }
        for &w in adj {
            let c = colors.color_of(w);
            // UNCOLORED and anything above the degree cannot block 0..=degree.
            if (c as usize) <= limit {
                self.stamps[c as usize] = self.epoch;
            }
        }
        let epoch = self.epoch;
        self.stamps[..=limit]
            .iter()
            .position(|&s| s != epoch)
            .expect("degree + 1 slots cannot all be forbidden by degree neighbors") as Color
    }
}

/// Smallest color in `0..=degree(v)` not held by a colored neighbor of `v`.
pub fn smallest_available_color(g: &Graph, c: &Coloring, v: VertexId, scratch: &mut ForbiddenMarks) -> Color {
    scratch.smallest_available(g, c.as_slice(), v)
}

/// True when some neighbor of `v` with a larger id shares `v`'s color.
#[inline]
pub(crate) fn has_higher_conflict<S: ColorSource + ?Sized>(g: &Graph, colors: &S, v: VertexId) -> bool {
    let adj = g.neighbors(v);
    let own = colors.color_of(v);
    let start = adj.partition_point(|&w| w <= v);
    adj[start..].iter().any(|&w| colors.color_of(w) == own)
}

/// First-Fit greedy coloring in ascending vertex order.
pub fn first_fit_sequential(g: &Graph) -> Coloring {
    let mut colors = vec![UNCOLORED; g.num_vertices()];
    let mut marks = ForbiddenMarks::for_graph(g);
    for v in 0..g.num_vertices() as VertexId {
        colors[v as usize] = marks.smallest_available(g, colors.as_slice(), v);
    }
    Coloring(colors)
}

/// Members of `u` that have a same-colored neighbor with a larger id. The
/// larger endpoint of a defective edge keeps its color.
pub fn detect_conflicts(g: &Graph, c: &Coloring, u: &Worklist) -> Worklist {
    Worklist(
        u.as_slice()
            .iter()
            .copied()
            .filter(|&v| has_higher_conflict(g, c.as_slice(), v))
            .collect(),
    )
}

/// A defective edge `(u, v, color)` with `u < v`, or an uncolored vertex
/// reported as `(u, NO_VERTEX, UNCOLORED)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub u: VertexId,
    pub v: VertexId,
    pub color: Color,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConflictReport {
    pub violations: Vec<Violation>,
}

impl ConflictReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_coloring(g: &Graph, c: &Coloring) -> Result<ConflictReport> {
    if c.len() != g.num_vertices() {
        return Err(Error::LengthMismatch {
            expected: g.num_vertices(),
            found: c.len(),
        });
    }
    let mut violations = Vec::new();
    for u in 0..g.num_vertices() as VertexId {
        if c[u] == UNCOLORED {
            violations.push(Violation {
                u,
                v: NO_VERTEX,
                color: UNCOLORED,
            });
        }
    }
    for (u, v) in g.edges() {
        if c[u] == c[v] && c[u] != UNCOLORED {
            violations.push(Violation { u, v, color: c[u] });
        }
    }
    Ok(ConflictReport { violations })
}

/// Number of distinct colors in a complete coloring.
pub fn count_colors(c: &Coloring) -> Result<usize> {
    if let Some(v) = c.as_slice().iter().position(|&x| x == UNCOLORED) {
        return Err(Error::IncompleteColoring { vertex: v as VertexId });
    }
    let Some(&max) = c.as_slice().iter().max() else {
        return Ok(0);
    };
    let mut used = vec![false; max as usize + 1];
    for &x in c.as_slice() {
        used[x as usize] = true;
    }
    Ok(used.into_iter().filter(|&u| u).count())
}
