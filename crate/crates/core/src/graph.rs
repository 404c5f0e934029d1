//! Immutable undirected graphs in compressed sparse row form.

use crate::error::{Error, Result};

/// Dense 0-based vertex identifier.
pub type VertexId = u32;

/// Largest vertex count representable. `u32::MAX` itself is kept free so it
/// can serve as a "no vertex" sentinel.
pub const MAX_VERTICES: usize = u32::MAX as usize;

/// An undirected simple graph stored as CSR.
///
/// Every edge `{u, v}` appears in both adjacency lists, each list is sorted
/// ascending, and there are no self-loops or repeated neighbors. Instances are
/// immutable and can be shared freely between threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
    max_degree: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops are dropped and repeated
    /// edges (in either orientation) collapse into one.
    pub fn from_edges<I>(num_vertices: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        if num_vertices > MAX_VERTICES {
            return Err(Error::Capacity(format!(
                "{num_vertices} vertices exceeds the limit of {MAX_VERTICES}"
            )));
        }
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for id in [u, v] {
                if id as usize >= num_vertices {
                    return Err(Error::VertexOutOfRange {
                        vertex: id as u64,
                        num_vertices,
                    });
                }
            }
            if u != v {
                pairs.push((u, v));
            }
        }

        let mut counts = vec![0usize; num_vertices + 1];
        for &(u, v) in &pairs {
            counts[u as usize + 1] += 1;
            counts[v as usize + 1] += 1;
        }
        for i in 0..num_vertices {
            counts[i + 1] += counts[i];
        }
        let mut cursor = counts.clone();
        let mut raw = vec![0 as VertexId; counts[num_vertices]];
        for &(u, v) in &pairs {
            raw[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            raw[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        drop(pairs);

        // Sort and dedup each list, compacting in place.
        let mut offsets = Vec::with_capacity(num_vertices + 1);
        offsets.push(0);
        let mut write = 0;
        let mut max_degree = 0;
        for v in 0..num_vertices {
            let (start, end) = (counts[v], counts[v + 1]);
            raw[start..end].sort_unstable();
            let list_start = write;
            for read in start..end {
                if read > start && raw[read] == raw[read - 1] {
                    continue;
                }
                raw[write] = raw[read];
                write += 1;
            }
            max_degree = max_degree.max(write - list_start);
            offsets.push(write);
        }
        raw.truncate(write);
        raw.shrink_to_fit();

        Ok(Graph {
            offsets,
            neighbors: raw,
            max_degree,
        })
    }

    /// Wraps existing CSR arrays after checking every structural invariant.
    pub fn from_csr(offsets: Vec<usize>, neighbors: Vec<VertexId>) -> Result<Self> {
        let g = Graph {
            max_degree: offsets.windows(2).map(|w| w[1].saturating_sub(w[0])).max().unwrap_or(0),
            offsets,
            neighbors,
        };
        g.validate()?;
        Ok(g)
    }

    /// Checks the CSR invariants: offsets shape, id range, sorted unique
    /// lists without self-loops, and symmetry.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.offsets.is_empty() || self.offsets[0] != 0 {
            return bad("offsets must start with 0".into());
        }
        if self.offsets.windows(2).any(|w| w[0] > w[1]) {
            return bad("offsets must be non-decreasing".into());
        }
        if *self.offsets.last().unwrap() != self.neighbors.len() {
            return bad("final offset must equal neighbor count".into());
        }
        let n = self.num_vertices();
        if n > MAX_VERTICES {
            return Err(Error::Capacity(format!("{n} vertices")));
        }
        for v in 0..n {
            let adj = self.neighbors(v as VertexId);
            for (k, &w) in adj.iter().enumerate() {
                if w as usize >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: w as u64,
                        num_vertices: n,
                    });
                }
                if w as usize == v {
                    return bad(format!("self-loop at vertex {v}"));
                }
                if k > 0 && adj[k - 1] >= w {
                    return bad(format!("adjacency of vertex {v} not strictly ascending"));
                }
                if self.neighbors(w).binary_search(&(v as VertexId)).is_err() {
                    return bad(format!("edge {v}->{w} has no reverse"));
                }
            }
        }
        let scanned = (0..n).map(|v| self.offsets[v + 1] - self.offsets[v]).max().unwrap_or(0);
        if scanned != self.max_degree {
            return bad("cached max degree is stale".into());
        }
        Ok(())
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    #[inline]
    pub fn num_edges(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.offsets[v as usize + 1] - self.offsets[v as usize])
    }

    /// Sorted adjacency list of `v`. Panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn neighbor_array(&self) -> &[VertexId] {
        &self.neighbors
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in CSR order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.num_vertices() as VertexId).flat_map(move |u| {
            let adj = self.neighbors(u);
            let start = adj.partition_point(|&w| w <= u);
            adj[start..].iter().map(move |&w| (u, w))
        })
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if (v as usize) < self.num_vertices() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v as u64,
                num_vertices: self.num_vertices(),
            })
        }
    }
}
