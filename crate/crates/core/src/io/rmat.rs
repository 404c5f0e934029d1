//! Recursive-matrix (R-MAT) random graphs.
//!
//! Each sample descends `scale` levels of the adjacency matrix, picking one
//! quadrant per level with probabilities `(a, b, c, d)` for top-left,
//! top-right, bottom-left and bottom-right. Self-loops are dropped and
//! repeated edges collapse, so the final edge count is usually below the
//! number of samples. No per-level noise is applied.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RmatParams {
    pub scale: u32,
    pub edge_factor: u64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub seed: u64,
}

/// Named quadrant-probability presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RmatPreset {
    /// Uniform quadrants, i.e. an Erdős–Rényi-like graph.
    Er,
    /// Mildly skewed degree distribution.
    Good,
    /// Strongly skewed degree distribution with high-degree hubs.
    Bad,
}

impl RmatPreset {
    pub const ALL: [RmatPreset; 3] = [RmatPreset::Er, RmatPreset::Good, RmatPreset::Bad];

    pub fn probabilities(self) -> [f64; 4] {
        match self {
            RmatPreset::Er => [0.25, 0.25, 0.25, 0.25],
            RmatPreset::Good => [0.45, 0.15, 0.15, 0.25],
            RmatPreset::Bad => [0.55, 0.15, 0.15, 0.15],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RmatPreset::Er => "rmat-er",
            RmatPreset::Good => "rmat-g",
            RmatPreset::Bad => "rmat-b",
        }
    }

    pub fn params(self, scale: u32, edge_factor: u64, seed: u64) -> RmatParams {
        let [a, b, c, d] = self.probabilities();
        RmatParams {
            scale,
            edge_factor,
            a,
            b,
            c,
            d,
            seed,
        }
    }
}

impl fmt::Display for RmatPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RmatPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RmatPreset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown R-MAT preset `{s}`")))
    }
}

impl RmatParams {
    pub fn num_vertices(&self) -> Result<usize> {
        if self.scale >= usize::BITS || (1usize << self.scale) > MAX_VERTICES {
            return Err(Error::Capacity(format!(
                "2^{} vertices exceeds the vertex id width",
                self.scale
            )));
        }
        Ok(1usize << self.scale)
    }

    /// Number of directed samples drawn before dedup.
    pub fn num_samples(&self) -> Result<u64> {
        let n = self.num_vertices()? as u64;
        self.edge_factor
            .checked_mul(n)
            .ok_or_else(|| Error::Capacity("edge sample count overflows".into()))
    }

    pub fn validate(&self) -> Result<()> {
        let probs = [self.a, self.b, self.c, self.d];
        if probs.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::InvalidParams(format!(
                "quadrant probabilities must lie in [0, 1], got {probs:?}"
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParams(format!(
                "quadrant probabilities sum to {sum}, expected 1"
            )));
        }
        if self.edge_factor < 1 {
            return Err(Error::InvalidParams("edge factor must be at least 1".into()));
        }
        Ok(())
    }
}

pub fn generate_rmat(p: &RmatParams) -> Result<Graph> {
    p.validate()?;
    let n = p.num_vertices()?;
    let samples = p.num_samples()?;
    let samples = usize::try_from(samples).map_err(|_| Error::Capacity(format!("{samples} edge samples")))?;

    let ab = p.a + p.b;
    let abc = ab + p.c;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut edges = Vec::with_capacity(samples);
    for _ in 0..samples {
        let (mut u, mut v): (VertexId, VertexId) = (0, 0);
        for _ in 0..p.scale {
            let r: f64 = rng.gen();
            let (row_bit, col_bit) = if r < p.a {
                (0, 0)
            } else if r < ab {
                (0, 1)
            } else if r < abc {
                (1, 0)
            } else {
                (1, 1)
            };
            u = (u << 1) | row_bit;
            v = (v << 1) | col_bit;
        }
        edges.push((u, v));
    }
    Graph::from_edges(n, edges)
}
