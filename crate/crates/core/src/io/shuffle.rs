use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Relabels `g` under a uniformly random permutation drawn from `seed`.
///
/// Returns the new graph and the permutation, where `perm[old] == new`.
/// Adjacency lists of the result are re-sorted.
pub fn shuffle_vertices(g: &Graph, seed: u64) -> (Graph, Vec<VertexId>) {
    let mut perm: Vec<VertexId> = (0..g.num_vertices() as VertexId).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let shuffled = relabel(g, &perm).expect("generated permutation is valid");
    (shuffled, perm)
}

/// Applies `perm` (`perm[old] == new`) to the vertex ids of `g`.
pub fn relabel(g: &Graph, perm: &[VertexId]) -> Result<Graph> {
    let n = g.num_vertices();
    if perm.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: perm.len(),
        });
    }
    let mut inverse = vec![VertexId::MAX; n];
    for (old, &new) in perm.iter().enumerate() {
        if new as usize >= n || inverse[new as usize] != VertexId::MAX {
            return Err(Error::InvalidParams("not a permutation".into()));
        }
        inverse[new as usize] = old as VertexId;
    }

    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    let mut neighbors = Vec::with_capacity(g.neighbor_array().len());
    for &old in &inverse {
        let start = neighbors.len();
        neighbors.extend(g.neighbors(old).iter().map(|&w| perm[w as usize]));
        neighbors[start..].sort_unstable();
        offsets.push(neighbors.len());
    }
    Graph::from_csr(offsets, neighbors)
}
