//! Independent reference implementations shared by the integration tests.
//! Nothing here calls into the coloring code paths it is used to check.

#![allow(dead_code)]

use optcolor::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Adjacency-matrix view built straight from an edge list.
pub struct Dense {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
}

impl Dense {
    pub fn new(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in edges {
            if u != v {
                adj[u as usize][v as usize] = true;
                adj[v as usize][u as usize] = true;
            }
        }
        Dense { n, adj }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let edges: Vec<_> = g.edges().collect();
        Dense::new(g.num_vertices(), &edges)
    }
}

/// Greedy coloring straight from the definition: for each vertex in order,
/// try colors 0, 1, 2, ... until none of the already-colored neighbors has it.
pub fn naive_first_fit(d: &Dense) -> Vec<u32> {
    let mut colors: Vec<Option<u32>> = vec![None; d.n];
    for v in 0..d.n {
        let mut c = 0u32;
        while (0..d.n).any(|w| d.adj[v][w] && colors[w] == Some(c)) {
            c += 1;
        }
        colors[v] = Some(c);
    }
    colors.into_iter().map(Option::unwrap).collect()
}

/// Vertices `i` having an edge `{i, j}` with `j > i` and equal colors, via a
/// double loop over all vertex pairs.
pub fn naive_conflicts(d: &Dense, colors: &[u32], candidates: &[u32]) -> Vec<u32> {
    candidates
        .iter()
        .copied()
        .filter(|&i| ((i as usize + 1)..d.n).any(|j| d.adj[i as usize][j] && colors[i as usize] == colors[j]))
        .collect()
}

pub fn is_connected(d: &Dense) -> bool {
    if d.n == 0 {
        return true;
    }
    let mut seen = vec![false; d.n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..d.n {
            if d.adj[v][w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Every labeled simple graph on `n` vertices, as edge lists.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Vec<(u32, u32)>> {
    let pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|u| ((u + 1)..n as u32).map(move |v| (u, v)))
        .collect();
    let m = pairs.len();
    (0u64..(1u64 << m)).map(move |mask| {
        pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect()
    })
}

/// Chromatic number by trying k = 0, 1, 2, ... with backtracking.
pub fn chromatic_number(d: &Dense) -> usize {
    fn extend(d: &Dense, k: u32, v: usize, colors: &mut Vec<u32>) -> bool {
        if v == d.n {
            return true;
        }
        for c in 0..k {
            if (0..v).all(|w| !d.adj[v][w] || colors[w] != c) {
                colors.push(c);
                if extend(d, k, v + 1, colors) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    (0..=d.n as u32).find(|&k| extend(d, k, 0, &mut Vec::new())).unwrap() as usize
}

/// Erdős–Rényi-style random graph with about `avg_degree * n / 2` edges.
pub fn random_graph(n: usize, avg_degree: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = ((n as f64) * avg_degree / 2.0).round() as usize;
    let edges: Vec<(u32, u32)> = if n < 2 {
        Vec::new()
    } else {
        (0..m)
            .map(|_| (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32)))
            .collect()
    };
    Graph::from_edges(n, edges).unwrap()
}

pub fn proper(g: &Graph, colors: &[u32]) -> bool {
    g.edges().all(|(u, v)| colors[u as usize] != colors[v as usize]) && !colors.contains(&u32::MAX)
}
