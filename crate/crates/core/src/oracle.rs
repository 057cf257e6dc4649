//! Exact brute force at small scale, plus seeded instance generators.
//!
//! The oracle is the independent ground truth the certifiers are tested
//! against: exhaustive pattern search and exact chromatic number, both
//! deterministic. Hard vertex-count limits are enforced as errors; the
//! oracle never answers approximately.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{BlockPattern, Digraph, PathEmbedding, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct OracleLimits {
    pub max_vertices_path: usize,
    pub max_vertices_chi: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_vertices_path: 14, max_vertices_chi: 12 }
    }
}

/// Exhaustive search for an occurrence of `p` in `d`, returning the
/// lexicographically least embedding if one exists.
pub fn contains_pattern(
    d: &Digraph,
    p: BlockPattern,
    limits: OracleLimits,
) -> Result<Option<PathEmbedding>> {
    if d.vertex_count() > limits.max_vertices_path {
        return Err(Error::LimitExceeded(d.vertex_count(), limits.max_vertices_path));
    }
    let order = p.order();
    if order > d.vertex_count() {
        return Ok(None);
    }
    let mut used = vec![false; d.vertex_count()];
    let mut seq: Vec<VertexId> = Vec::with_capacity(order);

    fn rec(
        d: &Digraph,
        p: &BlockPattern,
        order: usize,
        used: &mut [bool],
        seq: &mut Vec<VertexId>,
    ) -> bool {
        if seq.len() == order {
            return true;
        }
        let candidates: Vec<VertexId> = if seq.is_empty() {
            (0..d.vertex_count()).collect()
        } else {
            let prev = *seq.last().unwrap();
            // Arc at position len-1 joins prev and the next vertex.
            if p.forward_at(seq.len() - 1) {
                d.out_neighbors(prev).to_vec()
            } else {
                d.in_neighbors(prev).to_vec()
            }
        };
        for v in candidates {
            if used[v] {
                continue;
            }
            used[v] = true;
            seq.push(v);
            if rec(d, p, order, used, seq) {
                return true;
            }
            seq.pop();
            used[v] = false;
        }
        false
    }

    if rec(d, &p, order, &mut used, &mut seq) {
        Ok(Some(PathEmbedding { pattern: p, vertices: seq }))
    } else {
        Ok(None)
    }
}

/// Exact chromatic number of the underlying graph.
pub fn chromatic_number(d: &Digraph, limits: OracleLimits) -> Result<usize> {
    optimal_coloring(d, limits).map(|c| c.num_colors)
}

/// An optimal proper coloring of the underlying graph, by iterative
/// deepening over a clique lower bound with canonical-color pruning.
pub fn optimal_coloring(d: &Digraph, limits: OracleLimits) -> Result<crate::digraph::Coloring> {
    let n = d.vertex_count();
    if n > limits.max_vertices_chi {
        return Err(Error::LimitExceeded(n, limits.max_vertices_chi));
    }
    if n == 0 {
        return Ok(crate::digraph::Coloring { color: Vec::new(), num_colors: 0 });
    }
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in d.arcs() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    // Greedy clique on descending degree gives the starting lower bound.
    let mut by_degree: Vec<VertexId> = (0..n).collect();
    by_degree.sort_by_key(|&v| std::cmp::Reverse(adj[v].iter().filter(|&&x| x).count()));
    let mut clique: Vec<VertexId> = Vec::new();
    for &v in &by_degree {
        if clique.iter().all(|&u| adj[u][v]) {
            clique.push(v);
        }
    }
    if d.arc_count() == 0 {
        return Ok(crate::digraph::Coloring { color: vec![1; n], num_colors: 1 });
    }

    fn colorable(
        adj: &[Vec<bool>],
        order: &[VertexId],
        color: &mut [usize],
        idx: usize,
        max_used: usize,
        budget: usize,
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        for c in 1..=budget.min(max_used + 1) {
            if order[..idx].iter().all(|&u| !adj[u][v] || color[u] != c) {
                color[v] = c;
                if colorable(adj, order, color, idx + 1, max_used.max(c), budget) {
                    return true;
                }
            }
        }
        color[v] = 0;
        false
    }

    // Color the clique first so its vertices take distinct colors up front.
    let mut order = clique.clone();
    for &v in &by_degree {
        if !clique.contains(&v) {
            order.push(v);
        }
    }
    let mut budget = clique.len();
    loop {
        let mut color = vec![0usize; n];
        if colorable(&adj, &order, &mut color, 0, 0, budget) {
            return Ok(crate::digraph::Coloring::from_colors(color));
        }
        budget += 1;
    }
}

/// Seeded random digraph: every unordered pair gets an arc with probability
/// `arc_probability`, oriented by a fair coin, so digons are impossible.
pub fn gen_random(n: usize, arc_probability: f64, seed: u64) -> Digraph {
    assert!(n >= 1);
    assert!((0.0..=1.0).contains(&arc_probability));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(arc_probability) {
                if rng.gen_bool(0.5) {
                    arcs.push((u, v));
                } else {
                    arcs.push((v, u));
                }
            }
        }
    }
    Digraph::build(n, &arcs).expect("generator respects simplicity")
}

/// Seeded random tournament: every pair joined, orientation by coin.
pub fn gen_tournament(n: usize, seed: u64) -> Digraph {
    gen_random_full(n, seed)
}

fn gen_random_full(n: usize, seed: u64) -> Digraph {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(0.5) {
                arcs.push((u, v));
            } else {
                arcs.push((v, u));
            }
        }
    }
    Digraph::build(n, &arcs).expect("generator respects simplicity")
}

/// Transitive tournament: arc `(i, j)` for every `i < j`.
pub fn gen_transitive_tournament(n: usize) -> Digraph {
    assert!(n >= 1);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            arcs.push((i, j));
        }
    }
    Digraph::build(n, &arcs).expect("generator respects simplicity")
}
