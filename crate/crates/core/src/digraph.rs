//! Simple digraphs: no loops, no parallel arcs, no 2-cycles.
//!
//! The representation is immutable after [`Digraph::build`]. Vertices are
//! dense indices `0..n`, adjacency lists are sorted ascending, and the arc
//! list is kept sorted, so every iteration order downstream is reproducible.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense vertex index in `[0, n)`.
pub type VertexId = usize;

/// A simple digraph with out- and in-adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(VertexId, VertexId)>,
    out_adj: Vec<Vec<VertexId>>,
    in_adj: Vec<Vec<VertexId>>,
}

impl Digraph {
    /// Builds a digraph from an arc list, rejecting loops, duplicates,
    /// 2-cycles and out-of-range endpoints.
    pub fn build(n: usize, arc_list: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut arcs: Vec<(VertexId, VertexId)> = Vec::with_capacity(arc_list.len());
        for &(u, v) in arc_list {
            if u >= n {
                return Err(Error::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(Error::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(Error::LoopArc(u));
            }
            arcs.push((u, v));
        }
        arcs.sort_unstable();
        for w in arcs.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateArc(w[0].0, w[0].1));
            }
        }
        for &(u, v) in &arcs {
            if u < v && arcs.binary_search(&(v, u)).is_ok() {
                return Err(Error::TwoCycle(u, v));
            }
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for l in in_adj.iter_mut() {
            l.sort_unstable();
        }
        Ok(Digraph { n, arcs, out_adj, in_adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// All arcs, sorted ascending by `(tail, head)`.
    pub fn arcs(&self) -> &[(VertexId, VertexId)] {
        &self.arcs
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.in_adj[v]
    }

    pub fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n && self.out_adj[u].binary_search(&v).is_ok()
    }

    /// True if `u` and `v` are joined by an arc in either direction.
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// The digraph with every arc reversed.
    pub fn reverse(&self) -> Digraph {
        let mut arcs: Vec<(VertexId, VertexId)> = self.arcs.iter().map(|&(u, v)| (v, u)).collect();
        arcs.sort_unstable();
        Digraph {
            n: self.n,
            arcs,
            out_adj: self.in_adj.clone(),
            in_adj: self.out_adj.clone(),
        }
    }

    /// Induced subdigraph on `sub` (host vertex ids, any order). Returns the
    /// subdigraph together with the map from new index to host vertex, which
    /// is ascending in the host order.
    pub fn induced(&self, sub: &[VertexId]) -> Result<(Digraph, Vec<VertexId>)> {
        let mut map: Vec<VertexId> = sub.to_vec();
        map.sort_unstable();
        map.dedup();
        if let Some(&v) = map.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange(v, self.n));
        }
        let mut back = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            back[v] = i;
        }
        let mut arcs = Vec::new();
        for &v in &map {
            for &w in &self.out_adj[v] {
                if back[w] != usize::MAX {
                    arcs.push((back[v], back[w]));
                }
            }
        }
        let g = Digraph::build(map.len(), &arcs).expect("induced subdigraph of a valid digraph");
        Ok((g, map))
    }
}

/// Block lengths of an oriented path `P(k1, k2, k3)`: `k1` forward arcs,
/// then `k2` backward arcs, then `k3` forward arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPattern {
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
}

impl BlockPattern {
    pub fn new(k1: usize, k2: usize, k3: usize) -> Self {
        assert!(k1 >= 1 && k2 >= 1 && k3 >= 1, "block lengths must be positive");
        BlockPattern { k1, k2, k3 }
    }

    /// Total number of arcs.
    pub fn length(&self) -> usize {
        self.k1 + self.k2 + self.k3
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.length() + 1
    }

    pub fn reversed(&self) -> BlockPattern {
        BlockPattern { k1: self.k3, k2: self.k2, k3: self.k1 }
    }

    /// Whether the arc at 0-based position `j` points forward along the
    /// vertex sequence.
    pub fn forward_at(&self, j: usize) -> bool {
        j < self.k1 || j >= self.k1 + self.k2
    }
}

/// A candidate occurrence of a pattern: `order` distinct vertices whose
/// consecutive pairs are arcs oriented per block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathEmbedding {
    pub pattern: BlockPattern,
    pub vertices: Vec<VertexId>,
}

impl PathEmbedding {
    /// The same occurrence read back to front, an occurrence of the
    /// reversed pattern in the reversed digraph.
    pub fn reversed(&self) -> PathEmbedding {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        PathEmbedding { pattern: self.pattern.reversed(), vertices }
    }
}

/// A vertex coloring with colors `1..=num_colors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    /// Color of each vertex, indexed by vertex id.
    pub color: Vec<usize>,
    /// Maximum color in use.
    pub num_colors: usize,
}

impl Coloring {
    pub fn from_colors(color: Vec<usize>) -> Self {
        let num_colors = color.iter().copied().max().unwrap_or(0);
        Coloring { color, num_colors }
    }
}

/// Checks a claimed embedding against `d`: right length, distinct vertices,
/// and per-position arc orientation. Malformed input yields `false`.
pub fn validate_embedding(d: &Digraph, emb: &PathEmbedding) -> bool {
    let vs = &emb.vertices;
    if vs.len() != emb.pattern.order() {
        return false;
    }
    if vs.iter().any(|&v| v >= d.vertex_count()) {
        return false;
    }
    let mut seen = vec![false; d.vertex_count()];
    for &v in vs {
        if seen[v] {
            return false;
        }
        seen[v] = true;
    }
    for j in 0..emb.pattern.length() {
        let ok = if emb.pattern.forward_at(j) {
            d.has_arc(vs[j], vs[j + 1])
        } else {
            d.has_arc(vs[j + 1], vs[j])
        };
        if !ok {
            return false;
        }
    }
    true
}

/// Checks that `c` is total on `d` and proper on the underlying graph.
pub fn validate_coloring(d: &Digraph, c: &Coloring) -> bool {
    if c.color.len() != d.vertex_count() {
        return false;
    }
    if c.color.iter().any(|&x| x == 0 || x > c.num_colors) {
        return false;
    }
    d.arcs().iter().all(|&(u, v)| c.color[u] != c.color[v])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle3() -> Digraph {
        Digraph::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn build_accepts_empty_and_small() {
        let d = Digraph::build(1, &[]).unwrap();
        assert_eq!(d.vertex_count(), 1);
        assert_eq!(d.arc_count(), 0);
        let c = cycle3();
        assert_eq!(c.arc_count(), 3);
        assert!(c.has_arc(2, 0));
        assert!(!c.has_arc(0, 2));
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            Digraph::build(2, &[(0, 1), (1, 0)]),
            Err(Error::TwoCycle(0, 1))
        );
        assert_eq!(Digraph::build(2, &[(1, 1)]), Err(Error::LoopArc(1)));
        assert_eq!(
            Digraph::build(2, &[(0, 1), (0, 1)]),
            Err(Error::DuplicateArc(0, 1))
        );
        assert_eq!(
            Digraph::build(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange(2, 2))
        );
    }

    #[test]
    fn reverse_is_involution() {
        let c = cycle3();
        let r = c.reverse();
        assert_eq!(r.arcs(), &[(0, 2), (1, 0), (2, 1)]);
        assert_eq!(r.reverse(), c);
        let single = Digraph::build(2, &[(0, 1)]).unwrap();
        assert_eq!(single.reverse().arcs(), &[(1, 0)]);
        let edgeless = Digraph::build(4, &[]).unwrap();
        assert_eq!(edgeless.reverse(), edgeless);
    }

    #[test]
    fn induced_restricts_arcs() {
        let c = cycle3();
        let (g, map) = c.induced(&[0, 1]).unwrap();
        assert_eq!(map, vec![0, 1]);
        assert_eq!(g.arcs(), &[(0, 1)]);
        let (e, map) = c.induced(&[]).unwrap();
        assert!(map.is_empty());
        assert_eq!(e.vertex_count(), 0);
        let (full, map) = c.induced(&[2, 0, 1]).unwrap();
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(full, c);
        assert!(c.induced(&[5]).is_err());
    }

    #[test]
    fn embedding_validation_follows_block_orientation() {
        // A digraph shaped exactly like P(2,1,3).
        let p213 = Digraph::build(7, &[(0, 1), (1, 2), (3, 2), (3, 4), (4, 5), (5, 6)]).unwrap();
        let pat = BlockPattern::new(2, 1, 3);
        let emb = PathEmbedding { pattern: pat, vertices: (0..7).collect() };
        assert!(validate_embedding(&p213, &emb));

        let rev = PathEmbedding { pattern: pat, vertices: (0..7).rev().collect() };
        assert!(!validate_embedding(&p213, &rev));

        // A fully forward path has no backward block anywhere.
        let line = Digraph::build(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]).unwrap();
        assert!(!validate_embedding(&line, &emb));

        // The reversed sequence with the reversed pattern embeds in the
        // reversed digraph.
        assert!(validate_embedding(&p213.reverse(), &emb.reversed()));
    }

    #[test]
    fn embedding_validation_rejects_malformed() {
        let d = cycle3();
        let pat = BlockPattern::new(1, 1, 1);
        let short = PathEmbedding { pattern: pat, vertices: vec![0, 1] };
        assert!(!validate_embedding(&d, &short));
        let dup = PathEmbedding { pattern: pat, vertices: vec![0, 1, 0, 2] };
        assert!(!validate_embedding(&d, &dup));
    }

    #[test]
    fn coloring_validation() {
        let edgeless = Digraph::build(3, &[]).unwrap();
        assert!(validate_coloring(&edgeless, &Coloring::from_colors(vec![1, 1, 1])));
        let single = Digraph::build(2, &[(0, 1)]).unwrap();
        assert!(!validate_coloring(&single, &Coloring::from_colors(vec![1, 1])));
        let c = cycle3();
        assert!(validate_coloring(&c, &Coloring::from_colors(vec![1, 2, 3])));
        // Renaming colors by an injection preserves properness.
        assert!(validate_coloring(&c, &Coloring::from_colors(vec![5, 7, 9])));
        // Wrong length fails.
        assert!(!validate_coloring(&c, &Coloring::from_colors(vec![1, 2])));
    }
}
