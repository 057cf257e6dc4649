//! Layered decomposition by repeated path removal.
//!
//! Each round extracts a directed path with exactly `length` arcs from the
//! current residual digraph and removes it together with its entire open
//! neighborhood (its halo). The process stops once the residual's final
//! outforest is no deeper than `length`. Later layers and the residual are
//! never adjacent to earlier layer paths, which is what makes the layer
//! colorings composable.

use serde::Serialize;

use crate::digraph::{Digraph, VertexId};
use crate::forest::{extract_path, InducedForest};

#[derive(Debug, Clone, Serialize)]
pub struct Layer {
    /// Directed path of the host with exactly `length` arcs.
    pub path: Vec<VertexId>,
    /// Vertices of the residual at removal time adjacent to the path.
    pub halo: Vec<VertexId>,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub length: usize,
    pub layers: Vec<Layer>,
    /// Vertices never removed, sorted ascending.
    pub residual: Vec<VertexId>,
    /// Final outforest of the induced residual digraph; depth <= length.
    pub residual_forest: InducedForest,
}

impl Decomposition {
    /// Union of all halos, ascending.
    pub fn neighbor_union(&self) -> Vec<VertexId> {
        let mut n: Vec<VertexId> = self.layers.iter().flat_map(|l| l.halo.iter().copied()).collect();
        n.sort_unstable();
        n
    }
}

/// Peels `d` with the given layer path length (in arcs).
pub fn peel(d: &Digraph, length: usize) -> Decomposition {
    assert!(length >= 1);
    let mut remaining: Vec<VertexId> = (0..d.vertex_count()).collect();
    let mut layers = Vec::new();

    loop {
        let (sub, map) = d.induced(&remaining).expect("remaining is a valid subset");
        match extract_path(&sub, length) {
            Some(local_path) => {
                let path: Vec<VertexId> = local_path.into_iter().map(|i| map[i]).collect();
                let on_path = |v: VertexId| path.contains(&v);
                let halo: Vec<VertexId> = remaining
                    .iter()
                    .copied()
                    .filter(|&v| !on_path(v) && path.iter().any(|&p| d.has_edge(v, p)))
                    .collect();
                remaining.retain(|&v| !on_path(v) && halo.binary_search(&v).is_err());
                layers.push(Layer { path, halo });
            }
            None => {
                let residual_forest = InducedForest::outforest(d, &remaining);
                return Decomposition { length, layers, residual: remaining, residual_forest };
            }
        }
    }
}

/// Re-checks every structural invariant of a decomposition against its host:
/// layer paths are directed paths of exactly `length` arcs, the pieces
/// partition the vertex set, halos are exactly the path neighborhoods at
/// removal time, no edge joins two layer paths or a layer path and the
/// residual, and the residual forest is final with depth at most `length`.
pub fn cross_edge_audit(d: &Digraph, dec: &Decomposition) -> bool {
    let n = d.vertex_count();
    // 0 = unseen, 1 = path, 2 = halo, 3 = residual
    let mut role = vec![0u8; n];
    for layer in &dec.layers {
        if layer.path.len() != dec.length + 1 {
            return false;
        }
        for w in layer.path.windows(2) {
            if !d.has_arc(w[0], w[1]) {
                return false;
            }
        }
        for &v in layer.path.iter().chain(layer.halo.iter()) {
            if v >= n || role[v] != 0 {
                return false;
            }
        }
        for &v in &layer.path {
            role[v] = 1;
        }
        for &v in &layer.halo {
            role[v] = 2;
        }
    }
    for &v in &dec.residual {
        if v >= n || role[v] != 0 {
            return false;
        }
        role[v] = 3;
    }
    if role.contains(&0) {
        return false;
    }

    // No edge between a layer path and any other path or the residual.
    let mut path_index = vec![usize::MAX; n];
    for (i, layer) in dec.layers.iter().enumerate() {
        for &v in &layer.path {
            path_index[v] = i;
        }
    }
    for &(u, v) in d.arcs() {
        let (pu, pv) = (path_index[u], path_index[v]);
        if pu != usize::MAX && pv != usize::MAX && pu != pv {
            return false;
        }
        if (pu != usize::MAX && role[v] == 3) || (pv != usize::MAX && role[u] == 3) {
            return false;
        }
    }

    // Halos are exactly the neighborhoods within the residual digraph of
    // their round.
    let mut alive: Vec<VertexId> = (0..n).collect();
    for layer in &dec.layers {
        let expected: Vec<VertexId> = alive
            .iter()
            .copied()
            .filter(|&v| !layer.path.contains(&v) && layer.path.iter().any(|&p| d.has_edge(v, p)))
            .collect();
        if expected != layer.halo {
            return false;
        }
        alive.retain(|&v| !layer.path.contains(&v) && !layer.halo.contains(&v));
    }
    if alive != dec.residual {
        return false;
    }

    if dec.residual_forest.vertices != dec.residual {
        return false;
    }
    let (res_digraph, _) = d.induced(&dec.residual).expect("residual is a valid subset");
    crate::forest::is_final(&res_digraph, &dec.residual_forest.forest)
        && dec.residual_forest.depth() <= dec.length
}
