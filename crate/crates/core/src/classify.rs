//! Classification of halo vertices by where their arcs meet the layer paths.
//!
//! Every vertex of the halo union carries at least one *anchor*: an arc
//! joining it to a specific position of some layer path. The class of a
//! vertex is decided by the positions and directions of all its anchors,
//! across all layers, and the embedding constructions later consume those
//! same anchors.

use std::collections::BTreeMap;

use crate::digraph::{Digraph, VertexId};
use crate::error::{Error, Result};
use crate::peel::Decomposition;

/// Direction of an anchor arc, seen from the halo vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Direction {
    /// Arc from the vertex into the path position.
    IntoPath,
    /// Arc from the path position out to the vertex.
    FromPath,
}

/// An arc between a halo vertex and position `position` (1-based) of layer
/// path `layer`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct AnchorArc {
    pub layer: usize,
    pub position: usize,
    pub direction: Direction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    TwoWay,
    FourWay,
}

/// Disjoint classes covering the halo union, with the full anchor map.
#[derive(Debug, Clone)]
pub struct NeighborPartition {
    pub mode: Mode,
    pub a: Vec<VertexId>,
    pub b: Vec<VertexId>,
    pub c: Vec<VertexId>,
    pub h: Vec<VertexId>,
    pub anchors: BTreeMap<VertexId, Vec<AnchorArc>>,
}

/// All anchors of `members` against the given paths, sorted per vertex by
/// `(layer, position, direction)`.
pub fn collect_anchors(
    host: &Digraph,
    paths: &[Vec<VertexId>],
    members: &[VertexId],
) -> BTreeMap<VertexId, Vec<AnchorArc>> {
    let mut anchors: BTreeMap<VertexId, Vec<AnchorArc>> = BTreeMap::new();
    for &v in members {
        let mut list = Vec::new();
        for (i, path) in paths.iter().enumerate() {
            for (j, &w) in path.iter().enumerate() {
                let position = j + 1;
                if host.has_arc(v, w) {
                    list.push(AnchorArc { layer: i, position, direction: Direction::IntoPath });
                }
                if host.has_arc(w, v) {
                    list.push(AnchorArc { layer: i, position, direction: Direction::FromPath });
                }
            }
        }
        list.sort_unstable();
        anchors.insert(v, list);
    }
    anchors
}

/// Two-way split for the middle-block-one certifier, parameters `(k, l)`.
///
/// A vertex lands in `B` when some layer path sends it an arc from position
/// `k`, or touches it in either direction at a position in `k+1..=k+l-1`;
/// everything else is `A`, and `A` vertices can only point into positions
/// `<= k` or be pointed at from positions `<= k-1`.
pub fn classify_two(d: &Digraph, dec: &Decomposition, k: usize, l: usize) -> Result<NeighborPartition> {
    let required = k + l - 2;
    if dec.length != required {
        return Err(Error::LengthMismatch { required, found: dec.length });
    }
    let members = dec.neighbor_union();
    let paths: Vec<Vec<VertexId>> = dec.layers.iter().map(|x| x.path.clone()).collect();
    let anchors = collect_anchors(d, &paths, &members);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for &v in &members {
        let in_b = anchors[&v].iter().any(|an| {
            (an.direction == Direction::FromPath && an.position == k)
                || (an.position > k && an.position < k + l)
        });
        if in_b {
            b.push(v);
        } else {
            a.push(v);
        }
    }
    Ok(NeighborPartition { mode: Mode::TwoWay, a, b, c: Vec::new(), h: Vec::new(), anchors })
}

/// Four-way split for the general certifier, parameters `(k, r)`, applied
/// with priority `H`, then `C`, then `B`, then `A`.
pub fn classify_four(d: &Digraph, dec: &Decomposition, k: usize, r: usize) -> Result<NeighborPartition> {
    let required = k + r - 2;
    if dec.length != required {
        return Err(Error::LengthMismatch { required, found: dec.length });
    }
    let members = dec.neighbor_union();
    let paths: Vec<Vec<VertexId>> = dec.layers.iter().map(|x| x.path.clone()).collect();
    let anchors = collect_anchors(d, &paths, &members);
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut c = Vec::new();
    let mut h = Vec::new();
    for &v in &members {
        let list = &anchors[&v];
        let class = if list
            .iter()
            .any(|an| an.direction == Direction::FromPath && an.position >= k && an.position < k + r)
        {
            &mut h
        } else if list
            .iter()
            .any(|an| an.direction == Direction::IntoPath && an.position > k && an.position < k + r)
        {
            &mut c
        } else if list
            .iter()
            .any(|an| an.direction == Direction::FromPath && an.position < k)
        {
            &mut b
        } else {
            &mut a
        };
        class.push(v);
    }
    Ok(NeighborPartition { mode: Mode::FourWay, a, b, c, h, anchors })
}

impl NeighborPartition {
    /// Every class member together, ascending; equals the halo union.
    pub fn covered(&self) -> Vec<VertexId> {
        let mut all: Vec<VertexId> = self
            .a
            .iter()
            .chain(self.b.iter())
            .chain(self.c.iter())
            .chain(self.h.iter())
            .copied()
            .collect();
        all.sort_unstable();
        all
    }
}
