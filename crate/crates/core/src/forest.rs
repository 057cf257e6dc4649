//! Final spanning outforests and inforests.
//!
//! A spanning outforest is *final* when every arc `(u, v)` of the host with
//! `level(u) >= level(v)` is covered by a forest path from `v` down to `u`;
//! the mirror condition holds for inforests. Final forests have stable level
//! sets, so coloring by level is always proper, and the deepest root path is
//! a directed path of the host with `depth` vertices.

use crate::digraph::{Coloring, Digraph, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Out,
    In,
}

/// A spanning forest of its host digraph, with parent links and levels.
///
/// For `Out`, `parent(v) = u` means the host has arc `(u, v)`; for `In` it
/// means the host has arc `(v, u)`. Roots have level 1 and no parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forest {
    pub orientation: Orientation,
    pub parent: Vec<Option<VertexId>>,
    pub level: Vec<usize>,
}

impl Forest {
    pub fn vertex_count(&self) -> usize {
        self.level.len()
    }

    pub fn depth(&self) -> usize {
        self.level.iter().copied().max().unwrap_or(0)
    }

    pub fn level(&self, v: VertexId) -> usize {
        self.level[v]
    }

    /// Smallest-index vertex of maximum level.
    pub fn deepest_vertex(&self) -> Option<VertexId> {
        let d = self.depth();
        (0..self.vertex_count()).find(|&v| self.level[v] == d)
    }

    /// `v, parent(v), ..., parent^steps(v)`; `None` when the chain leaves
    /// the forest early.
    pub fn chain_up(&self, v: VertexId, steps: usize) -> Option<Vec<VertexId>> {
        let mut chain = Vec::with_capacity(steps + 1);
        let mut cur = v;
        chain.push(cur);
        for _ in 0..steps {
            cur = self.parent[cur]?;
            chain.push(cur);
        }
        Some(chain)
    }

    /// True if `anc` lies strictly above `desc` on the same branch.
    pub fn is_proper_ancestor(&self, anc: VertexId, desc: VertexId) -> bool {
        if self.level[anc] >= self.level[desc] {
            return false;
        }
        let mut cur = desc;
        while self.level[cur] > self.level[anc] {
            match self.parent[cur] {
                Some(p) => cur = p,
                None => return false,
            }
        }
        cur == anc
    }
}

/// Builds a final spanning outforest deterministically.
///
/// Starts from the all-roots forest and repeatedly scans arcs in ascending
/// order; an arc `(u, v)` with `level(u) >= level(v)` and no forest path
/// from `v` to `u` reattaches `v` under `u`. Each reattachment raises the
/// total of all levels, which is capped by `n^2`, so the scan terminates.
pub fn final_spanning_outforest(d: &Digraph) -> Forest {
    let n = d.vertex_count();
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    let mut level: Vec<usize> = vec![1; n];
    let mut children: Vec<Vec<VertexId>> = vec![Vec::new(); n];

    let is_ancestor = |parent: &[Option<VertexId>], level: &[usize], anc: usize, desc: usize| {
        if level[anc] >= level[desc] {
            return false;
        }
        let mut cur = desc;
        while level[cur] > level[anc] {
            match parent[cur] {
                Some(p) => cur = p,
                None => return false,
            }
        }
        cur == anc
    };

    loop {
        let mut changed = false;
        for &(u, v) in d.arcs() {
            if level[u] >= level[v] && !is_ancestor(&parent, &level, v, u) {
                if let Some(old) = parent[v] {
                    let pos = children[old].iter().position(|&c| c == v).unwrap();
                    children[old].remove(pos);
                }
                parent[v] = Some(u);
                children[u].push(v);
                let delta = level[u] + 1 - level[v];
                let mut stack = vec![v];
                while let Some(x) = stack.pop() {
                    level[x] += delta;
                    stack.extend(children[x].iter().copied());
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    Forest { orientation: Orientation::Out, parent, level }
}

/// Final spanning inforest: the final outforest of the reversed digraph,
/// reinterpreted over the host.
pub fn final_spanning_inforest(d: &Digraph) -> Forest {
    let mut f = final_spanning_outforest(&d.reverse());
    f.orientation = Orientation::In;
    f
}

/// Checks finality of `f` over `d` per its orientation.
pub fn is_final(d: &Digraph, f: &Forest) -> bool {
    if f.vertex_count() != d.vertex_count() {
        return false;
    }
    match f.orientation {
        Orientation::Out => d
            .arcs()
            .iter()
            .all(|&(u, v)| f.level[u] < f.level[v] || f.is_proper_ancestor(v, u)),
        Orientation::In => d
            .arcs()
            .iter()
            .all(|&(u, v)| f.level[u] > f.level[v] || f.is_proper_ancestor(u, v)),
    }
}

/// The unique forest path joining `u` with its root. For `Out` the sequence
/// reads root..=u, for `In` it reads u..=root; either way consecutive pairs
/// are arcs of the host.
pub fn root_path(f: &Forest, u: VertexId) -> Vec<VertexId> {
    let mut path = f.chain_up(u, f.level[u] - 1).expect("level matches chain length");
    if f.orientation == Orientation::Out {
        path.reverse();
    }
    path
}

/// Vertices grouped by level, `sets[i]` holding level `i + 1`.
pub fn level_sets(f: &Forest) -> Vec<Vec<VertexId>> {
    let mut sets = vec![Vec::new(); f.depth()];
    for v in 0..f.vertex_count() {
        sets[f.level[v] - 1].push(v);
    }
    sets
}

/// Colors every vertex by its level. Requires finality, which makes each
/// level a stable set.
pub fn level_coloring(d: &Digraph, f: &Forest) -> Result<Coloring> {
    if !is_final(d, f) {
        return Err(Error::NotFinal);
    }
    Ok(Coloring { color: f.level.clone(), num_colors: f.depth() })
}

/// Either a directed path of `d` with exactly `length` arcs (the last
/// `length + 1` vertices of a deepest root path in a final outforest), or
/// `None` together with the guarantee that the final outforest built here
/// has depth at most `length`.
pub fn extract_path(d: &Digraph, length: usize) -> Option<Vec<VertexId>> {
    assert!(length >= 1);
    let f = final_spanning_outforest(d);
    if f.depth() <= length {
        return None;
    }
    let deep = f.deepest_vertex().expect("nonempty digraph has a deepest vertex");
    let rp = root_path(&f, deep);
    Some(rp[rp.len() - (length + 1)..].to_vec())
}

/// A forest over an induced subdigraph, addressed by host vertex ids.
///
/// `vertices` is sorted ascending; the inner forest lives on the induced
/// indices. All accessors below take and return host ids.
#[derive(Debug, Clone)]
pub struct InducedForest {
    pub vertices: Vec<VertexId>,
    pub forest: Forest,
}

impl InducedForest {
    pub fn outforest(host: &Digraph, sub: &[VertexId]) -> Self {
        let (g, vertices) = host.induced(sub).expect("subset of host vertices");
        InducedForest { forest: final_spanning_outforest(&g), vertices }
    }

    pub fn inforest(host: &Digraph, sub: &[VertexId]) -> Self {
        let (g, vertices) = host.induced(sub).expect("subset of host vertices");
        InducedForest { forest: final_spanning_inforest(&g), vertices }
    }

    fn local(&self, host_v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&host_v).ok()
    }

    pub fn contains(&self, host_v: VertexId) -> bool {
        self.local(host_v).is_some()
    }

    /// Level of a member vertex; 0 for non-members.
    pub fn level_of(&self, host_v: VertexId) -> usize {
        self.local(host_v).map_or(0, |i| self.forest.level[i])
    }

    pub fn depth(&self) -> usize {
        self.forest.depth()
    }

    /// `[v, p(v), ..., p^steps(v)]` in host ids.
    pub fn chain_up(&self, host_v: VertexId, steps: usize) -> Option<Vec<VertexId>> {
        let chain = self.forest.chain_up(self.local(host_v)?, steps)?;
        Some(chain.into_iter().map(|i| self.vertices[i]).collect())
    }

    /// Forest parent of a member vertex, in host ids.
    pub fn parent_of(&self, host_v: VertexId) -> Option<VertexId> {
        let p = self.forest.parent[self.local(host_v)?]?;
        Some(self.vertices[p])
    }

    /// Whether `(x, y)` is a forest arc: in an outforest `x` is the parent
    /// of `y`, in an inforest `y` is the parent of `x`.
    pub fn is_forest_arc(&self, x: VertexId, y: VertexId) -> bool {
        match self.forest.orientation {
            Orientation::Out => self.parent_of(y) == Some(x),
            Orientation::In => self.parent_of(x) == Some(y),
        }
    }

    /// Member vertices of the given level, ascending.
    pub fn level_set(&self, level: usize) -> Vec<VertexId> {
        self.vertices
            .iter()
            .enumerate()
            .filter(|&(i, _)| self.forest.level[i] == level)
            .map(|(_, &v)| v)
            .collect()
    }

    /// Member vertices with level at or above `threshold`, ascending.
    pub fn at_least(&self, threshold: usize) -> Vec<VertexId> {
        self.vertices
            .iter()
            .enumerate()
            .filter(|&(i, _)| self.forest.level[i] >= threshold)
            .map(|(_, &v)| v)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Digraph {
        Digraph::build(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn cycle3() -> Digraph {
        Digraph::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    /// Enumerates every spanning outforest of a small digraph as a parent
    /// assignment, for cross-checking the construction.
    fn all_spanning_outforests(d: &Digraph) -> Vec<Forest> {
        let n = d.vertex_count();
        let mut out = Vec::new();
        let mut parent = vec![None; n];
        fn rec(d: &Digraph, v: usize, parent: &mut Vec<Option<usize>>, out: &mut Vec<Forest>) {
            let n = d.vertex_count();
            if v == n {
                // Assign levels root-down; a parent structure that is not a
                // forest never reaches a fixpoint and is skipped.
                let mut level = vec![0usize; n];
                let mut assigned = 0;
                while assigned < n {
                    let before = assigned;
                    for x in 0..n {
                        if level[x] != 0 {
                            continue;
                        }
                        match parent[x] {
                            None => {
                                level[x] = 1;
                                assigned += 1;
                            }
                            Some(p) if level[p] != 0 => {
                                level[x] = level[p] + 1;
                                assigned += 1;
                            }
                            _ => {}
                        }
                    }
                    if assigned == before {
                        return; // cycle
                    }
                }
                out.push(Forest { orientation: Orientation::Out, parent: parent.clone(), level });
                return;
            }
            parent[v] = None;
            rec(d, v + 1, parent, out);
            for &u in d.in_neighbors(v) {
                parent[v] = Some(u);
                rec(d, v + 1, parent, out);
            }
            parent[v] = None;
        }
        rec(d, 0, &mut parent, &mut out);
        out
    }

    #[test]
    fn edgeless_forest_is_all_roots() {
        let d = Digraph::build(3, &[]).unwrap();
        let f = final_spanning_outforest(&d);
        assert!(f.parent.iter().all(|p| p.is_none()));
        assert_eq!(f.level, vec![1, 1, 1]);
        assert!(is_final(&d, &f));
        let fi = final_spanning_inforest(&d);
        assert_eq!(fi.level, vec![1, 1, 1]);
    }

    #[test]
    fn directed_path_forest_is_the_path() {
        let d = path3();
        let f = final_spanning_outforest(&d);
        assert_eq!(f.level, vec![1, 2, 3]);
        assert!(is_final(&d, &f));
        assert_eq!(root_path(&f, 2), vec![0, 1, 2]);
        assert_eq!(root_path(&f, 0), vec![0]);

        let fi = final_spanning_inforest(&d);
        assert_eq!(fi.level, vec![3, 2, 1]);
        assert!(is_final(&d, &fi));
        assert_eq!(root_path(&fi, 0), vec![0, 1, 2]);
    }

    #[test]
    fn triangle_final_forests_have_depth_three() {
        // Independent check: among all spanning outforests of the 3-cycle,
        // exactly the depth-3 ones are final.
        let d = cycle3();
        let forests = all_spanning_outforests(&d);
        assert!(!forests.is_empty());
        for f in &forests {
            assert_eq!(is_final(&d, f), f.depth() == 3, "forest {:?}", f.parent);
        }
        let f = final_spanning_outforest(&d);
        assert!(is_final(&d, &f));
        assert_eq!(f.depth(), 3);
        let fi = final_spanning_inforest(&d);
        assert!(is_final(&d, &fi));
        assert_eq!(fi.depth(), 3);
    }

    #[test]
    fn non_final_forest_detected() {
        // Forest {0 -> 1}, vertex 2 a root: arc (1, 2) is backward with no
        // covering path.
        let d = cycle3();
        let f = Forest {
            orientation: Orientation::Out,
            parent: vec![None, Some(0), None],
            level: vec![1, 2, 1],
        };
        assert!(!is_final(&d, &f));
        assert_eq!(level_coloring(&d, &f), Err(Error::NotFinal));
    }

    #[test]
    fn level_coloring_examples() {
        let edgeless = Digraph::build(4, &[]).unwrap();
        let f = final_spanning_outforest(&edgeless);
        let c = level_coloring(&edgeless, &f).unwrap();
        assert_eq!(c.num_colors, 1);

        let d = cycle3();
        let f = final_spanning_outforest(&d);
        let c = level_coloring(&d, &f).unwrap();
        assert_eq!(c.num_colors, 3);
        assert!(crate::digraph::validate_coloring(&d, &c));

        let line5 = Digraph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let f = final_spanning_outforest(&line5);
        let c = level_coloring(&line5, &f).unwrap();
        assert_eq!(c.num_colors, 5);
        assert!(crate::digraph::validate_coloring(&line5, &c));
    }

    #[test]
    fn extract_path_examples() {
        // A path with L+1 arcs yields a suffix of exactly L arcs.
        let d = Digraph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let p = extract_path(&d, 3).unwrap();
        assert_eq!(p, vec![1, 2, 3, 4]);

        let edgeless = Digraph::build(3, &[]).unwrap();
        assert_eq!(extract_path(&edgeless, 1), None);
        assert_eq!(extract_path(&edgeless, 5), None);

        let p = extract_path(&cycle3(), 2).unwrap();
        assert_eq!(p.len(), 3);
        for w in p.windows(2) {
            assert!(cycle3().has_arc(w[0], w[1]));
        }
    }

    #[test]
    fn induced_forest_maps_back_to_host() {
        let d = Digraph::build(6, &[(3, 4), (4, 5), (0, 3)]).unwrap();
        let f = InducedForest::outforest(&d, &[3, 4, 5]);
        assert_eq!(f.level_of(3), 1);
        assert_eq!(f.level_of(5), 3);
        assert_eq!(f.level_of(0), 0);
        assert_eq!(f.chain_up(5, 2), Some(vec![5, 4, 3]));
        assert_eq!(f.chain_up(5, 3), None);
        assert_eq!(f.at_least(2), vec![4, 5]);
        assert_eq!(f.level_set(1), vec![3]);
    }
}
