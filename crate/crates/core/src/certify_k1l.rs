//! Certifier for patterns `P(k, 1, l)` with a single backward arc.
//!
//! Returns either a validated embedding of `P(k, 1, l)` or a proper
//! coloring with at most `2(k + l)` colors, i.e. `2n - 4` for the pattern
//! order `n = k + l + 2`. The search peels length-`(k+l-2)` paths, splits
//! the halo union into two classes, builds a final outforest over one and a
//! final inforest over the other, and then scans nine forbidden
//! configurations. Any hit assembles an embedding from forest root paths,
//! an anchor arc and a layer segment; if none fires, the accumulated
//! structure pins the palette below the bound.

use crate::certificate::Certificate;
use crate::classify::{classify_two, AnchorArc, Direction, NeighborPartition};
use crate::digraph::{
    validate_coloring, validate_embedding, BlockPattern, Coloring, Digraph, PathEmbedding, VertexId,
};
use crate::error::{Error, Result};
use crate::forest::InducedForest;
use crate::peel::{cross_edge_audit, peel, Decomposition};

/// Entry point; handles the reversal reduction so the worker below only
/// ever sees `k <= l`.
pub fn certify_middle_one(d: &Digraph, k: usize, l: usize) -> Result<Certificate> {
    if k < 2 || l < 2 || k + l + 2 < 7 {
        return Err(Error::UnsupportedPattern(k, 1, l));
    }
    let flip = k > l || (k == l && prefers_reverse(d));
    if flip {
        let cert = certify_normalized(&d.reverse(), l, k)?;
        Ok(reverse_certificate(cert))
    } else {
        certify_normalized(d, k, l)
    }
}

/// Canonical orientation for symmetric patterns: work on whichever of the
/// digraph and its reverse has the smaller arc list, so a digraph and its
/// reverse certify through the same run.
pub(crate) fn prefers_reverse(d: &Digraph) -> bool {
    d.reverse().arcs() < d.arcs()
}

pub(crate) fn reverse_certificate(cert: Certificate) -> Certificate {
    match cert {
        Certificate::Path(emb) => Certificate::Path(emb.reversed()),
        colored => colored,
    }
}

fn internal(msg: impl Into<String>) -> Error {
    Error::InternalConstructionError(msg.into())
}

struct MidOneState<'a> {
    d: &'a Digraph,
    k: usize,
    l: usize,
    dec: Decomposition,
    part: NeighborPartition,
    fa: InducedForest,
    fb: InducedForest,
    /// Out-forest levels `>= k+1` of the A side.
    a_deep: Vec<VertexId>,
    /// In-forest levels `>= l+1` of the B side.
    b_deep: Vec<VertexId>,
    in_a_deep: Vec<bool>,
    in_b_deep: Vec<bool>,
    /// Odd and even deep A levels, counted from `k+1`.
    a1: Vec<VertexId>,
    a2: Vec<VertexId>,
    in_a1: Vec<bool>,
    /// Top level `k+l-2` of the residual forest.
    r_top: Vec<VertexId>,
}

impl<'a> MidOneState<'a> {
    /// Derives the forests, level selections and parity classes from a
    /// classified decomposition.
    fn assemble(d: &'a Digraph, k: usize, l: usize, dec: Decomposition, part: NeighborPartition) -> MidOneState<'a> {
        let n = d.vertex_count();
        let fa = InducedForest::outforest(d, &part.a);
        let fb = InducedForest::inforest(d, &part.b);
        let a_deep = fa.at_least(k + 1);
        let b_deep = fb.at_least(l + 1);
        let mut in_a_deep = vec![false; n];
        for &v in &a_deep {
            in_a_deep[v] = true;
        }
        let mut in_b_deep = vec![false; n];
        for &v in &b_deep {
            in_b_deep[v] = true;
        }
        let (mut a1, mut a2) = (Vec::new(), Vec::new());
        for &v in &a_deep {
            if (fa.level_of(v) - (k + 1)).is_multiple_of(2) {
                a1.push(v);
            } else {
                a2.push(v);
            }
        }
        let mut in_a1 = vec![false; n];
        for &v in &a1 {
            in_a1[v] = true;
        }
        let r_top = dec.residual_forest.level_set(k + l - 2);
        a1.sort_unstable();
        a2.sort_unstable();
        MidOneState { d, k, l, dec, part, fa, fb, a_deep, b_deep, in_a_deep, in_b_deep, a1, a2, in_a1, r_top }
    }
}

fn certify_normalized(d: &Digraph, k: usize, l: usize) -> Result<Certificate> {
    debug_assert!(2 <= k && k <= l);
    let dec = peel(d, k + l - 2);
    if !cross_edge_audit(d, &dec) {
        return Err(internal("peel output failed its own audit"));
    }
    let part = classify_two(d, &dec, k, l)?;
    let st = MidOneState::assemble(d, k, l, dec, part);

    if let Some(vertices) = scan(&st)? {
        let emb = PathEmbedding { pattern: BlockPattern::new(k, 1, l), vertices };
        if !validate_embedding(d, &emb) {
            return Err(internal(format!("assembled embedding failed validation: {:?}", emb.vertices)));
        }
        return Ok(Certificate::Path(emb));
    }

    check_scan_postconditions(&st)?;
    let coloring = assemble_palette(&st);
    let bound = 2 * (k + l);
    if !validate_coloring(d, &coloring) {
        return Err(internal("assembled coloring is not proper"));
    }
    if coloring.num_colors > bound {
        return Err(internal(format!("coloring uses {} colors, bound {}", coloring.num_colors, bound)));
    }
    Ok(Certificate::Colored { coloring, bound })
}

// -- anchor and segment helpers ------------------------------------------

fn first_into_at_most(part: &NeighborPartition, v: VertexId, max_pos: usize) -> Option<AnchorArc> {
    part.anchors[&v]
        .iter()
        .copied()
        .find(|a| a.direction == Direction::IntoPath && a.position <= max_pos)
}

fn first_from_in(part: &NeighborPartition, v: VertexId, lo: usize, hi: usize) -> Option<AnchorArc> {
    part.anchors[&v]
        .iter()
        .copied()
        .find(|a| a.direction == Direction::FromPath && a.position >= lo && a.position <= hi)
}

fn first_into_in(part: &NeighborPartition, v: VertexId, lo: usize, hi: usize) -> Option<AnchorArc> {
    part.anchors[&v]
        .iter()
        .copied()
        .find(|a| a.direction == Direction::IntoPath && a.position >= lo && a.position <= hi)
}

/// Layer path segment covering 1-based positions `from..=to`.
fn layer_segment(dec: &Decomposition, layer: usize, from: usize, to: usize) -> Vec<VertexId> {
    dec.layers[layer].path[from - 1..=to - 1].to_vec()
}

/// `[p^steps(v), ..., p(v), v]`: the tail of a root path read in arc
/// direction for an outforest.
fn tail_into(f: &InducedForest, v: VertexId, steps: usize) -> Option<Vec<VertexId>> {
    let mut chain = f.chain_up(v, steps)?;
    chain.reverse();
    Some(chain)
}

/// Smallest-index neighbor of maximum forest level.
fn deepest(f: &InducedForest, candidates: &[VertexId]) -> VertexId {
    let mut best = candidates[0];
    for &c in &candidates[1..] {
        if f.level_of(c) > f.level_of(best) {
            best = c;
        }
    }
    best
}

// -- the nine configuration scans ----------------------------------------

type ScanFn = fn(&MidOneState) -> Result<Option<Vec<VertexId>>>;

fn scan(st: &MidOneState) -> Result<Option<Vec<VertexId>>> {
    let scans: [ScanFn; 9] = [
        scan_deep_a_entered_from_prefix,
        scan_stray_arc_in_deep_a,
        scan_deep_b_pointing_into_path,
        scan_stray_arc_in_deep_b,
        scan_arc_from_deep_b_into_a1,
        scan_two_deep_b_outs_from_a1,
        scan_top_residual_entered_from_deep_b,
        scan_top_residual_entered_from_deep_a,
        scan_two_outs_from_top_residual,
    ];
    for s in scans {
        if let Some(seq) = s(st)? {
            return Ok(Some(seq));
        }
    }
    Ok(None)
}

/// A deep A vertex fed by a path position below `k` extends its root path
/// through the feeding arc into the layer.
fn scan_deep_a_entered_from_prefix(st: &MidOneState) -> Result<Option<Vec<VertexId>>> {
    let k = st.k;
    for &v in &st.a_deep {
        if let Some(an) = first_from_in(&st.part, v, 1, k - 1) {
            let mut seq = tail_into(&st.fa, v, k).ok_or_else(|| internal("A chain too short"))?;
            seq.extend(layer_segment(&st.dec, an.layer, an.position, an.position + st.l));
            return Ok(Some(seq));
        }
    }
    Ok(None)
}

/// Any non-forest arc inside deep A yields an embedding, split by whether
/// the arc runs against or along the levels.
fn scan_stray_arc_in_deep_a(st: &MidOneState) -> Result<Option<Vec<VertexId>>> {
    let k = st.k;
    for &(x, y) in st.d.arcs() {
        if !st.in_a_deep[x] || !st.in_a_deep[y] || st.fa.is_forest_arc(x, y) {
            continue;
        }
        if st.fa.level_of(x) >= st.fa.level_of(y) {
            let an = first_into_at_most(&st.part, x, k)
                .ok_or_else(|| internal("deep A vertex lost its entering anchor"))?;
            let mut seq = tail_into(&st.fa, y, k).ok_or_else(|| internal("A chain too short"))?;
            seq.push(x);
            seq.extend(layer_segment(&st.dec, an.layer, an.position, an.position + st.l - 1));
            return Ok(Some(seq));
        } else {
            let z = st.fa.parent_of(y).ok_or_else(|| internal("deep A vertex has no parent"))?;
            let an = first_into_at_most(&st.part, z, k)
                .ok_or_else(|| internal("deep A vertex lost its entering anchor"))?;
            let mut seq = tail_into(&st.fa, x, k - 1).ok_or_else(|| internal("A chain too short"))?;
            seq.push(y);
            seq.push(z);
            seq.extend(layer_segment(&st.dec, an.layer, an.position, an.position + st.l - 1));
            return Ok(Some(seq));
        }
    }
    Ok(None)
}

/// A deep B vertex pointing into a path position past `k` rides the layer
/// prefix in and its own in-forest root path out.
fn scan_deep_b_pointing_into_path(st: &MidOneState) -> Result<Option<Vec<VertexId>>> {
    let (k, l) = (st.k, st.l);
    for &v in &st.b_deep {
        if let Some(an) = first_into_in(&st.part, v, k + 1, k + l - 1) {
            let mut seq = layer_segment(&st.dec, an.layer, an.position - k, an.position);
            seq.extend(st.fb.chain_up(v, l).ok_or_else(|| internal("B chain too short"))?);
            return Ok(Some(seq));
        }
    }
    Ok(None)
}

/// Mirror of the deep-A stray-arc scan through the inforest.
fn scan_stray_arc_in_deep_b(st: &MidOneState) -> Result<Option<Vec<VertexId>>> {
    let (k, l) = (st.k, st.l);
    for &(x, y) in st.d.arcs() {
        if !st.in_b_deep[x] || !st.in_b_deep[y] || st.fb.is_forest_arc(x, y) {
            continue;
        }
        if st.fb.level_of(x) <= st.fb.level_of(y) {
            let an = first_from_in(&st.part, y, k, k + l - 1)
                .ok_or_else(|| internal("deep B vertex lost its fed anchor"))?;
            let mut seq = layer_segment(&st.dec, an.layer, an.position - k + 1, an.position);
            seq.push(y);
            seq.extend(st.fb.chain_up(x, l).ok_or_else(|| internal("B chain too short"))?);
            return Ok(Some(seq));
        } else {
            let z = st.fb.parent_of(x).ok_or_else(|| internal("deep B vertex has no parent"))?;
            let an = first_from_in(&st.part, z, k, k + l - 1)
                .ok_or_else(|| internal("deep B vertex lost its fed anchor"))?;
            let mut seq = layer_segment(&st.dec, an.layer, an.position - k + 1, an.position);
            seq.push(z);
            seq.push(x);
            seq.extend(st.fb.chain_up(y, l - 1).ok_or_else(|| internal("B chain too short"))?);
            return Ok(Some(seq));
        }
    }
    Ok(None)
}

/// An arc from deep B into the odd deep-A class joins the two root paths.
fn scan_arc_from_deep_b_into_a1(st: &MidOneState) -> Result<Option<Vec<VertexId>>> {
    for &(u, v) in st.d.arcs() {
        if st.in_b_deep[u] && st.in_a1[v] {
            let mut seq = tail_into(&st.fa, v, st.k).ok_or_else(|| internal("A chain too short"))?;
            seq.extend(st.fb.chain_up(u, st.l).ok_or_else(|| internal("B chain too short"))?);
            return Ok(Some(seq));
        }
    }
    Ok(None)
}

/// Two deep-B out-neighbors of one odd deep-A vertex: enter at the deeper
/// neighbor's fed position, bounce through the A vertex, leave along the
/// shallower neighbor's root path.
fn scan_two_deep_b_outs_from_a1(st: &MidOneState) -> Result<Option<Vec<VertexId>>> {
    let (k, l) = (st.k, st.l);
    for &v in &st.a1 {
        let outs: Vec<VertexId> = st
            .d
            .out_neighbors(v)
            .iter()
            .copied()
            .filter(|&u| st.in_b_deep[u])
            .collect();
        if outs.len() < 2 {
            continue;
        }
        let y = deepest(&st.fb, &outs);
        let x = outs.iter().copied().find(|&u| u != y).unwrap();
        let an = first_from_in(&st.part, y, k, k + l - 1)
            .ok_or_else(|| internal("deep B vertex lost its fed anchor"))?;
        let mut seq = layer_segment(&st.dec, an.layer, an.position - k + 1, an.position);
        seq.push(y);
        seq.push(v);
        seq.extend(st.fb.chain_up(x, l - 1).ok_or_else(|| internal("B chain too short"))?);
        return Ok(Some(seq));
    }
    Ok(None)
}

/// Top residual level entered from deep B.
fn scan_top_residual_entered_from_deep_b(st: &MidOneState) -> Result<Option<Vec<VertexId>>> {
    for &v in &st.r_top {
        for &u in st.d.in_neighbors(v) {
            if st.in_b_deep[u] {
                let mut seq = tail_into(&st.dec.residual_forest, v, st.k)
                    .ok_or_else(|| internal("residual chain too short"))?;
                seq.extend(st.fb.chain_up(u, st.l).ok_or_else(|| internal("B chain too short"))?);
                return Ok(Some(seq));
            }
        }
    }
    Ok(None)
}

/// Top residual level entered from deep A; leaves through the A vertex's
/// entering anchor.
fn scan_top_residual_entered_from_deep_a(st: &MidOneState) -> Result<Option<Vec<VertexId>>> {
    for &v in &st.r_top {
        for &u in st.d.in_neighbors(v) {
            if st.in_a_deep[u] {
                let an = first_into_at_most(&st.part, u, st.k)
                    .ok_or_else(|| internal("deep A vertex lost its entering anchor"))?;
                let mut seq = tail_into(&st.dec.residual_forest, v, st.k)
                    .ok_or_else(|| internal("residual chain too short"))?;
                seq.push(u);
                seq.extend(layer_segment(&st.dec, an.layer, an.position, an.position + st.l - 1));
                return Ok(Some(seq));
            }
        }
    }
    Ok(None)
}

/// A top residual vertex with two out-neighbors among deep B and odd deep
/// A, in the three shapes the pair can take.
fn scan_two_outs_from_top_residual(st: &MidOneState) -> Result<Option<Vec<VertexId>>> {
    let (k, l) = (st.k, st.l);
    for &v in &st.r_top {
        let outs_b: Vec<VertexId> =
            st.d.out_neighbors(v).iter().copied().filter(|&u| st.in_b_deep[u]).collect();
        let outs_a1: Vec<VertexId> =
            st.d.out_neighbors(v).iter().copied().filter(|&u| st.in_a1[u]).collect();
        if outs_b.len() >= 2 {
            let y = deepest(&st.fb, &outs_b);
            let x = outs_b.iter().copied().find(|&u| u != y).unwrap();
            let an = first_from_in(&st.part, y, k, k + l - 1)
                .ok_or_else(|| internal("deep B vertex lost its fed anchor"))?;
            let mut seq = layer_segment(&st.dec, an.layer, an.position - k + 1, an.position);
            seq.push(y);
            seq.push(v);
            seq.extend(st.fb.chain_up(x, l - 1).ok_or_else(|| internal("B chain too short"))?);
            return Ok(Some(seq));
        }
        if outs_a1.len() >= 2 {
            let y = deepest(&st.fa, &outs_a1);
            let x = outs_a1.iter().copied().find(|&u| u != y).unwrap();
            let an = first_into_at_most(&st.part, y, k)
                .ok_or_else(|| internal("deep A vertex lost its entering anchor"))?;
            let mut seq = tail_into(&st.fa, x, k).ok_or_else(|| internal("A chain too short"))?;
            seq.push(v);
            seq.push(y);
            seq.extend(layer_segment(&st.dec, an.layer, an.position, an.position + st.l - 2));
            return Ok(Some(seq));
        }
        if !outs_a1.is_empty() && !outs_b.is_empty() {
            let x = outs_a1[0];
            let y = outs_b[0];
            let mut seq = tail_into(&st.fa, x, k).ok_or_else(|| internal("A chain too short"))?;
            seq.push(v);
            seq.extend(st.fb.chain_up(y, l - 1).ok_or_else(|| internal("B chain too short"))?);
            return Ok(Some(seq));
        }
    }
    Ok(None)
}

// -- post-scan structure checks ------------------------------------------

/// When no configuration fires, the structure the palette relies on must
/// hold; a violation here is an implementation bug.
fn check_scan_postconditions(st: &MidOneState) -> Result<()> {
    let (k, l) = (st.k, st.l);
    for &v in &st.a_deep {
        if first_into_at_most(&st.part, v, k).is_none() {
            return Err(internal(format!("deep A vertex {v} lacks an entering anchor at or below {k}")));
        }
    }
    for &v in &st.b_deep {
        if first_from_in(&st.part, v, k, k + l - 1).is_none() {
            return Err(internal(format!("deep B vertex {v} lacks a fed anchor in {k}..={}", k + l - 1)));
        }
    }
    for &(x, y) in st.d.arcs() {
        if st.in_a_deep[x] && st.in_a_deep[y] && !st.fa.is_forest_arc(x, y) {
            return Err(internal(format!("stray arc ({x}, {y}) survives in deep A")));
        }
        if st.in_b_deep[x] && st.in_b_deep[y] && !st.fb.is_forest_arc(x, y) {
            return Err(internal(format!("stray arc ({x}, {y}) survives in deep B")));
        }
        if st.in_b_deep[x] && st.in_a1[y] {
            return Err(internal(format!("arc ({x}, {y}) from deep B into A1 survives")));
        }
    }
    for &v in &st.a1 {
        let outs = st.d.out_neighbors(v).iter().filter(|&&u| st.in_b_deep[u]).count();
        if outs > 1 {
            return Err(internal(format!("A1 vertex {v} keeps {outs} deep B out-neighbors")));
        }
    }
    for &v in &st.r_top {
        if st.d.in_neighbors(v).iter().any(|&u| st.in_a_deep[u] || st.in_b_deep[u]) {
            return Err(internal(format!("top residual vertex {v} keeps a deep in-neighbor")));
        }
        let outs = st
            .d
            .out_neighbors(v)
            .iter()
            .filter(|&&u| st.in_b_deep[u] || st.in_a1[u])
            .count();
        if outs > 1 {
            return Err(internal(format!("top residual vertex {v} keeps {outs} protected out-neighbors")));
        }
    }
    Ok(())
}

// -- palette ---------------------------------------------------------------

/// Three color groups. Layers are rainbow-colored by position and the
/// residual by level inside `1..=k+l-1`, which keeps the prefix positions
/// every A vertex can touch inside `1..=k`; the two top slots of that group
/// take level 1 of the A forest and the even deep-A class. The second group
/// spends `l` colors on the shallow B levels and two more on the deep B
/// parity classes, shared with the odd deep-A class and the top residual
/// level, both of which have at most one neighbor there to dodge. The third
/// group colors the remaining shallow A levels.
fn assemble_palette(st: &MidOneState) -> Coloring {
    let (k, l) = (st.k, st.l);
    let n = st.d.vertex_count();
    let mut color = vec![0usize; n];

    for layer in &st.dec.layers {
        for (i, &v) in layer.path.iter().enumerate() {
            color[v] = i + 1;
        }
    }
    let top = k + l - 2;
    for &v in &st.dec.residual {
        let lvl = st.dec.residual_forest.level_of(v);
        if lvl < top {
            color[v] = lvl;
        }
    }
    for &v in &st.part.a {
        match st.fa.level_of(v) {
            1 => color[v] = k + l - 2,
            lvl if lvl >= 2 && lvl <= k => color[v] = 2 * l + k + lvl,
            _ => {}
        }
    }
    for &v in &st.a2 {
        color[v] = k + l - 1;
    }

    let p2 = k + l - 1;
    let (c1, c2) = (p2 + l + 1, p2 + l + 2);
    for &v in &st.part.b {
        let lvl = st.fb.level_of(v);
        if lvl <= l {
            color[v] = p2 + lvl;
        } else if (lvl - (l + 1)).is_multiple_of(2) {
            color[v] = c1;
        } else {
            color[v] = c2;
        }
    }
    for &v in &st.a1 {
        let clash = st
            .d
            .out_neighbors(v)
            .iter()
            .copied()
            .find(|&u| st.in_b_deep[u])
            .map(|u| color[u]);
        color[v] = if clash == Some(c1) { c2 } else { c1 };
    }
    for &v in &st.r_top {
        let clash = st
            .d
            .out_neighbors(v)
            .iter()
            .copied()
            .find(|&u| st.in_b_deep[u] || st.in_a1[u])
            .map(|u| color[u]);
        color[v] = if clash == Some(c1) { c2 } else { c1 };
    }

    debug_assert!(color.iter().all(|&c| c > 0), "palette must cover every vertex");
    Coloring::from_colors(color)
}
