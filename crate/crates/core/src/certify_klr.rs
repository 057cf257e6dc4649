//! Certifier for general three-block patterns `P(k, l, r)` with no block of
//! length one.
//!
//! Returns either a validated embedding or a proper coloring within
//! [`bound`]. After peeling length-`(k+r-2)` paths, the halo union splits
//! into four classes by anchor priority. Two of them are handled directly
//! over the host; the other two are the same shape seen from the reversed
//! digraph with the reversed pattern, so one scan engine serves both sides.
//! Level bands of the class forests, the class-pair cross edges and the
//! deep residual levels are scanned for arcs; any hit assembles an
//! embedding, and a clean scan pins the palette below the bound.

use std::collections::BTreeMap;

use crate::certificate::Certificate;
use crate::certify_k1l::{prefers_reverse, reverse_certificate};
use crate::classify::{classify_four, collect_anchors, AnchorArc, Direction, NeighborPartition};
use crate::digraph::{
    validate_coloring, validate_embedding, BlockPattern, Coloring, Digraph, PathEmbedding, VertexId,
};
use crate::error::{Error, Result};
use crate::forest::InducedForest;
use crate::peel::{cross_edge_audit, peel, Decomposition};

/// Case-dependent coloring bound for `P(k, l, r)`-free digraphs, with
/// `n - 1 = k + l + r`. Symmetric under swapping `k` and `r`.
pub fn bound(k: usize, l: usize, r: usize) -> Result<usize> {
    if k < 2 || l < 2 || r < 2 {
        return Err(Error::UnsupportedPattern(k, l, r));
    }
    let (k, r) = if k <= r { (k, r) } else { (r, k) };
    let total = k + l + r;
    Ok(if l <= k {
        2 * total + r
    } else if l <= r {
        2 * total + l + r - k
    } else {
        2 * (total + l) - k
    })
}

/// Entry point; reduces to `k <= r` by reversal.
pub fn certify_three_blocks(d: &Digraph, k: usize, l: usize, r: usize) -> Result<Certificate> {
    if k < 2 || l < 2 || r < 2 {
        return Err(Error::UnsupportedPattern(k, l, r));
    }
    let flip = k > r || (k == r && prefers_reverse(d));
    if flip {
        let cert = certify_normalized(&d.reverse(), r, l, k)?;
        Ok(reverse_certificate(cert))
    } else {
        certify_normalized(d, k, l, r)
    }
}

fn internal(msg: impl Into<String>) -> Error {
    Error::InternalConstructionError(msg.into())
}

/// One direction of the search: a host digraph, the pattern as seen from
/// that host, two classes with their final outforests, and anchors against
/// the host-oriented layer paths.
struct Side<'a> {
    host: &'a Digraph,
    first: usize,
    mid: usize,
    last: usize,
    layers: Vec<Vec<VertexId>>,
    anchors: BTreeMap<VertexId, Vec<AnchorArc>>,
    fa: InducedForest,
    fb: InducedForest,
    /// A-class threshold `max(first, mid) + 1`.
    ta: usize,
    in_a_deep: Vec<bool>,
    in_b_deep: Vec<bool>,
}

impl<'a> Side<'a> {
    fn build(
        host: &'a Digraph,
        (first, mid, last): (usize, usize, usize),
        layers: Vec<Vec<VertexId>>,
        a_class: &[VertexId],
        b_class: &[VertexId],
        anchors: BTreeMap<VertexId, Vec<AnchorArc>>,
    ) -> Side<'a> {
        let n = host.vertex_count();
        let fa = InducedForest::outforest(host, a_class);
        let fb = InducedForest::outforest(host, b_class);
        let ta = first.max(mid) + 1;
        let a_deep = fa.at_least(ta);
        let b_deep = fb.at_least(mid);
        let mut in_a_deep = vec![false; n];
        for v in a_deep {
            in_a_deep[v] = true;
        }
        let mut in_b_deep = vec![false; n];
        for v in b_deep {
            in_b_deep[v] = true;
        }
        Side { host, first, mid, last, layers, anchors, fa, fb, ta, in_a_deep, in_b_deep }
    }

    fn exit_anchor(&self, v: VertexId) -> Result<AnchorArc> {
        self.anchors[&v]
            .iter()
            .copied()
            .find(|a| a.direction == Direction::IntoPath && a.position <= self.first)
            .ok_or_else(|| internal(format!("A-class vertex {v} lacks an exit anchor")))
    }

    fn entry_anchor(&self, v: VertexId) -> Result<AnchorArc> {
        self.anchors[&v]
            .iter()
            .copied()
            .find(|a| a.direction == Direction::FromPath && a.position < self.first)
            .ok_or_else(|| internal(format!("B-class vertex {v} lacks an entry anchor")))
    }

    /// Positions `from..=to` (1-based) of a layer path.
    fn segment(&self, layer: usize, from: usize, to: usize) -> Vec<VertexId> {
        self.layers[layer][from - 1..=to - 1].to_vec()
    }

    /// Band arcs join two vertices of one deep class whose level gap is a
    /// positive multiple of `first + 1`.
    fn is_band_gap(&self, la: usize, lb: usize) -> bool {
        la != lb && la.abs_diff(lb).is_multiple_of(self.first + 1)
    }
}

/// `[p^steps(v), ..., v]`: root path tail in arc direction.
fn tail_into(f: &InducedForest, v: VertexId, steps: usize) -> Option<Vec<VertexId>> {
    let mut chain = f.chain_up(v, steps)?;
    chain.reverse();
    Some(chain)
}

// -- scans -----------------------------------------------------------------

fn scan_side(side: &Side) -> Result<Option<Vec<VertexId>>> {
    if let Some(seq) = scan_a_bands(side)? {
        return Ok(Some(seq));
    }
    if let Some(seq) = scan_b_bands(side)? {
        return Ok(Some(seq));
    }
    scan_cross_ab(side)
}

/// Arc inside one deep A band. The embedding runs a forest tail into the
/// deep endpoint, crosses the arc, climbs `mid` levels from the shallow
/// endpoint, and exits through that ancestor's anchor into the layer.
fn scan_a_bands(side: &Side) -> Result<Option<Vec<VertexId>>> {
    let (first, mid, last) = (side.first, side.mid, side.last);
    for &(x, y) in side.host.arcs() {
        if !side.in_a_deep[x] || !side.in_a_deep[y] {
            continue;
        }
        let (lx, ly) = (side.fa.level_of(x), side.fa.level_of(y));
        if !side.is_band_gap(lx, ly) {
            continue;
        }
        let seq = if lx < ly {
            // Arc points down the levels: it closes the first block at y.
            let mut seq =
                tail_into(&side.fa, y, first).ok_or_else(|| internal("A tail too short"))?;
            let climb = side.fa.chain_up(x, mid - 1).ok_or_else(|| internal("A climb too short"))?;
            let t = *climb.last().unwrap();
            let an = side.exit_anchor(t)?;
            seq.extend(climb);
            seq.extend(side.segment(an.layer, an.position, an.position + last - 1));
            seq
        } else {
            // Arc points up the levels; finality puts y on x's root path,
            // well above the segments used here.
            let mut seq =
                tail_into(&side.fa, x, first - 1).ok_or_else(|| internal("A tail too short"))?;
            let climb = side.fa.chain_up(y, mid).ok_or_else(|| internal("A climb too short"))?;
            let t = *climb.last().unwrap();
            let an = side.exit_anchor(t)?;
            seq.extend(climb);
            seq.extend(side.segment(an.layer, an.position, an.position + last - 1));
            seq
        };
        return Ok(Some(seq));
    }
    Ok(None)
}

/// Arc inside one deep B band. The embedding enters the shallow endpoint's
/// ancestor from the layer, descends, crosses the arc into the deep
/// endpoint's forest tail, and the layer suffix past the entry position
/// supplies the last block.
fn scan_b_bands(side: &Side) -> Result<Option<Vec<VertexId>>> {
    let (first, mid, last) = (side.first, side.mid, side.last);
    for &(x, y) in side.host.arcs() {
        if !side.in_b_deep[x] || !side.in_b_deep[y] {
            continue;
        }
        let (lx, ly) = (side.fb.level_of(x), side.fb.level_of(y));
        if !side.is_band_gap(lx, ly) {
            continue;
        }
        let seq = if lx < ly {
            let mut seq =
                tail_into(&side.fb, y, first).ok_or_else(|| internal("B tail too short"))?;
            let climb = side.fb.chain_up(x, mid - 2).ok_or_else(|| internal("B climb too short"))?;
            let z = *climb.last().unwrap();
            let an = side.entry_anchor(z)?;
            seq.extend(climb);
            seq.extend(side.segment(an.layer, an.position, an.position + last));
            seq
        } else {
            let mut seq =
                tail_into(&side.fb, x, first - 1).ok_or_else(|| internal("B tail too short"))?;
            let climb = side.fb.chain_up(y, mid - 1).ok_or_else(|| internal("B climb too short"))?;
            let z = *climb.last().unwrap();
            let an = side.entry_anchor(z)?;
            seq.extend(climb);
            seq.extend(side.segment(an.layer, an.position, an.position + last));
            seq
        };
        return Ok(Some(seq));
    }
    Ok(None)
}

/// Any arc joining deep A and deep B: forest tail into the A endpoint,
/// across the arc, down the B endpoint's ancestors, in from the layer.
fn scan_cross_ab(side: &Side) -> Result<Option<Vec<VertexId>>> {
    let (first, mid, last) = (side.first, side.mid, side.last);
    for &(x, y) in side.host.arcs() {
        if side.in_a_deep[x] && side.in_b_deep[y] {
            let mut seq =
                tail_into(&side.fa, x, first - 1).ok_or_else(|| internal("A tail too short"))?;
            let climb = side.fb.chain_up(y, mid - 1).ok_or_else(|| internal("B climb too short"))?;
            let z = *climb.last().unwrap();
            let an = side.entry_anchor(z)?;
            seq.extend(climb);
            seq.extend(side.segment(an.layer, an.position, an.position + last));
            return Ok(Some(seq));
        }
        if side.in_b_deep[x] && side.in_a_deep[y] {
            let mut seq =
                tail_into(&side.fa, y, first).ok_or_else(|| internal("A tail too short"))?;
            let climb = side.fb.chain_up(x, mid - 2).ok_or_else(|| internal("B climb too short"))?;
            let z = *climb.last().unwrap();
            let an = side.entry_anchor(z)?;
            seq.extend(climb);
            seq.extend(side.segment(an.layer, an.position, an.position + last));
            return Ok(Some(seq));
        }
    }
    Ok(None)
}

/// Any arc joining deep A or deep B with a residual vertex of forest level
/// above `first`: residual tail on one end, class forest on the other.
fn scan_residual(side: &Side, dec: &Decomposition) -> Result<Option<Vec<VertexId>>> {
    let (first, mid, last) = (side.first, side.mid, side.last);
    let res = &dec.residual_forest;
    let n = side.host.vertex_count();
    let mut in_res_deep = vec![false; n];
    for &v in &res.at_least(first + 1) {
        in_res_deep[v] = true;
    }
    for &(x, y) in side.host.arcs() {
        let class_to_res = (side.in_a_deep[x] || side.in_b_deep[x]) && in_res_deep[y];
        let res_to_class = in_res_deep[x] && (side.in_a_deep[y] || side.in_b_deep[y]);
        if !class_to_res && !res_to_class {
            continue;
        }
        let seq = if class_to_res {
            let (u, v) = (x, y);
            if side.in_a_deep[u] {
                let mut seq =
                    tail_into(res, v, first).ok_or_else(|| internal("residual tail too short"))?;
                let climb =
                    side.fa.chain_up(u, mid - 1).ok_or_else(|| internal("A climb too short"))?;
                let t = *climb.last().unwrap();
                let an = side.exit_anchor(t)?;
                seq.extend(climb);
                seq.extend(side.segment(an.layer, an.position, an.position + last - 1));
                seq
            } else {
                let mut seq =
                    tail_into(res, v, first).ok_or_else(|| internal("residual tail too short"))?;
                let climb =
                    side.fb.chain_up(u, mid - 2).ok_or_else(|| internal("B climb too short"))?;
                let z = *climb.last().unwrap();
                let an = side.entry_anchor(z)?;
                seq.extend(climb);
                seq.extend(side.segment(an.layer, an.position, an.position + last));
                seq
            }
        } else {
            let (v, u) = (x, y);
            if side.in_a_deep[u] {
                let mut seq = tail_into(res, v, first - 1)
                    .ok_or_else(|| internal("residual tail too short"))?;
                let climb =
                    side.fa.chain_up(u, mid).ok_or_else(|| internal("A climb too short"))?;
                let t = *climb.last().unwrap();
                let an = side.exit_anchor(t)?;
                seq.extend(climb);
                seq.extend(side.segment(an.layer, an.position, an.position + last - 1));
                seq
            } else {
                let mut seq = tail_into(res, v, first - 1)
                    .ok_or_else(|| internal("residual tail too short"))?;
                let climb =
                    side.fb.chain_up(u, mid - 1).ok_or_else(|| internal("B climb too short"))?;
                let z = *climb.last().unwrap();
                let an = side.entry_anchor(z)?;
                seq.extend(climb);
                seq.extend(side.segment(an.layer, an.position, an.position + last));
                seq
            }
        };
        return Ok(Some(seq));
    }
    Ok(None)
}

// -- post-scan checks -------------------------------------------------------

fn check_side(side: &Side) -> Result<()> {
    for &(x, y) in side.host.arcs() {
        if side.in_a_deep[x] && side.in_a_deep[y] {
            let (lx, ly) = (side.fa.level_of(x), side.fa.level_of(y));
            if lx == ly || side.is_band_gap(lx, ly) {
                return Err(internal(format!("A band arc ({x}, {y}) survives the scan")));
            }
        }
        if side.in_b_deep[x] && side.in_b_deep[y] {
            let (lx, ly) = (side.fb.level_of(x), side.fb.level_of(y));
            if lx == ly || side.is_band_gap(lx, ly) {
                return Err(internal(format!("B band arc ({x}, {y}) survives the scan")));
            }
        }
        if (side.in_a_deep[x] && side.in_b_deep[y]) || (side.in_b_deep[x] && side.in_a_deep[y]) {
            return Err(internal(format!("deep cross arc ({x}, {y}) survives the scan")));
        }
    }
    Ok(())
}

fn check_residual(side: &Side, dec: &Decomposition) -> Result<()> {
    let res = &dec.residual_forest;
    for &(x, y) in side.host.arcs() {
        let deep_x = side.in_a_deep[x] || side.in_b_deep[x];
        let deep_y = side.in_a_deep[y] || side.in_b_deep[y];
        if (deep_x && res.level_of(y) > side.first) || (deep_y && res.level_of(x) > side.first) {
            return Err(internal(format!("arc ({x}, {y}) joins a deep class to the deep residual")));
        }
    }
    Ok(())
}

// -- certifier --------------------------------------------------------------

fn certify_normalized(d: &Digraph, k: usize, l: usize, r: usize) -> Result<Certificate> {
    debug_assert!(2 <= k && k <= r && l >= 2);
    let dec = peel(d, k + r - 2);
    if !cross_edge_audit(d, &dec) {
        return Err(internal("peel output failed its own audit"));
    }
    let part = classify_four(d, &dec, k, r)?;

    let d_layers: Vec<Vec<VertexId>> = dec.layers.iter().map(|x| x.path.clone()).collect();
    let d_side = Side::build(d, (k, l, r), d_layers, &part.a, &part.b, part.anchors.clone());

    let e = d.reverse();
    let e_layers: Vec<Vec<VertexId>> = dec
        .layers
        .iter()
        .map(|x| {
            let mut p = x.path.clone();
            p.reverse();
            p
        })
        .collect();
    let mut mirror_members: Vec<VertexId> =
        part.h.iter().chain(part.c.iter()).copied().collect();
    mirror_members.sort_unstable();
    let e_anchors = collect_anchors(&e, &e_layers, &mirror_members);
    let e_side = Side::build(&e, (r, l, k), e_layers, &part.h, &part.c, e_anchors);

    let pattern = BlockPattern::new(k, l, r);
    let finish_path = |vertices: Vec<VertexId>| -> Result<Certificate> {
        let emb = PathEmbedding { pattern, vertices };
        if !validate_embedding(d, &emb) {
            return Err(internal(format!("assembled embedding failed validation: {:?}", emb.vertices)));
        }
        Ok(Certificate::Path(emb))
    };

    if let Some(seq) = scan_side(&d_side)? {
        return finish_path(seq);
    }
    if let Some(seq) = scan_residual(&d_side, &dec)? {
        return finish_path(seq);
    }
    if let Some(seq) = scan_side(&e_side)? {
        let mut seq = seq;
        seq.reverse();
        return finish_path(seq);
    }

    check_side(&d_side)?;
    check_residual(&d_side, &dec)?;
    check_side(&e_side)?;

    let coloring = assemble_palette(d, k, l, r, &dec, &part, &d_side, &e_side);
    let bound = bound(k, l, r)?;
    if !validate_coloring(d, &coloring) {
        return Err(internal("assembled coloring is not proper"));
    }
    if coloring.num_colors > bound {
        return Err(internal(format!("coloring uses {} colors, bound {}", coloring.num_colors, bound)));
    }
    Ok(Certificate::Colored { coloring, bound })
}

/// Layers and residual take `1..=k+r-1` with every class anchor position of
/// the direct side confined to `1..=k`. Deep A and deep B bands share
/// `k+1..=k+r-1` plus at most two overflow colors, legal because their band
/// slots never see each other or the deep residual levels after a clean
/// scan. Shallow class levels and the whole mirror side get fresh colors,
/// so they constrain nothing else.
#[allow(clippy::too_many_arguments)]
fn assemble_palette(
    d: &Digraph,
    k: usize,
    l: usize,
    r: usize,
    dec: &Decomposition,
    part: &NeighborPartition,
    d_side: &Side,
    e_side: &Side,
) -> Coloring {
    let n = d.vertex_count();
    let mut color = vec![0usize; n];

    for layer in &dec.layers {
        for (i, &v) in layer.path.iter().enumerate() {
            color[v] = i + 1;
        }
    }
    for &v in &dec.residual {
        color[v] = dec.residual_forest.level_of(v);
    }

    // Shared band palette for the direct side: slots overflow into fresh
    // colors only when k + 1 exceeds the r - 1 spare layer colors.
    let base = k + r - 1;
    let overflow = (k + 1).saturating_sub(r - 1);
    let band_color = |slot: usize| if slot < r - 1 { k + 1 + slot } else { base + 1 + slot - (r - 1) };
    let mut next = base + overflow;

    let ta = d_side.ta;
    let shallow_a = next;
    next += ta - 1;
    for &v in &part.a {
        let lvl = d_side.fa.level_of(v);
        color[v] = if lvl >= ta { band_color((lvl - ta) % (k + 1)) } else { shallow_a + lvl };
    }
    let shallow_b = next;
    next += l - 1;
    for &v in &part.b {
        let lvl = d_side.fb.level_of(v);
        color[v] = if lvl >= l { band_color((lvl - l) % (k + 1)) } else { shallow_b + lvl };
    }

    // Mirror side: its own band pool plus fresh shallow levels.
    let mirror_band = next;
    next += r + 1;
    let th = e_side.ta;
    let shallow_h = next;
    next += th - 1;
    for &v in &part.h {
        let lvl = e_side.fa.level_of(v);
        color[v] =
            if lvl >= th { mirror_band + 1 + (lvl - th) % (r + 1) } else { shallow_h + lvl };
    }
    let shallow_c = next;
    for &v in &part.c {
        let lvl = e_side.fb.level_of(v);
        color[v] =
            if lvl >= l { mirror_band + 1 + (lvl - l) % (r + 1) } else { shallow_c + lvl };
    }

    debug_assert!(color.iter().all(|&c| c > 0), "palette must cover every vertex");
    Coloring::from_colors(color)
}
