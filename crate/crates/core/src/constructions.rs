//! Closed-form decompositions and transfers: the caterpillar-shaped branch
//! decomposition of rook's graphs, the width transfer to odd graph powers,
//! and extraction of large bipartite-cut induced matchings in line graphs
//! from high-degree cuts.

use std::collections::{BTreeMap, BTreeSet};

use crate::bits;
use crate::branch::{width_of, BranchDecomposition, WidthReport};
use crate::cut::{CutKind, Ground};
use crate::error::Error;
use crate::graph::{Graph, VertexId};
use crate::matching::{Matching, MatchingKind};
use crate::Result;

/// Caterpillar-shaped branch decomposition: the elements hang off a spine in
/// the given order, so the cut at spine position `i` separates exactly the
/// first `i + 1` elements of `order` from the rest, and each leaf edge cuts
/// off a single element.
pub fn caterpillar_bd(order: &[u32], ground: Ground) -> Result<BranchDecomposition> {
    let k = order.len();
    if k == 0 {
        return Err(Error::Precondition(
            "a decomposition needs at least one element".into(),
        ));
    }
    let mut seen = vec![false; k];
    for &e in order {
        if (e as usize) >= k || seen[e as usize] {
            return Err(Error::Precondition(
                "the element order must be a permutation of 0..count".into(),
            ));
        }
        seen[e as usize] = true;
    }
    if k == 1 {
        return BranchDecomposition::new(1, vec![], vec![0], ground);
    }
    let k32 = k as u32;
    let mut edges = Vec::with_capacity(2 * k - 1);
    let mut element_leaf = vec![0u32; k];
    for (i, &e) in order.iter().enumerate() {
        let i32_ = i as u32;
        element_leaf[e as usize] = i32_;
        edges.push((i32_, k32 + i32_));
        if i + 1 < k {
            edges.push((k32 + i32_, k32 + i32_ + 1));
        }
    }
    BranchDecomposition::new(2 * k, edges, element_leaf, ground)
}

/// Branch decomposition of the rook's graph on an `n`-by-`m` board (one
/// vertex per cell, edges within rows and columns) over its vertices.
///
/// Each row becomes a caterpillar; the rows are gathered into three nearly
/// equal groups, each a caterpillar of rows, joined at a hub. Every cut then
/// separates either a piece of one row, or a union of at most `ceil(n / 3)`
/// full rows, so the sim width of the decomposition is at most
/// `ceil(n / 3)` whenever `n <= m`.
pub fn rook_caterpillar_bd(n: u32, m: u32) -> Result<BranchDecomposition> {
    if n < 2 || m < 2 {
        return Err(Error::Precondition(format!(
            "the grouped row layout needs at least a 2x2 board (got {n}x{m})"
        )));
    }
    let cells = n as u64 * m as u64;
    if cells > 128 {
        return Err(Error::TooManyVertices(cells as usize, 128));
    }
    let (n, m) = (n as usize, m as usize);

    // One spine node + one leaf per step; only spine ends stay open.
    fn caterpillar(len: usize, next: &mut u32, edges: &mut Vec<(u32, u32)>) -> Vec<u32> {
        let mut spine_prev = None;
        let mut leaves = Vec::with_capacity(len);
        for _ in 0..len {
            let s = *next;
            let t = *next + 1;
            *next += 2;
            edges.push((s, t));
            if let Some(prev) = spine_prev {
                edges.push((prev, s));
            }
            spine_prev = Some(s);
            leaves.push(t);
        }
        leaves
    }

    let mut next = 0u32;
    let mut edges = Vec::new();
    let mut element_leaf = vec![0u32; n * m];

    // Per row: a head leaf followed by the row's cells.
    let mut row_head = Vec::with_capacity(n);
    for i in 0..n {
        let leaves = caterpillar(m + 1, &mut next, &mut edges);
        row_head.push(leaves[0]);
        for j in 0..m {
            element_leaf[i * m + j] = leaves[j + 1];
        }
    }

    // Per group: a port leaf followed by one link leaf per member row.
    let a = n.div_ceil(3);
    let b = (2 * n / 3).max(a);
    let mut group_port = Vec::new();
    for (lo, hi) in [(0, a), (a, b), (b, n)] {
        if lo == hi {
            continue;
        }
        let leaves = caterpillar(hi - lo + 1, &mut next, &mut edges);
        group_port.push(leaves[0]);
        for (offset, row) in (lo..hi).enumerate() {
            let (head, link) = (row_head[row], leaves[offset + 1]);
            edges.push((head.min(link), head.max(link)));
        }
    }

    let hub = next;
    next += 1;
    for &port in &group_port {
        edges.push((port.min(hub), port.max(hub)));
    }
    BranchDecomposition::new(next as usize, edges, element_leaf, Ground::Vertices)
}

/// Outcome of carrying a branch decomposition over to an odd power of the
/// graph: the same tree, evaluated on both graphs.
#[derive(Clone, Debug)]
pub struct PowerTransferReport {
    pub exponent: u32,
    pub base: WidthReport,
    pub powered: WidthReport,
    pub powered_graph: Graph,
}

/// Re-evaluates a vertex-ground branch decomposition of `g` on `g` raised to
/// an odd power `r`. No cut's sim value may grow (checked edge by edge), so
/// the unchanged tree witnesses that the powered graph's sim-width is at most
/// the original decomposition's width. Even powers are refused: they can
/// blow the width up and carry no such guarantee.
pub fn odd_power_transfer(
    g: &Graph,
    bd: &BranchDecomposition,
    r: u32,
) -> Result<PowerTransferReport> {
    if r == 0 {
        return Err(Error::ZeroPower);
    }
    if r % 2 == 0 {
        return Err(Error::EvenPower(r));
    }
    let powered_graph = g.power(r)?;
    let base = width_of(g, bd, CutKind::Sim)?;
    let powered = width_of(&powered_graph, bd, CutKind::Sim)?;
    for (&(edge, new), &(_, old)) in powered.per_edge.iter().zip(base.per_edge.iter()) {
        if new > old {
            return Err(Error::Internal(format!(
                "sim cut at tree edge {}-{} grew from {old} to {new} under an odd power",
                edge.0, edge.1
            )));
        }
    }
    Ok(PowerTransferReport {
        exponent: r,
        base,
        powered,
        powered_graph,
    })
}

/// A set of anchor vertices on a cut's boundary together with one neighbour
/// through each side of the cut, all pairwise disjoint. The incident edge
/// pairs `(left[i]-anchors[i], right[i]-anchors[i])` then form an induced
/// matching of the line graph across the cut.
#[derive(Clone, Debug)]
pub struct PerfectTriple {
    /// Boundary vertices chosen as anchors, ascending.
    pub anchors: Vec<VertexId>,
    /// For each anchor, its smallest neighbour through the cut side.
    pub left: Vec<VertexId>,
    /// For each anchor, its smallest neighbour through the far side.
    pub right: Vec<VertexId>,
}

impl PerfectTriple {
    pub fn size(&self) -> usize {
        self.anchors.len()
    }

    /// The anchor, left and right vertex sets must be aligned and pairwise
    /// disjoint; returns a description of the first violation.
    pub fn check(&self) -> std::result::Result<(), String> {
        if self.left.len() != self.anchors.len() || self.right.len() != self.anchors.len() {
            return Err("left/right sides not aligned with the anchors".into());
        }
        let d = bits::mask_of(&self.anchors);
        let l = bits::mask_of(&self.left);
        let r = bits::mask_of(&self.right);
        if self.anchors.len() != d.count_ones() as usize {
            return Err("anchors repeat a vertex".into());
        }
        if d & l != 0 || d & r != 0 || l & r != 0 {
            return Err("anchor, left and right sets overlap".into());
        }
        Ok(())
    }
}

/// From one cut of an edge-ground branch decomposition, extract `target`
/// boundary anchors whose cut-side and far-side edges form a bipartite-cut
/// induced matching of size `target` in the line graph.
///
/// The boundary — vertices with incident edges on both sides of the cut —
/// must hold at least `25 * target - 1` vertices. Under that supply a local
/// augmentation search always finishes: whenever no free anchor remains, one
/// of five exchange rules applies by counting and strictly grows the
/// selection. The returned matching pairs are oriented (cut-side edge,
/// far-side edge) and are verified against the line graph before returning.
pub fn perfect_triple_extract(
    g: &Graph,
    bd: &BranchDecomposition,
    tree_edge: (u32, u32),
    target: u32,
) -> Result<(PerfectTriple, Matching)> {
    if bd.ground() != Ground::Edges {
        return Err(Error::BranchDecomposition(
            "matching extraction needs a decomposition over the edge set".into(),
        ));
    }
    if bd.element_count() != g.edge_count() {
        return Err(Error::BranchDecomposition(format!(
            "decomposition has {} elements but the graph has {} edges",
            bd.element_count(),
            g.edge_count()
        )));
    }
    if target == 0 {
        return Err(Error::Precondition(
            "at least one pair must be requested".into(),
        ));
    }
    let want = (tree_edge.0.min(tree_edge.1), tree_edge.0.max(tree_edge.1));
    let position = bd
        .tree_edges()
        .iter()
        .position(|&e| e == want)
        .ok_or_else(|| {
            Error::BranchDecomposition(format!(
                "no tree edge {}-{} in the decomposition",
                want.0, want.1
            ))
        })?;
    let side = bd.cut_side_masks()[position];

    let edges = g.edges();
    let mut in_cut_side = 0u128;
    let mut in_far_side = 0u128;
    for (i, &(u, v)) in edges.iter().enumerate() {
        let pair = bits::bit(u) | bits::bit(v);
        if bits::contains(side, i as u32) {
            in_cut_side |= pair;
        } else {
            in_far_side |= pair;
        }
    }
    let mid = in_cut_side & in_far_side;
    let boundary = u64::from(mid.count_ones());
    let need = 25 * u64::from(target) - 1;
    if boundary < need {
        return Err(Error::Precondition(format!(
            "the cut touches {boundary} boundary vertices; extracting {target} pairs needs at least {need}"
        )));
    }

    // Smallest neighbour of each boundary vertex through either side.
    let mut left_of = vec![u32::MAX; g.vertex_count()];
    let mut right_of = vec![u32::MAX; g.vertex_count()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        let cut_side = bits::contains(side, i as u32);
        for (x, y) in [(u, v), (v, u)] {
            if bits::contains(mid, x) {
                let table = if cut_side {
                    &mut left_of
                } else {
                    &mut right_of
                };
                let entry = &mut table[x as usize];
                *entry = (*entry).min(y);
            }
        }
    }

    let mut anchors: BTreeSet<u32> = BTreeSet::new();
    while anchors.len() < target as usize {
        let before = anchors.len();
        let k = before;
        let d_mask = anchors.iter().fold(0u128, |acc, &d| acc | bits::bit(d));
        let l_mask = anchors
            .iter()
            .fold(0u128, |acc, &d| acc | bits::bit(left_of[d as usize]));
        let r_mask = anchors
            .iter()
            .fold(0u128, |acc, &d| acc | bits::bit(right_of[d as usize]));

        // Scan the unused boundary: take the smallest freely addable vertex,
        // otherwise sort each blocked vertex by what blocks it.
        let mut direct = None;
        let mut anchored_left = Vec::new(); // left neighbour is an anchor
        let mut anchored_right = Vec::new(); // right neighbour is an anchor
        let mut crossed_left = Vec::new(); // left neighbour serves a far side
        let mut crossed_right = Vec::new(); // right neighbour serves a cut side
        let mut doubly_blocked = Vec::new(); // both neighbours collide
        for m in bits::ones(mid & !d_mask) {
            if bits::contains(l_mask | r_mask, m) {
                continue; // already serving an anchor; at most 2k of these
            }
            let (lm, rm) = (left_of[m as usize], right_of[m as usize]);
            let l_bad = bits::contains(r_mask | d_mask, lm);
            let r_bad = bits::contains(l_mask | d_mask, rm);
            match (l_bad, r_bad) {
                (false, false) => {
                    direct = Some(m);
                    break;
                }
                (true, false) if bits::contains(d_mask, lm) => anchored_left.push(m),
                (true, false) => crossed_left.push(m),
                (false, true) if bits::contains(d_mask, rm) => anchored_right.push(m),
                (false, true) => crossed_right.push(m),
                (true, true) => doubly_blocked.push(m),
            }
        }

        if let Some(m) = direct {
            anchors.insert(m);
            continue;
        }
        if anchored_left.len() > 3 * k {
            reanchor_shared(&mut anchors, &anchored_left, &left_of, &right_of)?;
        } else if anchored_right.len() > 3 * k {
            reanchor_shared(&mut anchors, &anchored_right, &right_of, &left_of)?;
        } else if crossed_left.len() > 6 * k {
            reanchor_crossing(&mut anchors, &crossed_left, &left_of, &right_of)?;
        } else if crossed_right.len() > 6 * k {
            reanchor_crossing(&mut anchors, &crossed_right, &right_of, &left_of)?;
        } else if doubly_blocked.len() > 4 * k {
            reanchor_bipartition(&mut anchors, &doubly_blocked, &left_of, &right_of)?;
        } else {
            return Err(Error::Internal(
                "no exchange rule applies despite a large boundary".into(),
            ));
        }
        validate_selection(&anchors, &left_of, &right_of)?;
        if anchors.len() <= before {
            return Err(Error::Internal(
                "an exchange failed to grow the selection".into(),
            ));
        }
    }

    let anchors: Vec<u32> = anchors.into_iter().take(target as usize).collect();
    let left: Vec<u32> = anchors.iter().map(|&d| left_of[d as usize]).collect();
    let right: Vec<u32> = anchors.iter().map(|&d| right_of[d as usize]).collect();
    let triple = PerfectTriple {
        anchors,
        left,
        right,
    };
    triple.check().map_err(Error::Internal)?;

    let pairs = triple
        .anchors
        .iter()
        .zip(triple.left.iter().zip(&triple.right))
        .map(|(&d, (&l, &r))| Ok((edge_index(&edges, l, d)?, edge_index(&edges, r, d)?)))
        .collect::<Result<Vec<_>>>()?;
    let matching = Matching {
        edges: pairs,
        kind: MatchingKind::Induced,
        witness_cut: Some(bits::to_vec(side)),
    };
    matching
        .verify(&g.line_graph()?)
        .map_err(Error::Internal)?;
    Ok((triple, matching))
}

fn edge_index(edges: &[(u32, u32)], u: u32, v: u32) -> Result<u32> {
    let key = (u.min(v), u.max(v));
    edges.binary_search(&key).map(|i| i as u32).map_err(|_| {
        Error::Internal(format!("edge {}-{} vanished from the edge list", key.0, key.1))
    })
}

fn validate_selection(
    anchors: &BTreeSet<u32>,
    left_of: &[u32],
    right_of: &[u32],
) -> Result<()> {
    let mut d = 0u128;
    let mut l = 0u128;
    let mut r = 0u128;
    for &a in anchors {
        d |= bits::bit(a);
        l |= bits::bit(left_of[a as usize]);
        r |= bits::bit(right_of[a as usize]);
    }
    if d & l != 0 || d & r != 0 || l & r != 0 {
        return Err(Error::Internal(
            "the selection lost pairwise disjointness".into(),
        ));
    }
    Ok(())
}

/// More than `3k` candidates have their `blocked` neighbour sitting on an
/// anchor, so some single anchor blocks at least four of them. Trading that
/// anchor for two of its blockees grows the selection by one.
fn reanchor_shared(
    anchors: &mut BTreeSet<u32>,
    candidates: &[u32],
    blocked: &[u32],
    other: &[u32],
) -> Result<()> {
    let mut per_anchor: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &m in candidates {
        per_anchor.entry(blocked[m as usize]).or_default().push(m);
    }
    let (&dropped, shared) = per_anchor
        .iter()
        .find(|(_, ms)| ms.len() >= 4)
        .ok_or_else(|| Error::Internal("no anchor is shared by four candidates".into()))?;
    anchors.remove(&dropped);
    let first = shared[0];
    for &m in &shared[1..4] {
        // The pair must not feed each other's free side.
        if other[first as usize] != m && other[m as usize] != first {
            anchors.insert(first);
            anchors.insert(m);
            return Ok(());
        }
    }
    // Otherwise at least two of the later blockees point back at the first
    // one, which makes them compatible with each other.
    let back: Vec<u32> = shared[1..4]
        .iter()
        .copied()
        .filter(|&m| other[m as usize] == first)
        .collect();
    if back.len() < 2 {
        return Err(Error::Internal(
            "the shared-anchor fallback lacks a compatible pair".into(),
        ));
    }
    anchors.insert(back[0]);
    anchors.insert(back[1]);
    Ok(())
}

/// More than `6k` candidates have their `blocked` neighbour colliding with
/// the opposite side of some anchor. By counting, some collision vertex `c`
/// draws at least `6p + 1` candidates while only `p` anchors map onto it;
/// dropping those `p` anchors and inserting `p + 1` mutually compatible
/// candidates around `c` grows the selection by one.
fn reanchor_crossing(
    anchors: &mut BTreeSet<u32>,
    candidates: &[u32],
    blocked: &[u32],
    other: &[u32],
) -> Result<()> {
    let mut anchor_weight: BTreeMap<u32, usize> = BTreeMap::new();
    for &d in anchors.iter() {
        *anchor_weight.entry(other[d as usize]).or_default() += 1;
    }
    let mut drawn: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &m in candidates {
        drawn.entry(blocked[m as usize]).or_default().push(m);
    }
    let (&c, ms) = drawn
        .iter()
        .find(|(b, ms)| ms.len() >= 6 * anchor_weight.get(b).copied().unwrap_or(0) + 1)
        .ok_or_else(|| Error::Internal("no collision vertex is candidate-heavy".into()))?;
    let p = anchor_weight.get(&c).copied().unwrap_or(0);
    let window = &ms[..6 * p + 1];

    // Within the window, keep candidates that at most one other member
    // points at; at least half survive.
    let mut preimages: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &m in window {
        preimages.entry(other[m as usize]).or_default().push(m);
    }
    let calm: Vec<u32> = window
        .iter()
        .copied()
        .filter(|&m| preimages.get(&m).map_or(0, Vec::len) <= 1)
        .collect();
    if calm.len() < 3 * p + 1 {
        return Err(Error::Internal(
            "pruning the popular candidates removed too many".into(),
        ));
    }

    // Greedy sweep: taking m rules out m itself, the vertex it points at,
    // and the lone member pointing back at m — at most three per step.
    let mut avail: BTreeSet<u32> = calm.iter().copied().collect();
    let mut picked = Vec::new();
    while picked.len() < p + 1 {
        let &m = avail.iter().next().ok_or_else(|| {
            Error::Internal("ran out of candidates while rebuilding the selection".into())
        })?;
        picked.push(m);
        avail.remove(&m);
        avail.remove(&other[m as usize]);
        if let Some(&back) = preimages.get(&m).and_then(|v| v.first()) {
            avail.remove(&back);
        }
    }

    // Dropping every anchor that maps onto c frees it for the new picks.
    let stale: Vec<u32> = anchors
        .iter()
        .copied()
        .filter(|&d| other[d as usize] == c)
        .collect();
    for d in stale {
        anchors.remove(&d);
    }
    anchors.extend(picked);
    Ok(())
}

/// More than `4k` candidates are blocked on both neighbours. All their
/// neighbours lie inside the current selection's footprint, so the selection
/// is rebuilt outright: bipartition the blocking vertices so that most
/// candidates straddle the parts (local search), then keep the majority
/// orientation, whose members never collide with one another.
fn reanchor_bipartition(
    anchors: &mut BTreeSet<u32>,
    candidates: &[u32],
    left_of: &[u32],
    right_of: &[u32],
) -> Result<()> {
    let mut side: BTreeMap<u32, bool> = BTreeMap::new();
    for &m in candidates {
        side.entry(left_of[m as usize]).or_insert(false);
        side.entry(right_of[m as usize]).or_insert(false);
    }
    // Flip any vertex with more flat than straddling candidates; each flip
    // raises the straddle count, so this stops.
    loop {
        let mut flipped = false;
        let keys: Vec<u32> = side.keys().copied().collect();
        for v in keys {
            let mut straddling = 0u32;
            let mut flat = 0u32;
            for &m in candidates {
                let (l, r) = (left_of[m as usize], right_of[m as usize]);
                if l != v && r != v {
                    continue;
                }
                if side[&l] != side[&r] {
                    straddling += 1;
                } else {
                    flat += 1;
                }
            }
            if flat > straddling {
                let entry = side.get_mut(&v).unwrap();
                *entry = !*entry;
                flipped = true;
                break;
            }
        }
        if !flipped {
            break;
        }
    }
    let (false_left, true_left): (Vec<u32>, Vec<u32>) = candidates
        .iter()
        .copied()
        .filter(|&m| side[&left_of[m as usize]] != side[&right_of[m as usize]])
        .partition(|&m| !side[&left_of[m as usize]]);
    let majority = if false_left.len() >= true_left.len() {
        false_left
    } else {
        true_left
    };
    if majority.len() <= anchors.len() {
        return Err(Error::Internal("the rebuilt selection is no larger".into()));
    }
    anchors.clear();
    anchors.extend(majority);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::{solve_branchwidth, SolveOptions};
    use crate::generators::{generate, FamilySpec};

    fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n as u32 - 1));
        Graph::from_edges(n, &edges).unwrap()
    }

    /// A graph plus a caterpillar decomposition of its edges whose marked cut
    /// puts exactly `cut_side` on the near side.
    fn split_instance(
        n: usize,
        cut_side: &[(u32, u32)],
        far_side: &[(u32, u32)],
    ) -> (Graph, BranchDecomposition, (u32, u32)) {
        let all: Vec<(u32, u32)> = cut_side.iter().chain(far_side).copied().collect();
        let g = Graph::from_edges(n, &all).unwrap();
        let canon = g.edges();
        let idx = |&(u, v): &(u32, u32)| {
            canon
                .binary_search(&(u.min(v), u.max(v)))
                .expect("listed edge") as u32
        };
        let mut order: Vec<u32> = cut_side.iter().map(idx).collect();
        order.extend(far_side.iter().map(idx));
        let bd = caterpillar_bd(&order, Ground::Edges).unwrap();
        let k = canon.len() as u32;
        let split = cut_side.len() as u32;
        (g, bd, (k + split - 1, k + split))
    }

    /// An even cycle split into its alternating halves, so every vertex sits
    /// on the cut boundary.
    fn alternating_cycle(n: u32) -> (Graph, BranchDecomposition, (u32, u32)) {
        let evens: Vec<(u32, u32)> = (0..n).step_by(2).map(|j| (j, (j + 1) % n)).collect();
        let odds: Vec<(u32, u32)> = (1..n).step_by(2).map(|j| (j, (j + 1) % n)).collect();
        split_instance(n as usize, &evens, &odds)
    }

    #[test]
    fn caterpillar_cuts_are_prefixes() {
        let bd = caterpillar_bd(&[2, 0, 1], Ground::Vertices).unwrap();
        assert_eq!(bd.node_count(), 6);
        assert_eq!(
            bd.tree_edges(),
            &[(0, 3), (1, 4), (2, 5), (3, 4), (4, 5)]
        );
        assert_eq!(
            bd.cut_side_masks(),
            vec![0b100, 0b001, 0b010, 0b100, 0b101]
        );

        assert!(caterpillar_bd(&[], Ground::Vertices).is_err());
        assert!(caterpillar_bd(&[0, 0], Ground::Vertices).is_err());
        assert!(caterpillar_bd(&[1], Ground::Vertices).is_err());
        assert!(caterpillar_bd(&[0], Ground::Edges).is_ok());
    }

    #[test]
    fn rook_decomposition_is_valid_and_narrow() {
        for (n, m, want) in [(2, 2, 1), (3, 3, 1), (2, 5, 1), (4, 4, 2)] {
            let bd = rook_caterpillar_bd(n, m).unwrap();
            let g = generate(&FamilySpec::new(
                crate::generators::Family::Rook,
                vec![n, m],
            ))
            .unwrap();
            let report = width_of(&g, &bd, CutKind::Sim).unwrap();
            assert_eq!(report.value, want, "rook {n}x{m}");
        }
        let bd = rook_caterpillar_bd(2, 2).unwrap();
        assert_eq!(bd.node_count(), 21);
    }

    #[test]
    fn degenerate_boards_are_refused() {
        assert!(matches!(
            rook_caterpillar_bd(1, 5),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            rook_caterpillar_bd(5, 1),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            rook_caterpillar_bd(12, 11),
            Err(Error::TooManyVertices(132, 128))
        ));
    }

    #[test]
    fn odd_powers_never_widen_a_cut() {
        let g = cycle(9);
        let base = solve_branchwidth(&g, CutKind::Sim, &SolveOptions::default()).unwrap();

        let report = odd_power_transfer(&g, &base.decomposition, 3).unwrap();
        assert_eq!(report.exponent, 3);
        assert!(report.powered.value <= report.base.value);
        assert_eq!(report.powered_graph.degree(0), 6);

        let same = odd_power_transfer(&g, &base.decomposition, 1).unwrap();
        assert_eq!(same.base.per_edge, same.powered.per_edge);

        assert!(matches!(
            odd_power_transfer(&g, &base.decomposition, 2),
            Err(Error::EvenPower(2))
        ));
        assert!(matches!(
            odd_power_transfer(&g, &base.decomposition, 0),
            Err(Error::ZeroPower)
        ));
    }

    #[test]
    fn thin_boundaries_are_refused() {
        let mut edges = Vec::new();
        for u in 0..7u32 {
            for v in u + 1..7 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(7, &edges).unwrap();
        let bd = caterpillar_bd(&(0..21).collect::<Vec<_>>(), Ground::Edges).unwrap();
        let err = perfect_triple_extract(&g, &bd, (30, 31), 1).unwrap_err();
        assert!(matches!(&err, Error::Precondition(msg) if msg.contains("24")), "{err}");
    }

    #[test]
    fn malformed_requests_are_refused() {
        let (g, bd, cut) = alternating_cycle(24);
        assert!(matches!(
            perfect_triple_extract(&g, &bd, cut, 0),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            perfect_triple_extract(&g, &bd, (999, 1000), 1),
            Err(Error::BranchDecomposition(_))
        ));
        let vertex_bd = caterpillar_bd(&(0..24).collect::<Vec<_>>(), Ground::Vertices).unwrap();
        assert!(matches!(
            perfect_triple_extract(&g, &vertex_bd, cut, 1),
            Err(Error::BranchDecomposition(_))
        ));
    }

    #[test]
    fn single_pair_from_an_alternating_cycle_cut() {
        let (g, bd, cut) = alternating_cycle(24);
        let (triple, matching) = perfect_triple_extract(&g, &bd, cut, 1).unwrap();
        assert_eq!(triple.anchors, vec![0]);
        assert_eq!(triple.left, vec![1]);
        assert_eq!(triple.right, vec![23]);
        assert_eq!(matching.size(), 1);
        assert_eq!(matching.kind, MatchingKind::Induced);
        assert_eq!(matching.witness_cut.as_ref().unwrap().len(), 12);
        matching.verify(&g.line_graph().unwrap()).unwrap();
    }

    #[test]
    fn two_pairs_from_a_long_cycle() {
        let (g, bd, cut) = alternating_cycle(50);
        let (triple, matching) = perfect_triple_extract(&g, &bd, cut, 2).unwrap();
        assert_eq!(triple.anchors, vec![0, 3]);
        assert_eq!(triple.left, vec![1, 2]);
        assert_eq!(triple.right, vec![49, 4]);
        matching.verify(&g.line_graph().unwrap()).unwrap();
    }

    #[test]
    fn shared_anchor_on_the_cut_side_is_traded_away() {
        // Every later candidate's cut-side neighbour is the first anchor.
        let near: Vec<(u32, u32)> = (2..=49).map(|m| (0, m)).collect();
        let mut far: Vec<(u32, u32)> = vec![(0, 1)];
        far.extend((2..=49).map(|m| (1, m)));
        let (g, bd, cut) = split_instance(50, &near, &far);
        let (triple, matching) = perfect_triple_extract(&g, &bd, cut, 2).unwrap();
        assert_eq!(triple.anchors, vec![3, 4]);
        assert_eq!(triple.left, vec![0, 0]);
        assert_eq!(triple.right, vec![1, 1]);
        matching.verify(&g.line_graph().unwrap()).unwrap();
    }

    #[test]
    fn shared_anchor_on_the_far_side_is_traded_away() {
        let mut near: Vec<(u32, u32)> = vec![(0, 1)];
        near.extend((2..=49).map(|m| (1, m)));
        let far: Vec<(u32, u32)> = (2..=49).map(|m| (0, m)).collect();
        let (g, bd, cut) = split_instance(50, &near, &far);
        let (triple, matching) = perfect_triple_extract(&g, &bd, cut, 2).unwrap();
        assert_eq!(triple.anchors, vec![3, 4]);
        assert_eq!(triple.left, vec![1, 1]);
        assert_eq!(triple.right, vec![0, 0]);
        matching.verify(&g.line_graph().unwrap()).unwrap();
    }

    #[test]
    fn crossing_collision_on_the_cut_side_rebuilds() {
        // Candidates' cut-side neighbour is vertex 2, which already serves
        // the far side of anchor 0.
        let mut near: Vec<(u32, u32)> = vec![(0, 1)];
        near.extend((3..=49).map(|m| (2, m)));
        let mut far: Vec<(u32, u32)> = vec![(0, 2)];
        far.extend((3..=49).map(|m| (m, m + 47)));
        let (g, bd, cut) = split_instance(97, &near, &far);
        let (triple, matching) = perfect_triple_extract(&g, &bd, cut, 2).unwrap();
        assert_eq!(triple.anchors, vec![3, 4]);
        assert_eq!(triple.left, vec![2, 2]);
        assert_eq!(triple.right, vec![50, 51]);
        matching.verify(&g.line_graph().unwrap()).unwrap();
    }

    #[test]
    fn crossing_collision_on_the_far_side_rebuilds() {
        let mut near: Vec<(u32, u32)> = vec![(0, 2)];
        near.extend((3..=49).map(|m| (m, m + 47)));
        let mut far: Vec<(u32, u32)> = vec![(0, 1)];
        far.extend((3..=49).map(|m| (2, m)));
        let (g, bd, cut) = split_instance(97, &near, &far);
        let (triple, matching) = perfect_triple_extract(&g, &bd, cut, 2).unwrap();
        assert_eq!(triple.anchors, vec![3, 4]);
        assert_eq!(triple.left, vec![50, 51]);
        assert_eq!(triple.right, vec![2, 2]);
        matching.verify(&g.line_graph().unwrap()).unwrap();
    }

    #[test]
    fn doubly_blocked_candidates_rebuild_from_scratch() {
        // Candidates collide on both sides: left on anchor 0, right on the
        // first anchor's left vertex 1.
        let mut near: Vec<(u32, u32)> = vec![(0, 1)];
        near.extend((3..=51).map(|m| (0, m)));
        let mut far: Vec<(u32, u32)> = vec![(0, 2)];
        far.extend((3..=51).map(|m| (1, m)));
        let (g, bd, cut) = split_instance(52, &near, &far);
        let (triple, matching) = perfect_triple_extract(&g, &bd, cut, 2).unwrap();
        assert_eq!(triple.anchors, vec![3, 4]);
        assert_eq!(triple.left, vec![0, 0]);
        assert_eq!(triple.right, vec![1, 1]);
        matching.verify(&g.line_graph().unwrap()).unwrap();
    }

    #[test]
    fn triple_check_catches_overlaps() {
        let good = PerfectTriple {
            anchors: vec![0, 3],
            left: vec![1, 2],
            right: vec![5, 4],
        };
        assert!(good.check().is_ok());
        let overlapping = PerfectTriple {
            anchors: vec![0, 3],
            left: vec![1, 3],
            right: vec![5, 4],
        };
        assert!(overlapping.check().is_err());
        let misaligned = PerfectTriple {
            anchors: vec![0],
            left: vec![],
            right: vec![2],
        };
        assert!(misaligned.check().is_err());
    }
}
