//! Independent brute-force oracles. Everything here is deliberately written
//! from the definitions, sharing no search code with the production
//! algorithms, so the two can check each other. Scales are tiny: ground sets
//! up to ~10 elements, graphs up to ~8 vertices.

use crate::bits;
use crate::cut::{CutKind, Ground};
use crate::graph::{Graph, VertexId};

/// Visit every unrooted subcubic tree whose leaves are exactly the elements
/// `0..k`, as `(tree_edges, one_side_mask_per_tree_edge)`. Trees are built by
/// repeatedly subdividing an edge and hanging the next leaf, which produces
/// each shape exactly once; there are 1, 1, 1, 3, 15, 105, ... of them
/// (double factorial of 2k-5).
///
/// Node ids: leaves are `0..k`, internal nodes `k..`.
pub fn enumerate_leaf_trees(k: usize, visit: &mut impl FnMut(&[(u32, u32)], &[u128])) {
    assert!(k >= 2, "trees need at least two leaves");
    assert!(k <= 10, "leaf-tree enumeration is capped at 10 elements");
    let mut edges: Vec<(u32, u32)> = vec![(0, 1)];
    grow(&mut edges, 2, k, k as u32, visit);
}

fn grow(
    edges: &mut Vec<(u32, u32)>,
    next_leaf: usize,
    k: usize,
    next_internal: u32,
    visit: &mut impl FnMut(&[(u32, u32)], &[u128]),
) {
    if next_leaf == k {
        let sides = side_masks(edges, k);
        visit(edges, &sides);
        return;
    }
    for i in 0..edges.len() {
        let (a, b) = edges[i];
        let x = next_internal;
        edges[i] = (a, x);
        edges.push((x, b));
        edges.push((x, next_leaf as u32));
        grow(edges, next_leaf + 1, k, next_internal + 1, visit);
        edges.pop();
        edges.pop();
        edges[i] = (a, b);
    }
}

/// For each tree edge, the set of leaves (= elements) on one side.
fn side_masks(edges: &[(u32, u32)], k: usize) -> Vec<u128> {
    let node_count = edges.len() + 1;
    let mut adj: Vec<Vec<(u32, usize)>> = vec![Vec::new(); node_count];
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj[a as usize].push((b, i));
        adj[b as usize].push((a, i));
    }
    // One DFS from node 0 computes, for every edge, the leaf set on the side
    // away from the root.
    let mut below = vec![0u128; node_count];
    let mut sides = vec![0u128; edges.len()];
    let mut order = Vec::with_capacity(node_count);
    let mut stack = vec![(0u32, u32::MAX)];
    let mut parent_edge = vec![usize::MAX; node_count];
    while let Some((v, parent)) = stack.pop() {
        order.push(v);
        for &(u, e) in &adj[v as usize] {
            if u != parent {
                parent_edge[u as usize] = e;
                stack.push((u, v));
            }
        }
    }
    for &v in order.iter().rev() {
        if (v as usize) < k {
            below[v as usize] |= 1u128 << v;
        }
        let e = parent_edge[v as usize];
        if e != usize::MAX {
            sides[e] = below[v as usize];
            let (a, b) = edges[e];
            let p = if a == v { b } else { a };
            below[p as usize] |= below[v as usize];
        }
    }
    sides
}

/// Cut value from the definition, no shared search code. `side` is a set of
/// elements (vertices, or edge indices for boundary size).
pub fn cut_value(g: &Graph, kind: CutKind, side: u128) -> u32 {
    let edges = g.edges();
    match kind {
        CutKind::Eta => {
            let mut left = 0u128;
            let mut right = 0u128;
            for (i, &(u, v)) in edges.iter().enumerate() {
                let m = bits::bit(u) | bits::bit(v);
                if side >> i & 1 == 1 {
                    left |= m;
                } else {
                    right |= m;
                }
            }
            (left & right).count_ones()
        }
        CutKind::Mm | CutKind::Mim | CutKind::Sim => {
            let crossing: Vec<(u32, u32)> = crossing_pairs(g, side);
            assert!(crossing.len() <= 20, "subset oracle is capped at 20 crossing pairs");
            let mut best = 0u32;
            // Subsets of crossing pairs, checked from the definition.
            for pick in 0u32..1 << crossing.len() {
                let chosen: Vec<(u32, u32)> =
                    (0..crossing.len()).filter(|i| pick >> i & 1 == 1).map(|i| crossing[i]).collect();
                if chosen.len() as u32 <= best {
                    continue;
                }
                if is_valid_cut_matching(g, kind, &chosen) {
                    best = chosen.len() as u32;
                }
            }
            best
        }
        CutKind::Rank => {
            let mut rows: Vec<u128> = bits::ones(side & g.all_vertices_mask())
                .map(|v| g.neighbors_mask(v) & !side)
                .collect();
            let mut rank = 0;
            for col in 0..g.vertex_count() as u32 {
                let Some(p) = (rank..rows.len()).find(|&r| bits::contains(rows[r], col)) else {
                    continue;
                };
                rows.swap(rank, p);
                let pivot = rows[rank];
                for r in rows.iter_mut().skip(rank + 1) {
                    if bits::contains(*r, col) {
                        *r ^= pivot;
                    }
                }
                rank += 1;
            }
            rank as u32
        }
    }
}

fn crossing_pairs(g: &Graph, side: u128) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for v in bits::ones(side & g.all_vertices_mask()) {
        for u in bits::ones(g.neighbors_mask(v) & !side) {
            out.push((v, u));
        }
    }
    out
}

fn is_valid_cut_matching(g: &Graph, kind: CutKind, chosen: &[(u32, u32)]) -> bool {
    for (i, &(a, b)) in chosen.iter().enumerate() {
        for &(c, d) in &chosen[i + 1..] {
            if a == c || b == d {
                return false;
            }
            let extra = match kind {
                CutKind::Mm => false,
                CutKind::Mim => g.has_edge(a, d) || g.has_edge(c, b),
                CutKind::Sim => {
                    g.has_edge(a, c) || g.has_edge(b, d) || g.has_edge(a, d) || g.has_edge(c, b)
                }
                _ => unreachable!(),
            };
            if extra {
                return false;
            }
        }
    }
    true
}

/// Ground elements of a graph for a cut kind: all vertices, or all edge
/// indices.
pub fn ground_size(g: &Graph, kind: CutKind) -> usize {
    match kind.ground() {
        Ground::Vertices => g.vertex_count(),
        Ground::Edges => g.edge_count(),
    }
}

/// Branch-width by exhausting every decomposition shape. Ground sets of size
/// ≤ 1 have width 0 by convention.
pub fn brute_branchwidth(g: &Graph, kind: CutKind) -> u32 {
    let k = ground_size(g, kind);
    if k <= 1 {
        return 0;
    }
    let mut best = u32::MAX;
    enumerate_leaf_trees(k, &mut |_edges, sides| {
        let mut wide = 0;
        for &s in sides {
            wide = wide.max(cut_value(g, kind, s));
            if wide >= best {
                return;
            }
        }
        best = best.min(wide);
    });
    best
}

/// Treewidth as the best elimination ordering, tried factorially.
pub fn brute_treewidth(g: &Graph) -> u32 {
    let n = g.vertex_count();
    assert!(n >= 1 && n <= 8, "factorial treewidth oracle is capped at 8 vertices");
    let mut order: Vec<VertexId> = (0..n as u32).collect();
    let mut best = u32::MAX;
    permute(&mut order, 0, &mut |perm| {
        best = best.min(elimination_cost(g, perm, |_g, bag| bag.count_ones().saturating_sub(1)));
    });
    best
}

/// Smallest possible maximum bag independence over elimination orderings.
pub fn brute_tree_alpha(g: &Graph) -> u32 {
    let n = g.vertex_count();
    assert!(n >= 1 && n <= 8, "factorial oracle is capped at 8 vertices");
    let mut order: Vec<VertexId> = (0..n as u32).collect();
    let mut best = u32::MAX;
    permute(&mut order, 0, &mut |perm| {
        best = best.min(elimination_cost(g, perm, |g, bag| alpha_set(g, bag)));
    });
    best
}

fn permute(items: &mut Vec<VertexId>, at: usize, visit: &mut impl FnMut(&[VertexId])) {
    if at == items.len() {
        visit(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, visit);
        items.swap(at, i);
    }
}

/// Eliminate vertices in order, filling neighborhoods as we go; cost of a
/// step is `measure` of the bag {v} ∪ N(v) among the remaining vertices,
/// and the total is the max step cost.
fn elimination_cost(g: &Graph, order: &[VertexId], measure: impl Fn(&Graph, u128) -> u32) -> u32 {
    let n = g.vertex_count();
    let mut adj: Vec<u128> = (0..n as u32).map(|v| g.neighbors_mask(v)).collect();
    let mut remaining = g.all_vertices_mask();
    let mut worst = 0;
    for &v in order {
        let nbrs = adj[v as usize] & remaining & !bits::bit(v);
        worst = worst.max(measure(g, nbrs | bits::bit(v)));
        remaining &= !bits::bit(v);
        for a in bits::ones(nbrs) {
            adj[a as usize] |= nbrs & !bits::bit(a);
        }
    }
    worst
}

/// Independence number of `G[mask]`, plain recursion from the definition.
pub fn alpha_set(g: &Graph, mask: u128) -> u32 {
    if mask == 0 {
        return 0;
    }
    let v = mask.trailing_zeros();
    let with = 1 + alpha_set(g, mask & !bits::bit(v) & !g.neighbors_mask(v));
    let without = alpha_set(g, mask & !bits::bit(v));
    with.max(without)
}

/// Edge contraction defined on explicit edge sets: merge `v_max` into
/// `v_min`, shift higher ids down, drop loops and parallels. Returns the
/// sorted edge list of the contracted graph.
pub fn contract_edge_oracle(g: &Graph, u: VertexId, v: VertexId) -> Vec<(u32, u32)> {
    assert!(g.has_edge(u, v));
    let keep = u.min(v);
    let gone = u.max(v);
    let map = |w: u32| {
        let w = if w == gone { keep } else { w };
        if w > gone {
            w - 1
        } else {
            w
        }
    };
    let mut out: Vec<(u32, u32)> = g
        .edges()
        .into_iter()
        .map(|(a, b)| {
            let (a, b) = (map(a), map(b));
            (a.min(b), a.max(b))
        })
        .filter(|&(a, b)| a != b)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree_count(k: usize) -> usize {
        let mut count = 0;
        enumerate_leaf_trees(k, &mut |_, _| count += 1);
        count
    }

    #[test]
    fn leaf_tree_counts_are_double_factorials() {
        assert_eq!(tree_count(2), 1);
        assert_eq!(tree_count(3), 1);
        assert_eq!(tree_count(4), 3);
        assert_eq!(tree_count(5), 15);
        assert_eq!(tree_count(6), 105);
        assert_eq!(tree_count(7), 945);
    }

    #[test]
    fn leaf_tree_sides_partition_the_leaves() {
        enumerate_leaf_trees(5, &mut |edges, sides| {
            assert_eq!(edges.len(), sides.len());
            assert_eq!(edges.len(), 2 * 5 - 3);
            for &s in sides {
                assert!(s != 0 && s != (1 << 5) - 1, "side {s:#b} is trivial");
                assert_eq!(s & !((1 << 5) - 1), 0);
            }
        });
    }

    #[test]
    fn boundary_cut_values_by_hand() {
        // Path a-b-c: the two edges share exactly vertex b.
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(cut_value(&p3, CutKind::Eta, 0b01), 1);
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        // Edges at index 0 = (0,1); the other five touch all four vertices.
        assert_eq!(cut_value(&k4, CutKind::Eta, 0b000001), 2);
    }

    #[test]
    fn matching_cut_values_by_hand() {
        // Path 0-1-2-3, side {1,2}: two crossing pairs that interfere via
        // the 1-2 edge only in the fully induced sense.
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let side = 0b0110;
        assert_eq!(cut_value(&p4, CutKind::Mm, side), 2);
        assert_eq!(cut_value(&p4, CutKind::Mim, side), 2);
        assert_eq!(cut_value(&p4, CutKind::Sim, side), 1);
        // Biclique side: rank collapses to 1, matching saturates.
        let k33 = Graph::from_edges(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)])
            .unwrap();
        assert_eq!(cut_value(&k33, CutKind::Rank, 0b000111), 1);
        assert_eq!(cut_value(&k33, CutKind::Mm, 0b000111), 3);
        assert_eq!(cut_value(&k33, CutKind::Mim, 0b000111), 1);
        assert_eq!(cut_value(&k33, CutKind::Sim, 0b000111), 1);
    }

    #[test]
    fn small_branchwidths_by_exhaustion() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(brute_branchwidth(&k3, CutKind::Eta), 2);
        // The only 3-leaf tree isolates the middle edge, whose boundary is
        // both interior vertices; width 1 needs a disjoint union of stars.
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(brute_branchwidth(&p4, CutKind::Eta), 2);
        assert_eq!(brute_branchwidth(&p4, CutKind::Sim), 1);
        assert_eq!(brute_branchwidth(&p4, CutKind::Mm), 1);
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(brute_branchwidth(&c5, CutKind::Sim), 1);
        assert_eq!(brute_branchwidth(&c5, CutKind::Mm), 2);
        assert_eq!(brute_branchwidth(&c5, CutKind::Rank), 2);
    }

    #[test]
    fn factorial_oracles_on_known_graphs() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(brute_treewidth(&k4), 3);
        assert_eq!(brute_tree_alpha(&k4), 1);
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(brute_treewidth(&c5), 2);
        assert_eq!(brute_tree_alpha(&c5), 2);
        let p5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(brute_treewidth(&p5), 1);
        assert_eq!(brute_tree_alpha(&p5), 1);
    }

    #[test]
    fn contraction_oracle_merges_and_shifts() {
        // Triangle with a tail: contract the tail edge.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        assert_eq!(contract_edge_oracle(&g, 2, 3), vec![(0, 1), (0, 2), (1, 2)]);
        // Contracting a triangle edge merges parallels.
        assert_eq!(contract_edge_oracle(&g, 0, 1), vec![(0, 1), (1, 2)]);
    }
}
