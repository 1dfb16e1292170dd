//! Exhaustive corpora of small graphs, one representative per isomorphism
//! class. Enumeration is by augmentation (grow a smaller graph by one vertex
//! or one edge) with deduplication through a canonical form; disconnected
//! corpora are assembled as multisets of connected parts, which is already
//! duplicate-free. The class counts are pinned against independently known
//! sequences in the tests, which cross-validates the enumerators and the
//! canonizer at the same time.

use std::collections::BTreeMap;

use crate::graph::Graph;

/// Canonical adjacency bitstring: the upper triangle of the adjacency matrix
/// in a canonical vertex order, packed row-major into a `u128`. Two graphs on
/// up to 16 vertices are isomorphic iff their forms are equal.
pub fn canonical_form(g: &Graph) -> u128 {
    let n = g.vertex_count();
    assert!(n <= 16, "canonical form supports at most 16 vertices");
    if n == 0 {
        return 0;
    }
    let mut colors = vec![0u32; n];
    refine(g, &mut colors);
    canon_rec(g, &colors)
}

/// Colour refinement: split classes by the multiset of neighbour colours
/// until stable. Class ids are dense and ordered by the sorted signatures,
/// which keeps them isomorphism-equivariant.
fn refine(g: &Graph, colors: &mut Vec<u32>) {
    let n = g.vertex_count();
    loop {
        let mut sigs: Vec<(u32, Vec<u32>)> = Vec::with_capacity(n);
        for v in 0..n as u32 {
            let mut nbr: Vec<u32> = g.neighbors(v).into_iter().map(|u| colors[u as usize]).collect();
            nbr.sort_unstable();
            sigs.push((colors[v as usize], nbr));
        }
        let mut uniq: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
        uniq.sort();
        uniq.dedup();
        let before = {
            let mut c = colors.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        if uniq.len() == before {
            return;
        }
        for v in 0..n {
            colors[v] = uniq.binary_search(&&sigs[v]).unwrap() as u32;
        }
    }
}

fn canon_rec(g: &Graph, colors: &[u32]) -> u128 {
    let n = g.vertex_count();
    // First class with two or more members, by colour id.
    let mut class_of: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        class_of.entry(c).or_default().push(v as u32);
    }
    let split = class_of.values().find(|vs| vs.len() > 1);
    match split {
        None => {
            // Discrete colouring: read the adjacency triangle off in colour
            // order. Colour ids need not be dense here, only distinct.
            let mut order: Vec<u32> = (0..n as u32).collect();
            order.sort_unstable_by_key(|&v| colors[v as usize]);
            let mut bits: u128 = 0;
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if g.has_edge(order[i], order[j]) {
                        bits |= 1u128 << k;
                    }
                    k += 1;
                }
            }
            bits
        }
        Some(members) => {
            let mut best: Option<u128> = None;
            for &v in members {
                // Individualize v ahead of its classmates, keeping every
                // other class's relative order, then re-refine.
                let mut child: Vec<u32> = colors.iter().map(|&c| 2 * c + 1).collect();
                child[v as usize] -= 1;
                refine(g, &mut child);
                let form = canon_rec(g, &child);
                best = Some(match best {
                    None => form,
                    Some(b) => b.min(form),
                });
            }
            best.unwrap()
        }
    }
}

/// All connected graphs on exactly `n` vertices (n ≤ 7 recommended), one per
/// isomorphism class, in canonical-form order.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n >= 1);
    if n == 1 {
        return vec![Graph::new(1).unwrap()];
    }
    let smaller = connected_graphs(n - 1);
    let mut reps: BTreeMap<u128, Graph> = BTreeMap::new();
    for h in &smaller {
        let mut edges = h.edges();
        let v = (n - 1) as u32;
        // Joining the new vertex to any non-empty subset keeps the graph
        // connected, and every connected graph arises this way from deleting
        // a non-cut vertex.
        for subset in 1u32..(1 << (n - 1)) {
            edges.truncate(h.edge_count());
            for u in 0..v {
                if subset >> u & 1 == 1 {
                    edges.push((u, v));
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            reps.entry(canonical_form(&g)).or_insert(g);
        }
    }
    reps.into_values().collect()
}

/// All connected graphs with exactly `m` edges (m ≤ 9 recommended) and no
/// isolated vertices, one per isomorphism class.
pub fn connected_graphs_with_edges(m: usize) -> Vec<Graph> {
    assert!(m >= 1);
    if m == 1 {
        return vec![Graph::from_edges(2, &[(0, 1)]).unwrap()];
    }
    let smaller = connected_graphs_with_edges(m - 1);
    let mut reps: BTreeMap<u128, Graph> = BTreeMap::new();
    for h in &smaller {
        let hn = h.vertex_count();
        let mut edges = h.edges();
        // Close a pair: removing a cycle edge of any connected graph leaves
        // it connected.
        for u in 0..hn as u32 {
            for v in u + 1..hn as u32 {
                if !h.has_edge(u, v) {
                    edges.push((u, v));
                    let g = Graph::from_edges(hn, &edges).unwrap();
                    reps.entry(canonical_form(&g)).or_insert(g);
                    edges.pop();
                }
            }
        }
        // Hang a pendant: removing a leaf edge of a tree leaves a smaller
        // connected graph, so trees arise here.
        for u in 0..hn as u32 {
            edges.push((u, hn as u32));
            let g = Graph::from_edges(hn + 1, &edges).unwrap();
            reps.entry(canonical_form(&g)).or_insert(g);
            edges.pop();
        }
    }
    reps.into_values().collect()
}

/// Multisets of parts drawn from indexed pools, in nondecreasing
/// (pool, index) order; each multiset is assembled into one graph.
fn assemble_multisets(
    pools: &[Vec<Graph>],
    weight_of_pool: impl Fn(usize) -> usize + Copy,
    total: usize,
) -> Vec<Graph> {
    let mut out = Vec::new();
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    fn rec(
        pools: &[Vec<Graph>],
        weight_of_pool: &impl Fn(usize) -> usize,
        remaining: usize,
        min_key: (usize, usize),
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Graph>,
    ) {
        if remaining == 0 {
            let mut g = Graph::new(0).unwrap();
            for &(p, i) in chosen.iter() {
                g = g.disjoint_union(&pools[p][i]).unwrap();
            }
            out.push(g);
            return;
        }
        for p in 0..pools.len() {
            let w = weight_of_pool(p);
            if w > remaining || w == 0 {
                continue;
            }
            for i in 0..pools[p].len() {
                if (p, i) < min_key {
                    continue;
                }
                chosen.push((p, i));
                rec(pools, weight_of_pool, remaining - w, (p, i), chosen, out);
                chosen.pop();
            }
        }
    }
    rec(pools, &weight_of_pool, total, (0, 0), &mut chosen, &mut out);
    out
}

/// All graphs on exactly `n` vertices (isolated vertices allowed), one per
/// isomorphism class, as multisets of connected parts.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pools: Vec<Vec<Graph>> = (1..=n).map(connected_graphs).collect();
    assemble_multisets(&pools, |p| p + 1, n)
}

/// All graphs with exactly `m` edges and no isolated vertices, one per
/// isomorphism class, as multisets of connected parts.
pub fn graphs_with_edges(m: usize) -> Vec<Graph> {
    let pools: Vec<Vec<Graph>> = (1..=m).map(connected_graphs_with_edges).collect();
    assemble_multisets(&pools, |p| p + 1, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_is_invariant_under_relabeling() {
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let c5_scrambled = Graph::from_edges(5, &[(2, 4), (4, 1), (1, 3), (3, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_form(&c5), canonical_form(&c5_scrambled));
    }

    #[test]
    fn canonical_form_separates_regular_twins() {
        // Both 2-regular on 6 vertices; refinement alone cannot tell them
        // apart, individualization must.
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_ne!(canonical_form(&c6), canonical_form(&two_triangles));
    }

    #[test]
    fn connected_counts_match_known_sequence() {
        let want = [1usize, 1, 2, 6, 21, 112];
        for (n, &w) in want.iter().enumerate() {
            assert_eq!(connected_graphs(n + 1).len(), w, "n = {}", n + 1);
        }
    }

    #[test]
    fn connected_count_n7() {
        assert_eq!(connected_graphs(7).len(), 853);
    }

    #[test]
    fn all_graph_counts_match_known_sequence() {
        let want = [1usize, 2, 4, 11, 34, 156];
        for (n, &w) in want.iter().enumerate() {
            assert_eq!(all_graphs(n + 1).len(), w, "n = {}", n + 1);
        }
    }

    #[test]
    fn all_graph_count_n7() {
        assert_eq!(all_graphs(7).len(), 1044);
    }

    #[test]
    fn connected_by_edge_counts_match_known_sequence() {
        let want = [1usize, 1, 3, 5, 12, 30, 79, 227];
        for (m, &w) in want.iter().enumerate() {
            assert_eq!(connected_graphs_with_edges(m + 1).len(), w, "m = {}", m + 1);
        }
    }

    #[test]
    fn connected_by_edge_count_m9() {
        assert_eq!(connected_graphs_with_edges(9).len(), 710);
    }

    #[test]
    fn edge_count_graphs_match_known_sequence() {
        let want = [1usize, 2, 5, 11, 26, 68, 177, 497];
        for (m, &w) in want.iter().enumerate() {
            assert_eq!(graphs_with_edges(m + 1).len(), w, "m = {}", m + 1);
        }
    }

    #[test]
    fn edge_count_graphs_m9() {
        assert_eq!(graphs_with_edges(9).len(), 1476);
    }

    #[test]
    fn every_enumerated_graph_is_connected_and_sized() {
        for g in connected_graphs(5) {
            assert_eq!(g.vertex_count(), 5);
            assert!(g.is_connected());
        }
        for g in graphs_with_edges(4) {
            assert_eq!(g.edge_count(), 4);
            assert!((0..g.vertex_count() as u32).all(|v| g.degree(v) > 0));
        }
    }
}
