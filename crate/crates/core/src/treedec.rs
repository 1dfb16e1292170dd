//! Tree decompositions: representation, coverage checking, exact optimisation
//! of two bag measures (largest bag size, largest independent set inside a
//! bag), and the lift of a decomposition to the line graph.
//!
//! The exact optimisers run a subset dynamic program over elimination
//! orderings. For the bag-size measure this is the classic formulation of
//! treewidth; for the bag-independence measure it is justified by three
//! facts: the bags produced by an elimination ordering are exactly the
//! cliques of the triangulation it induces, every decomposition can be
//! refined to one arising from an ordering whose bags are subsets of the
//! original bags, and both measures are monotone under shrinking a bag.

use crate::bits;
use crate::error::Error;
use crate::graph::{Graph, VertexId, MAX_VERTICES};
use crate::Result;

/// Default vertex-count cap for [`exact_treewidth`].
pub const DEFAULT_TREEWIDTH_CAP: u32 = 16;
/// Default vertex-count cap for [`exact_tree_alpha`].
pub const DEFAULT_TREE_ALPHA_CAP: u32 = 12;
/// Ceiling honoured even when a caller raises the bag-size cap.
pub const HARD_TREEWIDTH_CAP: u32 = 20;
/// Ceiling honoured even when a caller raises the bag-independence cap.
pub const HARD_TREE_ALPHA_CAP: u32 = 16;

/// A tree of vertex bags. Structural soundness (the tree is a tree, bags are
/// duplicate-free) is enforced at construction; whether it actually covers a
/// particular graph is a separate question answered by [`validate`].
///
/// [`validate`]: TreeDecomposition::validate
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// One sorted vertex list per tree node.
    bags: Vec<Vec<VertexId>>,
    /// Normalised `(low, high)` pairs of bag indices, sorted.
    tree_edges: Vec<(u32, u32)>,
}

/// Outcome of checking a decomposition against a graph: vertices hosted by
/// no bag, edges whose endpoints never share a bag, and vertices whose
/// hosting bags do not form a connected subtree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverageReport {
    pub missing_vertices: Vec<VertexId>,
    pub uncovered_edges: Vec<(VertexId, VertexId)>,
    pub scattered_vertices: Vec<VertexId>,
}

impl CoverageReport {
    pub fn passed(&self) -> bool {
        self.missing_vertices.is_empty()
            && self.uncovered_edges.is_empty()
            && self.scattered_vertices.is_empty()
    }
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<VertexId>>, tree_edges: Vec<(u32, u32)>) -> Result<TreeDecomposition> {
        let invalid = |msg: String| Err(Error::TreeDecomposition(msg));
        if bags.is_empty() {
            return invalid("a decomposition needs at least one bag".into());
        }
        if tree_edges.len() != bags.len() - 1 {
            return invalid(format!(
                "{} bags need {} tree edges, got {}",
                bags.len(),
                bags.len() - 1,
                tree_edges.len()
            ));
        }
        let node_count = bags.len() as u32;
        let mut edges = Vec::with_capacity(tree_edges.len());
        for &(a, b) in &tree_edges {
            if a >= node_count || b >= node_count {
                return invalid(format!("tree edge ({a}, {b}) names a missing bag"));
            }
            if a == b {
                return invalid(format!("tree edge at bag {a} is a self-loop"));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return invalid("duplicate tree edge".into());
        }
        // |edges| = |bags| - 1, so connectivity makes the edge set a tree.
        if bags.len() > 1 {
            let mut adjacent = vec![Vec::new(); bags.len()];
            for &(a, b) in &edges {
                adjacent[a as usize].push(b);
                adjacent[b as usize].push(a);
            }
            let mut seen = vec![false; bags.len()];
            let mut stack = vec![0u32];
            seen[0] = true;
            let mut reached = 1;
            while let Some(t) = stack.pop() {
                for &s in &adjacent[t as usize] {
                    if !seen[s as usize] {
                        seen[s as usize] = true;
                        reached += 1;
                        stack.push(s);
                    }
                }
            }
            if reached != bags.len() {
                return invalid("the decomposition tree is disconnected".into());
            }
        }
        let mut sorted_bags = bags;
        for (i, bag) in sorted_bags.iter_mut().enumerate() {
            bag.sort_unstable();
            if let Some(w) = bag.windows(2).find(|w| w[0] == w[1]) {
                return invalid(format!("bag {i} lists vertex {} twice", w[0]));
            }
            if let Some(&v) = bag.last() {
                if v as usize >= MAX_VERTICES {
                    return invalid(format!(
                        "bag {i} vertex {v} exceeds the supported range of {MAX_VERTICES}"
                    ));
                }
            }
        }
        Ok(TreeDecomposition {
            bags: sorted_bags,
            tree_edges: edges,
        })
    }

    pub fn bag_count(&self) -> usize {
        self.bags.len()
    }

    pub fn bags(&self) -> &[Vec<VertexId>] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(u32, u32)] {
        &self.tree_edges
    }

    /// Largest bag size minus one (0 for a decomposition of all-empty bags).
    pub fn width(&self) -> u32 {
        self.bags
            .iter()
            .map(|b| b.len() as u32)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Per-bag vertex masks, after checking every entry exists in `g`.
    fn bag_masks(&self, g: &Graph) -> Result<Vec<u128>> {
        let n = g.vertex_count();
        for (i, bag) in self.bags.iter().enumerate() {
            if let Some(&v) = bag.iter().find(|&&v| v as usize >= n) {
                return Err(Error::TreeDecomposition(format!(
                    "bag {i} names vertex {v}, but the graph has {n} vertices"
                )));
            }
        }
        Ok(self.bags.iter().map(|b| bits::mask_of(b)).collect())
    }

    /// Check the three coverage conditions against `g`; errors only on bags
    /// naming vertices the graph does not have.
    pub fn validate(&self, g: &Graph) -> Result<CoverageReport> {
        let masks = self.bag_masks(g)?;
        let mut report = CoverageReport::default();
        let mut hosted = 0u128;
        for &m in &masks {
            hosted |= m;
        }
        for v in 0..g.vertex_count() as u32 {
            if !bits::contains(hosted, v) {
                report.missing_vertices.push(v);
            }
        }
        for (u, v) in g.edges() {
            let both = bits::bit(u) | bits::bit(v);
            if !masks.iter().any(|&m| m & both == both) {
                report.uncovered_edges.push((u, v));
            }
        }
        let mut adjacent = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.tree_edges {
            adjacent[a as usize].push(b);
            adjacent[b as usize].push(a);
        }
        for v in 0..g.vertex_count() as u32 {
            let hosts: Vec<usize> = (0..self.bags.len())
                .filter(|&t| bits::contains(masks[t], v))
                .collect();
            if hosts.len() < 2 {
                continue;
            }
            let mut is_host = vec![false; self.bags.len()];
            for &h in &hosts {
                is_host[h] = true;
            }
            let mut seen = vec![false; self.bags.len()];
            let mut stack = vec![hosts[0] as u32];
            seen[hosts[0]] = true;
            let mut reached = 1;
            while let Some(t) = stack.pop() {
                for &s in &adjacent[t as usize] {
                    if !seen[s as usize] && is_host[s as usize] {
                        seen[s as usize] = true;
                        reached += 1;
                        stack.push(s);
                    }
                }
            }
            if reached != hosts.len() {
                report.scattered_vertices.push(v);
            }
        }
        Ok(report)
    }

    /// Largest independent set inside any bag, with the index of the first
    /// bag attaining it.
    pub fn alpha_of(&self, g: &Graph) -> Result<(u32, usize)> {
        let masks = self.bag_masks(g)?;
        let mut best = 0;
        let mut worst_bag = 0;
        for (i, &m) in masks.iter().enumerate() {
            let a = if m == 0 {
                0
            } else {
                g.independence_number(Some(m))
            };
            if a > best {
                best = a;
                worst_bag = i;
            }
        }
        Ok((best, worst_bag))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum BagMeasure {
    Size,
    Independence,
}

fn measure_bag(g: &Graph, bag: u128, measure: BagMeasure) -> u32 {
    match measure {
        BagMeasure::Size => bag.count_ones().saturating_sub(1),
        BagMeasure::Independence => g.independence_number(Some(bag)),
    }
}

/// The bag formed when `v` is eliminated after exactly the vertices in
/// `through`: `v` plus every vertex outside `through` reachable from `v`
/// along paths whose interior stays inside `through`.
fn bag_of(g: &Graph, v: u32, through: u128) -> u128 {
    let mut expanded = bits::bit(v);
    let mut frontier = bits::bit(v);
    let mut out = 0u128;
    while frontier != 0 {
        let mut next = 0u128;
        for u in bits::ones(frontier) {
            let nb = g.neighbors_mask(u);
            out |= nb & !through;
            next |= nb & through & !expanded;
        }
        expanded |= next;
        frontier = next;
    }
    (out | bits::bit(v)) & !through
}

/// Subset DP over elimination orderings: `f[s]` is the best achievable
/// maximum of the measure over the bags created while eliminating exactly
/// the vertices of `s` first.
fn optimise(g: &Graph, measure: BagMeasure, cap: u32) -> Result<(u32, TreeDecomposition)> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::Precondition(
            "cannot decompose a graph with no vertices".into(),
        ));
    }
    if n as u32 > cap {
        return Err(Error::CapExceeded {
            size: n,
            cap: cap as usize,
        });
    }
    let full = bits::full(n);
    let size = 1usize << n;
    let mut f = vec![0u8; size];
    for m in 1..size {
        let mask = m as u128;
        let mut best = u8::MAX;
        for v in bits::ones(mask) {
            let prev = mask & !bits::bit(v);
            let cost = measure_bag(g, bag_of(g, v, prev), measure) as u8;
            best = best.min(f[prev as usize].max(cost));
        }
        f[m] = best;
    }
    let value = f[size - 1] as u32;

    // Rebuild one optimal ordering, latest-eliminated vertex first; ties go
    // to the smallest vertex id so the witness is deterministic.
    let mut order = vec![0u32; n];
    let mut live = full;
    for slot in (0..n).rev() {
        let target = f[live as usize];
        let v = bits::ones(live)
            .find(|&v| {
                let prev = live & !bits::bit(v);
                let cost = measure_bag(g, bag_of(g, v, prev), measure) as u8;
                f[prev as usize].max(cost) == target
            })
            .expect("the table minimum is attained by some vertex");
        order[slot] = v;
        live &= !bits::bit(v);
    }

    // Simulate the elimination, completing each created bag into a clique;
    // this reproduces the reachability bags the table was scored on.
    let mut adj: Vec<u128> = (0..n as u32).map(|v| g.neighbors_mask(v)).collect();
    let mut remaining = full;
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v as usize] = i;
    }
    let mut bag_masks = Vec::with_capacity(n);
    for &v in &order {
        let others = adj[v as usize] & remaining & !bits::bit(v);
        bag_masks.push(others | bits::bit(v));
        for a in bits::ones(others) {
            adj[a as usize] |= others & !bits::bit(a);
        }
        remaining &= !bits::bit(v);
    }

    // Each bag hangs off the bag of its earliest-eliminated other member
    // (which must contain all of it); bags with no other member chain to the
    // next one just to keep the tree connected.
    let mut tree_edges = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let others = bag_masks[i] & !bits::bit(order[i]);
        let parent = bits::ones(others)
            .map(|w| position[w as usize])
            .min()
            .unwrap_or(i + 1);
        tree_edges.push((i as u32, parent as u32));
    }

    let td = TreeDecomposition::new(bag_masks.iter().map(|&m| bits::to_vec(m)).collect(), tree_edges)?;
    let coverage = td.validate(g)?;
    if !coverage.passed() {
        return Err(Error::Internal(
            "elimination produced a decomposition that does not cover the graph".into(),
        ));
    }
    let achieved = match measure {
        BagMeasure::Size => td.width(),
        BagMeasure::Independence => td.alpha_of(g)?.0,
    };
    if achieved != value {
        return Err(Error::Internal(format!(
            "rebuilt decomposition scores {achieved}, table says {value}"
        )));
    }
    Ok((value, td))
}

/// Exact treewidth with an optimal decomposition. Refuses graphs larger
/// than the cap (default [`DEFAULT_TREEWIDTH_CAP`], never above
/// [`HARD_TREEWIDTH_CAP`]).
pub fn exact_treewidth(g: &Graph, cap: Option<u32>) -> Result<(u32, TreeDecomposition)> {
    let cap = cap.unwrap_or(DEFAULT_TREEWIDTH_CAP).min(HARD_TREEWIDTH_CAP);
    optimise(g, BagMeasure::Size, cap)
}

/// Exact minimum over decompositions of the largest independent set inside
/// a bag, with an optimal decomposition. Refuses graphs larger than the cap
/// (default [`DEFAULT_TREE_ALPHA_CAP`], never above [`HARD_TREE_ALPHA_CAP`]).
pub fn exact_tree_alpha(g: &Graph, cap: Option<u32>) -> Result<(u32, TreeDecomposition)> {
    let cap = cap.unwrap_or(DEFAULT_TREE_ALPHA_CAP).min(HARD_TREE_ALPHA_CAP);
    optimise(g, BagMeasure::Independence, cap)
}

/// Lift a decomposition of `g` to one of `g.line_graph()`: every bag becomes
/// the set of edge ids touching it, over the same tree. Edges sharing an
/// endpoint land together in any bag hosting that endpoint, and the hosting
/// sets stay connected because each edge's set is the union of its two
/// endpoints' overlapping subtrees.
pub fn line_graph_td(g: &Graph, td: &TreeDecomposition) -> Result<TreeDecomposition> {
    let coverage = td.validate(g)?;
    if !coverage.passed() {
        return Err(Error::TreeDecomposition(
            "the input decomposition does not cover the graph".into(),
        ));
    }
    let line = g.line_graph()?;
    let edges = g.edges();
    let bags = td
        .bags()
        .iter()
        .map(|bag| {
            let mask = bits::mask_of(bag);
            edges
                .iter()
                .enumerate()
                .filter(|&(_, &(u, v))| bits::contains(mask, u) || bits::contains(mask, v))
                .map(|(i, _)| i as u32)
                .collect()
        })
        .collect();
    let lifted = TreeDecomposition::new(bags, td.tree_edges().to_vec())?;
    let check = lifted.validate(&line)?;
    if !check.passed() {
        return Err(Error::Internal(
            "lifted decomposition does not cover the line graph".into(),
        ));
    }
    Ok(lifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute;
    use crate::enumerate;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n as u32 - 1));
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn grid(rows: usize, cols: usize) -> Graph {
        let mut g = Graph::new(rows * cols).unwrap();
        let id = |r: usize, c: usize| (r * cols + c) as u32;
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    g.add_edge(id(r, c), id(r, c + 1)).unwrap();
                }
                if r + 1 < rows {
                    g.add_edge(id(r, c), id(r + 1, c)).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn bag_size_optimum_on_known_graphs() {
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]).unwrap();
        let cases = [
            (complete(4), 3),
            (cycle(5), 2),
            (path(5), 1),
            (star, 1),
            (grid(3, 3), 3),
            (two_triangles, 2),
            (Graph::new(1).unwrap(), 0),
        ];
        for (g, want) in cases {
            let (w, td) = exact_treewidth(&g, None).unwrap();
            assert_eq!(w, want, "graph {g:?}");
            assert!(td.validate(&g).unwrap().passed());
            assert_eq!(td.width(), want);
        }
    }

    #[test]
    fn bag_independence_optimum_on_known_graphs() {
        let cases = [
            (complete(5), 1),
            (cycle(5), 2),
            (cycle(7), 2),
            (path(5), 1),
            (Graph::new(1).unwrap(), 1),
        ];
        for (g, want) in cases {
            let (a, td) = exact_tree_alpha(&g, None).unwrap();
            assert_eq!(a, want, "graph {g:?}");
            assert!(td.validate(&g).unwrap().passed());
            assert_eq!(td.alpha_of(&g).unwrap().0, want);
        }
    }

    #[test]
    fn matches_factorial_oracles_on_small_connected_graphs() {
        for n in 1..=6 {
            for g in enumerate::connected_graphs(n) {
                let (w, _) = exact_treewidth(&g, None).unwrap();
                assert_eq!(w, brute::brute_treewidth(&g), "treewidth of {g:?}");
                if n <= 5 {
                    let (a, _) = exact_tree_alpha(&g, None).unwrap();
                    assert_eq!(a, brute::brute_tree_alpha(&g), "bag independence of {g:?}");
                }
            }
        }
    }

    #[test]
    fn coverage_report_flags_each_defect() {
        let p3 = path(3);
        let good = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]).unwrap();
        assert!(good.validate(&p3).unwrap().passed());

        let missing = TreeDecomposition::new(vec![vec![0, 1], vec![1]], vec![(0, 1)]).unwrap();
        let report = missing.validate(&p3).unwrap();
        assert_eq!(report.missing_vertices, vec![2]);
        assert_eq!(report.uncovered_edges, vec![(1, 2)]);
        assert!(report.scattered_vertices.is_empty());

        let scattered = TreeDecomposition::new(
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        let report = scattered.validate(&p3).unwrap();
        assert!(report.missing_vertices.is_empty());
        assert!(report.uncovered_edges.is_empty());
        assert_eq!(report.scattered_vertices, vec![0]);

        let ranged = TreeDecomposition::new(vec![vec![0, 5]], vec![]).unwrap();
        assert!(matches!(
            ranged.validate(&p3),
            Err(Error::TreeDecomposition(_))
        ));
    }

    #[test]
    fn construction_rejects_malformed_shapes() {
        let dup_vertex = TreeDecomposition::new(vec![vec![0, 0]], vec![]);
        assert!(matches!(dup_vertex, Err(Error::TreeDecomposition(_))));

        let wrong_count = TreeDecomposition::new(vec![vec![0], vec![1], vec![2]], vec![(0, 1)]);
        assert!(matches!(wrong_count, Err(Error::TreeDecomposition(_))));

        let loops = TreeDecomposition::new(vec![vec![0], vec![1]], vec![(1, 1)]);
        assert!(matches!(loops, Err(Error::TreeDecomposition(_))));

        let dup_edge =
            TreeDecomposition::new(vec![vec![0], vec![1], vec![2]], vec![(0, 1), (1, 0)]);
        assert!(matches!(dup_edge, Err(Error::TreeDecomposition(_))));

        let cyclic = TreeDecomposition::new(
            vec![vec![0], vec![1], vec![2], vec![3]],
            vec![(0, 1), (1, 2), (0, 2)],
        );
        assert!(matches!(cyclic, Err(Error::TreeDecomposition(_))));

        let out_of_range = TreeDecomposition::new(vec![vec![0], vec![1]], vec![(0, 5)]);
        assert!(matches!(out_of_range, Err(Error::TreeDecomposition(_))));

        assert!(matches!(
            TreeDecomposition::new(vec![], vec![]),
            Err(Error::TreeDecomposition(_))
        ));
    }

    #[test]
    fn caps_refuse_then_yield_when_raised() {
        let long = path(17);
        match exact_treewidth(&long, None) {
            Err(Error::CapExceeded { size, cap }) => {
                assert_eq!((size, cap), (17, 16));
            }
            other => panic!("expected a cap refusal, got {other:?}"),
        }
        let (w, _) = exact_treewidth(&long, Some(18)).unwrap();
        assert_eq!(w, 1);

        let mid = path(13);
        assert!(matches!(
            exact_tree_alpha(&mid, None),
            Err(Error::CapExceeded { .. })
        ));
        let (a, _) = exact_tree_alpha(&mid, Some(13)).unwrap();
        assert_eq!(a, 1);
    }

    #[test]
    fn line_graph_lift_covers_the_line_graph() {
        let c4 = cycle(4);
        let (_, td) = exact_treewidth(&c4, None).unwrap();
        let lifted = line_graph_td(&c4, &td).unwrap();
        assert_eq!(lifted.bag_count(), td.bag_count());
        let line = c4.line_graph().unwrap();
        assert!(lifted.validate(&line).unwrap().passed());

        let edgeless = Graph::new(3).unwrap();
        let trivial =
            TreeDecomposition::new(vec![vec![0], vec![1], vec![2]], vec![(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            line_graph_td(&edgeless, &trivial),
            Err(Error::EdgelessLineGraph)
        ));
    }

    #[test]
    fn alpha_of_reports_the_worst_bag() {
        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]).unwrap();
        let td = TreeDecomposition::new(
            vec![vec![0, 1, 2], vec![2, 3], vec![3, 4, 5]],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        assert!(td.validate(&two_triangles).unwrap().passed());
        assert_eq!(td.alpha_of(&two_triangles).unwrap(), (2, 1));
    }
}
