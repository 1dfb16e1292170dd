//! Branch decompositions and the exact width solver.
//!
//! A branch decomposition of a ground set is an unrooted tree of maximum
//! degree three whose leaves are in bijection with the elements. Every tree
//! edge splits the elements in two; the width under a cut function is the
//! worst split, and the branch-width of a graph is the best achievable
//! width. Ground sets with fewer than two elements have width 0 by
//! convention (there are no tree edges to cut).
//!
//! The solver runs a subset dynamic program over bipartitions, component by
//! component: every cut function here evaluates to 0 across connected
//! components, so component trees can be bridged without affecting the
//! width, and the per-component cap is what limits feasibility.

use crate::bits;
use crate::cut::{CutFunction, CutKind, Ground};
use crate::error::Error;
use crate::graph::Graph;
use crate::Result;

/// Memory guard for the dense DP tables (two `u8` tables of `2^k`).
const HARD_ELEMENT_CAP: u32 = 24;

#[derive(Clone, Debug)]
pub struct BranchDecomposition {
    node_count: usize,
    /// Normalized (min, max), sorted lexicographically.
    tree_edges: Vec<(u32, u32)>,
    /// Element index -> leaf node id.
    element_leaf: Vec<u32>,
    ground: Ground,
}

impl BranchDecomposition {
    /// Build and validate: `tree_edges` must form a tree on `node_count`
    /// nodes with maximum degree three, and `element_leaf` must map the
    /// elements bijectively onto the nodes of degree at most one.
    pub fn new(
        node_count: usize,
        tree_edges: Vec<(u32, u32)>,
        element_leaf: Vec<u32>,
        ground: Ground,
    ) -> Result<Self> {
        let fail = |msg: String| Err(Error::BranchDecomposition(msg));
        let mut edges: Vec<(u32, u32)> = Vec::with_capacity(tree_edges.len());
        for (a, b) in tree_edges {
            if a == b {
                return fail(format!("self-loop at tree node {a}"));
            }
            if a as usize >= node_count || b as usize >= node_count {
                return fail(format!("tree edge {a}-{b} outside 0..{node_count}"));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return fail("duplicate tree edge".into());
        }
        if edges.len() != node_count.saturating_sub(1) {
            return fail(format!(
                "{} tree edges for {} nodes (a tree needs {})",
                edges.len(),
                node_count,
                node_count.saturating_sub(1)
            ));
        }
        let mut degree = vec![0u32; node_count];
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); node_count];
        for &(a, b) in &edges {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        if let Some(v) = degree.iter().position(|&d| d > 3) {
            return fail(format!("tree node {v} has degree {} > 3", degree[v]));
        }
        if node_count > 0 {
            // Edge count is right, so connectivity makes it a tree.
            let mut seen = vec![false; node_count];
            let mut stack = vec![0u32];
            seen[0] = true;
            let mut reached = 1;
            while let Some(v) = stack.pop() {
                for &u in &adj[v as usize] {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        reached += 1;
                        stack.push(u);
                    }
                }
            }
            if reached != node_count {
                return fail("tree is not connected".into());
            }
        }
        // Element sets are manipulated as u128 masks throughout.
        if element_leaf.len() > 128 {
            return fail(format!(
                "{} elements exceed the supported maximum of 128",
                element_leaf.len()
            ));
        }
        let mut mapped = vec![false; node_count];
        for (e, &node) in element_leaf.iter().enumerate() {
            if node as usize >= node_count {
                return fail(format!("element {e} mapped to missing node {node}"));
            }
            if mapped[node as usize] {
                return fail(format!("node {node} hosts two elements"));
            }
            mapped[node as usize] = true;
        }
        for v in 0..node_count {
            let is_leaf = degree[v] <= 1;
            if is_leaf && !mapped[v] {
                return fail(format!("leaf node {v} hosts no element"));
            }
            if !is_leaf && mapped[v] {
                return fail(format!("internal node {v} hosts an element"));
            }
        }
        Ok(BranchDecomposition { node_count, tree_edges: edges, element_leaf, ground })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn tree_edges(&self) -> &[(u32, u32)] {
        &self.tree_edges
    }

    pub fn element_count(&self) -> usize {
        self.element_leaf.len()
    }

    pub fn element_leaves(&self) -> &[u32] {
        &self.element_leaf
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn leaf_for_element(&self, element: u32) -> Result<u32> {
        self.element_leaf
            .get(element as usize)
            .copied()
            .ok_or(Error::ElementOutOfRange(element, self.element_leaf.len()))
    }

    fn adjacency(&self) -> Vec<Vec<(u32, usize)>> {
        let mut adj: Vec<Vec<(u32, usize)>> = vec![Vec::new(); self.node_count];
        for (i, &(a, b)) in self.tree_edges.iter().enumerate() {
            adj[a as usize].push((b, i));
            adj[b as usize].push((a, i));
        }
        adj
    }

    /// For each tree edge (in `tree_edges` order), the element set on the
    /// side of the edge's smaller-numbered endpoint.
    pub fn cut_side_masks(&self) -> Vec<u128> {
        let mut sides = vec![0u128; self.tree_edges.len()];
        if self.node_count == 0 {
            return sides;
        }
        let adj = self.adjacency();
        let mut element_at: Vec<Option<u32>> = vec![None; self.node_count];
        for (e, &node) in self.element_leaf.iter().enumerate() {
            element_at[node as usize] = Some(e as u32);
        }
        // One DFS from node 0; every edge's far side is the subtree below
        // its child endpoint.
        let mut parent_edge = vec![usize::MAX; self.node_count];
        let mut order = Vec::with_capacity(self.node_count);
        let mut stack = vec![(0u32, u32::MAX)];
        while let Some((v, parent)) = stack.pop() {
            order.push(v);
            for &(u, e) in &adj[v as usize] {
                if u != parent {
                    parent_edge[u as usize] = e;
                    stack.push((u, v));
                }
            }
        }
        let universe = bits::full(self.element_leaf.len());
        let mut below = vec![0u128; self.node_count];
        for &v in order.iter().rev() {
            if let Some(e) = element_at[v as usize] {
                below[v as usize] |= bits::bit(e);
            }
            let e = parent_edge[v as usize];
            if e != usize::MAX {
                let (a, b) = self.tree_edges[e];
                let parent = if a == v { b } else { a };
                sides[e] = if a.min(b) == v { below[v as usize] } else { universe & !below[v as usize] };
                below[parent as usize] |= below[v as usize];
            }
        }
        sides
    }

    /// Remove one element's leaf, cascading away any unmapped nodes left
    /// dangling. Element indices above `element` shift down by one.
    pub fn trim_leaf(&self, element: u32) -> Result<BranchDecomposition> {
        let start = self.leaf_for_element(element)?;
        let mut dead = vec![false; self.node_count];
        let mut degree = vec![0u32; self.node_count];
        let adj = self.adjacency();
        for &(a, b) in &self.tree_edges {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut mapped = vec![false; self.node_count];
        for (e, &node) in self.element_leaf.iter().enumerate() {
            mapped[node as usize] = e as u32 != element;
        }
        let mut frontier = vec![start];
        while let Some(v) = frontier.pop() {
            dead[v as usize] = true;
            for &(u, _) in &adj[v as usize] {
                if !dead[u as usize] {
                    degree[u as usize] -= 1;
                    if degree[u as usize] <= 1 && !mapped[u as usize] {
                        frontier.push(u);
                    }
                }
            }
        }
        let mut rename = vec![u32::MAX; self.node_count];
        let mut next = 0u32;
        for v in 0..self.node_count {
            if !dead[v] {
                rename[v] = next;
                next += 1;
            }
        }
        let edges: Vec<(u32, u32)> = self
            .tree_edges
            .iter()
            .filter(|&&(a, b)| !dead[a as usize] && !dead[b as usize])
            .map(|&(a, b)| (rename[a as usize], rename[b as usize]))
            .collect();
        let element_leaf: Vec<u32> = self
            .element_leaf
            .iter()
            .enumerate()
            .filter(|&(e, _)| e as u32 != element)
            .map(|(_, &node)| rename[node as usize])
            .collect();
        BranchDecomposition::new(next as usize, edges, element_leaf, self.ground)
    }

    /// Smooth every unmapped degree-2 node away, so all internal nodes have
    /// degree exactly three.
    pub fn contract_degree2(&self) -> BranchDecomposition {
        let mut edges = self.tree_edges.clone();
        let mut alive: Vec<bool> = vec![true; self.node_count];
        let mut mapped = vec![false; self.node_count];
        for &node in &self.element_leaf {
            mapped[node as usize] = true;
        }
        loop {
            let mut degree = vec![0u32; self.node_count];
            for &(a, b) in &edges {
                degree[a as usize] += 1;
                degree[b as usize] += 1;
            }
            let Some(v) = (0..self.node_count)
                .find(|&v| alive[v] && !mapped[v] && degree[v] == 2)
            else {
                break;
            };
            let nbrs: Vec<u32> = edges
                .iter()
                .filter_map(|&(a, b)| {
                    if a as usize == v {
                        Some(b)
                    } else if b as usize == v {
                        Some(a)
                    } else {
                        None
                    }
                })
                .collect();
            edges.retain(|&(a, b)| a as usize != v && b as usize != v);
            edges.push((nbrs[0].min(nbrs[1]), nbrs[0].max(nbrs[1])));
            alive[v] = false;
        }
        let mut rename = vec![u32::MAX; self.node_count];
        let mut next = 0u32;
        for v in 0..self.node_count {
            if alive[v] {
                rename[v] = next;
                next += 1;
            }
        }
        let edges: Vec<(u32, u32)> =
            edges.into_iter().map(|(a, b)| (rename[a as usize], rename[b as usize])).collect();
        let element_leaf: Vec<u32> =
            self.element_leaf.iter().map(|&node| rename[node as usize]).collect();
        BranchDecomposition::new(next as usize, edges, element_leaf, self.ground)
            .expect("smoothing preserves validity")
    }
}

/// Width of a decomposition under a cut function, with the per-edge values.
#[derive(Clone, Debug)]
pub struct WidthReport {
    pub kind: CutKind,
    pub value: u32,
    /// First tree edge attaining the width, if any edge exists.
    pub worst_edge: Option<(u32, u32)>,
    /// (tree edge, cut value), in tree-edge order.
    pub per_edge: Vec<((u32, u32), u32)>,
    pub decomposition: BranchDecomposition,
}

/// Evaluate a given decomposition exactly.
pub fn width_of(g: &Graph, bd: &BranchDecomposition, kind: CutKind) -> Result<WidthReport> {
    if bd.ground() != kind.ground() {
        return Err(Error::BranchDecomposition(format!(
            "{} needs a {} ground set, decomposition has a {} ground set",
            kind.name(),
            ground_name(kind.ground()),
            ground_name(bd.ground()),
        )));
    }
    let expected = match kind.ground() {
        Ground::Vertices => g.vertex_count(),
        Ground::Edges => g.edge_count(),
    };
    if bd.element_count() != expected {
        return Err(Error::BranchDecomposition(format!(
            "decomposition covers {} elements, graph has {}",
            bd.element_count(),
            expected
        )));
    }
    let f = CutFunction::new(kind, g);
    let mut per_edge = Vec::with_capacity(bd.tree_edges().len());
    let mut value = 0;
    let mut worst_edge = None;
    for (i, side) in bd.cut_side_masks().into_iter().enumerate() {
        let v = f.evaluate_mask(side);
        per_edge.push((bd.tree_edges()[i], v));
        if worst_edge.is_none() || v > value {
            value = v;
            worst_edge = Some(bd.tree_edges()[i]);
        }
    }
    Ok(WidthReport { kind, value, worst_edge, per_edge, decomposition: bd.clone() })
}

fn ground_name(g: Ground) -> &'static str {
    match g {
        Ground::Vertices => "vertex",
        Ground::Edges => "edge",
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Per-component element cap; `None` takes the cut kind's default.
    pub cap: Option<u32>,
    /// Stop a submask scan once the component lower bound is met. Never
    /// changes the value or the witness, only the work done.
    pub prune: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { cap: None, prune: true }
    }
}

/// Exact branch-width: optimal value plus an optimal decomposition as
/// witness. Refuses (rather than approximates) when a connected component's
/// ground set exceeds the cap.
pub fn solve_branchwidth(g: &Graph, kind: CutKind, opts: &SolveOptions) -> Result<WidthReport> {
    let f = CutFunction::new(kind, g);
    let groups = element_groups(g, kind);
    let cap = opts.cap.unwrap_or(kind.default_cap()).min(HARD_ELEMENT_CAP);
    for grp in &groups {
        if grp.len() as u32 > cap {
            return Err(Error::CapExceeded { size: grp.len(), cap: cap as usize });
        }
    }

    let mut value = 0u32;
    let mut forest = LocalTree::empty();
    for grp in &groups {
        let (tree, w) = solve_group(&f, grp, opts.prune);
        value = value.max(w);
        forest = merge_trees(forest, tree);
    }

    let mut element_leaf = vec![u32::MAX; f.element_count()];
    for &(element, node) in &forest.leaves {
        element_leaf[element as usize] = node;
    }
    let bd = BranchDecomposition::new(forest.node_count, forest.edges, element_leaf, kind.ground())?;
    let report = width_of(g, &bd, kind)?;
    if report.value != value {
        return Err(Error::Internal(format!(
            "solver value {} disagrees with witness width {}",
            value, report.value
        )));
    }
    Ok(report)
}

/// Ground-set elements per connected component; empty groups are dropped.
fn element_groups(g: &Graph, kind: CutKind) -> Vec<Vec<u32>> {
    let comps = g.components();
    match kind.ground() {
        Ground::Vertices => comps.iter().map(|&m| bits::to_vec(m)).collect(),
        Ground::Edges => {
            let edges = g.edges();
            comps
                .iter()
                .map(|&m| {
                    edges
                        .iter()
                        .enumerate()
                        .filter(|(_, &(u, _))| bits::contains(m, u))
                        .map(|(i, _)| i as u32)
                        .collect::<Vec<u32>>()
                })
                .filter(|v| !v.is_empty())
                .collect()
        }
    }
}

/// An under-construction decomposition: leaves carry global element ids.
struct LocalTree {
    node_count: usize,
    edges: Vec<(u32, u32)>,
    leaves: Vec<(u32, u32)>,
}

impl LocalTree {
    fn empty() -> LocalTree {
        LocalTree { node_count: 0, edges: Vec::new(), leaves: Vec::new() }
    }
}

/// Bridge two component trees. The bridge cut separates whole components,
/// where every cut function vanishes, so the width is unaffected. Mapped
/// leaves must keep degree 1, so single-node trees attach by an edge and
/// larger trees are tapped by subdividing their smallest tree edge.
fn merge_trees(a: LocalTree, b: LocalTree) -> LocalTree {
    if a.node_count == 0 {
        return b;
    }
    if b.node_count == 0 {
        return a;
    }
    let offset = a.node_count as u32;
    let b_count = b.node_count as u32;
    let mut node_count = a.node_count + b.node_count;
    let mut edges = a.edges;
    edges.extend(b.edges.into_iter().map(|(x, y)| (x + offset, y + offset)));
    let mut leaves = a.leaves;
    leaves.extend(b.leaves.into_iter().map(|(e, n)| (e, n + offset)));

    let ap = attach_point(&mut edges, &mut node_count, 0, offset);
    let bp = attach_point(&mut edges, &mut node_count, offset, offset + b_count);
    edges.push((ap.min(bp), ap.max(bp)));
    LocalTree { node_count, edges, leaves }
}

/// Attachment point for the tree occupying node ids `lo..hi`: the node
/// itself for a singleton, otherwise a fresh node subdividing the tree's
/// lexicographically smallest edge.
fn attach_point(edges: &mut Vec<(u32, u32)>, node_count: &mut usize, lo: u32, hi: u32) -> u32 {
    if hi - lo == 1 {
        return lo;
    }
    let (i, &(x, y)) = edges
        .iter()
        .enumerate()
        .filter(|&(_, &(x, _))| lo <= x && x < hi)
        .min_by_key(|&(_, &e)| e)
        .expect("non-singleton tree has an edge");
    let mid = *node_count as u32;
    *node_count += 1;
    edges.swap_remove(i);
    edges.push((x.min(mid), x.max(mid)));
    edges.push((y.min(mid), y.max(mid)));
    mid
}

/// Solve one component by subset DP over bipartitions.
fn solve_group(f: &CutFunction, elements: &[u32], prune: bool) -> (LocalTree, u32) {
    let k = elements.len();
    if k == 1 {
        return (
            LocalTree { node_count: 1, edges: Vec::new(), leaves: vec![(elements[0], 0)] },
            0,
        );
    }
    let global: Vec<u128> = elements.iter().map(|&e| bits::bit(e)).collect();
    let expand = |mask: u32| -> u128 {
        let mut out = 0u128;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            out |= global[i];
            m &= m - 1;
        }
        out
    };
    if k == 2 {
        let w = f.evaluate_mask(global[0]);
        return (
            LocalTree {
                node_count: 2,
                edges: vec![(0, 1)],
                leaves: vec![(elements[0], 0), (elements[1], 1)],
            },
            w,
        );
    }

    let full: u32 = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    let size = 1usize << k;
    let mut f_table = vec![0u8; size];
    let mut lb_table = vec![0u8; size];
    for m in 1..size as u32 {
        let v = f.evaluate_mask(expand(m));
        assert!(v <= u8::MAX as u32, "cut value {v} overflows the DP table");
        f_table[m as usize] = v as u8;
        let low = m & m.wrapping_neg();
        lb_table[m as usize] = lb_table[(m ^ low) as usize].max(f_table[low as usize]);
    }

    // g[m] = max(f(m), best achievable internal width for m).
    let mut g_table = vec![0u8; size];
    for m in 1..size as u32 {
        if m.count_ones() < 2 {
            g_table[m as usize] = f_table[m as usize];
            continue;
        }
        let low = m & m.wrapping_neg();
        let rest = m ^ low;
        let lb = lb_table[m as usize];
        let mut best = u8::MAX;
        let mut s = (rest - 1) & rest;
        loop {
            let a = (low | s) as usize;
            let b = (m ^ a as u32) as usize;
            let w = g_table[a].max(g_table[b]);
            if w < best {
                best = w;
                if prune && best <= lb {
                    break;
                }
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & rest;
        }
        g_table[m as usize] = best.max(f_table[m as usize]);
    }
    let width = g_table[full as usize] as u32;

    // Witness pass: re-derive the chosen split for the masks on the witness
    // path only, scanning every bipartition so the tie-break (smallest bit
    // pattern of the smaller side) is exact regardless of pruning.
    let mut tree = LocalTree { node_count: k, edges: Vec::new(), leaves: Vec::new() };
    for (i, &e) in elements.iter().enumerate() {
        tree.leaves.push((e, i as u32));
    }
    let (a, b) = best_split(&g_table, full);
    let ra = build_subtree(&g_table, a, &mut tree);
    let rb = build_subtree(&g_table, b, &mut tree);
    tree.edges.push((ra.min(rb), ra.max(rb)));
    (tree, width)
}

/// The minimizing bipartition of `m`, ties broken by the smaller side's bit
/// pattern (fewer elements first, then numerically smaller).
fn best_split(g_table: &[u8], m: u32) -> (u32, u32) {
    debug_assert!(m.count_ones() >= 2);
    let low = m & m.wrapping_neg();
    let rest = m ^ low;
    let mut best_w = u8::MAX;
    let mut best: Option<(u32, u32)> = None;
    let mut best_key = (u32::MAX, u32::MAX);
    let mut s = (rest - 1) & rest;
    loop {
        let a = low | s;
        let b = m ^ a;
        let w = g_table[a as usize].max(g_table[b as usize]);
        let small = match a.count_ones().cmp(&b.count_ones()) {
            std::cmp::Ordering::Less => a,
            std::cmp::Ordering::Greater => b,
            std::cmp::Ordering::Equal => a.min(b),
        };
        let key = (small.count_ones(), small);
        if w < best_w || (w == best_w && key < best_key) {
            best_w = w;
            best = Some((a, b));
            best_key = key;
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & rest;
    }
    best.expect("a mask with two elements has a bipartition")
}

/// Build the subtree for `mask`, returning its root; the root has at most
/// two children so attaching a parent edge keeps degree ≤ 3.
fn build_subtree(g_table: &[u8], mask: u32, tree: &mut LocalTree) -> u32 {
    if mask.count_ones() == 1 {
        return mask.trailing_zeros();
    }
    let node = tree.node_count as u32;
    tree.node_count += 1;
    let (a, b) = best_split(g_table, mask);
    let ra = build_subtree(g_table, a, tree);
    let rb = build_subtree(g_table, b, tree);
    tree.edges.push((ra.min(node), ra.max(node)));
    tree.edges.push((rb.min(node), rb.max(node)));
    node
}
