//! Core graph type: simple undirected graphs on dense 0-based vertex ids,
//! adjacency stored as one bitmask per vertex. Capacity is capped at 128
//! vertices, which is far beyond anything the exact solvers accept anyway.

use crate::bits;
use crate::error::Error;
use crate::Result;

pub type VertexId = u32;

pub const MAX_VERTICES: usize = 128;

/// Optional per-vertex semantic tag carried by generated families, so that
/// structure checks can recognise what a vertex was meant to be.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Plain,
    /// Grid-like coordinate (also used for rook's graphs and walls).
    Cell { row: u32, col: u32 },
    /// Layered constructions (the degeneracy counterexample).
    Layer(u32),
    /// Line-graph vertex remembering its originating edge.
    Origin { u: VertexId, v: VertexId },
    /// Caterpillar spine position (1-based).
    Spine(u32),
    /// Caterpillar pendant-leaf position (1-based).
    Pendant(u32),
    /// Two-sided products: side 0/1 plus index within the side.
    Copy { side: u32, index: u32 },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u128>,
    labels: Vec<Label>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.vertex_count(), self.edge_count(), self.edges())
    }
}

impl Graph {
    pub fn new(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n, MAX_VERTICES));
        }
        Ok(Graph {
            adj: vec![0; n],
            labels: vec![Label::Plain; n],
        })
    }

    /// Build from an edge list; convenience for tests and generators.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Graph> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if (v as usize) < self.adj.len() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v, self.adj.len()))
        }
    }

    /// Insert an edge. Idempotent on duplicates; rejects loops and
    /// out-of-range endpoints.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop);
        }
        self.adj[u as usize] |= bits::bit(v);
        self.adj[v as usize] |= bits::bit(u);
        Ok(())
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        (u as usize) < self.adj.len() && bits::contains(self.adj[u as usize], v)
    }

    pub fn neighbors_mask(&self, v: VertexId) -> u128 {
        self.adj[v as usize]
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        bits::to_vec(self.adj[v as usize])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize].count_ones() as usize
    }

    /// Edges in canonical order: (u, v) with u < v, sorted lexicographically.
    /// This order defines edge indices wherever edges act as ground-set
    /// elements (line graphs, edge branch decompositions, file formats).
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.adj.len() as u32 {
            for v in bits::ones(self.adj[u as usize]) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn label(&self, v: VertexId) -> &Label {
        &self.labels[v as usize]
    }

    pub fn set_label(&mut self, v: VertexId, label: Label) {
        self.labels[v as usize] = label;
    }

    pub fn all_vertices_mask(&self) -> u128 {
        bits::full(self.adj.len())
    }

    /// Connected components as vertex masks, ordered by smallest member.
    pub fn components(&self) -> Vec<u128> {
        let mut seen: u128 = 0;
        let mut comps = Vec::new();
        for v in 0..self.adj.len() as u32 {
            if bits::contains(seen, v) {
                continue;
            }
            let mut comp = bits::bit(v);
            loop {
                let mut grown = comp;
                for u in bits::ones(comp) {
                    grown |= self.adj[u as usize];
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen |= comp;
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// BFS distances from `v`; unreachable vertices get `usize::MAX`.
    pub fn bfs_distances(&self, v: VertexId) -> Vec<usize> {
        let n = self.adj.len();
        let mut dist = vec![usize::MAX; n];
        dist[v as usize] = 0;
        let mut frontier = bits::bit(v);
        let mut seen = frontier;
        let mut d = 0;
        while frontier != 0 {
            d += 1;
            let mut next = 0u128;
            for u in bits::ones(frontier) {
                next |= self.adj[u as usize];
            }
            next &= !seen;
            for u in bits::ones(next) {
                dist[u as usize] = d;
            }
            seen |= next;
            frontier = next;
        }
        dist
    }

    /// Two-coloring if bipartite, as (side0, side1) masks covering all
    /// non-isolated and isolated vertices alike (isolated go to side0).
    pub fn bipartition(&self) -> Option<(u128, u128)> {
        let n = self.adj.len();
        let mut color = vec![u8::MAX; n];
        for start in 0..n as u32 {
            if color[start as usize] != u8::MAX {
                continue;
            }
            color[start as usize] = 0;
            let mut queue = vec![start];
            while let Some(u) = queue.pop() {
                for w in bits::ones(self.adj[u as usize]) {
                    if color[w as usize] == u8::MAX {
                        color[w as usize] = 1 - color[u as usize];
                        queue.push(w);
                    } else if color[w as usize] == color[u as usize] {
                        return None;
                    }
                }
            }
        }
        let mut side0 = 0u128;
        let mut side1 = 0u128;
        for v in 0..n as u32 {
            if color[v as usize] == 1 {
                side1 |= bits::bit(v);
            } else {
                side0 |= bits::bit(v);
            }
        }
        Some((side0, side1))
    }

    /// Induced subgraph on the masked vertices. Returns the subgraph and the
    /// map from new ids to the original ids (ascending, so relabeling is
    /// order-preserving).
    pub fn induced(&self, mask: u128) -> (Graph, Vec<VertexId>) {
        let keep = bits::to_vec(mask & self.all_vertices_mask());
        let mut g = Graph::new(keep.len()).expect("induced subgraph within capacity");
        for (i, &v) in keep.iter().enumerate() {
            g.labels[i] = self.labels[v as usize].clone();
            for (j, &w) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(v, w) {
                    g.add_edge(i as u32, j as u32).unwrap();
                }
            }
        }
        (g, keep)
    }

    /// Delete one vertex; remaining ids shift down past `v`.
    pub fn remove_vertex(&self, v: VertexId) -> Result<Graph> {
        self.check_vertex(v)?;
        Ok(self.induced(self.all_vertices_mask() & !bits::bit(v)).0)
    }

    /// Contract the edge `uv`: the merged vertex takes the slot of
    /// `min(u, v)`, the slot of `max(u, v)` disappears and higher ids shift
    /// down by one. Parallel edges collapse (simple graph).
    pub fn contract_edge(&self, u: VertexId, v: VertexId) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
        let (lo, hi) = (u.min(v), u.max(v));
        let n = self.adj.len();
        let remap = |x: VertexId| -> VertexId {
            if x == hi {
                lo
            } else if x > hi {
                x - 1
            } else {
                x
            }
        };
        let mut g = Graph::new(n - 1)?;
        for x in 0..n as u32 {
            if x != hi {
                g.labels[remap(x) as usize] = self.labels[x as usize].clone();
            }
        }
        for (a, b) in self.edges() {
            let (a, b) = (remap(a), remap(b));
            if a != b {
                g.add_edge(a, b)?;
            }
        }
        Ok(g)
    }

    /// Line graph: one vertex per edge (canonical edge order), adjacent iff
    /// the edges share an endpoint. Labels record the originating edge.
    pub fn line_graph(&self) -> Result<Graph> {
        let edges = self.edges();
        if edges.is_empty() {
            return Err(Error::EdgelessLineGraph);
        }
        let mut g = Graph::new(edges.len())?;
        for (i, &(u, v)) in edges.iter().enumerate() {
            g.labels[i] = Label::Origin { u, v };
            for (j, &(x, y)) in edges.iter().enumerate().skip(i + 1) {
                if u == x || u == y || v == x || v == y {
                    g.add_edge(i as u32, j as u32)?;
                }
            }
        }
        Ok(g)
    }

    /// The r-th power: same vertices, edges between distinct vertices at
    /// BFS distance <= r. Labels carry over.
    pub fn power(&self, r: u32) -> Result<Graph> {
        if r == 0 {
            return Err(Error::ZeroPower);
        }
        let n = self.adj.len();
        let mut g = self.clone();
        if r == 1 {
            return Ok(g);
        }
        for v in 0..n as u32 {
            let dist = self.bfs_distances(v);
            for (w, &d) in dist.iter().enumerate() {
                if w as u32 != v && d <= r as usize {
                    g.add_edge(v, w as u32)?;
                }
            }
        }
        Ok(g)
    }

    /// Disjoint union; `other`'s ids are shifted up by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let base = self.vertex_count();
        let mut g = Graph::new(base + other.vertex_count())?;
        g.labels[..base].clone_from_slice(&self.labels);
        for (i, l) in other.labels.iter().enumerate() {
            g.labels[base + i] = l.clone();
        }
        for (u, v) in self.edges() {
            g.add_edge(u, v)?;
        }
        for (u, v) in other.edges() {
            g.add_edge(u + base as u32, v + base as u32)?;
        }
        Ok(g)
    }

    /// Maximum independent set size within `within` (all vertices if None).
    pub fn independence_number(&self, within: Option<u128>) -> u32 {
        let mask = within.unwrap_or_else(|| self.all_vertices_mask()) & self.all_vertices_mask();
        let mut best = 0;
        self.mis_search(mask, 0, &mut best, u32::MAX);
        best
    }

    /// Decision form with early exit: is there an independent set of size
    /// >= `target` inside `within`?
    pub fn has_independent_set(&self, within: u128, target: u32) -> bool {
        if target == 0 {
            return true;
        }
        let mask = within & self.all_vertices_mask();
        let mut best = 0;
        self.mis_search(mask, 0, &mut best, target);
        best >= target
    }

    /// Branch-and-bound MIS. Stops early once `best >= stop_at`.
    fn mis_search(&self, mask: u128, have: u32, best: &mut u32, stop_at: u32) {
        if *best >= stop_at {
            return;
        }
        if have + (mask.count_ones()) <= *best {
            return;
        }
        if mask == 0 {
            *best = (*best).max(have);
            return;
        }
        // Pick the max-degree vertex (within mask) as pivot: either it is
        // excluded, or included and its closed neighborhood drops out.
        let mut pivot = 0;
        let mut pivot_deg = -1i32;
        for v in bits::ones(mask) {
            let d = (self.adj[v as usize] & mask).count_ones() as i32;
            if d > pivot_deg {
                pivot_deg = d;
                pivot = v;
            }
        }
        if pivot_deg == 0 {
            // Everything left is independent.
            *best = (*best).max(have + mask.count_ones());
            return;
        }
        self.mis_search(mask & !bits::bit(pivot) & !self.adj[pivot as usize], have + 1, best, stop_at);
        self.mis_search(mask & !bits::bit(pivot), have, best, stop_at);
    }

    /// Lexicographically smallest maximum independent set within `within`.
    pub fn max_independent_set(&self, within: Option<u128>) -> Vec<VertexId> {
        let mask = within.unwrap_or_else(|| self.all_vertices_mask()) & self.all_vertices_mask();
        let mut need = self.independence_number(Some(mask));
        let mut rest = mask;
        let mut out = Vec::new();
        while need > 0 {
            // Greedy-lex: take the smallest vertex that still allows
            // completing to the required size.
            for v in bits::to_vec(rest) {
                let after = rest & !bits::bit(v) & !self.adj[v as usize];
                if self.has_independent_set(after, need - 1) {
                    out.push(v);
                    rest = after;
                    need -= 1;
                    break;
                }
            }
        }
        out
    }

    /// Degeneracy: repeatedly remove a minimum-degree vertex (ties broken by
    /// smallest id). Returns the degeneracy and the removal order.
    pub fn degeneracy(&self) -> (u32, Vec<VertexId>) {
        let mut remaining = self.all_vertices_mask();
        let mut order = Vec::with_capacity(self.adj.len());
        let mut degen = 0;
        while remaining != 0 {
            let mut pick = u32::MAX;
            let mut pick_deg = u32::MAX;
            for v in bits::ones(remaining) {
                let d = (self.adj[v as usize] & remaining).count_ones();
                if d < pick_deg {
                    pick_deg = d;
                    pick = v;
                }
            }
            degen = degen.max(pick_deg);
            order.push(pick);
            remaining &= !bits::bit(pick);
        }
        (degen, order)
    }

    /// Smallest induced complete bipartite subgraph K_{a,b} with |X| = a,
    /// |Y| = b: X and Y independent, disjoint, and fully joined. Returns the
    /// lexicographically smallest witness (X sorted, then Y sorted) or None.
    pub fn find_induced_biclique(&self, a: u32, b: u32) -> Option<(Vec<VertexId>, Vec<VertexId>)> {
        let all = self.all_vertices_mask();
        let mut found: Option<(Vec<VertexId>, Vec<VertexId>)> = None;
        let mut x_side = Vec::new();
        self.biclique_search(all, 0, a, b, &mut x_side, &mut found);
        found
    }

    fn biclique_search(
        &self,
        candidates: u128,
        common: u128,
        remaining: u32,
        b: u32,
        x_side: &mut Vec<VertexId>,
        found: &mut Option<(Vec<VertexId>, Vec<VertexId>)>,
    ) {
        if found.is_some() {
            return;
        }
        if remaining == 0 {
            // X fixed and independent; need an independent b-set inside the
            // common neighborhood.
            let pool = common & !bits::mask_of(x_side);
            if self.has_independent_set(pool, b) {
                let y = self.lex_independent(pool, b);
                *found = Some((x_side.clone(), y));
            }
            return;
        }
        let start = x_side.last().map_or(0, |&v| v + 1);
        for v in bits::to_vec(candidates) {
            if v < start {
                continue;
            }
            let next_common = if x_side.is_empty() { self.adj[v as usize] } else { common & self.adj[v as usize] };
            if next_common.count_ones() < b {
                continue;
            }
            x_side.push(v);
            // X stays independent: later picks must avoid N(v).
            self.biclique_search(candidates & !bits::bit(v) & !self.adj[v as usize], next_common, remaining - 1, b, x_side, found);
            x_side.pop();
            if found.is_some() {
                return;
            }
        }
    }

    /// Lexicographically smallest independent set of exactly `k` vertices
    /// inside `pool` (caller guarantees one exists).
    fn lex_independent(&self, pool: u128, k: u32) -> Vec<VertexId> {
        let mut rest = pool;
        let mut need = k;
        let mut out = Vec::new();
        while need > 0 {
            for v in bits::to_vec(rest) {
                let after = rest & !bits::bit(v) & !self.adj[v as usize];
                if self.has_independent_set(after, need - 1) {
                    out.push(v);
                    rest = after;
                    need -= 1;
                    break;
                }
            }
        }
        out
    }
}
