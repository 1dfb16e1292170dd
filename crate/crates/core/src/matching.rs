//! Matchings and induced matchings, with the cut-restricted variants used
//! by the width machinery. All searches are exact; sizes stay small enough
//! (cuts of graphs up to ~64 vertices) that no approximation is needed.

use crate::bits;
use crate::graph::{Graph, VertexId};

/// What a matching witness claims to be. Verification is relative to the
/// kind and, where present, the cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchingKind {
    /// Vertex-disjoint edges, nothing more.
    Plain,
    /// No interfering edge joins endpoints of two distinct matching edges.
    /// Without a cut the whole graph interferes; with a cut only crossing
    /// edges do (the bipartite cut-graph sense).
    Induced,
    /// Every matching edge crosses the cut and the two endpoint sides are
    /// each independent in the full graph.
    CrossingInduced,
}

#[derive(Clone, Debug)]
pub struct Matching {
    /// Matched pairs; with a cut each pair is oriented (cut side, far side).
    pub edges: Vec<(VertexId, VertexId)>,
    pub kind: MatchingKind,
    /// One side of the vertex bipartition, when the matching is relative to
    /// a cut.
    pub witness_cut: Option<Vec<VertexId>>,
}

impl Matching {
    pub fn size(&self) -> u32 {
        self.edges.len() as u32
    }

    /// Check every invariant the kind promises; returns a description of the
    /// first violation.
    pub fn verify(&self, g: &Graph) -> Result<(), String> {
        let cut_mask = self.witness_cut.as_ref().map(|side| bits::mask_of(side));
        let mut seen: u128 = 0;
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) {
                return Err(format!("pair {u}-{v} is not an edge"));
            }
            if bits::contains(seen, u) || bits::contains(seen, v) {
                return Err(format!("pair {u}-{v} reuses a matched vertex"));
            }
            seen |= bits::bit(u) | bits::bit(v);
            if let Some(x) = cut_mask {
                if self.kind != MatchingKind::Plain && !(bits::contains(x, u) && !bits::contains(x, v)) {
                    return Err(format!("pair {u}-{v} does not cross the cut as (inside, outside)"));
                }
            }
        }
        match self.kind {
            MatchingKind::Plain => Ok(()),
            MatchingKind::Induced => {
                for (i, &(a, b)) in self.edges.iter().enumerate() {
                    for &(c, d) in &self.edges[i + 1..] {
                        let interferes = match cut_mask {
                            // Only crossing edges interfere.
                            Some(_) => g.has_edge(a, d) || g.has_edge(c, b),
                            None => {
                                g.has_edge(a, c) || g.has_edge(a, d) || g.has_edge(b, c) || g.has_edge(b, d)
                            }
                        };
                        if interferes {
                            return Err(format!("pairs {a}-{b} and {c}-{d} are joined by an edge"));
                        }
                    }
                }
                Ok(())
            }
            MatchingKind::CrossingInduced => {
                if cut_mask.is_none() {
                    return Err("crossing-induced matching without a cut".into());
                }
                for (i, &(a, b)) in self.edges.iter().enumerate() {
                    for &(c, d) in &self.edges[i + 1..] {
                        if g.has_edge(a, c) || g.has_edge(a, d) || g.has_edge(b, c) || g.has_edge(b, d) {
                            return Err(format!("pairs {a}-{b} and {c}-{d} are joined by an edge"));
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

/// Exact maximum matching size, any graph. Branch on the lowest live
/// vertex: leave it unmatched or match it to each live neighbor.
fn matching_size(g: &Graph, mask: u128, have: u32, best: &mut u32) {
    if mask == 0 {
        *best = (*best).max(have);
        return;
    }
    if have + mask.count_ones() / 2 <= *best {
        return;
    }
    let v = mask.trailing_zeros();
    let nbrs = g.neighbors_mask(v) & mask;
    // Matched branches first: finds large matchings early for the bound.
    for u in bits::ones(nbrs) {
        matching_size(g, mask & !bits::bit(v) & !bits::bit(u), have + 1, best);
    }
    matching_size(g, mask & !bits::bit(v), have, best);
}

fn has_matching(g: &Graph, mask: u128, target: u32) -> bool {
    fn go(g: &Graph, mask: u128, have: u32, target: u32) -> bool {
        if have >= target {
            return true;
        }
        if have + mask.count_ones() / 2 < target {
            return false;
        }
        if mask == 0 {
            return false;
        }
        let v = mask.trailing_zeros();
        for u in bits::ones(g.neighbors_mask(v) & mask) {
            if go(g, mask & !bits::bit(v) & !bits::bit(u), have + 1, target) {
                return true;
            }
        }
        go(g, mask & !bits::bit(v), have, target)
    }
    go(g, mask, 0, target)
}

/// Maximum matching with a lexicographically smallest witness.
pub fn max_matching(g: &Graph) -> Matching {
    let all = g.all_vertices_mask();
    let mut size = 0;
    matching_size(g, all, 0, &mut size);

    let mut edges = Vec::new();
    let mut mask = all;
    let mut need = size;
    'outer: while need > 0 {
        for (u, v) in g.edges() {
            if bits::contains(mask, u) && bits::contains(mask, v) {
                let rest = mask & !bits::bit(u) & !bits::bit(v);
                if has_matching(g, rest, need - 1) {
                    edges.push((u, v));
                    mask = rest;
                    need -= 1;
                    continue 'outer;
                }
            }
        }
        unreachable!("witness extraction cannot fall short of the optimum");
    }
    Matching { edges, kind: MatchingKind::Plain, witness_cut: None }
}

/// Which notion of interference applies when a cut is given.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MimMode {
    /// Only crossing edges interfere (induced matching of the bipartite cut
    /// graph).
    BipartiteCut,
    /// Every edge of the graph interferes; both endpoint sides come out
    /// independent.
    FullGraph,
}

/// Candidate pair list plus pairwise conflicts, as a growable bitset matrix.
struct ConflictGraph {
    pairs: Vec<(VertexId, VertexId)>,
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl ConflictGraph {
    fn build(g: &Graph, cut: Option<u128>, mode: MimMode) -> ConflictGraph {
        let pairs: Vec<(VertexId, VertexId)> = match cut {
            Some(x) => {
                let mut out = Vec::new();
                for u in bits::ones(x & g.all_vertices_mask()) {
                    for v in bits::ones(g.neighbors_mask(u) & !x) {
                        out.push((u, v));
                    }
                }
                out.sort_unstable();
                out
            }
            None => g.edges(),
        };
        let n = pairs.len();
        let words = n.div_ceil(64);
        let mut rows = vec![vec![0u64; words]; n];
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = pairs[i];
                let (c, d) = pairs[j];
                let shares = a == c || a == d || b == c || b == d;
                let interferes = shares
                    || match (cut, mode) {
                        (Some(_), MimMode::BipartiteCut) => g.has_edge(a, d) || g.has_edge(c, b),
                        _ => g.has_edge(a, c) || g.has_edge(a, d) || g.has_edge(b, c) || g.has_edge(b, d),
                    };
                if interferes {
                    rows[i][j / 64] |= 1 << (j % 64);
                    rows[j][i / 64] |= 1 << (i % 64);
                }
            }
        }
        ConflictGraph { pairs, words, rows }
    }

    fn live_count(alive: &[u64]) -> u32 {
        alive.iter().map(|w| w.count_ones()).sum()
    }

    fn first_live(alive: &[u64]) -> Option<usize> {
        for (i, &w) in alive.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    fn remove(&self, alive: &mut [u64], idx: usize) {
        alive[idx / 64] &= !(1 << (idx % 64));
    }

    fn remove_conflicts(&self, alive: &mut [u64], idx: usize) {
        for (w, c) in alive.iter_mut().zip(&self.rows[idx]) {
            *w &= !c;
        }
    }

    fn initial_alive(&self) -> Vec<u64> {
        let mut alive = vec![u64::MAX; self.words];
        if self.words > 0 {
            let tail = self.pairs.len() % 64;
            if tail != 0 {
                alive[self.words - 1] = (1u64 << tail) - 1;
            }
        }
        alive
    }

    /// Decision search: can `need` pairwise-compatible pairs be chosen from
    /// `alive`? Candidates are tried in ascending index order and dropped
    /// from the pool afterwards, so each combination is visited once. This
    /// is output-sensitive: the work is bounded by the number of compatible
    /// sets up to the requested size, not by the candidate count.
    fn can_reach(&self, alive: &[u64], need: u32) -> bool {
        if need == 0 {
            return true;
        }
        if Self::live_count(alive) < need {
            return false;
        }
        let mut pool = alive.to_vec();
        while let Some(i) = Self::first_live(&pool) {
            let mut with = pool.clone();
            self.remove(&mut with, i);
            self.remove_conflicts(&mut with, i);
            if self.can_reach(&with, need - 1) {
                return true;
            }
            self.remove(&mut pool, i);
            if Self::live_count(&pool) < need {
                return false;
            }
        }
        false
    }

    /// Max compatible pair count, by deepening the decision search until it
    /// fails.
    fn mis_size(&self) -> u32 {
        let alive = self.initial_alive();
        let mut best = 0;
        while self.can_reach(&alive, best + 1) {
            best += 1;
        }
        best
    }
}

/// Size of the maximum induced matching, skipping witness extraction. Hot
/// path for the width evaluators.
pub(crate) fn induced_matching_size(g: &Graph, cut: Option<u128>, mode: MimMode) -> u32 {
    ConflictGraph::build(g, cut, mode).mis_size()
}

/// Maximum induced matching, optionally restricted to a cut.
///
/// * `cut = None`: induced matching of `g` itself (no edge of `g` joins two
///   matched pairs).
/// * `cut = Some(X)`, `BipartiteCut`: induced matching of the bipartite
///   graph of crossing edges; same-side adjacencies are ignored.
/// * `cut = Some(X)`, `FullGraph`: additionally no same-side interference,
///   so each endpoint side is independent in `g`.
///
/// The witness is the lexicographically smallest optimal set of pairs.
pub fn max_induced_matching(g: &Graph, cut: Option<&[VertexId]>, mode: MimMode) -> Matching {
    let cut_mask = cut.map(bits::mask_of);
    let conflicts = ConflictGraph::build(g, cut_mask, mode);
    let optimum = conflicts.mis_size();

    // Greedy-lex witness: commit the smallest pair that still completes.
    let mut alive = conflicts.initial_alive();
    let mut edges = Vec::new();
    let mut need = optimum;
    while need > 0 {
        let mut advanced = false;
        for idx in 0..conflicts.pairs.len() {
            if alive[idx / 64] >> (idx % 64) & 1 == 0 {
                continue;
            }
            let mut after = alive.clone();
            conflicts.remove(&mut after, idx);
            conflicts.remove_conflicts(&mut after, idx);
            // Only pairs after idx keep lexicographic order minimal.
            for j in 0..idx {
                conflicts.remove(&mut after, j);
            }
            if conflicts.can_reach(&after, need - 1) {
                edges.push(conflicts.pairs[idx]);
                alive = after;
                need -= 1;
                advanced = true;
                break;
            }
        }
        assert!(advanced, "witness extraction cannot fall short of the optimum");
    }

    let kind = match (cut_mask, mode) {
        (None, _) => MatchingKind::Induced,
        (Some(_), MimMode::BipartiteCut) => MatchingKind::Induced,
        (Some(_), MimMode::FullGraph) => MatchingKind::CrossingInduced,
    };
    Matching {
        edges,
        kind,
        witness_cut: cut.map(|c| {
            let mut c = c.to_vec();
            c.sort_unstable();
            c
        }),
    }
}

/// Maximum (not necessarily induced) matching of the bipartite cut graph,
/// by augmenting paths. Polynomial, no caps needed.
pub fn cut_matching_size(g: &Graph, x_mask: u128) -> u32 {
    let left: Vec<VertexId> = bits::to_vec(x_mask & g.all_vertices_mask());
    let n = g.vertex_count();
    let mut matched_right: Vec<Option<VertexId>> = vec![None; n];

    fn augment(
        g: &Graph,
        u: VertexId,
        x_mask: u128,
        visited: &mut u128,
        matched_right: &mut Vec<Option<VertexId>>,
    ) -> bool {
        for v in bits::ones(g.neighbors_mask(u) & !x_mask) {
            if bits::contains(*visited, v) {
                continue;
            }
            *visited |= bits::bit(v);
            let free = match matched_right[v as usize] {
                None => true,
                Some(w) => augment(g, w, x_mask, visited, matched_right),
            };
            if free {
                matched_right[v as usize] = Some(u);
                return true;
            }
        }
        false
    }

    let mut size = 0;
    for &u in &left {
        let mut visited = 0u128;
        if augment(g, u, x_mask, &mut visited, &mut matched_right) {
            size += 1;
        }
    }
    size
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
        edges.push((n as u32 - 1, 0));
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn plain_matching_examples() {
        let p7 = Graph::from_edges(7, &(0..6u32).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap();
        let m = max_matching(&p7);
        assert_eq!(m.size(), 3);
        m.verify(&p7).unwrap();
        // Three disjoint edges: matching is everything.
        let g = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        assert_eq!(max_matching(&g).size(), 3);
    }

    #[test]
    fn induced_matching_no_cut() {
        // kP_2 has induced matching k; C_6 has induced matching 2.
        let g = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        let m = max_induced_matching(&g, None, MimMode::FullGraph);
        assert_eq!(m.size(), 3);
        m.verify(&g).unwrap();

        let m = max_induced_matching(&cycle(6), None, MimMode::FullGraph);
        assert_eq!(m.size(), 2);
        assert_eq!(m.edges, vec![(0, 1), (3, 4)]);
    }

    #[test]
    fn cut_modes_agree_when_sides_stay_clear() {
        // C_6, cut {0,1,2}: the only crossing pairs are (2,3) and (0,5),
        // and no edge joins their endpoints, so both modes find 2.
        let g = cycle(6);
        let cut = [0u32, 1, 2];
        let bip = max_induced_matching(&g, Some(&cut), MimMode::BipartiteCut);
        let full = max_induced_matching(&g, Some(&cut), MimMode::FullGraph);
        assert_eq!(bip.size(), 2);
        assert_eq!(full.size(), 2);
        assert_eq!(bip.edges, vec![(0, 5), (2, 3)]);
        bip.verify(&g).unwrap();
        full.verify(&g).unwrap();
    }

    #[test]
    fn crossing_kind_requires_independent_sides() {
        // Path 0-1-2-3 with cut {1,2}: crossing edges (1,0) and (2,3), but
        // 1-2 is an edge, so the full-graph mode allows only one pair.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let full = max_induced_matching(&g, Some(&[1, 2]), MimMode::FullGraph);
        assert_eq!(full.size(), 1);
        let bip = max_induced_matching(&g, Some(&[1, 2]), MimMode::BipartiteCut);
        assert_eq!(bip.size(), 2);
    }

    #[test]
    fn cut_matching_via_augmenting_paths() {
        let g = cycle(6);
        // Cut {0, 2, 4}: crossing edges form C_6 itself, perfect matching 3.
        assert_eq!(cut_matching_size(&g, 0b010101), 3);
        assert_eq!(cut_matching_size(&g, 0b000111), 2);
        assert_eq!(cut_matching_size(&g, 0), 0);
    }

    #[test]
    fn verify_catches_violations() {
        let g = cycle(6);
        let bad = Matching {
            edges: vec![(0, 1), (1, 2)],
            kind: MatchingKind::Plain,
            witness_cut: None,
        };
        assert!(bad.verify(&g).is_err());
        let not_induced = Matching {
            edges: vec![(0, 1), (2, 3)],
            kind: MatchingKind::Induced,
            witness_cut: None,
        };
        assert!(not_induced.verify(&g).is_err());
    }
}
