//! Turning a branch decomposition whose induced-matching cut width is small
//! into a tree decomposition whose bags have small independence number, for
//! graphs without large complete bipartite subgraphs, together with the two
//! witness extractors that certify the structures the analysis relies on.

use std::collections::{BTreeMap, BTreeSet};

use crate::bits;
use crate::branch::{width_of, BranchDecomposition};
use crate::cut::{CutKind, Ground};
use crate::error::Error;
use crate::graph::{Graph, VertexId};
use crate::matching::{Matching, MatchingKind};
use crate::treedec::TreeDecomposition;
use crate::Result;

/// Tuning and verification switches for [`compile`].
#[derive(Clone, Debug, Default)]
pub struct CompileOptions {
    /// Forbidden-biclique parameters; inferred from the graph when absent.
    pub n: Option<u32>,
    pub m: Option<u32>,
    /// Strict upper bound on the induced-matching width of the input
    /// decomposition; inferred from it when absent.
    pub k: Option<u32>,
    /// Verify the premises instead of trusting the caller; violations become
    /// warnings rather than errors.
    pub check_inputs: bool,
    /// Re-derive every candidate triple from scratch on each step instead of
    /// refreshing incrementally (slow; used to cross-check the refresh).
    pub full_recompute: bool,
}

/// Bag-growth counters for one [`compile`] run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompileStats {
    pub steps: usize,
    pub independent_growth_steps: usize,
    pub plain_growth_steps: usize,
    pub n: u32,
    pub m: u32,
    pub k: u32,
    /// Strict upper bound on the independence number of every output bag,
    /// valid when the premises hold: `6 * (2^(n+k-1) + m * k^(n+1))`.
    pub alpha_bound: u64,
}

#[derive(Clone, Debug)]
pub struct CompileResult {
    pub td: TreeDecomposition,
    pub stats: CompileStats,
    pub warnings: Vec<String>,
}

/// Builds a tree decomposition over the shape of `bd`'s tree whose bags have
/// bounded independence number.
///
/// The bound requires two premises: the graph has no induced complete
/// bipartite subgraph with parts of sizes `n` and `m`, and every cut of `bd`
/// has induced-matching size strictly below `k`. Parameters left out of
/// `opts` are inferred — `(n, m)` by searching for the smallest excluded
/// balanced biclique, `k` as one more than the decomposition's
/// induced-matching width. The returned decomposition is always structurally
/// valid; when the premises fail the independence guarantee is void, which
/// [`CompileOptions::check_inputs`] reports as warnings.
pub fn compile(g: &Graph, bd: &BranchDecomposition, opts: &CompileOptions) -> Result<CompileResult> {
    if bd.ground() != Ground::Vertices {
        return Err(Error::BranchDecomposition(
            "compilation needs a decomposition over the vertex set".into(),
        ));
    }
    if bd.element_count() != g.vertex_count() {
        return Err(Error::BranchDecomposition(format!(
            "decomposition covers {} elements but the graph has {} vertices",
            bd.element_count(),
            g.vertex_count()
        )));
    }

    let (n, m) = match (opts.n, opts.m) {
        (Some(n), Some(m)) => (n, m),
        (None, None) => infer_biclique_bound(g)?,
        _ => {
            return Err(Error::Precondition(
                "the biclique parameters must be given together or not at all".into(),
            ))
        }
    };
    if n == 0 || m == 0 {
        return Err(Error::Precondition(
            "the biclique parameters must be positive".into(),
        ));
    }
    let k = match opts.k {
        Some(0) => {
            return Err(Error::Precondition(
                "the width parameter must be positive".into(),
            ))
        }
        Some(k) => k,
        None => width_of(g, bd, CutKind::Mim)?.value + 1,
    };

    let mut warnings = Vec::new();
    if opts.check_inputs {
        let w = width_of(g, bd, CutKind::Mim)?.value;
        if w >= k {
            warnings.push(format!(
                "a cut of the decomposition has induced-matching size {w}, not below {k}; \
                 the independence bound is void"
            ));
        }
        if g.find_induced_biclique(n, m).is_some() {
            warnings.push(format!(
                "the graph contains an induced complete bipartite subgraph with parts of \
                 sizes {n} and {m}; the independence bound is void"
            ));
        }
    }

    let smooth = bd.contract_degree2();
    let mut state = CompilerState::new(g, &smooth, rich_threshold(m, k, n), opts.full_recompute);
    state.run()?;

    let bags: Vec<Vec<VertexId>> = state.bags.iter().map(|&mask| bits::to_vec(mask)).collect();
    let td = TreeDecomposition::new(bags, smooth.tree_edges().to_vec())?;
    let coverage = td.validate(g)?;
    if !coverage.passed() {
        return Err(Error::Internal(format!(
            "compiled decomposition failed validation: {coverage:?}"
        )));
    }

    let stats = CompileStats {
        steps: state.steps,
        independent_growth_steps: state.independent_steps,
        plain_growth_steps: state.plain_steps,
        n,
        m,
        k,
        alpha_bound: independence_bound(n, m, k),
    };
    Ok(CompileResult { td, stats, warnings })
}

/// Smallest `t` in `1..=4` such that the graph has no induced complete
/// bipartite subgraph with two parts of `t` vertices.
fn infer_biclique_bound(g: &Graph) -> Result<(u32, u32)> {
    for t in 1..=4 {
        if g.find_induced_biclique(t, t).is_none() {
            return Ok((t, t));
        }
    }
    Err(Error::Precondition(
        "the graph contains balanced complete bipartite subgraphs through size (4, 4); \
         pass the biclique parameters explicitly"
            .into(),
    ))
}

/// `m * k^n`: the independent-set size that marks a neighbourhood frontier
/// as rich, saturating on overflow.
fn rich_threshold(m: u32, k: u32, n: u32) -> u64 {
    (m as u64).saturating_mul((k as u64).checked_pow(n).unwrap_or(u64::MAX))
}

/// `6 * (2^(n+k-1) + m * k^(n+1))`, saturating on overflow.
fn independence_bound(n: u32, m: u32, k: u32) -> u64 {
    let doubling = 1u64.checked_shl(n + k - 1).unwrap_or(u64::MAX);
    6u64.saturating_mul(doubling.saturating_add(rich_threshold(m, k, n + 1)))
}

/// Bag-growth engine. Each bag starts as its leaf's own vertex; the tree is
/// degree-3 internally after smoothing. A candidate triple `(u, a, b)` is a
/// tree edge `ab` on the boundary of the subtree of bags already containing
/// `u` (with `a` inside), and its frontier is the set of `u`'s neighbours
/// hosted beyond `b` that no inside bag has absorbed. Growth adds `u` to the
/// bag at `b`: the first phase greedily follows frontiers still holding an
/// independent set of the threshold size, the second drains every remaining
/// non-empty frontier so that absorbed neighbourhoods end up connected.
struct CompilerState<'a> {
    g: &'a Graph,
    tree_edges: &'a [(u32, u32)],
    /// Tree adjacency lists, sorted.
    adjacent: Vec<Vec<u32>>,
    /// Oriented tree edge `(from, to)` -> leaf vertices hosted on `to`'s side.
    host: BTreeMap<(u32, u32), u128>,
    bags: Vec<u128>,
    /// Candidate triple -> its current frontier set.
    frontier: BTreeMap<(u32, u32, u32), u128>,
    /// Keys of `frontier` whose set is non-empty.
    nonempty: BTreeSet<(u32, u32, u32)>,
    /// Triples whose frontier already failed the richness test. Frontiers
    /// only ever shrink and triples never return once their boundary edge is
    /// swallowed, so a failure is permanent and never retested.
    lean: BTreeSet<(u32, u32, u32)>,
    threshold: u64,
    full_recompute: bool,
    steps: usize,
    independent_steps: usize,
    plain_steps: usize,
}

impl<'a> CompilerState<'a> {
    fn new(
        g: &'a Graph,
        bd: &'a BranchDecomposition,
        threshold: u64,
        full_recompute: bool,
    ) -> Self {
        let tree_edges = bd.tree_edges();
        let mut adjacent = vec![Vec::new(); bd.node_count()];
        for &(x, y) in tree_edges {
            adjacent[x as usize].push(y);
            adjacent[y as usize].push(x);
        }
        for list in &mut adjacent {
            list.sort_unstable();
        }

        let everyone = bits::full(g.vertex_count());
        let mut host = BTreeMap::new();
        for (i, &(x, y)) in tree_edges.iter().enumerate() {
            let x_side = bd.cut_side_masks()[i];
            host.insert((x, y), everyone & !x_side);
            host.insert((y, x), x_side);
        }

        let mut bags = vec![0u128; bd.node_count()];
        for (v, &leaf) in bd.element_leaves().iter().enumerate() {
            bags[leaf as usize] |= bits::bit(v as u32);
        }

        let mut state = CompilerState {
            g,
            tree_edges,
            adjacent,
            host,
            bags,
            frontier: BTreeMap::new(),
            nonempty: BTreeSet::new(),
            lean: BTreeSet::new(),
            threshold,
            full_recompute,
            steps: 0,
            independent_steps: 0,
            plain_steps: 0,
        };
        state.frontier = state.enumerate_frontier();
        state.nonempty = state
            .frontier
            .iter()
            .filter(|&(_, &set)| set != 0)
            .map(|(&key, _)| key)
            .collect();
        state
    }

    /// Every candidate triple, derived from nothing but the current bags.
    fn enumerate_frontier(&self) -> BTreeMap<(u32, u32, u32), u128> {
        let mut map = BTreeMap::new();
        for u in 0..self.g.vertex_count() as u32 {
            for &(x, y) in self.tree_edges {
                let in_x = bits::contains(self.bags[x as usize], u);
                let in_y = bits::contains(self.bags[y as usize], u);
                if in_x != in_y {
                    let (a, b) = if in_x { (x, y) } else { (y, x) };
                    map.insert((u, a, b), self.frontier_set(u, a, b));
                }
            }
        }
        map
    }

    /// Neighbours of `u` hosted beyond `b` that the bag at `a` has not
    /// absorbed.
    fn frontier_set(&self, u: u32, a: u32, b: u32) -> u128 {
        self.g.neighbors_mask(u) & !self.bags[a as usize] & self.host[&(a, b)]
    }

    fn run(&mut self) -> Result<()> {
        // Each vertex can enter each bag once, so growth is finite; going
        // past this budget means the bookkeeping broke.
        let budget = self.g.vertex_count() * self.bags.len();

        // First phase: grow along frontiers still rich in independent sets.
        if self.threshold <= self.g.vertex_count() as u64 {
            loop {
                let mut chosen = None;
                let mut now_lean = Vec::new();
                for &key in &self.nonempty {
                    if self.lean.contains(&key) {
                        continue;
                    }
                    if self
                        .g
                        .has_independent_set(self.frontier[&key], self.threshold as u32)
                    {
                        chosen = Some(key);
                        break;
                    }
                    now_lean.push(key);
                }
                self.lean.extend(now_lean);
                match chosen {
                    Some(key) => self.grow(key, true, budget)?,
                    None => break,
                }
            }
        }

        // Second phase: drain every remaining non-empty frontier.
        while let Some(&key) = self.nonempty.first() {
            self.grow(key, false, budget)?;
        }
        Ok(())
    }

    /// Adds the triple's vertex to the bag beyond its boundary edge and
    /// refreshes the candidates this invalidates: every triple of the grown
    /// vertex (its inside subtree changed), and the triples of its
    /// neighbours whose frontier looked through the grown bag.
    fn grow(&mut self, key: (u32, u32, u32), rich_phase: bool, budget: usize) -> Result<()> {
        self.steps += 1;
        if self.steps > budget {
            return Err(Error::Internal(format!(
                "bag growth exceeded its budget of {budget} steps"
            )));
        }
        if rich_phase {
            self.independent_steps += 1;
        } else {
            self.plain_steps += 1;
        }

        let (u, _, b) = key;
        self.bags[b as usize] |= bits::bit(u);

        let stale: Vec<(u32, u32, u32)> = self
            .frontier
            .range((u, 0, 0)..(u + 1, 0, 0))
            .map(|(&key, _)| key)
            .collect();
        for key in stale {
            self.frontier.remove(&key);
            self.nonempty.remove(&key);
        }
        for &(x, y) in self.tree_edges {
            let in_x = bits::contains(self.bags[x as usize], u);
            let in_y = bits::contains(self.bags[y as usize], u);
            if in_x != in_y {
                let (a2, b2) = if in_x { (x, y) } else { (y, x) };
                self.update((u, a2, b2), self.frontier_set(u, a2, b2));
            }
        }
        let mut shrunk = Vec::new();
        for w in bits::ones(self.g.neighbors_mask(u)) {
            for &c in &self.adjacent[b as usize] {
                if self.frontier.contains_key(&(w, b, c)) {
                    shrunk.push((w, b, c));
                }
            }
        }
        for (w, from, to) in shrunk {
            self.update((w, from, to), self.frontier_set(w, from, to));
        }

        if self.full_recompute {
            let oracle = self.enumerate_frontier();
            if oracle != self.frontier {
                return Err(Error::Internal(
                    "incremental frontier state diverged from a full recomputation".into(),
                ));
            }
        }
        Ok(())
    }

    fn update(&mut self, key: (u32, u32, u32), set: u128) {
        if set == 0 {
            self.nonempty.remove(&key);
        } else {
            self.nonempty.insert(key);
        }
        self.frontier.insert(key, set);
    }
}

/// From disjoint vertex sets where every `u_side` vertex has a neighbour in
/// `v_side` and every `v_side` vertex has at most `cap` neighbours in
/// `u_side`, extracts `count` edges whose endpoints induce a bipartite
/// matching across the sides.
///
/// Success is guaranteed whenever `u_side` has at least `2 * cap * count`
/// vertices; smaller supplies are still attempted and refused only if the
/// selection actually runs dry. The result's witness cut is the chosen
/// `u_side` endpoints.
pub fn extract_semi_matching(
    g: &Graph,
    u_side: &[VertexId],
    v_side: &[VertexId],
    cap: u32,
    count: u32,
) -> Result<Matching> {
    let u_mask = checked_mask(g, u_side)?;
    let v_mask = checked_mask(g, v_side)?;
    if cap == 0 || count == 0 {
        return Err(Error::Precondition(
            "the degree cap and the pair count must be positive".into(),
        ));
    }
    if u_mask & v_mask != 0 {
        return Err(Error::Precondition("the two sides must be disjoint".into()));
    }
    for v in bits::ones(v_mask) {
        let degree = (g.neighbors_mask(v) & u_mask).count_ones();
        if degree > cap {
            return Err(Error::Precondition(format!(
                "vertex {v} has {degree} neighbours on the first side, above the cap {cap}"
            )));
        }
    }
    for u in bits::ones(u_mask) {
        if g.neighbors_mask(u) & v_mask == 0 {
            return Err(Error::Precondition(format!(
                "vertex {u} has no neighbour on the second side"
            )));
        }
    }

    let mut pairs = Vec::new();
    semi_matching_step(g, u_mask, v_mask, count, &mut pairs)?;

    let mut witness: Vec<VertexId> = pairs.iter().map(|&(x, _)| x).collect();
    witness.sort_unstable();
    let matching = Matching {
        edges: pairs,
        kind: MatchingKind::Induced,
        witness_cut: Some(witness),
    };
    matching.verify(g).map_err(Error::Internal)?;
    Ok(matching)
}

fn semi_matching_step(
    g: &Graph,
    u_mask: u128,
    v_mask: u128,
    count: u32,
    pairs: &mut Vec<(VertexId, VertexId)>,
) -> Result<()> {
    if count == 0 {
        return Ok(());
    }
    if u_mask == 0 {
        return Err(Error::Precondition(
            "the first side ran out of vertices; success is guaranteed only from \
             2 * cap * count of them"
                .into(),
        ));
    }

    // Pick the supply vertex with the fewest remaining neighbours (smallest
    // id on ties) and its smallest neighbour. Everything that could disturb
    // the pair goes: the vertices sharing exactly its neighbourhood, the
    // neighbours of the chosen partner, and the neighbourhood itself. Any
    // survivor keeps a neighbour, because its neighbourhood was no smaller
    // than the minimum yet differs from it.
    let x = bits::ones(u_mask)
        .min_by_key(|&u| ((g.neighbors_mask(u) & v_mask).count_ones(), u))
        .expect("non-empty supply");
    let x_nbrs = g.neighbors_mask(x) & v_mask;
    if x_nbrs == 0 {
        return Err(Error::Internal(
            "a supply vertex lost all its neighbours during selection".into(),
        ));
    }
    let y = x_nbrs.trailing_zeros();
    pairs.push((x, y));

    let mut next_u = 0u128;
    for u in bits::ones(u_mask & !bits::bit(x)) {
        if g.neighbors_mask(u) & v_mask != x_nbrs {
            next_u |= bits::bit(u);
        }
    }
    next_u &= !g.neighbors_mask(y);
    semi_matching_step(g, next_u, v_mask & !x_nbrs, count - 1, pairs)
}

/// Outcome of [`extract_matching_or_biclique`].
#[derive(Clone, Debug)]
pub enum BicliqueOrMatching {
    /// `k` crossing edges inducing a bipartite matching; the witness cut
    /// holds the supply-side endpoints.
    Matching(Matching),
    /// An induced complete bipartite subgraph; `left` comes from the supply
    /// side (`n` vertices), `right` from the other side (`m` vertices).
    Biclique {
        left: Vec<VertexId>,
        right: Vec<VertexId>,
    },
}

/// From an independent set `u_side`, disjoint from `v_side`, each of whose
/// vertices sees an independent set of `m * k^n` vertices in `v_side`,
/// extracts either `k` edges inducing a bipartite matching across the sides
/// or an induced complete bipartite subgraph with parts of sizes `n` and
/// `m`.
///
/// Success is guaranteed whenever `u_side` has at least `2^(n+k)` vertices;
/// smaller supplies are still attempted and refused only if the recursion
/// actually runs dry.
pub fn extract_matching_or_biclique(
    g: &Graph,
    u_side: &[VertexId],
    v_side: &[VertexId],
    n: u32,
    m: u32,
    k: u32,
) -> Result<BicliqueOrMatching> {
    let u_mask = checked_mask(g, u_side)?;
    let v_mask = checked_mask(g, v_side)?;
    if n == 0 || m == 0 || k == 0 {
        return Err(Error::Precondition(
            "all three parameters must be positive".into(),
        ));
    }
    if u_mask & v_mask != 0 {
        return Err(Error::Precondition("the two sides must be disjoint".into()));
    }
    for u in bits::ones(u_mask) {
        if g.neighbors_mask(u) & u_mask != 0 {
            return Err(Error::Precondition(format!(
                "the supply side is not independent: vertex {u} has a neighbour inside it"
            )));
        }
    }
    let need = rich_threshold(m, k, n);
    for u in bits::ones(u_mask) {
        if !holds_independent(g, g.neighbors_mask(u) & v_mask, need) {
            return Err(Error::Precondition(format!(
                "vertex {u} lacks an independent set of {need} neighbours on the second side"
            )));
        }
    }

    match matching_or_biclique_step(g, u_mask, v_mask, n, m, k)? {
        Step::Pairs(pairs) => {
            if pairs.len() != k as usize {
                return Err(Error::Internal(format!(
                    "selection produced {} pairs instead of {k}",
                    pairs.len()
                )));
            }
            let mut witness: Vec<VertexId> = pairs.iter().map(|&(x, _)| x).collect();
            witness.sort_unstable();
            let matching = Matching {
                edges: pairs,
                kind: MatchingKind::Induced,
                witness_cut: Some(witness),
            };
            matching.verify(g).map_err(Error::Internal)?;
            Ok(BicliqueOrMatching::Matching(matching))
        }
        Step::Parts(left, right) => {
            verify_biclique(g, &left, &right, n, m)?;
            Ok(BicliqueOrMatching::Biclique { left, right })
        }
    }
}

enum Step {
    Pairs(Vec<(VertexId, VertexId)>),
    Parts(Vec<VertexId>, Vec<VertexId>),
}

fn matching_or_biclique_step(
    g: &Graph,
    u_mask: u128,
    v_mask: u128,
    n: u32,
    m: u32,
    k: u32,
) -> Result<Step> {
    if u_mask == 0 {
        return Err(Error::Precondition(
            "the supply side ran out of vertices; success is guaranteed only from \
             2^(n+k) of them"
                .into(),
        ));
    }
    // Entry guarantee, re-checked because deeper levels derive it
    // arithmetically rather than receiving it from the caller.
    let need = rich_threshold(m, k, n);
    for u in bits::ones(u_mask) {
        if !holds_independent(g, g.neighbors_mask(u) & v_mask, need) {
            return Err(Error::Internal(format!(
                "supply vertex {u} lost its rich neighbourhood during the recursion"
            )));
        }
    }

    let x = u_mask.trailing_zeros();
    let inner = g.neighbors_mask(x) & v_mask;

    if n == 1 {
        // One supply vertex together with an independent set inside its
        // neighbourhood is already the complete bipartite witness.
        let right = lex_independent_set(g, inner, m).ok_or_else(|| {
            Error::Internal("a rich neighbourhood lost its independent set".into())
        })?;
        return Ok(Step::Parts(vec![x], right));
    }
    if k == 1 {
        return Ok(Step::Pairs(vec![(x, inner.trailing_zeros())]));
    }

    // Split the rest of the supply by whether its neighbourhood stays rich
    // inside the chosen vertex's own neighbourhood.
    let rest = u_mask & !bits::bit(x);
    let inner_need = rich_threshold(m, k, n - 1);
    let mut rich = 0u128;
    for u in bits::ones(rest) {
        if holds_independent(g, g.neighbors_mask(u) & inner, inner_need) {
            rich |= bits::bit(u);
        }
    }

    let rich_supply = 1u64.checked_shl(n - 1 + k).unwrap_or(u64::MAX);
    if u128::from(rich.count_ones()) as u64 >= rich_supply {
        // Rich vertices recurse inside the neighbourhood: a matching there
        // is a matching here, and a smaller biclique there extends by the
        // chosen vertex, which sees all of it.
        match matching_or_biclique_step(g, rich, inner, n - 1, m, k)? {
            Step::Pairs(pairs) => Ok(Step::Pairs(pairs)),
            Step::Parts(mut left, right) => {
                left.push(x);
                left.sort_unstable();
                Ok(Step::Parts(left, right))
            }
        }
    } else {
        // Poor vertices keep a rich remainder outside the neighbourhood, so
        // they recurse there with one fewer pair to find; the chosen vertex
        // then pairs with any of its own neighbours the found matching does
        // not touch, and it touches none of the outside.
        let poor = rest & !rich;
        match matching_or_biclique_step(g, poor, v_mask & !inner, n, m, k - 1)? {
            Step::Parts(left, right) => Ok(Step::Parts(left, right)),
            Step::Pairs(mut pairs) => {
                let mut blocked = 0u128;
                for &(a, _) in &pairs {
                    blocked |= g.neighbors_mask(a);
                }
                let free = inner & !blocked;
                if free == 0 {
                    return Err(Error::Internal(
                        "no neighbour of the chosen vertex avoids the found matching".into(),
                    ));
                }
                pairs.push((x, free.trailing_zeros()));
                Ok(Step::Pairs(pairs))
            }
        }
    }
}

/// Whether `within` holds an independent set of `target` vertices.
fn holds_independent(g: &Graph, within: u128, target: u64) -> bool {
    target <= u64::from(within.count_ones()) && g.has_independent_set(within, target as u32)
}

/// Lexicographically smallest independent set of exactly `size` vertices
/// inside `within`, if one exists: greedily keep the smallest vertex that
/// still leaves a feasible remainder.
fn lex_independent_set(g: &Graph, within: u128, size: u32) -> Option<Vec<VertexId>> {
    if !holds_independent(g, within, u64::from(size)) {
        return None;
    }
    let mut chosen = Vec::with_capacity(size as usize);
    let mut pool = within;
    let mut left = size;
    while left > 0 {
        let (v, rest) = bits::ones(pool).find_map(|v| {
            let rest = pool & !g.neighbors_mask(v) & !bits::bit(v);
            (left == 1 || g.has_independent_set(rest, left - 1)).then_some((v, rest))
        })?;
        chosen.push(v);
        pool = rest;
        left -= 1;
    }
    Some(chosen)
}

fn verify_biclique(g: &Graph, left: &[VertexId], right: &[VertexId], n: u32, m: u32) -> Result<()> {
    if left.len() != n as usize || right.len() != m as usize {
        return Err(Error::Internal(format!(
            "biclique parts have sizes ({}, {}) instead of ({n}, {m})",
            left.len(),
            right.len()
        )));
    }
    let left_mask = bits::mask_of(left);
    let right_mask = bits::mask_of(right);
    if left_mask & right_mask != 0
        || left_mask.count_ones() as usize != left.len()
        || right_mask.count_ones() as usize != right.len()
    {
        return Err(Error::Internal("biclique parts overlap or repeat".into()));
    }
    for &a in left {
        if g.neighbors_mask(a) & left_mask != 0 {
            return Err(Error::Internal(format!(
                "biclique part is not independent at vertex {a}"
            )));
        }
        if g.neighbors_mask(a) & right_mask != right_mask {
            return Err(Error::Internal(format!(
                "vertex {a} misses part of the other biclique side"
            )));
        }
    }
    for &b in right {
        if g.neighbors_mask(b) & right_mask != 0 {
            return Err(Error::Internal(format!(
                "biclique part is not independent at vertex {b}"
            )));
        }
    }
    Ok(())
}

fn checked_mask(g: &Graph, vertices: &[VertexId]) -> Result<u128> {
    let mut mask = 0u128;
    for &v in vertices {
        if v as usize >= g.vertex_count() {
            return Err(Error::VertexOutOfRange(v, g.vertex_count()));
        }
        mask |= bits::bit(v);
    }
    Ok(mask)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::{solve_branchwidth, SolveOptions};

    fn cycle(n: u32) -> Graph {
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n as usize, &edges).unwrap()
    }

    fn optimal_bd(g: &Graph) -> BranchDecomposition {
        solve_branchwidth(g, CutKind::Mim, &SolveOptions::default())
            .unwrap()
            .decomposition
    }

    fn compiled_alpha(g: &Graph, result: &CompileResult) -> u64 {
        u64::from(result.td.alpha_of(g).unwrap().0)
    }

    #[test]
    fn single_edge_grows_one_bag() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let opts = CompileOptions {
            n: Some(2),
            m: Some(2),
            k: Some(2),
            ..CompileOptions::default()
        };
        let result = compile(&g, &optimal_bd(&g), &opts).unwrap();
        assert_eq!(result.stats.steps, 1);
        assert_eq!(result.stats.plain_growth_steps, 1);
        assert_eq!(result.stats.independent_growth_steps, 0);
        assert_eq!(compiled_alpha(&g, &result), 1);
        assert!(result.warnings.is_empty());
    }

    #[test]
    fn five_cycle_stays_under_the_bound() {
        let g = cycle(5);
        let opts = CompileOptions {
            n: Some(2),
            m: Some(2),
            ..CompileOptions::default()
        };
        // Every two-against-three split of the five-cycle carries a crossing
        // induced matching of two edges, so the inferred width bound is 3.
        let result = compile(&g, &optimal_bd(&g), &opts).unwrap();
        assert_eq!(result.stats.k, 3);
        assert_eq!(result.stats.alpha_bound, 6 * (16 + 2 * 27));
        let alpha = compiled_alpha(&g, &result);
        assert!((2..420).contains(&alpha), "alpha {alpha}");
    }

    #[test]
    fn incremental_refresh_matches_full_recomputation() {
        let graphs = vec![
            cycle(4),
            cycle(6),
            Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap(),
            Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap(),
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap(),
            crate::generate(&crate::FamilySpec::new(crate::Family::Grid, vec![3, 3])).unwrap(),
        ];
        for g in graphs {
            let opts = CompileOptions {
                full_recompute: true,
                ..CompileOptions::default()
            };
            compile(&g, &optimal_bd(&g), &opts).unwrap();
        }
    }

    #[test]
    fn premise_violations_become_warnings() {
        // The four-cycle is itself a complete bipartite graph on (2, 2).
        let g = cycle(4);
        let opts = CompileOptions {
            n: Some(2),
            m: Some(2),
            k: Some(5),
            check_inputs: true,
            ..CompileOptions::default()
        };
        let result = compile(&g, &optimal_bd(&g), &opts).unwrap();
        assert_eq!(result.warnings.len(), 1);
        assert!(result.warnings[0].contains("complete bipartite"));

        // A width bound of 1 is violated by any decomposition of a cycle
        // long enough to have a two-edge induced matching across some cut.
        let g = cycle(8);
        let opts = CompileOptions {
            n: Some(2),
            m: Some(2),
            k: Some(1),
            check_inputs: true,
            ..CompileOptions::default()
        };
        let result = compile(&g, &optimal_bd(&g), &opts).unwrap();
        assert!(result
            .warnings
            .iter()
            .any(|w| w.contains("induced-matching size")));
        result.td.validate(&g).unwrap();
    }

    #[test]
    fn parameters_are_inferred_when_absent() {
        // A triangle with a pendant has no complete bipartite (2, 2).
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let result = compile(&g, &optimal_bd(&g), &CompileOptions::default()).unwrap();
        assert_eq!((result.stats.n, result.stats.m), (2, 2));
        assert!(result.stats.k >= 1);

        // The four-cycle contains (2, 2) but not (3, 3).
        let g = cycle(4);
        let result = compile(&g, &optimal_bd(&g), &CompileOptions::default()).unwrap();
        assert_eq!((result.stats.n, result.stats.m), (3, 3));
    }

    #[test]
    fn dense_bicliques_defeat_inference() {
        let g = crate::generate(&crate::FamilySpec::new(crate::Family::Biclique, vec![4, 4])).unwrap();
        let err = compile(&g, &optimal_bd(&g), &CompileOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        assert!(err.to_string().contains("explicitly"));
    }

    #[test]
    fn half_given_parameters_are_refused() {
        let g = cycle(5);
        let opts = CompileOptions {
            n: Some(2),
            ..CompileOptions::default()
        };
        let err = compile(&g, &optimal_bd(&g), &opts).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn edge_ground_decompositions_are_refused() {
        let g = cycle(5);
        let bd = crate::caterpillar_bd(&[0, 1, 2, 3, 4], Ground::Edges).unwrap();
        let err = compile(&g, &bd, &CompileOptions::default()).unwrap_err();
        assert!(matches!(err, Error::BranchDecomposition(_)));
    }

    #[test]
    fn semi_matching_recovers_a_perfect_matching() {
        // Three disjoint edges: one side against the other, cap 1.
        let g = Graph::from_edges(6, &[(0, 3), (1, 4), (2, 5)]).unwrap();
        let matching = extract_semi_matching(&g, &[0, 1, 2], &[3, 4, 5], 1, 3).unwrap();
        assert_eq!(matching.edges, vec![(0, 3), (1, 4), (2, 5)]);
        assert_eq!(matching.kind, MatchingKind::Induced);
    }

    #[test]
    fn semi_matching_prefers_scarce_neighbourhoods() {
        // Two vertices per far-side vertex: the supply is exactly twice
        // cap * count, the guaranteed threshold.
        let edges = [(0, 8), (1, 8), (2, 9), (3, 9), (4, 10), (5, 10), (6, 11), (7, 11)];
        let g = Graph::from_edges(12, &edges).unwrap();
        let matching =
            extract_semi_matching(&g, &[0, 1, 2, 3, 4, 5, 6, 7], &[8, 9, 10, 11], 2, 2).unwrap();
        assert_eq!(matching.edges, vec![(0, 8), (2, 9)]);
        assert_eq!(matching.witness_cut, Some(vec![0, 2]));
    }

    #[test]
    fn semi_matching_refusals_name_the_failure() {
        let g = Graph::from_edges(6, &[(0, 3), (1, 4), (2, 5)]).unwrap();
        // More pairs than the supply can ever deliver.
        let err = extract_semi_matching(&g, &[0, 1, 2], &[3, 4, 5], 1, 4).unwrap_err();
        assert!(err.to_string().contains("ran out"));

        // A far-side vertex above the degree cap.
        let g = Graph::from_edges(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
        let err = extract_semi_matching(&g, &[0, 1, 2], &[3], 2, 1).unwrap_err();
        assert!(err.to_string().contains("above the cap"));

        // A supply vertex with no neighbour across.
        let g = Graph::from_edges(4, &[(0, 2), (0, 3)]).unwrap();
        let err = extract_semi_matching(&g, &[0, 1], &[2, 3], 1, 1).unwrap_err();
        assert!(err.to_string().contains("no neighbour"));

        // Overlapping sides.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let err = extract_semi_matching(&g, &[0, 1], &[1, 2], 1, 1).unwrap_err();
        assert!(err.to_string().contains("disjoint"));
    }

    #[test]
    fn rich_supplies_yield_the_biclique() {
        // Complete bipartite (16, 12): every branch of the recursion stays
        // rich, so it bottoms out at a single supply vertex and collects the
        // two smallest supply vertices against the three smallest partners.
        let mut edges = Vec::new();
        for u in 0..16 {
            for v in 16..28 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(28, &edges).unwrap();
        let u_side: Vec<u32> = (0..16).collect();
        let v_side: Vec<u32> = (16..28).collect();
        match extract_matching_or_biclique(&g, &u_side, &v_side, 2, 3, 2).unwrap() {
            BicliqueOrMatching::Biclique { left, right } => {
                assert_eq!(left, vec![0, 1]);
                assert_eq!(right, vec![16, 17, 18]);
            }
            BicliqueOrMatching::Matching(m) => panic!("unexpected matching {:?}", m.edges),
        }
    }

    #[test]
    fn split_neighbourhoods_yield_the_matching() {
        // Two supply vertices with disjoint rich neighbourhoods: the poor
        // branch fires and assembles one pair per level.
        let edges = [(0, 2), (0, 3), (0, 4), (0, 5), (1, 6), (1, 7), (1, 8), (1, 9)];
        let g = Graph::from_edges(10, &edges).unwrap();
        let v_side: Vec<u32> = (2..10).collect();
        match extract_matching_or_biclique(&g, &[0, 1], &v_side, 2, 1, 2).unwrap() {
            BicliqueOrMatching::Matching(m) => {
                assert_eq!(m.edges, vec![(1, 6), (0, 2)]);
                assert_eq!(m.kind, MatchingKind::Induced);
                assert_eq!(m.witness_cut, Some(vec![0, 1]));
            }
            BicliqueOrMatching::Biclique { left, right } => {
                panic!("unexpected biclique {left:?} / {right:?}")
            }
        }
    }

    #[test]
    fn single_vertex_bases_work_without_slack() {
        // One supply vertex with an independent pair across: biclique base.
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        match extract_matching_or_biclique(&g, &[0], &[1, 2], 1, 2, 1).unwrap() {
            BicliqueOrMatching::Biclique { left, right } => {
                assert_eq!(left, vec![0]);
                assert_eq!(right, vec![1, 2]);
            }
            BicliqueOrMatching::Matching(_) => panic!("unexpected matching"),
        }

        // Single-pair base on a four-cycle.
        let g = cycle(4);
        match extract_matching_or_biclique(&g, &[0, 2], &[1, 3], 2, 2, 1).unwrap() {
            BicliqueOrMatching::Matching(m) => assert_eq!(m.edges, vec![(0, 1)]),
            BicliqueOrMatching::Biclique { .. } => panic!("unexpected biclique"),
        }
    }

    #[test]
    fn matching_extraction_refusals_name_the_failure() {
        // Dependent supply.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let err = extract_matching_or_biclique(&g, &[0, 1], &[2, 3], 1, 1, 1).unwrap_err();
        assert!(err.to_string().contains("not independent"));

        // A supply vertex below the richness requirement.
        let g = Graph::from_edges(3, &[(0, 2), (1, 2)]).unwrap();
        let err = extract_matching_or_biclique(&g, &[0, 1], &[2], 1, 2, 1).unwrap_err();
        assert!(err.to_string().contains("lacks an independent set"));

        // A rich single vertex that still cannot carry a two-level
        // recursion: the supply dries up below the guaranteed size.
        let mut edges = Vec::new();
        for v in 1..13 {
            edges.push((0, v));
        }
        let g = Graph::from_edges(13, &edges).unwrap();
        let v_side: Vec<u32> = (1..13).collect();
        let err = extract_matching_or_biclique(&g, &[0], &v_side, 2, 3, 2).unwrap_err();
        assert!(err.to_string().contains("ran out"));
    }

    #[test]
    fn lex_smallest_independent_set_is_greedy_and_feasible() {
        let g = cycle(5);
        assert_eq!(lex_independent_set(&g, bits::full(5), 2), Some(vec![0, 2]));
        assert_eq!(lex_independent_set(&g, bits::full(5), 3), None);
        // Skipping vertex 1 is forced once 0 is taken.
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(lex_independent_set(&g, bits::full(4), 2), Some(vec![0, 2]));
    }
}
