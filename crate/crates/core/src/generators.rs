//! Parameterised graph families used throughout the test corpora and the
//! command-line generator, each with structural self-checks.
//!
//! Conventions:
//! - `Cell` labels are 1-based (row 1 is the top row, column 1 the leftmost).
//! - Seeded families draw from [`crate::rng::Lcg64`] only, so a spec plus a
//!   seed pins the graph exactly, independent of platform.

use std::fmt;
use std::str::FromStr;

use crate::bits;
use crate::error::Error;
use crate::graph::{Graph, Label};
use crate::matching::{self, MimMode};
use crate::rng::Lcg64;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `path(n)`: n vertices in a line.
    Path,
    /// `cycle(n)`: n >= 3 vertices in a ring.
    Cycle,
    /// `complete(n)`: every pair adjacent.
    Complete,
    /// `biclique(a, b)`: complete bipartite.
    Biclique,
    /// `star(k)`: one centre joined to k leaves.
    Star,
    /// `grid(r, c)`: r-by-c square grid.
    Grid,
    /// `elementary-wall(h, r)`: h-row wall of 2r columns of bricks; built
    /// from the h-by-2r grid by keeping alternating vertical edges, then
    /// removing all degree-1 vertices in one simultaneous pass.
    ElementaryWall,
    /// `net-wall(h, r)`: the elementary wall with every degree-3 vertex
    /// expanded into a triangle, one corner per neighbour.
    NetWall,
    /// `rook(n, m)`: n-by-m rook's move graph (same row or same column).
    Rook,
    /// `matched-cliques(t)`: two disjoint copies of the t-clique joined by a
    /// perfect matching.
    MatchedCliques,
    /// `clique-pendants(t)`: a t-clique with one pendant leaf per vertex.
    CliquePendants,
    /// `degeneracy-counterexample(d)`: four layers of d vertices with
    /// complete bipartite joins between consecutive layers — a d-degenerate
    /// graph whose maximum matching is 2d but whose largest induced matching
    /// is a single edge.
    DegeneracyCounterexample,
    /// `caterpillar(l)`: an l-vertex spine with one pendant leaf each.
    Caterpillar,
    /// `random-chordal(n, seed)`: grown by repeatedly attaching a fresh
    /// vertex to a random subset of a random previously created clique.
    RandomChordal,
}

impl Family {
    pub const ALL: [Family; 14] = [
        Family::Path,
        Family::Cycle,
        Family::Complete,
        Family::Biclique,
        Family::Star,
        Family::Grid,
        Family::ElementaryWall,
        Family::NetWall,
        Family::Rook,
        Family::MatchedCliques,
        Family::CliquePendants,
        Family::DegeneracyCounterexample,
        Family::Caterpillar,
        Family::RandomChordal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Biclique => "biclique",
            Family::Star => "star",
            Family::Grid => "grid",
            Family::ElementaryWall => "elementary-wall",
            Family::NetWall => "net-wall",
            Family::Rook => "rook",
            Family::MatchedCliques => "matched-cliques",
            Family::CliquePendants => "clique-pendants",
            Family::DegeneracyCounterexample => "degeneracy-counterexample",
            Family::Caterpillar => "caterpillar",
            Family::RandomChordal => "random-chordal",
        }
    }

    /// How many numeric parameters the family takes, not counting the seed.
    pub fn arity(self) -> usize {
        match self {
            Family::Path
            | Family::Cycle
            | Family::Complete
            | Family::Star
            | Family::MatchedCliques
            | Family::CliquePendants
            | Family::DegeneracyCounterexample
            | Family::Caterpillar
            | Family::RandomChordal => 1,
            Family::Biclique
            | Family::Grid
            | Family::ElementaryWall
            | Family::NetWall
            | Family::Rook => 2,
        }
    }

    pub fn seeded(self) -> bool {
        matches!(self, Family::RandomChordal)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::FamilySpec(format!("unknown family `{s}`")))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A fully instantiated family request. Parses from and prints back the form
/// `name(p1, p2, ...)`; seeded families take the seed as the final argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub params: Vec<u32>,
    pub seed: Option<u64>,
}

impl FamilySpec {
    pub fn new(family: Family, params: Vec<u32>) -> FamilySpec {
        FamilySpec {
            family,
            params,
            seed: None,
        }
    }

    pub fn seeded(family: Family, params: Vec<u32>, seed: u64) -> FamilySpec {
        FamilySpec {
            family,
            params,
            seed: Some(seed),
        }
    }

    fn param(&self, i: usize) -> u32 {
        self.params[i]
    }

    fn check_shape(&self) -> Result<()> {
        let want = self.family.arity();
        if self.params.len() != want {
            return Err(Error::FamilySpec(format!(
                "{} expects {} parameter{}, got {}",
                self.family,
                want,
                if want == 1 { "" } else { "s" },
                self.params.len()
            )));
        }
        if self.family.seeded() && self.seed.is_none() {
            return Err(Error::FamilySpec(format!(
                "{} needs a seed as its final argument",
                self.family
            )));
        }
        Ok(())
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilySpec> {
        let s = s.trim();
        let bad = |msg: String| Error::FamilySpec(msg);
        let (name, args) = match s.find('(') {
            None => (s, Vec::new()),
            Some(open) => {
                let inner = s[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| bad(format!("`{s}` is missing its closing parenthesis")))?;
                let args = inner
                    .split(',')
                    .map(|a| {
                        let a = a.trim();
                        a.parse::<u64>()
                            .map_err(|_| bad(format!("`{a}` is not a non-negative integer")))
                    })
                    .collect::<Result<Vec<u64>>>()?;
                (&s[..open], args)
            }
        };
        let family: Family = name.trim().parse()?;
        let mut args = args;
        let seed = if family.seeded() {
            if args.len() != family.arity() + 1 {
                return Err(bad(format!(
                    "{} expects {} parameters plus a seed",
                    family,
                    family.arity()
                )));
            }
            args.pop()
        } else {
            None
        };
        let params = args
            .into_iter()
            .map(|a| {
                u32::try_from(a).map_err(|_| bad(format!("parameter {a} is too large")))
            })
            .collect::<Result<Vec<u32>>>()?;
        let spec = FamilySpec {
            family,
            params,
            seed,
        };
        spec.check_shape()?;
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.family)?;
        for (i, p) in self.params.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        if let Some(seed) = self.seed {
            if !self.params.is_empty() {
                write!(f, ", ")?;
            }
            write!(f, "{seed}")?;
        }
        write!(f, ")")
    }
}

/// Build the requested graph, or explain why the parameters are unusable.
pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    spec.check_shape()?;
    let need = |ok: bool, msg: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::FamilySpec(format!("{spec}: {msg}")))
        }
    };
    match spec.family {
        Family::Path => {
            let n = spec.param(0) as usize;
            need(n >= 1, "a path needs at least 1 vertex")?;
            let mut g = Graph::new(n)?;
            for i in 1..n as u32 {
                g.add_edge(i - 1, i)?;
            }
            Ok(g)
        }
        Family::Cycle => {
            let n = spec.param(0) as usize;
            need(n >= 3, "a cycle needs at least 3 vertices")?;
            let mut g = Graph::new(n)?;
            for i in 1..n as u32 {
                g.add_edge(i - 1, i)?;
            }
            g.add_edge(0, n as u32 - 1)?;
            Ok(g)
        }
        Family::Complete => {
            let n = spec.param(0) as usize;
            need(n >= 1, "a complete graph needs at least 1 vertex")?;
            let mut g = Graph::new(n)?;
            for u in 0..n as u32 {
                for v in u + 1..n as u32 {
                    g.add_edge(u, v)?;
                }
            }
            Ok(g)
        }
        Family::Biclique => {
            let (a, b) = (spec.param(0) as usize, spec.param(1) as usize);
            need(a >= 1 && b >= 1, "both sides need at least 1 vertex")?;
            let mut g = Graph::new(a.checked_add(b).expect("u32 params"))?;
            for u in 0..a as u32 {
                g.set_label(u, Label::Copy { side: 0, index: u });
                for v in 0..b as u32 {
                    g.add_edge(u, a as u32 + v)?;
                }
            }
            for v in 0..b as u32 {
                g.set_label(a as u32 + v, Label::Copy { side: 1, index: v });
            }
            Ok(g)
        }
        Family::Star => {
            let k = spec.param(0) as usize;
            need(k >= 1, "a star needs at least 1 leaf")?;
            let mut g = Graph::new(k + 1)?;
            for v in 1..=k as u32 {
                g.add_edge(0, v)?;
            }
            Ok(g)
        }
        Family::Grid => {
            let (r, c) = (spec.param(0) as usize, spec.param(1) as usize);
            need(r >= 1 && c >= 1, "both grid dimensions must be positive")?;
            grid_graph(r, c)
        }
        Family::ElementaryWall => {
            let (h, r) = (spec.param(0) as usize, spec.param(1) as usize);
            need(h >= 2, "a wall needs height at least 2")?;
            need(r >= 2, "a wall needs at least 2 bricks per row")?;
            elementary_wall(h, r)
        }
        Family::NetWall => {
            let (h, r) = (spec.param(0) as usize, spec.param(1) as usize);
            need(h >= 2, "a wall needs height at least 2")?;
            need(r >= 2, "a wall needs at least 2 bricks per row")?;
            net_wall(h, r)
        }
        Family::Rook => {
            let (n, m) = (spec.param(0) as usize, spec.param(1) as usize);
            need(n >= 1 && m >= 1, "both board dimensions must be positive")?;
            rook_graph(n, m)
        }
        Family::MatchedCliques => {
            let t = spec.param(0) as usize;
            need(t >= 1, "the cliques need at least 1 vertex")?;
            let mut g = Graph::new(2 * t)?;
            for side in 0..2u32 {
                let base = side * t as u32;
                for u in 0..t as u32 {
                    g.set_label(base + u, Label::Copy { side, index: u });
                    for v in u + 1..t as u32 {
                        g.add_edge(base + u, base + v)?;
                    }
                }
            }
            for u in 0..t as u32 {
                g.add_edge(u, t as u32 + u)?;
            }
            Ok(g)
        }
        Family::CliquePendants => {
            let t = spec.param(0) as usize;
            need(t >= 1, "the clique needs at least 1 vertex")?;
            let mut g = Graph::new(2 * t)?;
            for u in 0..t as u32 {
                for v in u + 1..t as u32 {
                    g.add_edge(u, v)?;
                }
                g.add_edge(u, t as u32 + u)?;
                g.set_label(t as u32 + u, Label::Pendant(u + 1));
            }
            Ok(g)
        }
        Family::DegeneracyCounterexample => {
            let d = spec.param(0) as usize;
            need(d >= 1, "each layer needs at least 1 vertex")?;
            let mut g = Graph::new(4 * d)?;
            for layer in 0..4usize {
                for i in 0..d {
                    let v = (layer * d + i) as u32;
                    g.set_label(v, Label::Layer(layer as u32 + 1));
                }
            }
            for layer in 0..3usize {
                for i in 0..d {
                    for j in 0..d {
                        g.add_edge((layer * d + i) as u32, ((layer + 1) * d + j) as u32)?;
                    }
                }
            }
            Ok(g)
        }
        Family::Caterpillar => {
            let l = spec.param(0) as usize;
            need(l >= 1, "the spine needs at least 1 vertex")?;
            let mut g = Graph::new(2 * l)?;
            for i in 0..l as u32 {
                g.set_label(i, Label::Spine(i + 1));
                g.set_label(l as u32 + i, Label::Pendant(i + 1));
                g.add_edge(i, l as u32 + i)?;
                if i + 1 < l as u32 {
                    g.add_edge(i, i + 1)?;
                }
            }
            Ok(g)
        }
        Family::RandomChordal => {
            let n = spec.param(0) as usize;
            need(n >= 1, "the graph needs at least 1 vertex")?;
            let seed = spec.seed.expect("checked by shape validation");
            let mut g = Graph::new(n)?;
            let mut rng = Lcg64::new(seed);
            let mut cliques: Vec<Vec<u32>> = vec![vec![0]];
            for v in 1..n as u32 {
                let host = &cliques[rng.below(cliques.len() as u64) as usize];
                let size = 1 + rng.below(host.len() as u64) as usize;
                let chosen: Vec<u32> = rng
                    .sample(host.len(), size)
                    .into_iter()
                    .map(|i| host[i as usize])
                    .collect();
                for &u in &chosen {
                    g.add_edge(u, v)?;
                }
                let mut fresh = chosen;
                fresh.push(v);
                cliques.push(fresh);
            }
            Ok(g)
        }
    }
}

fn grid_graph(r: usize, c: usize) -> Result<Graph> {
    let mut g = Graph::new(r.checked_mul(c).expect("u32 params"))?;
    let id = |row: usize, col: usize| (row * c + col) as u32;
    for row in 0..r {
        for col in 0..c {
            g.set_label(
                id(row, col),
                Label::Cell {
                    row: row as u32 + 1,
                    col: col as u32 + 1,
                },
            );
            if col + 1 < c {
                g.add_edge(id(row, col), id(row, col + 1))?;
            }
            if row + 1 < r {
                g.add_edge(id(row, col), id(row + 1, col))?;
            }
        }
    }
    Ok(g)
}

/// Wall recipe: take the h-by-2r grid, keep the vertical edge below row `i`
/// in column `c` exactly when `i + c` is even (1-based), keep all horizontal
/// edges, then delete every vertex that ends up with degree 1 — all at once,
/// not cascading — and compact the ids.
fn elementary_wall(h: usize, r: usize) -> Result<Graph> {
    let w = 2 * r;
    let mut g = Graph::new(h.checked_mul(w).expect("u32 params"))?;
    let id = |row: usize, col: usize| ((row - 1) * w + (col - 1)) as u32;
    for row in 1..=h {
        for col in 1..=w {
            g.set_label(
                id(row, col),
                Label::Cell {
                    row: row as u32,
                    col: col as u32,
                },
            );
            if col < w {
                g.add_edge(id(row, col), id(row, col + 1))?;
            }
            if row < h && (row + col) % 2 == 0 {
                g.add_edge(id(row, col), id(row + 1, col))?;
            }
        }
    }
    let keep = (0..g.vertex_count() as u32)
        .filter(|&v| g.degree(v) != 1)
        .collect::<Vec<_>>();
    Ok(g.induced(bits::mask_of(&keep)).0)
}

/// Expand every degree-3 wall vertex into a triangle with one corner per
/// neighbour; the expansion is simultaneous, so an edge between two split
/// vertices joins the corners facing each other.
fn net_wall(h: usize, r: usize) -> Result<Graph> {
    let wall = elementary_wall(h, r)?;
    let n = wall.vertex_count();
    let split: Vec<bool> = (0..n as u32).map(|v| wall.degree(v) == 3).collect();
    let extra = split.iter().filter(|&&s| s).count() * 2;
    let mut g = Graph::new(n + extra)?;
    // Corner ids, allocated in ascending (vertex, neighbour) order.
    let mut corner = std::collections::BTreeMap::new();
    let mut single = vec![None; n];
    let mut next = 0u32;
    for v in 0..n as u32 {
        if split[v as usize] {
            for u in wall.neighbors(v) {
                corner.insert((v, u), next);
                next += 1;
            }
        } else {
            single[v as usize] = Some(next);
            next += 1;
        }
    }
    let toward = |v: u32, u: u32| -> u32 {
        single[v as usize].unwrap_or_else(|| corner[&(v, u)])
    };
    for v in 0..n as u32 {
        if split[v as usize] {
            let ids: Vec<u32> = wall.neighbors(v).iter().map(|&u| corner[&(v, u)]).collect();
            for (i, &a) in ids.iter().enumerate() {
                for &b in &ids[i + 1..] {
                    g.add_edge(a, b)?;
                }
            }
            for u in wall.neighbors(v) {
                g.set_label(corner[&(v, u)], Label::Copy { side: v, index: u });
            }
        } else {
            g.set_label(single[v as usize].unwrap(), wall.label(v).clone());
        }
    }
    for (a, b) in wall.edges() {
        g.add_edge(toward(a, b), toward(b, a))?;
    }
    Ok(g)
}

fn rook_graph(n: usize, m: usize) -> Result<Graph> {
    let mut g = Graph::new(n.checked_mul(m).expect("u32 params"))?;
    let id = |i: usize, j: usize| (i * m + j) as u32;
    for i in 0..n {
        for j in 0..m {
            g.set_label(
                id(i, j),
                Label::Cell {
                    row: i as u32 + 1,
                    col: j as u32 + 1,
                },
            );
            for jj in j + 1..m {
                g.add_edge(id(i, j), id(i, jj))?;
            }
            for ii in i + 1..n {
                g.add_edge(id(i, j), id(ii, j))?;
            }
        }
    }
    Ok(g)
}

/// One named structural check per row; `passed` is the conjunction.
#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub spec: String,
    pub checks: Vec<(String, bool)>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|&(_, ok)| ok)
    }
}

fn is_clique(g: &Graph, mask: u128) -> bool {
    bits::ones(mask).all(|u| g.neighbors_mask(u) & mask == mask & !bits::bit(u))
}

/// Chordality via simplicial elimination: repeatedly delete a vertex whose
/// remaining neighbourhood is a clique; success on full elimination.
fn is_chordal(g: &Graph) -> bool {
    let mut remaining = g.all_vertices_mask();
    while remaining != 0 {
        let simplicial = bits::ones(remaining)
            .find(|&v| is_clique(g, g.neighbors_mask(v) & remaining & !bits::bit(v)));
        match simplicial {
            Some(v) => remaining &= !bits::bit(v),
            None => return false,
        }
    }
    true
}

/// Generate the family and run its structural self-checks.
pub fn verify_family(spec: &FamilySpec) -> Result<FamilyReport> {
    let g = generate(spec)?;
    let mut checks: Vec<(String, bool)> = Vec::new();
    let mut check = |name: &str, ok: bool| checks.push((name.to_string(), ok));
    let n = g.vertex_count();
    let m = g.edge_count();
    let degrees: Vec<usize> = (0..n as u32).map(|v| g.degree(v)).collect();
    match spec.family {
        Family::Path => {
            let want = spec.param(0) as usize;
            check("vertex count", n == want);
            check("edge count", m == want - 1);
            check("connected", g.is_connected());
            check("maximum degree at most 2", degrees.iter().all(|&d| d <= 2));
            check(
                "endpoint count",
                degrees.iter().filter(|&&d| d <= 1).count() == if want == 1 { 1 } else { 2 }
            );
        }
        Family::Cycle => {
            let want = spec.param(0) as usize;
            check("vertex count", n == want);
            check("edge count", m == want);
            check("connected", g.is_connected());
            check("every degree is 2", degrees.iter().all(|&d| d == 2));
        }
        Family::Complete => {
            let want = spec.param(0) as usize;
            check("vertex count", n == want);
            check("edge count", m == want * (want - 1) / 2);
            check(
                "every degree is n-1",
                degrees.iter().all(|&d| d == want - 1),
            );
        }
        Family::Biclique => {
            let (a, b) = (spec.param(0) as usize, spec.param(1) as usize);
            check("vertex count", n == a + b);
            check("edge count", m == a * b);
            check("bipartite", g.bipartition().is_some());
            check(
                "side degrees",
                (0..a).all(|u| degrees[u] == b) && (a..a + b).all(|v| degrees[v] == a),
            );
        }
        Family::Star => {
            let k = spec.param(0) as usize;
            check("vertex count", n == k + 1);
            check("edge count", m == k);
            check("centre degree", degrees[0] == k);
            check("leaves are leaves", degrees[1..].iter().all(|&d| d == 1));
        }
        Family::Grid => {
            let (r, c) = (spec.param(0) as usize, spec.param(1) as usize);
            check("vertex count", n == r * c);
            check("edge count", m == r * (c - 1) + c * (r - 1));
            check("connected", g.is_connected());
            check("bipartite", g.bipartition().is_some());
        }
        Family::ElementaryWall => {
            check("connected", g.is_connected());
            check("bipartite", g.bipartition().is_some());
            check(
                "degrees are 2 or 3",
                degrees.iter().all(|&d| d == 2 || d == 3),
            );
            check(
                "kept cell labels",
                (0..n as u32).all(|v| matches!(g.label(v), Label::Cell { .. })),
            );
        }
        Family::NetWall => {
            let (h, r) = (spec.param(0) as usize, spec.param(1) as usize);
            let wall = elementary_wall(h, r)?;
            let deg3 = (0..wall.vertex_count() as u32)
                .filter(|&v| wall.degree(v) == 3)
                .count();
            check("connected", g.is_connected());
            check(
                "degrees are 2 or 3",
                degrees.iter().all(|&d| d == 2 || d == 3),
            );
            check("vertex count", n == wall.vertex_count() + 2 * deg3);
            check("edge count", m == wall.edge_count() + 3 * deg3);
            check(
                "corner count",
                (0..n as u32)
                    .filter(|&v| matches!(g.label(v), Label::Copy { .. }))
                    .count()
                    == 3 * deg3,
            );
        }
        Family::Rook => {
            let (rows, cols) = (spec.param(0) as usize, spec.param(1) as usize);
            check("vertex count", n == rows * cols);
            check("edge count", 2 * m == rows * cols * (rows + cols - 2));
            check(
                "every degree is n+m-2",
                degrees.iter().all(|&d| d == rows + cols - 2),
            );
            if n <= 64 {
                check(
                    "independence number is min(n, m)",
                    g.independence_number(None) == rows.min(cols) as u32,
                );
            }
            if n <= 16 {
                let line = generate(&FamilySpec::new(
                    Family::Biclique,
                    vec![rows as u32, cols as u32],
                ))?
                .line_graph()?;
                check(
                    "matches the line graph of the biclique",
                    crate::enumerate::canonical_form(&g) == crate::enumerate::canonical_form(&line),
                );
            }
        }
        Family::MatchedCliques => {
            let t = spec.param(0) as usize;
            check("vertex count", n == 2 * t);
            check("edge count", m == t * (t - 1) + t);
            check("every degree is t", degrees.iter().all(|&d| d == t));
            check(
                "sides are cliques",
                is_clique(&g, bits::full(t)) && is_clique(&g, bits::full(2 * t) & !bits::full(t)),
            );
        }
        Family::CliquePendants => {
            let t = spec.param(0) as usize;
            check("vertex count", n == 2 * t);
            check("edge count", m == t * (t - 1) / 2 + t);
            check("clique side is a clique", is_clique(&g, bits::full(t)));
            check(
                "pendants are leaves",
                (t..2 * t).all(|v| degrees[v] == 1),
            );
        }
        Family::DegeneracyCounterexample => {
            let d = spec.param(0) as usize;
            check("vertex count", n == 4 * d);
            check("edge count", m == 3 * d * d);
            check("bipartite", g.bipartition().is_some());
            check("degeneracy is d", g.degeneracy().0 == d as u32);
            check(
                "maximum matching is 2d",
                matching::max_matching(&g).size() == 2 * d as u32,
            );
            check(
                "largest induced matching is a single edge",
                matching::max_induced_matching(&g, None, MimMode::FullGraph).size() == 1,
            );
        }
        Family::Caterpillar => {
            let l = spec.param(0) as usize;
            check("vertex count", n == 2 * l);
            check("edge count", m == 2 * l - 1);
            check("connected", g.is_connected());
            check(
                "pendant leaves",
                (l..2 * l).all(|v| degrees[v] == 1),
            );
        }
        Family::RandomChordal => {
            let want = spec.param(0) as usize;
            check("vertex count", n == want);
            check("connected", g.is_connected());
            check("chordal", is_chordal(&g));
        }
    }
    Ok(FamilyReport {
        spec: spec.to_string(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::canonical_form;

    fn gen(s: &str) -> Graph {
        generate(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn specs_parse_and_print_back() {
        let cases = [
            "path(5)",
            "grid(3, 4)",
            "elementary-wall(2, 2)",
            "random-chordal(12, 7)",
        ];
        for s in cases {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!(matches!(
            "unknown(3)".parse::<FamilySpec>(),
            Err(Error::FamilySpec(_))
        ));
        assert!(matches!(
            "path(2".parse::<FamilySpec>(),
            Err(Error::FamilySpec(_))
        ));
        assert!(matches!(
            "path(2, 3)".parse::<FamilySpec>(),
            Err(Error::FamilySpec(_))
        ));
        assert!(matches!(
            "random-chordal(12)".parse::<FamilySpec>(),
            Err(Error::FamilySpec(_))
        ));
        assert!(matches!(
            "cycle(2)".parse::<FamilySpec>().and_then(|s| generate(&s)),
            Err(Error::FamilySpec(_))
        ));
        assert!(matches!(
            "elementary-wall(1, 3)"
                .parse::<FamilySpec>()
                .and_then(|s| generate(&s)),
            Err(Error::FamilySpec(_))
        ));
    }

    #[test]
    fn smallest_wall_is_the_hexagon() {
        let wall = gen("elementary-wall(2, 2)");
        assert_eq!(wall.vertex_count(), 6);
        assert_eq!(wall.edge_count(), 6);
        assert_eq!(canonical_form(&wall), canonical_form(&gen("cycle(6)")));
        // The simultaneous trim drops exactly the two brick-corner stubs.
        assert!((0..6).all(|v| matches!(wall.label(v), Label::Cell { .. })));
    }

    #[test]
    fn three_by_three_wall_counts() {
        let wall = gen("elementary-wall(3, 3)");
        assert_eq!(wall.vertex_count(), 16);
        assert_eq!(wall.edge_count(), 19);
        assert!(verify_family(&"elementary-wall(3, 3)".parse().unwrap())
            .unwrap()
            .passed());
    }

    #[test]
    fn net_wall_without_junctions_is_unchanged() {
        let net = gen("net-wall(2, 2)");
        assert_eq!(canonical_form(&net), canonical_form(&gen("cycle(6)")));
    }

    #[test]
    fn net_wall_replaces_each_junction_with_a_triangle() {
        let net = gen("net-wall(3, 3)");
        // elementary-wall(3, 3) has 16 vertices and 19 edges, 6 of degree 3.
        assert_eq!(net.vertex_count(), 16 + 2 * 6);
        assert_eq!(net.edge_count(), 19 + 3 * 6);
        let report = verify_family(&"net-wall(3, 3)".parse().unwrap()).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn rook_matches_the_biclique_line_graph() {
        let report = verify_family(&"rook(2, 3)".parse().unwrap()).unwrap();
        assert!(report.passed(), "{report:?}");
        let report = verify_family(&"rook(4, 4)".parse().unwrap()).unwrap();
        assert!(report.passed(), "{report:?}");
        let rook = gen("rook(3, 3)");
        assert_eq!(rook.edge_count(), 9 * 4 / 2);
    }

    #[test]
    fn counterexample_checks_hold_for_small_layers() {
        for d in 1..=3 {
            let spec = FamilySpec::new(Family::DegeneracyCounterexample, vec![d]);
            let report = verify_family(&spec).unwrap();
            assert!(report.passed(), "d = {d}: {report:?}");
        }
    }

    #[test]
    fn random_chordal_is_chordal_for_many_seeds() {
        for seed in 0..20 {
            let spec = FamilySpec::seeded(Family::RandomChordal, vec![14], seed);
            let report = verify_family(&spec).unwrap();
            assert!(report.passed(), "seed {seed}: {report:?}");
        }
    }

    #[test]
    fn every_family_signs_off_on_a_small_instance() {
        let specs = [
            "path(6)",
            "cycle(5)",
            "complete(5)",
            "biclique(2, 3)",
            "star(4)",
            "grid(3, 4)",
            "elementary-wall(2, 3)",
            "net-wall(2, 3)",
            "rook(3, 4)",
            "matched-cliques(4)",
            "clique-pendants(4)",
            "degeneracy-counterexample(2)",
            "caterpillar(5)",
            "random-chordal(10, 3)",
        ];
        for s in specs {
            let report = verify_family(&s.parse().unwrap()).unwrap();
            assert!(report.passed(), "{s}: {report:?}");
        }
    }

    #[test]
    fn labels_carry_geometry() {
        let grid = gen("grid(2, 3)");
        assert_eq!(*grid.label(0), Label::Cell { row: 1, col: 1 });
        assert_eq!(*grid.label(5), Label::Cell { row: 2, col: 3 });
        let cat = gen("caterpillar(3)");
        assert_eq!(*cat.label(0), Label::Spine(1));
        assert_eq!(*cat.label(3), Label::Pendant(1));
        let layered = gen("degeneracy-counterexample(2)");
        assert_eq!(*layered.label(0), Label::Layer(1));
        assert_eq!(*layered.label(7), Label::Layer(4));
    }

    #[test]
    fn oversized_requests_are_refused_by_capacity() {
        let spec = FamilySpec::new(Family::Complete, vec![200]);
        assert!(matches!(
            generate(&spec),
            Err(Error::TooManyVertices(200, _))
        ));
    }
}
