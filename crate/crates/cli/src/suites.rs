//! Named verification suites over deterministic graph corpora.
//!
//! Each suite walks an exhaustive isomorphism-free corpus (or a fixed seeded
//! sample), evaluates a family of inequalities with the exact solvers, and
//! reports one [`Row`] per check. A check whose premise a graph does not meet
//! is emitted as an explicit `skipped (...)` row that counts as a pass, so
//! every corpus element is visible in the output. Corpora, seeds, and row
//! order are fixed: two runs produce byte-identical CSV.

use widthforge_core::enumerate::{all_graphs, canonical_form, connected_graphs, graphs_with_edges};
use widthforge_core::matching::{max_induced_matching, max_matching, MimMode};
use widthforge_core::rng::Lcg64;
use widthforge_core::treedec::{exact_tree_alpha, exact_treewidth};
use widthforge_core::{
    compile, generate, odd_power_transfer, solve_branchwidth, width_of, BranchDecomposition,
    CompileOptions, CutKind, Error, Family, FamilySpec, Graph, Ground, SolveOptions,
};

/// One checked inequality on one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub graph: String,
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// Everything a suite run produced, ready for CSV or summary printing.
#[derive(Debug)]
pub struct SuiteReport {
    pub suite: &'static str,
    /// One-line description of the corpus the rows cover.
    pub header: String,
    pub rows: Vec<Row>,
}

impl SuiteReport {
    pub fn failures(&self) -> Vec<&Row> {
        self.rows.iter().filter(|r| !r.pass).collect()
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    /// Render all rows as CSV with a fixed header line. Fields containing
    /// commas or quotes are quoted.
    pub fn csv(&self) -> String {
        let mut out = String::from("graph,check,expected,actual,result\n");
        for r in &self.rows {
            let result = if r.pass { "pass" } else { "FAIL" };
            let cells = [&r.graph, &r.check, &r.expected, &r.actual];
            for cell in cells {
                out.push_str(&csv_field(cell));
                out.push(',');
            }
            out.push_str(result);
            out.push('\n');
        }
        out
    }
}

fn csv_field(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Suites in the order `verify --all` runs them.
pub const SUITE_NAMES: [&str; 6] = [
    "chains",
    "monotonicity",
    "compiler",
    "powers",
    "line-graphs",
    "counterexample",
];

/// Run one suite by name; `None` if the name is unknown.
pub fn run_suite(name: &str) -> Option<SuiteReport> {
    match name {
        "chains" => Some(chains()),
        "monotonicity" => Some(monotonicity()),
        "compiler" => Some(compiler_corpus()),
        "powers" => Some(powers()),
        "line-graphs" => Some(line_graphs()),
        "counterexample" => Some(counterexample()),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Row constructors
// ---------------------------------------------------------------------------

fn le(graph: &str, check: &str, lhs: u32, rhs: u32) -> Row {
    Row {
        graph: graph.to_string(),
        check: check.to_string(),
        expected: format!("<= {rhs}"),
        actual: lhs.to_string(),
        pass: lhs <= rhs,
    }
}

fn ge(graph: &str, check: &str, lhs: u64, rhs: u64) -> Row {
    Row {
        graph: graph.to_string(),
        check: check.to_string(),
        expected: format!(">= {rhs}"),
        actual: lhs.to_string(),
        pass: lhs >= rhs,
    }
}

fn eq(graph: &str, check: &str, lhs: u32, rhs: u32) -> Row {
    Row {
        graph: graph.to_string(),
        check: check.to_string(),
        expected: format!("= {rhs}"),
        actual: lhs.to_string(),
        pass: lhs == rhs,
    }
}

fn lt(graph: &str, check: &str, lhs: u64, rhs: u64) -> Row {
    Row {
        graph: graph.to_string(),
        check: check.to_string(),
        expected: format!("< {rhs}"),
        actual: lhs.to_string(),
        pass: lhs < rhs,
    }
}

fn skip(graph: &str, check: &str, why: &str) -> Row {
    Row {
        graph: graph.to_string(),
        check: check.to_string(),
        expected: "-".to_string(),
        actual: format!("skipped ({why})"),
        pass: true,
    }
}

/// A computation the suite needs failed outright; the row fails and carries
/// the error text.
fn broken(graph: &str, check: &str, err: &Error) -> Row {
    Row {
        graph: graph.to_string(),
        check: check.to_string(),
        expected: "ok".to_string(),
        actual: format!("error: {err}"),
        pass: false,
    }
}

// ---------------------------------------------------------------------------
// Corpora
// ---------------------------------------------------------------------------

/// Connected graphs with 1..=max_n vertices, ids `v{n}/{index:03}`.
fn connected_corpus(max_n: usize) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for (i, g) in connected_graphs(n).into_iter().enumerate() {
            out.push((format!("v{n}/{i:03}"), g));
        }
    }
    out
}

/// Isolated-vertex-free graphs with lo..=hi edges, ids `m{edges}/{index:03}`.
fn edge_corpus(lo: usize, hi: usize) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for m in lo..=hi {
        for (i, g) in graphs_with_edges(m).into_iter().enumerate() {
            out.push((format!("m{m}/{i:03}"), g));
        }
    }
    out
}

/// All graphs with 1..=max_n vertices, ids `g{n}/{index:03}`.
fn all_corpus(max_n: usize) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for (i, g) in all_graphs(n).into_iter().enumerate() {
            out.push((format!("g{n}/{i:03}"), g));
        }
    }
    out
}

fn width(g: &Graph, kind: CutKind) -> widthforge_core::Result<u32> {
    Ok(solve_branchwidth(g, kind, &SolveOptions::default())?.value)
}

// ---------------------------------------------------------------------------
// chains: the pairwise width-parameter inequalities
// ---------------------------------------------------------------------------

fn chains() -> SuiteReport {
    let corpus = connected_corpus(6);
    let header = format!(
        "width-parameter chains on all {} connected graphs with at most 6 vertices",
        corpus.len()
    );
    let mut rows = Vec::new();
    for (id, g) in &corpus {
        let solved = (|| -> widthforge_core::Result<[u32; 7]> {
            Ok([
                width(g, CutKind::Sim)?,
                width(g, CutKind::Mim)?,
                width(g, CutKind::Rank)?,
                width(g, CutKind::Eta)?,
                width(g, CutKind::Mm)?,
                exact_treewidth(g, None)?.0,
                exact_tree_alpha(g, None)?.0,
            ])
        })();
        let [simw, mimw, rw, bw, mmw, tw, ta] = match solved {
            Ok(w) => w,
            Err(e) => {
                rows.push(broken(id, "all width parameters solve", &e));
                continue;
            }
        };
        let m = g.edge_count();
        rows.push(le(id, "simw<=mimw", simw, mimw));
        rows.push(le(id, "mimw<=rw", mimw, rw));
        rows.push(if m >= 2 {
            le(id, "rw<=bw", rw, bw)
        } else {
            skip(id, "rw<=bw", "needs two edges")
        });
        rows.push(le(id, "bw-1<=tw", bw.saturating_sub(1), tw));
        rows.push(if bw >= 2 {
            le(id, "tw<=3bw/2-1", tw, 3 * bw / 2 - 1)
        } else {
            skip(id, "tw<=3bw/2-1", "needs branchwidth 2")
        });
        rows.push(if m >= 2 {
            le(id, "mmw<=bw", mmw, bw)
        } else {
            skip(id, "mmw<=bw", "needs two edges")
        });
        rows.push(le(id, "bw<=tw+1", bw, tw + 1));
        rows.push(if m >= 1 {
            le(id, "tw+1<=3mmw", tw + 1, 3 * mmw)
        } else {
            skip(id, "tw+1<=3mmw", "edgeless")
        });
        rows.push(le(id, "simw<=tree-alpha", simw, ta));
        rows.push(le(id, "tree-alpha<=tw+1", ta, tw + 1));
    }
    SuiteReport { suite: "chains", header, rows }
}

// ---------------------------------------------------------------------------
// monotonicity: vertex deletion and line-graph edge contraction never raise
// sim-width
// ---------------------------------------------------------------------------

fn monotonicity() -> SuiteReport {
    let corpus = edge_corpus(3, 8);
    let header = format!(
        "sim-width monotonicity on all {} isolated-vertex-free graphs with 3..=8 edges",
        corpus.len()
    );
    let mut rows = Vec::new();
    for (id, g) in &corpus {
        match deletion_row(id, g) {
            Ok(row) => rows.push(row),
            Err(e) => rows.push(broken(id, "max_v simw(G-v)<=simw(G)", &e)),
        }
        match contraction_row(id, g) {
            Ok(row) => rows.push(row),
            Err(e) => rows.push(broken(id, "max_e simw(L(G/e))<=simw(L(G))", &e)),
        }
    }
    SuiteReport { suite: "monotonicity", header, rows }
}

fn deletion_row(id: &str, g: &Graph) -> widthforge_core::Result<Row> {
    let base = width(g, CutKind::Sim)?;
    let mut worst = 0;
    for v in 0..g.vertex_count() as u32 {
        worst = worst.max(width(&g.remove_vertex(v)?, CutKind::Sim)?);
    }
    Ok(le(id, "max_v simw(G-v)<=simw(G)", worst, base))
}

fn contraction_row(id: &str, g: &Graph) -> widthforge_core::Result<Row> {
    let base = width(&g.line_graph()?, CutKind::Sim)?;
    let mut worst = 0;
    for (u, v) in g.edges() {
        worst = worst.max(width(&g.contract_edge(u, v)?.line_graph()?, CutKind::Sim)?);
    }
    Ok(le(id, "max_e simw(L(G/e))<=simw(L(G))", worst, base))
}

// ---------------------------------------------------------------------------
// compiler: decomposition-to-tree-decomposition translation stays within its
// advertised independence bound and above the exact optimum
// ---------------------------------------------------------------------------

/// Families beyond the exhaustive corpus: up to 12 vertices each, none with
/// an induced biclique so dense that parameter inference gives up.
fn compiler_families() -> Vec<FamilySpec> {
    vec![
        FamilySpec::new(Family::Path, vec![12]),
        FamilySpec::new(Family::Cycle, vec![9]),
        FamilySpec::new(Family::Cycle, vec![12]),
        FamilySpec::new(Family::Complete, vec![7]),
        FamilySpec::new(Family::Star, vec![11]),
        FamilySpec::new(Family::Biclique, vec![3, 4]),
        FamilySpec::new(Family::Grid, vec![2, 5]),
        FamilySpec::new(Family::Grid, vec![3, 3]),
        FamilySpec::new(Family::Grid, vec![3, 4]),
        FamilySpec::new(Family::Rook, vec![3, 3]),
        FamilySpec::new(Family::Rook, vec![3, 4]),
        FamilySpec::new(Family::MatchedCliques, vec![5]),
        FamilySpec::new(Family::CliquePendants, vec![6]),
        FamilySpec::new(Family::Caterpillar, vec![6]),
        FamilySpec::new(Family::DegeneracyCounterexample, vec![2]),
        FamilySpec::new(Family::DegeneracyCounterexample, vec![3]),
        FamilySpec::seeded(Family::RandomChordal, vec![10], 3),
        FamilySpec::seeded(Family::RandomChordal, vec![12], 1),
        FamilySpec::seeded(Family::RandomChordal, vec![12], 2),
    ]
}

fn compiler_corpus() -> SuiteReport {
    let mut entries = connected_corpus(6);
    for spec in compiler_families() {
        let g = generate(&spec).expect("suite family parameters are valid");
        entries.push((spec.to_string(), g));
    }
    let header = format!(
        "decomposition compilation on {} graphs (all connected graphs with at most 6 \
         vertices plus named families with at most 12)",
        entries.len()
    );
    let mut rows = Vec::new();
    let opts = CompileOptions { check_inputs: true, ..CompileOptions::default() };
    for (id, g) in &entries {
        let bd = match solve_branchwidth(g, CutKind::Mim, &SolveOptions::default()) {
            Ok(report) => report.decomposition,
            Err(e) => {
                rows.push(broken(id, "compiles", &e));
                continue;
            }
        };
        let result = match compile(g, &bd, &opts) {
            Ok(r) => r,
            Err(e) => {
                rows.push(broken(id, "compiles", &e));
                continue;
            }
        };
        rows.push(Row {
            graph: id.clone(),
            check: "compiles".to_string(),
            expected: "valid tree decomposition".to_string(),
            actual: format!("{} bags", result.td.bags().len()),
            pass: true,
        });
        let alpha = match result.td.alpha_of(g) {
            Ok((a, _)) => a,
            Err(e) => {
                rows.push(broken(id, "alpha<bound", &e));
                continue;
            }
        };
        rows.push(if result.warnings.is_empty() {
            lt(id, "alpha<bound", alpha as u64, result.stats.alpha_bound)
        } else {
            skip(id, "alpha<bound", "premise warning")
        });
        rows.push(if g.vertex_count() <= 8 {
            match exact_tree_alpha(g, None) {
                Ok((exact, _)) => ge(id, "alpha>=exact", alpha as u64, exact as u64),
                Err(e) => broken(id, "alpha>=exact", &e),
            }
        } else {
            skip(id, "alpha>=exact", "exact reference capped at 8 vertices")
        });
    }
    SuiteReport { suite: "compiler", header, rows }
}

// ---------------------------------------------------------------------------
// powers: odd powers never raise sim-width, even powers are refused
// ---------------------------------------------------------------------------

fn powers() -> SuiteReport {
    let corpus = connected_corpus(6);
    let header = format!(
        "odd-power sim-width transfer on all {} connected graphs with at most 6 vertices, \
         exponents 3 and 5",
        corpus.len()
    );
    let mut rows = Vec::new();
    for (id, g) in &corpus {
        let base = match solve_branchwidth(g, CutKind::Sim, &SolveOptions::default()) {
            Ok(r) => r,
            Err(e) => {
                rows.push(broken(id, "simw solves", &e));
                continue;
            }
        };
        for r in [3u32, 5] {
            match odd_power_transfer(g, &base.decomposition, r) {
                Ok(report) => {
                    rows.push(le(
                        id,
                        &format!("transferred simw(G^{r})<=simw(G)"),
                        report.powered.value,
                        report.base.value,
                    ));
                    match width(&report.powered_graph, CutKind::Sim) {
                        Ok(fresh) => rows.push(le(
                            id,
                            &format!("solved simw(G^{r})<=simw(G)"),
                            fresh,
                            base.value,
                        )),
                        Err(e) => {
                            rows.push(broken(id, &format!("solved simw(G^{r})<=simw(G)"), &e))
                        }
                    }
                }
                Err(e) => rows.push(broken(id, &format!("transferred simw(G^{r})<=simw(G)"), &e)),
            }
        }
        let refused = matches!(odd_power_transfer(g, &base.decomposition, 2), Err(Error::EvenPower(_)));
        rows.push(Row {
            graph: id.clone(),
            check: "even exponent refused".to_string(),
            expected: "refused".to_string(),
            actual: if refused {
                "refused (odd-only theorem)".to_string()
            } else {
                "accepted".to_string()
            },
            pass: refused,
        });
    }
    SuiteReport { suite: "powers", header, rows }
}

// ---------------------------------------------------------------------------
// line-graphs: mim-width of the line graph against branchwidth
// ---------------------------------------------------------------------------

fn line_graphs() -> SuiteReport {
    let corpus = edge_corpus(1, 9);
    let header = format!(
        "line-graph width bounds on all {} isolated-vertex-free graphs with 1..=9 edges, \
         plus transported decompositions of complete and rook graphs",
        corpus.len()
    );
    let mut rows = Vec::new();
    for (id, g) in &corpus {
        let row = (|| -> widthforge_core::Result<Row> {
            let bw = width(g, CutKind::Eta)?;
            let lm = width(&g.line_graph()?, CutKind::Mim)?;
            Ok(le(id, "mimw(L(G))<=bw(G)", lm, bw))
        })();
        rows.push(row.unwrap_or_else(|e| broken(id, "mimw(L(G))<=bw(G)", &e)));
    }
    for n in 3u32..=6 {
        let id = format!("complete({n})");
        let row = (|| -> widthforge_core::Result<Row> {
            let g = generate(&FamilySpec::new(Family::Complete, vec![n]))?;
            let eta = solve_branchwidth(&g, CutKind::Eta, &SolveOptions::default())?;
            let transported = BranchDecomposition::new(
                eta.decomposition.node_count(),
                eta.decomposition.tree_edges().to_vec(),
                eta.decomposition.element_leaves().to_vec(),
                Ground::Vertices,
            )?;
            let simw = width_of(&g.line_graph()?, &transported, CutKind::Sim)?.value;
            Ok(le(&id, "transported simw(L(K_n))<=ceil(2n/3)", simw, (2 * n + 2) / 3))
        })();
        rows.push(row.unwrap_or_else(|e| broken(&id, "transported simw(L(K_n))<=ceil(2n/3)", &e)));
    }
    for (a, b) in [(2u32, 2u32), (2, 3), (3, 3), (3, 4)] {
        let id = format!("rook({a}, {b})");
        let row = (|| -> widthforge_core::Result<Row> {
            let rook = generate(&FamilySpec::new(Family::Rook, vec![a, b]))?;
            let biclique = generate(&FamilySpec::new(Family::Biclique, vec![a, b]))?;
            let same = canonical_form(&rook) == canonical_form(&biclique.line_graph()?);
            Ok(Row {
                graph: id.clone(),
                check: "rook graph is the biclique's line graph".to_string(),
                expected: "isomorphic".to_string(),
                actual: if same { "isomorphic".to_string() } else { "different".to_string() },
                pass: same,
            })
        })();
        rows.push(row.unwrap_or_else(|e| broken(&id, "rook graph is the biclique's line graph", &e)));
    }
    SuiteReport { suite: "line-graphs", header, rows }
}

// ---------------------------------------------------------------------------
// counterexample: bounded degeneracy caps the matching/induced-matching gap,
// and the witness family shows the cap is tight at every degeneracy
// ---------------------------------------------------------------------------

fn counterexample() -> SuiteReport {
    let exhaustive = all_corpus(7);
    let header = format!(
        "matching vs induced matching under bounded degeneracy: witness family d=1..=4, \
         all {} graphs with at most 7 vertices, and 500 seeded random graphs",
        exhaustive.len()
    );
    let mut rows = Vec::new();
    for d in 1u32..=4 {
        let spec = FamilySpec::new(Family::DegeneracyCounterexample, vec![d]);
        let id = spec.to_string();
        let g = generate(&spec).expect("suite family parameters are valid");
        rows.push(Row {
            graph: id.clone(),
            check: "bipartite".to_string(),
            expected: "two-colourable".to_string(),
            actual: if g.bipartition().is_some() {
                "two-colourable".to_string()
            } else {
                "odd cycle".to_string()
            },
            pass: g.bipartition().is_some(),
        });
        rows.push(eq(&id, "degeneracy=d", g.degeneracy().0, d));
        rows.push(eq(&id, "max matching=2d", max_matching(&g).edges.len() as u32, 2 * d));
        let mim = max_induced_matching(&g, None, MimMode::FullGraph).edges.len() as u32;
        rows.push(eq(&id, "max induced matching=1", mim, 1));
    }
    for (id, g) in &exhaustive {
        rows.push(gap_row(id, g));
    }
    for s in 0..500u64 {
        let mut rng = Lcg64::new(s);
        let n = 8 + (s % 5) as usize;
        let num = 1 + s % 3;
        let mut g = Graph::new(n).expect("vertex count fits");
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if rng.chance(num, 4) {
                    g.add_edge(u, v).expect("fresh edge in range");
                }
            }
        }
        let id = format!("random(n={n}, p={num}/4, seed={s})");
        rows.push(gap_row(&id, &g));
    }
    SuiteReport { suite: "counterexample", header, rows }
}

/// Degeneracy d caps the matching number at (4d-1) times the induced
/// matching number.
fn gap_row(id: &str, g: &Graph) -> Row {
    let (d, _) = g.degeneracy();
    if d == 0 {
        return skip(id, "nu*(4d-1)>=mu", "edgeless");
    }
    let mu = max_matching(g).edges.len() as u64;
    let nu = max_induced_matching(g, None, MimMode::FullGraph).edges.len() as u64;
    ge(id, "nu*(4d-1)>=mu", nu * (4 * d as u64 - 1), mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_clean(report: &SuiteReport) {
        let failures = report.failures();
        assert!(
            failures.is_empty(),
            "{} failures in suite `{}`, first: {:?}",
            failures.len(),
            report.suite,
            failures.first()
        );
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("chainz").is_none());
        for name in SUITE_NAMES {
            // Names resolve; running them here would repeat the slow suites.
            assert!(SUITE_NAMES.contains(&name));
        }
    }

    #[test]
    fn csv_quotes_commas_and_doubles_quotes() {
        let report = SuiteReport {
            suite: "demo",
            header: "demo".to_string(),
            rows: vec![Row {
                graph: "rook(2, 2)".to_string(),
                check: "say \"hi\"".to_string(),
                expected: "<= 1".to_string(),
                actual: "1".to_string(),
                pass: true,
            }],
        };
        let csv = report.csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("graph,check,expected,actual,result"));
        assert_eq!(lines.next(), Some("\"rook(2, 2)\",\"say \"\"hi\"\"\",<= 1,1,pass"));
        assert_eq!(lines.next(), None);
    }

    #[test]
    fn skipped_rows_pass_and_say_why() {
        let row = skip("v1/000", "rw<=bw", "needs two edges");
        assert!(row.pass);
        assert_eq!(row.actual, "skipped (needs two edges)");
        assert_eq!(row.expected, "-");
    }

    #[test]
    #[ignore = "runs the full exhaustive corpus; exercised by the acceptance tests"]
    fn chains_suite_is_clean() {
        assert_clean(&run_suite("chains").unwrap());
    }

    #[test]
    #[ignore = "runs the full exhaustive corpus; exercised by the acceptance tests"]
    fn monotonicity_suite_is_clean() {
        assert_clean(&run_suite("monotonicity").unwrap());
    }

    #[test]
    #[ignore = "runs the full exhaustive corpus; exercised by the acceptance tests"]
    fn compiler_suite_is_clean() {
        assert_clean(&run_suite("compiler").unwrap());
    }

    #[test]
    #[ignore = "runs the full exhaustive corpus; exercised by the acceptance tests"]
    fn powers_suite_is_clean() {
        assert_clean(&run_suite("powers").unwrap());
    }

    #[test]
    #[ignore = "runs the full exhaustive corpus; exercised by the acceptance tests"]
    fn line_graphs_suite_is_clean() {
        assert_clean(&run_suite("line-graphs").unwrap());
    }

    #[test]
    #[ignore = "runs the full exhaustive corpus; exercised by the acceptance tests"]
    fn counterexample_suite_is_clean() {
        assert_clean(&run_suite("counterexample").unwrap());
    }
}
