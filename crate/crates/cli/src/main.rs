//! Command-line surface: every verb is a thin adapter over the library, so
//! CLI results equal direct API calls on the same inputs. File formats are
//! bit-exact and 1-based; see [`widthforge_cli::formats`].
//!
//! Exit codes: 0 success, 1 invariant failure, 2 malformed input, 3 size-cap
//! refusal.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use widthforge_cli::formats;
use widthforge_cli::suites::{run_suite, SuiteReport, SUITE_NAMES};
use widthforge_core::treedec::{exact_tree_alpha, exact_treewidth};
use widthforge_core::{
    compile, generate, odd_power_transfer, perfect_triple_extract, solve_branchwidth, width_of,
    BranchDecomposition, CompileOptions, CutKind, Error, FamilySpec, Graph, Ground, SolveOptions,
    TreeDecomposition,
};

#[derive(Parser)]
#[command(
    name = "widthforge",
    version,
    about = "Exact width parameters for small graphs: solvers, decomposition transforms, \
             and verification suites"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Evaluate a branch decomposition file against a graph file.
    Width {
        /// Graph file (DIMACS-style `p edge` format).
        graph: PathBuf,
        /// Branch decomposition file (`s bd` format).
        bd: PathBuf,
        /// Cut function: eta, mm, mim, sim, or rank.
        #[arg(long)]
        kind: String,
        /// Also print one line per tree edge with its cut value.
        #[arg(long)]
        per_edge: bool,
    },
    /// Solve a width parameter exactly; optionally write the witness.
    Solve {
        /// Graph file (DIMACS-style `p edge` format).
        graph: PathBuf,
        /// eta, mm, mim, sim, rank, tw (treewidth), or talpha (tree-independence).
        #[arg(long)]
        kind: String,
        /// Per-component element cap (overrides WIDTHFORGE_CAP and the default).
        #[arg(long)]
        cap: Option<u32>,
        /// Disable the lower-bound pruning inside the solver.
        #[arg(long)]
        no_prune: bool,
        /// Write the witness decomposition here instead of discarding it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compile a branch decomposition into a tree decomposition.
    CompileTd {
        /// Graph file (DIMACS-style `p edge` format).
        graph: PathBuf,
        /// Branch decomposition file over the vertex set.
        bd: PathBuf,
        /// Forbidden-biclique parameters; inferred from the graph when absent.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        /// Strict bound on the decomposition's induced-matching width;
        /// inferred (solved) when absent.
        #[arg(long)]
        k: Option<u32>,
        /// Verify the premises; violations are reported as warnings.
        #[arg(long)]
        check_inputs: bool,
        /// Cross-check every incremental refresh against a full recompute (slow).
        #[arg(long)]
        full_recompute: bool,
        /// Write the tree decomposition here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the key=value statistics sidecar here instead of stderr.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Re-evaluate a sim decomposition on an odd power of the graph.
    Power {
        /// Graph file (DIMACS-style `p edge` format).
        graph: PathBuf,
        /// Branch decomposition file over the vertex set.
        bd: PathBuf,
        /// Odd exponent (even exponents are refused).
        #[arg(short = 'r', long)]
        exponent: u32,
        /// Write the powered graph here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a named graph family, e.g. `rook(3,3)` or `random-chordal(8,7)`.
    Gen {
        /// Family spec: name(params...), seed last for seeded families.
        spec: String,
        /// Write the graph here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the line graph of a graph file.
    Line {
        /// Graph file (DIMACS-style `p edge` format).
        graph: PathBuf,
        /// Write the line graph here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and report CSV rows.
    Verify {
        /// chains, monotonicity, compiler, powers, line-graphs,
        /// counterexample, or all.
        suite: String,
        /// Write the CSV here (single suite only); stdout otherwise.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write one CSV per suite into this directory.
        #[arg(long)]
        csv_dir: Option<PathBuf>,
    },
    /// Extract a crossing induced matching from one cut of an edge-set
    /// branch decomposition.
    Triple {
        /// Graph file (DIMACS-style `p edge` format).
        graph: PathBuf,
        /// Branch decomposition file over the edge set.
        bd: PathBuf,
        /// The tree edge whose cut is used: two 1-based tree node ids.
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        edge: Vec<u32>,
        /// How many matching pairs to extract.
        #[arg(long)]
        target: u32,
    },
}

/// What went wrong, sorted by exit code.
enum Failure {
    /// A checked invariant failed (exit 1).
    Invariant(String),
    /// Malformed input or violated precondition (exit 2).
    Input(String),
    /// Well-formed input refused by a size cap (exit 3).
    Refusal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invariant(_) => 1,
            Failure::Input(_) => 2,
            Failure::Refusal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invariant(m) | Failure::Input(m) | Failure::Refusal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        if e.is_refusal() {
            Failure::Refusal(e.to_string())
        } else if matches!(e, Error::Internal(_)) {
            Failure::Invariant(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.verb {
        Verb::Width { graph, bd, kind, per_edge } => cmd_width(&graph, &bd, &kind, per_edge),
        Verb::Solve { graph, kind, cap, no_prune, out } => {
            cmd_solve(&graph, &kind, cap, no_prune, out.as_deref())
        }
        Verb::CompileTd {
            graph,
            bd,
            n,
            m,
            k,
            check_inputs,
            full_recompute,
            out,
            stats,
        } => {
            let opts = CompileOptions { n, m, k, check_inputs, full_recompute };
            cmd_compile(&graph, &bd, &opts, out.as_deref(), stats.as_deref())
        }
        Verb::Power { graph, bd, exponent, out } => {
            cmd_power(&graph, &bd, exponent, out.as_deref())
        }
        Verb::Gen { spec, out } => cmd_gen(&spec, out.as_deref()),
        Verb::Line { graph, out } => cmd_line(&graph, out.as_deref()),
        Verb::Verify { suite, csv, csv_dir } => {
            cmd_verify(&suite, csv.as_deref(), csv_dir.as_deref())
        }
        Verb::Triple { graph, bd, edge, target } => cmd_triple(&graph, &bd, &edge, target),
    }
}

// ---------------------------------------------------------------------------
// File plumbing
// ---------------------------------------------------------------------------

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Write to the file when a path is given, otherwise print to stdout.
fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    formats::parse_graph(&read_file(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_bd(path: &Path, ground: Ground) -> Result<BranchDecomposition, Failure> {
    formats::parse_bd(&read_file(path)?, ground)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Resolve the solver cap: explicit flag, then WIDTHFORGE_CAP, then the
/// kind's default (`None`).
fn cap_override(flag: Option<u32>) -> Result<Option<u32>, Failure> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("WIDTHFORGE_CAP") {
        Ok(value) => value.trim().parse::<u32>().map(Some).map_err(|_| {
            Failure::Input(format!("WIDTHFORGE_CAP=`{value}` is not a non-negative integer"))
        }),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(Failure::Input(format!("WIDTHFORGE_CAP: {e}"))),
    }
}

// ---------------------------------------------------------------------------
// Verbs
// ---------------------------------------------------------------------------

fn cmd_width(graph: &Path, bd: &Path, kind: &str, per_edge: bool) -> Result<(), Failure> {
    let kind = CutKind::from_str(kind)?;
    let g = load_graph(graph)?;
    let dec = load_bd(bd, kind.ground())?;
    let report = width_of(&g, &dec, kind)?;
    println!("kind = {}", report.kind.name());
    println!("width = {}", report.value);
    if let Some((a, b)) = report.worst_edge {
        println!("worst tree edge = {} {}", a + 1, b + 1);
    }
    if per_edge {
        for ((a, b), value) in &report.per_edge {
            println!("e {} {} : {value}", a + 1, b + 1);
        }
    }
    Ok(())
}

fn cmd_solve(
    graph: &Path,
    kind: &str,
    cap: Option<u32>,
    no_prune: bool,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let g = load_graph(graph)?;
    let cap = cap_override(cap)?;
    match kind {
        "tw" | "treewidth" => {
            let (value, td) = exact_treewidth(&g, cap)?;
            println!("kind = treewidth");
            println!("width = {value}");
            if let Some(path) = out {
                write_file(path, &formats::serialize_td(&td, g.vertex_count()))?;
            }
        }
        "talpha" | "tree-alpha" => {
            let (value, td) = exact_tree_alpha(&g, cap)?;
            println!("kind = tree-independence");
            println!("width = {value}");
            if let Some(path) = out {
                write_file(path, &formats::serialize_td(&td, g.vertex_count()))?;
            }
        }
        other => {
            let kind = CutKind::from_str(other)?;
            let opts = SolveOptions { cap, prune: !no_prune };
            let report = solve_branchwidth(&g, kind, &opts)?;
            println!("kind = {}", report.kind.name());
            println!("width = {}", report.value);
            if let Some((a, b)) = report.worst_edge {
                println!("worst tree edge = {} {}", a + 1, b + 1);
            }
            if let Some(path) = out {
                write_file(path, &formats::serialize_bd(&report.decomposition))?;
            }
        }
    }
    Ok(())
}

fn cmd_compile(
    graph: &Path,
    bd: &Path,
    opts: &CompileOptions,
    out: Option<&Path>,
    stats: Option<&Path>,
) -> Result<(), Failure> {
    let g = load_graph(graph)?;
    let dec = load_bd(bd, Ground::Vertices)?;
    let result = compile(&g, &dec, opts)?;
    emit(out, &formats::serialize_td(&result.td, g.vertex_count()))?;
    let sidecar = stats_sidecar(&result.td, &result);
    match stats {
        Some(path) => write_file(path, &sidecar)?,
        None => eprint!("{sidecar}"),
    }
    Ok(())
}

fn stats_sidecar(td: &TreeDecomposition, result: &widthforge_core::CompileResult) -> String {
    let s = &result.stats;
    let mut text = String::new();
    let _ = writeln!(text, "steps={}", s.steps);
    let _ = writeln!(text, "independent_growth_steps={}", s.independent_growth_steps);
    let _ = writeln!(text, "plain_growth_steps={}", s.plain_growth_steps);
    let _ = writeln!(text, "n={}", s.n);
    let _ = writeln!(text, "m={}", s.m);
    let _ = writeln!(text, "k={}", s.k);
    let _ = writeln!(text, "alpha_bound={}", s.alpha_bound);
    let _ = writeln!(text, "bags={}", td.bags().len());
    let _ = writeln!(text, "warnings={}", result.warnings.len());
    for w in &result.warnings {
        let _ = writeln!(text, "warning={w}");
    }
    text
}

fn cmd_power(graph: &Path, bd: &Path, exponent: u32, out: Option<&Path>) -> Result<(), Failure> {
    let g = load_graph(graph)?;
    let dec = load_bd(bd, Ground::Vertices)?;
    let report = odd_power_transfer(&g, &dec, exponent)?;
    println!("exponent = {}", report.exponent);
    println!("base simw = {}", report.base.value);
    println!("powered simw = {}", report.powered.value);
    if let Some(path) = out {
        write_file(path, &formats::serialize_graph(&report.powered_graph))?;
    }
    Ok(())
}

fn cmd_gen(spec: &str, out: Option<&Path>) -> Result<(), Failure> {
    let spec = FamilySpec::from_str(spec)?;
    let g = generate(&spec)?;
    emit(out, &formats::serialize_graph(&g))
}

fn cmd_line(graph: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let g = load_graph(graph)?;
    emit(out, &formats::serialize_graph(&g.line_graph()?))
}

fn cmd_verify(suite: &str, csv: Option<&Path>, csv_dir: Option<&Path>) -> Result<(), Failure> {
    let names: Vec<&str> = if suite == "all" {
        SUITE_NAMES.to_vec()
    } else if SUITE_NAMES.contains(&suite) {
        vec![suite]
    } else {
        return Err(Failure::Input(format!(
            "unknown suite `{suite}` (expected one of: {}, or all)",
            SUITE_NAMES.join(", ")
        )));
    };
    if csv.is_some() && names.len() > 1 {
        return Err(Failure::Input(
            "--csv holds a single suite; use --csv-dir with `all`".to_string(),
        ));
    }
    if let Some(dir) = csv_dir {
        fs::create_dir_all(dir)
            .map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    }
    let mut failed = 0usize;
    for name in names {
        let report = run_suite(name).expect("names validated above");
        match (csv, csv_dir) {
            (_, Some(dir)) => write_file(&dir.join(format!("{name}.csv")), &report.csv())?,
            (Some(path), None) => write_file(path, &report.csv())?,
            (None, None) => print!("{}", report.csv()),
        }
        failed += summarize(&report);
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Invariant(format!("{failed} checks failed")))
    }
}

/// Print the per-suite summary and first failures to stderr; return the
/// failure count.
fn summarize(report: &SuiteReport) -> usize {
    let failures = report.failures();
    let skipped = report
        .rows
        .iter()
        .filter(|r| r.actual.starts_with("skipped ("))
        .count();
    eprintln!(
        "suite {}: {} — {} rows, {} skipped, {} failures — {}",
        report.suite,
        report.header,
        report.rows.len(),
        skipped,
        failures.len(),
        if failures.is_empty() { "PASS" } else { "FAIL" }
    );
    for row in failures.iter().take(20) {
        eprintln!(
            "  FAIL {} {}: expected {}, got {}",
            row.graph, row.check, row.expected, row.actual
        );
    }
    if failures.len() > 20 {
        eprintln!("  ... and {} more", failures.len() - 20);
    }
    failures.len()
}

fn cmd_triple(graph: &Path, bd: &Path, edge: &[u32], target: u32) -> Result<(), Failure> {
    let [i, j] = edge else {
        return Err(Failure::Input("pass --edge exactly once with two ids".to_string()));
    };
    if *i == 0 || *j == 0 {
        return Err(Failure::Input("tree node ids are 1-based".to_string()));
    }
    let g = load_graph(graph)?;
    let dec = load_bd(bd, Ground::Edges)?;
    let (triple, matching) = perfect_triple_extract(&g, &dec, (i - 1, j - 1), target)?;
    println!("size = {}", triple.size());
    println!("anchors = {}", ids_1based(&triple.anchors));
    println!("left = {}", ids_1based(&triple.left));
    println!("right = {}", ids_1based(&triple.right));
    for (a, b) in &matching.edges {
        // 1-based edge indices in graph file order, cut side first.
        println!("pair = e{} e{}", a + 1, b + 1);
    }
    Ok(())
}

fn ids_1based(ids: &[u32]) -> String {
    ids.iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
