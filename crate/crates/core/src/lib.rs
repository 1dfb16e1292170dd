//! Exact algorithms for branch decompositions and the width parameters they
//! induce (maximum-matching, induced-matching, semi-induced-matching, GF(2)
//! rank and boundary cut functions), plus tree decompositions measured by
//! bag independence number.
//!
//! Everything here is exact and deliberately small-scale: the NP-hard
//! subroutines carry explicit ground-set caps and refuse larger inputs
//! instead of approximating. All randomness flows through [`rng::Lcg64`], a
//! fixed linear-congruential generator, so corpora are reproducible across
//! machines and implementations.

pub mod bits;
pub mod branch;
pub mod brute;
pub mod compiler;
pub mod constructions;
pub mod cut;
pub mod enumerate;
pub mod error;
pub mod generators;
pub mod graph;
pub mod matching;
pub mod rng;
pub mod treedec;

pub use branch::{solve_branchwidth, width_of, BranchDecomposition, SolveOptions, WidthReport};
pub use compiler::{
    compile, extract_matching_or_biclique, extract_semi_matching, BicliqueOrMatching,
    CompileOptions, CompileResult, CompileStats,
};
pub use constructions::{
    caterpillar_bd, odd_power_transfer, perfect_triple_extract, rook_caterpillar_bd,
    PerfectTriple, PowerTransferReport,
};
pub use cut::{CutFunction, CutKind, Ground};
pub use error::Error;
pub use generators::{generate, verify_family, Family, FamilySpec};
pub use graph::{Graph, Label, VertexId};
pub use matching::{Matching, MatchingKind};
pub use treedec::TreeDecomposition;

pub type Result<T> = std::result::Result<T, Error>;
