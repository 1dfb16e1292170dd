//! The five symmetric cut functions. Each maps one side of a bipartition of
//! the ground set (vertices, or edges for the boundary count) to a
//! non-negative value; all five are symmetric under complementation, which
//! `assert_symmetry` spot-checks.

use crate::bits;
use crate::error::Error;
use crate::graph::Graph;
use crate::matching::{self, MimMode};
use crate::Result;

/// What the elements of a ground set are.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ground {
    Vertices,
    Edges,
}

/// The five cut functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutKind {
    /// Boundary size: vertices incident to edges on both sides of an edge
    /// bipartition.
    Eta,
    /// Maximum matching of the crossing bipartite graph.
    Mm,
    /// Maximum induced matching of the crossing bipartite graph.
    Mim,
    /// Maximum induced matching between the sides, with both endpoint sides
    /// independent in the whole graph.
    Sim,
    /// GF(2) rank of the crossing bipartite adjacency matrix.
    Rank,
}

impl CutKind {
    pub const ALL: [CutKind; 5] = [CutKind::Eta, CutKind::Mm, CutKind::Mim, CutKind::Sim, CutKind::Rank];

    pub fn ground(self) -> Ground {
        match self {
            CutKind::Eta => Ground::Edges,
            _ => Ground::Vertices,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CutKind::Eta => "eta",
            CutKind::Mm => "mm",
            CutKind::Mim => "mim",
            CutKind::Sim => "sim",
            CutKind::Rank => "rank",
        }
    }

    /// Default per-component solver cap: the exponential-table DP stays
    /// comfortable up to here. Overridable per call.
    pub fn default_cap(self) -> u32 {
        match self {
            CutKind::Mim | CutKind::Sim => 12,
            _ => 16,
        }
    }
}

impl std::str::FromStr for CutKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<CutKind> {
        CutKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown cut function `{s}` (eta, mm, mim, sim, rank)")))
    }
}

/// A cut function bound to a graph. Evaluation is pure; the dense tables the
/// solver builds are its memo, keyed by the subset's bit representation.
pub struct CutFunction<'g> {
    pub kind: CutKind,
    graph: &'g Graph,
    edges: Vec<(u32, u32)>,
}

impl<'g> CutFunction<'g> {
    pub fn new(kind: CutKind, graph: &'g Graph) -> Self {
        CutFunction { kind, graph, edges: graph.edges() }
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    /// Number of ground-set elements.
    pub fn element_count(&self) -> usize {
        match self.kind.ground() {
            Ground::Vertices => self.graph.vertex_count(),
            Ground::Edges => self.edges.len(),
        }
    }

    /// Evaluate on an explicit element list (one side of the bipartition).
    pub fn evaluate(&self, side: &[u32]) -> Result<u32> {
        let count = self.element_count();
        for &e in side {
            if e as usize >= count {
                return Err(Error::ElementOutOfRange(e, count));
            }
        }
        Ok(self.evaluate_mask(bits::mask_of(side)))
    }

    /// Evaluate on a bitmask over element indices. Bits at or above the
    /// element count are ignored.
    pub fn evaluate_mask(&self, side: u128) -> u32 {
        match self.kind {
            CutKind::Eta => {
                let side = side & bits::full(self.edges.len());
                let mut left = 0u128;
                let mut right = 0u128;
                for (i, &(u, v)) in self.edges.iter().enumerate() {
                    let m = bits::bit(u) | bits::bit(v);
                    if side >> i & 1 == 1 {
                        left |= m;
                    } else {
                        right |= m;
                    }
                }
                (left & right).count_ones()
            }
            CutKind::Mm => matching::cut_matching_size(self.graph, side & self.graph.all_vertices_mask()),
            CutKind::Mim => matching::induced_matching_size(
                self.graph,
                Some(side & self.graph.all_vertices_mask()),
                MimMode::BipartiteCut,
            ),
            CutKind::Sim => matching::induced_matching_size(
                self.graph,
                Some(side & self.graph.all_vertices_mask()),
                MimMode::FullGraph,
            ),
            CutKind::Rank => {
                let side = side & self.graph.all_vertices_mask();
                let mut rows: Vec<u128> =
                    bits::ones(side).map(|v| self.graph.neighbors_mask(v) & !side).collect();
                let mut rank = 0usize;
                for col in 0..self.graph.vertex_count() as u32 {
                    let Some(p) = (rank..rows.len()).find(|&r| bits::contains(rows[r], col)) else {
                        continue;
                    };
                    rows.swap(rank, p);
                    let pivot = rows[rank];
                    for r in rows.iter_mut().skip(rank + 1) {
                        if bits::contains(*r, col) {
                            *r ^= pivot;
                        }
                    }
                    rank += 1;
                }
                rank as u32
            }
        }
    }

    fn universe(&self) -> u128 {
        bits::full(self.element_count())
    }
}

/// Result of spot-checking f(X) = f(complement X).
#[derive(Debug)]
pub struct SymmetryReport {
    pub checked: usize,
    /// (side, value, complement value) for each violation found.
    pub violations: Vec<(Vec<u32>, u32, u32)>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluate each sample side and its complement; they must agree.
pub fn assert_symmetry(f: &CutFunction, sides: &[Vec<u32>]) -> Result<SymmetryReport> {
    let mut report = SymmetryReport { checked: 0, violations: Vec::new() };
    for side in sides {
        let a = f.evaluate(side)?;
        let mask = bits::mask_of(side);
        let b = f.evaluate_mask(f.universe() & !mask);
        report.checked += 1;
        if a != b {
            report.violations.push((side.clone(), a, b));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n as u32 - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn boundary_counts_shared_endpoints() {
        let p3 = path(3);
        let f = CutFunction::new(CutKind::Eta, &p3);
        assert_eq!(f.element_count(), 2);
        assert_eq!(f.evaluate(&[0]).unwrap(), 1);
        assert_eq!(f.evaluate(&[]).unwrap(), 0);
        assert_eq!(f.evaluate(&[0, 1]).unwrap(), 0);
    }

    #[test]
    fn matching_kinds_disagree_exactly_where_expected() {
        let p4 = path(4);
        let side = vec![1u32, 2];
        assert_eq!(CutFunction::new(CutKind::Mm, &p4).evaluate(&side).unwrap(), 2);
        assert_eq!(CutFunction::new(CutKind::Mim, &p4).evaluate(&side).unwrap(), 2);
        assert_eq!(CutFunction::new(CutKind::Sim, &p4).evaluate(&side).unwrap(), 1);
        assert_eq!(CutFunction::new(CutKind::Rank, &p4).evaluate(&side).unwrap(), 2);
    }

    #[test]
    fn rank_collapses_on_complete_crossings() {
        let k33 =
            Graph::from_edges(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)])
                .unwrap();
        let side = vec![0u32, 1, 2];
        assert_eq!(CutFunction::new(CutKind::Rank, &k33).evaluate(&side).unwrap(), 1);
        assert_eq!(CutFunction::new(CutKind::Mm, &k33).evaluate(&side).unwrap(), 3);
        assert_eq!(CutFunction::new(CutKind::Mim, &k33).evaluate(&side).unwrap(), 1);
        assert_eq!(CutFunction::new(CutKind::Sim, &k33).evaluate(&side).unwrap(), 1);
    }

    #[test]
    fn out_of_range_elements_are_rejected() {
        let p3 = path(3);
        let f = CutFunction::new(CutKind::Eta, &p3);
        assert!(matches!(f.evaluate(&[2]), Err(Error::ElementOutOfRange(2, 2))));
        let f = CutFunction::new(CutKind::Sim, &p3);
        assert!(matches!(f.evaluate(&[3]), Err(Error::ElementOutOfRange(3, 3))));
    }

    #[test]
    fn all_kinds_are_symmetric_on_samples() {
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        for kind in CutKind::ALL {
            let f = CutFunction::new(kind, &c5);
            let n = f.element_count() as u32;
            let samples: Vec<Vec<u32>> =
                (0..n).map(|i| (0..=i).collect()).chain([vec![], vec![0, 2]]).collect();
            let report = assert_symmetry(&f, &samples).unwrap();
            assert!(report.passed(), "{kind:?}: {:?}", report.violations);
            assert_eq!(report.checked, samples.len());
        }
    }

    #[test]
    fn agrees_with_the_subset_oracle_on_a_mixed_graph() {
        // Paw graph plus pendant: triangle 0-1-2, tail 2-3-4.
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap();
        for kind in CutKind::ALL {
            let f = CutFunction::new(kind, &g);
            let n = f.element_count();
            for side in 0u128..1 << n {
                assert_eq!(
                    f.evaluate_mask(side),
                    crate::brute::cut_value(&g, kind, side),
                    "{kind:?} side {side:#b}"
                );
            }
        }
    }
}
