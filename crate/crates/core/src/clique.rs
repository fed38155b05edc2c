//! Cayley graphs `Cay(F_p, Z_d)` and exact maximum cliques.
//!
//! The search is a branch and bound over bit-set candidate rows. Vertices are
//! branched on in ascending order and pruned with greedy-colouring bounds
//! computed over candidate suffixes, so the first maximum clique reached is
//! the lexicographically smallest one.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Undirected simple graph on `0..n` with one adjacency bit set per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitGraph {
    rows: Vec<BitSet>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        BitGraph { rows: vec![BitSet::new(n); n] }
    }

    pub fn from_rows(rows: Vec<BitSet>) -> Self {
        BitGraph { rows }
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-loop");
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &BitSet {
        &self.rows[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].count()
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| u < self.order() && vertices[i + 1..].iter().all(|&v| u != v && self.adjacent(u, v)))
    }

    /// Induced subgraph on `vertices`, relabelled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> BitGraph {
        let n = vertices.len();
        let rows = vertices
            .iter()
            .map(|&u| BitSet::from_indices(n, (0..n).filter(|&j| self.adjacent(u, vertices[j]))))
            .collect();
        BitGraph { rows }
    }
}

/// `Cay(F_p, Z_d)`: `x ~ y` iff `x - y ∈ Z_d`. For `d = (p-1)/2` with
/// `p ≡ 1 (mod 4)` this is the Paley graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyGraph {
    field: PrimeField,
    d: u64,
    graph: BitGraph,
}

pub fn build_cayley(field: PrimeField, d: u64) -> Result<CayleyGraph> {
    field.check_divisor(d)?;
    if d % 2 == 1 {
        return Err(Error::OddSubgroupOrder(d));
    }
    field.check_proper_divisor(d)?;
    let connection = field.subgroup(d)?;
    // -1 ∈ Z_d, so row x is Z_d translated by x
    let rows = (0..field.size()).map(|x| connection.members().rotate(x)).collect();
    Ok(CayleyGraph { field, d, graph: BitGraph { rows } })
}

impl CayleyGraph {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn connection_order(&self) -> u64 {
        self.d
    }

    pub fn graph(&self) -> &BitGraph {
        &self.graph
    }

    pub fn is_paley(&self) -> bool {
        let p = self.field.modulus() as u64;
        p % 4 == 1 && self.d == (p - 1) / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueResult {
    pub omega: usize,
    /// Sorted; the lexicographically smallest maximum clique when `exact`.
    pub witness: Vec<usize>,
    pub explored_nodes: u64,
    /// `false` when the node budget ran out; `omega` is then a lower bound.
    pub exact: bool,
}

impl CliqueResult {
    pub fn require_exact(self) -> Result<CliqueResult> {
        if self.exact {
            Ok(self)
        } else {
            Err(Error::BudgetExceeded { explored_nodes: self.explored_nodes })
        }
    }
}

struct Search<'g> {
    graph: &'g BitGraph,
    budget: Option<u64>,
    nodes: u64,
    current: Vec<usize>,
    best: Vec<usize>,
    aborted: bool,
}

impl Search<'_> {
    fn expand(&mut self, candidates: &BitSet) {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            self.aborted = true;
            return;
        }
        if candidates.is_empty() {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        let vertices: Vec<usize> = candidates.iter().collect();
        let bounds = self.suffix_colour_bounds(&vertices);
        for (i, &v) in vertices.iter().enumerate() {
            if self.current.len() + bounds[i] <= self.best.len() {
                break;
            }
            let mut next = candidates.intersection(self.graph.neighbors(v));
            next.clear_through(v);
            self.current.push(v);
            self.expand(&next);
            self.current.pop();
            if self.aborted {
                return;
            }
        }
    }

    /// `bounds[i]` = colours used by a greedy colouring of `vertices[i..]`,
    /// colouring from the largest vertex down.
    fn suffix_colour_bounds(&self, vertices: &[usize]) -> Vec<usize> {
        let mut classes: Vec<BitSet> = Vec::new();
        let mut bounds = vec![0; vertices.len()];
        let n = self.graph.order();
        for (i, &v) in vertices.iter().enumerate().rev() {
            let row = self.graph.neighbors(v);
            match classes.iter_mut().find(|c| c.is_disjoint(row)) {
                Some(c) => c.insert(v),
                None => classes.push(BitSet::from_indices(n, [v])),
            }
            bounds[i] = classes.len();
        }
        bounds
    }
}

/// Exact maximum clique of an arbitrary graph (or a lower bound if `budget`
/// search nodes are not enough).
pub fn max_clique(graph: &BitGraph, budget: Option<u64>) -> CliqueResult {
    let mut search = Search { graph, budget, nodes: 0, current: Vec::new(), best: Vec::new(), aborted: false };
    search.expand(&BitSet::full(graph.order()));
    let result = CliqueResult {
        omega: search.best.len(),
        witness: search.best,
        explored_nodes: search.nodes,
        exact: !search.aborted,
    };
    assert!(graph.is_clique(&result.witness), "clique witness failed re-validation");
    result
}

/// Clique number of a Cayley graph.
///
/// `x ↦ λx + t` with `λ ∈ Z_d` is an automorphism and moves any edge onto
/// `{0, 1}`, so some maximum clique contains `0` and `1`, and therefore so
/// does the lexicographically smallest one. The search runs on the common
/// neighbourhood of `0` and `1`.
pub fn clique_number(cayley: &CayleyGraph, budget: Option<u64>) -> CliqueResult {
    let g = &cayley.graph;
    let mut root = g.neighbors(0).intersection(g.neighbors(1));
    root.clear_through(1);
    let labels: Vec<usize> = root.iter().collect();
    let local = max_clique(&g.induced(&labels), budget);
    let mut witness = vec![0, 1];
    witness.extend(local.witness.iter().map(|&i| labels[i]));
    assert!(g.is_clique(&witness), "clique witness failed re-validation");
    CliqueResult { omega: witness.len(), witness, explored_nodes: local.explored_nodes, exact: local.exact }
}

/// Comparison of an exact clique number with `ω(ω-1) <= d` and, for Paley
/// graphs, with `ω <= (√(2p-1)+1)/2` and the older `√(p-4)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CliqueBoundReport {
    pub p: u64,
    pub d: u64,
    pub omega: usize,
    /// `(1 + √(4d+1))/2`, the largest real `ω` with `ω(ω-1) <= d`.
    pub paper_bound: f64,
    /// `√(p-4)`, only reported for Paley graphs.
    pub old_bound: Option<f64>,
    pub tight: bool,
}

impl CliqueBoundReport {
    pub fn slack_vs_old(&self) -> Option<f64> {
        self.old_bound.map(|b| b - self.omega as f64)
    }
}

pub fn check_clique_bounds(p: u64, d: u64, result: &CliqueResult) -> Result<CliqueBoundReport> {
    if !result.exact {
        return Err(Error::NotExact);
    }
    let w = result.omega as u64;
    if w * w.saturating_sub(1) > d {
        return Err(Error::BoundViolated("ω(ω-1) <= d"));
    }
    let paley = p % 4 == 1 && d == (p - 1) / 2;
    if paley && (2 * w).saturating_sub(1).pow(2) > 2 * p - 1 {
        return Err(Error::BoundViolated("ω(G_p) <= (√(2p-1)+1)/2"));
    }
    Ok(CliqueBoundReport {
        p,
        d,
        omega: result.omega,
        paper_bound: (1.0 + libm::sqrt((4 * d + 1) as f64)) / 2.0,
        old_bound: paley.then(|| libm::sqrt((p - 4) as f64)),
        tight: w * w.saturating_sub(1) == d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn cayley_examples() {
        let c5 = build_cayley(f(5), 2).unwrap();
        for x in 0..5 {
            let row: Vec<usize> = c5.graph().neighbors(x).iter().collect();
            let mut want = vec![(x + 1) % 5, (x + 4) % 5];
            want.sort();
            assert_eq!(row, want);
        }
        let g13 = build_cayley(f(13), 6).unwrap();
        assert!(g13.is_paley());
        assert!((0..13).all(|x| g13.graph().degree(x) == 6 && !g13.graph().adjacent(x, x)));
        assert!((0..13).all(|x| (0..13).all(|y| g13.graph().adjacent(x, y) == g13.graph().adjacent(y, x))));
        assert_eq!(build_cayley(f(13), 3), Err(Error::OddSubgroupOrder(3)));
        assert_eq!(build_cayley(f(13), 5), Err(Error::NotDivisor { d: 5, order: 12 }));
        assert_eq!(build_cayley(f(13), 12), Err(Error::NotProperDivisor { d: 12, p: 13 }));
    }

    #[test]
    fn clique_examples() {
        let r5 = clique_number(&build_cayley(f(5), 2).unwrap(), None);
        assert_eq!((r5.omega, r5.witness.clone()), (2, vec![0, 1]));
        let r13 = clique_number(&build_cayley(f(13), 6).unwrap(), None);
        assert_eq!((r13.omega, r13.witness.clone()), (3, vec![0, 1, 4]));
        let r17 = clique_number(&build_cayley(f(17), 8).unwrap(), None);
        assert_eq!(r17.omega, 3);
        assert!(r17.exact);
    }

    #[test]
    fn generic_search_finds_lexicographic_minimum() {
        // two triangles {1,2,3} and {0,4,5}; {0,4,5} is lexicographically first
        let mut g = BitGraph::new(6);
        for (u, v) in [(1, 2), (2, 3), (1, 3), (0, 4), (4, 5), (0, 5), (3, 4)] {
            g.add_edge(u, v);
        }
        let r = max_clique(&g, None);
        assert_eq!(r.witness, vec![0, 4, 5]);
        assert_eq!(max_clique(&BitGraph::new(0), None).omega, 0);
        assert_eq!(max_clique(&BitGraph::new(3), None).omega, 1);
    }

    #[test]
    fn budget_yields_a_flagged_lower_bound() {
        let g = build_cayley(f(101), 50).unwrap();
        let r = clique_number(&g, Some(3));
        assert!(!r.exact);
        assert!(r.omega >= 2);
        assert!(g.graph().is_clique(&r.witness));
        assert_eq!(r.clone().require_exact(), Err(Error::BudgetExceeded { explored_nodes: r.explored_nodes }));
        assert_eq!(check_clique_bounds(101, 50, &r), Err(Error::NotExact));
    }

    #[test]
    fn bound_report_examples() {
        let exact = |omega| CliqueResult { omega, witness: Vec::new(), explored_nodes: 0, exact: true };
        let r = check_clique_bounds(13, 6, &exact(3)).unwrap();
        assert!(r.tight && (r.paper_bound - 3.0).abs() < 1e-12);
        let r = check_clique_bounds(5, 2, &exact(2)).unwrap();
        assert!(r.tight && (r.paper_bound - 2.0).abs() < 1e-12);
        let r = check_clique_bounds(17, 8, &exact(3)).unwrap();
        assert!(!r.tight && (r.paper_bound - (1.0 + libm::sqrt(33.0)) / 2.0).abs() < 1e-12);
        assert!((r.old_bound.unwrap() - libm::sqrt(13.0)).abs() < 1e-12);
        assert!(check_clique_bounds(13, 6, &exact(4)).is_err());
        assert_eq!(check_clique_bounds(13, 4, &exact(2)).unwrap().old_bound, None);
    }
}
