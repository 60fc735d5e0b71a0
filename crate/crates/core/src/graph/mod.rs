//! Dense simple graphs with bit-row adjacency, SRG recognition, cliques,
//! automorphisms and isomorphism.

mod bits;
mod clique;
mod fingerprint;
mod refine;
mod search;
mod srg;

pub use bits::BitSet;
pub use clique::{count_cliques, count_cliques_with_symmetry};
pub use fingerprint::{invariant_fingerprint, Fingerprint, PairProfile, TRIANGLE_PROFILE_MAX_ORDER};
pub use search::{
    are_isomorphic, automorphism_group, automorphism_group_with_known, find_isomorphism, find_isomorphism_with_aut,
    AutomorphismResult, SearchBudget, SearchError,
};
pub use srg::{Eigenvalues, FeasibilityError, Regularity, Spectrum, SrgParams};

use alloc::vec::Vec;

use crate::perm::Permutation;

/// Simple undirected graph on `0..v` with dense bit rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    v: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn empty(v: usize) -> Self {
        let words = v.div_ceil(64).max(1);
        Graph { v, words, rows: alloc::vec![0; v * words] }
    }

    pub fn complete(v: usize) -> Self {
        let mut g = Graph::empty(v);
        for i in 0..v {
            for j in 0..v {
                if i != j {
                    g.set(i, j);
                }
            }
        }
        g
    }

    pub fn cycle(v: usize) -> Self {
        let mut g = Graph::empty(v);
        for i in 0..v {
            g.add_edge(i, (i + 1) % v);
        }
        g
    }

    pub fn from_edges(v: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(v);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    /// Builds a graph from a predicate on unordered pairs `i < j`.
    pub fn from_fn<F: FnMut(usize, usize) -> bool>(v: usize, mut adjacent: F) -> Self {
        let mut g = Graph::empty(v);
        for i in 0..v {
            for j in i + 1..v {
                if adjacent(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Builds a graph from a symmetric 0/1 matrix with zero diagonal.
    pub fn from_matrix(rows: &[Vec<u8>]) -> Option<Self> {
        let v = rows.len();
        let mut g = Graph::empty(v);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != v || r[i] != 0 {
                return None;
            }
            for (j, &x) in r.iter().enumerate() {
                match x {
                    0 => {}
                    1 if rows[j][i] == 1 => g.set(i, j),
                    _ => return None,
                }
            }
        }
        Some(g)
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1u64 << (j % 64);
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        assert!(i != j, "loops are not allowed");
        self.set(i, j);
        self.set(j, i);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.v
    }

    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        bits::iter_ones(self.row(i))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.v).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    pub fn common_neighbours(&self, i: usize, j: usize) -> usize {
        self.row(i).iter().zip(self.row(j)).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// Bitwise negation off the diagonal.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.v);
        for i in 0..self.v {
            for j in 0..self.v {
                if i != j && !self.has_edge(i, j) {
                    g.set(i, j);
                }
            }
        }
        g
    }

    /// The graph with vertex `i` renamed to `perm(i)`.
    pub fn relabel(&self, perm: &Permutation) -> Graph {
        assert_eq!(perm.degree(), self.v);
        let mut g = Graph::empty(self.v);
        for i in 0..self.v {
            let pi = perm.apply(i);
            for j in self.neighbours(i) {
                g.set(pi, perm.apply(j));
            }
        }
        g
    }

    /// Whether `perm` maps edges to edges.
    pub fn is_automorphism(&self, perm: &Permutation) -> bool {
        if perm.degree() != self.v {
            return false;
        }
        (0..self.v).all(|i| {
            let pi = perm.apply(i);
            self.degree(i) == self.degree(pi) && self.neighbours(i).all(|j| self.has_edge(pi, perm.apply(j)))
        })
    }

    pub fn is_regular(&self) -> Option<usize> {
        let k = if self.v == 0 { 0 } else { self.degree(0) };
        (0..self.v).all(|i| self.degree(i) == k).then_some(k)
    }

    pub fn to_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.v).map(|i| (0..self.v).map(|j| self.has_edge(i, j) as u8).collect()).collect()
    }

    /// Strong regularity with the conventions used throughout: regular,
    /// `0 < k < v − 1`, constant λ and μ, and `μ > 0`.
    pub fn is_strongly_regular(&self) -> Option<SrgParams> {
        match self.regularity() {
            Regularity::StronglyRegular(p) => Some(p),
            _ => None,
        }
    }

    /// Full classification, including the disconnected (`μ = 0`) case.
    pub fn regularity(&self) -> Regularity {
        srg::classify(self)
    }

    /// Row `i` of `A²` compared against `kI + λA + μ(J − I − A)`.
    pub fn row_satisfies_srg_identity(&self, i: usize, p: &SrgParams) -> bool {
        (0..self.v).all(|j| {
            let expected = if i == j {
                p.k
            } else if self.has_edge(i, j) {
                p.lambda
            } else {
                p.mu
            };
            self.common_neighbours(i, j) as u64 == expected
        })
    }
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Graph(v={}, e={})", self.v, self.edge_count())
    }
}

/// Triangular graph `T(n)`: 2-subsets of an `n`-set, adjacent when they meet.
pub fn triangular_graph(n: usize) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    Graph::from_fn(pairs.len(), |i, j| {
        let (a, b) = pairs[i];
        let (c, d) = pairs[j];
        a == c || a == d || b == c || b == d
    })
}

/// The Petersen graph as the Kneser graph `K(5,2)`.
pub fn petersen_graph() -> Graph {
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    Graph::from_fn(10, |i, j| {
        let (a, b) = pairs[i];
        let (c, d) = pairs[j];
        a != c && a != d && b != c && b != d
    })
}
