//! Isomorphism-invariant graph digests.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::bits::and_popcount;
use super::refine::Partition;
use super::Graph;

/// Largest order for which triangles inside common neighbourhoods enter
/// the pair profile.
pub const TRIANGLE_PROFILE_MAX_ORDER: usize = 300;

/// `(adjacent, common neighbours, edges among them, triangles among them,
/// vertices adjacent to all of them)` for one pair of vertices.
pub type PairProfile = (bool, usize, usize, usize, usize);

/// Invariants that must agree between isomorphic graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub order: usize,
    pub degrees: Vec<(usize, usize)>,
    /// Pair profile → number of pairs. Triangles are counted only up to
    /// [`TRIANGLE_PROFILE_MAX_ORDER`] vertices.
    pub pair_profile: Vec<(PairProfile, usize)>,
    /// Refinement trace of the unit partition.
    pub root_trace: u64,
    /// Sorted refinement traces after individualizing each vertex.
    pub vertex_traces: Vec<(u64, usize)>,
}

impl Fingerprint {
    /// 64-bit digest of the whole fingerprint.
    pub fn digest(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |x: u64| {
            h ^= x;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        };
        eat(self.order as u64);
        for &(d, c) in &self.degrees {
            eat(d as u64);
            eat(c as u64);
        }
        for &((a, c, e, t, w), n) in &self.pair_profile {
            eat(a as u64);
            eat(c as u64);
            eat(e as u64);
            eat(t as u64);
            eat(w as u64);
            eat(n as u64);
        }
        eat(self.root_trace);
        for &(t, n) in &self.vertex_traces {
            eat(t);
            eat(n as u64);
        }
        h
    }
}

pub fn invariant_fingerprint(g: &Graph) -> Fingerprint {
    let n = g.order();
    let mut degrees: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..n {
        *degrees.entry(g.degree(i)).or_default() += 1;
    }
    let mut pairs: BTreeMap<PairProfile, usize> = BTreeMap::new();
    let mut common = alloc::vec![0u64; g.words()];
    let mut full = alloc::vec![!0u64; g.words()];
    if !n.is_multiple_of(64) {
        full[g.words() - 1] = (1u64 << (n % 64)) - 1;
    }
    let mut closure = full.clone();
    let mut local = alloc::vec![0u64; g.words()];
    let with_triangles = n <= TRIANGLE_PROFILE_MAX_ORDER;
    for i in 0..n {
        for j in i + 1..n {
            for (c, (a, b)) in common.iter_mut().zip(g.row(i).iter().zip(g.row(j))) {
                *c = a & b;
            }
            let mut cn = 0;
            let mut inner = 0;
            let mut triangles = 0;
            closure.copy_from_slice(&full);
            for x in super::bits::iter_ones(&common) {
                cn += 1;
                for ((l, c), r) in local.iter_mut().zip(&common).zip(g.row(x)) {
                    *l = c & r;
                }
                inner += local.iter().map(|w| w.count_ones() as usize).sum::<usize>();
                if with_triangles {
                    for y in super::bits::iter_ones(&local).filter(|&y| y > x) {
                        triangles += and_popcount(g.row(y), &local);
                    }
                }
                for (c, r) in closure.iter_mut().zip(g.row(x)) {
                    *c &= r;
                }
            }
            let wide = if cn == 0 { 0 } else { closure.iter().map(|w| w.count_ones() as usize).sum() };
            *pairs.entry((g.has_edge(i, j), cn, inner / 2, triangles / 3, wide)).or_default() += 1;
        }
    }
    let mut root = Partition::unit(n);
    let root_trace = if n > 0 { root.refine(g, &[0]) } else { 0 };
    let mut traces: BTreeMap<u64, usize> = BTreeMap::new();
    if !root.is_discrete() {
        for v in 0..n {
            let mut p = root.clone();
            if p.cell(p.cell_start_of(v)).len() == 1 {
                *traces.entry(0).or_default() += 1;
                continue;
            }
            let s = p.individualize(v);
            let t = p.refine(g, &[s]);
            *traces.entry(t).or_default() += 1;
        }
    }
    Fingerprint {
        order: n,
        degrees: degrees.into_iter().collect(),
        pair_profile: pairs.into_iter().collect(),
        root_trace,
        vertex_traces: traces.into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{petersen_graph, triangular_graph};
    use crate::perm::Permutation;

    #[test]
    fn invariant_under_relabelling() {
        let g = petersen_graph();
        let perm = Permutation::from_cycles(10, &[alloc::vec![0, 7, 3, 9], alloc::vec![1, 4]]).unwrap();
        assert_eq!(invariant_fingerprint(&g), invariant_fingerprint(&g.relabel(&perm)));
    }

    #[test]
    fn pentagon_matches_complement() {
        let c5 = Graph::cycle(5);
        assert_eq!(invariant_fingerprint(&c5), invariant_fingerprint(&c5.complement()));
    }

    #[test]
    fn separates_different_graphs() {
        let t5 = triangular_graph(5);
        let p = petersen_graph();
        assert_ne!(invariant_fingerprint(&t5).digest(), invariant_fingerprint(&p).digest());
    }
}
