//! Exact clique counting by pivoting over bit rows.
//!
//! Every clique is reached along exactly one root-to-leaf path of the pivot
//! tree: vertices are either *held* (forced into the clique) or *pivots*
//! (free to be included or not), so a leaf with `h` held vertices and `p`
//! pivots accounts for `C(p, size − h)` cliques of each size.

use alloc::vec::Vec;

use super::bits::{and_popcount, iter_ones, popcount};
use super::Graph;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

struct Counter<'a> {
    g: &'a Graph,
    size: usize,
    total: u128,
}

impl Counter<'_> {
    fn descend(&mut self, cand: &[u64], held: usize, pivots: usize) {
        if held > self.size {
            return;
        }
        let avail = popcount(cand);
        if held + pivots + avail < self.size {
            return;
        }
        if avail == 0 {
            self.total += binomial(pivots, self.size - held);
            return;
        }
        // pivot: candidate with the most candidate neighbours
        let mut best = usize::MAX;
        let mut best_deg = 0;
        for u in iter_ones(cand) {
            let d = and_popcount(self.g.row(u), cand);
            if best == usize::MAX || d > best_deg {
                best = u;
                best_deg = d;
            }
        }
        let row_p = self.g.row(best);
        let next: Vec<u64> = cand.iter().zip(row_p).map(|(a, b)| a & b).collect();
        self.descend(&next, held, pivots + 1);

        let mut rest: Vec<u64> = cand.to_vec();
        rest[best / 64] &= !(1 << (best % 64));
        let branch: Vec<usize> = iter_ones(cand).filter(|&v| v != best && !self.g.has_edge(best, v)).collect();
        for v in branch {
            let sub: Vec<u64> = rest.iter().zip(self.g.row(v)).map(|(a, b)| a & b).collect();
            self.descend(&sub, held + 1, pivots);
            rest[v / 64] &= !(1 << (v % 64));
        }
    }
}

/// Number of complete subgraphs on exactly `size` vertices.
pub fn count_cliques(g: &Graph, size: usize) -> u128 {
    match size {
        0 => return 1,
        1 => return g.order() as u128,
        2 => return g.edge_count() as u128,
        _ => {}
    }
    let mut all = alloc::vec![0u64; g.words()];
    for v in 0..g.order() {
        all[v / 64] |= 1 << (v % 64);
    }
    let mut c = Counter { g, size, total: 0 };
    c.descend(&all, 0, 0);
    c.total
}

/// Clique count using vertex orbits of a group of automorphisms: each
/// orbit contributes `|orbit| · (cliques through its representative)`, and
/// the sum counts every clique `size` times.
pub fn count_cliques_with_symmetry(g: &Graph, size: usize, orbits: &[Vec<usize>]) -> u128 {
    if size <= 2 {
        return count_cliques(g, size);
    }
    let mut sum: u128 = 0;
    for orbit in orbits {
        let r = orbit[0];
        let mut c = Counter { g, size, total: 0 };
        c.descend(g.row(r), 1, 0);
        sum += c.total * orbit.len() as u128;
    }
    sum / size as u128
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{petersen_graph, triangular_graph};

    /// Brute force over all vertex subsets.
    fn brute(g: &Graph, size: usize) -> u128 {
        let n = g.order();
        let mut total = 0;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if vs.iter().all(|&a| vs.iter().all(|&b| a == b || g.has_edge(a, b))) {
                total += 1;
            }
        }
        total
    }

    #[test]
    fn complete_graph_binomials() {
        assert_eq!(count_cliques(&Graph::complete(5), 3), 10);
        assert_eq!(count_cliques(&Graph::complete(7), 4), 35);
        assert_eq!(count_cliques(&Graph::complete(4), 5), 0);
    }

    #[test]
    fn matches_brute_force() {
        let p = petersen_graph();
        for s in 1..5 {
            assert_eq!(count_cliques(&p, s), brute(&p, s));
        }
        let mut g = Graph::cycle(9);
        g.add_edge(0, 2);
        g.add_edge(0, 3);
        g.add_edge(2, 5);
        g.add_edge(1, 3);
        for s in 1..6 {
            assert_eq!(count_cliques(&g, s), brute(&g, s), "size {s}");
        }
    }

    #[test]
    fn srg_triangle_identity() {
        // v k λ / 6 triangles in T(8)
        let t8 = triangular_graph(8);
        assert_eq!(count_cliques(&t8, 3), 28 * 12 * 6 / 6);
        assert_eq!(count_cliques(&t8, 2), 28 * 12 / 2);
        let orbits = alloc::vec![(0..28).collect::<Vec<_>>()];
        for s in 3..8 {
            assert_eq!(count_cliques_with_symmetry(&t8, s, &orbits), count_cliques(&t8, s));
        }
    }
}
