//! Minimal block systems via union–find.

use alloc::vec::Vec;

use super::Permutation;

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), size: alloc::vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a as u32;
        self.size[a] += self.size[b];
        true
    }
}

/// Size of the smallest block containing both `a` and `b` for the group
/// generated by `gens` (assumed transitive on `0..n`).
pub(crate) fn minimal_block_size(gens: &[Permutation], n: usize, a: usize, b: usize) -> usize {
    let mut uf = UnionFind::new(n);
    uf.union(a, b);
    let mut queue = alloc::vec![(a, b)];
    while let Some((x, y)) = queue.pop() {
        for s in gens {
            let (xs, ys) = (s.apply(x), s.apply(y));
            if uf.union(xs, ys) {
                queue.push((xs, ys));
            }
        }
    }
    let root = uf.find(a);
    uf.size[root] as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn dihedral_square_has_blocks() {
        // D4 on the square 0-1-2-3: diagonals {0,2},{1,3} form a block system.
        let r = Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        let s = Permutation::from_cycles(4, &[vec![1, 3]]).unwrap();
        let gens = [r, s];
        assert_eq!(minimal_block_size(&gens, 4, 0, 2), 2);
        assert_eq!(minimal_block_size(&gens, 4, 0, 1), 4);
    }
}
