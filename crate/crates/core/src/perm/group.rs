use alloc::collections::VecDeque;
use alloc::vec::Vec;

use super::blocks::minimal_block_size;
use super::{PermError, Permutation, StabChain};

/// Default cap on explicit element enumeration.
pub const DEFAULT_ELEMENT_BOUND: u128 = 1_000_000;

/// A permutation group given by generators, with its stabilizer chain.
///
/// The chain is built once at construction; afterwards the group is
/// immutable and can be shared freely between threads.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        if generators.is_empty() {
            return Err(PermError::NoGenerators);
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, g.degree()));
            }
        }
        let chain = StabChain::new(degree, &generators);
        Ok(PermutationGroup { degree, generators, chain })
    }

    pub fn trivial(degree: usize) -> Self {
        let generators = alloc::vec![Permutation::identity(degree)];
        let chain = StabChain::new(degree, &generators);
        PermutationGroup { degree, generators, chain }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, PermError> {
        if p.degree() != self.degree {
            return Err(PermError::DegreeMismatch(self.degree, p.degree()));
        }
        Ok(self.chain.contains(p))
    }

    /// Orbit of `point`, breadth-first with generators in the given order.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>, PermError> {
        if point >= self.degree {
            return Err(PermError::PointOutOfRange { point, degree: self.degree });
        }
        Ok(orbit_of(&self.generators, self.degree, point))
    }

    /// All orbits, each in breadth-first order, listed by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(&self.generators, self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || orbit_of(&self.generators, self.degree, 0).len() == self.degree
    }

    /// Generators of the stabilizer of `point`.
    pub fn point_stabilizer(&self, point: usize) -> Result<PermutationGroup, PermError> {
        if point >= self.degree {
            return Err(PermError::PointOutOfRange { point, degree: self.degree });
        }
        let chain = StabChain::with_base_prefix(self.degree, &self.generators, &[point]);
        let gens = chain.stabilizer_generators(1);
        if gens.is_empty() {
            return Ok(PermutationGroup::trivial(self.degree));
        }
        PermutationGroup::new(self.degree, gens)
    }

    /// Pointwise stabilizer chain with `prefix` as leading base points.
    pub fn chain_with_base(&self, prefix: &[usize]) -> StabChain {
        StabChain::with_base_prefix(self.degree, &self.generators, prefix)
    }

    /// Visits all elements; refuses when the order exceeds `bound`.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, bound: u128, f: F) -> Result<(), PermError> {
        let order = self.order();
        if order > bound {
            return Err(PermError::ElementBound { order, bound });
        }
        self.chain.for_each_element(f);
        Ok(())
    }

    pub fn elements(&self, bound: u128) -> Result<Vec<Permutation>, PermError> {
        let mut out = Vec::with_capacity(self.order().min(bound) as usize);
        self.for_each_element(bound, |g| out.push(g.clone()))?;
        Ok(out)
    }

    /// `true` iff the group is transitive and admits no block system other
    /// than the trivial ones.
    pub fn is_primitive(&self) -> bool {
        let n = self.degree;
        if !self.is_transitive() {
            return false;
        }
        if n <= 2 {
            return true;
        }
        (1..n).all(|b| minimal_block_size(&self.generators, n, 0, b) == n)
    }

    /// Whether every generator of `other` lies in this group.
    pub fn contains_group(&self, other: &PermutationGroup) -> Result<bool, PermError> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Orbit of `point` under the group generated by `gens`, breadth-first.
pub fn orbit_of(gens: &[Permutation], degree: usize, point: usize) -> Vec<usize> {
    let mut seen = alloc::vec![false; degree];
    seen[point] = true;
    let mut out = alloc::vec![point];
    let mut queue = VecDeque::from([point]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out
}

/// All orbits of `gens`, listed by least point.
pub fn orbits_of(gens: &[Permutation], degree: usize) -> Vec<Vec<usize>> {
    let mut assigned = alloc::vec![false; degree];
    let mut out = Vec::new();
    for p in 0..degree {
        if assigned[p] {
            continue;
        }
        let orb = orbit_of(gens, degree, p);
        for &x in &orb {
            assigned[x] = true;
        }
        out.push(orb);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::vec;

    fn cyc(n: usize, c: &[usize]) -> Permutation {
        Permutation::from_cycles(n, &[c.to_vec()]).unwrap()
    }

    fn a8() -> PermutationGroup {
        PermutationGroup::new(8, vec![cyc(8, &[0, 1, 2]), cyc(8, &[1, 2, 3, 4, 5, 6, 7])]).unwrap()
    }

    #[test]
    fn a8_order_and_orbit() {
        let g = a8();
        assert_eq!(g.order(), 20160);
        assert_eq!(g.orbit(0).unwrap().len(), 8);
        let stab = g.point_stabilizer(0).unwrap();
        assert_eq!(stab.order(), 2520);
        assert!(!g.contains(&cyc(8, &[0, 1])).unwrap());
        assert!(g.is_primitive());
    }

    #[test]
    fn trivial_group() {
        let g = PermutationGroup::trivial(5);
        assert_eq!(g.orbit(3).unwrap(), vec![3]);
        assert_eq!(g.order(), 1);
        assert!(g.point_stabilizer(2).unwrap().is_trivial());
        assert_eq!(g.elements(10).unwrap().len(), 1);
        assert!(g.contains(&Permutation::identity(5)).unwrap());
    }

    #[test]
    fn double_transposition_orbit() {
        let p = Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3]]).unwrap();
        let g = PermutationGroup::new(5, vec![p]).unwrap();
        assert_eq!(g.orbit(0).unwrap(), vec![0, 1]);
        let sizes: usize = g.orbits().iter().map(Vec::len).sum();
        assert_eq!(sizes, 5);
    }

    #[test]
    fn point_out_of_range() {
        let g = PermutationGroup::trivial(3);
        assert!(matches!(g.orbit(3), Err(PermError::PointOutOfRange { .. })));
    }

    #[test]
    fn element_bound_enforced() {
        let g = a8();
        assert!(matches!(g.elements(1000), Err(PermError::ElementBound { .. })));
        let z3 = PermutationGroup::new(3, vec![cyc(3, &[0, 1, 2])]).unwrap();
        assert_eq!(z3.elements(10).unwrap().len(), 3);
    }

    #[test]
    fn membership_matches_enumeration() {
        // S4 acting on 5 points: exhaustive check over S5.
        let g = PermutationGroup::new(5, vec![cyc(5, &[0, 1]), cyc(5, &[0, 1, 2, 3])]).unwrap();
        let elems: BTreeSet<_> = g.elements(1000).unwrap().into_iter().collect();
        assert_eq!(elems.len(), 24);
        let s5 = PermutationGroup::new(5, vec![cyc(5, &[0, 1]), cyc(5, &[0, 1, 2, 3, 4])]).unwrap();
        for x in s5.elements(1000).unwrap() {
            assert_eq!(g.contains(&x).unwrap(), elems.contains(&x));
        }
    }

    #[test]
    fn prime_degree_transitive_is_primitive() {
        let g = PermutationGroup::new(7, vec![cyc(7, &[0, 1, 2, 3, 4, 5, 6])]).unwrap();
        assert!(g.is_primitive());
        let c6 = PermutationGroup::new(6, vec![cyc(6, &[0, 1, 2, 3, 4, 5])]).unwrap();
        assert!(!c6.is_primitive());
    }
}
