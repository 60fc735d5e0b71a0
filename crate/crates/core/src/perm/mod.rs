//! Permutations and permutation groups.
//!
//! Points are `0..degree`. Permutations act on the right: the image of point
//! `i` under `p` is written `i·p`, and [`Permutation::compose`]`(p, q)` is the
//! permutation `i ↦ (i·p)·q`.

mod blocks;
mod chain;
mod group;

pub use chain::StabChain;
pub use group::{orbit_of, orbits_of, PermutationGroup, DEFAULT_ELEMENT_BOUND};

use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image list is not a bijection of 0..{0}")]
    NotBijection(usize),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group has no generators")]
    NoGenerators,
    #[error("group order {order} exceeds element bound {bound}")]
    ElementBound { order: u128, bound: u128 },
}

/// A bijection of `{0, …, degree − 1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(PermError::NotBijection(n));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles of 0-based points.
    pub fn from_cycles<C: AsRef<[usize]>>(degree: usize, cycles: &[C]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = alloc::vec![false; degree];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for (idx, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if touched[p] {
                    return Err(PermError::NotBijection(degree));
                }
                touched[p] = true;
                images[p] = cycle[(idx + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `i ↦ (i·self)·other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    /// Unchecked left-to-right product; panics on a degree mismatch.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|&(i, &x)| i as u32 != x).map(|(i, _)| i)
    }

    /// Nontrivial cycles in order of their least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = alloc::vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles().iter().fold(1u64, |acc, c| {
            let len = c.len() as u64;
            acc / gcd(acc, len) * len
        })
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }
}

/// 1-based disjoint-cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn perm_strategy(max_degree: usize) -> impl Strategy<Value = Permutation> {
        (1..=max_degree)
            .prop_flat_map(|n| Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(Permutation::from_images_unchecked)
    }

    #[test]
    fn identity_is_left_neutral() {
        let q = Permutation::from_cycles(8, &[vec![0, 4, 2], vec![5, 7]]).unwrap();
        assert_eq!(Permutation::identity(8).compose(&q).unwrap(), q);
    }

    #[test]
    fn three_cycle_squared() {
        let p = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let expected = Permutation::from_cycles(3, &[vec![0, 2, 1]]).unwrap();
        assert_eq!(p.compose(&p).unwrap(), expected);
    }

    #[test]
    fn compose_is_left_to_right() {
        // (1 2) then (2 3): 1 -> 2 -> 3
        let p = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let q = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        assert_eq!(p.compose(&q).unwrap().apply(0), 2);
    }

    #[test]
    fn degree_mismatch() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert_eq!(p.compose(&q), Err(PermError::DegreeMismatch(3, 4)));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_cycles(4, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn display_is_one_based() {
        let p = Permutation::from_cycles(5, &[vec![0, 1, 2], vec![3, 4]]).unwrap();
        assert_eq!(alloc::format!("{p}"), "(1,2,3)(4,5)");
        assert_eq!(alloc::format!("{}", Permutation::identity(2)), "()");
        assert_eq!(p.order(), 6);
        assert!(!p.is_even());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn inverse_cancels(p in perm_strategy(40)) {
            prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
            prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
        }

        #[test]
        fn composition_associates(
            (p, q, r) in (1usize..30).prop_flat_map(|n| {
                let s = Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle()
                    .prop_map(Permutation::from_images_unchecked);
                (s.clone(), s.clone(), s)
            })
        ) {
            let left = p.then(&q).then(&r);
            let right = p.then(&q.then(&r));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn pow_matches_order(p in perm_strategy(20)) {
            prop_assert!(p.pow(p.order()).is_identity());
        }
    }
}
