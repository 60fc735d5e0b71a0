//! Randomized subgroup search used to regenerate fixtures.
//!
//! Results depend on the seed. A candidate is accepted only when its order
//! matches and the caller's predicate (typically index and rank) holds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use srgforge_core::perm::{Permutation, PermutationGroup};

#[derive(Debug, Clone, Copy)]
pub struct FindOptions {
    pub seed: u64,
    pub tries: usize,
    /// Random elements per candidate.
    pub generators: usize,
}

impl Default for FindOptions {
    fn default() -> Self {
        FindOptions { seed: 1, tries: 200_000, generators: 2 }
    }
}

pub fn random_element<R: Rng>(group: &PermutationGroup, rng: &mut R) -> Permutation {
    group.chain().element_at(rng.gen::<u128>() % group.order())
}

/// Searches `within` (or the whole group) for a subgroup of order `order`
/// generated by a few random elements and satisfying `accept`.
pub fn find_subgroup<F>(
    within: &PermutationGroup,
    order: u128,
    options: FindOptions,
    mut accept: F,
) -> Option<PermutationGroup>
where
    F: FnMut(&PermutationGroup) -> bool,
{
    if !within.order().is_multiple_of(order) {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let n = within.degree();
    for _ in 0..options.tries {
        let mut gens: Vec<Permutation> = Vec::with_capacity(options.generators);
        for _ in 0..options.generators {
            let g = random_element(within, &mut rng);
            // Element orders must divide the target order.
            if !order.is_multiple_of(g.order() as u128) {
                break;
            }
            gens.push(g);
        }
        if gens.len() < options.generators {
            continue;
        }
        let h = PermutationGroup::new(n, gens).expect("degrees agree");
        if h.order() == order && accept(&h) {
            return Some(h);
        }
    }
    None
}
