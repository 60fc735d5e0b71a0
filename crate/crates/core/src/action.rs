//! Transitive actions on right cosets, suborbits and their pairing.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::perm::{PermError, Permutation, PermutationGroup};

/// Default cap on the index `[G:H]` of a coset action.
pub const DEFAULT_INDEX_BOUND: u128 = 2000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error("subgroup generator {0} is not an element of the ambient group")]
    NotSubgroup(usize),
    #[error("index {index} exceeds the configured bound {bound} (raise the index bound to continue)")]
    IndexBound { index: u128, bound: u128 },
    #[error("subgroup order {order} exceeds the element bound {bound} needed for coset keys")]
    SubgroupTooLarge { order: u128, bound: u128 },
    #[error("not a suborbit of this action")]
    NotSuborbit,
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// An orbit of the point stabilizer `G_α` together with its pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Suborbit {
    /// Sorted points of the orbit.
    pub points: Vec<usize>,
    /// Index of the paired suborbit.
    pub paired_with: usize,
    pub self_paired: bool,
}

impl Suborbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn representative(&self) -> usize {
        self.points[0]
    }
}

/// The action of `G` on the right cosets of `H`.
///
/// Point `0` is the coset `H` itself (the base point α). Cosets are numbered
/// in breadth-first order from `H` under the generators of `G`.
#[derive(Debug, Clone)]
pub struct TransitiveAction {
    ambient: PermutationGroup,
    subgroup: PermutationGroup,
    degree: usize,
    coset_keys: Vec<Vec<u32>>,
    /// Elements of `G` with `H·reps[i]` = coset `i`.
    coset_reps: Vec<Permutation>,
    generator_images: Vec<Permutation>,
    /// Images of the subgroup generators; they generate `G_α`.
    stabilizer_images: Vec<Permutation>,
    image: PermutationGroup,
    /// `transversal[i]` maps α to `i` in the action.
    transversal: Vec<Permutation>,
    transversal_inv: Vec<Permutation>,
    suborbits: Vec<Suborbit>,
    suborbit_of: Vec<u32>,
    /// Base-point images of every element of `H`, used for coset keys.
    subgroup_base_images: Vec<Vec<u32>>,
    key_base: Vec<usize>,
    key_index: BTreeMap<Vec<u32>, u32>,
}

impl TransitiveAction {
    /// Action of `ambient` on the right cosets of `subgroup`.
    pub fn on_cosets(ambient: &PermutationGroup, subgroup: &PermutationGroup) -> Result<Self, ActionError> {
        Self::on_cosets_bounded(ambient, subgroup, DEFAULT_INDEX_BOUND, crate::perm::DEFAULT_ELEMENT_BOUND)
    }

    pub fn on_cosets_bounded(
        ambient: &PermutationGroup,
        subgroup: &PermutationGroup,
        index_bound: u128,
        element_bound: u128,
    ) -> Result<Self, ActionError> {
        if ambient.degree() != subgroup.degree() {
            return Err(PermError::DegreeMismatch(ambient.degree(), subgroup.degree()).into());
        }
        for (i, h) in subgroup.generators().iter().enumerate() {
            if !ambient.contains(h)? {
                return Err(ActionError::NotSubgroup(i));
            }
        }
        let index = ambient.order() / subgroup.order();
        if index > index_bound {
            return Err(ActionError::IndexBound { index, bound: index_bound });
        }
        if subgroup.order() > element_bound {
            return Err(ActionError::SubgroupTooLarge { order: subgroup.order(), bound: element_bound });
        }

        let mut key_base = ambient.chain().base();
        if key_base.is_empty() {
            key_base.push(0);
        }
        let mut subgroup_base_images = Vec::with_capacity(subgroup.order() as usize);
        subgroup.for_each_element(element_bound, |h| {
            subgroup_base_images.push(key_base.iter().map(|&b| h.apply(b) as u32).collect());
        })?;

        let mut action = TransitiveAction {
            ambient: ambient.clone(),
            subgroup: subgroup.clone(),
            degree: 0,
            coset_keys: Vec::new(),
            coset_reps: Vec::new(),
            generator_images: Vec::new(),
            stabilizer_images: Vec::new(),
            image: PermutationGroup::trivial(1),
            transversal: Vec::new(),
            transversal_inv: Vec::new(),
            suborbits: Vec::new(),
            suborbit_of: Vec::new(),
            subgroup_base_images,
            key_base,
            key_index: BTreeMap::new(),
        };
        action.enumerate_cosets();
        debug_assert_eq!(action.degree as u128, index);

        let n = action.degree;
        action.image = PermutationGroup::new(n, action.generator_images.clone())?;
        action.stabilizer_images = subgroup.generators().iter().map(|h| action.image_of(h)).collect();
        action.build_transversal();
        action.build_suborbits();
        Ok(action)
    }

    fn key(&self, x: &Permutation) -> Vec<u32> {
        let mut best: Option<Vec<u32>> = None;
        let mut cur = alloc::vec![0u32; self.key_base.len()];
        for imgs in &self.subgroup_base_images {
            for (c, &p) in cur.iter_mut().zip(imgs) {
                *c = x.apply(p as usize) as u32;
            }
            match &best {
                Some(b) if *b <= cur => {}
                _ => best = Some(cur.clone()),
            }
        }
        best.expect("subgroup has at least one element")
    }

    fn enumerate_cosets(&mut self) {
        let gens = self.ambient.generators().to_vec();
        let id = Permutation::identity(self.ambient.degree());
        let k0 = self.key(&id);
        self.key_index.insert(k0.clone(), 0);
        self.coset_keys.push(k0);
        self.coset_reps.push(id);
        let mut images: Vec<Vec<u32>> = alloc::vec![Vec::new(); gens.len()];
        let mut i = 0;
        while i < self.coset_reps.len() {
            for (s, g) in gens.iter().enumerate() {
                let x = self.coset_reps[i].then(g);
                let k = self.key(&x);
                let j = match self.key_index.get(&k) {
                    Some(&j) => j,
                    None => {
                        let j = self.coset_reps.len() as u32;
                        self.key_index.insert(k.clone(), j);
                        self.coset_keys.push(k);
                        self.coset_reps.push(x);
                        j
                    }
                };
                images[s].push(j);
            }
            i += 1;
        }
        self.degree = self.coset_reps.len();
        self.generator_images = images.into_iter().map(Permutation::from_images_unchecked).collect();
    }

    fn build_transversal(&mut self) {
        let n = self.degree;
        let mut trans: Vec<Option<Permutation>> = alloc::vec![None; n];
        trans[0] = Some(Permutation::identity(n));
        let mut queue = alloc::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generator_images {
                let y = g.apply(x);
                if trans[y].is_none() {
                    trans[y] = Some(trans[x].as_ref().unwrap().then(g));
                    queue.push_back(y);
                }
            }
        }
        self.transversal = trans.into_iter().map(|t| t.expect("coset action is transitive")).collect();
        self.transversal_inv = self.transversal.iter().map(Permutation::inverse).collect();
    }

    fn build_suborbits(&mut self) {
        let n = self.degree;
        let mut orbits = crate::perm::orbits_of(&self.stabilizer_images, n);
        for o in &mut orbits {
            o.sort_unstable();
        }
        orbits.sort_by_key(|o| (o.len(), o[0]));
        let mut suborbit_of = alloc::vec![0u32; n];
        for (i, o) in orbits.iter().enumerate() {
            for &p in o {
                suborbit_of[p] = i as u32;
            }
        }
        let paired: Vec<usize> = orbits
            .iter()
            .map(|o| {
                let beta = o[0];
                let back = self.transversal_inv[beta].apply(0);
                suborbit_of[back] as usize
            })
            .collect();
        self.suborbits = orbits
            .into_iter()
            .enumerate()
            .map(|(i, points)| Suborbit { points, paired_with: paired[i], self_paired: paired[i] == i })
            .collect();
        self.suborbit_of = suborbit_of;
    }

    /// Permutation induced on the cosets by an element of `G`.
    pub fn image_of(&self, g: &Permutation) -> Permutation {
        let images = self
            .coset_reps
            .iter()
            .map(|x| {
                let k = self.key(&x.then(g));
                *self.key_index.get(&k).expect("element of the ambient group")
            })
            .collect();
        Permutation::from_images_unchecked(images)
    }

    pub fn ambient(&self) -> &PermutationGroup {
        &self.ambient
    }

    pub fn subgroup(&self) -> &PermutationGroup {
        &self.subgroup
    }

    /// Index `[G:H]`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base_point(&self) -> usize {
        0
    }

    pub fn coset_keys(&self) -> &[Vec<u32>] {
        &self.coset_keys
    }

    pub fn coset_representative(&self, coset: usize) -> &Permutation {
        &self.coset_reps[coset]
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.generator_images
    }

    /// Generators of `G_α` in the action.
    pub fn stabilizer_images(&self) -> &[Permutation] {
        &self.stabilizer_images
    }

    /// The image of `G` as a permutation group on the cosets.
    pub fn image(&self) -> &PermutationGroup {
        &self.image
    }

    /// Element of the image group mapping α to `point`.
    pub fn transversal(&self, point: usize) -> &Permutation {
        &self.transversal[point]
    }

    pub fn transversal_inverse(&self, point: usize) -> &Permutation {
        &self.transversal_inv[point]
    }

    /// Suborbits sorted by `(size, least point)`; index 0 is `{α}`.
    pub fn suborbits(&self) -> &[Suborbit] {
        &self.suborbits
    }

    pub fn rank(&self) -> usize {
        self.suborbits.len()
    }

    pub fn suborbit_of(&self, point: usize) -> usize {
        self.suborbit_of[point] as usize
    }

    /// Index of the orbital containing the pair `(x, y)`.
    #[inline]
    pub fn orbital(&self, x: usize, y: usize) -> usize {
        self.suborbit_of[self.transversal_inv[x].apply(y)] as usize
    }

    /// The suborbit paired with `delta`, computed as the set
    /// `{αg : αg⁻¹ ∈ Δ}`.
    pub fn paired_orbit(&self, delta: &Suborbit) -> Result<&Suborbit, ActionError> {
        let first = *delta.points.first().ok_or(ActionError::NotSuborbit)?;
        if first >= self.degree {
            return Err(ActionError::NotSuborbit);
        }
        let idx = self.suborbit_of(first);
        if self.suborbits[idx].points != delta.points {
            return Err(ActionError::NotSuborbit);
        }
        let back = self.transversal_inv[first].apply(0);
        Ok(&self.suborbits[self.suborbit_of(back)])
    }

    pub fn is_primitive(&self) -> bool {
        self.image.is_primitive()
    }
}
