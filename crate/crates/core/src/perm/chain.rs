//! Stabilizer chains (Schreier–Sims).

use alloc::vec::Vec;

use super::Permutation;

#[derive(Debug, Clone)]
struct Level {
    base: u32,
    /// Generators of the stabilizer of all earlier base points.
    gens: Vec<Permutation>,
    /// Orbit of `base`, in discovery order.
    orbit: Vec<u32>,
    /// `transversal[β] = Some(u)` with `base·u = β`.
    transversal: Vec<Option<u32>>,
    reps: Vec<Permutation>,
    rep_inverses: Vec<Permutation>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut transversal = alloc::vec![None; degree];
        transversal[base as usize] = Some(0);
        Level {
            base,
            gens: Vec::new(),
            orbit: alloc::vec![base],
            transversal,
            reps: alloc::vec![Permutation::identity(degree)],
            rep_inverses: alloc::vec![Permutation::identity(degree)],
        }
    }

    fn rep(&self, point: usize) -> Option<(&Permutation, &Permutation)> {
        self.transversal[point].map(|i| (&self.reps[i as usize], &self.rep_inverses[i as usize]))
    }
}

/// A base and strong generating set with full transversals.
///
/// Every element `g` factors uniquely as `g = t_{k-1} · … · t_1 · t_0` with
/// `t_i` taken from the transversal of level `i`.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

enum Work {
    /// Process the element `g` (fixing the first `level` base points) against
    /// the transversal of `level`.
    Schreier { level: usize, g: Permutation },
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        Self::with_base_prefix(degree, generators, &[])
    }

    /// Builds a chain whose base starts with `prefix`. Further base points
    /// are chosen as the first point moved by the element that forces a new
    /// level.
    pub fn with_base_prefix(degree: usize, generators: &[Permutation], prefix: &[usize]) -> Self {
        let mut chain = StabChain { degree, levels: prefix.iter().map(|&b| Level::new(b as u32, degree)).collect() };
        for g in generators {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            if !chain.contains(g) {
                chain.add_generator(0, g.clone());
            }
        }
        chain
    }

    fn add_generator(&mut self, level: usize, g: Permutation) {
        let mut work = Vec::new();
        self.push_generator(level, g, &mut work);
        while let Some(Work::Schreier { level, g }) = work.pop() {
            let beta = g.apply(self.levels[level].base as usize);
            match self.levels[level].transversal[beta] {
                None => {
                    let lv = &mut self.levels[level];
                    lv.transversal[beta] = Some(lv.reps.len() as u32);
                    lv.orbit.push(beta as u32);
                    for s in &lv.gens {
                        work.push(Work::Schreier { level, g: g.then(s) });
                    }
                    lv.rep_inverses.push(g.inverse());
                    lv.reps.push(g);
                }
                Some(i) => {
                    let h = g.then(&self.levels[level].rep_inverses[i as usize]);
                    if h.is_identity() {
                        continue;
                    }
                    if !self.contains_from(level + 1, &h) {
                        self.push_generator(level + 1, h, &mut work);
                    }
                }
            }
        }
    }

    fn push_generator(&mut self, level: usize, g: Permutation, work: &mut Vec<Work>) {
        if level == self.levels.len() {
            let base = g.first_moved_point().expect("identity pushed as generator");
            self.levels.push(Level::new(base as u32, self.degree));
        }
        let lv = &mut self.levels[level];
        for rep in &lv.reps {
            work.push(Work::Schreier { level, g: rep.then(&g) });
        }
        lv.gens.push(g);
    }

    /// Sifts `g` through the levels starting at `start`. Returns the residue
    /// and the level at which sifting stopped.
    fn sift_from(&self, start: usize, g: &Permutation) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, lv) in self.levels.iter().enumerate().skip(start) {
            let beta = h.apply(lv.base as usize);
            match lv.rep(beta) {
                Some((_, inv)) => h = h.then(inv),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    fn contains_from(&self, start: usize, g: &Permutation) -> bool {
        let (h, _) = self.sift_from(start, g);
        h.is_identity()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.contains_from(0, g)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base as usize).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Orbit lengths of the successive stabilizers.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Orbit of the `level`-th base point under the stabilizer of the
    /// earlier base points.
    pub fn basic_orbit(&self, level: usize) -> &[u32] {
        &self.levels[level].orbit
    }

    /// Generators of the pointwise stabilizer of the first `level` base
    /// points. Empty means trivial.
    pub fn stabilizer_generators(&self, level: usize) -> Vec<Permutation> {
        if level < self.levels.len() {
            self.levels[level].gens.clone()
        } else {
            Vec::new()
        }
    }

    /// Number of levels.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Transversal element taking the `level`-th base point to `point`.
    pub fn transversal_element(&self, level: usize, point: usize) -> Option<&Permutation> {
        self.levels[level].rep(point).map(|(r, _)| r)
    }

    /// Visits every group element exactly once.
    /// The element with mixed-radix index `index` (modulo the order), in
    /// the same product form as [`StabChain::for_each_element`]. A uniform
    /// index gives a uniform random element.
    pub fn element_at(&self, mut index: u128) -> Permutation {
        index %= self.order();
        let mut g = Permutation::identity(self.degree);
        let mut digits = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            let r = level.reps.len() as u128;
            digits.push((index % r) as usize);
            index /= r;
        }
        for (level, &d) in self.levels.iter().zip(&digits).rev() {
            g = g.then(&level.reps[d]);
        }
        g
    }

    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        let k = self.levels.len();
        if k == 0 {
            f(&Permutation::identity(self.degree));
            return;
        }
        // partial[i] = t_{k-1} · … · t_i
        let mut idx = alloc::vec![0usize; k];
        let mut partial: Vec<Permutation> = alloc::vec![Permutation::identity(self.degree); k + 1];
        let mut depth = k; // partial[depth..] valid
        loop {
            while depth > 0 {
                let lv = depth - 1;
                partial[lv] = partial[lv + 1].then(&self.levels[lv].reps[idx[lv]]);
                depth -= 1;
            }
            f(&partial[0]);
            // advance odometer from the innermost level 0
            let mut lv = 0;
            loop {
                idx[lv] += 1;
                if idx[lv] < self.levels[lv].reps.len() {
                    break;
                }
                idx[lv] = 0;
                lv += 1;
                if lv == k {
                    return;
                }
            }
            depth = lv + 1;
        }
    }
}
