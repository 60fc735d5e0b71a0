//! Designs and regular graphs from unions of suborbits, and the SRG search.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::action::{ActionError, TransitiveAction};
use crate::graph::{
    automorphism_group_with_known, find_isomorphism_with_aut, invariant_fingerprint, Graph, Regularity, SearchBudget,
    SearchError, SrgParams,
};
use crate::perm::{PermError, Permutation, PermutationGroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("selection is not closed under pairing (suborbit {0} selected without its pair)")]
    NotPairingClosed(usize),
    #[error("selection contains the trivial suborbit")]
    ContainsTrivial,
    #[error("suborbit index {0} out of range")]
    BadIndex(usize),
    #[error("point {0} out of range for the second action")]
    BadPoint(usize),
    #[error("actions are not actions of the same group")]
    DifferentGroups,
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

/// A pairing-closed union `Δ₂` of nontrivial suborbits.
#[derive(Debug, Clone)]
pub struct OrbitSelection<'a> {
    pub action: &'a TransitiveAction,
    /// Sorted suborbit indices.
    pub indices: Vec<usize>,
    /// `|Δ₂|`.
    pub union_size: usize,
}

impl<'a> OrbitSelection<'a> {
    pub fn new(action: &'a TransitiveAction, indices: &[usize]) -> Result<Self, ConstructError> {
        let subs = action.suborbits();
        let set: BTreeSet<usize> = indices.iter().copied().collect();
        for &i in &set {
            if i >= subs.len() {
                return Err(ConstructError::BadIndex(i));
            }
            if i == 0 {
                return Err(ConstructError::ContainsTrivial);
            }
            if !set.contains(&subs[i].paired_with) {
                return Err(ConstructError::NotPairingClosed(i));
            }
        }
        let union_size = set.iter().map(|&i| subs[i].len()).sum();
        Ok(OrbitSelection { action, indices: set.into_iter().collect(), union_size })
    }

    /// Points of `Δ₂`, sorted.
    pub fn points(&self) -> Vec<usize> {
        let mut pts: Vec<usize> =
            self.indices.iter().flat_map(|&i| self.action.suborbits()[i].points.iter().copied()).collect();
        pts.sort_unstable();
        pts
    }

    /// The selection of all other nontrivial suborbits.
    pub fn complement(&self) -> OrbitSelection<'a> {
        let idx: Vec<usize> = (1..self.action.rank()).filter(|i| self.indices.binary_search(i).is_err()).collect();
        let union_size = idx.iter().map(|&i| self.action.suborbits()[i].len()).sum();
        OrbitSelection { action: self.action, indices: idx, union_size }
    }

    /// Selection as a bit mask over suborbit indices.
    pub fn mask(&self) -> u64 {
        self.indices.iter().fold(0u64, |m, &i| m | 1 << i)
    }
}

/// Nontrivial suborbits grouped into pairing classes (`{Δ}` or `{Δ, Δ′}`).
pub fn pairing_classes(action: &TransitiveAction) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for (i, s) in action.suborbits().iter().enumerate().skip(1) {
        if s.paired_with >= i {
            if s.paired_with == i {
                out.push(alloc::vec![i]);
            } else {
                out.push(alloc::vec![i, s.paired_with]);
            }
        }
    }
    out
}

/// All nonempty proper pairing-closed selections of nontrivial suborbits,
/// one per nonempty proper subset of the pairing classes, in increasing
/// mask order. With `c` classes there are `2^c − 2` of them.
pub fn enumerate_selections(action: &TransitiveAction) -> impl Iterator<Item = OrbitSelection<'_>> + '_ {
    let classes = pairing_classes(action);
    assert!(classes.len() < 64, "too many pairing classes");
    let total: u64 = 1u64 << classes.len();
    (1..total - 1).map(move |mask| {
        let mut indices: Vec<usize> = classes
            .iter()
            .enumerate()
            .filter(|(c, _)| mask >> c & 1 == 1)
            .flat_map(|(_, cls)| cls.iter().copied())
            .collect();
        indices.sort_unstable();
        let union_size = indices.iter().map(|&i| action.suborbits()[i].len()).sum();
        OrbitSelection { action, indices, union_size }
    })
}

/// The graph on the cosets whose edges are the union of the selected
/// orbitals: `x ~ y` iff `y ∈ Δ₂·g` for `g` mapping α to `x`.
pub fn build_graph(sel: &OrbitSelection<'_>) -> Result<Graph, ConstructError> {
    let act = sel.action;
    let subs = act.suborbits();
    for &i in &sel.indices {
        if i == 0 {
            return Err(ConstructError::ContainsTrivial);
        }
        if sel.indices.binary_search(&subs[i].paired_with).is_err() {
            return Err(ConstructError::NotPairingClosed(i));
        }
    }
    let n = act.degree();
    let delta = sel.points();
    let mut g = Graph::empty(n);
    for x in 0..n {
        let t = act.transversal(x);
        for &y in &delta {
            let z = t.apply(y);
            if x < z {
                g.add_edge(x, z);
            }
        }
    }
    debug_assert!((0..n).all(|x| g.degree(x) == delta.len()));
    Ok(g)
}

/// Intersection numbers `p^k_{ij}` of the orbital configuration: the number
/// of `γ` with `(α, γ)` in orbital `i` and `(γ, β_k)` in orbital `j`, for a
/// fixed `β_k` in suborbit `k`.
#[derive(Debug, Clone)]
pub struct OrbitalScheme {
    rank: usize,
    sizes: Vec<usize>,
    p: Vec<u32>,
}

impl OrbitalScheme {
    pub fn new(action: &TransitiveAction) -> Self {
        let r = action.rank();
        let n = action.degree();
        let mut p = alloc::vec![0u32; r * r * r];
        for (k, sub) in action.suborbits().iter().enumerate() {
            let beta = sub.representative();
            for gamma in 0..n {
                let i = action.suborbit_of(gamma);
                let j = action.orbital(gamma, beta);
                p[(k * r + i) * r + j] += 1;
            }
        }
        OrbitalScheme { rank: r, sizes: action.suborbits().iter().map(|s| s.len()).collect(), p }
    }

    #[inline]
    pub fn intersection_number(&self, k: usize, i: usize, j: usize) -> u32 {
        self.p[(k * self.rank + i) * self.rank + j]
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Entry of `A²` at `(α, β_k)` for the orbital union `indices`.
    fn square_entry(&self, k: usize, indices: &[usize]) -> u64 {
        let r = self.rank;
        let block = &self.p[k * r * r..(k + 1) * r * r];
        indices.iter().map(|&i| indices.iter().map(|&j| block[i * r + j] as u64).sum::<u64>()).sum()
    }

    /// Classifies the orbital graph of `indices` from intersection numbers
    /// alone. The graph is vertex-transitive, so the row of α decides.
    pub fn regularity(&self, indices: &[usize]) -> Regularity {
        let v = self.sizes.iter().sum::<usize>() as u64;
        let k: u64 = indices.iter().map(|&i| self.sizes[i] as u64).sum();
        if k == 0 || k + 1 >= v {
            return Regularity::Trivial;
        }
        let mut selected = alloc::vec![false; self.rank];
        for &i in indices {
            selected[i] = true;
        }
        let mut lambda = None;
        let mut mu = None;
        for (kk, &sel) in selected.iter().enumerate().skip(1) {
            let c = self.square_entry(kk, indices);
            let slot = if sel { &mut lambda } else { &mut mu };
            match *slot {
                None => {
                    *slot = Some(c);
                    if let (Some(l), Some(m)) = (lambda, mu) {
                        if !SrgParams::new(v, k, l, m).counting_identity_holds() {
                            return Regularity::RegularOnly(k);
                        }
                    }
                }
                Some(x) if x != c => return Regularity::RegularOnly(k),
                _ => {}
            }
        }
        let p = SrgParams::new(v, k, lambda.unwrap_or(0), mu.unwrap_or(0));
        if p.mu == 0 {
            Regularity::Disconnected(p)
        } else {
            Regularity::StronglyRegular(p)
        }
    }
}

/// A 1-design `(Ω₂, B)` with `B = {Δ₂g : g ∈ G}` read as a set of blocks.
#[derive(Debug, Clone)]
pub struct DesignResult {
    pub points: usize,
    pub blocks: Vec<Vec<usize>>,
    pub block_size: usize,
    /// Common replication number; `None` if points lie in different
    /// numbers of blocks.
    pub replication: Option<usize>,
    pub block_count: usize,
    /// `|G_{Δ₂}|`, counted element by element.
    pub setwise_stabilizer_order: u128,
    /// `m·|G_α| / |G_{Δ₂}|`.
    pub formula_block_count: u128,
    /// `(|G_α| / |G_{Δ₂}|) · Σ |α G_{δᵢ}|`.
    pub formula_replication: u128,
    /// `Δ₂ = Ω₂`: the single-block `1-(n,n,1)` design.
    pub degenerate: bool,
}

impl DesignResult {
    pub fn formulas_agree(&self) -> bool {
        self.formula_block_count == self.block_count as u128
            && Some(self.formula_replication) == self.replication.map(|r| r as u128)
    }

    /// Incidence matrix, rows indexed by points and columns by blocks.
    pub fn incidence(&self) -> Vec<Vec<u8>> {
        let mut m = alloc::vec![alloc::vec![0u8; self.block_count]; self.points];
        for (b, blk) in self.blocks.iter().enumerate() {
            for &p in blk {
                m[p][b] = 1;
            }
        }
        m
    }

    pub fn describe(&self) -> String {
        let blocks =
            if self.block_count == 1 { "1 block".into() } else { alloc::format!("{} blocks", self.block_count) };
        let mut out = match self.replication {
            Some(r) => alloc::format!("1-({},{},{}) design with {blocks}", self.points, self.block_size, r),
            None => alloc::format!("non-uniform structure on {} points with {blocks}", self.points),
        };
        if self.degenerate {
            out.push_str(" (degenerate)");
        }
        out
    }
}

fn same_group(a: &PermutationGroup, b: &PermutationGroup) -> bool {
    a.degree() == b.degree() && a.generators() == b.generators()
}

/// Builds the design of `G` acting on `Ω₁` (cosets of `H₁`, point α = `H₁`)
/// and `Ω₂`, with `Δ₂` the union of the `G_α`-orbits of `deltas ⊆ Ω₂`.
/// Distinct `deltas` in one `G_α`-orbit count once.
pub fn construct_design(
    omega1: &TransitiveAction,
    omega2: &TransitiveAction,
    deltas: &[usize],
    element_bound: u128,
) -> Result<DesignResult, ConstructError> {
    if !same_group(omega1.ambient(), omega2.ambient()) {
        return Err(ConstructError::DifferentGroups);
    }
    let g = omega1.ambient();
    let n = omega2.degree();
    let m = omega1.degree() as u128;
    for &d in deltas {
        if d >= n {
            return Err(ConstructError::BadPoint(d));
        }
    }
    // G_α = H₁ acting on Ω₂.
    let stab_on_2: Vec<Permutation> = omega1.subgroup().generators().iter().map(|h| omega2.image_of(h)).collect();
    let mut in_delta = alloc::vec![false; n];
    let mut reps: Vec<usize> = Vec::new();
    for &d in deltas {
        if in_delta[d] {
            continue;
        }
        reps.push(d);
        for p in crate::perm::orbit_of(&stab_on_2, n, d) {
            in_delta[p] = true;
        }
    }
    let delta: Vec<usize> = (0..n).filter(|&p| in_delta[p]).collect();

    // Blocks: orbit of Δ₂ as a set under G.
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut blocks = alloc::vec![delta.clone()];
    seen.insert(delta.clone());
    let mut i = 0;
    while i < blocks.len() {
        for s in omega2.generator_images() {
            let mut img: Vec<usize> = blocks[i].iter().map(|&p| s.apply(p)).collect();
            img.sort_unstable();
            if seen.insert(img.clone()) {
                blocks.push(img);
            }
        }
        i += 1;
    }
    let mut counts = alloc::vec![0usize; n];
    for b in &blocks {
        for &p in b {
            counts[p] += 1;
        }
    }
    let replication = counts.first().copied().filter(|&r| counts.iter().all(|&c| c == r));

    // |G_{Δ₂}| by direct count in the image, times the kernel order.
    let image = omega2.image();
    let kernel = g.order() / image.order();
    let mut stab_count: u128 = 0;
    image.for_each_element(element_bound, |x| {
        if delta.iter().all(|&p| in_delta[x.apply(p)]) {
            stab_count += 1;
        }
    })?;
    let setwise = stab_count * kernel;
    let g_alpha = omega1.subgroup().order();

    // Σ |α G_{δᵢ}| over the distinct orbit representatives.
    let mut orbit_sum: u128 = 0;
    for &d in &reps {
        let x = omega2.coset_representative(d);
        let xi = x.inverse();
        let conj: Vec<Permutation> = omega2.subgroup().generators().iter().map(|h| xi.then(h).then(x)).collect();
        let on_1: Vec<Permutation> = conj.iter().map(|c| omega1.image_of(c)).collect();
        orbit_sum += crate::perm::orbit_of(&on_1, omega1.degree(), omega1.base_point()).len() as u128;
    }

    Ok(DesignResult {
        points: n,
        block_size: delta.len(),
        block_count: blocks.len(),
        blocks,
        replication,
        setwise_stabilizer_order: setwise,
        formula_block_count: m * g_alpha / setwise,
        formula_replication: g_alpha * orbit_sum / setwise,
        degenerate: delta.len() == n,
    })
}

/// One strongly regular graph found by the search.
#[derive(Debug, Clone)]
pub struct SrgFound {
    pub subgroup: String,
    pub index: usize,
    pub rank: usize,
    pub primitive: bool,
    /// Suborbit indices of the reported selection.
    pub selection: Vec<usize>,
    pub params: SrgParams,
    pub complement_params: SrgParams,
    pub fingerprint: u64,
    pub graph: Graph,
    /// Further selections (`subgroup`, indices) giving isomorphic graphs.
    pub isomorphic_selections: Vec<(String, Vec<usize>)>,
    /// Generators of `Aut(Γ)`, or of the construction group's image when the
    /// full group was not computed.
    pub aut_generators: Vec<Permutation>,
    /// `|Aut(Γ)|`, when computed.
    pub aut_order: Option<u128>,
    /// Image of the construction group, all automorphisms.
    pub construction_generators: Vec<Permutation>,
}

/// Counters describing a search run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub selections: u64,
    pub regular_only: u64,
    /// Disconnected unions (`μ = 0`) seen and excluded.
    pub disconnected: u64,
    pub srg_selections: u64,
    pub isomorphism_tests: u64,
}

impl SearchStats {
    /// Adds the selection counters of `other`.
    pub fn absorb(&mut self, other: &SearchStats) {
        self.selections += other.selections;
        self.regular_only += other.regular_only;
        self.disconnected += other.disconnected;
        self.srg_selections += other.srg_selections;
        self.isomorphism_tests += other.isomorphism_tests;
    }
}

/// Options for [`srg_search`].
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub max_degree: usize,
    pub budget: SearchBudget,
    /// Full automorphism groups are computed for graphs up to this order.
    pub aut_max_order: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_degree: 600, budget: SearchBudget::default(), aut_max_order: usize::MAX }
    }
}

/// Deduplicates strongly regular graphs up to isomorphism (and
/// complementation: only the member of a complementary pair with
/// `k ≤ (v−1)/2` is kept).
#[derive(Debug, Default)]
pub struct SrgClassifier {
    found: Vec<SrgFound>,
    fingerprints: Vec<crate::graph::Fingerprint>,
    pub stats: SearchStats,
}

/// A candidate graph offered to the classifier.
pub struct Candidate<'a> {
    pub subgroup: &'a str,
    pub action: &'a TransitiveAction,
    pub selection: Vec<usize>,
    pub params: SrgParams,
    pub primitive: bool,
}

impl SrgClassifier {
    pub fn new() -> Self {
        Self::default()
    }

    /// Offers a verified SRG; returns the index of the class it joined and
    /// whether that class is new.
    /// Isomorphism tests prune with the representative's automorphisms; for
    /// graphs above `aut_max_order` these are just the construction group.
    pub fn offer(
        &mut self,
        cand: Candidate<'_>,
        budget: SearchBudget,
        aut_max_order: usize,
    ) -> Result<(usize, bool), ConstructError> {
        let sel = OrbitSelection::new(cand.action, &cand.selection)?;
        let graph = build_graph(&sel)?;
        debug_assert_eq!(graph.is_strongly_regular(), Some(cand.params));
        let fp = invariant_fingerprint(&graph);
        let construction: Vec<Permutation> = cand.action.generator_images().to_vec();
        for (idx, (rep, rep_fp)) in self.found.iter().zip(&self.fingerprints).enumerate() {
            if rep.params != cand.params || *rep_fp != fp {
                continue;
            }
            self.stats.isomorphism_tests += 1;
            if find_isomorphism_with_aut(&graph, &rep.graph, &rep.aut_generators, budget)?.is_some() {
                self.found[idx].isomorphic_selections.push((cand.subgroup.into(), cand.selection));
                return Ok((idx, false));
            }
        }
        let (aut_generators, aut_order) = if graph.order() <= aut_max_order {
            let aut = automorphism_group_with_known(&graph, &construction, budget)?;
            (aut.generators, Some(aut.order))
        } else {
            (construction.clone(), None)
        };
        self.found.push(SrgFound {
            subgroup: cand.subgroup.into(),
            index: cand.action.degree(),
            rank: cand.action.rank(),
            primitive: cand.primitive,
            selection: cand.selection,
            params: cand.params,
            complement_params: cand.params.complement(),
            fingerprint: fp.digest(),
            graph,
            isomorphic_selections: Vec::new(),
            aut_generators,
            aut_order,
            construction_generators: construction,
        });
        self.fingerprints.push(fp);
        Ok((self.found.len() - 1, true))
    }

    /// Found graphs sorted by `(v, parameters, fingerprint)`.
    pub fn into_sorted(self) -> (Vec<SrgFound>, SearchStats) {
        let mut found = self.found;
        found.sort_by_key(|a| (a.params.v, a.params, a.fingerprint));
        (found, self.stats)
    }
}

/// Selections of `action` whose orbital graph is strongly regular with
/// `k ≤ (v−1)/2`, screened by intersection numbers and confirmed on the
/// graph itself.
pub fn srg_selections(action: &TransitiveAction, stats: &mut SearchStats) -> Vec<(Vec<usize>, SrgParams)> {
    let scheme = OrbitalScheme::new(action);
    let v = action.degree();
    let mut out = Vec::new();
    for sel in enumerate_selections(action) {
        stats.selections += 1;
        if 2 * sel.union_size > v - 1 {
            continue;
        }
        match scheme.regularity(&sel.indices) {
            Regularity::StronglyRegular(p) => {
                let g = build_graph(&sel).expect("enumerated selections are pairing-closed");
                let verified = g.is_strongly_regular();
                assert_eq!(verified, Some(p), "intersection numbers disagree with the graph");
                stats.srg_selections += 1;
                out.push((sel.indices, p));
            }
            Regularity::Disconnected(_) => stats.disconnected += 1,
            Regularity::RegularOnly(_) => stats.regular_only += 1,
            _ => {}
        }
    }
    out
}

/// A subgroup of the ambient group with a display name.
#[derive(Debug, Clone)]
pub struct NamedSubgroup {
    pub name: String,
    pub group: PermutationGroup,
}

/// Classifies the strongly regular graphs on which `group` acts
/// transitively with point stabilizer one of `subgroups`.
pub fn srg_search(
    group: &PermutationGroup,
    subgroups: &[NamedSubgroup],
    options: SearchOptions,
) -> Result<(Vec<SrgFound>, SearchStats), ConstructError> {
    let mut classifier = SrgClassifier::new();
    for sub in subgroups {
        let index = group.order() / sub.group.order();
        if index > options.max_degree as u128 {
            continue;
        }
        let action = TransitiveAction::on_cosets_bounded(
            group,
            &sub.group,
            options.max_degree as u128,
            crate::perm::DEFAULT_ELEMENT_BOUND,
        )?;
        let primitive = action.is_primitive();
        let mut stats = SearchStats::default();
        let cands = srg_selections(&action, &mut stats);
        classifier.stats.absorb(&stats);
        for (selection, params) in cands {
            classifier.offer(
                Candidate { subgroup: &sub.name, action: &action, selection, params, primitive },
                options.budget,
                options.aut_max_order,
            )?;
        }
    }
    Ok(classifier.into_sorted())
}
