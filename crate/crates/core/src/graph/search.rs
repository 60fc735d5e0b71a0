//! Individualization–refinement search for automorphisms and isomorphisms.
//!
//! The first path of the search tree always individualizes the least vertex
//! of the target cell. Automorphisms are found by locating leaves equivalent
//! to the first leaf; the group discovered so far is kept as a stabilizer
//! chain whose base is the first path, and its basic orbits prune siblings.

use alloc::vec::Vec;

use super::refine::Partition;
use super::Graph;
use crate::perm::{Permutation, StabChain};

/// Node budget for one search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 100_000_000 }
    }
}

impl SearchBudget {
    pub const fn nodes(max_nodes: u64) -> Self {
        SearchBudget { max_nodes }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
}

#[derive(Debug, Clone)]
pub struct AutomorphismResult {
    pub generators: Vec<Permutation>,
    pub order: u128,
    /// Individualized vertices of the first path.
    pub base: Vec<usize>,
    pub nodes: u64,
}

struct Counter {
    nodes: u64,
    max: u64,
}

impl Counter {
    fn tick(&mut self) -> Result<(), SearchError> {
        self.nodes += 1;
        if self.nodes > self.max {
            Err(SearchError::BudgetExceeded { nodes: self.nodes })
        } else {
            Ok(())
        }
    }
}

/// Node signature compared between equivalent nodes: refinement trace plus
/// the position and size of the target cell.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct NodeSig {
    trace: u64,
    target: Option<(usize, usize)>,
}

fn signature(p: &Partition, trace: u64) -> NodeSig {
    NodeSig { trace, target: p.target_cell().map(|s| (s, p.cell(s).len())) }
}

struct FirstPath {
    parts: Vec<Partition>,
    sigs: Vec<NodeSig>,
    base: Vec<usize>,
    leaf: Vec<u32>,
}

fn first_path(g: &Graph, counter: &mut Counter) -> Result<FirstPath, SearchError> {
    let mut p = Partition::unit(g.order());
    let tr = if g.order() > 0 { p.refine(g, &[0]) } else { 0 };
    counter.tick()?;
    let mut sigs = alloc::vec![signature(&p, tr)];
    let mut parts = alloc::vec![p.clone()];
    let mut base = Vec::new();
    while let Some(t) = p.target_cell() {
        let v = *p.cell(t).iter().min().unwrap() as usize;
        base.push(v);
        let s = p.individualize(v);
        let tr = p.refine(g, &[s]);
        counter.tick()?;
        sigs.push(signature(&p, tr));
        parts.push(p.clone());
    }
    let leaf = p.labelling().to_vec();
    Ok(FirstPath { parts, sigs, base, leaf })
}

fn mapping(from: &[u32], to: &[u32]) -> Permutation {
    let mut images = alloc::vec![0u32; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        images[a as usize] = b;
    }
    Permutation::from_images_unchecked(images)
}

/// `true` iff relabelling `g1` by `gamma` yields `g2`.
fn maps_onto(g1: &Graph, g2: &Graph, gamma: &Permutation) -> bool {
    (0..g1.order()).all(|i| {
        let gi = gamma.apply(i);
        g1.degree(i) == g2.degree(gi) && g1.neighbours(i).all(|j| g2.has_edge(gi, gamma.apply(j)))
    })
}

/// Depth-first search below `p` (at `depth`) for a leaf whose labelling maps
/// `reference` onto `target`. `prune_gens` generate a group of automorphisms
/// of `target` fixing the current prefix; children in one orbit are
/// equivalent.
#[allow(clippy::too_many_arguments)]
fn search_leaf(
    reference: &Graph,
    target: &Graph,
    p: &Partition,
    depth: usize,
    fp: &FirstPath,
    prune_gens: Option<&[Permutation]>,
    counter: &mut Counter,
) -> Result<Option<Permutation>, SearchError> {
    if p.is_discrete() {
        let gamma = mapping(&fp.leaf, p.labelling());
        return Ok(maps_onto(reference, target, &gamma).then_some(gamma));
    }
    let t = p.target_cell().unwrap();
    let mut cell: Vec<u32> = p.cell(t).to_vec();
    cell.sort_unstable();
    let orbit_rep = prune_gens.filter(|g| !g.is_empty()).map(|gens| orbit_map(gens, target.order()));
    for &w in &cell {
        let w = w as usize;
        if let Some(rep) = &orbit_rep {
            if rep[w] as usize != w && cell.binary_search(&rep[w]).is_ok() {
                continue;
            }
        }
        let mut child = p.clone();
        let s = child.individualize(w);
        let tr = child.refine(target, &[s]);
        counter.tick()?;
        if signature(&child, tr) != fp.sigs[depth + 1] {
            continue;
        }
        let child_gens = match prune_gens {
            Some(gens) if !gens.is_empty() => {
                Some(StabChain::with_base_prefix(target.order(), gens, &[w]).stabilizer_generators(1))
            }
            _ => None,
        };
        if let Some(found) = search_leaf(reference, target, &child, depth + 1, fp, child_gens.as_deref(), counter)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// For each point, the least point of its orbit under `gens`.
fn orbit_map(gens: &[Permutation], n: usize) -> Vec<u32> {
    let mut rep: Vec<u32> = (0..n as u32).collect();
    fn find(rep: &mut [u32], mut x: usize) -> usize {
        while rep[x] as usize != x {
            rep[x] = rep[rep[x] as usize];
            x = rep[x] as usize;
        }
        x
    }
    for g in gens {
        for x in 0..n {
            let (a, b) = (find(&mut rep, x), find(&mut rep, g.apply(x)));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                rep[hi] = lo as u32;
            }
        }
    }
    for x in 0..n {
        let r = find(&mut rep, x);
        rep[x] = r as u32;
    }
    rep
}

/// Full automorphism group of `g`.
pub fn automorphism_group(g: &Graph, budget: SearchBudget) -> Result<AutomorphismResult, SearchError> {
    automorphism_group_with_known(g, &[], budget)
}

/// Full automorphism group of `g`, seeded with automorphisms already known
/// (for instance the image of a group the graph was constructed from).
/// Seeds that are not automorphisms are ignored.
pub fn automorphism_group_with_known(
    g: &Graph,
    known: &[Permutation],
    budget: SearchBudget,
) -> Result<AutomorphismResult, SearchError> {
    let n = g.order();
    let mut counter = Counter { nodes: 0, max: budget.max_nodes };
    let fp = first_path(g, &mut counter)?;
    let mut gens: Vec<Permutation> =
        known.iter().filter(|p| !p.is_identity() && g.is_automorphism(p)).cloned().collect();
    let mut chain = StabChain::with_base_prefix(n, &gens, &fp.base);

    for level in (0..fp.base.len()).rev() {
        let node = &fp.parts[level];
        let t = node.target_cell().expect("non-leaf node on first path");
        let mut cell: Vec<u32> = node.cell(t).to_vec();
        cell.sort_unstable();
        let b = fp.base[level];
        let mut failed: Vec<usize> = Vec::new();
        for &w in &cell {
            let w = w as usize;
            let stab = chain.stabilizer_generators(level);
            let rep = orbit_map(&stab, n);
            if rep[w] == rep[b] {
                continue;
            }
            if failed.iter().any(|&f| rep[f] == rep[w]) {
                continue;
            }
            let mut child = node.clone();
            let s = child.individualize(w);
            let tr = child.refine(g, &[s]);
            counter.tick()?;
            let found = if signature(&child, tr) == fp.sigs[level + 1] {
                search_leaf(g, g, &child, level + 1, &fp, None, &mut counter)?
            } else {
                None
            };
            match found {
                Some(gamma) => {
                    debug_assert!(g.is_automorphism(&gamma));
                    gens.push(gamma);
                    chain = StabChain::with_base_prefix(n, &gens, &fp.base);
                }
                None => failed.push(w),
            }
        }
    }
    let order = chain.order();
    if gens.is_empty() {
        gens.push(Permutation::identity(n));
    }
    Ok(AutomorphismResult { generators: gens, order, base: fp.base, nodes: counter.nodes })
}

/// Searches for `γ` with `g1` relabelled by `γ` equal to `g2`, given
/// generators of `Aut(g2)` (possibly a subgroup; a larger group prunes more).
pub fn find_isomorphism_with_aut(
    g1: &Graph,
    g2: &Graph,
    aut2: &[Permutation],
    budget: SearchBudget,
) -> Result<Option<Permutation>, SearchError> {
    if g1.order() != g2.order() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let n = g1.order();
    if n == 0 {
        return Ok(Some(Permutation::identity(0)));
    }
    let mut counter = Counter { nodes: 0, max: budget.max_nodes };
    let fp = first_path(g1, &mut counter)?;
    let mut root = Partition::unit(n);
    let tr = root.refine(g2, &[0]);
    counter.tick()?;
    if signature(&root, tr) != fp.sigs[0] {
        return Ok(None);
    }
    let gens: Vec<Permutation> = aut2.iter().filter(|p| !p.is_identity()).cloned().collect();
    search_leaf(g1, g2, &root, 0, &fp, Some(&gens), &mut counter)
}

/// Searches for an isomorphism `g1 → g2`; computes `Aut(g2)` for pruning.
pub fn find_isomorphism(g1: &Graph, g2: &Graph, budget: SearchBudget) -> Result<Option<Permutation>, SearchError> {
    if g1.order() != g2.order() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let aut = automorphism_group(g2, budget)?;
    let remaining = SearchBudget::nodes(budget.max_nodes.saturating_sub(aut.nodes));
    find_isomorphism_with_aut(g1, g2, &aut.generators, remaining)
}

pub fn are_isomorphic(g1: &Graph, g2: &Graph, budget: SearchBudget) -> Result<bool, SearchError> {
    if super::invariant_fingerprint(g1) != super::invariant_fingerprint(g2) {
        return Ok(false);
    }
    Ok(find_isomorphism(g1, g2, budget)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{petersen_graph, triangular_graph};
    use alloc::vec;

    #[test]
    fn petersen_aut_order() {
        let r = automorphism_group(&petersen_graph(), SearchBudget::default()).unwrap();
        assert_eq!(r.order, 120);
        assert!(r.generators.iter().all(|p| petersen_graph().is_automorphism(p)));
    }

    #[test]
    fn small_aut_orders() {
        let b = SearchBudget::default();
        assert_eq!(automorphism_group(&Graph::cycle(7), b).unwrap().order, 14);
        assert_eq!(automorphism_group(&Graph::complete(6), b).unwrap().order, 720);
        assert_eq!(automorphism_group(&Graph::empty(5), b).unwrap().order, 120);
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(automorphism_group(&path, b).unwrap().order, 2);
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(automorphism_group(&star, b).unwrap().order, 24);
    }

    #[test]
    fn triangular_eight_is_s8() {
        let r = automorphism_group(&triangular_graph(8), SearchBudget::default()).unwrap();
        assert_eq!(r.order, 40320);
    }

    #[test]
    fn relabelled_graph_is_isomorphic() {
        let g = petersen_graph();
        let perm = Permutation::from_cycles(10, &[vec![0, 5, 3], vec![1, 9, 2, 7]]).unwrap();
        let h = g.relabel(&perm);
        let gamma = find_isomorphism(&g, &h, SearchBudget::default()).unwrap().unwrap();
        assert_eq!(g.relabel(&gamma), h);
        assert!(are_isomorphic(&g, &h, SearchBudget::default()).unwrap());
    }

    #[test]
    fn pentagon_self_complementary() {
        let c5 = Graph::cycle(5);
        assert!(are_isomorphic(&c5, &c5.complement(), SearchBudget::default()).unwrap());
    }

    #[test]
    fn non_isomorphic_regular_graphs() {
        // C6 vs two triangles: same degree sequence.
        let c6 = Graph::cycle(6);
        let tt = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert_eq!(find_isomorphism(&c6, &tt, SearchBudget::default()).unwrap(), None);
    }

    #[test]
    fn budget_is_reported() {
        let r = automorphism_group(&triangular_graph(8), SearchBudget::nodes(3));
        assert!(matches!(r, Err(SearchError::BudgetExceeded { .. })));
    }
}
