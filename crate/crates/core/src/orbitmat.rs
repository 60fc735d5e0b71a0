//! Column orbit matrices of strongly regular graphs and their collapses.
//!
//! For an SRG with an automorphism group splitting the vertices into orbits
//! `O₁…O_t` of lengths `n₁…n_t`, `c_ij` is the number of neighbours in `O_i`
//! of any vertex of `O_j`. Such a matrix satisfies
//!
//! * `Σ_i c_ij = k`,
//! * `Σ_j n_j c_ij = k n_i`,
//! * `Σ_s n_s c_is c_js = n_j (δ_ij (k − μ) + μ n_i + (λ − μ) c_ij)`,
//!
//! the last two being the rational identities multiplied through by `n_i`
//! and `n_j`. All checks use exact integers.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::graph::{Graph, SrgParams};
use crate::perm::{orbits_of, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbitMatrixError {
    #[error("generator {0} is not an automorphism of the graph")]
    NotAutomorphism(usize),
    #[error("generator {0} has degree {1}, graph has {2} vertices")]
    DegreeMismatch(usize, usize, usize),
    #[error("graph is not strongly regular")]
    NotStronglyRegular,
    #[error("partition does not cover the vertex set exactly once")]
    BadPartition,
    #[error("column sums of block ({0},{1}) are not constant")]
    NonConstantBlock(usize, usize),
    #[error("orbit matrix violates its defining equations ({0} violations)")]
    Invalid(usize),
    #[error("orbit lengths are not all equal")]
    UnequalLengths,
    #[error("diagonal is not constant")]
    NonConstantDiagonal,
    #[error("off-diagonal entries take {0} distinct values, expected 2")]
    NotTwoValued(usize),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("collapsed matrix is not strongly regular (x = {x}, y = {y})")]
    CollapseNotSrg { x: u64, y: u64 },
    #[error("predicted parameters are not integral (x = {x}, y = {y})")]
    PredictionNotIntegral { x: u64, y: u64 },
    #[error("collapsed graph {got} disagrees with prediction {predicted}")]
    PredictionMismatch { got: SrgParams, predicted: SrgParams },
}

/// A `t × t` column orbit matrix with its orbit lengths and source parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitMatrix {
    pub lengths: Vec<u64>,
    /// Row-major, `entries[i][j] = c_ij`.
    pub entries: Vec<Vec<u64>>,
    pub params: SrgParams,
}

/// One failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Shape,
    /// `Σ n_i ≠ v`.
    LengthSum,
    /// `c_ij > n_i`.
    EntryBound {
        i: usize,
        j: usize,
    },
    /// `Σ_i c_ij ≠ k`.
    ColumnSum {
        j: usize,
    },
    /// `Σ_j n_j c_ij ≠ k n_i`.
    RowBalance {
        i: usize,
    },
    /// The quadratic identity at `(i, j)`.
    Quadratic {
        i: usize,
        j: usize,
    },
}

/// Outcome of [`validate_orbit_matrix`]: every violated check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl OrbitMatrix {
    pub fn t(&self) -> usize {
        self.lengths.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    fn shape_ok(&self) -> bool {
        let t = self.t();
        t > 0 && self.entries.len() == t && self.entries.iter().all(|r| r.len() == t)
    }

    /// The common orbit length, if all lengths agree.
    pub fn uniform_length(&self) -> Option<u64> {
        let n = *self.lengths.first()?;
        self.lengths.iter().all(|&l| l == n).then_some(n)
    }

    /// The common diagonal entry, if constant.
    pub fn constant_diagonal(&self) -> Option<u64> {
        let d = *self.entries.first()?.first()?;
        (0..self.t()).all(|i| self.entries[i][i] == d).then_some(d)
    }

    /// Distinct off-diagonal values in increasing order.
    pub fn off_diagonal_values(&self) -> Vec<u64> {
        let t = self.t();
        let set: BTreeSet<u64> = (0..t)
            .flat_map(|i| (0..t).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| self.entries[i][j])
            .collect();
        set.into_iter().collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let t = self.t();
        (0..t).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

/// Orbits of the group generated by `gens` on the vertices of `g`, after
/// checking that every generator is an automorphism. Orbits are sorted and
/// listed by least vertex.
pub fn orbit_partition(g: &Graph, gens: &[Permutation]) -> Result<Vec<Vec<usize>>, OrbitMatrixError> {
    let v = g.order();
    for (i, p) in gens.iter().enumerate() {
        if p.degree() != v {
            return Err(OrbitMatrixError::DegreeMismatch(i, p.degree(), v));
        }
        if !g.is_automorphism(p) {
            return Err(OrbitMatrixError::NotAutomorphism(i));
        }
    }
    let mut orbits = orbits_of(gens, v);
    for o in &mut orbits {
        o.sort_unstable();
    }
    Ok(orbits)
}

/// The column orbit matrix of an SRG for a vertex partition, validated
/// before it is returned.
pub fn column_orbit_matrix(g: &Graph, partition: &[Vec<usize>]) -> Result<OrbitMatrix, OrbitMatrixError> {
    let params = g.is_strongly_regular().ok_or(OrbitMatrixError::NotStronglyRegular)?;
    let v = g.order();
    let t = partition.len();
    let mut part_of = alloc::vec![usize::MAX; v];
    for (i, cell) in partition.iter().enumerate() {
        for &x in cell {
            if x >= v || part_of[x] != usize::MAX {
                return Err(OrbitMatrixError::BadPartition);
            }
            part_of[x] = i;
        }
    }
    if part_of.contains(&usize::MAX) {
        return Err(OrbitMatrixError::BadPartition);
    }
    let mut entries = alloc::vec![alloc::vec![0u64; t]; t];
    for (j, cell) in partition.iter().enumerate() {
        let mut first: Option<Vec<u64>> = None;
        for &x in cell {
            let mut col = alloc::vec![0u64; t];
            for y in g.neighbours(x) {
                col[part_of[y]] += 1;
            }
            match &first {
                None => first = Some(col),
                Some(f) => {
                    if let Some(i) = (0..t).find(|&i| f[i] != col[i]) {
                        return Err(OrbitMatrixError::NonConstantBlock(i, j));
                    }
                }
            }
        }
        let col = first.ok_or(OrbitMatrixError::BadPartition)?;
        for i in 0..t {
            entries[i][j] = col[i];
        }
    }
    let m = OrbitMatrix { lengths: partition.iter().map(|c| c.len() as u64).collect(), entries, params };
    let verdict = validate_orbit_matrix(&m);
    if !verdict.is_valid() {
        return Err(OrbitMatrixError::Invalid(verdict.violations.len()));
    }
    Ok(m)
}

/// Checks the defining equations exactly and lists every violation.
pub fn validate_orbit_matrix(m: &OrbitMatrix) -> Verdict {
    let mut violations = Vec::new();
    if !m.shape_ok() {
        return Verdict { violations: alloc::vec![Violation::Shape] };
    }
    let t = m.t();
    let p = m.params;
    let (k, lambda, mu) = (p.k as i128, p.lambda as i128, p.mu as i128);
    let n: Vec<i128> = m.lengths.iter().map(|&x| x as i128).collect();
    let c = |i: usize, j: usize| m.entries[i][j] as i128;
    if n.iter().sum::<i128>() != p.v as i128 {
        violations.push(Violation::LengthSum);
    }
    for (i, &ni) in n.iter().enumerate() {
        for j in 0..t {
            if c(i, j) > ni {
                violations.push(Violation::EntryBound { i, j });
            }
        }
    }
    for j in 0..t {
        if (0..t).map(|i| c(i, j)).sum::<i128>() != k {
            violations.push(Violation::ColumnSum { j });
        }
    }
    for (i, &ni) in n.iter().enumerate() {
        if (0..t).map(|j| n[j] * c(i, j)).sum::<i128>() != k * ni {
            violations.push(Violation::RowBalance { i });
        }
    }
    for i in 0..t {
        for j in 0..t {
            let lhs: i128 = (0..t).map(|s| n[s] * c(i, s) * c(j, s)).sum();
            let delta = if i == j { k - mu } else { 0 };
            let rhs = n[j] * (delta + mu * n[i] + (lambda - mu) * c(i, j));
            if lhs != rhs {
                violations.push(Violation::Quadratic { i, j });
            }
        }
    }
    Verdict { violations }
}

/// Which off-diagonal value becomes an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CollapseSpec {
    pub x: u64,
    pub y: u64,
    pub d: u64,
    pub n: u64,
}

/// Parameters `(t, a, b, c)` predicted from the source parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CollapsePrediction {
    pub t: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl CollapsePrediction {
    pub fn params(&self) -> SrgParams {
        SrgParams::new(self.t, self.a, self.b, self.c)
    }
}

/// A collapsed graph with the assignment and prediction that produced it.
#[derive(Debug, Clone)]
pub struct Collapse {
    pub spec: CollapseSpec,
    pub graph: Graph,
    pub params: SrgParams,
    pub prediction: CollapsePrediction,
}

fn exact_div(num: i128, den: i128) -> Option<u64> {
    (den != 0 && num % den == 0 && num / den >= 0).then(|| (num / den) as u64)
}

/// Solves `a·x + (t−a−1)·y = k−d` and the two quadratic identities for
/// adjacent and non-adjacent pairs of the collapsed graph.
pub fn predict(params: SrgParams, t: u64, spec: CollapseSpec) -> Option<CollapsePrediction> {
    let (x, y, d, n) = (spec.x as i128, spec.y as i128, spec.d as i128, spec.n as i128);
    let (k, lambda, mu) = (params.k as i128, params.lambda as i128, params.mu as i128);
    let ti = t as i128;
    let a = exact_div(k - d - (ti - 1) * y, x - y)? as i128;
    if a >= ti {
        return None;
    }
    let sq = (x - y) * (x - y);
    // 2dx + b x² + 2(a−b−1)xy + (t−2a+b)y² = μn + (λ−μ)x
    let b = exact_div(mu * n + (lambda - mu) * x - 2 * d * x - 2 * (a - 1) * x * y - (ti - 2 * a) * y * y, sq)?;
    // 2dy + c x² + 2(a−c)xy + (t−2a−2+c)y² = μn + (λ−μ)y
    let c = exact_div(mu * n + (lambda - mu) * y - 2 * d * y - 2 * a * x * y - (ti - 2 * a - 2) * y * y, sq)?;
    (b < a as u64 && c <= a as u64).then_some(CollapsePrediction { t, a: a as u64, b, c })
}

fn value_graph(m: &OrbitMatrix, edge: impl Fn(u64) -> bool) -> Graph {
    Graph::from_fn(m.t(), |i, j| edge(m.entries[i][j]))
}

fn collapse_preconditions(m: &OrbitMatrix) -> Result<(u64, u64), OrbitMatrixError> {
    let n = m.uniform_length().ok_or(OrbitMatrixError::UnequalLengths)?;
    let d = m.constant_diagonal().ok_or(OrbitMatrixError::NonConstantDiagonal)?;
    if !m.is_symmetric() {
        return Err(OrbitMatrixError::NotSymmetric);
    }
    Ok((n, d))
}

/// Both collapses of a two-valued orbit matrix: `(x, y) ↦ (1, 0)` for the
/// smaller value as `x` first, then the swapped assignment.
pub fn collapse(m: &OrbitMatrix) -> Result<[Collapse; 2], OrbitMatrixError> {
    let (n, d) = collapse_preconditions(m)?;
    let values = m.off_diagonal_values();
    if values.len() != 2 {
        return Err(OrbitMatrixError::NotTwoValued(values.len()));
    }
    let one = |x: u64, y: u64| -> Result<Collapse, OrbitMatrixError> {
        let spec = CollapseSpec { x, y, d, n };
        let graph = value_graph(m, |c| c == x);
        let params = graph.is_strongly_regular().ok_or(OrbitMatrixError::CollapseNotSrg { x, y })?;
        let prediction =
            predict(m.params, m.t() as u64, spec).ok_or(OrbitMatrixError::PredictionNotIntegral { x, y })?;
        if prediction.params() != params {
            return Err(OrbitMatrixError::PredictionMismatch { got: params, predicted: prediction.params() });
        }
        Ok(Collapse { spec, graph, params, prediction })
    };
    Ok([one(values[0], values[1])?, one(values[1], values[0])?])
}

/// For each off-diagonal value `w`, maps `w ↦ 1` and every other value to 0,
/// keeping the strongly regular results.
pub fn generalized_collapse(m: &OrbitMatrix) -> Result<Vec<(u64, Graph, SrgParams)>, OrbitMatrixError> {
    collapse_preconditions(m)?;
    Ok(m.off_diagonal_values()
        .into_iter()
        .filter_map(|w| {
            let g = value_graph(m, |c| c == w);
            g.is_strongly_regular().map(|p| (w, g, p))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{petersen_graph, triangular_graph};
    use alloc::vec;

    #[test]
    fn single_orbit_reduces_to_counting_identity() {
        let g = petersen_graph();
        let m = column_orbit_matrix(&g, &[(0..10).collect()]).unwrap();
        assert_eq!(m.entries, vec![vec![3]]);
        let bad = OrbitMatrix { lengths: vec![10], entries: vec![vec![3]], params: SrgParams::new(10, 3, 0, 2) };
        assert_eq!(validate_orbit_matrix(&bad).violations, vec![Violation::Quadratic { i: 0, j: 0 }]);
    }

    #[test]
    fn singleton_partition_is_adjacency() {
        let g = petersen_graph();
        let part: Vec<Vec<usize>> = (0..10).map(|i| vec![i]).collect();
        let m = column_orbit_matrix(&g, &part).unwrap();
        let adj: Vec<Vec<u64>> = g.to_matrix().iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect();
        assert_eq!(m.entries, adj);
    }

    #[test]
    fn perturbation_is_caught() {
        let g = triangular_graph(6);
        let rot = Permutation::from_cycles(15, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert!(matches!(orbit_partition(&g, &[rot]), Err(OrbitMatrixError::NotAutomorphism(0))));
        let part: Vec<Vec<usize>> = (0..15).map(|i| vec![i]).collect();
        let mut m = column_orbit_matrix(&g, &part).unwrap();
        m.entries[0][1] += 1;
        let v = validate_orbit_matrix(&m);
        assert!(v.violations.contains(&Violation::ColumnSum { j: 1 }));
    }

    #[test]
    fn prediction_for_petersen_collapse() {
        let p = predict(SrgParams::new(40, 12, 2, 4), 10, CollapseSpec { x: 0, y: 2, d: 0, n: 4 }).unwrap();
        assert_eq!(p.params(), SrgParams::new(10, 3, 0, 1));
        let q = predict(SrgParams::new(40, 12, 2, 4), 10, CollapseSpec { x: 2, y: 0, d: 0, n: 4 }).unwrap();
        assert_eq!(q.params(), SrgParams::new(10, 6, 3, 4));
    }

    #[test]
    fn trivial_partition_collapse_is_identity() {
        // Singletons: n = 1, d = 0, values {0, 1}; collapsing 1 ↦ 1 gives g back.
        let g = petersen_graph();
        let part: Vec<Vec<usize>> = (0..10).map(|i| vec![i]).collect();
        let m = column_orbit_matrix(&g, &part).unwrap();
        let [a, b] = collapse(&m).unwrap();
        assert_eq!(b.graph, g);
        assert_eq!(a.graph, g.complement());
        let gen = generalized_collapse(&m).unwrap();
        assert_eq!(gen.len(), 2);
    }
}
