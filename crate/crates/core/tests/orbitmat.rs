use srgforge_core::action::TransitiveAction;
use srgforge_core::graph::{Graph, SrgParams};
use srgforge_core::orbitmat::{
    collapse, column_orbit_matrix, generalized_collapse, orbit_partition, predict, validate_orbit_matrix, CollapseSpec,
    OrbitMatrix, OrbitMatrixError,
};
use srgforge_core::perm::{Permutation, PermutationGroup};

fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, cycles).unwrap()
}

/// `T(8)` with `A8` acting on it through the pairs action.
fn triangular_eight() -> (TransitiveAction, Graph) {
    let g = PermutationGroup::new(8, vec![cyc(8, &[&[0, 1, 2]]), cyc(8, &[&[1, 2, 3, 4, 5, 6, 7]])]).unwrap();
    let h =
        PermutationGroup::new(8, vec![cyc(8, &[&[0, 1], &[6, 7]]), cyc(8, &[&[0, 1, 2, 3, 4, 5], &[6, 7]])]).unwrap();
    let act = TransitiveAction::on_cosets(&g, &h).unwrap();
    let i12 = act.suborbits().iter().position(|s| s.len() == 12).unwrap();
    let sel = srgforge_core::construct::OrbitSelection::new(&act, &[i12]).unwrap();
    let graph = srgforge_core::construct::build_graph(&sel).unwrap();
    (act, graph)
}

/// The three defining equations, written out independently of the library.
fn rational_check(m: &OrbitMatrix) -> bool {
    let t = m.t();
    let p = m.params;
    let (k, l, mu) = (p.k as i128, p.lambda as i128, p.mu as i128);
    let n: Vec<i128> = m.lengths.iter().map(|&x| x as i128).collect();
    let c = |i: usize, j: usize| m.entries[i][j] as i128;
    let col = (0..t).all(|j| (0..t).map(|i| c(i, j)).sum::<i128>() == k);
    // Row balance: Σ_j (n_j/n_i) c_ij = k.
    let row = (0..t).all(|i| (0..t).map(|j| n[j] * c(i, j)).sum::<i128>() == k * n[i]);
    // Σ_s (n_s/n_j) c_is c_js = δ_ij(k−μ) + μ n_i + (λ−μ) c_ij, with both sides over n_j.
    let quad = (0..t).all(|i| {
        (0..t).all(|j| {
            let lhs: i128 = (0..t).map(|s| n[s] * c(i, s) * c(j, s)).sum();
            let delta = if i == j { k - mu } else { 0 };
            lhs == n[j] * (delta + mu * n[i] + (l - mu) * c(i, j))
        })
    });
    col && row && quad
}

#[test]
fn every_cyclic_subgroup_gives_a_valid_matrix() {
    let (act, g) = triangular_eight();
    let mut count = 0;
    act.ambient()
        .for_each_element(30_000, |x| {
            let part = orbit_partition(&g, &[act.image_of(x)]).unwrap();
            let m = column_orbit_matrix(&g, &part).unwrap();
            assert!(validate_orbit_matrix(&m).is_valid());
            assert!(rational_check(&m));
            count += 1;
        })
        .unwrap();
    assert_eq!(count, 20160);
}

#[test]
fn single_entry_mutations_are_caught() {
    let (act, g) = triangular_eight();
    let x = cyc(8, &[&[0, 1, 2, 3, 4, 5, 6]]);
    let part = orbit_partition(&g, &[act.image_of(&x)]).unwrap();
    let m = column_orbit_matrix(&g, &part).unwrap();
    assert_eq!(m.lengths, vec![7, 7, 7, 7]);
    for i in 0..m.t() {
        for j in 0..m.t() {
            for delta in [-1i64, 1, 3] {
                let mut bad = m.clone();
                let e = bad.entries[i][j] as i64 + delta;
                if e < 0 {
                    continue;
                }
                bad.entries[i][j] = e as u64;
                let verdict = validate_orbit_matrix(&bad);
                assert!(!verdict.is_valid(), "({i},{j}) {delta:+}");
                assert!(!rational_check(&bad));
            }
        }
    }
}

#[test]
fn non_automorphisms_are_rejected() {
    let (_, g) = triangular_eight();
    let mut images: Vec<u32> = (0..28).collect();
    images.swap(0, 27);
    images.swap(1, 5);
    let p = Permutation::from_images(images).unwrap();
    if !g.is_automorphism(&p) {
        assert_eq!(orbit_partition(&g, &[p]), Err(OrbitMatrixError::NotAutomorphism(0)));
    }
    assert!(matches!(column_orbit_matrix(&g, &[(0..20).collect()]), Err(OrbitMatrixError::BadPartition)));
}

#[test]
fn collapses_of_uniform_two_valued_matrices_are_srgs() {
    let (act, g) = triangular_eight();
    let mut collapses = 0;
    act.ambient()
        .for_each_element(30_000, |x| {
            let part = orbit_partition(&g, &[act.image_of(x)]).unwrap();
            let m = column_orbit_matrix(&g, &part).unwrap();
            if m.t() < 3
                || m.uniform_length().is_none()
                || m.constant_diagonal().is_none()
                || m.off_diagonal_values().len() != 2
            {
                return;
            }
            let [a, b] = collapse(&m).unwrap();
            assert_eq!(a.graph.complement(), b.graph);
            assert_eq!(a.params.complement(), b.params);
            for c in [&a, &b] {
                assert_eq!(c.graph.is_strongly_regular(), Some(c.params));
                assert_eq!(c.prediction.params(), c.params);
            }
            let general = generalized_collapse(&m).unwrap();
            assert_eq!(general.len(), 2);
            assert_eq!(general[0].1, a.graph);
            assert_eq!(general[1].1, b.graph);
            collapses += 1;
        })
        .unwrap();
    assert!(collapses > 0);
}

#[test]
fn collapse_preconditions() {
    let p = SrgParams::new(10, 3, 0, 1);
    let unequal = OrbitMatrix { lengths: vec![1, 2], entries: vec![vec![0, 1], vec![2, 1]], params: p };
    assert!(matches!(collapse(&unequal), Err(OrbitMatrixError::UnequalLengths)));
    let asym =
        OrbitMatrix { lengths: vec![2, 2, 2], entries: vec![vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]], params: p };
    assert!(matches!(collapse(&asym), Err(OrbitMatrixError::NotSymmetric)));
    let diag = OrbitMatrix { lengths: vec![2, 2], entries: vec![vec![0, 1], vec![1, 1]], params: p };
    assert!(matches!(collapse(&diag), Err(OrbitMatrixError::NonConstantDiagonal)));
}

#[test]
fn prediction_is_exact() {
    // E8 on (40,12,2,4): ten orbits of four, diagonal 0, values 0 and 2.
    let got = predict(SrgParams::new(40, 12, 2, 4), 10, CollapseSpec { x: 2, y: 0, d: 0, n: 4 }).unwrap();
    assert_eq!(got.params(), SrgParams::new(10, 6, 3, 4));
    let got = predict(SrgParams::new(40, 12, 2, 4), 10, CollapseSpec { x: 0, y: 2, d: 0, n: 4 }).unwrap();
    assert_eq!(got.params(), SrgParams::new(10, 3, 0, 1));
    assert!(predict(SrgParams::new(40, 12, 2, 4), 10, CollapseSpec { x: 1, y: 0, d: 0, n: 4 }).is_none());
}
