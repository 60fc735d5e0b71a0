use proptest::prelude::*;
use srgforge_core::graph::{count_cliques, petersen_graph, triangular_graph, Graph, SrgParams};
use srgforge_core::perm::Permutation;

/// Strong regularity from the definition, on a boolean matrix.
fn oracle(g: &Graph) -> Option<SrgParams> {
    let v = g.order();
    let a: Vec<Vec<bool>> = (0..v).map(|i| (0..v).map(|j| g.has_edge(i, j)).collect()).collect();
    let deg: Vec<usize> = a.iter().map(|r| r.iter().filter(|&&x| x).count()).collect();
    let k = *deg.first()?;
    if deg.iter().any(|&d| d != k) || k == 0 || k + 1 >= v {
        return None;
    }
    let (mut lambda, mut mu) = (None, None);
    for i in 0..v {
        for j in i + 1..v {
            let common = (0..v).filter(|&z| a[i][z] && a[j][z]).count();
            let slot = if a[i][j] { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(common),
                Some(c) if c != common => return None,
                _ => {}
            }
        }
    }
    let (lambda, mu) = (lambda?, mu?);
    (mu > 0).then(|| SrgParams::new(v as u64, k as u64, lambda as u64, mu as u64))
}

fn paley(q: usize) -> Graph {
    let squares: Vec<bool> = {
        let mut s = vec![false; q];
        for x in 1..q {
            s[x * x % q] = true;
        }
        s
    };
    Graph::from_fn(q, |i, j| squares[(i + q - j) % q])
}

fn rook(n: usize) -> Graph {
    Graph::from_fn(n * n, |i, j| i / n == j / n || i % n == j % n)
}

fn families() -> Vec<Graph> {
    let mut out = vec![petersen_graph(), Graph::cycle(5), Graph::cycle(6), Graph::complete(7), Graph::empty(4)];
    out.extend((4..=11).map(triangular_graph));
    out.extend([5, 13, 17, 29, 37, 41, 53, 61].map(paley));
    out.extend((2..=8).map(rook));
    let mut all: Vec<Graph> = out.iter().map(Graph::complement).collect();
    all.extend(out);
    all
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

#[test]
fn families_agree_with_oracle() {
    let mut srgs = 0;
    for g in families() {
        let got = g.is_strongly_regular();
        assert_eq!(got, oracle(&g), "{g:?}");
        if let Some(p) = got {
            srgs += 1;
            assert!(p.counting_identity_holds());
            assert!((0..g.order()).all(|i| g.row_satisfies_srg_identity(i, &p)));
        }
    }
    assert!(srgs > 40);
}

#[test]
fn known_parameters() {
    assert_eq!(paley(13).is_strongly_regular(), Some(SrgParams::new(13, 6, 2, 3)));
    assert_eq!(rook(4).is_strongly_regular(), Some(SrgParams::new(16, 6, 2, 2)));
    assert_eq!(triangular_graph(10).is_strongly_regular(), Some(SrgParams::new(45, 16, 8, 4)));
    assert_eq!(Graph::cycle(6).is_strongly_regular(), None);
}

#[test]
fn triangle_and_edge_counts() {
    for g in families() {
        assert_eq!(count_cliques(&g, 2), g.edge_count() as u128);
        if let Some(p) = g.is_strongly_regular() {
            assert_eq!(count_cliques(&g, 3) as u64, p.v * p.k * p.lambda / 6);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn random_graphs_agree(v in 1usize..=64, density in 0.0f64..1.0, coins in proptest::collection::vec(0.0f64..1.0, 2016)) {
        let mut coin = coins.into_iter();
        let mut g = Graph::empty(v);
        for i in 0..v {
            for j in i + 1..v {
                if coin.next().unwrap() < density {
                    g.add_edge(i, j);
                }
            }
        }
        prop_assert_eq!(g.is_strongly_regular(), oracle(&g));
    }

    #[test]
    fn relabelled_and_perturbed_families_agree(idx in 0usize..46, p in perm(64), a in 0usize..64, b in 0usize..64) {
        let fam = families();
        let g = &fam[idx % fam.len()];
        let v = g.order();
        let images: Vec<u32> = p.images().iter().copied().filter(|&x| (x as usize) < v).collect();
        let q = Permutation::from_images(images).unwrap();
        let h = g.relabel(&q);
        prop_assert_eq!(h.is_strongly_regular(), g.is_strongly_regular());
        prop_assert_eq!(h.is_strongly_regular(), oracle(&h));
        let (a, b) = (a % v, b % v);
        if a != b {
            let flipped = Graph::from_fn(v, |i, j| h.has_edge(i, j) != ((i, j) == (a, b) || (i, j) == (b, a)));
            prop_assert_eq!(flipped.is_strongly_regular(), oracle(&flipped));
        }
    }
}
