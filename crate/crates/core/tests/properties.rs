use proptest::prelude::*;
use srgforge_core::action::TransitiveAction;
use srgforge_core::graph::{Graph, Regularity};
use srgforge_core::perm::{Permutation, PermutationGroup};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

fn perms(n: usize, count: usize) -> impl Strategy<Value = Vec<Permutation>> {
    proptest::collection::vec(perm(n), count)
}

fn graph(max_v: usize) -> impl Strategy<Value = Graph> {
    (1..=max_v).prop_flat_map(|v| {
        proptest::collection::vec(any::<bool>(), v * (v - 1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            let mut g = Graph::empty(v);
            for i in 0..v {
                for j in i + 1..v {
                    if it.next().unwrap() {
                        g.add_edge(i, j);
                    }
                }
            }
            g
        })
    })
}

/// S6 and a few of its subgroups, as small ambient groups for coset actions.
fn s6() -> PermutationGroup {
    let gens = vec![
        Permutation::from_cycles(6, &[vec![0, 1]]).unwrap(),
        Permutation::from_cycles(6, &[vec![0, 1, 2, 3, 4, 5]]).unwrap(),
    ];
    PermutationGroup::new(6, gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_axioms(p in perms(9, 3)) {
        let (a, b, c) = (&p[0], &p[1], &p[2]);
        let e = Permutation::identity(9);
        prop_assert_eq!(a.then(b).then(c), a.then(&b.then(c)));
        prop_assert_eq!(a.then(&e), a.clone());
        prop_assert_eq!(e.then(a), a.clone());
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert!(a.inverse().then(a).is_identity());
        prop_assert!(a.pow(a.order()).is_identity());
        for x in 0..9 {
            prop_assert_eq!(a.then(b).apply(x), b.apply(a.apply(x)));
        }
    }

    #[test]
    fn cycle_notation_round_trip(a in perm(12)) {
        prop_assert_eq!(Permutation::from_cycles(12, &a.cycles()).unwrap(), a);
    }

    #[test]
    fn orbit_stabilizer(gens in perms(7, 2), point in 0usize..7) {
        let g = PermutationGroup::new(7, gens).unwrap();
        let orbit = g.orbit(point).unwrap();
        let stab = g.point_stabilizer(point).unwrap();
        prop_assert_eq!(orbit.len() as u128 * stab.order(), g.order());
        for h in stab.generators() {
            prop_assert_eq!(h.apply(point), point);
            prop_assert!(g.contains(h).unwrap());
        }
    }

    #[test]
    fn membership_matches_enumeration(gens in perms(5, 2), x in perm(5)) {
        let g = PermutationGroup::new(5, gens).unwrap();
        let all = g.elements(200).unwrap();
        prop_assert_eq!(all.len() as u128, g.order());
        prop_assert_eq!(g.contains(&x).unwrap(), all.contains(&x));
    }

    #[test]
    fn pairing_is_an_involution(gens in perms(6, 2)) {
        let ambient = s6();
        let h = PermutationGroup::new(6, gens).unwrap();
        let action = TransitiveAction::on_cosets(&ambient, &h).unwrap();
        let subs = action.suborbits();
        for (i, d) in subs.iter().enumerate() {
            let p = action.paired_orbit(d).unwrap();
            prop_assert_eq!(action.paired_orbit(p).unwrap(), d);
            prop_assert_eq!(subs[d.paired_with].points.clone(), p.points.clone());
            prop_assert_eq!(d.self_paired, d.paired_with == i);
            prop_assert_eq!(p.len(), d.len());
        }
        // The orbital of (x, y) is paired with the orbital of (y, x).
        let n = action.degree();
        for x in 0..n.min(20) {
            for y in 0..n.min(20) {
                prop_assert_eq!(subs[action.orbital(x, y)].paired_with, action.orbital(y, x));
            }
        }
    }

    #[test]
    fn coset_action_is_a_homomorphism(gens in perms(6, 2), g in perm(6), h in perm(6)) {
        let ambient = s6();
        let sub = PermutationGroup::new(6, gens).unwrap();
        let action = TransitiveAction::on_cosets(&ambient, &sub).unwrap();
        let gh = action.image_of(&g.then(&h));
        prop_assert_eq!(gh, action.image_of(&g).then(&action.image_of(&h)));
        prop_assert!(action.image_of(&Permutation::identity(6)).is_identity());
        prop_assert_eq!(action.degree() as u128, ambient.order() / sub.order());
        let fixes_alpha = action.image_of(&g).apply(action.base_point()) == action.base_point();
        prop_assert_eq!(fixes_alpha, sub.contains(&g).unwrap());
    }

    #[test]
    fn complement_is_an_involution(g in graph(40)) {
        let c = g.complement();
        prop_assert_eq!(c.complement(), g.clone());
        let v = g.order();
        prop_assert_eq!(g.edge_count() + c.edge_count(), v * (v - 1) / 2);
        if let Some(p) = g.is_strongly_regular() {
            match c.regularity() {
                Regularity::StronglyRegular(q) | Regularity::Disconnected(q) => prop_assert_eq!(q, p.complement()),
                other => prop_assert!(false, "complement of {} is {:?}", p, other),
            }
            prop_assert_eq!(p.complement().complement(), p);
        }
    }
}
