use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use latcc::gen::{random_distributive_lattice, random_poset};
use latcc::order::{
    birkhoff_repr, dm_completion, find_m3_n5, make_bounded, poset_from_json, poset_to_json, Lattice,
};

fn poset_from_seed(seed: u64, n: usize) -> latcc::order::Poset {
    let mut rng = StdRng::seed_from_u64(seed);
    random_poset(&mut rng, n, 0.4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn completion_is_a_lattice_preserving_bounds(seed in any::<u64>(), n in 1usize..=7) {
        let p = poset_from_seed(seed, n);
        let (lat, emb) = dm_completion(&p);
        prop_assert!(lat.check_laws().is_ok());
        for a in 0..n {
            prop_assert_eq!(lat.id(emb.apply(a)), p.id(a));
            for b in 0..n {
                prop_assert_eq!(p.leq(a, b), lat.leq(emb.apply(a), emb.apply(b)));
                if let [j] = p.mubs(a, b)[..] {
                    prop_assert_eq!(lat.join(emb.apply(a), emb.apply(b)), emb.apply(j));
                }
                if let [m] = p.mlbs(a, b)[..] {
                    prop_assert_eq!(lat.meet(emb.apply(a), emb.apply(b)), emb.apply(m));
                }
            }
        }
    }

    #[test]
    fn completion_of_a_lattice_adds_nothing(seed in any::<u64>(), n in 1usize..=6) {
        let (lat, _) = dm_completion(&poset_from_seed(seed, n));
        let (again, _) = dm_completion(lat.poset());
        prop_assert_eq!(again.len(), lat.len());
    }

    #[test]
    fn json_round_trip_is_byte_exact(seed in any::<u64>(), n in 1usize..=7) {
        let p = poset_from_seed(seed, n);
        let text = poset_to_json(&p);
        let back = poset_from_json(&text).unwrap();
        prop_assert_eq!(poset_to_json(&back), text);
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(back.leq(a, b), p.leq(a, b));
            }
        }
    }

    #[test]
    fn linear_extension_respects_order(seed in any::<u64>(), n in 1usize..=7) {
        let p = poset_from_seed(seed, n);
        let ext = p.linear_extension();
        let pos: Vec<usize> = (0..n).map(|e| ext.iter().position(|&x| x == e).unwrap()).collect();
        for a in 0..n {
            for b in 0..n {
                if p.lt(a, b) {
                    prop_assert!(pos[a] < pos[b]);
                }
            }
        }
    }

    #[test]
    fn birkhoff_labels_turn_bounds_into_set_operations(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let l = random_distributive_lattice(&mut rng, 6);
        let labels = birkhoff_repr(&l).unwrap();
        for a in 0..l.len() {
            for b in 0..l.len() {
                let mut union = labels.label(a).clone();
                union.union_with(labels.label(b));
                let mut inter = labels.label(a).clone();
                inter.intersect_with(labels.label(b));
                prop_assert_eq!(labels.label(l.join(a, b)), &union);
                prop_assert_eq!(labels.label(l.meet(a, b)), &inter);
                prop_assert_eq!(labels.label(a).is_subset(labels.label(b)), l.leq(a, b));
            }
        }
    }

    #[test]
    fn forbidden_sublattice_iff_not_distributive(seed in any::<u64>(), n in 1usize..=6) {
        let (lat, _) = dm_completion(&poset_from_seed(seed, n));
        prop_assert_eq!(find_m3_n5(&lat).is_none(), lat.is_distributive());
    }
}

#[test]
fn bounded_closure_adds_fresh_bounds() {
    let p = latcc::order::Poset::new(&["a", "b"], &[]).unwrap();
    let b = make_bounded(&p);
    assert_eq!(b.len(), 4);
    assert_eq!(b.id(b.bottom()), "bot");
    assert_eq!(b.id(b.top()), "top");
    assert!(Lattice::new(b).is_ok());
}
