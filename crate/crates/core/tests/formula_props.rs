use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use latcc::circuit::all_words;
use latcc::formula::{formula_from_json, formula_to_json, spira_reduce, tree_separator, Formula};
use latcc::gen::random_formula;
use latcc::partition::make_partition_lattice;

fn alphabet(k: usize) -> Vec<String> {
    (0..k).map(|i| i.to_string()).collect()
}

/// Every tree shape with `leaves` leaves, all leaves the same constant.
fn shapes(leaves: usize) -> Vec<Formula> {
    if leaves == 1 {
        return vec![Formula::constant(0)];
    }
    let mut out = Vec::new();
    for k in 1..leaves {
        for l in shapes(k) {
            for r in shapes(leaves - k) {
                out.push(Formula::meet(l.clone(), r));
            }
        }
    }
    out
}

fn subtree_size(f: &Formula, path: &[bool]) -> u64 {
    f.at(path).size()
}

#[test]
fn separator_window_holds_for_all_small_shapes() {
    for leaves in 2..=7 {
        for f in shapes(leaves) {
            let s = f.size();
            let t = subtree_size(&f, &tree_separator(&f).unwrap());
            assert!(s.div_ceil(3) <= t && t <= (2 * s).div_ceil(3), "size {s} separator {t}");
        }
    }
}

#[test]
fn separator_rejects_single_leaf() {
    assert!(tree_separator(&Formula::constant(0)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn separator_window_up_to_size_64(seed in any::<u64>(), leaves in 2usize..=32) {
        let mut rng = StdRng::seed_from_u64(seed);
        let f = random_formula(&mut rng, 5, 2, 2, leaves);
        let s = f.size();
        let t = subtree_size(&f, &tree_separator(&f).unwrap());
        prop_assert!(s.div_ceil(3) <= t && t <= (2 * s).div_ceil(3));
    }

    #[test]
    fn circuit_of_formula_agrees(seed in any::<u64>(), leaves in 1usize..=12) {
        let pl = make_partition_lattice(3).unwrap();
        let l = pl.lattice();
        let mut rng = StdRng::seed_from_u64(seed);
        let f = random_formula(&mut rng, l.len(), 2, 3, leaves);
        let c = f.to_circuit(l, alphabet(3), 64).unwrap();
        for w in all_words(3, 2) {
            prop_assert_eq!(c.evaluate(&w).unwrap(), f.eval(l, &w).unwrap());
        }
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), leaves in 1usize..=12) {
        let pl = make_partition_lattice(3).unwrap();
        let l = pl.lattice();
        let mut rng = StdRng::seed_from_u64(seed);
        let f = random_formula(&mut rng, l.len(), 2, 3, leaves);
        let text = formula_to_json(&f, l, &alphabet(3)).unwrap();
        let back = formula_from_json(&text, l, &alphabet(3)).unwrap();
        prop_assert!(back.same_tree(&f));
    }

    #[test]
    fn reduction_keeps_semantics_and_never_deepens(seed in any::<u64>(), leaves in 1usize..=24) {
        let pl = make_partition_lattice(3).unwrap();
        let l = pl.lattice();
        let mut rng = StdRng::seed_from_u64(seed);
        let f = random_formula(&mut rng, l.len(), 2, 3, leaves);
        let g = spira_reduce(&f, &pl).unwrap();
        prop_assert!(g.depth() <= f.depth());
        let h = spira_reduce(&g, &pl).unwrap();
        for w in all_words(3, 2) {
            let want = f.eval(l, &w).unwrap();
            prop_assert_eq!(g.eval(l, &w).unwrap(), want);
            prop_assert_eq!(h.eval(l, &w).unwrap(), want);
        }
    }

    #[test]
    fn combining_step_recovers_the_formula(seed in any::<u64>(), leaves in 2usize..=16) {
        let pl = make_partition_lattice(3).unwrap();
        let l = pl.lattice();
        let mut rng = StdRng::seed_from_u64(seed);
        let f = random_formula(&mut rng, l.len(), 2, 3, leaves);
        let v = tree_separator(&f).unwrap();
        let sub = f.at(&v).clone();
        let terms: Vec<Formula> = (0..pl.len())
            .map(|a| Formula::meet(f.replace_at(&v, Formula::constant(a)), pl.indicators()[a].apply(&sub)))
            .collect();
        let combined = Formula::join_all(terms, pl.bottom());
        for w in all_words(3, 2) {
            prop_assert_eq!(combined.eval(l, &w).unwrap(), f.eval(l, &w).unwrap());
        }
    }
}
