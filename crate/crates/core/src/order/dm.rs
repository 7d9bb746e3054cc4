use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::embed::Embedding;
use super::lattice::Lattice;
use super::poset::Poset;

/// Dedekind-MacNeille completion.
///
/// Cuts are represented by their lower half `B = DOWN(UP(B))`; these are
/// exactly the intersections of principal down-sets (the empty intersection
/// being the whole carrier). Principal cuts keep the id of their generator
/// and come first, in source order; the remaining cuts are named by their
/// maximal elements, e.g. `[a,b]`, and follow ordered by size.
pub fn dm_completion(poset: &Poset) -> (Lattice, Embedding) {
    let n = poset.len();
    let mut full = FixedBitSet::with_capacity(n);
    full.insert_range(..);

    let mut cuts: Vec<FixedBitSet> = Vec::new();
    let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut push = |set: FixedBitSet, cuts: &mut Vec<FixedBitSet>| -> usize {
        if let Some(&i) = seen.get(&set) {
            return i;
        }
        seen.insert(set.clone(), cuts.len());
        cuts.push(set);
        cuts.len() - 1
    };
    let map: Vec<usize> = (0..n).map(|x| push(poset.down_set(x).clone(), &mut cuts)).collect();
    push(full, &mut cuts);
    let mut frontier = 0;
    while frontier < cuts.len() {
        let cur = cuts[frontier].clone();
        for x in 0..n {
            let mut meet = cur.clone();
            meet.intersect_with(poset.down_set(x));
            push(meet, &mut cuts);
        }
        frontier += 1;
    }

    // Stable order: principal cuts in source order, then the rest by size.
    let mut order: Vec<usize> = (0..cuts.len()).collect();
    let principal: Vec<bool> = {
        let mut v = vec![false; cuts.len()];
        for &c in &map {
            v[c] = true;
        }
        v
    };
    order.sort_by_key(|&c| {
        if principal[c] {
            (0, map.iter().position(|&m| m == c).unwrap(), Vec::new())
        } else {
            (1, cuts[c].count_ones(..), cuts[c].ones().collect())
        }
    });
    let mut rank = vec![0usize; cuts.len()];
    for (pos, &c) in order.iter().enumerate() {
        rank[c] = pos;
    }
    let cuts: Vec<FixedBitSet> = order.iter().map(|&c| cuts[c].clone()).collect();
    let map: Vec<usize> = map.iter().map(|&c| rank[c]).collect();

    let mut taken: std::collections::HashSet<String> = poset.ids().iter().cloned().collect();
    let ids: Vec<String> = cuts
        .iter()
        .enumerate()
        .map(|(i, cut)| {
            if let Some(x) = map.iter().position(|&m| m == i) {
                return poset.id(x).to_owned();
            }
            let maxima: Vec<&str> = cut
                .ones()
                .filter(|&a| poset.up_set(a).intersection(cut).count() == 1)
                .map(|a| poset.id(a))
                .collect();
            let base = format!("[{}]", maxima.join(","));
            let mut name = base.clone();
            let mut k = 1;
            while taken.contains(&name) {
                name = format!("{base}{k}");
                k += 1;
            }
            taken.insert(name.clone());
            name
        })
        .collect();

    let index: HashMap<&FixedBitSet, usize> = cuts.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let m = cuts.len();
    let lattice_order =
        Poset::from_leq_fn(ids, |a, b| cuts[a].is_subset(&cuts[b])).expect("inclusion order");

    let upper_of = |set: &FixedBitSet| -> FixedBitSet {
        let mut up = FixedBitSet::with_capacity(n);
        up.insert_range(..);
        for a in set.ones() {
            up.intersect_with(poset.up_set(a));
        }
        up
    };
    let lower_of = |set: &FixedBitSet| -> FixedBitSet {
        let mut down = FixedBitSet::with_capacity(n);
        down.insert_range(..);
        for a in set.ones() {
            down.intersect_with(poset.down_set(a));
        }
        down
    };

    let mut meet = vec![0u32; m * m];
    let mut join = vec![0u32; m * m];
    for a in 0..m {
        for b in a..m {
            let mut lo = cuts[a].clone();
            lo.intersect_with(&cuts[b]);
            let mut hi = cuts[a].clone();
            hi.union_with(&cuts[b]);
            let hi = lower_of(&upper_of(&hi));
            let lo = index[&lo] as u32;
            let hi = index[&hi] as u32;
            meet[a * m + b] = lo;
            meet[b * m + a] = lo;
            join[a * m + b] = hi;
            join[b * m + a] = hi;
        }
    }
    let bottom = (0..m).min_by_key(|&c| cuts[c].count_ones(..)).unwrap();
    let top = (0..m).find(|&c| cuts[c].count_ones(..) == n).unwrap();
    let lattice = Lattice::from_tables(lattice_order, bottom, top, meet, join);
    (lattice, Embedding { map })
}
