use fixedbitset::FixedBitSet;

use super::poset::{BoundedPoset, Poset};
use super::OrderError;

/// A map between the carriers of two posets, by element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Builds an index map from id pairs. Every source element must be mapped.
    pub fn from_ids<S: AsRef<str>>(
        source: &Poset,
        target: &Poset,
        pairs: &[(S, S)],
    ) -> Result<Self, OrderError> {
        let mut map = vec![usize::MAX; source.len()];
        for (a, b) in pairs {
            map[source.elem(a.as_ref())?] = target.elem(b.as_ref())?;
        }
        if let Some(x) = map.iter().position(|&m| m == usize::MAX) {
            return Err(OrderError::PartialMap(source.id(x).to_owned()));
        }
        Ok(Embedding { map })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }
}

/// Order-embedding check (`f x <= f y` iff `x <= y`, which implies
/// injectivity). With `as_sublattice`, every pair whose minimal upper bound
/// (maximal lower bound) in the source is unique must map to a pair whose
/// unique minimal upper bound (maximal lower bound) is the image of it.
pub fn check_embedding(
    source: &Poset,
    target: &Poset,
    emb: &Embedding,
    as_sublattice: bool,
) -> Result<bool, OrderError> {
    if emb.map.len() != source.len() {
        return Err(OrderError::PartialMap(
            source.ids().get(emb.map.len()).cloned().unwrap_or_default(),
        ));
    }
    if let Some(&bad) = emb.map.iter().find(|&&m| m >= target.len()) {
        return Err(OrderError::UnknownElement(format!("#{bad}")));
    }
    let f = &emb.map;
    for x in 0..source.len() {
        for y in 0..source.len() {
            if source.leq(x, y) != target.leq(f[x], f[y]) {
                return Ok(false);
            }
        }
    }
    if as_sublattice {
        for x in 0..source.len() {
            for y in x + 1..source.len() {
                if let [z] = source.mubs(x, y)[..] {
                    if target.mubs(f[x], f[y]) != [f[z]] {
                        return Ok(false);
                    }
                }
                if let [z] = source.mlbs(x, y)[..] {
                    if target.mlbs(f[x], f[y]) != [f[z]] {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistributiveSearch {
    /// One set per element over a universe of `universe` points.
    Found { universe: usize, labels: Vec<FixedBitSet> },
    ExhaustedBound,
}

/// Bounded search for a set labeling that is an order embedding and turns
/// every unique minimal upper bound into a union and every unique maximal
/// lower bound into an intersection.
///
/// Each universe point corresponds to a 0/1 column over the carrier: an
/// up-set `U` with `a v b in U <=> a in U or b in U` and
/// `a ^ b in U <=> a in U and b in U` wherever those bounds are unique.
/// All such columns are enumerated first; a labeling is a choice of at most
/// `max_universe` columns separating every pair `x </= y`.
pub fn search_distributive_embedding(poset: &BoundedPoset, max_universe: usize) -> DistributiveSearch {
    let p = poset.poset();
    let n = p.len();
    let columns = valid_columns(p);

    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if !p.leq(x, y) {
                pairs.push((x, y));
            }
        }
    }
    let separates = |col: &FixedBitSet, (x, y): (usize, usize)| col.contains(x) && !col.contains(y);
    if pairs.iter().any(|&pr| !columns.iter().any(|c| separates(c, pr))) {
        return DistributiveSearch::ExhaustedBound;
    }
    let cover: Vec<FixedBitSet> = columns
        .iter()
        .map(|c| {
            let mut bits = FixedBitSet::with_capacity(pairs.len());
            for (k, &pr) in pairs.iter().enumerate() {
                if separates(c, pr) {
                    bits.insert(k);
                }
            }
            bits
        })
        .collect();

    let mut chosen = Vec::new();
    let covered = FixedBitSet::with_capacity(pairs.len());
    if set_cover(&cover, covered, max_universe, &mut chosen) {
        let labels = (0..n)
            .map(|x| {
                let mut set = FixedBitSet::with_capacity(chosen.len());
                for (k, &c) in chosen.iter().enumerate() {
                    if columns[c].contains(x) {
                        set.insert(k);
                    }
                }
                set
            })
            .collect();
        DistributiveSearch::Found { universe: chosen.len(), labels }
    } else {
        DistributiveSearch::ExhaustedBound
    }
}

fn set_cover(cover: &[FixedBitSet], covered: FixedBitSet, budget: usize, chosen: &mut Vec<usize>) -> bool {
    let Some(first) = covered.zeroes().next() else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for (c, bits) in cover.iter().enumerate() {
        if bits.contains(first) {
            let mut next = covered.clone();
            next.union_with(bits);
            chosen.push(c);
            if set_cover(cover, next, budget - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn valid_columns(p: &Poset) -> Vec<FixedBitSet> {
    let n = p.len();
    // (a, b, z, is_join) constraints from unique bounds of incomparable pairs;
    // comparable pairs are covered by monotonicity.
    let mut rules = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if p.comparable(a, b) {
                continue;
            }
            if let [z] = p.mubs(a, b)[..] {
                rules.push((a, b, z, true));
            }
            if let [z] = p.mlbs(a, b)[..] {
                rules.push((a, b, z, false));
            }
        }
    }
    let order = p.linear_extension();
    let mut pos = vec![0; n];
    for (i, &e) in order.iter().enumerate() {
        pos[e] = i;
    }
    // A rule can be checked once its last element (in `order`) is decided.
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, &(a, b, z, _)) in rules.iter().enumerate() {
        let last = pos[a].max(pos[b]).max(pos[z]);
        due[last].push(k);
    }
    let mut out = Vec::new();
    let mut value = vec![false; n];
    enumerate_columns(p, &order, &rules, &due, 0, &mut value, &mut out);
    out
}

fn enumerate_columns(
    p: &Poset,
    order: &[usize],
    rules: &[(usize, usize, usize, bool)],
    due: &[Vec<usize>],
    depth: usize,
    value: &mut [bool],
    out: &mut Vec<FixedBitSet>,
) {
    if depth == order.len() {
        let mut set = FixedBitSet::with_capacity(value.len());
        for (e, &v) in value.iter().enumerate() {
            set.set(e, v);
        }
        out.push(set);
        return;
    }
    let e = order[depth];
    for v in [false, true] {
        // Monotone: everything decided below e that is in U forces e into U.
        let forced = order[..depth].iter().any(|&d| value[d] && p.leq(d, e));
        if forced && !v {
            continue;
        }
        value[e] = v;
        let ok = due[depth].iter().all(|&k| {
            let (a, b, z, is_join) = rules[k];
            if is_join {
                value[z] == (value[a] || value[b])
            } else {
                value[z] == (value[a] && value[b])
            }
        });
        if ok {
            enumerate_columns(p, order, rules, due, depth + 1, value, out);
        }
    }
    value[e] = false;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::lattice::tests::{cube, m3, n5};
    use crate::order::make_bounded;

    #[test]
    fn identity_is_an_embedding() {
        let l = m3();
        let id = Embedding { map: (0..l.len()).collect() };
        assert!(check_embedding(l.poset(), l.poset(), &id, true).unwrap());
    }

    #[test]
    fn collapsing_map_is_rejected() {
        let l = m3();
        let mut map: Vec<usize> = (0..l.len()).collect();
        map[2] = 1;
        assert!(!check_embedding(l.poset(), l.poset(), &Embedding { map }, false).unwrap());
    }

    #[test]
    fn two_chain_needs_one_point() {
        let p = Poset::new(&["0", "1"], &[("0", "1")]).unwrap();
        let b = make_bounded(&p);
        match search_distributive_embedding(&b, 3) {
            DistributiveSearch::Found { universe, labels } => {
                assert_eq!(universe, 1);
                assert!(labels[0].is_clear() && labels[1].contains(0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cube_needs_three_points() {
        let l = cube();
        assert_eq!(search_distributive_embedding(l.bounded(), 2), DistributiveSearch::ExhaustedBound);
        assert!(matches!(
            search_distributive_embedding(l.bounded(), 3),
            DistributiveSearch::Found { universe: 3, .. }
        ));
    }

    #[test]
    fn non_distributive_lattices_never_embed() {
        for l in [m3(), n5()] {
            for k in 0..=8 {
                assert_eq!(search_distributive_embedding(l.bounded(), k), DistributiveSearch::ExhaustedBound);
            }
        }
    }
}
