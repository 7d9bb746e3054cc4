use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use super::OrderError;

/// A finite partial order over opaque string identifiers.
///
/// Elements are addressed by their index in declaration order, which is also
/// the canonical order used for every tie-break in this crate.
#[derive(Clone)]
pub struct Poset {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    /// `up[a]` holds every `b` with `a <= b`.
    up: Vec<FixedBitSet>,
    /// `down[b]` holds every `a` with `a <= b`.
    down: Vec<FixedBitSet>,
    covers: Vec<(usize, usize)>,
}

impl Poset {
    /// Builds the reflexive-transitive closure of `pairs` (each `(a, b)` meaning
    /// `a <= b`) and rejects antisymmetry violations.
    pub fn new<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Self, OrderError> {
        let ids: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
        let index = index_ids(&ids)?;
        let mut idx_pairs = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let a = lookup(&index, a.as_ref())?;
            let b = lookup(&index, b.as_ref())?;
            idx_pairs.push((a, b));
        }
        Self::from_index_pairs(ids, index, &idx_pairs)
    }

    /// Same as [`Poset::new`] but with relation pairs given as element indices.
    pub fn from_indexed(ids: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, OrderError> {
        let index = index_ids(&ids)?;
        for &(a, b) in pairs {
            if a >= ids.len() || b >= ids.len() {
                return Err(OrderError::UnknownElement(format!("#{}", a.max(b))));
            }
        }
        Self::from_index_pairs(ids, index, pairs)
    }

    /// Builds a poset from an order predicate that is already reflexive and
    /// transitive. Antisymmetry is still checked.
    pub fn from_leq_fn(
        ids: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, OrderError> {
        let index = index_ids(&ids)?;
        let n = ids.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in up.iter_mut().enumerate() {
            for b in 0..n {
                if a == b || leq(a, b) {
                    row.insert(b);
                }
            }
        }
        Self::finish(ids, index, up)
    }

    fn from_index_pairs(
        ids: Vec<String>,
        index: HashMap<String, usize>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, OrderError> {
        let n = ids.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        for &(a, b) in pairs {
            up[a].insert(b);
        }
        // Warshall over bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Self::finish(ids, index, up)
    }

    fn finish(
        ids: Vec<String>,
        index: HashMap<String, usize>,
        up: Vec<FixedBitSet>,
    ) -> Result<Self, OrderError> {
        let n = ids.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in up.iter().enumerate() {
            for b in row.ones() {
                if b != a && up[b].contains(a) {
                    return Err(OrderError::CycleDetected(ids[a].clone(), ids[b].clone()));
                }
                down[b].insert(a);
            }
        }
        // Transitivity check guards `from_leq_fn`; closure output passes trivially.
        for a in 0..n {
            for b in up[a].ones() {
                if !up[b].is_subset(&up[a]) {
                    return Err(OrderError::NotTransitive(ids[a].clone(), ids[b].clone()));
                }
            }
        }
        let mut covers = Vec::new();
        for a in 0..n {
            for b in up[a].ones() {
                if a == b {
                    continue;
                }
                let mut between = up[a].clone();
                between.intersect_with(&down[b]);
                if between.count_ones(..) == 2 {
                    covers.push((a, b));
                }
            }
        }
        Ok(Poset { ids, index, up, down, covers })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, e: usize) -> &str {
        &self.ids[e]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn elem(&self, id: &str) -> Result<usize, OrderError> {
        lookup(&self.index, id)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.up[a].contains(b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    pub fn down_set(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    /// Cover pairs `(a, b)` with `a < b` and nothing strictly between, in
    /// canonical order. This is the transitive reduction of the order.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Least element, if one exists.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&a| self.up[a].count_ones(..) == self.len())
    }

    /// Greatest element, if one exists.
    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&a| self.down[a].count_ones(..) == self.len())
    }

    /// Minimal upper bounds of `a` and `b`, ascending by index.
    pub fn mubs(&self, a: usize, b: usize) -> Vec<usize> {
        let mut common = self.up[a].clone();
        common.intersect_with(&self.up[b]);
        common
            .ones()
            .filter(|&m| self.down[m].intersection(&common).count() == 1)
            .collect()
    }

    /// Maximal lower bounds of `a` and `b`, ascending by index.
    pub fn mlbs(&self, a: usize, b: usize) -> Vec<usize> {
        let mut common = self.down[a].clone();
        common.intersect_with(&self.down[b]);
        common
            .ones()
            .filter(|&m| self.up[m].intersection(&common).count() == 1)
            .collect()
    }

    /// Restriction of the order to `keep` (in the given order).
    pub fn restrict(&self, keep: &[usize]) -> Poset {
        let ids = keep.iter().map(|&e| self.ids[e].clone()).collect();
        Poset::from_leq_fn(ids, |a, b| self.leq(keep[a], keep[b]))
            .expect("restriction of a partial order is a partial order")
    }

    /// Elements in a linear extension compatible with the order, ties broken
    /// by canonical index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&e| (self.down[e].count_ones(..), e));
        order
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<(&str, &str)> = self
            .covers
            .iter()
            .map(|&(a, b)| (self.ids[a].as_str(), self.ids[b].as_str()))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.ids)
            .field("covers", &covers)
            .finish()
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.up == other.up
    }
}

impl Eq for Poset {}

fn index_ids(ids: &[String]) -> Result<HashMap<String, usize>, OrderError> {
    let mut index = HashMap::with_capacity(ids.len());
    for (i, id) in ids.iter().enumerate() {
        if index.insert(id.clone(), i).is_some() {
            return Err(OrderError::DuplicateElement(id.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<String, usize>, id: &str) -> Result<usize, OrderError> {
    index
        .get(id)
        .copied()
        .ok_or_else(|| OrderError::UnknownElement(id.to_owned()))
}

/// Pairwise bound tables, computed on demand and cached on a [`BoundedPoset`].
#[derive(Debug)]
pub(crate) enum PairOps {
    Lattice { meet: Vec<u32>, join: Vec<u32> },
    General { mlbs: Vec<Box<[u32]>>, mubs: Vec<Box<[u32]>> },
}

/// A finite poset with a least and a greatest element.
pub struct BoundedPoset {
    poset: Poset,
    bottom: usize,
    top: usize,
    ops: OnceLock<PairOps>,
}

impl Clone for BoundedPoset {
    fn clone(&self) -> Self {
        BoundedPoset {
            poset: self.poset.clone(),
            bottom: self.bottom,
            top: self.top,
            ops: OnceLock::new(),
        }
    }
}

impl fmt::Debug for BoundedPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundedPoset")
            .field("poset", &self.poset)
            .field("bottom", &self.poset.id(self.bottom))
            .field("top", &self.poset.id(self.top))
            .finish()
    }
}

impl PartialEq for BoundedPoset {
    fn eq(&self, other: &Self) -> bool {
        self.poset == other.poset
    }
}

impl BoundedPoset {
    /// Wraps a poset that already has both bounds.
    pub fn try_new(poset: Poset) -> Result<Self, OrderError> {
        match (poset.bottom(), poset.top()) {
            (Some(bottom), Some(top)) => Ok(BoundedPoset { poset, bottom, top, ops: OnceLock::new() }),
            _ => Err(OrderError::NotBounded),
        }
    }

    pub(crate) fn with_ops(poset: Poset, bottom: usize, top: usize, ops: PairOps) -> Self {
        BoundedPoset { poset, bottom, top, ops: OnceLock::from(ops) }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn id(&self, e: usize) -> &str {
        self.poset.id(e)
    }

    pub fn elem(&self, id: &str) -> Result<usize, OrderError> {
        self.poset.elem(id)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub(crate) fn pair_ops(&self) -> &PairOps {
        self.ops.get_or_init(|| compute_pair_ops(&self.poset))
    }

    /// True when every pair has a unique meet and join.
    pub fn is_lattice(&self) -> bool {
        matches!(self.pair_ops(), PairOps::Lattice { .. })
    }

    /// Minimal upper bounds, served from the cached tables.
    pub fn join_set(&self, a: usize, b: usize) -> &[u32] {
        let n = self.len();
        match self.pair_ops() {
            PairOps::Lattice { join, .. } => std::slice::from_ref(&join[a * n + b]),
            PairOps::General { mubs, .. } => &mubs[a * n + b],
        }
    }

    /// Maximal lower bounds, served from the cached tables.
    pub fn meet_set(&self, a: usize, b: usize) -> &[u32] {
        let n = self.len();
        match self.pair_ops() {
            PairOps::Lattice { meet, .. } => std::slice::from_ref(&meet[a * n + b]),
            PairOps::General { mlbs, .. } => &mlbs[a * n + b],
        }
    }

    pub fn into_shared(self) -> Arc<BoundedPoset> {
        Arc::new(self)
    }
}

fn compute_pair_ops(poset: &Poset) -> PairOps {
    let n = poset.len();
    let mut mlbs = Vec::with_capacity(n * n);
    let mut mubs = Vec::with_capacity(n * n);
    let mut singleton = true;
    for a in 0..n {
        for b in 0..n {
            let lo: Box<[u32]> = poset.mlbs(a, b).into_iter().map(|e| e as u32).collect();
            let hi: Box<[u32]> = poset.mubs(a, b).into_iter().map(|e| e as u32).collect();
            singleton &= lo.len() == 1 && hi.len() == 1;
            mlbs.push(lo);
            mubs.push(hi);
        }
    }
    if singleton {
        PairOps::Lattice {
            meet: mlbs.iter().map(|s| s[0]).collect(),
            join: mubs.iter().map(|s| s[0]).collect(),
        }
    } else {
        PairOps::General { mlbs, mubs }
    }
}

/// Returns `poset` unchanged when it has both bounds; otherwise adds a fresh
/// least and a fresh greatest element. The empty poset becomes the 2-chain.
pub fn make_bounded(poset: &Poset) -> BoundedPoset {
    if let Ok(b) = BoundedPoset::try_new(poset.clone()) {
        return b;
    }
    let bot = fresh_id(poset, "bot");
    let top = fresh_id(poset, "top");
    let n = poset.len();
    let mut ids = Vec::with_capacity(n + 2);
    ids.push(bot);
    ids.extend(poset.ids().iter().cloned());
    ids.push(top);
    let extended = Poset::from_leq_fn(ids, |a, b| {
        a == 0 || b == n + 1 || (a != n + 1 && b != 0 && poset.leq(a - 1, b - 1))
    })
    .expect("adding bounds preserves the order axioms");
    BoundedPoset::try_new(extended).expect("bounds were just added")
}

pub(crate) fn fresh_id(poset: &Poset, base: &str) -> String {
    if poset.index_of(base).is_none() {
        return base.to_owned();
    }
    (1..)
        .map(|k| format!("{base}{k}"))
        .find(|c| poset.index_of(c).is_none())
        .expect("unbounded search")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(names: &[&str]) -> Poset {
        let pairs: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
        Poset::new(names, &pairs).unwrap()
    }

    #[test]
    fn singleton_is_reflexive() {
        let p = Poset::new(&["a"], &[]).unwrap();
        assert!(p.leq(0, 0));
        assert!(p.covers().is_empty());
    }

    #[test]
    fn closure_is_transitive() {
        let p = chain(&["a", "b", "c"]);
        assert!(p.leq(p.elem("a").unwrap(), p.elem("c").unwrap()));
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn two_cycle_is_rejected() {
        let err = Poset::new(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, OrderError::CycleDetected(..)));
    }

    #[test]
    fn duplicate_and_unknown_ids() {
        assert!(matches!(
            Poset::new(&["a", "a"], &[]).unwrap_err(),
            OrderError::DuplicateElement(_)
        ));
        assert!(matches!(
            Poset::new(&["a"], &[("a", "z")]).unwrap_err(),
            OrderError::UnknownElement(_)
        ));
    }

    #[test]
    fn bounded_chain_is_unchanged() {
        let p = chain(&["0", "1"]);
        let b = make_bounded(&p);
        assert_eq!(b.poset(), &p);
        assert_eq!(b.id(b.bottom()), "0");
        assert_eq!(b.id(b.top()), "1");
    }

    #[test]
    fn antichain_gets_two_new_bounds() {
        let p = Poset::new(&["a", "b"], &[]).unwrap();
        let b = make_bounded(&p);
        assert_eq!(b.len(), 4);
        let (a, bb) = (b.elem("a").unwrap(), b.elem("b").unwrap());
        assert!(b.poset().lt(b.bottom(), a) && b.poset().lt(bb, b.top()));
    }

    #[test]
    fn empty_poset_becomes_two_chain() {
        let p = Poset::new::<&str>(&[], &[]).unwrap();
        let b = make_bounded(&p);
        assert_eq!(b.len(), 2);
        assert!(b.poset().lt(b.bottom(), b.top()));
    }

    #[test]
    fn fresh_ids_avoid_collisions() {
        let p = Poset::new(&["bot", "x"], &[]).unwrap();
        let b = make_bounded(&p);
        assert_eq!(b.id(b.bottom()), "bot1");
    }

    #[test]
    fn bound_sets() {
        let p = chain(&["0", "1"]);
        assert_eq!(p.mubs(0, 1), vec![1]);
        // M3
        let m3 = Poset::new(
            &["0", "p", "q", "r", "1"],
            &[("0", "p"), ("0", "q"), ("0", "r"), ("p", "1"), ("q", "1"), ("r", "1")],
        )
        .unwrap();
        assert_eq!(m3.mubs(1, 2), vec![4]);
        assert_eq!(m3.mlbs(1, 3), vec![0]);
    }

    #[test]
    fn covers_are_transitive_reduction() {
        let p = Poset::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("a", "c"), ("a", "d")],
        )
        .unwrap();
        assert_eq!(p.covers(), &[(0, 1), (0, 3), (1, 2)]);
    }
}
