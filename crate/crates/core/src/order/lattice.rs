use std::fmt;
use std::sync::Arc;

use super::poset::{BoundedPoset, PairOps, Poset};
use super::OrderError;

/// A bounded poset in which every pair has a unique meet and join.
///
/// Cloning is cheap: the carrier and its tables are shared.
#[derive(Clone)]
pub struct Lattice {
    inner: Arc<BoundedPoset>,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Lattice").field(&self.inner).finish()
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// Builds the meet/join tables, or returns the first pair (in canonical
/// order, `a < b`) whose bound sets are not singletons.
pub fn as_lattice(bounded: &Arc<BoundedPoset>) -> Result<Lattice, (usize, usize)> {
    if bounded.is_lattice() {
        return Ok(Lattice { inner: bounded.clone() });
    }
    let n = bounded.len();
    for a in 0..n {
        for b in a + 1..n {
            if bounded.join_set(a, b).len() != 1 || bounded.meet_set(a, b).len() != 1 {
                return Err((a, b));
            }
        }
    }
    unreachable!("non-lattice without a witness pair")
}

impl Lattice {
    /// Wraps a bounded poset, reporting the witness pair by id on failure.
    pub fn new(bounded: BoundedPoset) -> Result<Self, OrderError> {
        let shared = Arc::new(bounded);
        as_lattice(&shared).map_err(|(a, b)| {
            OrderError::NotALattice(shared.id(a).to_owned(), shared.id(b).to_owned())
        })
    }

    /// Trusted constructor for carriers whose tables are computed directly.
    pub(crate) fn from_tables(
        poset: Poset,
        bottom: usize,
        top: usize,
        meet: Vec<u32>,
        join: Vec<u32>,
    ) -> Self {
        let bp = BoundedPoset::with_ops(poset, bottom, top, PairOps::Lattice { meet, join });
        Lattice { inner: Arc::new(bp) }
    }

    pub fn bounded(&self) -> &Arc<BoundedPoset> {
        &self.inner
    }

    pub fn poset(&self) -> &Poset {
        self.inner.poset()
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bottom(&self) -> usize {
        self.inner.bottom()
    }

    pub fn top(&self) -> usize {
        self.inner.top()
    }

    pub fn id(&self, e: usize) -> &str {
        self.inner.id(e)
    }

    pub fn elem(&self, id: &str) -> Result<usize, OrderError> {
        self.inner.elem(id)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.inner.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.inner.meet_set(a, b)[0] as usize
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.inner.join_set(a, b)[0] as usize
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    /// Full-table check of commutativity, associativity, idempotence and
    /// absorption. Returns the first offending triple.
    pub fn check_laws(&self) -> Result<(), (usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            if self.meet(a, a) != a || self.join(a, a) != a {
                return Err((a, a, a));
            }
            for b in 0..n {
                if self.meet(a, b) != self.meet(b, a) || self.join(a, b) != self.join(b, a) {
                    return Err((a, b, b));
                }
                if self.meet(a, self.join(a, b)) != a || self.join(a, self.meet(a, b)) != a {
                    return Err((a, b, a));
                }
                for c in 0..n {
                    if self.meet(a, self.meet(b, c)) != self.meet(self.meet(a, b), c)
                        || self.join(a, self.join(b, c)) != self.join(self.join(a, b), c)
                    {
                        return Err((a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// First triple violating `a v (b ^ c) = (a v b) ^ (a v c)`, if any.
    pub fn distributivity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.join(a, self.meet(b, c));
                    let rhs = self.meet(self.join(a, b), self.join(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_violation().is_none()
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        let mut lower = vec![0usize; self.len()];
        for &(_, b) in self.poset().covers() {
            lower[b] += 1;
        }
        (0..self.len()).filter(|&e| lower[e] == 1).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SublatticeKind {
    M3,
    N5,
}

/// A five-element sublattice, listed as `[bottom, a, b, c, top]`.
///
/// For `N5` the chain is `a < c` and `b` is the side element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SublatticeWitness {
    pub kind: SublatticeKind,
    pub elements: [usize; 5],
}

/// Searches for an `M3` or `N5` sublattice, `M3` first. Both shapes are
/// determined by their three middle elements, so the scan is over triples.
pub fn find_m3_n5(lattice: &Lattice) -> Option<SublatticeWitness> {
    let n = lattice.len();
    let p = lattice.poset();
    for a in 0..n {
        for b in a + 1..n {
            if p.comparable(a, b) {
                continue;
            }
            let lo = lattice.meet(a, b);
            let hi = lattice.join(a, b);
            for c in b + 1..n {
                if p.comparable(a, c) || p.comparable(b, c) {
                    continue;
                }
                if lattice.meet(a, c) == lo
                    && lattice.meet(b, c) == lo
                    && lattice.join(a, c) == hi
                    && lattice.join(b, c) == hi
                {
                    return Some(SublatticeWitness {
                        kind: SublatticeKind::M3,
                        elements: [lo, a, b, c, hi],
                    });
                }
            }
        }
    }
    for a in 0..n {
        for c in 0..n {
            if !p.lt(a, c) {
                continue;
            }
            for b in 0..n {
                if p.comparable(a, b) || p.comparable(b, c) {
                    continue;
                }
                let lo = lattice.meet(c, b);
                let hi = lattice.join(a, b);
                if lattice.meet(a, b) == lo && lattice.join(c, b) == hi {
                    return Some(SublatticeWitness {
                        kind: SublatticeKind::N5,
                        elements: [lo, a, b, c, hi],
                    });
                }
            }
        }
    }
    None
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::order::make_bounded;

    pub(crate) fn lattice_of(elems: &[&str], pairs: &[(&str, &str)]) -> Lattice {
        let p = Poset::new(elems, pairs).unwrap();
        Lattice::new(make_bounded(&p)).unwrap()
    }

    pub(crate) fn m3() -> Lattice {
        lattice_of(
            &["0", "p", "q", "r", "1"],
            &[("0", "p"), ("0", "q"), ("0", "r"), ("p", "1"), ("q", "1"), ("r", "1")],
        )
    }

    pub(crate) fn n5() -> Lattice {
        lattice_of(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
        )
    }

    pub(crate) fn cube() -> Lattice {
        let names = ["", "1", "2", "3", "12", "13", "23", "123"];
        let mut pairs = Vec::new();
        for a in names {
            for b in names {
                if a.len() + 1 == b.len() && a.chars().all(|ch| b.contains(ch)) {
                    pairs.push((a, b));
                }
            }
        }
        lattice_of(&names, &pairs)
    }

    #[test]
    fn two_chain_tables() {
        let l = lattice_of(&["0", "1"], &[("0", "1")]);
        assert_eq!(l.join(0, 1), 1);
        assert_eq!(l.meet(0, 1), 0);
        assert!(l.check_laws().is_ok());
    }

    #[test]
    fn non_lattice_witness_is_first_pair() {
        // Two incomparable middles with two common upper bounds.
        let p = Poset::new(
            &["a", "b", "c", "d", "0", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "1"),
                ("d", "1"),
            ],
        )
        .unwrap();
        let bp = Arc::new(make_bounded(&p));
        assert_eq!(as_lattice(&bp).unwrap_err(), (0, 1));
    }

    #[test]
    fn distributivity() {
        assert!(cube().is_distributive());
        assert!(!m3().is_distributive());
        assert!(!n5().is_distributive());
    }

    #[test]
    fn m3_n5_witnesses() {
        let w = find_m3_n5(&m3()).unwrap();
        assert_eq!(w.kind, SublatticeKind::M3);
        let mut e = w.elements.to_vec();
        e.sort();
        assert_eq!(e, vec![0, 1, 2, 3, 4]);
        assert_eq!(find_m3_n5(&n5()).unwrap().kind, SublatticeKind::N5);
        assert!(find_m3_n5(&cube()).is_none());
    }

    #[test]
    fn join_irreducibles_of_cube_are_atoms() {
        let l = cube();
        let ji: Vec<&str> = l.join_irreducibles().into_iter().map(|e| l.id(e)).collect();
        assert_eq!(ji, vec!["1", "2", "3"]);
    }
}
