//! Unary indicator formulas over partition lattices.
//!
//! All formulas here use [`Formula::arg`] for their argument `x`.

use std::collections::HashMap;

use super::{Partition, PartitionError, PartitionLattice};
use crate::formula::Formula;

/// Join of the single-edge elements for `edges`, as a balanced formula of
/// constants. Each edge stays a separate leaf.
fn edge_join(pl: &PartitionLattice, x: Formula, edges: &[(usize, usize)]) -> Formula {
    let mut items = vec![x];
    items.extend(edges.iter().map(|&(i, j)| Formula::constant(pl.edge(i, j))));
    Formula::join_all(items, pl.bottom())
}

/// Element of the path through the minima of `a`'s blocks, in increasing order.
fn block_path(pl: &PartitionLattice, a: &Partition) -> usize {
    let mins: Vec<usize> = a.blocks().iter().map(|b| b[0]).collect();
    let edges: Vec<(usize, usize)> = mins.windows(2).map(|w| (w[0], w[1])).collect();
    pl.element(&Partition::from_graph(pl.n(), &edges).expect("minima are in range"))
}

/// A unary formula `f` with `f(A) = top` and `f(B) < top`; requires `A </= B`.
pub fn dist_formula(pl: &PartitionLattice, a: usize, b: usize) -> Result<Formula, PartitionError> {
    let l = pl.lattice();
    if l.leq(a, b) {
        return Err(PartitionError::PreconditionViolated(format!(
            "dist needs A not below B, got {} <= {}",
            l.id(a),
            l.id(b)
        )));
    }
    let pa = pl.partition(a);
    if l.leq(b, a) {
        let path = block_path(pl, pa);
        return Ok(Formula::join(Formula::arg(), Formula::constant(path)));
    }
    // Lift by the edges of B missing from A; afterwards g(A) > B.
    let pb = pl.partition(b);
    let missing: Vec<(usize, usize)> = pb.relation_edges().into_iter().filter(|&(i, j)| !pa.same_block(i, j)).collect();
    let g = edge_join(pl, Formula::arg(), &missing);
    let ga = g.eval_unary(l, a);
    assert!(
        l.leq(b, ga) && ga != b,
        "lifting {} by the edges of {} did not land strictly above it",
        l.id(a),
        l.id(b)
    );
    let inner = dist_formula(pl, ga, b)?;
    Ok(inner.apply(&g))
}

/// A unary formula equal to `top` exactly on `{x : x >= A}`.
pub fn checkge_formula(pl: &PartitionLattice, a: usize) -> Formula {
    let l = pl.lattice();
    if a == pl.bottom() {
        return Formula::constant(pl.top());
    }
    let terms: Vec<Formula> = (0..pl.len())
        .filter(|&b| !l.leq(a, b))
        .map(|b| dist_formula(pl, a, b).expect("A is not below B"))
        .collect();
    Formula::meet_all(terms, pl.top())
}

/// A unary formula mapping `top` to `top` and `Z` to `bottom`; requires `Z != top`.
pub fn fz_formula(pl: &PartitionLattice, z: usize) -> Result<Formula, PartitionError> {
    if z == pl.top() {
        return Err(PartitionError::PreconditionViolated("f_Z needs Z below top".into()));
    }
    let pz = pl.partition(z);
    let mut terms = Vec::new();
    for i in 1..=pl.n() {
        for j in i + 1..=pl.n() {
            if !pz.same_block(i, j) {
                terms.push(Formula::meet(Formula::arg(), Formula::constant(pl.edge(i, j))));
            }
        }
    }
    Ok(Formula::join_all(terms, pl.bottom()))
}

/// A unary formula equal to `top` on `{x : x >= A}` and `bottom` elsewhere.
pub fn checkgeb_formula(pl: &PartitionLattice, a: usize) -> Formula {
    if a == pl.bottom() {
        return Formula::constant(pl.top());
    }
    let ge = checkge_formula(pl, a);
    let terms: Vec<Formula> = (0..pl.top())
        .map(|z| fz_formula(pl, z).expect("z is below top").apply(&ge))
        .collect();
    Formula::meet_all(terms, pl.top())
}

/// Function table of a unary formula.
fn table(pl: &PartitionLattice, f: &Formula) -> Vec<u16> {
    (0..pl.len()).map(|x| f.eval_unary(pl.lattice(), x) as u16).collect()
}

/// Largest number of distinct unary functions kept by the depth search.
const SEARCH_CAP: usize = 6000;
const SEARCH_DEPTH: u32 = 6;

/// For each `a`, a unary formula equal to the `x >= a` top/bottom indicator.
///
/// Starts from [`checkgeb_formula`] and replaces it by a shallower formula
/// when a breadth-first search over unary polynomials (built from `x` and
/// constants by meets and joins, shallowest first) finds one. The search is
/// abandoned once it holds more than `SEARCH_CAP` distinct functions, so for
/// larger lattices the direct construction is used as is.
pub fn indicator_formulas(pl: &PartitionLattice) -> Vec<Formula> {
    let l = pl.lattice();
    let mut best: Vec<Formula> = (0..pl.len()).map(|a| checkgeb_formula(pl, a)).collect();
    let targets: HashMap<Vec<u16>, usize> = (0..pl.len())
        .map(|a| {
            let t = (0..pl.len()).map(|x| if l.leq(a, x) { pl.top() } else { pl.bottom() } as u16).collect();
            (t, a)
        })
        .collect();

    let mut known: HashMap<Vec<u16>, Formula> = HashMap::new();
    let mut levels: Vec<Vec<Vec<u16>>> = vec![Vec::new()];
    let mut seed = vec![Formula::arg()];
    seed.extend((0..pl.len()).map(Formula::constant));
    for f in seed {
        let t = table(pl, &f);
        if let std::collections::hash_map::Entry::Vacant(e) = known.entry(t.clone()) {
            levels[0].push(t);
            e.insert(f);
        }
    }
    'search: for depth in 1..=SEARCH_DEPTH {
        let older: Vec<Vec<u16>> = levels.iter().flatten().cloned().collect();
        let newest = levels.last().unwrap().clone();
        let mut level = Vec::new();
        for f in &newest {
            for g in &older {
                for meet in [true, false] {
                    let t: Vec<u16> = f
                        .iter()
                        .zip(g)
                        .map(|(&u, &v)| {
                            let (u, v) = (u as usize, v as usize);
                            (if meet { l.meet(u, v) } else { l.join(u, v) }) as u16
                        })
                        .collect();
                    if known.contains_key(&t) {
                        continue;
                    }
                    let (ff, gf) = (known[f].clone(), known[g].clone());
                    let formula = if meet { Formula::meet(ff, gf) } else { Formula::join(ff, gf) };
                    debug_assert_eq!(formula.depth(), depth);
                    known.insert(t.clone(), formula);
                    level.push(t);
                    if known.len() > SEARCH_CAP {
                        break 'search;
                    }
                }
            }
        }
        levels.push(level);
    }
    for (t, f) in &known {
        if let Some(&a) = targets.get(t) {
            if f.depth() < best[a].depth() {
                best[a] = f.clone();
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::make_partition_lattice;

    #[test]
    fn dist_on_pi3_top_bottom() {
        let pl = make_partition_lattice(3).unwrap();
        let f = dist_formula(&pl, pl.top(), pl.bottom()).unwrap();
        assert_eq!(f.eval_unary(pl.lattice(), pl.top()), pl.top());
        assert_ne!(f.eval_unary(pl.lattice(), pl.bottom()), pl.top());
    }

    #[test]
    fn dist_needs_a_not_below_b() {
        let pl = make_partition_lattice(3).unwrap();
        assert!(dist_formula(&pl, pl.bottom(), pl.top()).is_err());
        assert!(dist_formula(&pl, 2, 2).is_err());
    }

    #[test]
    fn dist_incomparable_pair_in_pi4() {
        let pl = make_partition_lattice(4).unwrap();
        let a = pl.parse("123/4").unwrap();
        let b = pl.parse("13/24").unwrap();
        let f = dist_formula(&pl, a, b).unwrap();
        assert_eq!(f.eval_unary(pl.lattice(), a), pl.top());
        assert_ne!(f.eval_unary(pl.lattice(), b), pl.top());
    }

    #[test]
    fn checkge_of_bottom_is_constant() {
        let pl = make_partition_lattice(3).unwrap();
        let f = checkge_formula(&pl, pl.bottom());
        assert!(f.is_leaf());
        assert!(checkgeb_formula(&pl, pl.bottom()).is_leaf());
    }

    #[test]
    fn fz_rejects_top() {
        let pl = make_partition_lattice(3).unwrap();
        assert!(fz_formula(&pl, pl.top()).is_err());
    }

    #[test]
    fn indicators_are_exact_on_pi3() {
        let pl = make_partition_lattice(3).unwrap();
        let l = pl.lattice();
        for (a, f) in pl.indicators().iter().enumerate() {
            assert!(f.depth() <= checkgeb_formula(&pl, a).depth());
            for x in 0..pl.len() {
                let want = if l.leq(a, x) { pl.top() } else { pl.bottom() };
                assert_eq!(f.eval_unary(l, x), want);
            }
        }
    }
}
