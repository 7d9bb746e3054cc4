use super::{Formula, FormulaError};
use crate::partition::PartitionLattice;

/// Largest input accepted by [`spira_reduce`]; the output grows polynomially
/// with an exponent that depends on the lattice size.
pub const SPIRA_MAX_SIZE: u64 = 1 << 12;

/// A node whose subtree size lies in `[ceil(s/3), ceil(2s/3)]`, returned as
/// a root path (`false` = left). Among qualifying nodes the deepest wins,
/// ties broken by preorder.
pub fn tree_separator(f: &Formula) -> Result<Vec<bool>, FormulaError> {
    let s = f.size();
    if s < 2 {
        return Err(FormulaError::TooSmall(s));
    }
    let (lo, hi) = (s.div_ceil(3), (2 * s).div_ceil(3));
    let mut best: Option<Vec<bool>> = None;
    let mut path = Vec::new();
    visit(f, lo, hi, &mut path, &mut best);
    Ok(best.expect("every binary tree has a separator"))
}

fn visit(f: &Formula, lo: u64, hi: u64, path: &mut Vec<bool>, best: &mut Option<Vec<bool>>) {
    // Subtrees smaller than `lo` contain no candidates.
    if f.size() < lo {
        return;
    }
    if f.size() <= hi && best.as_ref().is_none_or(|b| path.len() > b.len()) {
        *best = Some(path.clone());
    }
    if let Some((l, r)) = f.children() {
        path.push(false);
        visit(l, lo, hi, path, best);
        path.pop();
        path.push(true);
        visit(r, lo, hi, path, best);
        path.pop();
    }
}

/// Depth reduction over a partition lattice.
///
/// With `v` a separator and `F[v := a]` the formula with the subtree at `v`
/// replaced by the constant `a`, the result is
/// `join over a of (reduce(F[v := a]) ^ ind_a(reduce(F_v)))`, where `ind_a`
/// is the unary `x >= a` indicator. Because `F[v := a]` is monotone in `a`,
/// only the term for the true value of `F_v` survives the join.
///
/// Formulas no larger than the lattice are kept verbatim, and a rewritten
/// formula is only used when it is shallower than its input.
pub fn spira_reduce(f: &Formula, pl: &PartitionLattice) -> Result<Formula, FormulaError> {
    if f.size() > SPIRA_MAX_SIZE {
        return Err(FormulaError::SizeLimit(format!(
            "formula size {} exceeds {}",
            f.size(),
            SPIRA_MAX_SIZE
        )));
    }
    Ok(reduce(f, pl))
}

fn reduce(f: &Formula, pl: &PartitionLattice) -> Formula {
    if f.size() <= pl.len() as u64 {
        return f.clone();
    }
    let v = tree_separator(f).expect("size is at least 2");
    let sub = reduce(f.at(&v), pl);
    let terms: Vec<Formula> = (0..pl.len())
        .map(|a| {
            let outer = reduce(&f.replace_at(&v, Formula::constant(a)), pl);
            Formula::meet(outer, pl.indicators()[a].apply(&sub))
        })
        .collect();
    let g = Formula::join_all(terms, pl.bottom());
    if g.depth() < f.depth() {
        g
    } else {
        f.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::make_partition_lattice;

    /// Left comb of joins whose leaves cycle through `vars` variables.
    fn comb(leaves: usize, vars: usize) -> Formula {
        let map: Vec<usize> = (0..5).collect();
        let mut f = Formula::input(1, map.clone());
        for k in 1..leaves {
            f = Formula::join(f, Formula::input(k % vars + 1, map.clone()));
        }
        f
    }

    #[test]
    fn separator_window() {
        let f = Formula::join(Formula::arg(), Formula::arg());
        assert_eq!(tree_separator(&f).unwrap(), vec![false]);
        let c = comb(4, 4);
        assert_eq!(c.size(), 7);
        let p = tree_separator(&c).unwrap();
        let s = c.at(&p).size();
        assert!((3..=5).contains(&s));
        assert_eq!(tree_separator(&Formula::arg()).unwrap_err(), FormulaError::TooSmall(1));
    }

    #[test]
    fn constant_is_a_fixed_point() {
        let pl = make_partition_lattice(3).unwrap();
        let f = Formula::constant(2);
        assert!(spira_reduce(&f, &pl).unwrap().same_tree(&f));
    }

    #[test]
    fn comb_gets_shallower_and_stays_equivalent() {
        let pl = make_partition_lattice(3).unwrap();
        let l = pl.lattice();
        let f = comb(16, 4);
        assert_eq!(f.size(), 31);
        let g = spira_reduce(&f, &pl).unwrap();
        assert!(g.depth() < f.depth(), "{} vs {}", g.depth(), f.depth());
        for w in crate::circuit::all_words(5, 4) {
            assert_eq!(g.eval(l, &w).unwrap(), f.eval(l, &w).unwrap());
        }
    }
}
