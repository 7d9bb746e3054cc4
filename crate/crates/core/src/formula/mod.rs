//! Fan-in-2 formulas over a lattice.
//!
//! Formulas are logically trees. Subtrees are reference counted, so a
//! formula that uses the same subformula twice stores it once; size and
//! depth are always those of the unfolded tree.

mod json;
mod spira;

pub use json::{formula_from_json, formula_to_json};
pub use spira::{spira_reduce, tree_separator};

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::circuit::{Annotation, ComparatorCircuit};
use crate::order::Lattice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("input word has {got} symbols but the formula reads variable {need}")]
    ArityMismatch { need: usize, got: usize },
    #[error("formula has size {0}; a separator needs at least 2 nodes")]
    TooSmall(u64),
    #[error("{0}")]
    SizeLimit(String),
    #[error("unary formula argument is unbound")]
    UnboundArgument,
    #[error("malformed formula: {0}")]
    Format(String),
}

#[derive(Clone)]
pub enum Kind {
    Const(usize),
    /// Variable `var` (1-based) read through `map`, indexed by symbol.
    Input { var: usize, map: Arc<[usize]> },
    /// Placeholder for the argument of a unary formula; see [`Formula::apply`].
    Arg,
    Meet(Formula, Formula),
    Join(Formula, Formula),
}

struct Node {
    kind: Kind,
    size: u64,
    depth: u32,
}

#[derive(Clone)]
pub struct Formula(Arc<Node>);

impl Formula {
    fn leaf(kind: Kind) -> Self {
        Formula(Arc::new(Node { kind, size: 1, depth: 0 }))
    }

    pub fn constant(e: usize) -> Self {
        Self::leaf(Kind::Const(e))
    }

    pub fn input(var: usize, map: impl Into<Arc<[usize]>>) -> Self {
        assert!(var >= 1, "input variables are 1-based");
        Self::leaf(Kind::Input { var, map: map.into() })
    }

    pub fn arg() -> Self {
        Self::leaf(Kind::Arg)
    }

    fn binary(l: Formula, r: Formula, meet: bool) -> Self {
        let size = 1 + l.size() + r.size();
        let depth = 1 + l.depth().max(r.depth());
        let kind = if meet { Kind::Meet(l, r) } else { Kind::Join(l, r) };
        Formula(Arc::new(Node { kind, size, depth }))
    }

    pub fn meet(l: Formula, r: Formula) -> Self {
        Self::binary(l, r, true)
    }

    pub fn join(l: Formula, r: Formula) -> Self {
        Self::binary(l, r, false)
    }

    /// Balanced meet of `items`; the empty meet is `Const(top)`.
    pub fn meet_all(items: Vec<Formula>, top: usize) -> Self {
        Self::balanced(items, top, true)
    }

    /// Balanced join of `items`; the empty join is `Const(bottom)`.
    pub fn join_all(items: Vec<Formula>, bottom: usize) -> Self {
        Self::balanced(items, bottom, false)
    }

    fn balanced(mut items: Vec<Formula>, unit: usize, meet: bool) -> Self {
        if items.is_empty() {
            return Self::constant(unit);
        }
        while items.len() > 1 {
            let mut next = Vec::with_capacity(items.len().div_ceil(2));
            let mut it = items.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(Self::binary(a, b, meet)),
                    None => next.push(a),
                }
            }
            items = next;
        }
        items.pop().unwrap()
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    /// Node count of the unfolded tree.
    pub fn size(&self) -> u64 {
        self.0.size
    }

    /// Longest root-to-leaf path, counted in edges.
    pub fn depth(&self) -> u32 {
        self.0.depth
    }

    pub fn is_leaf(&self) -> bool {
        self.0.size == 1
    }

    pub fn children(&self) -> Option<(&Formula, &Formula)> {
        match &self.0.kind {
            Kind::Meet(l, r) | Kind::Join(l, r) => Some((l, r)),
            _ => None,
        }
    }

    pub fn ptr_eq(&self, other: &Formula) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    fn key(&self) -> *const Node {
        Arc::as_ptr(&self.0)
    }

    /// Largest variable index read, 0 when there are none.
    pub fn max_var(&self) -> usize {
        let mut memo = HashMap::new();
        self.fold(&mut memo, &mut |f, kids: &[usize]| match f.kind() {
            Kind::Input { var, .. } => *var,
            _ => kids.iter().copied().max().unwrap_or(0),
        })
    }

    pub fn has_arg(&self) -> bool {
        let mut memo = HashMap::new();
        self.fold(&mut memo, &mut |f, kids: &[bool]| {
            matches!(f.kind(), Kind::Arg) || kids.iter().any(|&k| k)
        })
    }

    /// Bottom-up fold over distinct physical nodes.
    fn fold<T: Clone>(
        &self,
        memo: &mut HashMap<*const Node, T>,
        step: &mut impl FnMut(&Formula, &[T]) -> T,
    ) -> T {
        if let Some(v) = memo.get(&self.key()) {
            return v.clone();
        }
        let v = match self.children() {
            Some((l, r)) => {
                let a = l.fold(memo, step);
                let b = r.fold(memo, step);
                step(self, &[a, b])
            }
            None => step(self, &[]),
        };
        memo.insert(self.key(), v.clone());
        v
    }

    /// Evaluates with `Arg` leaves bound to `arg`.
    pub fn eval_with(&self, lattice: &Lattice, input: &[usize], arg: Option<usize>) -> Result<usize, FormulaError> {
        let need = self.max_var();
        if need > input.len() {
            return Err(FormulaError::ArityMismatch { need, got: input.len() });
        }
        if arg.is_none() && self.has_arg() {
            return Err(FormulaError::UnboundArgument);
        }
        let mut memo = HashMap::new();
        Ok(self.fold(&mut memo, &mut |f, kids: &[usize]| match f.kind() {
            Kind::Const(e) => *e,
            Kind::Input { var, map } => map[input[var - 1]],
            Kind::Arg => arg.unwrap(),
            Kind::Meet(..) => lattice.meet(kids[0], kids[1]),
            Kind::Join(..) => lattice.join(kids[0], kids[1]),
        }))
    }

    /// Evaluates a formula without `Arg` leaves on an input word (symbol indices).
    pub fn eval(&self, lattice: &Lattice, input: &[usize]) -> Result<usize, FormulaError> {
        self.eval_with(lattice, input, None)
    }

    /// Evaluates a unary formula at `x`.
    pub fn eval_unary(&self, lattice: &Lattice, x: usize) -> usize {
        self.eval_with(lattice, &[], Some(x)).expect("unary formulas read no inputs")
    }

    /// The composition `self(arg)`: every `Arg` leaf is replaced by `arg`.
    pub fn apply(&self, arg: &Formula) -> Formula {
        let mut memo = HashMap::new();
        self.fold(&mut memo, &mut |f, kids: &[Formula]| match f.kind() {
            Kind::Arg => arg.clone(),
            Kind::Meet(l, r) => rebuild(f, l, r, kids, true),
            Kind::Join(l, r) => rebuild(f, l, r, kids, false),
            _ => f.clone(),
        })
    }

    /// Subtree at `path` (`false` = left, `true` = right).
    pub fn at(&self, path: &[bool]) -> &Formula {
        let mut cur = self;
        for &right in path {
            let (l, r) = cur.children().expect("path leaves the tree");
            cur = if right { r } else { l };
        }
        cur
    }

    /// Copy of the tree with the subtree at `path` replaced.
    pub fn replace_at(&self, path: &[bool], with: Formula) -> Formula {
        match path.split_first() {
            None => with,
            Some((&right, rest)) => {
                let (l, r) = self.children().expect("path leaves the tree");
                let meet = matches!(self.kind(), Kind::Meet(..));
                if right {
                    Self::binary(l.clone(), r.replace_at(rest, with), meet)
                } else {
                    Self::binary(l.replace_at(rest, with), r.clone(), meet)
                }
            }
        }
    }

    /// Structural equality of the unfolded trees.
    pub fn same_tree(&self, other: &Formula) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        if self.size() != other.size() || self.depth() != other.depth() {
            return false;
        }
        match (self.kind(), other.kind()) {
            (Kind::Const(a), Kind::Const(b)) => a == b,
            (Kind::Input { var: a, map: m }, Kind::Input { var: b, map: n }) => a == b && m == n,
            (Kind::Arg, Kind::Arg) => true,
            (Kind::Meet(a, b), Kind::Meet(c, d)) | (Kind::Join(a, b), Kind::Join(c, d)) => {
                a.same_tree(c) && b.same_tree(d)
            }
            _ => false,
        }
    }

    /// Comparator circuit with one line per leaf. Each internal node is one
    /// gate between the lines holding its children's values; the result
    /// stays on the left child's line, the other side is never read again.
    /// Fails with `SizeLimit` above `max_leaves` leaves.
    pub fn to_circuit(
        &self,
        lattice: &Lattice,
        alphabet: Vec<String>,
        max_leaves: u64,
    ) -> Result<ComparatorCircuit, FormulaError> {
        if self.has_arg() {
            return Err(FormulaError::UnboundArgument);
        }
        let leaves = self.size().div_ceil(2);
        if leaves > max_leaves {
            return Err(FormulaError::SizeLimit(format!(
                "formula has {leaves} leaves, limit is {max_leaves}"
            )));
        }
        let mut lines = Vec::with_capacity(leaves as usize);
        let mut gates = Vec::with_capacity(leaves as usize);
        let out = self.emit(&mut lines, &mut gates);
        let mut circuit = ComparatorCircuit::new(lattice.bounded().clone(), alphabet, lines, gates, out, lattice.top())
            .expect("formula circuit is well formed");
        circuit.move_output_to_front();
        Ok(circuit)
    }

    fn emit(&self, lines: &mut Vec<Annotation>, gates: &mut Vec<(usize, usize)>) -> usize {
        match self.kind() {
            Kind::Const(e) => {
                lines.push(Annotation::Const(*e));
                lines.len() - 1
            }
            Kind::Input { var, map } => {
                lines.push(Annotation::Input { var: *var, map: map.to_vec() });
                lines.len() - 1
            }
            Kind::Arg => unreachable!("checked by caller"),
            Kind::Meet(l, r) => {
                let a = l.emit(lines, gates);
                let b = r.emit(lines, gates);
                gates.push((a, b));
                a
            }
            Kind::Join(l, r) => {
                let a = l.emit(lines, gates);
                let b = r.emit(lines, gates);
                gates.push((b, a));
                a
            }
        }
    }

    /// Renders with element ids, e.g. `(x ^ (13/2 v x))`.
    pub fn display<'a>(&'a self, lattice: &'a Lattice) -> impl fmt::Display + 'a {
        Display { f: self, lattice }
    }
}

fn rebuild(f: &Formula, l: &Formula, r: &Formula, kids: &[Formula], meet: bool) -> Formula {
    if kids[0].ptr_eq(l) && kids[1].ptr_eq(r) {
        f.clone()
    } else {
        Formula::binary(kids[0].clone(), kids[1].clone(), meet)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            Kind::Const(e) => write!(f, "#{e}"),
            Kind::Input { var, .. } => write!(f, "x{var}"),
            Kind::Arg => write!(f, "x"),
            Kind::Meet(l, r) => write!(f, "({l:?} ^ {r:?})"),
            Kind::Join(l, r) => write!(f, "({l:?} v {r:?})"),
        }
    }
}

struct Display<'a> {
    f: &'a Formula,
    lattice: &'a Lattice,
}

impl<'a> fmt::Display for Display<'a> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |g: &'a Formula| Display { f: g, lattice: self.lattice };
        match self.f.kind() {
            Kind::Const(e) => write!(out, "{}", self.lattice.id(*e)),
            Kind::Input { var, .. } => write!(out, "x{var}"),
            Kind::Arg => write!(out, "x"),
            Kind::Meet(l, r) => write!(out, "({} ^ {})", sub(l), sub(r)),
            Kind::Join(l, r) => write!(out, "({} v {})", sub(l), sub(r)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{make_bounded, Poset};

    fn chain3() -> Lattice {
        let p = Poset::new(&["0", "m", "1"], &[("0", "m"), ("m", "1")]).unwrap();
        Lattice::new(make_bounded(&p)).unwrap()
    }

    #[test]
    fn leaves_and_binary_nodes() {
        let l = chain3();
        assert_eq!(Formula::constant(1).eval(&l, &[]).unwrap(), 1);
        let f = Formula::join(Formula::constant(0), Formula::constant(2));
        assert_eq!(f.eval(&l, &[]).unwrap(), 2);
        assert_eq!((f.size(), f.depth()), (3, 1));
    }

    #[test]
    fn arity_is_checked() {
        let l = chain3();
        let f = Formula::input(2, vec![0, 2]);
        assert_eq!(f.eval(&l, &[1]).unwrap_err(), FormulaError::ArityMismatch { need: 2, got: 1 });
        assert_eq!(f.eval(&l, &[0, 1]).unwrap(), 2);
    }

    #[test]
    fn shared_subtrees_count_twice() {
        let x = Formula::arg();
        let g = Formula::meet(x.clone(), Formula::constant(1));
        let h = Formula::join(g.clone(), g);
        assert_eq!(h.size(), 7);
        let k = h.apply(&h);
        assert_eq!(k.size(), 19);
        assert_eq!(k.eval_unary(&chain3(), 2), 1);
    }

    #[test]
    fn balanced_folds() {
        let items: Vec<Formula> = (0..5).map(|_| Formula::arg()).collect();
        let f = Formula::meet_all(items, 2);
        assert_eq!(f.depth(), 3);
        assert_eq!(Formula::join_all(vec![], 0).eval(&chain3(), &[]).unwrap(), 0);
    }

    #[test]
    fn replace_and_locate() {
        let f = Formula::join(Formula::arg(), Formula::meet(Formula::constant(1), Formula::arg()));
        let g = f.replace_at(&[true], Formula::constant(0));
        assert_eq!(g.size(), 3);
        assert!(f.at(&[true, false]).same_tree(&Formula::constant(1)));
    }

    #[test]
    fn circuit_matches_eval() {
        let l = chain3();
        let map: Arc<[usize]> = vec![0, 1, 2].into();
        let f = Formula::meet(
            Formula::join(Formula::input(1, map.clone()), Formula::constant(1)),
            Formula::join(Formula::input(2, map), Formula::constant(0)),
        );
        let alphabet: Vec<String> = ["0", "m", "1"].iter().map(|s| s.to_string()).collect();
        let c = f.to_circuit(&l, alphabet, 1000).unwrap();
        assert_eq!(c.gates().len(), 3);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(c.evaluate(&[a, b]).unwrap(), f.eval(&l, &[a, b]).unwrap());
            }
        }
    }
}
