//! Checking `output >= A` and `output = A` for skew circuits over a
//! partition lattice by certifying individual pairs `{u, v}` of points (1-based).

use std::collections::HashMap;

use super::LoweringError;
use crate::circuit::{first_non_skew, to_dag, CircuitDag, ComparatorCircuit, Wire};
use crate::partition::{Partition, PartitionLattice};

/// Largest ground set accepted.
pub const PROOFPATH_MAX_N: usize = 5;

struct Checker<'a> {
    pl: &'a PartitionLattice,
    dag: CircuitDag,
    init: Vec<usize>,
    memo: HashMap<(Wire, usize, usize), bool>,
    literal: bool,
}

impl Checker<'_> {
    fn new<'a>(
        c: &ComparatorCircuit,
        pl: &'a PartitionLattice,
        input: &[usize],
        literal: bool,
    ) -> Result<Checker<'a>, LoweringError> {
        if let Some(g) = first_non_skew(c) {
            return Err(LoweringError::NotSkew(g));
        }
        if pl.n() > PROOFPATH_MAX_N {
            return Err(LoweringError::SizeLimit(format!(
                "ground set {} exceeds {PROOFPATH_MAX_N}",
                pl.n()
            )));
        }
        if c.poset().poset().ids() != pl.lattice().poset().ids() {
            return Err(LoweringError::Malformed("circuit is not over the given partition lattice".into()));
        }
        let init = c.initial_values(input)?;
        Ok(Checker { pl, dag: to_dag(c), init, memo: HashMap::new(), literal })
    }

    fn in_input(&self, w: Wire, u: usize, v: usize) -> Option<bool> {
        match w {
            Wire::Input(l) => Some(self.pl.partition(self.init[l]).same_block(u, v)),
            _ => None,
        }
    }

    /// Whether `{u, v}` is certified on wire `w`.
    fn cert(&mut self, w: Wire, u: usize, v: usize) -> bool {
        if let Some(&b) = self.memo.get(&(w, u, v)) {
            return b;
        }
        let result = match w {
            Wire::Input(_) => self.in_input(w, u, v).expect("input wire"),
            Wire::And(g) => {
                // Skewness gives an input-wire operand whose value is known.
                let gate = self.dag.gates[g];
                [(gate.left, gate.right), (gate.right, gate.left)].into_iter().any(|(fresh, other)| {
                    self.in_input(fresh, u, v) == Some(true) && self.cert(other, u, v)
                })
            }
            Wire::Or(g) => {
                let gate = self.dag.gates[g];
                if self.literal {
                    self.cert(gate.left, u, v) || self.cert(gate.right, u, v)
                } else {
                    // Connected through pairs certified on either side.
                    let n = self.pl.n();
                    let mut edges = Vec::new();
                    for a in 1..=n {
                        for b in a + 1..=n {
                            if self.cert(gate.left, a, b) || self.cert(gate.right, a, b) {
                                edges.push((a, b));
                            }
                        }
                    }
                    Partition::from_graph(n, &edges).expect("vertices in range").same_block(u, v)
                }
            }
        };
        self.memo.insert((w, u, v), result);
        result
    }

    /// Each block of `a` is connected by pairs certified at the output.
    fn geq(&mut self, a: &Partition) -> bool {
        let out = self.dag.output;
        let n = self.pl.n();
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                if a.same_block(u, v) && self.cert(out, u, v) {
                    edges.push((u, v));
                }
            }
        }
        let spanned = Partition::from_graph(n, &edges).expect("vertices in range");
        a.refines(&spanned)
    }

    fn eq(&mut self, a: &Partition) -> bool {
        if !self.geq(a) {
            return false;
        }
        let n = self.pl.n();
        for u in 1..=n {
            for v in u + 1..=n {
                if !a.same_block(u, v) {
                    let bigger = a.join(&Partition::from_graph(n, &[(u, v)]).expect("in range"));
                    if self.geq(&bigger) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// `output >= a` for a skew circuit over `pl`.
pub fn proofpath_check_geq(
    c: &ComparatorCircuit,
    pl: &PartitionLattice,
    input: &[usize],
    a: usize,
) -> Result<bool, LoweringError> {
    Ok(Checker::new(c, pl, input, false)?.geq(pl.partition(a)))
}

/// `output = a`: `output >= a`, and `output >= a v e` fails for every
/// single pair `e` joining two blocks of `a`.
pub fn proofpath_check_eq(
    c: &ComparatorCircuit,
    pl: &PartitionLattice,
    input: &[usize],
    a: usize,
) -> Result<bool, LoweringError> {
    Ok(Checker::new(c, pl, input, false)?.eq(pl.partition(a)))
}

/// Variant where a pair must travel along a single input-to-output path,
/// present on every OR gate it crosses. Sound but incomplete: a pair that
/// only arises by transitivity inside a join is missed.
pub fn proofpath_check_geq_single_path(
    c: &ComparatorCircuit,
    pl: &PartitionLattice,
    input: &[usize],
    a: usize,
) -> Result<bool, LoweringError> {
    Ok(Checker::new(c, pl, input, true)?.geq(pl.partition(a)))
}
