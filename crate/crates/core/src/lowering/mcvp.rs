use std::collections::VecDeque;
use std::sync::{Arc, OnceLock};

use super::boolean::{BoolGate, BooleanCircuit};
use super::builder::Builder;
use super::posets::p_lattice;
use super::LoweringError;
use crate::circuit::{boolean_alphabet, ComparatorCircuit};
use crate::order::{BoundedPoset, Lattice};

/// Elements playing the roles of the P-ledger constants in some carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PConstants {
    pub zero: usize,
    pub one: usize,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub w: usize,
    pub p: usize,
}

impl PConstants {
    /// Looks the constants up by their ledger names.
    pub fn by_name(poset: &BoundedPoset) -> Result<Self, LoweringError> {
        let e = |id: &str| poset.elem(id).map_err(LoweringError::from);
        Ok(PConstants { zero: e("0")?, one: e("1")?, x: e("x")?, y: e("y")?, z: e("z")?, w: e("w")?, p: e("p")? })
    }
}

/// The completed P-poset, built once.
pub fn shared_p_lattice() -> &'static Lattice {
    static CELL: OnceLock<Lattice> = OnceLock::new();
    CELL.get_or_init(p_lattice)
}

/// Copies the 0/1 value on `r` onto two fresh lines:
/// `r v x = r'`, `r' ^ y = r'o`, `r'o v z = r'oo`, `r'oo ^ w = r` for the
/// first copy and `r ^ x = r''`, `r'' v p = ro`, `ro ^ w = r` for the second.
pub(crate) fn copy_gadget(b: &mut Builder, k: &PConstants, r: usize) -> (usize, usize) {
    let x = b.constant(k.x);
    let y = b.constant(k.y);
    let z = b.constant(k.z);
    let w1 = b.constant(k.w);
    let p = b.constant(k.p);
    let w2 = b.constant(k.w);
    b.gate(r, x);
    b.gate(y, x);
    b.gate(y, z);
    b.gate(w1, z);
    b.gate(r, p);
    b.gate(w2, p);
    (w1, w2)
}

/// `count` lines carrying the value on `r`, via a balanced tree of copy gadgets.
pub(crate) fn copies(b: &mut Builder, k: &PConstants, r: usize, count: usize) -> Vec<usize> {
    match count {
        0 => Vec::new(),
        1 => vec![r],
        _ => {
            let (a, c) = copy_gadget(b, k, r);
            let mut out = copies(b, k, a, count.div_ceil(2));
            out.extend(copies(b, k, c, count / 2));
            out
        }
    }
}

/// Emits the AND/OR gates of `c` in order. `literal` supplies one fresh line
/// per use of a literal gate. Returns `output_copies` lines holding the output.
pub(crate) fn compile_gates(
    b: &mut Builder,
    c: &BooleanCircuit,
    k: &PConstants,
    output_copies: usize,
    literal: &mut dyn FnMut(&mut Builder, usize) -> Result<usize, LoweringError>,
) -> Result<Vec<usize>, LoweringError> {
    let mut fanout = c.fanout();
    fanout[c.output] += output_copies.max(1) - 1;
    let mut pending: Vec<VecDeque<usize>> = vec![VecDeque::new(); c.gates.len()];
    let mut take = |b: &mut Builder, pending: &mut Vec<VecDeque<usize>>, g: usize| -> Result<usize, LoweringError> {
        if c.gates[g].is_literal() {
            literal(b, g)
        } else {
            Ok(pending[g].pop_front().expect("fan-out accounted for"))
        }
    };
    for (g, gate) in c.gates.iter().enumerate() {
        let result = match *gate {
            BoolGate::And(l, r) | BoolGate::Or(l, r) => {
                let la = take(b, &mut pending, l)?;
                let lb = take(b, &mut pending, r)?;
                b.gate(la, lb);
                if matches!(gate, BoolGate::And(..)) {
                    la
                } else {
                    lb
                }
            }
            BoolGate::Not(_) => return Err(LoweringError::NonMonotoneGate(g)),
            _ => continue,
        };
        pending[g] = copies(b, k, result, fanout[g]).into();
    }
    let out = c.output;
    if c.gates[out].is_literal() {
        let line = literal(b, out)?;
        return Ok(copies(b, k, line, output_copies.max(1)));
    }
    Ok(pending[out].drain(..).collect())
}

/// Compiles a monotone circuit over any carrier where `k` satisfies the
/// P-ledger. Accepting element: `k.one`.
pub fn compile_monotone(
    c: &BooleanCircuit,
    poset: Arc<BoundedPoset>,
    k: &PConstants,
) -> Result<ComparatorCircuit, LoweringError> {
    let (b, out) = compile_monotone_lines(c, poset, k, 1)?;
    Ok(b.finish(boolean_alphabet(), out[0], k.one))
}

pub(crate) fn compile_monotone_lines(
    c: &BooleanCircuit,
    poset: Arc<BoundedPoset>,
    k: &PConstants,
    output_copies: usize,
) -> Result<(Builder, Vec<usize>), LoweringError> {
    c.validate()?;
    if let Some(g) = c.gates.iter().position(|g| matches!(g, BoolGate::NegInput(_) | BoolGate::Not(_))) {
        return Err(LoweringError::NonMonotoneGate(g));
    }
    let mut b = Builder::new(poset);
    let out = compile_into(&mut b, c, k, output_copies)?;
    Ok((b, out))
}

/// Compiles `c` into `b`. Input literals, negated or not, become annotated
/// lines; internal NOT gates are rejected.
pub(crate) fn compile_into(
    b: &mut Builder,
    c: &BooleanCircuit,
    k: &PConstants,
    output_copies: usize,
) -> Result<Vec<usize>, LoweringError> {
    let pos = vec![k.zero, k.one];
    let neg = vec![k.one, k.zero];
    compile_gates(b, c, k, output_copies, &mut |b, g| {
        Ok(match c.gates[g] {
            BoolGate::Input(v) => b.input(v, pos.clone()),
            BoolGate::NegInput(v) => b.input(v, neg.clone()),
            BoolGate::Const(t) => b.constant(if t { k.one } else { k.zero }),
            _ => unreachable!("only literals are requested"),
        })
    })
}

/// Monotone circuit value to a comparator circuit over the completed P-poset.
/// The circuit accepts (outputs element `1`) iff `c` outputs 1.
pub fn mcvp_to_cc(c: &BooleanCircuit) -> Result<ComparatorCircuit, LoweringError> {
    let lattice = shared_p_lattice();
    let k = PConstants::by_name(lattice.bounded())?;
    compile_monotone(c, lattice.bounded().clone(), &k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lowering::boolean::all_assignments;

    fn check(c: &BooleanCircuit) {
        let cc = mcvp_to_cc(c).unwrap();
        let (zero, one) = (cc.poset().elem("0").unwrap(), cc.poset().elem("1").unwrap());
        for bits in all_assignments(c.num_vars()) {
            let word: Vec<usize> = bits.iter().map(|&b| b as usize).collect();
            let out = cc.evaluate(&word).unwrap();
            assert_eq!(out, if c.eval(&bits) { one } else { zero }, "{bits:?}");
        }
    }

    #[test]
    fn single_or() {
        check(&BooleanCircuit::new(vec![BoolGate::Input(1), BoolGate::Input(2), BoolGate::Or(0, 1)], 2).unwrap());
    }

    #[test]
    fn shared_or_feeds_two_ands() {
        let c = BooleanCircuit::new(
            vec![
                BoolGate::Input(1),
                BoolGate::Input(2),
                BoolGate::Input(3),
                BoolGate::Or(0, 1),
                BoolGate::And(3, 2),
                BoolGate::And(3, 0),
                BoolGate::Or(4, 5),
            ],
            6,
        )
        .unwrap();
        check(&c);
    }

    #[test]
    fn fanout_three_uses_a_copy_tree() {
        let c = BooleanCircuit::new(
            vec![
                BoolGate::Input(1),
                BoolGate::Input(2),
                BoolGate::And(0, 1),
                BoolGate::Or(2, 2),
                BoolGate::And(3, 2),
            ],
            4,
        )
        .unwrap();
        check(&c);
        let cc = mcvp_to_cc(&c).unwrap();
        // Two copy gadgets of six gates each plus three computing gates.
        assert_eq!(cc.gates().len(), 15);
    }

    #[test]
    fn literal_output_and_constants() {
        check(&BooleanCircuit::new(vec![BoolGate::Input(1)], 0).unwrap());
        check(&BooleanCircuit::new(vec![BoolGate::Const(true), BoolGate::Input(1), BoolGate::And(0, 1)], 2).unwrap());
    }

    #[test]
    fn negation_is_rejected() {
        let c = BooleanCircuit::new(vec![BoolGate::NegInput(1)], 0).unwrap();
        assert_eq!(mcvp_to_cc(&c).unwrap_err(), LoweringError::NonMonotoneGate(0));
    }
}
