use std::collections::HashMap;

use super::boolean::{BoolGate, BooleanCircuit};
use super::builder::Builder;
use super::mcvp::{compile_gates, copies, PConstants};
use super::posets::shared_np_poset;
use super::LoweringError;
use crate::circuit::{boolean_alphabet, ComparatorCircuit};
use crate::order::BoundedPoset;

/// Lines holding `(x_i, not x_i)` after the nondeterministic variable gadget.
fn variable_gadget(b: &mut Builder, p: &BoundedPoset) -> (usize, usize) {
    let e = |id: &str| p.elem(id).expect("NP-poset element");
    let var = b.constant(e("Var"));
    let n = b.constant(e("n"));
    let l = b.constant(e("l"));
    let l1 = b.constant(e("l'"));
    let l2 = b.constant(e("l''"));
    let r1 = b.constant(e("r'"));
    let r2 = b.constant(e("r''"));
    let r = b.constant(e("r"));
    let lb = b.constant(e("lb"));
    let lb1 = b.constant(e("lb'"));
    let lb2 = b.constant(e("lb''"));
    // Guess n_b, then convert a copy to b and restore n_b for the complement.
    b.gate(var, n);
    b.gate(n, l);
    b.gate(l1, l);
    b.gate(l1, l2);
    b.gate(n, r1);
    b.gate(r2, r1);
    b.gate(r2, r);
    b.gate(r, lb);
    b.gate(lb1, lb);
    b.gate(lb2, lb1);
    (l2, lb2)
}

/// Circuit satisfiability to a comparator circuit over the NP-poset. Some
/// nondeterministic run outputs element `1` iff `c` is satisfiable.
pub fn csat_to_cc(c: &BooleanCircuit) -> Result<ComparatorCircuit, LoweringError> {
    c.validate()?;
    if let Some(g) = c.gates.iter().position(|g| matches!(g, BoolGate::Not(_))) {
        return Err(LoweringError::InternalNegation(g));
    }
    let poset = shared_np_poset();
    let k = PConstants::by_name(&poset)?;
    let mut b = Builder::new(poset.clone());

    // Uses of each literal, counting the output read.
    let fanout = c.fanout();
    let mut uses: HashMap<(usize, bool), usize> = HashMap::new();
    for (g, gate) in c.gates.iter().enumerate() {
        match *gate {
            BoolGate::Input(v) => *uses.entry((v, true)).or_default() += fanout[g],
            BoolGate::NegInput(v) => *uses.entry((v, false)).or_default() += fanout[g],
            _ => {}
        }
    }
    let mut pool: HashMap<(usize, bool), Vec<usize>> = HashMap::new();
    for v in 1..=c.num_vars() {
        let (pos, neg) = (uses.get(&(v, true)).copied().unwrap_or(0), uses.get(&(v, false)).copied().unwrap_or(0));
        if pos + neg == 0 {
            continue;
        }
        let (xl, nl) = variable_gadget(&mut b, &poset);
        pool.insert((v, true), copies(&mut b, &k, xl, pos));
        pool.insert((v, false), copies(&mut b, &k, nl, neg));
    }
    let out = compile_gates(&mut b, c, &k, 1, &mut |b, g| {
        Ok(match c.gates[g] {
            BoolGate::Input(v) => pool.get_mut(&(v, true)).and_then(Vec::pop).expect("use counted"),
            BoolGate::NegInput(v) => pool.get_mut(&(v, false)).and_then(Vec::pop).expect("use counted"),
            BoolGate::Const(t) => b.constant(if t { k.one } else { k.zero }),
            _ => unreachable!("only literals are requested"),
        })
    })?;
    Ok(b.finish(boolean_alphabet(), out[0], k.one))
}
