//! A family of posets `P_n` with one block of constants per level, where
//! copying a value moves it one level up. Monotone circuits of depth `d`
//! compile over the completion of `P_d`.

use std::collections::VecDeque;

use super::boolean::{BoolGate, BooleanCircuit};
use super::ledger::{IdentityLedger, LedgerEntry};
use super::LoweringError;
use crate::circuit::{boolean_alphabet, Annotation, ComparatorCircuit};
use crate::order::{dm_completion, BoundedPoset, Lattice, Poset};

/// Per-level element stems; `v'`, `v''` and `vo` exist for `v` in `{0, 1}`.
const LEVEL_STEMS: [&str; 11] = ["0", "1", "0'", "1'", "0''", "1''", "0o", "1o", "x", "y", "z"];

fn at(stem: &str, level: usize) -> String {
    format!("{stem}_{level}")
}

/// Largest `n` accepted by [`growing_poset`].
pub const GROWING_MAX_N: usize = 16;

/// `P_n`: levels `1..=n` of eleven elements each, then `0_{n+1} < 1_{n+1}`
/// and fresh bounds. `|P_n| = 11n + 4`.
pub fn growing_poset(n: usize) -> Result<BoundedPoset, LoweringError> {
    if n == 0 || n > GROWING_MAX_N {
        return Err(LoweringError::SizeLimit(format!("level count {n} outside 1..={GROWING_MAX_N}")));
    }
    let mut names: Vec<String> = Vec::with_capacity(11 * n + 4);
    for i in 1..=n {
        names.extend(LEVEL_STEMS.iter().map(|s| at(s, i)));
    }
    names.push(at("0", n + 1));
    names.push(at("1", n + 1));
    names.push("bot".into());
    names.push("top".into());
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut pair = |a: &str, i: usize, b: &str, j: usize| pairs.push((at(a, i), at(b, j)));
    for i in 1..=n {
        for (a, b) in [
            ("0", "1"),
            ("0'", "1'"),
            ("0''", "1''"),
            ("0o", "1o"),
            ("1''", "1"),
            ("1", "1'"),
            ("0''", "0"),
            ("0", "0'"),
            ("0''", "0o"),
            ("1''", "1o"),
            ("1''", "x"),
            ("x", "0'"),
            ("y", "0o"),
        ] {
            pair(a, i, b, i);
        }
        for (a, b) in [("0", "0o"), ("0", "0'"), ("1", "1o"), ("1", "1'"), ("1", "z")] {
            pair(a, i + 1, b, i);
        }
    }
    pair("0", n + 1, "1", n + 1);
    for x in &names[..names.len() - 2] {
        pairs.push(("bot".into(), x.clone()));
        pairs.push((x.clone(), "top".into()));
    }
    pairs.push(("bot".into(), "top".into()));
    let poset = Poset::new(&names, &pairs)?;
    Ok(BoundedPoset::try_new(poset)?)
}

/// The identities of level `i`: `0 <= 1`, `0 v 1 = 1` and, for `v` in
/// `{0, 1}`, `v v x = v'`, `v ^ x = v''`, `v'' v y = vo`, and both
/// `v' ^ z` and `vo ^ z` equal `v` one level up.
pub fn growing_level_ledger(i: usize) -> IdentityLedger {
    let mut entries = vec![LedgerEntry::leq(&at("0", i), &at("1", i)), LedgerEntry::join(&at("0", i), &at("1", i), &at("1", i))];
    for v in ["0", "1"] {
        let (val, x, y, z) = (at(v, i), at("x", i), at("y", i), at("z", i));
        let (v1, v2, vo, up) = (at(&format!("{v}'"), i), at(&format!("{v}''"), i), at(&format!("{v}o"), i), at(v, i + 1));
        entries.push(LedgerEntry::join(&val, &x, &v1));
        entries.push(LedgerEntry::meet(&val, &x, &v2));
        entries.push(LedgerEntry::join(&v2, &y, &vo));
        entries.push(LedgerEntry::meet(&v1, &z, &up));
        entries.push(LedgerEntry::meet(&vo, &z, &up));
    }
    IdentityLedger { entries }
}

/// Ledgers of levels `1..=n`.
pub fn growing_ledger(n: usize) -> IdentityLedger {
    let mut l = IdentityLedger::default();
    for i in 1..=n {
        l.extend(&growing_level_ledger(i));
    }
    l
}

#[derive(Clone)]
enum SymLine {
    Const(&'static str, usize),
    Input { var: usize, negated: bool },
}

#[derive(Clone, Copy)]
struct Val {
    line: usize,
    level: usize,
}

#[derive(Default)]
struct SymBuilder {
    lines: Vec<SymLine>,
    gates: Vec<(usize, usize)>,
    max_level: usize,
}

impl SymBuilder {
    fn constant(&mut self, stem: &'static str, level: usize) -> usize {
        self.lines.push(SymLine::Const(stem, level));
        self.lines.len() - 1
    }

    /// `r v x = v'`, then `z ^ v' = v` one level up.
    fn shift(&mut self, r: Val) -> Val {
        self.max_level = self.max_level.max(r.level);
        let x = self.constant("x", r.level);
        let z = self.constant("z", r.level);
        self.gates.push((r.line, x));
        self.gates.push((z, x));
        Val { line: z, level: r.level + 1 }
    }

    /// Two copies one level up, through `v'` and through `vo`.
    fn copy(&mut self, r: Val) -> (Val, Val) {
        self.max_level = self.max_level.max(r.level);
        let x = self.constant("x", r.level);
        let y = self.constant("y", r.level);
        let z1 = self.constant("z", r.level);
        let z2 = self.constant("z", r.level);
        self.gates.push((r.line, x));
        self.gates.push((r.line, y));
        self.gates.push((z1, x));
        self.gates.push((z2, y));
        let up = r.level + 1;
        (Val { line: z1, level: up }, Val { line: z2, level: up })
    }

    fn copies(&mut self, r: Val, count: usize) -> Vec<Val> {
        match count {
            0 => Vec::new(),
            1 => vec![r],
            _ => {
                let (a, b) = self.copy(r);
                let mut out = self.copies(a, count.div_ceil(2));
                out.extend(self.copies(b, count / 2));
                out
            }
        }
    }
}

/// A compiled circuit together with the level count of its carrier.
#[derive(Debug, Clone)]
pub struct GrowingCompilation {
    pub circuit: ComparatorCircuit,
    pub levels: usize,
}

/// Compiles a layered circuit with negations only at the inputs. Literals
/// start at level 1; each gate works at the level of its operands (the
/// lower one is shifted up first) and fan-out copies move one level up.
/// Accepts with `1_L` where `L` is the level of the output value.
pub fn growing_compile(c: &BooleanCircuit) -> Result<GrowingCompilation, LoweringError> {
    c.validate()?;
    if let Some(g) = c.gates.iter().position(|g| matches!(g, BoolGate::Not(_))) {
        return Err(LoweringError::InternalNegation(g));
    }
    if !c.is_layered() {
        return Err(LoweringError::NotLayered("an operand skips a level".into()));
    }
    let mut b = SymBuilder { max_level: 1, ..SymBuilder::default() };
    let fanout = c.fanout();
    let mut pending: Vec<VecDeque<Val>> = vec![VecDeque::new(); c.gates.len()];
    let literal = |b: &mut SymBuilder, g: usize| -> Val {
        let line = match c.gates[g] {
            BoolGate::Input(var) => SymLine::Input { var, negated: false },
            BoolGate::NegInput(var) => SymLine::Input { var, negated: true },
            BoolGate::Const(t) => SymLine::Const(if t { "1" } else { "0" }, 1),
            _ => unreachable!("only literals are requested"),
        };
        b.lines.push(line);
        Val { line: b.lines.len() - 1, level: 1 }
    };
    for (g, gate) in c.gates.iter().enumerate() {
        let (BoolGate::And(l, r) | BoolGate::Or(l, r)) = *gate else { continue };
        let mut take = |b: &mut SymBuilder, o: usize| {
            if c.gates[o].is_literal() {
                literal(b, o)
            } else {
                pending[o].pop_front().expect("fan-out accounted for")
            }
        };
        let mut va = take(&mut b, l);
        let mut vb = take(&mut b, r);
        while va.level < vb.level {
            va = b.shift(va);
        }
        while vb.level < va.level {
            vb = b.shift(vb);
        }
        b.gates.push((va.line, vb.line));
        let result = if matches!(gate, BoolGate::And(..)) { va } else { vb };
        pending[g] = b.copies(result, fanout[g]).into();
    }
    let out = if c.gates[c.output].is_literal() {
        literal(&mut b, c.output)
    } else {
        pending[c.output].pop_front().expect("output read counted")
    };

    let levels = b.max_level;
    let lattice = growing_lattice(levels)?;
    let e = |stem: &str, level: usize| lattice.elem(&at(stem, level)).expect("level element");
    let lines = b
        .lines
        .iter()
        .map(|l| match *l {
            SymLine::Const(stem, level) => Annotation::Const(e(stem, level)),
            SymLine::Input { var, negated } => {
                let (zero, one) = (e("0", 1), e("1", 1));
                Annotation::Input { var, map: if negated { vec![one, zero] } else { vec![zero, one] } }
            }
        })
        .collect();
    let accept = e("1", out.level);
    let mut circuit =
        ComparatorCircuit::new(lattice.bounded().clone(), boolean_alphabet(), lines, b.gates, out.line, accept)?;
    circuit.move_output_to_front();
    Ok(GrowingCompilation { circuit, levels })
}

/// Completion of `P_n`.
pub fn growing_lattice(n: usize) -> Result<Lattice, LoweringError> {
    Ok(dm_completion(growing_poset(n)?.poset()).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lowering::boolean::all_assignments;
    use crate::lowering::ledger::verify_ledger;

    #[test]
    fn sizes_and_ledgers() {
        for (n, size, dm) in [(1, 15, 19), (2, 26, 34), (3, 37, 49), (4, 48, 64)] {
            let p = growing_poset(n).unwrap();
            assert_eq!(p.len(), size);
            verify_ledger(p.poset(), &growing_ledger(n)).unwrap();
            let l = growing_lattice(n).unwrap();
            assert_eq!(l.len(), dm);
            verify_ledger(l.poset(), &growing_ledger(n)).unwrap();
        }
        assert!(growing_poset(0).is_err());
    }

    fn check(c: &BooleanCircuit) -> GrowingCompilation {
        let g = growing_compile(c).unwrap();
        let cc = &g.circuit;
        for bits in all_assignments(c.num_vars()) {
            let w: Vec<usize> = bits.iter().map(|&b| b as usize).collect();
            assert_eq!(cc.accepts(&w).unwrap(), c.eval(&bits), "{bits:?}");
        }
        g
    }

    #[test]
    fn depth_two_formula() {
        // x1 & (x2 | x3)
        let c = BooleanCircuit::new(
            vec![
                BoolGate::Input(1),
                BoolGate::Input(2),
                BoolGate::Input(3),
                BoolGate::Or(1, 2),
                BoolGate::And(0, 3),
            ],
            4,
        )
        .unwrap();
        let g = check(&c);
        assert_eq!(g.levels, 1);
    }

    #[test]
    fn shared_gate_and_negated_inputs() {
        let c = BooleanCircuit::new(
            vec![
                BoolGate::Input(1),
                BoolGate::NegInput(2),
                BoolGate::Or(0, 1),
                BoolGate::And(2, 1),
                BoolGate::Or(2, 0),
                BoolGate::And(3, 4),
            ],
            5,
        )
        .unwrap();
        check(&c);
    }

    #[test]
    fn skipped_level_is_rejected() {
        let c = BooleanCircuit::new(
            vec![
                BoolGate::Input(1),
                BoolGate::Input(2),
                BoolGate::Or(0, 1),
                BoolGate::And(2, 0),
                BoolGate::And(3, 2),
            ],
            4,
        )
        .unwrap();
        assert!(matches!(growing_compile(&c), Err(LoweringError::NotLayered(_))));
    }
}
