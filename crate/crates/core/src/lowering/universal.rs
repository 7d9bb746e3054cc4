use std::sync::Arc;

use super::bp::boolean_poset;
use super::builder::Builder;
use super::LoweringError;
use crate::circuit::{Annotation, ComparatorCircuit};
use crate::order::BoundedPoset;

/// Input alphabet of the universal circuit: the element ids, then `0` and
/// `1` unless they already are ids.
pub fn universal_alphabet(poset: &BoundedPoset) -> Vec<String> {
    let mut a: Vec<String> = poset.poset().ids().to_vec();
    for s in ["0", "1"] {
        if !a.iter().any(|x| x == s) {
            a.push(s.to_owned());
        }
    }
    a
}

/// Ordered pairs `(k, j)` with `k != j`, row-major.
pub fn gate_slots(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|k| (0..n).filter(move |&j| j != k).map(move |j| (k, j))).collect()
}

/// Universal circuit for circuits with `n` lines and `m` gates over `poset`.
///
/// Data line `i` reads symbol `i + 1` of the input word. Block `t` holds
/// one conditional gadget per slot of [`gate_slots`]; the gadget for slot
/// `(k, j)` reads one selection symbol and, when it is `1`, applies gate
/// `(k, j)` to the data lines, otherwise leaves them alone. The output is
/// data line 0 and the accepting element is the top.
pub fn build_universal(n: usize, m: usize, poset: Arc<BoundedPoset>) -> Result<ComparatorCircuit, LoweringError> {
    if n < 2 {
        return Err(LoweringError::BadDimensions(format!("need at least 2 lines, got {n}")));
    }
    let alphabet = universal_alphabet(&poset);
    let (bot, top) = (poset.bottom(), poset.top());
    let data_map: Vec<usize> = alphabet
        .iter()
        .map(|s| match poset.elem(s) {
            Ok(e) => e,
            Err(_) if s == "1" => top,
            Err(_) => bot,
        })
        .collect();
    let enable: Vec<usize> = alphabet.iter().map(|s| if s == "1" { top } else { bot }).collect();
    let disable: Vec<usize> = enable.iter().map(|&e| if e == top { bot } else { top }).collect();
    let mut b = Builder::new(poset);
    let data: Vec<usize> = (0..n).map(|i| b.input(i + 1, data_map.clone())).collect();
    let mut var = n;
    for _ in 0..m {
        for (k, j) in gate_slots(n) {
            var += 1;
            let e = b.input(var, enable.clone());
            let ne = b.input(var, disable.clone());
            let (y, x) = (data[k], data[j]);
            b.gate(e, y);
            b.gate(e, x);
            b.gate(y, ne);
            b.gate(e, y);
        }
    }
    let top = b.poset.top();
    let c = ComparatorCircuit::new(b.poset, alphabet, b.lines, b.gates, data[0], top)?;
    Ok(c)
}

/// Input word for [`build_universal`] that makes it simulate `c` on `input`.
/// The circuit is relabelled so that its output is line 0.
pub fn universal_word(c: &ComparatorCircuit, input: &[usize]) -> Result<Vec<usize>, LoweringError> {
    let mut c = c.clone();
    c.move_output_to_front();
    let n = c.lines().len();
    let alphabet = universal_alphabet(c.poset());
    let sym = |s: &str| alphabet.iter().position(|a| a == s).expect("symbol in alphabet");
    let mut word: Vec<usize> = c.initial_values(input)?.into_iter().map(|e| sym(c.poset().id(e))).collect();
    let (zero, one) = (sym("0"), sym("1"));
    let slots = gate_slots(n);
    for &g in c.gates() {
        word.extend(slots.iter().map(|&s| if s == g { one } else { zero }));
    }
    Ok(word)
}

/// A decoded comparator circuit value instance over `0 < 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CcvpInstance {
    pub n: usize,
    pub m: usize,
    pub gates: Vec<(usize, usize)>,
    pub init: Vec<bool>,
}

impl CcvpInstance {
    /// Constant-annotated circuit with output line 0.
    pub fn to_circuit(&self) -> ComparatorCircuit {
        let p = boolean_poset();
        let lines = self.init.iter().map(|&v| Annotation::Const(if v { p.top() } else { p.bottom() })).collect();
        let top = p.top();
        ComparatorCircuit::new(p, crate::circuit::boolean_alphabet(), lines, self.gates.clone(), 0, top)
            .expect("decoded instance is well formed")
    }
}

/// `1^n 0 1^m 0`, then one one-hot block of `n(n-1)` bits per gate
/// (slots as in [`gate_slots`]), then the `n` initial line values.
/// The output line is moved to line 0 first.
pub fn encode_ccvp(c: &ComparatorCircuit, input: &[usize]) -> Result<String, LoweringError> {
    if c.poset().len() != 2 {
        return Err(LoweringError::Malformed("encoding needs the two-element lattice".into()));
    }
    let mut c = c.clone();
    c.move_output_to_front();
    let (n, m) = (c.lines().len(), c.gates().len());
    let top = c.poset().top();
    let mut s = String::with_capacity(2 * n + m + 2 + n * (n - 1) * m);
    s.push_str(&"1".repeat(n));
    s.push('0');
    s.push_str(&"1".repeat(m));
    s.push('0');
    let slots = gate_slots(n);
    for &g in c.gates() {
        s.extend(slots.iter().map(|&t| if t == g { '1' } else { '0' }));
    }
    for v in c.initial_values(input)? {
        s.push(if v == top { '1' } else { '0' });
    }
    Ok(s)
}

/// Inverse of [`encode_ccvp`]: checks the header, the total length
/// `2n + m + 2 + n(n-1)m` and that every block is one-hot.
pub fn validate_ccvp(bits: &str) -> Result<CcvpInstance, LoweringError> {
    let bad = |why: &str| LoweringError::MalformedString(why.to_owned());
    if let Some(c) = bits.chars().find(|c| !matches!(c, '0' | '1')) {
        return Err(LoweringError::MalformedString(format!("unexpected character `{c}`")));
    }
    let b = bits.as_bytes();
    let n = b.iter().take_while(|&&c| c == b'1').count();
    if n < 2 || b.get(n) != Some(&b'0') {
        return Err(bad("header must start with 1^n 0, n >= 2"));
    }
    let m = b[n + 1..].iter().take_while(|&&c| c == b'1').count();
    if b.get(n + 1 + m) != Some(&b'0') {
        return Err(bad("header must continue with 1^m 0"));
    }
    let w = n * (n - 1);
    if b.len() != 2 * n + m + 2 + w * m {
        return Err(LoweringError::MalformedString(format!(
            "length {} does not match n = {n}, m = {m}",
            b.len()
        )));
    }
    let slots = gate_slots(n);
    let body = &b[n + m + 2..];
    let mut gates = Vec::with_capacity(m);
    for (t, block) in body[..w * m].chunks(w).enumerate() {
        let ones: Vec<usize> = (0..w).filter(|&i| block[i] == b'1').collect();
        let [one] = ones[..] else {
            return Err(LoweringError::MalformedString(format!("block {t} is not one-hot")));
        };
        gates.push(slots[one]);
    }
    let init = body[w * m..].iter().map(|&c| c == b'1').collect();
    Ok(CcvpInstance { n, m, gates, init })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{all_words, boolean_alphabet};
    use crate::lowering::posets::shared_np_poset;

    fn bool_circuit(n: usize, gates: Vec<(usize, usize)>, output: usize) -> ComparatorCircuit {
        let p = boolean_poset();
        let lines = (0..n).map(|i| Annotation::Input { var: i + 1, map: vec![0, 1] }).collect();
        ComparatorCircuit::new(p, boolean_alphabet(), lines, gates, output, 1).unwrap()
    }

    #[test]
    fn gadget_count() {
        let u = build_universal(2, 1, boolean_poset()).unwrap();
        assert_eq!(u.gates().len(), 4 * 2);
        let u = build_universal(3, 2, boolean_poset()).unwrap();
        assert_eq!(u.gates().len(), 4 * 12);
        assert!(matches!(build_universal(1, 1, boolean_poset()), Err(LoweringError::BadDimensions(_))));
    }

    #[test]
    fn one_gate_over_two_chain() {
        let c = bool_circuit(2, vec![(0, 1)], 0);
        let u = build_universal(2, 1, boolean_poset()).unwrap();
        for x in all_words(2, 2) {
            let w = universal_word(&c, &x).unwrap();
            assert_eq!(u.output_set(&w).unwrap(), c.output_set(&x).unwrap(), "{x:?}");
        }
    }

    #[test]
    fn enable_truth_table() {
        // Every slot disabled: the data lines pass through.
        let u = build_universal(2, 1, boolean_poset()).unwrap();
        for x in all_words(2, 2) {
            let mut w = x.clone();
            w.extend([0, 0]);
            assert_eq!(u.evaluate(&w).unwrap(), x[0]);
            // Slot (1, 0) puts the join on line 0.
            let mut w = x.clone();
            w.extend([0, 1]);
            assert_eq!(u.evaluate(&w).unwrap(), x[0].max(x[1]));
        }
    }

    #[test]
    fn two_gates_over_the_np_poset() {
        let p = shared_np_poset();
        let alphabet: Vec<String> = p.poset().ids().to_vec();
        let id = |s: &str| p.elem(s).unwrap();
        let ident: Vec<usize> = (0..p.len()).collect();
        let lines = (0..3).map(|i| Annotation::Input { var: i + 1, map: ident.clone() }).collect();
        let c = ComparatorCircuit::new(p.clone(), alphabet, lines, vec![(0, 1), (2, 1)], 1, p.top()).unwrap();
        let u = build_universal(3, 2, p.clone()).unwrap();
        for x in [["Var", "n", "l"], ["n0", "l", "l'"], ["cn0'", "r'", "cccn1'"]] {
            let x: Vec<usize> = x.iter().map(|s| id(s)).collect();
            let w = universal_word(&c, &x).unwrap();
            assert_eq!(u.output_set(&w).unwrap(), c.output_set(&x).unwrap());
        }
    }

    #[test]
    fn ccvp_golden_and_round_trip() {
        let c = bool_circuit(2, vec![(0, 1)], 0);
        assert_eq!(encode_ccvp(&c, &[1, 0]).unwrap(), "110101010");
        let inst = validate_ccvp("110101010").unwrap();
        assert_eq!(inst, CcvpInstance { n: 2, m: 1, gates: vec![(0, 1)], init: vec![true, false] });
        assert_eq!(inst.to_circuit().evaluate(&[]).unwrap(), 0);
    }

    #[test]
    fn malformed_strings() {
        for s in ["", "0000", "110", "1101", "11010", "110100010", "110101110", "11010101x"] {
            assert!(matches!(validate_ccvp(s), Err(LoweringError::MalformedString(_))), "{s}");
        }
    }
}
