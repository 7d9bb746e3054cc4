use std::collections::BTreeSet;

use super::ComparatorCircuit;

/// Gates whose meet side is read afterwards: a later gate touches the meet
/// line, or the meet line is the output line.
pub fn used_and_gates(c: &ComparatorCircuit) -> BTreeSet<usize> {
    let gates = c.gates();
    let mut used = BTreeSet::new();
    // Walking backwards, `touched[l]` says whether a later gate reads line l.
    let mut touched = vec![false; c.lines().len()];
    touched[c.output()] = true;
    for g in (0..gates.len()).rev() {
        let (i, j) = gates[g];
        if touched[i] {
            used.insert(g);
        }
        touched[i] = true;
        touched[j] = true;
    }
    used
}

/// True when every used AND gate has an operand that is still the line's
/// annotation (a constant or an input literal) when the gate fires.
pub fn is_skew(c: &ComparatorCircuit) -> bool {
    first_non_skew(c).is_none()
}

/// First used AND gate with two computed operands.
pub fn first_non_skew(c: &ComparatorCircuit) -> Option<usize> {
    let used = used_and_gates(c);
    let mut fresh = vec![true; c.lines().len()];
    for (g, &(i, j)) in c.gates().iter().enumerate() {
        if used.contains(&g) && !fresh[i] && !fresh[j] {
            return Some(g);
        }
        fresh[i] = false;
        fresh[j] = false;
    }
    None
}
