//! Seeded random instances for tests and the command-line tool.

use std::sync::Arc;

use rand::Rng;

use crate::circuit::{boolean_alphabet, is_skew, Annotation, ComparatorCircuit};
use crate::formula::Formula;
use crate::lowering::{BoolGate, BooleanCircuit, BpState, BranchingProgram};
use crate::order::{BoundedPoset, Lattice, Poset};

/// Random poset on `n` elements `e0..`: each pair `i < j` is related with
/// probability `density`, then closed transitively.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> Poset {
    let ids: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_indexed(ids, &pairs).expect("edges go forward")
}

/// Lattice of down-sets of a random poset on `k` points, retried until it
/// has at most `max_elems` elements. Every such lattice is distributive.
pub fn random_distributive_lattice<R: Rng>(rng: &mut R, max_elems: usize) -> Lattice {
    assert!(max_elems >= 2);
    loop {
        let k = rng.random_range(1..=max_elems.min(5) - 1);
        let base = random_poset(rng, k, 0.5);
        let mut downsets: Vec<u32> = (0..1u32 << k)
            .filter(|&s| (0..k).all(|a| s >> a & 1 == 0 || (0..k).all(|b| !base.leq(b, a) || s >> b & 1 == 1)))
            .collect();
        if downsets.len() > max_elems {
            continue;
        }
        downsets.sort_by_key(|s| (s.count_ones(), *s));
        let ids: Vec<String> = downsets
            .iter()
            .map(|s| {
                let members: Vec<String> = (0..k).filter(|a| s >> a & 1 == 1).map(|a| a.to_string()).collect();
                format!("{{{}}}", members.join(","))
            })
            .collect();
        let leq = |a: usize, b: usize| downsets[a] & !downsets[b] == 0;
        let poset = Poset::from_leq_fn(ids, leq).expect("inclusion is a partial order");
        return Lattice::new(BoundedPoset::try_new(poset).expect("empty and full sets")).expect("down-sets form a lattice");
    }
}

/// Random annotation over the Boolean alphabet: a constant, or variable
/// `1..=vars` with a random symbol map.
fn random_annotation<R: Rng>(rng: &mut R, elems: usize, vars: usize) -> Annotation {
    if vars > 0 && rng.random_bool(0.6) {
        let map = vec![rng.random_range(0..elems), rng.random_range(0..elems)];
        Annotation::Input { var: rng.random_range(1..=vars), map }
    } else {
        Annotation::Const(rng.random_range(0..elems))
    }
}

fn random_pair<R: Rng>(rng: &mut R, lines: usize) -> (usize, usize) {
    let i = rng.random_range(0..lines);
    let mut j = rng.random_range(0..lines - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// Random comparator circuit over `poset` and the Boolean alphabet.
pub fn random_circuit<R: Rng>(
    rng: &mut R,
    poset: Arc<BoundedPoset>,
    lines: usize,
    gates: usize,
    vars: usize,
) -> ComparatorCircuit {
    assert!(lines >= 2);
    let n = poset.len();
    let annotations = (0..lines).map(|_| random_annotation(rng, n, vars)).collect();
    let gate_list = (0..gates).map(|_| random_pair(rng, lines)).collect();
    let output = rng.random_range(0..lines);
    let accept = rng.random_range(0..n);
    ComparatorCircuit::new(poset, boolean_alphabet(), annotations, gate_list, output, accept)
        .expect("generated circuit is well formed")
}

/// Random skew circuit: most gates take one never-touched line; the rest
/// are arbitrary and the draw is repeated until the result is skew. After
/// a bounded number of draws every gate takes a never-touched line, which
/// may leave fewer than `gates` gates.
pub fn random_skew_circuit<R: Rng>(
    rng: &mut R,
    poset: Arc<BoundedPoset>,
    lines: usize,
    gates: usize,
    vars: usize,
) -> ComparatorCircuit {
    assert!(lines >= 2);
    let n = poset.len();
    for attempt in 0.. {
        let strict = attempt >= 64;
        let annotations: Vec<Annotation> = (0..lines).map(|_| random_annotation(rng, n, vars)).collect();
        let mut fresh = vec![true; lines];
        let mut gate_list = Vec::with_capacity(gates);
        for _ in 0..gates {
            let free: Vec<usize> = (0..lines).filter(|&l| fresh[l]).collect();
            if strict && free.is_empty() {
                break;
            }
            let (i, j) = if !free.is_empty() && (strict || rng.random_bool(0.8)) {
                let f = free[rng.random_range(0..free.len())];
                let mut o = rng.random_range(0..lines - 1);
                if o >= f {
                    o += 1;
                }
                if rng.random_bool(0.5) {
                    (f, o)
                } else {
                    (o, f)
                }
            } else {
                random_pair(rng, lines)
            };
            fresh[i] = false;
            fresh[j] = false;
            gate_list.push((i, j));
        }
        let output = rng.random_range(0..lines);
        let c = ComparatorCircuit::new(poset.clone(), boolean_alphabet(), annotations, gate_list, output, poset.top())
            .expect("generated circuit is well formed");
        if is_skew(&c) {
            return c;
        }
    }
    unreachable!("strict draws are skew")
}

/// Monotone circuit: `vars` input gates, then `gates` AND/OR gates over
/// earlier gates. The output is the last gate.
pub fn random_monotone_circuit<R: Rng>(rng: &mut R, vars: usize, gates: usize) -> BooleanCircuit {
    assert!(vars >= 1);
    let mut list: Vec<BoolGate> = (1..=vars).map(BoolGate::Input).collect();
    for _ in 0..gates {
        let k = list.len();
        let (a, b) = (rng.random_range(0..k), rng.random_range(0..k));
        list.push(if rng.random_bool(0.5) { BoolGate::And(a, b) } else { BoolGate::Or(a, b) });
    }
    let output = list.len() - 1;
    BooleanCircuit { gates: list, output }
}

/// Formula over literals `x_i` and `!x_i` with `leaves` leaves, as a circuit
/// whose internal gates all have fan-out one.
pub fn random_cnf_like_formula<R: Rng>(rng: &mut R, vars: usize, leaves: usize) -> BooleanCircuit {
    assert!(vars >= 1 && leaves >= 1);
    let mut list = Vec::new();
    let mut roots: Vec<usize> = (0..leaves)
        .map(|_| {
            let v = rng.random_range(1..=vars);
            list.push(if rng.random_bool(0.5) { BoolGate::Input(v) } else { BoolGate::NegInput(v) });
            list.len() - 1
        })
        .collect();
    while roots.len() > 1 {
        let a = roots.swap_remove(rng.random_range(0..roots.len()));
        let b = roots.swap_remove(rng.random_range(0..roots.len()));
        list.push(if rng.random_bool(0.5) { BoolGate::And(a, b) } else { BoolGate::Or(a, b) });
        roots.push(list.len() - 1);
    }
    BooleanCircuit { gates: list, output: roots[0] }
}

/// Layered monotone circuit of the given depth. Gates of layer `t` read
/// gates of layer `t - 1` or literals (possibly negated when `negations`).
pub fn random_layered_circuit<R: Rng>(
    rng: &mut R,
    vars: usize,
    depth: usize,
    width: usize,
    negations: bool,
) -> BooleanCircuit {
    assert!(vars >= 1 && depth >= 1 && width >= 1);
    let mut list: Vec<BoolGate> = (1..=vars).map(BoolGate::Input).collect();
    if negations {
        list.extend((1..=vars).map(BoolGate::NegInput));
    }
    let literals: Vec<usize> = (0..list.len()).collect();
    let mut prev: Vec<usize> = Vec::new();
    for t in 1..=depth {
        let w = if t == depth { 1 } else { rng.random_range(1..=width) };
        let mut layer = Vec::with_capacity(w);
        for _ in 0..w {
            let mut pick = |forced: bool| -> usize {
                if !prev.is_empty() && (forced || rng.random_bool(0.6)) {
                    prev[rng.random_range(0..prev.len())]
                } else {
                    literals[rng.random_range(0..literals.len())]
                }
            };
            // At least one operand from the previous layer keeps the level exact.
            let (a, b) = (pick(true), pick(false));
            list.push(if rng.random_bool(0.5) { BoolGate::And(a, b) } else { BoolGate::Or(a, b) });
            layer.push(list.len() - 1);
        }
        prev = layer;
    }
    let output = list.len() - 1;
    BooleanCircuit { gates: list, output }
}

/// Layered branching program with at most `max_states` states over `vars`
/// variables. The last layer holds one or two final states.
pub fn random_bp<R: Rng>(rng: &mut R, vars: usize, max_states: usize) -> BranchingProgram {
    assert!(vars >= 1 && max_states >= 3);
    let mut layers: Vec<Vec<usize>> = vec![vec![0]];
    let mut count = 1;
    loop {
        let room = max_states - count;
        if room < 2 || (layers.len() > 1 && rng.random_bool(0.3)) {
            break;
        }
        let w = rng.random_range(1..=room.min(3));
        layers.push((count..count + w).collect());
        count += w;
    }
    let mut states = vec![BpState { var: None, on0: 0, on1: 0 }; count];
    for t in 0..layers.len() - 1 {
        let next = &layers[t + 1];
        for &s in &layers[t] {
            states[s] = BpState {
                var: Some(rng.random_range(1..=vars)),
                on0: next[rng.random_range(0..next.len())],
                on1: next[rng.random_range(0..next.len())],
            };
        }
    }
    let last = layers.last().expect("at least one layer");
    let accept = last[rng.random_range(0..last.len())];
    BranchingProgram { states, layers, start: 0, accept }
}

/// Random formula with `leaves` leaves over a lattice with `elems` elements;
/// leaves are constants or variables `1..=vars` read through a random map
/// from `symbols` symbols.
pub fn random_formula<R: Rng>(rng: &mut R, elems: usize, vars: usize, symbols: usize, leaves: usize) -> Formula {
    assert!(leaves >= 1);
    if leaves == 1 {
        return if vars > 0 && rng.random_bool(0.7) {
            let map: Vec<usize> = (0..symbols).map(|_| rng.random_range(0..elems)).collect();
            Formula::input(rng.random_range(1..=vars), map)
        } else {
            Formula::constant(rng.random_range(0..elems))
        };
    }
    let left = rng.random_range(1..leaves);
    let l = random_formula(rng, elems, vars, symbols, left);
    let r = random_formula(rng, elems, vars, symbols, leaves - left);
    if rng.random_bool(0.5) {
        Formula::meet(l, r)
    } else {
        Formula::join(l, r)
    }
}
