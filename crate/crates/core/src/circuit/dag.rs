use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::fmt;
use std::sync::Arc;

use super::{Annotation, CircuitError, ComparatorCircuit};
use crate::order::BoundedPoset;

/// A wire of the DAG form: the initial value of a line or one side of a gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Wire {
    Input(usize),
    And(usize),
    Or(usize),
}

impl fmt::Display for Wire {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Wire::Input(l) => write!(f, "in{l}"),
            Wire::And(g) => write!(f, "and{g}"),
            Wire::Or(g) => write!(f, "or{g}"),
        }
    }
}

/// A comparator node: the meet of its in-wires leaves on `And(g)`, the join
/// on `Or(g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DagGate {
    pub left: Wire,
    pub right: Wire,
}

#[derive(Debug, Clone)]
pub struct CircuitDag {
    pub poset: Arc<BoundedPoset>,
    pub alphabet: Vec<String>,
    pub inputs: Vec<Annotation>,
    pub gates: Vec<DagGate>,
    pub output: Wire,
    pub accept: usize,
}

pub fn to_dag(c: &ComparatorCircuit) -> CircuitDag {
    let mut current: Vec<Wire> = (0..c.lines().len()).map(Wire::Input).collect();
    let mut gates = Vec::with_capacity(c.gates().len());
    for (g, &(i, j)) in c.gates().iter().enumerate() {
        gates.push(DagGate { left: current[i], right: current[j] });
        current[i] = Wire::And(g);
        current[j] = Wire::Or(g);
    }
    CircuitDag {
        poset: c.poset().clone(),
        alphabet: c.alphabet().to_vec(),
        inputs: c.lines().to_vec(),
        gates,
        output: current[c.output()],
        accept: c.accept(),
    }
}

/// Rebuilds a line-based circuit. Gates are emitted in a topological order
/// that prefers smaller original indices; each gate's outputs take over the
/// lines of its inputs.
pub fn from_dag(dag: &CircuitDag) -> Result<ComparatorCircuit, CircuitError> {
    let n_gates = dag.gates.len();
    let check = |w: Wire| -> Result<(), CircuitError> {
        let ok = match w {
            Wire::Input(l) => l < dag.inputs.len(),
            Wire::And(g) | Wire::Or(g) => g < n_gates,
        };
        if ok {
            Ok(())
        } else {
            Err(CircuitError::Format(format!("wire {w} does not exist")))
        }
    };
    check(dag.output)?;
    let mut consumer: std::collections::HashMap<Wire, usize> = std::collections::HashMap::new();
    for (g, gate) in dag.gates.iter().enumerate() {
        for w in [gate.left, gate.right] {
            check(w)?;
            if consumer.insert(w, g).is_some() {
                return Err(CircuitError::FanoutViolation(w.to_string()));
            }
        }
    }
    if consumer.contains_key(&dag.output) {
        return Err(CircuitError::FanoutViolation(dag.output.to_string()));
    }

    let producer = |w: Wire| match w {
        Wire::Input(_) => None,
        Wire::And(g) | Wire::Or(g) => Some(g),
    };
    let mut indegree = vec![0usize; n_gates];
    let mut dependents: Vec<Vec<usize>> = vec![Vec::new(); n_gates];
    for (g, gate) in dag.gates.iter().enumerate() {
        for w in [gate.left, gate.right] {
            if let Some(p) = producer(w) {
                if p == g {
                    return Err(CircuitError::CyclicDag(g));
                }
                indegree[g] += 1;
                dependents[p].push(g);
            }
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> = (0..n_gates).filter(|&g| indegree[g] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n_gates);
    while let Some(Reverse(g)) = ready.pop() {
        order.push(g);
        for &d in &dependents[g] {
            indegree[d] -= 1;
            if indegree[d] == 0 {
                ready.push(Reverse(d));
            }
        }
    }
    if order.len() < n_gates {
        let stuck = (0..n_gates).find(|&g| indegree[g] > 0).unwrap();
        return Err(CircuitError::CyclicDag(stuck));
    }

    let mut line_of: std::collections::HashMap<Wire, usize> =
        (0..dag.inputs.len()).map(|l| (Wire::Input(l), l)).collect();
    let mut gates = Vec::with_capacity(n_gates);
    for g in order {
        let gate = dag.gates[g];
        let i = line_of[&gate.left];
        let j = line_of[&gate.right];
        gates.push((i, j));
        line_of.insert(Wire::And(g), i);
        line_of.insert(Wire::Or(g), j);
    }
    let output = line_of[&dag.output];
    ComparatorCircuit::new(dag.poset.clone(), dag.alphabet.clone(), dag.inputs.clone(), gates, output, dag.accept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::eval::tests::two_chain;
    use crate::circuit::{all_words, boolean_alphabet};

    fn fig() -> ComparatorCircuit {
        let bit = |var| Annotation::Input { var, map: vec![0, 1] };
        ComparatorCircuit::new(two_chain(), boolean_alphabet(), vec![bit(1), bit(2), bit(3)], vec![(0, 2), (1, 0), (0, 2)], 0, 1)
            .unwrap()
    }

    #[test]
    fn zero_gate_dag() {
        let c = ComparatorCircuit::new(two_chain(), boolean_alphabet(), vec![Annotation::Const(1)], vec![], 0, 1).unwrap();
        let d = to_dag(&c);
        assert!(d.gates.is_empty());
        assert_eq!(d.output, Wire::Input(0));
    }

    #[test]
    fn round_trip_preserves_semantics() {
        let c = fig();
        let d = to_dag(&c);
        assert_eq!(d.gates.len(), 3);
        assert_eq!(d.gates[1], DagGate { left: Wire::Input(1), right: Wire::And(0) });
        let back = from_dag(&d).unwrap();
        for w in all_words(2, 3) {
            assert_eq!(back.evaluate(&w).unwrap(), c.evaluate(&w).unwrap());
        }
        assert_eq!(back.gates(), c.gates());
    }

    #[test]
    fn fanout_is_rejected() {
        let mut d = to_dag(&fig());
        d.gates[2].right = Wire::Input(1);
        assert!(matches!(from_dag(&d), Err(CircuitError::FanoutViolation(_))));
    }

    #[test]
    fn cycles_are_rejected() {
        let mut d = to_dag(&fig());
        d.gates[0].right = Wire::Or(2);
        d.gates[2].right = Wire::Input(2);
        assert!(matches!(from_dag(&d), Err(CircuitError::CyclicDag(_))));
    }
}
