use super::bp::boolean_poset;
use super::LoweringError;
use crate::circuit::{Annotation, CircuitError, ComparatorCircuit};
use crate::order::{as_lattice, birkhoff_repr, BirkhoffLabels};

/// A circuit over `0 < 1` simulating one over a distributive lattice.
#[derive(Debug, Clone)]
pub struct BooleanSimulation {
    pub circuit: ComparatorCircuit,
    /// The lines carrying the label of the source output, one per bit.
    pub outputs: Vec<usize>,
    pub labels: BirkhoffLabels,
}

impl BooleanSimulation {
    /// Bits on the output lines for `input`.
    pub fn output_vector(&self, input: &[usize]) -> Result<Vec<bool>, CircuitError> {
        let (_, trace) = self.circuit.evaluate_trace(input)?;
        let last = trace.states.last().expect("initial state is recorded");
        let top = self.circuit.poset().top();
        Ok(self.outputs.iter().map(|&l| last[l] == top).collect())
    }
}

/// Replaces each line by `k` lines carrying the bits of its Birkhoff label
/// (`k` = number of join-irreducibles) and each gate by `k` bitwise gates:
/// meet and join of labels are intersection and union.
pub fn distributive_to_boolean(c: &ComparatorCircuit) -> Result<BooleanSimulation, LoweringError> {
    let lattice = as_lattice(c.poset()).map_err(|(a, b)| {
        CircuitError::NotALattice(c.poset().id(a).to_owned(), c.poset().id(b).to_owned())
    })?;
    let labels = birkhoff_repr(&lattice)?;
    let k = labels.universe_size();
    if k == 0 {
        return Err(LoweringError::BadDimensions("one-element lattice has no label bits".into()));
    }
    let bit = |e: usize, t: usize| labels.label(e).contains(t) as usize;
    let mut lines = Vec::with_capacity(c.lines().len() * k);
    for a in c.lines() {
        for t in 0..k {
            lines.push(match a {
                Annotation::Const(e) => Annotation::Const(bit(*e, t)),
                Annotation::Input { var, map } => {
                    Annotation::Input { var: *var, map: map.iter().map(|&e| bit(e, t)).collect() }
                }
            });
        }
    }
    let gates = c.gates().iter().flat_map(|&(i, j)| (0..k).map(move |t| (i * k + t, j * k + t))).collect();
    let outputs: Vec<usize> = (0..k).map(|t| c.output() * k + t).collect();
    let circuit = ComparatorCircuit::new(boolean_poset(), c.alphabet().to_vec(), lines, gates, outputs[0], 1)?;
    Ok(BooleanSimulation { circuit, outputs, labels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{all_words, boolean_alphabet, is_skew};
    use crate::order::{BoundedPoset, OrderError, Poset};
    use std::sync::Arc;

    fn chain3() -> Arc<BoundedPoset> {
        let p = Poset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        Arc::new(BoundedPoset::try_new(p).unwrap())
    }

    #[test]
    fn join_over_three_chain() {
        let p = chain3();
        let alphabet: Vec<String> = p.poset().ids().to_vec();
        let lines = (1..=2).map(|v| Annotation::Input { var: v, map: vec![0, 1, 2] }).collect();
        let c = ComparatorCircuit::new(p, alphabet, lines, vec![(1, 0)], 0, 2).unwrap();
        let sim = distributive_to_boolean(&c).unwrap();
        assert_eq!(sim.labels.universe_size(), 2);
        assert_eq!(sim.circuit.gates(), &[(2, 0), (3, 1)]);
        for w in all_words(3, 2) {
            let out = c.evaluate(&w).unwrap();
            assert_eq!(sim.output_vector(&w).unwrap(), sim.labels.vector(out));
        }
        assert_eq!(is_skew(&c), is_skew(&sim.circuit));
    }

    #[test]
    fn two_chain_is_copied() {
        let p = boolean_poset();
        let lines = vec![Annotation::Input { var: 1, map: vec![0, 1] }, Annotation::Const(1)];
        let c = ComparatorCircuit::new(p, boolean_alphabet(), lines, vec![(0, 1)], 0, 1).unwrap();
        let sim = distributive_to_boolean(&c).unwrap();
        assert_eq!(sim.circuit.lines(), c.lines());
        assert_eq!(sim.circuit.gates(), c.gates());
    }

    #[test]
    fn non_distributive_is_rejected() {
        let m3 = crate::order::lattice::tests::m3();
        let c = ComparatorCircuit::new(m3.bounded().clone(), boolean_alphabet(), vec![Annotation::Const(0)], vec![], 0, 0)
            .unwrap();
        assert_eq!(
            distributive_to_boolean(&c).unwrap_err(),
            LoweringError::Order(OrderError::NotDistributive)
        );
    }
}
