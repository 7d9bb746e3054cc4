use super::boolean::ReachInstance;
use super::LoweringError;
use crate::circuit::{first_non_skew, to_dag, used_and_gates, ComparatorCircuit, Wire};

/// Skew circuit over `0 < 1` plus an input word to a reachability instance
/// where only the source may have out-degree above one. `t` is reachable
/// from `s` iff the circuit outputs the top element.
pub fn skewcc_to_dgap(c: &ComparatorCircuit, input: &[usize]) -> Result<ReachInstance, LoweringError> {
    if let Some(g) = first_non_skew(c) {
        return Err(LoweringError::NotSkew(g));
    }
    if c.poset().len() != 2 {
        return Err(LoweringError::Malformed("reachability needs the two-element lattice".into()));
    }
    let init = c.initial_values(input)?;
    let top = c.poset().top();
    let dag = to_dag(c);
    let n_in = dag.inputs.len();
    let vertex = |w: Wire| match w {
        Wire::Input(l) => 1 + l,
        Wire::And(g) => 1 + n_in + 2 * g,
        Wire::Or(g) => 2 + n_in + 2 * g,
    };
    let mut vertices = vec!["s".to_owned()];
    vertices.extend((0..n_in).map(|l| Wire::Input(l).to_string()));
    for g in 0..dag.gates.len() {
        vertices.push(Wire::And(g).to_string());
        vertices.push(Wire::Or(g).to_string());
    }
    let mut edges = Vec::new();
    for (l, &v) in init.iter().enumerate() {
        if v == top {
            edges.push((0, vertex(Wire::Input(l))));
        }
    }
    let used = used_and_gates(c);
    for (g, gate) in dag.gates.iter().enumerate() {
        let (e3, e4) = (vertex(Wire::And(g)), vertex(Wire::Or(g)));
        if used.contains(&g) {
            // A used AND has an input-wire operand whose value is known.
            let (e1, e2) = match gate.right {
                Wire::Input(_) => (gate.left, gate.right),
                _ => (gate.right, gate.left),
            };
            let Wire::Input(l) = e2 else { unreachable!("checked skew") };
            if init[l] == top {
                edges.push((vertex(e1), e3));
                edges.push((vertex(e2), e4));
            } else {
                edges.push((vertex(e1), e4));
            }
        } else {
            edges.push((vertex(gate.left), e4));
            edges.push((vertex(gate.right), e4));
        }
    }
    Ok(ReachInstance { vertices, edges, s: 0, t: vertex(dag.output) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{boolean_alphabet, Annotation};
    use crate::lowering::bp::boolean_poset;
    use crate::lowering::dgap_reach;

    #[test]
    fn constant_one_output() {
        let c = ComparatorCircuit::new(boolean_poset(), boolean_alphabet(), vec![Annotation::Const(1)], vec![], 0, 1)
            .unwrap();
        let r = skewcc_to_dgap(&c, &[]).unwrap();
        assert_eq!(r.edges, vec![(0, 1)]);
        assert!(dgap_reach(&r));
    }

    #[test]
    fn meet_with_literal() {
        let x = Annotation::Input { var: 1, map: vec![0, 1] };
        let c = ComparatorCircuit::new(
            boolean_poset(),
            boolean_alphabet(),
            vec![Annotation::Const(1), x],
            vec![(0, 1)],
            0,
            1,
        )
        .unwrap();
        for v in 0..2 {
            let r = skewcc_to_dgap(&c, &[v]).unwrap();
            assert_eq!(dgap_reach(&r), v == 1);
            assert!(r.outdegree_violations().is_empty());
        }
    }

    #[test]
    fn non_skew_is_rejected() {
        let one = Annotation::Const(1);
        let c = ComparatorCircuit::new(
            boolean_poset(),
            boolean_alphabet(),
            vec![one; 4],
            vec![(0, 1), (2, 3), (0, 2)],
            0,
            1,
        )
        .unwrap();
        assert_eq!(skewcc_to_dgap(&c, &[]).unwrap_err(), LoweringError::NotSkew(2));
    }
}
