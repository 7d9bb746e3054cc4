//! Source and target models of the transformations: Boolean circuits,
//! layered branching programs and reachability instances.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::LoweringError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoolGate {
    /// Variable `x_i`, 1-based.
    Input(usize),
    /// Negated variable.
    NegInput(usize),
    Const(bool),
    And(usize, usize),
    Or(usize, usize),
    Not(usize),
}

impl BoolGate {
    pub fn operands(&self) -> Vec<usize> {
        match *self {
            BoolGate::And(a, b) | BoolGate::Or(a, b) => vec![a, b],
            BoolGate::Not(a) => vec![a],
            _ => Vec::new(),
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, BoolGate::Input(_) | BoolGate::NegInput(_) | BoolGate::Const(_))
    }
}

/// A Boolean circuit in topological order: operands precede their gate.
/// Fan-out is unrestricted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BooleanCircuit {
    pub gates: Vec<BoolGate>,
    pub output: usize,
}

impl BooleanCircuit {
    pub fn new(gates: Vec<BoolGate>, output: usize) -> Result<Self, LoweringError> {
        let c = BooleanCircuit { gates, output };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), LoweringError> {
        if self.output >= self.gates.len() {
            return Err(LoweringError::Malformed(format!("output gate {} does not exist", self.output)));
        }
        for (g, gate) in self.gates.iter().enumerate() {
            if gate.operands().iter().any(|&o| o >= g) {
                return Err(LoweringError::Malformed(format!("gate {g} reads a later gate")));
            }
            if let BoolGate::Input(0) | BoolGate::NegInput(0) = gate {
                return Err(LoweringError::Malformed("variables are 1-based".into()));
            }
        }
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.gates
            .iter()
            .map(|g| match g {
                BoolGate::Input(v) | BoolGate::NegInput(v) => *v,
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// All gate values for `bits` (`bits[i]` is `x_{i+1}`).
    pub fn eval_all(&self, bits: &[bool]) -> Vec<bool> {
        let mut v = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let x = match *gate {
                BoolGate::Input(i) => bits[i - 1],
                BoolGate::NegInput(i) => !bits[i - 1],
                BoolGate::Const(b) => b,
                BoolGate::And(a, b) => v[a] && v[b],
                BoolGate::Or(a, b) => v[a] || v[b],
                BoolGate::Not(a) => !v[a],
            };
            v.push(x);
        }
        v
    }

    pub fn eval(&self, bits: &[bool]) -> bool {
        self.eval_all(bits)[self.output]
    }

    /// Number of reads of each gate, counting the output as one read.
    pub fn fanout(&self) -> Vec<usize> {
        let mut f = vec![0; self.gates.len()];
        for g in &self.gates {
            for o in g.operands() {
                f[o] += 1;
            }
        }
        f[self.output] += 1;
        f
    }

    pub fn is_monotone(&self) -> bool {
        self.gates.iter().all(|g| !matches!(g, BoolGate::NegInput(_) | BoolGate::Not(_)))
    }

    /// Level of each gate: literals 0, others one more than their deepest operand.
    pub fn levels(&self) -> Vec<usize> {
        let mut lv = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let l = g.operands().iter().map(|&o| lv[o] + 1).max().unwrap_or(0);
            lv.push(l);
        }
        lv
    }

    /// Layered: every operand that is a gate (not a literal) sits exactly
    /// one level below the gate reading it.
    pub fn is_layered(&self) -> bool {
        let lv = self.levels();
        self.gates.iter().enumerate().all(|(g, gate)| {
            gate.operands().iter().all(|&o| self.gates[o].is_literal() || lv[o] + 1 == lv[g])
        })
    }

    /// De Morgan dual: AND and OR swapped, literals and constants negated.
    /// The dual outputs 1 exactly when the original outputs 0.
    pub fn dual(&self) -> BooleanCircuit {
        let gates = self
            .gates
            .iter()
            .map(|g| match *g {
                BoolGate::Input(i) => BoolGate::NegInput(i),
                BoolGate::NegInput(i) => BoolGate::Input(i),
                BoolGate::Const(b) => BoolGate::Const(!b),
                BoolGate::And(a, b) => BoolGate::Or(a, b),
                BoolGate::Or(a, b) => BoolGate::And(a, b),
                BoolGate::Not(a) => BoolGate::Not(a),
            })
            .collect();
        BooleanCircuit { gates, output: self.output }
    }

    pub fn from_json(text: &str) -> Result<Self, LoweringError> {
        let c: BooleanCircuit = serde_json::from_str(text).map_err(|e| LoweringError::Malformed(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// All assignments of `n` variables, `x_1` most significant.
pub fn all_assignments(n: usize) -> Vec<Vec<bool>> {
    (0..1u64 << n)
        .map(|m| (0..n).map(|i| m >> (n - 1 - i) & 1 == 1).collect())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpState {
    /// Tested variable (1-based); `None` for a final state.
    pub var: Option<usize>,
    #[serde(default)]
    pub on0: usize,
    #[serde(default)]
    pub on1: usize,
}

/// A layered deterministic branching program. `layers` lists state indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingProgram {
    pub states: Vec<BpState>,
    pub layers: Vec<Vec<usize>>,
    pub start: usize,
    pub accept: usize,
}

impl BranchingProgram {
    /// Checks that every state sits in exactly one layer and that every
    /// transition goes to the next layer.
    pub fn validate(&self) -> Result<(), LoweringError> {
        let mut layer_of = vec![usize::MAX; self.states.len()];
        for (t, layer) in self.layers.iter().enumerate() {
            for &s in layer {
                if s >= self.states.len() || layer_of[s] != usize::MAX {
                    return Err(LoweringError::NotLayered(format!("state {s} is misplaced")));
                }
                layer_of[s] = t;
            }
        }
        if let Some(s) = layer_of.iter().position(|&l| l == usize::MAX) {
            return Err(LoweringError::NotLayered(format!("state {s} is in no layer")));
        }
        for (s, st) in self.states.iter().enumerate() {
            if st.var.is_some() {
                for next in [st.on0, st.on1] {
                    if next >= self.states.len() || layer_of[next] != layer_of[s] + 1 {
                        return Err(LoweringError::NotLayered(format!(
                            "state {s} moves to {next} outside the next layer"
                        )));
                    }
                }
            }
        }
        if self.start >= self.states.len() || self.accept >= self.states.len() {
            return Err(LoweringError::Malformed("start or accept state does not exist".into()));
        }
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.states.iter().filter_map(|s| s.var).max().unwrap_or(0)
    }

    pub fn eval(&self, bits: &[bool]) -> bool {
        let mut s = self.start;
        while let Some(v) = self.states[s].var {
            s = if bits[v - 1] { self.states[s].on1 } else { self.states[s].on0 };
        }
        s == self.accept
    }

    pub fn from_json(text: &str) -> Result<Self, LoweringError> {
        let bp: BranchingProgram = serde_json::from_str(text).map_err(|e| LoweringError::Malformed(e.to_string()))?;
        bp.validate()?;
        Ok(bp)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// Directed reachability instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachInstance {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub s: usize,
    pub t: usize,
}

impl ReachInstance {
    /// Vertices other than `s` with more than one outgoing edge.
    pub fn outdegree_violations(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertices.len()];
        for &(u, _) in &self.edges {
            deg[u] += 1;
        }
        (0..self.vertices.len()).filter(|&v| v != self.s && deg[v] > 1).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, LoweringError> {
        let r: ReachInstance = serde_json::from_str(text).map_err(|e| LoweringError::Malformed(e.to_string()))?;
        let n = r.vertices.len();
        if r.s >= n || r.t >= n || r.edges.iter().any(|&(u, v)| u >= n || v >= n) {
            return Err(LoweringError::Malformed("vertex index out of range".into()));
        }
        Ok(r)
    }
}

/// Breadth-first search from `s` to `t`.
pub fn dgap_reach(r: &ReachInstance) -> bool {
    let mut adj = vec![Vec::new(); r.vertices.len()];
    for &(u, v) in &r.edges {
        adj[u].push(v);
    }
    let mut seen = vec![false; r.vertices.len()];
    let mut queue = VecDeque::from([r.s]);
    seen[r.s] = true;
    while let Some(u) = queue.pop_front() {
        if u == r.t {
            return true;
        }
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_dual() {
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
        let d = c.dual();
        for bits in all_assignments(3) {
            assert_eq!(c.eval(&bits), bits[0] && (bits[1] || bits[2]));
            assert_eq!(d.eval(&bits), !c.eval(&bits));
        }
        assert!(c.is_layered());
        assert_eq!(c.fanout(), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn forward_reads_are_rejected() {
        assert!(BooleanCircuit::new(vec![BoolGate::And(0, 1), BoolGate::Input(1)], 0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = BooleanCircuit::new(vec![BoolGate::Input(1), BoolGate::Const(true), BoolGate::Or(0, 1)], 2).unwrap();
        let text = c.to_json();
        assert_eq!(text, r#"{"gates":[{"input":1},{"const":true},{"or":[0,1]}],"output":2}"#);
        assert_eq!(BooleanCircuit::from_json(&text).unwrap(), c);
    }

    #[test]
    fn unlayered_shape() {
        // (x1 | x2) feeds a level-3 gate directly.
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
        assert!(!c.is_layered());
    }

    #[test]
    fn bp_layering() {
        let bp = BranchingProgram {
            states: vec![
                BpState { var: Some(1), on0: 1, on1: 2 },
                BpState { var: None, on0: 0, on1: 0 },
                BpState { var: None, on0: 0, on1: 0 },
            ],
            layers: vec![vec![0], vec![1, 2]],
            start: 0,
            accept: 2,
        };
        bp.validate().unwrap();
        assert!(bp.eval(&[true]) && !bp.eval(&[false]));
        let mut bad = bp.clone();
        bad.layers = vec![vec![0, 1], vec![2]];
        assert!(matches!(bad.validate(), Err(LoweringError::NotLayered(_))));
    }

    #[test]
    fn reachability() {
        let r = ReachInstance { vertices: vec!["s".into(), "a".into(), "t".into()], edges: vec![(0, 1), (1, 2)], s: 0, t: 2 };
        assert!(dgap_reach(&r));
        assert!(r.outdegree_violations().is_empty());
        let r = ReachInstance { edges: vec![(0, 1)], ..r };
        assert!(!dgap_reach(&r));
    }
}
