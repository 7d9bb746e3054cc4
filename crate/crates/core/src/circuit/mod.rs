//! Comparator circuits over bounded posets.
//!
//! A circuit is a list of lines, each annotated with a constant or an input
//! variable, and an ordered list of gates. Gate `(i, j)` overwrites line `i`
//! with a maximal lower bound and line `j` with a minimal upper bound of the
//! two previous values. The output is the final value of the output line.

mod dag;
mod eval;
mod json;
mod skew;

pub use dag::{from_dag, to_dag, CircuitDag, DagGate, Wire};
pub use eval::Trace;
pub use json::{circuit_from_json, circuit_to_json, CircuitFile, LineFile, PosetRef};
pub use skew::{first_non_skew, is_skew, used_and_gates};

use std::sync::Arc;

use thiserror::Error;

use crate::order::{BoundedPoset, OrderError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("carrier is not a lattice: `{0}` and `{1}` have no unique meet and join")]
    NotALattice(String, String),
    #[error("input word has {got} symbols but the circuit reads variable {need}")]
    ArityMismatch { need: usize, got: usize },
    #[error("gate {gate} refers to line {line}, but there are {lines} lines")]
    GateOutOfRange { gate: usize, line: usize, lines: usize },
    #[error("gate {0} compares a line with itself")]
    SelfGate(usize),
    #[error("output line {0} does not exist")]
    BadOutput(usize),
    #[error("line {line}: {reason}")]
    BadAnnotation { line: usize, reason: String },
    #[error("unknown input symbol `{0}`")]
    UnknownSymbol(String),
    #[error("circuit DAG has a cycle through gate {0}")]
    CyclicDag(usize),
    #[error("wire {0} feeds more than one gate")]
    FanoutViolation(String),
    #[error("malformed circuit: {0}")]
    Format(String),
    #[error(transparent)]
    Order(#[from] OrderError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Annotation {
    Const(usize),
    /// Input variable `var` (1-based); `map[s]` is the element for symbol `s`.
    Input { var: usize, map: Vec<usize> },
}

impl Annotation {
    pub fn value(&self, input: &[usize]) -> usize {
        match self {
            Annotation::Const(e) => *e,
            Annotation::Input { var, map } => map[input[var - 1]],
        }
    }
}

#[derive(Clone)]
pub struct ComparatorCircuit {
    poset: Arc<BoundedPoset>,
    alphabet: Vec<String>,
    lines: Vec<Annotation>,
    gates: Vec<(usize, usize)>,
    output: usize,
    accept: usize,
}

impl std::fmt::Debug for ComparatorCircuit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ComparatorCircuit")
            .field("lines", &self.lines)
            .field("gates", &self.gates)
            .field("output", &self.output)
            .field("accept", &self.poset.id(self.accept))
            .finish()
    }
}

pub fn boolean_alphabet() -> Vec<String> {
    vec!["0".to_owned(), "1".to_owned()]
}

impl ComparatorCircuit {
    pub fn new(
        poset: Arc<BoundedPoset>,
        alphabet: Vec<String>,
        lines: Vec<Annotation>,
        gates: Vec<(usize, usize)>,
        output: usize,
        accept: usize,
    ) -> Result<Self, CircuitError> {
        let n = poset.len();
        for (line, a) in lines.iter().enumerate() {
            let bad = |reason: String| CircuitError::BadAnnotation { line, reason };
            match a {
                Annotation::Const(e) if *e >= n => return Err(bad(format!("constant #{e} is not an element"))),
                Annotation::Input { var, map } => {
                    if *var == 0 {
                        return Err(bad("input variables are 1-based".into()));
                    }
                    if map.len() != alphabet.len() {
                        return Err(bad(format!("map covers {} of {} symbols", map.len(), alphabet.len())));
                    }
                    if map.iter().any(|&e| e >= n) {
                        return Err(bad("map targets a non-element".into()));
                    }
                }
                _ => {}
            }
        }
        for (gate, &(i, j)) in gates.iter().enumerate() {
            for line in [i, j] {
                if line >= lines.len() {
                    return Err(CircuitError::GateOutOfRange { gate, line, lines: lines.len() });
                }
            }
            if i == j {
                return Err(CircuitError::SelfGate(gate));
            }
        }
        if output >= lines.len() {
            return Err(CircuitError::BadOutput(output));
        }
        if accept >= n {
            return Err(CircuitError::Format(format!("accept #{accept} is not an element")));
        }
        Ok(ComparatorCircuit { poset, alphabet, lines, gates, output, accept })
    }

    pub fn poset(&self) -> &Arc<BoundedPoset> {
        &self.poset
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn lines(&self) -> &[Annotation] {
        &self.lines
    }

    pub fn gates(&self) -> &[(usize, usize)] {
        &self.gates
    }

    pub fn output(&self) -> usize {
        self.output
    }

    pub fn accept(&self) -> usize {
        self.accept
    }

    pub fn with_accept(mut self, accept: usize) -> Self {
        assert!(accept < self.poset.len());
        self.accept = accept;
        self
    }

    pub fn with_output(mut self, output: usize) -> Result<Self, CircuitError> {
        if output >= self.lines.len() {
            return Err(CircuitError::BadOutput(output));
        }
        self.output = output;
        Ok(self)
    }

    /// Number of input symbols read, i.e. the largest variable index.
    pub fn arity(&self) -> usize {
        self.lines
            .iter()
            .map(|a| match a {
                Annotation::Input { var, .. } => *var,
                Annotation::Const(_) => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// Swaps the output line with line 0 so the output is the first line.
    pub fn move_output_to_front(&mut self) {
        let o = self.output;
        if o == 0 {
            return;
        }
        self.lines.swap(0, o);
        let swap = |l: usize| if l == 0 { o } else if l == o { 0 } else { l };
        for g in &mut self.gates {
            *g = (swap(g.0), swap(g.1));
        }
        self.output = 0;
    }

    /// Parses an input word. Single-character alphabets accept a plain
    /// string (`101`); otherwise symbols are separated by commas or spaces.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>, CircuitError> {
        parse_word(&self.alphabet, text)
    }

    pub fn symbol(&self, s: &str) -> Result<usize, CircuitError> {
        self.alphabet
            .iter()
            .position(|a| a == s)
            .ok_or_else(|| CircuitError::UnknownSymbol(s.to_owned()))
    }
}

pub fn parse_word(alphabet: &[String], text: &str) -> Result<Vec<usize>, CircuitError> {
    let text = text.trim();
    let single = alphabet.iter().all(|s| s.chars().count() == 1);
    let tokens: Vec<String> = if single && !text.contains([',', ' ']) {
        text.chars().map(|c| c.to_string()).collect()
    } else {
        text.split([',', ' ']).filter(|t| !t.is_empty()).map(str::to_owned).collect()
    };
    tokens
        .iter()
        .map(|t| {
            alphabet
                .iter()
                .position(|a| a == t)
                .ok_or_else(|| CircuitError::UnknownSymbol(t.clone()))
        })
        .collect()
}

/// All words of length `len` over `symbols` symbols, in lexicographic order.
pub fn all_words(symbols: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..symbols).map(move |s| {
                    let mut w = w.clone();
                    w.push(s);
                    w
                })
            })
            .collect();
    }
    out
}
