use std::sync::Arc;

use crate::circuit::{Annotation, ComparatorCircuit};
use crate::order::BoundedPoset;

/// Accumulates lines and gates of a circuit under construction.
pub(crate) struct Builder {
    pub poset: Arc<BoundedPoset>,
    pub lines: Vec<Annotation>,
    pub gates: Vec<(usize, usize)>,
}

impl Builder {
    pub fn new(poset: Arc<BoundedPoset>) -> Self {
        Builder { poset, lines: Vec::new(), gates: Vec::new() }
    }

    pub fn constant(&mut self, e: usize) -> usize {
        self.lines.push(Annotation::Const(e));
        self.lines.len() - 1
    }

    pub fn input(&mut self, var: usize, map: Vec<usize>) -> usize {
        self.lines.push(Annotation::Input { var, map });
        self.lines.len() - 1
    }

    /// Gate `(i, j)`: meet onto `i`, join onto `j`.
    pub fn gate(&mut self, i: usize, j: usize) {
        self.gates.push((i, j));
    }

    /// Builds the circuit with `output` moved to line 0.
    pub fn finish(self, alphabet: Vec<String>, output: usize, accept: usize) -> ComparatorCircuit {
        let mut c = ComparatorCircuit::new(self.poset, alphabet, self.lines, self.gates, output, accept)
            .expect("builder emits well-formed circuits");
        c.move_output_to_front();
        c
    }
}
