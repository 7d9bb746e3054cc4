use std::collections::{BTreeSet, HashSet};

use super::{CircuitError, ComparatorCircuit};
use crate::order::as_lattice;

/// Line values before the first gate and after each gate along one path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub states: Vec<Vec<usize>>,
}

/// Marks a line whose value can no longer influence the output.
const DEAD: u32 = u32::MAX;

impl ComparatorCircuit {
    /// Initial line values for `input`.
    pub fn initial_values(&self, input: &[usize]) -> Result<Vec<usize>, CircuitError> {
        let need = self.arity();
        if input.len() < need {
            return Err(CircuitError::ArityMismatch { need, got: input.len() });
        }
        if let Some(&s) = input.iter().find(|&&s| s >= self.alphabet.len()) {
            return Err(CircuitError::UnknownSymbol(format!("#{s}")));
        }
        Ok(self.lines.iter().map(|a| a.value(input)).collect())
    }

    fn require_lattice(&self) -> Result<(), CircuitError> {
        as_lattice(&self.poset).map(|_| ()).map_err(|(a, b)| {
            CircuitError::NotALattice(self.poset.id(a).to_owned(), self.poset.id(b).to_owned())
        })
    }

    /// Deterministic evaluation over a lattice.
    pub fn evaluate(&self, input: &[usize]) -> Result<usize, CircuitError> {
        self.require_lattice()?;
        let mut v = self.initial_values(input)?;
        for &(i, j) in &self.gates {
            let (a, b) = (v[i], v[j]);
            v[i] = self.poset.meet_set(a, b)[0] as usize;
            v[j] = self.poset.join_set(a, b)[0] as usize;
        }
        Ok(v[self.output])
    }

    /// Deterministic evaluation with every intermediate state.
    pub fn evaluate_trace(&self, input: &[usize]) -> Result<(usize, Trace), CircuitError> {
        self.require_lattice()?;
        let mut v = self.initial_values(input)?;
        let mut states = vec![v.clone()];
        for &(i, j) in &self.gates {
            let (a, b) = (v[i], v[j]);
            v[i] = self.poset.meet_set(a, b)[0] as usize;
            v[j] = self.poset.join_set(a, b)[0] as usize;
            states.push(v.clone());
        }
        Ok((v[self.output], Trace { states }))
    }

    /// Index of the last gate touching each line, if any.
    fn last_use(&self) -> Vec<Option<usize>> {
        let mut last = vec![None; self.lines.len()];
        for (g, &(i, j)) in self.gates.iter().enumerate() {
            last[i] = Some(g);
            last[j] = Some(g);
        }
        last
    }

    /// All values the output line can end with, over every choice of bounds
    /// at every gate.
    ///
    /// States are swept gate by gate as a deduplicated set. Lines that no
    /// later gate reads (and that are not the output) are blanked first,
    /// which merges paths that differ only in irrelevant values.
    pub fn output_set(&self, input: &[usize]) -> Result<BTreeSet<usize>, CircuitError> {
        let init = self.initial_values(input)?;
        let last = self.last_use();
        let live_after = |line: usize, g: Option<usize>| -> bool {
            line == self.output
                || match (last[line], g) {
                    (None, _) => false,
                    (Some(_), None) => true,
                    (Some(l), Some(g)) => l > g,
                }
        };
        let start: Vec<u32> = init
            .iter()
            .enumerate()
            .map(|(l, &v)| if live_after(l, None) { v as u32 } else { DEAD })
            .collect();
        let mut states: HashSet<Vec<u32>> = HashSet::from([start]);
        for (g, &(i, j)) in self.gates.iter().enumerate() {
            let (keep_i, keep_j) = (live_after(i, Some(g)), live_after(j, Some(g)));
            let mut next = HashSet::with_capacity(states.len());
            for s in states {
                let (a, b) = (s[i] as usize, s[j] as usize);
                let lows = self.poset.meet_set(a, b);
                let highs = self.poset.join_set(a, b);
                for &lo in if keep_i { lows } else { &[DEAD][..] } {
                    for &hi in if keep_j { highs } else { &[DEAD][..] } {
                        let mut t = s.clone();
                        t[i] = lo;
                        t[j] = hi;
                        next.insert(t);
                    }
                }
            }
            states = next;
        }
        Ok(states.into_iter().map(|s| s[self.output] as usize).collect())
    }

    /// One path reaching `target` at the output, if any.
    pub fn witness_trace(&self, input: &[usize], target: usize) -> Result<Option<Trace>, CircuitError> {
        let init = self.initial_values(input)?;
        let mut seen: HashSet<(usize, Vec<usize>)> = HashSet::new();
        let mut path = vec![init.clone()];
        if self.search(0, &mut path, target, &mut seen) {
            Ok(Some(Trace { states: path }))
        } else {
            Ok(None)
        }
    }

    fn search(
        &self,
        g: usize,
        path: &mut Vec<Vec<usize>>,
        target: usize,
        seen: &mut HashSet<(usize, Vec<usize>)>,
    ) -> bool {
        let cur = path.last().unwrap().clone();
        if g == self.gates.len() {
            return cur[self.output] == target;
        }
        if !seen.insert((g, cur.clone())) {
            return false;
        }
        let (i, j) = self.gates[g];
        for &lo in self.poset.meet_set(cur[i], cur[j]) {
            for &hi in self.poset.join_set(cur[i], cur[j]) {
                let mut t = cur.clone();
                t[i] = lo as usize;
                t[j] = hi as usize;
                path.push(t);
                if self.search(g + 1, path, target, seen) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }

    /// True when the accepting element is a possible output.
    pub fn accepts(&self, input: &[usize]) -> Result<bool, CircuitError> {
        Ok(self.output_set(input)?.contains(&self.accept))
    }
}
