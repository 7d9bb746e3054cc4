use fixedbitset::FixedBitSet;

use super::lattice::Lattice;
use super::OrderError;

/// Set labels of a distributive lattice: each element maps to the set of
/// join-irreducibles below it. Bit `k` of a label refers to
/// `irreducibles[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirkhoffLabels {
    pub irreducibles: Vec<usize>,
    pub labels: Vec<FixedBitSet>,
}

impl BirkhoffLabels {
    pub fn universe_size(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn label(&self, e: usize) -> &FixedBitSet {
        &self.labels[e]
    }

    /// Label as a 0/1 vector of length `universe_size`.
    pub fn vector(&self, e: usize) -> Vec<bool> {
        (0..self.universe_size()).map(|k| self.labels[e].contains(k)).collect()
    }

    /// Inverse lookup of a label.
    pub fn element_of(&self, set: &FixedBitSet) -> Option<usize> {
        self.labels.iter().position(|l| l == set)
    }
}

pub fn birkhoff_repr(lattice: &Lattice) -> Result<BirkhoffLabels, OrderError> {
    if !lattice.is_distributive() {
        return Err(OrderError::NotDistributive);
    }
    let irreducibles = lattice.join_irreducibles();
    let k = irreducibles.len();
    let labels = (0..lattice.len())
        .map(|e| {
            let mut set = FixedBitSet::with_capacity(k);
            for (bit, &j) in irreducibles.iter().enumerate() {
                if lattice.leq(j, e) {
                    set.insert(bit);
                }
            }
            set
        })
        .collect();
    Ok(BirkhoffLabels { irreducibles, labels })
}
