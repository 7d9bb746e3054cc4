//! Set partitions of `{1..n}` and the partition lattice.

mod formulas;

pub use formulas::{checkge_formula, checkgeb_formula, dist_formula, fz_formula, indicator_formulas};

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::formula::Formula;
use crate::order::{Lattice, Poset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition lattice of size {n} is outside the supported range 2..={max}")]
    SizeLimit { n: usize, max: usize },
    #[error("vertex {0} is outside 1..={1}")]
    VertexOutOfRange(usize, usize),
    #[error("{0}")]
    PreconditionViolated(String),
    #[error("cannot parse partition `{0}`")]
    Parse(String),
}

/// Default upper limit for materialized partition lattices.
pub const DEFAULT_MAX_N: usize = 6;

/// Reads `LATCC_SIZE_GUARD` as an override of `default`. Raising it is
/// unsafe in the sense that enumerations may stop fitting in memory.
pub fn size_guard(default: usize) -> usize {
    std::env::var("LATCC_SIZE_GUARD")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

/// A partition of `{1..n}` in canonical form: sorted blocks, ordered by
/// their minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    /// `rgs[i]` is the block number of element `i + 1` (restricted growth string).
    rgs: Vec<u8>,
}

impl Partition {
    /// Canonicalizes any block labelling.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut rename: HashMap<usize, u8> = HashMap::new();
        let rgs = labels
            .iter()
            .map(|l| {
                let next = rename.len() as u8;
                *rename.entry(*l).or_insert(next)
            })
            .collect();
        Partition { n: labels.len(), rgs }
    }

    pub fn bottom(n: usize) -> Self {
        Partition { n, rgs: (0..n as u8).collect() }
    }

    pub fn top(n: usize) -> Self {
        Partition { n, rgs: vec![0; n] }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self, PartitionError> {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &v in block {
                if v == 0 || v > n {
                    return Err(PartitionError::VertexOutOfRange(v, n));
                }
                if labels[v - 1] != usize::MAX {
                    return Err(PartitionError::Parse(format!("{v} appears twice")));
                }
                labels[v - 1] = b;
            }
        }
        if let Some(v) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(PartitionError::Parse(format!("{} is in no block", v + 1)));
        }
        Ok(Self::from_labels(&labels))
    }

    /// Connected components of the graph on `{1..n}` with the given edges.
    pub fn from_graph(n: usize, edges: &[(usize, usize)]) -> Result<Self, PartitionError> {
        let mut uf = UnionFind::new(n);
        for &(a, b) in edges {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(PartitionError::VertexOutOfRange(v, n));
                }
            }
            uf.union(a - 1, b - 1);
        }
        Ok(Self::from_labels(&(0..n).map(|v| uf.find(v)).collect::<Vec<_>>()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rgs(&self) -> &[u8] {
        &self.rgs
    }

    pub fn num_blocks(&self) -> usize {
        self.rgs.iter().map(|&b| b as usize + 1).max().unwrap_or(0)
    }

    /// Blocks as sorted lists of 1-based elements, ordered by minimum.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b as usize].push(i + 1);
        }
        blocks
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.rgs[i - 1] == self.rgs[j - 1]
    }

    /// `self <= other` in the refinement order.
    pub fn refines(&self, other: &Partition) -> bool {
        let mut image = vec![u8::MAX; self.num_blocks()];
        for (a, b) in self.rgs.iter().zip(&other.rgs) {
            let slot = &mut image[*a as usize];
            if *slot == u8::MAX {
                *slot = *b;
            } else if *slot != *b {
                return false;
            }
        }
        true
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        let labels: Vec<usize> = self
            .rgs
            .iter()
            .zip(&other.rgs)
            .map(|(a, b)| *a as usize * 256 + *b as usize)
            .collect();
        Self::from_labels(&labels)
    }

    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.n);
        for p in [self, other] {
            let mut first = vec![usize::MAX; p.num_blocks()];
            for (i, &b) in p.rgs.iter().enumerate() {
                let slot = &mut first[b as usize];
                if *slot == usize::MAX {
                    *slot = i;
                } else {
                    uf.union(*slot, i);
                }
            }
        }
        Self::from_labels(&(0..self.n).map(|v| uf.find(v)).collect::<Vec<_>>())
    }

    /// All pairs `(i, j)`, `i < j`, in a common block.
    pub fn relation_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                if self.same_block(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn parse(text: &str, n: usize) -> Result<Self, PartitionError> {
        let err = || PartitionError::Parse(text.to_owned());
        let blocks: Vec<Vec<usize>> = if text.contains('{') {
            text.split('/')
                .map(|b| {
                    let inner = b.trim().strip_prefix('{').and_then(|s| s.strip_suffix('}')).ok_or_else(err)?;
                    inner.split(',').map(|v| v.trim().parse().map_err(|_| err())).collect()
                })
                .collect::<Result<_, _>>()?
        } else {
            text.split('/')
                .map(|b| b.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(err)).collect())
                .collect::<Result<_, _>>()?
        };
        Self::from_blocks(n, &blocks)
    }
}

impl fmt::Display for Partition {
    /// `13/24` when `n <= 9`, otherwise `{1,3}/{2,4}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self.blocks();
        let text: Vec<String> = blocks
            .iter()
            .map(|b| {
                if self.n <= 9 {
                    b.iter().map(|v| v.to_string()).collect::<String>()
                } else {
                    format!("{{{}}}", b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
                }
            })
            .collect();
        write!(f, "{}", text.join("/"))
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}

/// All restricted growth strings of length `n`, lexicographically.
fn all_rgs(n: usize) -> Vec<Vec<u8>> {
    fn go(prefix: &mut Vec<u8>, max: u8, n: usize, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=max + 1 {
            prefix.push(b);
            go(prefix, max.max(b), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        let mut prefix = vec![0u8];
        go(&mut prefix, 0, n, &mut out);
    }
    out
}

/// The lattice `Pi_n` with elements ordered by rank (finest first), then by
/// restricted growth string. Element ids are the textual partition forms.
pub struct PartitionLattice {
    n: usize,
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    lattice: Lattice,
    indicators: OnceLock<Vec<Formula>>,
}

impl fmt::Debug for PartitionLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartitionLattice(n={}, {} elements)", self.n, self.parts.len())
    }
}

pub fn make_partition_lattice(n: usize) -> Result<PartitionLattice, PartitionError> {
    let max = size_guard(DEFAULT_MAX_N);
    if n < 2 || n > max {
        return Err(PartitionError::SizeLimit { n, max });
    }
    let mut parts: Vec<Partition> = all_rgs(n).into_iter().map(|rgs| Partition { n, rgs }).collect();
    parts.sort_by_key(|p| (n - p.num_blocks(), p.rgs.clone()));
    let index: HashMap<Partition, usize> = parts.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let ids = parts.iter().map(|p| p.to_string()).collect();
    let order = Poset::from_leq_fn(ids, |a, b| parts[a].refines(&parts[b])).expect("refinement is a partial order");
    let m = parts.len();
    let mut meet = vec![0u32; m * m];
    let mut join = vec![0u32; m * m];
    for a in 0..m {
        for b in a..m {
            let lo = index[&parts[a].meet(&parts[b])] as u32;
            let hi = index[&parts[a].join(&parts[b])] as u32;
            meet[a * m + b] = lo;
            meet[b * m + a] = lo;
            join[a * m + b] = hi;
            join[b * m + a] = hi;
        }
    }
    let lattice = Lattice::from_tables(order, 0, m - 1, meet, join);
    Ok(PartitionLattice { n, parts, index, lattice, indicators: OnceLock::new() })
}

impl PartitionLattice {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn partition(&self, e: usize) -> &Partition {
        &self.parts[e]
    }

    pub fn element(&self, p: &Partition) -> usize {
        self.index[p]
    }

    pub fn parse(&self, text: &str) -> Result<usize, PartitionError> {
        Ok(self.element(&Partition::parse(text, self.n)?))
    }

    /// Element whose graph has the single edge `{i, j}`.
    pub fn edge(&self, i: usize, j: usize) -> usize {
        self.element(&Partition::from_graph(self.n, &[(i, j)]).expect("edge in range"))
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.parts.len() - 1
    }

    /// Per-element unary formulas equal to the `x >= a` indicator, chosen
    /// for small depth. Computed once.
    pub fn indicators(&self) -> &[Formula] {
        self.indicators.get_or_init(|| indicator_formulas(self))
    }
}

/// The n-th Bell number by the triangle recurrence.
pub fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &v in &row {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        row = next;
    }
    row[0]
}
