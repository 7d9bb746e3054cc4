//! Comparator circuits over finite bounded posets and lattices.
//!
//! A comparator gate `(i, j)` replaces line `i` by the meet and line `j` by
//! the join of the two current values. Over a lattice this is deterministic;
//! over a general bounded poset the gate picks any maximal lower bound and any
//! minimal upper bound, which makes evaluation nondeterministic.
//!
//! The crate is split into:
//! - [`order`]: posets, lattices, Dedekind-MacNeille completion, Birkhoff labels.
//! - [`partition`]: partition lattices and indicator formulas over them.
//! - [`circuit`]: the circuit model and its evaluators.
//! - [`formula`]: lattice formulas and depth reduction.
//! - [`lowering`]: transformations between circuit models.
//! - [`assets`]: bundled copies of the fixed posets and ledgers.
//! - [`gen`]: random instance generators used by tests and the CLI.

pub mod assets;
pub mod circuit;
pub mod formula;
pub mod gen;
pub mod lowering;
pub mod order;
pub mod partition;
