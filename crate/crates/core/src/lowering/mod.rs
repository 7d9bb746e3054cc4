//! Transformations between circuit models: from Boolean circuits, branching
//! programs and universal instances into comparator circuits, and from
//! comparator circuits back into Boolean circuits and reachability.

pub mod boolean;
pub mod bp;
mod builder;
pub mod csat;
pub mod dgap;
pub mod distributive;
pub mod growing;
pub mod ledger;
pub mod mcvp;
pub mod normalize;
pub mod posets;
pub mod proofpath;
pub mod universal;

pub use boolean::{all_assignments, dgap_reach, BoolGate, BooleanCircuit, BpState, BranchingProgram, ReachInstance};
pub use bp::{boolean_poset, bp_to_skewcc};
pub use csat::csat_to_cc;
pub use dgap::skewcc_to_dgap;
pub use distributive::{distributive_to_boolean, BooleanSimulation};
pub use growing::{growing_compile, growing_lattice, growing_ledger, growing_level_ledger, growing_poset, GrowingCompilation};
pub use ledger::{verify_ledger, IdentityLedger, LedgerEntry, LedgerFailure, LedgerOp};
pub use mcvp::{compile_monotone, mcvp_to_cc, shared_p_lattice, PConstants};
pub use normalize::{find_p_constants, normalize_acceptor};
pub use posets::{build_np_poset, build_p_poset, np_poset_ledger, p_lattice, p_poset_ledger};
pub use proofpath::{proofpath_check_eq, proofpath_check_geq, proofpath_check_geq_single_path};
pub use universal::{build_universal, encode_ccvp, gate_slots, universal_alphabet, universal_word, validate_ccvp, CcvpInstance};

use thiserror::Error;

use crate::circuit::CircuitError;
use crate::order::OrderError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoweringError {
    #[error("gate {0} is not monotone")]
    NonMonotoneGate(usize),
    #[error("gate {0} negates an internal wire")]
    InternalNegation(usize),
    #[error("circuit is not layered: {0}")]
    NotLayered(String),
    #[error("AND gate {0} has no fresh operand")]
    NotSkew(usize),
    #[error("bad dimensions: {0}")]
    BadDimensions(String),
    #[error("malformed encoding: {0}")]
    MalformedString(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("no ledger-preserving map into the target lattice: {0}")]
    EmbeddingUnavailable(String),
    #[error("ledger does not hold: {0}")]
    LedgerUnsatisfied(String),
    #[error("size limit: {0}")]
    SizeLimit(String),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Order(#[from] OrderError),
}
