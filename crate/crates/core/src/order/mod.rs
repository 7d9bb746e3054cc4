//! Finite posets and lattices.

mod birkhoff;
mod dm;
mod embed;
mod json;
pub(crate) mod lattice;
mod poset;

pub use birkhoff::{birkhoff_repr, BirkhoffLabels};
pub use dm::dm_completion;
pub use embed::{
    check_embedding, search_distributive_embedding, DistributiveSearch, Embedding,
};
pub use json::{poset_from_json, poset_to_json, PosetFile};
pub use lattice::{as_lattice, find_m3_n5, Lattice, SublatticeKind, SublatticeWitness};
pub use poset::{make_bounded, BoundedPoset, Poset};


use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("order has a cycle through `{0}` and `{1}`")]
    CycleDetected(String, String),
    #[error("relation is not transitive at `{0}` <= `{1}`")]
    NotTransitive(String, String),
    #[error("poset has no least or no greatest element")]
    NotBounded,
    #[error("declared {which} `{id}` is not a {which} of the order")]
    WrongBound { which: &'static str, id: String },
    #[error("`{0}` and `{1}` have no unique meet and join")]
    NotALattice(String, String),
    #[error("lattice is not distributive")]
    NotDistributive,
    #[error("map is not defined on `{0}`")]
    PartialMap(String),
    #[error("malformed poset file: {0}")]
    Format(String),
}
