//! Bundled copies of the fixed posets and their identity ledgers.
//!
//! Regenerate with `LATCC_BLESS=1 cargo test -p latcc --test assets`.

pub const P_POSET_JSON: &str = include_str!("../assets/p_poset.json");
pub const NP_POSET_JSON: &str = include_str!("../assets/np_poset.json");
pub const P_LEDGER: &str = include_str!("../assets/p_ledger.txt");
pub const NP_LEDGER: &str = include_str!("../assets/np_ledger.txt");
