//! The fixed posets used to simulate monotone circuits and nondeterministic
//! choice, together with the identities the constructions rely on.

use std::sync::Arc;

use super::ledger::{IdentityLedger, LedgerEntry};
use crate::order::{dm_completion, BoundedPoset, Lattice, Poset};

/// Cover pairs of a 23-element lattice. The four `_`-prefixed points are
/// not named by any identity and are dropped from the P-poset.
const P_LATTICE_COVERS: &[(&str, &str)] = &[
    ("0", "0o"),
    ("1", "1o"),
    ("bot", "p"),
    ("bot", "0''"),
    ("bot", "0'o"),
    ("bot", "z"),
    ("p", "0o"),
    ("0", "_w"),
    ("0", "_j"),
    ("0''", "0"),
    ("0''", "1''"),
    ("0'o", "_j"),
    ("0'o", "1'o"),
    ("z", "0'oo"),
    ("1''", "_w"),
    ("1''", "x"),
    ("_j", "_v"),
    ("_j", "0'oo"),
    ("_w", "1"),
    ("_w", "_v"),
    ("x", "0'"),
    ("_v", "0'"),
    ("_v", "_h"),
    ("1", "_h"),
    ("1", "w"),
    ("0'", "1'"),
    ("1'o", "_h"),
    ("1'o", "y"),
    ("0o", "1o"),
    ("_h", "1'"),
    ("_h", "1'oo"),
    ("0'oo", "1'oo"),
    ("1o", "top"),
    ("w", "top"),
    ("1'", "top"),
    ("y", "top"),
    ("1'oo", "top"),
];

const P_ELEMENTS: &[&str] = &[
    "bot", "p", "0''", "0'o", "z", "0", "1''", "x", "1", "0'", "1'o", "0o", "0'oo", "1o", "w", "1'", "y", "1'oo", "top",
];

/// The P-ledger: `0 <= 1`, `0 v 1 = 1` and, for `v` in `{0, 1}`,
/// `v v x = v'`, `v ^ x = v''`, `v' ^ y = v'o`, `v'o v z = v'oo`,
/// `v'oo ^ w = v`, `v'' v p = vo`, `vo ^ w = v`.
pub fn p_poset_ledger() -> IdentityLedger {
    let mut entries = vec![LedgerEntry::leq("0", "1"), LedgerEntry::join("0", "1", "1")];
    for v in ["0", "1"] {
        let (v1, v2) = (format!("{v}'"), format!("{v}''"));
        let (v1o, v1oo, vo) = (format!("{v}'o"), format!("{v}'oo"), format!("{v}o"));
        entries.push(LedgerEntry::join(v, "x", &v1));
        entries.push(LedgerEntry::meet(v, "x", &v2));
        entries.push(LedgerEntry::meet(&v1, "y", &v1o));
        entries.push(LedgerEntry::join(&v1o, "z", &v1oo));
        entries.push(LedgerEntry::meet(&v1oo, "w", v));
        entries.push(LedgerEntry::join(&v2, "p", &vo));
        entries.push(LedgerEntry::meet(&vo, "w", v));
    }
    IdentityLedger { entries }
}

/// The 19-element P-poset.
pub fn build_p_poset() -> BoundedPoset {
    let mut names: Vec<&str> = P_ELEMENTS.to_vec();
    names.extend(["_j", "_w", "_v", "_h"]);
    let full = Poset::new(&names, P_LATTICE_COVERS).expect("cover list is acyclic");
    let keep: Vec<usize> = (0..P_ELEMENTS.len()).collect();
    BoundedPoset::try_new(full.restrict(&keep)).expect("bot and top are kept")
}

/// Dedekind-MacNeille completion of the P-poset: a 23-element lattice.
pub fn p_lattice() -> Lattice {
    dm_completion(build_p_poset().poset()).0
}

/// Elements of the nondeterministic variable gadget: `Var`, `n` and the
/// convert (`l`), restore (`r`, `cn`) and complement (`lb`, `nb`) families.
const NP_ELEMENTS: &[&str] = &[
    "Var", "n", "n0", "n1", "n0'", "n1'", "n0''", "n1''", "l", "l'", "l''", "r", "r'", "r''", "cn0'", "cn1'", "ccn0'",
    "ccn1'", "cccn0'", "cccn1'", "nb0", "nb1", "nb0'", "nb1'", "lb", "lb'", "lb''",
];

const NP_COVERS: &[(&str, &str)] = &[
    ("cn0'", "ccn0'"),
    ("r'", "ccn0'"),
    ("cccn0'", "ccn0'"),
    ("cccn0'", "r''"),
    ("cccn1'", "r''"),
    ("cn0'", "n0"),
    ("r'", "ccn1'"),
    ("cn1'", "l"),
    ("cn1'", "ccn1'"),
    ("cn1'", "n1"),
    ("cccn1'", "ccn1'"),
    ("cccn1'", "n1"),
    ("cccn0'", "n0"),
    ("n0", "n0'"),
    ("r", "n0"),
    ("n", "n0"),
    ("Var", "n0"),
    ("n0", "nb0"),
    ("n0''", "n0'"),
    ("l", "n0'"),
    ("nb0'", "nb0"),
    ("nb0'", "lb'"),
    ("1", "nb0'"),
    ("lb", "nb0"),
    ("nb1'", "lb'"),
    ("nb1'", "nb1"),
    ("0", "nb1'"),
    ("1", "lb''"),
    ("l''", "0"),
    ("n1''", "l'"),
    ("n0''", "0"),
    ("r", "n1"),
    ("n1''", "n1'"),
    ("n1''", "1"),
    ("n1", "n1'"),
    ("Var", "n1"),
    ("n", "n1"),
    ("n0''", "l'"),
    ("cn0'", "l"),
    ("l", "n1'"),
    ("n1", "nb1"),
    ("lb", "nb1"),
];

/// The NP-ledger: the P-ledger, `Var v n = {n0,n1}`, and for `b` in `{0, 1}`
/// the convert, restore and complement chains of the variable gadget.
pub fn np_poset_ledger() -> IdentityLedger {
    let mut ledger = p_poset_ledger();
    ledger.entries.push(LedgerEntry {
        op: super::ledger::LedgerOp::Join,
        a: "Var".into(),
        b: "n".into(),
        result: vec!["n0".into(), "n1".into()],
    });
    for b in ["0", "1"] {
        let nb = format!("n{b}");
        let (nb1, nb2) = (format!("n{b}'"), format!("n{b}''"));
        let (cn, ccn, cccn) = (format!("cn{b}'"), format!("ccn{b}'"), format!("cccn{b}'"));
        let (bar, bar1) = (format!("nb{b}"), format!("nb{b}'"));
        let e = &mut ledger.entries;
        e.push(LedgerEntry::join("l", &nb, &nb1));
        e.push(LedgerEntry::meet("l'", &nb1, &nb2));
        e.push(LedgerEntry::join("l''", &nb2, b));
        e.push(LedgerEntry::meet("l", &nb, &cn));
        e.push(LedgerEntry::join("r'", &cn, &ccn));
        e.push(LedgerEntry::meet("r''", &ccn, &cccn));
        e.push(LedgerEntry::join("r", &cccn, &nb));
        e.push(LedgerEntry::join("lb", &nb, &bar));
        e.push(LedgerEntry::meet("lb'", &bar, &bar1));
    }
    ledger.entries.push(LedgerEntry::meet("lb''", "nb0'", "1"));
    ledger.entries.push(LedgerEntry::meet("lb''", "nb1'", "0"));
    ledger
}

/// The 46-element NP-poset: the gadget elements, the P-poset without its
/// bounds, and fresh bounds.
pub fn build_np_poset() -> BoundedPoset {
    let p = build_p_poset();
    let inner: Vec<&str> = P_ELEMENTS[1..P_ELEMENTS.len() - 1].to_vec();
    let mut names: Vec<&str> = NP_ELEMENTS.to_vec();
    names.extend(&inner);
    names.extend(["bot", "top"]);
    let mut pairs: Vec<(&str, &str)> = NP_COVERS.to_vec();
    for &(a, b) in p.poset().covers() {
        let (a, b) = (p.id(a), p.id(b));
        if a != "bot" && b != "top" {
            pairs.push((a, b));
        }
    }
    for &x in names.iter().take(names.len() - 2) {
        pairs.push(("bot", x));
        pairs.push((x, "top"));
    }
    pairs.push(("bot", "top"));
    let poset = Poset::new(&names, &pairs).expect("cover list is acyclic");
    BoundedPoset::try_new(poset).expect("bounds were added")
}

pub fn shared_np_poset() -> Arc<BoundedPoset> {
    Arc::new(build_np_poset())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lowering::ledger::verify_ledger;

    #[test]
    fn p_poset_satisfies_its_ledger() {
        let p = build_p_poset();
        assert_eq!(p.len(), 19);
        verify_ledger(p.poset(), &p_poset_ledger()).unwrap();
        let (dm, _) = dm_completion(p.poset());
        assert_eq!(dm.len(), 23);
        verify_ledger(dm.poset(), &p_poset_ledger()).unwrap();
    }

    #[test]
    fn np_poset_satisfies_its_ledger() {
        let p = build_np_poset();
        assert_eq!(p.len(), 46);
        verify_ledger(p.poset(), &np_poset_ledger()).unwrap();
        let (var, n) = (p.elem("Var").unwrap(), p.elem("n").unwrap());
        let ids: Vec<&str> = p.poset().mubs(var, n).into_iter().map(|e| p.id(e)).collect();
        assert_eq!(ids, vec!["n0", "n1"]);
    }

    #[test]
    fn np_poset_contains_the_p_poset() {
        let p = build_p_poset();
        let np = build_np_poset();
        for a in 1..p.len() - 1 {
            for b in 1..p.len() - 1 {
                let (x, y) = (np.elem(p.id(a)).unwrap(), np.elem(p.id(b)).unwrap());
                assert_eq!(p.leq(a, b), np.leq(x, y));
            }
        }
    }
}
