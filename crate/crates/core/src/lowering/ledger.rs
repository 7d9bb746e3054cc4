use std::fmt;

use crate::order::{OrderError, Poset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LedgerOp {
    Meet,
    Join,
    /// `a <= b`; the result set is empty.
    Leq,
}

/// One identity: the maximal lower bounds (`Meet`) or minimal upper bounds
/// (`Join`) of `a` and `b` are exactly `result`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub op: LedgerOp,
    pub a: String,
    pub b: String,
    pub result: Vec<String>,
}

impl LedgerEntry {
    pub fn meet(a: &str, b: &str, r: &str) -> Self {
        LedgerEntry { op: LedgerOp::Meet, a: a.into(), b: b.into(), result: vec![r.into()] }
    }

    pub fn join(a: &str, b: &str, r: &str) -> Self {
        LedgerEntry { op: LedgerOp::Join, a: a.into(), b: b.into(), result: vec![r.into()] }
    }

    pub fn leq(a: &str, b: &str) -> Self {
        LedgerEntry { op: LedgerOp::Leq, a: a.into(), b: b.into(), result: Vec::new() }
    }
}

impl fmt::Display for LedgerEntry {
    /// `a ^ b = {c}`, `a v b = {c,d}` or `a <= b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.op {
            LedgerOp::Leq => write!(f, "{} <= {}", self.a, self.b),
            op => {
                let sym = if op == LedgerOp::Meet { "^" } else { "v" };
                write!(f, "{} {} {} = {{{}}}", self.a, sym, self.b, self.result.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdentityLedger {
    pub entries: Vec<LedgerEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LedgerFailure {
    Unknown(OrderError),
    /// The entry at `index` does not hold; `actual` is the computed bound set.
    Mismatch { index: usize, entry: LedgerEntry, actual: Vec<String> },
}

impl fmt::Display for LedgerFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LedgerFailure::Unknown(e) => write!(f, "{e}"),
            LedgerFailure::Mismatch { index, entry, actual } => {
                write!(f, "entry {} `{entry}` fails: got {{{}}}", index + 1, actual.join(","))
            }
        }
    }
}

impl IdentityLedger {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = || format!("line {}: cannot parse `{line}`", no + 1);
            if let Some((a, b)) = line.split_once("<=") {
                entries.push(LedgerEntry::leq(a.trim(), b.trim()));
                continue;
            }
            let (lhs, rhs) = line.split_once('=').ok_or_else(err)?;
            let parts: Vec<&str> = lhs.split_whitespace().collect();
            let [a, op, b] = parts[..] else {
                return Err(err());
            };
            let op = match op {
                "^" => LedgerOp::Meet,
                "v" => LedgerOp::Join,
                _ => return Err(err()),
            };
            let set = rhs.trim().strip_prefix('{').and_then(|s| s.strip_suffix('}')).ok_or_else(err)?;
            let result = set.split(',').map(|s| s.trim().to_owned()).filter(|s| !s.is_empty()).collect();
            entries.push(LedgerEntry { op, a: a.into(), b: b.into(), result });
        }
        Ok(IdentityLedger { entries })
    }

    pub fn to_text(&self) -> String {
        self.entries.iter().map(|e| format!("{e}\n")).collect()
    }

    /// Every element id mentioned, in first-mention order.
    pub fn elements(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for e in &self.entries {
            for id in [&e.a, &e.b].into_iter().chain(&e.result) {
                if !out.contains(id) {
                    out.push(id.clone());
                }
            }
        }
        out
    }

    pub fn extend(&mut self, other: &IdentityLedger) {
        self.entries.extend(other.entries.iter().cloned());
    }
}

/// Checks each entry against the bound sets of `poset`, stopping at the
/// first failure.
pub fn verify_ledger(poset: &Poset, ledger: &IdentityLedger) -> Result<(), LedgerFailure> {
    for (index, entry) in ledger.entries.iter().enumerate() {
        let a = poset.elem(&entry.a).map_err(LedgerFailure::Unknown)?;
        let b = poset.elem(&entry.b).map_err(LedgerFailure::Unknown)?;
        let (ok, actual) = match entry.op {
            LedgerOp::Leq => (poset.leq(a, b), Vec::new()),
            op => {
                let got = if op == LedgerOp::Meet { poset.mlbs(a, b) } else { poset.mubs(a, b) };
                let mut want = Vec::with_capacity(entry.result.len());
                for r in &entry.result {
                    want.push(poset.elem(r).map_err(LedgerFailure::Unknown)?);
                }
                want.sort_unstable();
                want.dedup();
                let ids = got.iter().map(|&e| poset.id(e).to_owned()).collect();
                (got == want, ids)
            }
        };
        if !ok {
            return Err(LedgerFailure::Mismatch { index, entry: entry.clone(), actual });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> Poset {
        Poset::new(&["0", "1"], &[("0", "1")]).unwrap()
    }

    #[test]
    fn two_chain_ledgers() {
        let good = IdentityLedger::parse("0 v 1 = {1}\n0 <= 1\n").unwrap();
        assert!(verify_ledger(&chain(), &good).is_ok());
        let bad = IdentityLedger::parse("0 v 1 = {0}").unwrap();
        match verify_ledger(&chain(), &bad) {
            Err(LedgerFailure::Mismatch { index: 0, actual, .. }) => assert_eq!(actual, vec!["1"]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn text_round_trip() {
        let text = "a ^ b = {c}\na v b = {c,d}\na <= b\n";
        let l = IdentityLedger::parse(text).unwrap();
        assert_eq!(l.entries[1].result, vec!["c", "d"]);
        assert_eq!(l.to_text(), text);
    }

    #[test]
    fn unknown_ids_are_reported() {
        let l = IdentityLedger::parse("0 v q = {1}").unwrap();
        assert!(matches!(verify_ledger(&chain(), &l), Err(LedgerFailure::Unknown(_))));
    }
}
