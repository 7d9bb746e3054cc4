//! File loading. Poset and ledger arguments also accept `@p` and `@np` for
//! the bundled assets; `-` reads standard input.

use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use latcc::assets;
use latcc::circuit::{circuit_from_json, ComparatorCircuit};
use latcc::lowering::{BooleanCircuit, BranchingProgram, IdentityLedger};
use latcc::order::{poset_from_json, BoundedPoset, Lattice, Poset};

pub fn read(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
}

pub fn poset(src: &str) -> Result<Poset> {
    let text = match src {
        "@p" => assets::P_POSET_JSON.to_owned(),
        "@np" => assets::NP_POSET_JSON.to_owned(),
        _ => read(src)?,
    };
    poset_from_json(&text).with_context(|| format!("loading poset {src}"))
}

pub fn bounded(src: &str) -> Result<BoundedPoset> {
    BoundedPoset::try_new(poset(src)?).with_context(|| format!("poset {src}"))
}

pub fn lattice(src: &str) -> Result<Lattice> {
    Lattice::new(bounded(src)?).with_context(|| format!("poset {src}"))
}

pub fn ledger(src: &str) -> Result<IdentityLedger> {
    let text = match src {
        "@p" => assets::P_LEDGER.to_owned(),
        "@np" => assets::NP_LEDGER.to_owned(),
        _ => read(src)?,
    };
    match IdentityLedger::parse(&text) {
        Ok(l) => Ok(l),
        Err(e) => bail!("ledger {src}: {e}"),
    }
}

/// Relative poset references inside a circuit file resolve against its directory.
pub fn circuit(path: &str) -> Result<ComparatorCircuit> {
    let text = read(path)?;
    let base = (path != "-").then(|| Path::new(path).parent().unwrap_or(Path::new(""))).map(Path::to_path_buf);
    circuit_from_json(&text, base.as_deref()).with_context(|| format!("loading circuit {path}"))
}

pub fn boolean(path: &str) -> Result<BooleanCircuit> {
    BooleanCircuit::from_json(&read(path)?).with_context(|| format!("loading Boolean circuit {path}"))
}

pub fn branching_program(path: &str) -> Result<BranchingProgram> {
    BranchingProgram::from_json(&read(path)?).with_context(|| format!("loading branching program {path}"))
}
