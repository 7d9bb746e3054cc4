use serde_json::Value;

use super::{Formula, FormulaError, Kind};
use crate::order::Lattice;

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// Nested `{"op":"meet"|"join","l":..,"r":..}` with leaves `{"const":"a"}`
/// and `{"input":1,"map":{"0":"a",..}}`. Shared subtrees are written out.
pub fn formula_to_json(f: &Formula, lattice: &Lattice, alphabet: &[String]) -> Result<String, FormulaError> {
    let mut out = String::new();
    write(f, lattice, alphabet, &mut out)?;
    Ok(out)
}

fn write(f: &Formula, lattice: &Lattice, alphabet: &[String], out: &mut String) -> Result<(), FormulaError> {
    match f.kind() {
        Kind::Const(e) => out.push_str(&format!("{{\"const\":{}}}", quote(lattice.id(*e)))),
        Kind::Input { var, map } => {
            let entries: Vec<String> = alphabet
                .iter()
                .zip(map.iter())
                .map(|(s, &e)| format!("{}:{}", quote(s), quote(lattice.id(e))))
                .collect();
            out.push_str(&format!("{{\"input\":{var},\"map\":{{{}}}}}", entries.join(",")));
        }
        Kind::Arg => return Err(FormulaError::UnboundArgument),
        Kind::Meet(l, r) | Kind::Join(l, r) => {
            let op = if matches!(f.kind(), Kind::Meet(..)) { "meet" } else { "join" };
            out.push_str(&format!("{{\"op\":\"{op}\",\"l\":"));
            write(l, lattice, alphabet, out)?;
            out.push_str(",\"r\":");
            write(r, lattice, alphabet, out)?;
            out.push('}');
        }
    }
    Ok(())
}

pub fn formula_from_json(text: &str, lattice: &Lattice, alphabet: &[String]) -> Result<Formula, FormulaError> {
    let v: Value = serde_json::from_str(text).map_err(|e| FormulaError::Format(e.to_string()))?;
    read(&v, lattice, alphabet)
}

fn read(v: &Value, lattice: &Lattice, alphabet: &[String]) -> Result<Formula, FormulaError> {
    let bad = |msg: &str| FormulaError::Format(msg.to_owned());
    let obj = v.as_object().ok_or_else(|| bad("node is not an object"))?;
    let elem = |id: &Value| -> Result<usize, FormulaError> {
        let id = id.as_str().ok_or_else(|| bad("element id is not a string"))?;
        lattice.elem(id).map_err(|e| FormulaError::Format(e.to_string()))
    };
    if let Some(op) = obj.get("op") {
        let l = read(obj.get("l").ok_or_else(|| bad("missing `l`"))?, lattice, alphabet)?;
        let r = read(obj.get("r").ok_or_else(|| bad("missing `r`"))?, lattice, alphabet)?;
        return match op.as_str() {
            Some("meet") => Ok(Formula::meet(l, r)),
            Some("join") => Ok(Formula::join(l, r)),
            _ => Err(bad("`op` must be meet or join")),
        };
    }
    if let Some(c) = obj.get("const") {
        return Ok(Formula::constant(elem(c)?));
    }
    if let Some(var) = obj.get("input") {
        let var = var.as_u64().filter(|&v| v >= 1).ok_or_else(|| bad("`input` must be a positive integer"))? as usize;
        let map = obj.get("map").and_then(Value::as_object).ok_or_else(|| bad("missing `map`"))?;
        let mut m = Vec::with_capacity(alphabet.len());
        for s in alphabet {
            m.push(elem(map.get(s).ok_or_else(|| FormulaError::Format(format!("no image for symbol `{s}`")))?)?);
        }
        return Ok(Formula::input(var, m));
    }
    Err(bad("unknown node kind"))
}
