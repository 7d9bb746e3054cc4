use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{boolean_alphabet, Annotation, CircuitError, ComparatorCircuit};
use crate::order::{BoundedPoset, PosetFile};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PosetRef {
    Inline(PosetFile),
    /// Path to a poset file, relative to the circuit file.
    File(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LineFile {
    Const {
        #[serde(rename = "const")]
        value: String,
    },
    Input {
        input: usize,
        map: BTreeMap<String, String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitFile {
    pub poset: PosetRef,
    #[serde(default = "boolean_alphabet")]
    pub alphabet: Vec<String>,
    pub lines: Vec<LineFile>,
    pub gates: Vec<(usize, usize)>,
    #[serde(default)]
    pub output: usize,
    pub accept: String,
}

impl CircuitFile {
    pub fn from_circuit(c: &ComparatorCircuit) -> Self {
        let p = c.poset();
        let lines = c
            .lines()
            .iter()
            .map(|a| match a {
                Annotation::Const(e) => LineFile::Const { value: p.id(*e).to_owned() },
                Annotation::Input { var, map } => LineFile::Input {
                    input: *var,
                    map: c
                        .alphabet()
                        .iter()
                        .zip(map)
                        .map(|(s, &e)| (s.clone(), p.id(e).to_owned()))
                        .collect(),
                },
            })
            .collect();
        CircuitFile {
            poset: PosetRef::Inline(PosetFile::from_poset(p.poset())),
            alphabet: c.alphabet().to_vec(),
            lines,
            gates: c.gates().to_vec(),
            output: c.output(),
            accept: p.id(c.accept()).to_owned(),
        }
    }

    /// Resolves the poset (reading it relative to `base` if it is a file
    /// reference) and validates the circuit.
    pub fn to_circuit(&self, base: Option<&Path>) -> Result<ComparatorCircuit, CircuitError> {
        let poset: BoundedPoset = match &self.poset {
            PosetRef::Inline(f) => f.to_bounded()?,
            PosetRef::File(name) => {
                let path = match base {
                    Some(dir) => dir.join(name),
                    None => Path::new(name).to_path_buf(),
                };
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CircuitError::Format(format!("{}: {e}", path.display())))?;
                let f: PosetFile = serde_json::from_str(&text).map_err(|e| CircuitError::Format(e.to_string()))?;
                f.to_bounded()?
            }
        };
        self.with_poset(Arc::new(poset))
    }

    pub fn with_poset(&self, poset: Arc<BoundedPoset>) -> Result<ComparatorCircuit, CircuitError> {
        let mut lines = Vec::with_capacity(self.lines.len());
        for (l, line) in self.lines.iter().enumerate() {
            lines.push(match line {
                LineFile::Const { value } => Annotation::Const(poset.elem(value)?),
                LineFile::Input { input, map } => {
                    let mut m = Vec::with_capacity(self.alphabet.len());
                    for s in &self.alphabet {
                        let e = map.get(s).ok_or_else(|| CircuitError::BadAnnotation {
                            line: l,
                            reason: format!("no image for symbol `{s}`"),
                        })?;
                        m.push(poset.elem(e)?);
                    }
                    if let Some(extra) = map.keys().find(|k| !self.alphabet.contains(k)) {
                        return Err(CircuitError::UnknownSymbol(extra.clone()));
                    }
                    Annotation::Input { var: *input, map: m }
                }
            });
        }
        let accept = poset.elem(&self.accept)?;
        ComparatorCircuit::new(poset, self.alphabet.clone(), lines, self.gates.clone(), self.output, accept)
    }
}

pub fn circuit_to_json(c: &ComparatorCircuit) -> String {
    serde_json::to_string(&CircuitFile::from_circuit(c)).expect("plain data serializes")
}

pub fn circuit_from_json(text: &str, base: Option<&Path>) -> Result<ComparatorCircuit, CircuitError> {
    let f: CircuitFile = serde_json::from_str(text).map_err(|e| CircuitError::Format(e.to_string()))?;
    f.to_circuit(base)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = r#"{"poset":{"elements":["0","1"],"relation":[["0","1"]],"bottom":"0","top":"1"},"alphabet":["0","1"],"lines":[{"input":1,"map":{"0":"0","1":"1"}},{"const":"1"}],"gates":[[0,1]],"output":0,"accept":"1"}"#;

    #[test]
    fn round_trip() {
        let c = circuit_from_json(TEXT, None).unwrap();
        assert_eq!(c.evaluate(&[1]).unwrap(), 1);
        assert_eq!(circuit_to_json(&c), TEXT);
    }

    #[test]
    fn poset_file_reference() {
        let dir = std::env::temp_dir().join(format!("latcc-json-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("p.json"), r#"{"elements":["0","1"],"relation":[["0","1"]]}"#).unwrap();
        let text = r#"{"poset":"p.json","lines":[{"const":"0"}],"gates":[],"accept":"0"}"#;
        let c = circuit_from_json(text, Some(&dir)).unwrap();
        assert_eq!(c.evaluate(&[]).unwrap(), 0);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn missing_symbol_is_reported() {
        let text = TEXT.replace(r#""map":{"0":"0","1":"1"}"#, r#""map":{"0":"0"}"#);
        assert!(matches!(circuit_from_json(&text, None), Err(CircuitError::BadAnnotation { .. })));
    }
}
