use serde::{Deserialize, Serialize};

use super::poset::{BoundedPoset, Poset};
use super::OrderError;

/// On-disk poset: elements in canonical order and the cover relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub relation: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bottom: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<String>,
}

impl PosetFile {
    pub fn from_poset(p: &Poset) -> Self {
        PosetFile {
            elements: p.ids().to_vec(),
            relation: p
                .covers()
                .iter()
                .map(|&(a, b)| (p.id(a).to_owned(), p.id(b).to_owned()))
                .collect(),
            bottom: p.bottom().map(|e| p.id(e).to_owned()),
            top: p.top().map(|e| p.id(e).to_owned()),
        }
    }

    pub fn to_poset(&self) -> Result<Poset, OrderError> {
        let p = Poset::new(&self.elements, &self.relation)?;
        check_bound(&p, "bottom", self.bottom.as_deref(), p.bottom())?;
        check_bound(&p, "top", self.top.as_deref(), p.top())?;
        Ok(p)
    }

    pub fn to_bounded(&self) -> Result<BoundedPoset, OrderError> {
        BoundedPoset::try_new(self.to_poset()?)
    }
}

fn check_bound(p: &Poset, which: &'static str, declared: Option<&str>, actual: Option<usize>) -> Result<(), OrderError> {
    match declared {
        None => Ok(()),
        Some(id) => {
            let e = p.elem(id)?;
            if actual == Some(e) {
                Ok(())
            } else {
                Err(OrderError::WrongBound { which, id: id.to_owned() })
            }
        }
    }
}

pub fn poset_to_json(p: &Poset) -> String {
    serde_json::to_string(&PosetFile::from_poset(p)).expect("plain data serializes")
}

pub fn poset_from_json(text: &str) -> Result<Poset, OrderError> {
    let file: PosetFile = serde_json::from_str(text).map_err(|e| OrderError::Format(e.to_string()))?;
    file.to_poset()
}
