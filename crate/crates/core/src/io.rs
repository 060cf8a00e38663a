//! JSON documents for lattice functions and cube sets.
//!
//! Function: `{"d": 1, "entries": [{"p": [0], "re": 1.0, "im": 0.0}]}`
//! Set: `{"d": 2, "n": 2, "members": [[0, 0], [1, 0]]}`

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GcubeError, Result};
use crate::lattice::{CubeSet, LatticeFunction, LatticePoint};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDoc {
    pub d: usize,
    pub entries: Vec<EntryDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub p: Vec<i64>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDoc {
    pub d: usize,
    pub n: usize,
    pub members: Vec<Vec<i64>>,
}

impl TryFrom<FunctionDoc> for LatticeFunction {
    type Error = GcubeError;

    fn try_from(doc: FunctionDoc) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for e in &doc.entries {
            if !seen.insert(e.p.clone()) {
                return Err(GcubeError::Parse(format!("duplicate point {:?}", e.p)));
            }
            if !e.re.is_finite() || !e.im.is_finite() {
                return Err(GcubeError::Parse(format!("non-finite value at {:?}", e.p)));
            }
        }
        LatticeFunction::from_entries(
            doc.d,
            doc.entries
                .into_iter()
                .map(|e| (LatticePoint::new(e.p), Complex64::new(e.re, e.im))),
        )
    }
}

impl From<&LatticeFunction> for FunctionDoc {
    fn from(f: &LatticeFunction) -> Self {
        FunctionDoc {
            d: f.dim(),
            entries: f
                .iter()
                .map(|(p, v)| EntryDoc {
                    p: p.coords().to_vec(),
                    re: v.re,
                    im: v.im,
                })
                .collect(),
        }
    }
}

impl TryFrom<SetDoc> for CubeSet {
    type Error = GcubeError;

    fn try_from(doc: SetDoc) -> Result<Self> {
        CubeSet::new(doc.d, doc.n, doc.members.into_iter().map(LatticePoint::new))
    }
}

impl From<&CubeSet> for SetDoc {
    fn from(s: &CubeSet) -> Self {
        SetDoc {
            d: s.dim(),
            n: s.side(),
            members: s.iter().map(|p| p.coords().to_vec()).collect(),
        }
    }
}

pub fn function_from_json(text: &str) -> Result<LatticeFunction> {
    let doc: FunctionDoc = serde_json::from_str(text)?;
    doc.try_into()
}

pub fn function_to_json(f: &LatticeFunction) -> String {
    serde_json::to_string(&FunctionDoc::from(f)).expect("function document serializes")
}

pub fn set_from_json(text: &str) -> Result<CubeSet> {
    let doc: SetDoc = serde_json::from_str(text)?;
    doc.try_into()
}

pub fn set_to_json(s: &CubeSet) -> String {
    serde_json::to_string(&SetDoc::from(s)).expect("set document serializes")
}
