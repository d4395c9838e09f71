//! The structured input document: vertex list, arrows, weights and a
//! dimension vector, parsed from JSON with positioned diagnostics.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver, StabilityData};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArrowRecord {
    pub from: String,
    pub to: String,
    pub count: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct InputDocument {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowRecord>,
    pub theta: BTreeMap<String, i64>,
    pub d: BTreeMap<String, u32>,
}

impl InputDocument {
    /// Parses and validates a JSON document; syntax errors carry the line
    /// and column reported by the parser.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: InputDocument = serde_json::from_str(text).map_err(|e| {
            Error::InvalidParameter(format!(
                "input parse error at line {}, column {}: {e}",
                e.line(),
                e.column()
            ))
        })?;
        doc.validate()?;
        Ok(doc)
    }

    fn validate(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::InvalidParameter(
                "input declares no vertices".into(),
            ));
        }
        let mut seen = HashSet::new();
        for v in &self.vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate vertex name `{v}`"
                )));
            }
        }
        for a in &self.arrows {
            for end in [&a.from, &a.to] {
                if !seen.contains(end.as_str()) {
                    return Err(Error::InvalidParameter(format!(
                        "arrow references undeclared vertex `{end}`"
                    )));
                }
            }
            if a.count == 0 {
                return Err(Error::InvalidParameter(format!(
                    "arrow {} -> {} has count 0 (must be >= 1)",
                    a.from, a.to
                )));
            }
        }
        let theta_keys: Vec<&str> = self.theta.keys().map(String::as_str).collect();
        let d_keys: Vec<&str> = self.d.keys().map(String::as_str).collect();
        for (name, keys) in [("theta", theta_keys), ("d", d_keys)] {
            let key_set: HashSet<&str> = keys.iter().copied().collect();
            for v in &self.vertices {
                if !key_set.contains(v.as_str()) {
                    return Err(Error::InvalidParameter(format!(
                        "`{name}` is missing vertex `{v}`"
                    )));
                }
            }
            for k in keys {
                if !seen.contains(k) {
                    return Err(Error::InvalidParameter(format!(
                        "`{name}` references undeclared vertex `{k}`"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Assembles the engine data; rejects cyclic quivers.
    pub fn build(&self) -> Result<(Quiver, StabilityData, DimVector)> {
        let index: BTreeMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let arrows: Vec<(usize, usize, u32)> = self
            .arrows
            .iter()
            .map(|a| (index[a.from.as_str()], index[a.to.as_str()], a.count))
            .collect();
        let quiver = Quiver::new(self.vertices.clone(), &arrows)?;
        let theta = self.vertices.iter().map(|v| self.theta[v]).collect();
        let d = DimVector::new(self.vertices.iter().map(|v| self.d[v]).collect());
        Ok((quiver, StabilityData::new(theta), d))
    }
}
