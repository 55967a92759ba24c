//! JSON save/load for computed algebras.
//!
//! ```json
//! {
//!   "schema": "thinlie.algebra/v1",
//!   "p": 3,
//!   "max_degree": 3,
//!   "components": [
//!     { "degree": 1, "labels": ["x", "y"], "action": [[[1], [0]], [[2], [0]]] },
//!     { "degree": 2, "labels": [{"parent": 0, "letter": "y"}], "action": [[[1, 0], [0, 1]]] },
//!     ...
//!   ],
//!   "relator_log": { "4": [0, 1] }
//! }
//! ```
//!
//! `action[b]` lists the coordinates of `[b, x]` and `[b, y]` in the next
//! component; it is empty for the top component. Structure constants for
//! the full bracket are re-derived on load.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{BasisLabel, Component, EngineError, GradedAlgebra};
use crate::fp::PrimeField;

pub const ALGEBRA_SCHEMA: &str = "thinlie.algebra/v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDocument {
    pub degree: usize,
    pub labels: Vec<BasisLabel>,
    pub action: Vec<[Vec<u32>; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub schema: String,
    pub p: u32,
    pub max_degree: usize,
    pub components: Vec<ComponentDocument>,
    #[serde(default)]
    pub relator_log: BTreeMap<usize, Vec<usize>>,
}

impl GradedAlgebra {
    pub fn to_document(&self) -> AlgebraDocument {
        AlgebraDocument {
            schema: ALGEBRA_SCHEMA.to_string(),
            p: self.field.p(),
            max_degree: self.max_degree,
            components: self
                .components
                .iter()
                .enumerate()
                .map(|(i, c)| ComponentDocument {
                    degree: i + 1,
                    labels: c.labels.clone(),
                    action: c.action.clone(),
                })
                .collect(),
            relator_log: self.relator_log.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("algebra serializes")
    }

    pub fn from_document(doc: AlgebraDocument) -> Result<GradedAlgebra, EngineError> {
        let bad = |msg: String| EngineError::Malformed(msg);
        if doc.schema != ALGEBRA_SCHEMA {
            return Err(bad(format!("unsupported schema '{}'", doc.schema)));
        }
        let field = PrimeField::new(doc.p).map_err(|e| bad(e.to_string()))?;
        if doc.max_degree < 1 || doc.components.len() != doc.max_degree {
            return Err(bad("component count does not match max_degree".into()));
        }
        let dims: Vec<usize> = doc.components.iter().map(|c| c.labels.len()).collect();
        let mut comps = Vec::with_capacity(doc.max_degree);
        for (i, c) in doc.components.into_iter().enumerate() {
            let d = i + 1;
            if c.degree != d {
                return Err(bad(format!("component {i} claims degree {}", c.degree)));
            }
            for (b, label) in c.labels.iter().enumerate() {
                let ok = match *label {
                    BasisLabel::Generator(g) => d == 1 && g.index() == b,
                    BasisLabel::Bracket { parent, .. } => d > 1 && parent < dims[d - 2],
                };
                if !ok {
                    return Err(bad(format!("invalid label {b} in degree {d}")));
                }
            }
            if d == 1 && c.labels.len() != 2 {
                return Err(bad("degree one must have exactly the labels x, y".into()));
            }
            let expected_action = if d < doc.max_degree { c.labels.len() } else { 0 };
            if c.action.len() != expected_action {
                return Err(bad(format!("action table in degree {d} has wrong length")));
            }
            for pair in &c.action {
                for img in pair {
                    if img.len() != dims[d] || img.iter().any(|&v| v >= doc.p) {
                        return Err(bad(format!("malformed action entry in degree {d}")));
                    }
                }
            }
            comps.push(Component {
                labels: c.labels,
                action: c.action,
            });
        }
        // labels must agree with the action tables
        for d in 2..=doc.max_degree {
            for (b, label) in comps[d - 1].labels.iter().enumerate() {
                if let BasisLabel::Bracket { parent, letter } = *label {
                    let img = &comps[d - 2].action[parent][letter.index()];
                    if img.iter().enumerate().any(|(k, &v)| v != u32::from(k == b)) {
                        return Err(bad(format!("label {b} in degree {d} disagrees with the action")));
                    }
                }
            }
        }
        Ok(GradedAlgebra::from_parts(field, comps, doc.relator_log))
    }

    pub fn from_json(text: &str) -> Result<GradedAlgebra, EngineError> {
        let doc: AlgebraDocument =
            serde_json::from_str(text).map_err(|e| EngineError::Malformed(e.to_string()))?;
        GradedAlgebra::from_document(doc)
    }
}
