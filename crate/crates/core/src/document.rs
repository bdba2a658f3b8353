//! JSON tensor documents.
//!
//! ```json
//! {"encoding": "components", "formatVersion": 1, "n": 4,
//!  "payload": {"1,2,1,2": 1.0, "1,3,1,3": 1.0}}
//! ```
//!
//! Component keys are 1-based index quadruples; any member of an orbit may be
//! used on input, canonical representatives are written on output. The
//! `blocks4d` encoding carries `wPlusEigenvalues`, `wMinusEigenvalues`,
//! `tracelessRicci` and `scalar` instead.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::curvature::{make_curvature, CurvatureTensor};
use crate::error::CurvError;
use crate::forms::SymTwoTensor;
use crate::models::{build_model, BlockData, ModelSpec};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Parse(String),
    #[error(transparent)]
    Invalid(#[from] CurvError),
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        Self::Parse(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Encoding {
    Components,
    Blocks4d,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BlocksPayload {
    pub w_plus_eigenvalues: [f64; 3],
    pub w_minus_eigenvalues: [f64; 3],
    pub traceless_ricci: [[f64; 4]; 4],
    pub scalar: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    /// `"i,j,k,l"` → value.
    Components(BTreeMap<String, f64>),
    Blocks4d(BlocksPayload),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TensorDocument {
    pub n: usize,
    pub payload: Payload,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct RawDocument {
    format_version: u32,
    n: usize,
    encoding: Encoding,
    payload: Value,
}

fn parse_key(key: &str) -> Result<[usize; 4], DocumentError> {
    let parts: Vec<&str> = key.split(',').map(str::trim).collect();
    let bad = || DocumentError::Parse(format!("bad component key {key:?}; expected \"i,j,k,l\""));
    if parts.len() != 4 {
        return Err(bad());
    }
    let mut idx = [0usize; 4];
    for (slot, p) in idx.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|_| bad())?;
    }
    Ok(idx)
}

impl TensorDocument {
    pub fn encoding(&self) -> Encoding {
        match self.payload {
            Payload::Components(_) => Encoding::Components,
            Payload::Blocks4d(_) => Encoding::Blocks4d,
        }
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let raw: RawDocument = serde_json::from_str(text)?;
        if raw.format_version != FORMAT_VERSION {
            return Err(DocumentError::Parse(format!(
                "unsupported formatVersion {} (expected {FORMAT_VERSION})",
                raw.format_version
            )));
        }
        let payload = match raw.encoding {
            Encoding::Components => {
                let map: BTreeMap<String, f64> = serde_json::from_value(raw.payload)?;
                for key in map.keys() {
                    parse_key(key)?;
                }
                Payload::Components(map)
            }
            Encoding::Blocks4d => Payload::Blocks4d(serde_json::from_value(raw.payload)?),
        };
        Ok(Self { n: raw.n, payload })
    }

    pub fn to_value(&self) -> Value {
        let payload = match &self.payload {
            Payload::Components(map) => serde_json::to_value(map),
            Payload::Blocks4d(b) => serde_json::to_value(b),
        }
        .expect("finite document values serialize");
        serde_json::to_value(RawDocument {
            format_version: FORMAT_VERSION,
            n: self.n,
            encoding: self.encoding(),
            payload,
        })
        .expect("document serializes")
    }

    /// Pretty JSON with sorted keys.
    pub fn emit(&self) -> String {
        // serde_json's default map is ordered, so keys come out sorted
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("document serializes");
        s.push('\n');
        s
    }

    /// Validates and builds the tensor.
    pub fn to_tensor(&self, tolerance: f64) -> Result<CurvatureTensor, DocumentError> {
        match &self.payload {
            Payload::Components(map) => {
                let mut entries = Vec::with_capacity(map.len());
                for (k, &v) in map {
                    if !v.is_finite() {
                        return Err(DocumentError::Parse(format!("non-finite value for {k:?}")));
                    }
                    entries.push((parse_key(k)?, v));
                }
                Ok(make_curvature(self.n, entries, tolerance)?)
            }
            Payload::Blocks4d(b) => {
                if self.n != 4 {
                    return Err(CurvError::UnsupportedDimension { n: self.n, requirement: "blocks4d needs n = 4" }.into());
                }
                let m = DMatrix::from_fn(4, 4, |i, j| b.traceless_ricci[i][j]);
                let asymmetry = (&m - m.transpose()).amax();
                if asymmetry > tolerance {
                    return Err(CurvError::NotSymmetric { asymmetry }.into());
                }
                let data = BlockData {
                    w_plus_eigenvalues: b.w_plus_eigenvalues,
                    w_minus_eigenvalues: b.w_minus_eigenvalues,
                    traceless_ricci: SymTwoTensor::new(m),
                    scalar: b.scalar,
                };
                Ok(data.to_tensor()?.with_tolerance(tolerance))
            }
        }
    }

    /// Components document listing the non-zero canonical orbits.
    pub fn from_tensor(r: &CurvatureTensor) -> Self {
        let map = r
            .canonical_entries()
            .into_iter()
            .filter(|&(_, v)| v != 0.0)
            .map(|([i, j, k, l], v)| (format!("{},{},{},{}", i + 1, j + 1, k + 1, l + 1), v))
            .collect();
        Self { n: r.n(), payload: Payload::Components(map) }
    }

    pub fn from_blocks(b: &BlockData) -> Self {
        let e = b.traceless_ricci.matrix();
        Self {
            n: 4,
            payload: Payload::Blocks4d(BlocksPayload {
                w_plus_eigenvalues: b.w_plus_eigenvalues,
                w_minus_eigenvalues: b.w_minus_eigenvalues,
                traceless_ricci: std::array::from_fn(|i| std::array::from_fn(|j| e[(i, j)])),
                scalar: b.scalar,
            }),
        }
    }

    /// `blocks4d` for four-dimensional models, components otherwise.
    pub fn from_model(spec: &ModelSpec) -> Result<Self, CurvError> {
        match spec.blocks() {
            Some(b) => Ok(Self::from_blocks(&b)),
            None => Ok(Self::from_tensor(&build_model(spec)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::constant_curvature;

    #[test]
    fn components_round_trip() {
        let r = constant_curvature(4, 1.0);
        let doc = TensorDocument::from_tensor(&r);
        let text = doc.emit();
        let back = TensorDocument::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_tensor(1e-9).unwrap(), r);
        assert!(text.contains("\"1,2,1,2\": 1.0"));
    }

    #[test]
    fn any_orbit_member_is_accepted() {
        let doc = TensorDocument::parse(
            r#"{"formatVersion": 1, "n": 4, "encoding": "components", "payload": {"2,1,2,1": 1.0, "3,4,4,3": -2.0}}"#,
        )
        .unwrap();
        let r = doc.to_tensor(1e-9).unwrap();
        assert_eq!(r.get(0, 1, 0, 1), 1.0);
        assert_eq!(r.get(2, 3, 2, 3), 2.0);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"formatVersion": 1, "n": 4, "encoding": "components", "payload": {}, "extra": 1}"#;
        assert!(matches!(TensorDocument::parse(text), Err(DocumentError::Parse(_))));
        let text = r#"{"formatVersion": 1, "n": 4, "encoding": "blocks4d", "payload": {"scalar": 1,
            "wPlusEigenvalues": [0,0,0], "wMinusEigenvalues": [0,0,0],
            "tracelessRicci": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]], "oops": 2}}"#;
        assert!(matches!(TensorDocument::parse(text), Err(DocumentError::Parse(_))));
        let text = r#"{"formatVersion": 2, "n": 4, "encoding": "components", "payload": {}}"#;
        assert!(matches!(TensorDocument::parse(text), Err(DocumentError::Parse(_))));
        let text = r#"{"formatVersion": 1, "n": 4, "encoding": "components", "payload": {"1,2,3": 1.0}}"#;
        assert!(matches!(TensorDocument::parse(text), Err(DocumentError::Parse(_))));
    }

    #[test]
    fn bianchi_violation_is_a_validation_error() {
        let text = r#"{"formatVersion": 1, "n": 4, "encoding": "components", "payload": {"1,2,3,4": 1.0}}"#;
        let doc = TensorDocument::parse(text).unwrap();
        assert!(matches!(
            doc.to_tensor(1e-9),
            Err(DocumentError::Invalid(CurvError::BianchiViolation { .. }))
        ));
    }

    #[test]
    fn model_documents() {
        let doc = TensorDocument::from_model(&ModelSpec::FubiniStudy { scalar: 8.0 }).unwrap();
        let Payload::Blocks4d(b) = &doc.payload else { panic!("blocks expected") };
        assert_eq!(b.scalar, 8.0);
        assert_eq!(b.w_minus_eigenvalues, [0.0; 3]);
        assert_eq!(TensorDocument::parse(&doc.emit()).unwrap(), doc);
        let r = doc.to_tensor(1e-9).unwrap();
        assert!((r.scalar() - 8.0).abs() < 1e-12);
    }
}
