//! JSON wire formats.
//!
//! Elements are coefficient arrays `[c_0, ..., c_{m−1}]` (little-endian,
//! always exactly m entries), matrices are arrays of rows and a code is
//!
//! ```text
//! {"field": {"p", "e", "modulus"}, "n", "k", "alpha", "v", "twist"}
//! ```
//!
//! Parsing is strict: unknown fields are rejected and every error carries
//! a JSON pointer to the offending value.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use serde_path_to_error::Segment;

use crate::code::{Distance, TgrsCode};
use crate::constructions::{ConstructionResult, Provenance};
use crate::duality::DualityCertificate;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower, TowerSpec};
use crate::matrix::FieldMatrix;
use crate::mds::MdsCertificate;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDescriptor {
    pub field: TowerSpec,
    pub n: usize,
    pub k: usize,
    pub alpha: Vec<Vec<u32>>,
    pub v: Vec<Vec<u32>>,
    pub twist: Vec<Vec<Vec<u32>>>,
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

fn pointer(path: &serde_path_to_error::Path) -> String {
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

impl CodeDescriptor {
    pub fn from_code(code: &TgrsCode) -> Self {
        let t = code.tower();
        CodeDescriptor {
            field: t.spec(),
            n: code.n(),
            k: code.k(),
            alpha: code.alpha().iter().map(|&x| t.coeffs(x)).collect(),
            v: code.v().iter().map(|&x| t.coeffs(x)).collect(),
            twist: code
                .twist()
                .row_vecs()
                .iter()
                .map(|r| r.iter().map(|&x| t.coeffs(x)).collect())
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let d: Self = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = pointer(e.path());
            schema(if path.is_empty() { "/".into() } else { path }, e.inner().to_string())
        })?;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serialization is infallible")
    }

    /// Validates the descriptor and builds the code.
    pub fn to_code(&self) -> Result<TgrsCode> {
        let t = FieldTower::from_spec(&self.field).map_err(|e| schema("/field", e.to_string()))?;
        if self.alpha.len() != self.n {
            return Err(schema(
                "/alpha",
                format!("has {} entries, n = {}", self.alpha.len(), self.n),
            ));
        }
        if self.v.len() != self.n {
            return Err(schema("/v", format!("has {} entries, n = {}", self.v.len(), self.n)));
        }
        if self.k == 0 || self.k >= self.n {
            return Err(schema("/k", format!("need 1 <= k < n, got k = {}", self.k)));
        }
        let alpha = elements(&t, "/alpha", &self.alpha)?;
        let v = elements(&t, "/v", &self.v)?;
        if self.twist.len() != self.k {
            return Err(schema("/twist", format!("has {} rows, k = {}", self.twist.len(), self.k)));
        }
        let mut rows = Vec::with_capacity(self.k);
        for (r, row) in self.twist.iter().enumerate() {
            let path = format!("/twist/{r}");
            if row.len() != self.n - self.k {
                return Err(schema(path, format!("has {} entries, n - k = {}", row.len(), self.n - self.k)));
            }
            rows.push(elements(&t, &path, row)?);
        }
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                return Err(schema(format!("/v/{i}"), "column multiplier is zero"));
            }
        }
        let twist = FieldMatrix::from_rows(&t, &rows)?;
        TgrsCode::new(&t, self.k, alpha, v, twist).map_err(|e| match e {
            Error::RepeatedPoint(i, j) => schema(
                format!("/alpha/{j}"),
                format!("alpha not distinct: positions {i} and {j} coincide"),
            ),
            other => other,
        })
    }
}

fn elements(t: &FieldTower, path: &str, raw: &[Vec<u32>]) -> Result<Vec<FieldElement>> {
    raw.iter()
        .enumerate()
        .map(|(i, c)| {
            t.element_exact(c)
                .map_err(|e| schema(format!("{path}/{i}"), e.to_string()))
        })
        .collect()
}

pub fn element_json(t: &FieldTower, x: FieldElement) -> Value {
    json!(t.coeffs(x))
}

pub fn elements_json(t: &FieldTower, xs: &[FieldElement]) -> Value {
    Value::Array(xs.iter().map(|&x| element_json(t, x)).collect())
}

pub fn matrix_json(m: &FieldMatrix) -> Value {
    let t = m.tower();
    Value::Array(m.row_vecs().iter().map(|r| elements_json(t, r)).collect())
}

pub fn duality_json(c: &DualityCertificate) -> Value {
    json!({
        "kind": c.kind,
        "self_dual": c.self_dual,
        "self_orthogonal": c.self_orthogonal(),
        "reason": c.reason,
        "gram": matrix_json(&c.gram),
        "p_matrix": c.p_matrix.as_ref().map(matrix_json),
    })
}

pub fn mds_json(c: &MdsCertificate) -> Value {
    json!({
        "is_mds": c.is_mds,
        "method": c.method,
        "witness": c.witness,
        "distance": c.distance,
    })
}

pub fn distance_json(d: Distance) -> Value {
    match d {
        Distance::Exact(d) => json!(d),
        Distance::ExceedsCap => json!("exceeds-cap"),
    }
}

pub fn provenance_json(t: &FieldTower, p: &Provenance) -> Value {
    let mut m = Map::new();
    m.insert("u".into(), elements_json(t, &p.u));
    m.insert("lambda".into(), element_json(t, p.lambda));
    m.insert("eta".into(), elements_json(t, &p.eta));
    for (name, x) in &p.elements {
        m.insert(name.clone(), element_json(t, *x));
    }
    for (name, i) in &p.integers {
        m.insert(name.clone(), json!(i));
    }
    Value::Object(m)
}

pub fn descriptor_json(code: &TgrsCode) -> Value {
    serde_json::to_value(CodeDescriptor::from_code(code)).expect("descriptor serialization is infallible")
}

/// `{"scheme", "self_dual", "mds", "code", "certificate", "mds_certificate", "provenance"}`.
pub fn construction_json(r: &ConstructionResult) -> Value {
    let t = r.code.tower();
    json!({
        "scheme": r.scheme,
        "self_dual": r.certificate.self_dual,
        "mds": r.mds.as_ref().map(|m| m.is_mds),
        "code": descriptor_json(&r.code),
        "certificate": duality_json(&r.certificate),
        "mds_certificate": r.mds.as_ref().map(mds_json),
        "provenance": provenance_json(t, &r.provenance),
    })
}
