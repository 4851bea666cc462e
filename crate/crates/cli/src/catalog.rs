//! Parameter sweeps over the five construction schemes.
//!
//! The grid is enumerated in a fixed order (scheme, p, e, n), rows are
//! certified in parallel and written back in grid order, so the same flags
//! always produce the same bytes. Wall time is the one nondeterministic
//! column and is only recorded on request.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use tgrs_core::constructions::{construct, ConstructionRequest, Scheme};
use tgrs_core::duality::{is_euclidean_self_dual, is_hermitian_self_dual};
use tgrs_core::constructions::MDS_SUBSET_LIMIT;
use tgrs_core::mds::{is_mds, preferred_method, subset_count};
use tgrs_core::{CodeDescriptor, Distance, Error, FieldTower, Result};

/// Largest q² a sweep may touch.
pub const MAX_SEARCH_FIELD: u64 = 6561;

/// MDS decisions are skipped when there are more k-subsets than this.
pub const MDS_SUBSET_CAP: u128 = 200_000;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub ps: Vec<u32>,
    pub es: Vec<u32>,
    pub schemes: Vec<Scheme>,
    pub limit: Option<usize>,
    pub seed: u64,
    pub distance_cap: u64,
    pub timing: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogRecord {
    pub scheme: Scheme,
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub params: String,
    pub hermitian: bool,
    pub euclidean: bool,
    #[serde(serialize_with = "untested")]
    pub mds: Option<bool>,
    #[serde(serialize_with = "untested")]
    pub distance: Option<usize>,
    pub descriptor: Option<CodeDescriptor>,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

fn untested<T: Serialize, S: Serializer>(v: &Option<T>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => x.serialize(s),
        None => s.serialize_str("untested"),
    }
}

fn applicable(scheme: Scheme, p: u32, e: u32) -> bool {
    match scheme {
        Scheme::I => true,
        Scheme::II => p == 2 && e >= 2,
        Scheme::III => e.is_multiple_of(2),
        Scheme::IV | Scheme::V => p != 2,
    }
}

/// Requests in grid order (scheme, p, e, n, then the free parameter in
/// canonical element order). Every admissible value of each scheme's free
/// parameter gets a row: δ of order (q − 1)/n for I and V (V only while its
/// MDS certificate stays within the subset limit), a for II and III, and
/// b ∈ F_q* for IV.
pub fn grid(cfg: &SearchConfig) -> Result<Vec<ConstructionRequest>> {
    let mut out = Vec::new();
    for &scheme in &cfg.schemes {
        for &p in &cfg.ps {
            for &e in &cfg.es {
                let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
                if q.saturating_mul(q) > MAX_SEARCH_FIELD {
                    return Err(Error::Usage(format!(
                        "p = {p}, e = {e} gives q^2 = {} above the search limit {MAX_SEARCH_FIELD}",
                        q.saturating_mul(q)
                    )));
                }
                if !applicable(scheme, p, e) {
                    continue;
                }
                let t = FieldTower::hermitian(p, e)?;
                let base = ConstructionRequest {
                    seed: cfg.seed,
                    ..ConstructionRequest::new(scheme, p, e)
                };
                let subfield_units: Vec<_> = t.subfield_elements()?.into_iter().filter(|x| !x.is_zero()).collect();
                match scheme {
                    Scheme::I | Scheme::V => {
                        for n in (2..q).step_by(2).filter(|n| (q - 1) % n == 0) {
                            let n = n as usize;
                            if scheme == Scheme::V && subset_count(n, n / 2) > MDS_SUBSET_LIMIT {
                                continue;
                            }
                            let order = (q - 1) / n as u64;
                            for &d in subfield_units.iter().filter(|&&d| t.order(d) == Some(order)) {
                                out.push(ConstructionRequest {
                                    delta: Some(t.coeffs(d)),
                                    ..base.clone().with_n(n)
                                });
                            }
                        }
                    }
                    Scheme::II => {
                        for a in t.units().filter(|&a| t.pow(a, q + 1) == t.one()) {
                            out.push(ConstructionRequest {
                                a: Some(t.coeffs(a)),
                                ..base.clone()
                            });
                        }
                    }
                    Scheme::III => {
                        let q1 = (p as u64).pow(e / 2);
                        for &a in subfield_units.iter().filter(|&&a| t.pow(a, q1 + 1) == t.one()) {
                            out.push(ConstructionRequest {
                                a: Some(t.coeffs(a)),
                                ..base.clone()
                            });
                        }
                    }
                    Scheme::IV => {
                        for &b in &subfield_units {
                            out.push(ConstructionRequest {
                                b: Some(t.coeffs(b)),
                                ..base.clone()
                            });
                        }
                    }
                }
            }
        }
    }
    if let Some(l) = cfg.limit {
        out.truncate(l);
    }
    Ok(out)
}

fn coeff_list(c: &[u32]) -> String {
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn params_of(req: &ConstructionRequest) -> String {
    let mut parts = Vec::new();
    if let Some(n) = req.n {
        parts.push(format!("n={n}"));
    }
    for (name, v) in [("delta", &req.delta), ("a", &req.a), ("b", &req.b)] {
        if let Some(c) = v {
            parts.push(format!("{name}={}", coeff_list(c)));
        }
    }
    if req.scheme == Scheme::I {
        parts.push(format!("seed={}", req.seed));
    }
    parts.join(";")
}

pub fn certify_request(req: &ConstructionRequest, cfg: &SearchConfig) -> CatalogRecord {
    let start = Instant::now();
    let modulus = FieldTower::hermitian(req.p, req.e)
        .map(|t| t.modulus().to_vec())
        .unwrap_or_default();
    let mut rec = CatalogRecord {
        scheme: req.scheme,
        p: req.p,
        e: req.e,
        modulus,
        n: req.n,
        k: req.n.map(|n| n / 2),
        params: params_of(req),
        hermitian: false,
        euclidean: false,
        mds: None,
        distance: None,
        descriptor: None,
        error: None,
        wall_ms: None,
    };
    if let Err(e) = fill(req, cfg, &mut rec) {
        rec.error = Some(e.to_string());
    }
    if cfg.timing {
        rec.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    rec
}

fn fill(req: &ConstructionRequest, cfg: &SearchConfig, rec: &mut CatalogRecord) -> Result<()> {
    let res = construct(req)?;
    let code = &res.code;
    rec.n = Some(code.n());
    rec.k = Some(code.k());
    rec.descriptor = Some(CodeDescriptor::from_code(code));
    rec.hermitian = is_hermitian_self_dual(code)?.self_dual;
    rec.euclidean = is_euclidean_self_dual(code)?.self_dual;
    if let Distance::Exact(d) = code.min_distance(cfg.distance_cap) {
        rec.distance = Some(d);
        rec.mds = Some(d == code.n() - code.k() + 1);
    } else if subset_count(code.n(), code.k()) <= MDS_SUBSET_CAP {
        rec.mds = Some(is_mds(code, preferred_method(code))?.is_mds);
    }
    Ok(())
}

pub fn run_search(cfg: &SearchConfig) -> Result<Vec<CatalogRecord>> {
    let reqs = grid(cfg)?;
    Ok(reqs.par_iter().map(|r| certify_request(r, cfg)).collect())
}

/// A JSON array with one record per line.
pub fn to_json(records: &[CatalogRecord]) -> String {
    if records.is_empty() {
        return "[]\n".into();
    }
    let lines: Vec<String> = records
        .iter()
        .map(|r| serde_json::to_string(r).expect("catalog serialization is infallible"))
        .collect();
    format!("[\n{}\n]\n", lines.join(",\n"))
}

pub fn to_csv(records: &[CatalogRecord], timing: bool) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["scheme", "p", "e", "n", "k", "hermitian", "euclidean", "mds", "distance", "params"];
    if timing {
        header.push("wall_ms");
    }
    let io = |e: csv::Error| Error::Internal(format!("csv: {e}"));
    w.write_record(&header).map_err(io)?;
    for r in records {
        let opt = |x: Option<String>| x.unwrap_or_else(|| "untested".into());
        let mut params = r.params.clone();
        if let Some(e) = &r.error {
            if !params.is_empty() {
                params.push(';');
            }
            params.push_str(&format!("error={e}"));
        }
        let mut row = vec![
            r.scheme.to_string(),
            r.p.to_string(),
            r.e.to_string(),
            r.n.map(|n| n.to_string()).unwrap_or_default(),
            r.k.map(|k| k.to_string()).unwrap_or_default(),
            r.hermitian.to_string(),
            r.euclidean.to_string(),
            opt(r.mds.map(|m| m.to_string())),
            opt(r.distance.map(|d| d.to_string())),
            params,
        ];
        if timing {
            row.push(r.wall_ms.map(|t| format!("{t:.3}")).unwrap_or_default());
        }
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}
