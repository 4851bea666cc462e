//! MDS decisions for twisted GRS codes.
//!
//! Three independent deciders:
//! - `Criterion`: for each k-subset I of positions, the determinant
//!   M(n,k,α,A(η),I) built from the companion matrix of ∏_{i∈I}(x − α_i)
//!   must be nonzero. Only stated for 3 ≤ k < n.
//! - `Minors`: every k×k column submatrix of the generator is invertible.
//! - `Exhaustive`: the minimum distance, by enumeration, is n − k + 1.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::{Distance, TgrsCode, DEFAULT_DISTANCE_CAP};
use crate::duality::{is_hermitian_self_dual, DualityCertificate};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};
use crate::matrix::FieldMatrix;
use crate::poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MdsMethod {
    Criterion,
    Minors,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdsCertificate {
    pub is_mds: bool,
    pub method: MdsMethod,
    /// First failing k-subset in lexicographic order, 1-based.
    pub witness: Option<Vec<usize>>,
    /// Set by the exhaustive method.
    pub distance: Option<usize>,
}

/// Per-subset data: G_I(x) = ∏_{i∈I}(x − α_i) = Σ c_j x^{k−j}, its
/// companion matrix and the reversed coefficients d_j = c_{k−j}.
#[derive(Clone, Debug)]
pub struct SubsetData {
    /// 0-based positions, increasing.
    pub subset: Vec<usize>,
    pub c: Vec<FieldElement>,
    pub companion: FieldMatrix,
    pub d: Vec<FieldElement>,
}

pub fn subset_data(t: &FieldTower, alpha: &[FieldElement], subset: &[usize]) -> Result<SubsetData> {
    let k = subset.len();
    if k == 0 {
        return Err(Error::usage("subset must be nonempty"));
    }
    if subset.iter().any(|&i| i >= alpha.len()) || subset.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::usage(format!(
            "subset {subset:?} must be strictly increasing positions below {}",
            alpha.len()
        )));
    }
    let points: Vec<_> = subset.iter().map(|&i| alpha[i]).collect();
    let c = poly::monic_from_roots(t, &points);
    let companion = FieldMatrix::from_fn(t, k, k, |r, col| {
        if r + 1 < k {
            if col == r + 1 {
                t.one()
            } else {
                FieldElement::ZERO
            }
        } else {
            t.neg(c[k - col])
        }
    });
    let d = (0..=k).map(|j| c[k - j]).collect();
    Ok(SubsetData {
        subset: subset.to_vec(),
        c,
        companion,
        d,
    })
}

/// Coefficients a^{l}_{m,t} for l = t..n−k+t−1, i.e. F_{m,t} in ascending
/// powers of x.
fn f_coefficients(code: &TgrsCode, data: &SubsetData, m: usize, t_idx: usize) -> Vec<FieldElement> {
    let tw = code.tower();
    let (n, k) = (code.n(), code.k());
    let r = n - k;
    (t_idx..r + t_idx)
        .map(|l| {
            tw.sum((1..=r).filter_map(|i| {
                let j = l.checked_sub(i)?;
                (j < t_idx && j <= k).then(|| tw.mul(code.twist().get(m, i - 1), data.d[j]))
            }))
        })
        .collect()
}

/// g_{m,t} = −γ F_{m,t}(A_I) γᵀ as a k×k table, row m, column t − 1.
///
/// Only the bottom-right entry of F_{m,t}(A_I) is needed, so the entries
/// (A_I^j)_{k,k} are computed once and combined linearly.
pub fn g_table(code: &TgrsCode, data: &SubsetData) -> Result<FieldMatrix> {
    let tw = code.tower();
    let k = code.k();
    if data.subset.len() != k {
        return Err(Error::usage(format!(
            "subset has {} positions, code dimension is {k}",
            data.subset.len()
        )));
    }
    let r = code.n() - k;
    let mut corner = Vec::with_capacity(r);
    let mut row: Vec<FieldElement> = (0..k)
        .map(|c| if c == k - 1 { tw.one() } else { FieldElement::ZERO })
        .collect();
    for _ in 0..r {
        corner.push(row[k - 1]);
        row = data.companion.vec_mul(&row)?;
    }
    Ok(FieldMatrix::from_fn(tw, k, k, |m, t0| {
        let coeffs = f_coefficients(code, data, m, t0 + 1);
        let s = tw.sum(coeffs.iter().zip(&corner).map(|(&a, &c)| tw.mul(a, c)));
        tw.neg(s)
    }))
}

/// M(n,k,α,A(η),I) = det(I_k + g).
pub fn m_determinant(code: &TgrsCode, subset: &[usize]) -> Result<FieldElement> {
    let data = subset_data(code.tower(), code.alpha(), subset)?;
    let g = g_table(code, &data)?;
    g.add(&FieldMatrix::identity(code.tower(), code.k()))?.det()
}

/// C(n, k), saturating.
pub fn subset_count(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n as u128 - i) / (i + 1);
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(k).collect()
}

fn first_failure<F>(n: usize, k: usize, fails: F) -> Result<Option<Vec<usize>>>
where
    F: Fn(&[usize]) -> Result<bool> + Sync,
{
    let all = subsets(n, k);
    let hit = all
        .par_iter()
        .map(|s| fails(s).map(|f| f.then(|| s.clone())))
        .find_first(|r| !matches!(r, Ok(None)));
    match hit {
        None => Ok(None),
        Some(r) => r,
    }
}

fn one_based(s: Vec<usize>) -> Vec<usize> {
    s.into_iter().map(|i| i + 1).collect()
}

pub fn is_mds(code: &TgrsCode, method: MdsMethod) -> Result<MdsCertificate> {
    is_mds_capped(code, method, DEFAULT_DISTANCE_CAP)
}

pub fn is_mds_capped(code: &TgrsCode, method: MdsMethod, cap: u64) -> Result<MdsCertificate> {
    let (n, k) = (code.n(), code.k());
    match method {
        MdsMethod::Criterion => {
            if k < 3 {
                return Err(Error::precondition(format!(
                    "the determinant criterion needs 3 <= k, got k = {k}; use the minors method"
                )));
            }
            let witness = first_failure(n, k, |s| Ok(m_determinant(code, s)?.is_zero()))?;
            Ok(MdsCertificate {
                is_mds: witness.is_none(),
                method,
                witness: witness.map(one_based),
                distance: None,
            })
        }
        MdsMethod::Minors => {
            let g = code.generator_matrix();
            let witness = first_failure(n, k, |s| Ok(g.select_columns(s).det()?.is_zero()))?;
            Ok(MdsCertificate {
                is_mds: witness.is_none(),
                method,
                witness: witness.map(one_based),
                distance: None,
            })
        }
        MdsMethod::Exhaustive => match code.min_distance(cap) {
            Distance::Exact(d) => Ok(MdsCertificate {
                is_mds: d == n - k + 1,
                method,
                witness: None,
                distance: Some(d),
            }),
            Distance::ExceedsCap => Err(Error::precondition(format!(
                "exhaustive search over {}^{k} messages exceeds the cap {cap}",
                code.tower().size()
            ))),
        },
    }
}

/// Runs every applicable decider and fails if any two disagree.
pub fn mds_cross_check(code: &TgrsCode, cap: u64) -> Result<Vec<MdsCertificate>> {
    let mut certs = vec![is_mds_capped(code, MdsMethod::Minors, cap)?];
    if code.k() >= 3 {
        certs.push(is_mds_capped(code, MdsMethod::Criterion, cap)?);
    }
    match is_mds_capped(code, MdsMethod::Exhaustive, cap) {
        Ok(c) => certs.push(c),
        Err(Error::Precondition(_)) => {}
        Err(e) => return Err(e),
    }
    if certs.iter().any(|c| c.is_mds != certs[0].is_mds) {
        return Err(Error::Internal(format!(
            "MDS deciders disagree: {:?}",
            certs.iter().map(|c| (c.method, c.is_mds)).collect::<Vec<_>>()
        )));
    }
    Ok(certs)
}

/// Preferred decider for a code: the criterion when k ≥ 3, minors otherwise.
pub fn preferred_method(code: &TgrsCode) -> MdsMethod {
    if code.k() >= 3 {
        MdsMethod::Criterion
    } else {
        MdsMethod::Minors
    }
}

/// Hermitian self-duality together with MDS-ness.
pub fn is_mds_hermitian_self_dual(code: &TgrsCode) -> Result<(DualityCertificate, MdsCertificate)> {
    let duality = is_hermitian_self_dual(code)?;
    let mds = is_mds(code, preferred_method(code))?;
    Ok((duality, mds))
}
