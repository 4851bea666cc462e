//! Hermitian and Euclidean self-duality of twisted GRS codes.
//!
//! The verdict comes from the Gram matrix. For Hermitian duality a second,
//! independent route searches for the invertible P with
//!
//! ```text
//! [I_k | A^q] V_n(α)^q diag(v^{q+1}/u) = P [I_k | −J Aᵀ J] T(α) V_n(α)
//! ```
//!
//! and the two must agree.

use serde::Serialize;

use crate::code::{reflected_twist, TgrsCode};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::matrix::FieldMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DualityKind {
    Hermitian,
    Euclidean,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureReason {
    /// n ≠ 2k.
    Dimension,
    NonzeroGram,
    /// Gram vanished but no invertible P reproduces the identity.
    Rank,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityCertificate {
    pub kind: DualityKind,
    pub self_dual: bool,
    pub gram: FieldMatrix,
    pub p_matrix: Option<FieldMatrix>,
    pub reason: Option<FailureReason>,
}

impl DualityCertificate {
    /// Gram matrix is zero: the code is self-orthogonal.
    pub fn self_orthogonal(&self) -> bool {
        self.gram.is_zero()
    }
}

pub fn is_hermitian_self_dual(code: &TgrsCode) -> Result<DualityCertificate> {
    let g = code.generator_matrix();
    let gram = g.mul(&g.pow_q()?.transpose())?;
    let p_matrix = if code.n() == 2 * code.k() {
        hermitian_certificate_p(code)?
    } else {
        None
    };
    Ok(certify(DualityKind::Hermitian, code, gram, p_matrix))
}

pub fn is_euclidean_self_dual(code: &TgrsCode) -> Result<DualityCertificate> {
    let g = code.generator_matrix();
    let gram = g.mul(&g.transpose())?;
    let p_matrix = if code.n() == 2 * code.k() {
        euclidean_certificate_p(code)?
    } else {
        None
    };
    Ok(certify(DualityKind::Euclidean, code, gram, p_matrix))
}

fn certify(
    kind: DualityKind,
    code: &TgrsCode,
    gram: FieldMatrix,
    p_matrix: Option<FieldMatrix>,
) -> DualityCertificate {
    let reason = if code.n() != 2 * code.k() {
        Some(FailureReason::Dimension)
    } else if !gram.is_zero() {
        Some(FailureReason::NonzeroGram)
    } else if p_matrix.is_none() {
        Some(FailureReason::Rank)
    } else {
        None
    };
    DualityCertificate {
        kind,
        self_dual: reason.is_none(),
        gram,
        p_matrix,
        reason,
    }
}

/// Right-hand factor `[I_k | −J Aᵀ J] · T(α) · V_n(α)`.
fn right_side(code: &TgrsCode) -> Result<FieldMatrix> {
    let t = code.tower();
    let n = code.n();
    FieldMatrix::identity(t, n - code.k())
        .hstack(&reflected_twist(code.twist())?)?
        .mul(&FieldMatrix::toeplitz_t(t, code.alpha())?)?
        .mul(&FieldMatrix::vandermonde(t, code.alpha(), n))
}

/// Invertible P with `left = P · right`, found from the leftmost
/// independent columns of `right` and then checked on every column.
fn solve_for_p(left: &FieldMatrix, right: &FieldMatrix) -> Result<Option<FieldMatrix>> {
    let k = right.rows();
    let pivots = right.rref().pivots;
    if pivots.len() != k {
        return Ok(None);
    }
    let r_sel = right.select_columns(&pivots);
    let l_sel = left.select_columns(&pivots);
    let p = l_sel.mul(&r_sel.inverse()?)?;
    if p.mul(right)? != *left {
        return Ok(None);
    }
    match p.inverse() {
        Ok(_) => Ok(Some(p)),
        Err(Error::Singular { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// The P of the Hermitian identity, when one exists. Requires n = 2k.
pub fn hermitian_certificate_p(code: &TgrsCode) -> Result<Option<FieldMatrix>> {
    if code.n() != 2 * code.k() {
        return Err(Error::precondition("the P certificate needs n = 2k"));
    }
    let t = code.tower();
    let n = code.n();
    let q = t.q() as u64;
    let scale = code
        .v()
        .iter()
        .zip(code.u())
        .map(|(&v, &u)| t.div(t.pow(v, q + 1), u))
        .collect::<Result<Vec<FieldElement>>>()?;
    let left = FieldMatrix::identity(t, code.k())
        .hstack(&code.twist().pow_q()?)?
        .mul(&FieldMatrix::vandermonde(t, code.alpha(), n).pow_q()?)?
        .mul(&FieldMatrix::diag(t, &scale))?;
    solve_for_p(&left, &right_side(code)?)
}

/// The Euclidean analogue: `[I_k | A] V_n(α) diag(v²/u) = P [I_k | −J Aᵀ J] T(α) V_n(α)`.
pub fn euclidean_certificate_p(code: &TgrsCode) -> Result<Option<FieldMatrix>> {
    if code.n() != 2 * code.k() {
        return Err(Error::precondition("the P certificate needs n = 2k"));
    }
    let t = code.tower();
    let n = code.n();
    let scale = code
        .v()
        .iter()
        .zip(code.u())
        .map(|(&v, &u)| t.div(t.mul(v, v), u))
        .collect::<Result<Vec<FieldElement>>>()?;
    let left = FieldMatrix::identity(t, code.k())
        .hstack(code.twist())?
        .mul(&FieldMatrix::vandermonde(t, code.alpha(), n))?
        .mul(&FieldMatrix::diag(t, &scale))?;
    solve_for_p(&left, &right_side(code)?)
}
