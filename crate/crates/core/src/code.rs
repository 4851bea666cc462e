//! Arbitrary twisted generalized Reed-Solomon codes.
//!
//! A code is fixed by distinct evaluation points α, nonzero column
//! multipliers v and a k×(n−k) twist matrix A(η). Its generator matrix is
//! `[I_k | A(η)] · V_n(α) · diag(v)`: row i evaluates the twisted monomial
//! x^i + Σ_j η_{i,j} x^{k−1+j}.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};
use crate::matrix::FieldMatrix;
use crate::poly;

pub const DEFAULT_DISTANCE_CAP: u64 = 10_000_000;

/// Sparse description of a twist by (hook, twist) pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookTwistSpec {
    pub eta: Vec<FieldElement>,
    /// Hook h_j: the message coefficient index feeding the twist, in [0, k).
    pub hooks: Vec<usize>,
    /// Twist t_j: the degree offset, in [1, n−k]; lands on x^{k−1+t_j}.
    pub twists: Vec<usize>,
}

impl HookTwistSpec {
    /// Dense k×(n−k) twist matrix with η_j placed at (h_j, t_j − 1).
    pub fn to_matrix(&self, tower: &FieldTower, n: usize, k: usize) -> Result<FieldMatrix> {
        let l = self.eta.len();
        if self.hooks.len() != l || self.twists.len() != l {
            return Err(Error::InvalidCode(
                "eta, hooks and twists must have equal length".into(),
            ));
        }
        if k == 0 || k >= n {
            return Err(Error::InvalidCode(format!("need 1 <= k < n, got k={k}, n={n}")));
        }
        let mut a = FieldMatrix::zeros(tower, k, n - k);
        let mut used = std::collections::HashSet::new();
        for j in 0..l {
            let (h, t, eta) = (self.hooks[j], self.twists[j], self.eta[j]);
            if h >= k {
                return Err(Error::InvalidCode(format!("hook {h} outside [0, {k})")));
            }
            if t == 0 || t > n - k {
                return Err(Error::InvalidCode(format!("twist {t} outside [1, {}]", n - k)));
            }
            if eta.is_zero() {
                return Err(Error::InvalidCode(format!("eta_{j} must be nonzero")));
            }
            if !used.insert((h, t)) {
                return Err(Error::InvalidCode(format!("duplicate hook/twist pair ({h}, {t})")));
            }
            a.set(h, t - 1, eta);
        }
        Ok(a)
    }
}

/// The three generator bases derived from a code.
#[derive(Clone, Debug)]
pub struct DualSpaces {
    pub euclidean_dual: FieldMatrix,
    pub code_pow_q: FieldMatrix,
    pub hermitian_dual: FieldMatrix,
}

/// Result of exhaustive minimum-distance search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Distance {
    Exact(usize),
    ExceedsCap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TgrsCode {
    tower: FieldTower,
    k: usize,
    alpha: Vec<FieldElement>,
    v: Vec<FieldElement>,
    twist: FieldMatrix,
    u: Vec<FieldElement>,
    generator: FieldMatrix,
    parity_check: FieldMatrix,
}

/// u_i = 1 / ∏_{j≠i}(α_i − α_j), i.e. 1/G′(α_i) for G = ∏(x − α_j).
pub fn u_vector(t: &FieldTower, alpha: &[FieldElement]) -> Result<Vec<FieldElement>> {
    poly::check_distinct(alpha)?;
    alpha
        .iter()
        .enumerate()
        .map(|(i, &ai)| {
            let d = t.product(
                alpha
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &aj)| t.sub(ai, aj)),
            );
            t.inv(d)
        })
        .collect()
}

impl TgrsCode {
    pub fn new(
        tower: &FieldTower,
        k: usize,
        alpha: Vec<FieldElement>,
        v: Vec<FieldElement>,
        twist: FieldMatrix,
    ) -> Result<Self> {
        let n = alpha.len();
        if k == 0 || k >= n {
            return Err(Error::InvalidCode(format!("need 1 <= k < n, got k={k}, n={n}")));
        }
        if n > tower.size() as usize {
            return Err(Error::InvalidCode(format!(
                "length {n} exceeds the field size {}",
                tower.size()
            )));
        }
        if v.len() != n {
            return Err(Error::InvalidCode(format!(
                "v has length {}, expected {n}",
                v.len()
            )));
        }
        if let Some(x) = alpha.iter().chain(&v).find(|x| !tower.contains(**x)) {
            return Err(Error::InvalidCode(format!("element {x:?} outside the tower")));
        }
        if let Some(i) = v.iter().position(|x| x.is_zero()) {
            return Err(Error::InvalidCode(format!("v[{i}] is zero")));
        }
        if twist.shape() != (k, n - k) {
            return Err(Error::InvalidCode(format!(
                "twist is {:?}, expected {k}x{}",
                twist.shape(),
                n - k
            )));
        }
        if twist.tower() != tower {
            return Err(Error::TowerMismatch);
        }
        let u = u_vector(tower, &alpha)?;
        let generator = build_generator(tower, k, &alpha, &v, &twist)?;
        let parity_check = build_parity_check(tower, k, &alpha, &v, &u, &twist)?;
        if !generator.mul(&parity_check.transpose())?.is_zero() {
            return Err(Error::Internal("G·Hᵀ is not zero".into()));
        }
        if generator.rank() != k {
            return Err(Error::Internal("generator matrix is rank deficient".into()));
        }
        Ok(TgrsCode {
            tower: tower.clone(),
            k,
            alpha,
            v,
            twist,
            u,
            generator,
            parity_check,
        })
    }

    /// Untwisted GRS code.
    pub fn grs(tower: &FieldTower, k: usize, alpha: Vec<FieldElement>, v: Vec<FieldElement>) -> Result<Self> {
        let n = alpha.len();
        let twist = FieldMatrix::zeros(tower, k, n.saturating_sub(k));
        Self::new(tower, k, alpha, v, twist)
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alpha(&self) -> &[FieldElement] {
        &self.alpha
    }

    pub fn v(&self) -> &[FieldElement] {
        &self.v
    }

    pub fn twist(&self) -> &FieldMatrix {
        &self.twist
    }

    pub fn u(&self) -> &[FieldElement] {
        &self.u
    }

    pub fn generator_matrix(&self) -> &FieldMatrix {
        &self.generator
    }

    pub fn parity_check_matrix(&self) -> &FieldMatrix {
        &self.parity_check
    }

    /// `f · G`, cross-checked against direct evaluation of the twisted
    /// polynomial.
    pub fn encode(&self, f: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if f.len() != self.k {
            return Err(Error::Shape(format!(
                "message has length {}, expected {}",
                f.len(),
                self.k
            )));
        }
        let by_matrix = self.generator.vec_mul(f)?;
        if by_matrix != self.encode_by_evaluation(f)? {
            return Err(Error::Internal("encoding paths disagree".into()));
        }
        Ok(by_matrix)
    }

    /// Evaluates Σ f_i x^i + Σ_i f_i Σ_j η_{i,j} x^{k−1+j} at every α,
    /// scaled by v.
    pub fn encode_by_evaluation(&self, f: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if f.len() != self.k {
            return Err(Error::Shape(format!(
                "message has length {}, expected {}",
                f.len(),
                self.k
            )));
        }
        let t = &self.tower;
        let (n, k) = (self.n(), self.k);
        // ascending coefficients of the twisted polynomial
        let mut coeffs = vec![FieldElement::ZERO; n];
        coeffs[..k].copy_from_slice(f);
        for (i, &fi) in f.iter().enumerate() {
            for j in 1..=n - k {
                let idx = k - 1 + j;
                coeffs[idx] = t.add(coeffs[idx], t.mul(fi, self.twist.get(i, j - 1)));
            }
        }
        coeffs.reverse();
        Ok(self
            .alpha
            .iter()
            .zip(&self.v)
            .map(|(&a, &v)| t.mul(v, poly::eval_desc(t, &coeffs, a)))
            .collect())
    }

    pub fn dual_spaces(&self) -> Result<DualSpaces> {
        let code_pow_q = self.generator.pow_q()?;
        Ok(DualSpaces {
            euclidean_dual: self.generator.null_space(),
            hermitian_dual: code_pow_q.null_space(),
            code_pow_q,
        })
    }

    pub fn min_distance(&self, cap: u64) -> Distance {
        min_distance_exhaustive(&self.generator, cap)
    }
}

fn build_generator(
    t: &FieldTower,
    k: usize,
    alpha: &[FieldElement],
    v: &[FieldElement],
    twist: &FieldMatrix,
) -> Result<FieldMatrix> {
    let n = alpha.len();
    FieldMatrix::identity(t, k)
        .hstack(twist)?
        .mul(&FieldMatrix::vandermonde(t, alpha, n))?
        .mul(&FieldMatrix::diag(t, v))
}

/// `[I_{n−k} | −J_{n−k} A(η)ᵀ J_k] · T(α) · V_n(α) · diag(u/v)`.
fn build_parity_check(
    t: &FieldTower,
    k: usize,
    alpha: &[FieldElement],
    v: &[FieldElement],
    u: &[FieldElement],
    twist: &FieldMatrix,
) -> Result<FieldMatrix> {
    let n = alpha.len();
    let left = FieldMatrix::identity(t, n - k).hstack(&reflected_twist(twist)?)?;
    let uv = u
        .iter()
        .zip(v)
        .map(|(&ui, &vi)| t.div(ui, vi))
        .collect::<Result<Vec<_>>>()?;
    left.mul(&FieldMatrix::toeplitz_t(t, alpha)?)?
        .mul(&FieldMatrix::vandermonde(t, alpha, n))?
        .mul(&FieldMatrix::diag(t, &uv))
}

/// −J_{n−k} · A(η)ᵀ · J_k.
pub(crate) fn reflected_twist(twist: &FieldMatrix) -> Result<FieldMatrix> {
    let t = twist.tower();
    let (k, r) = twist.shape();
    Ok(FieldMatrix::reversal(t, r)
        .mul(&twist.transpose())?
        .mul(&FieldMatrix::reversal(t, k))?
        .neg())
}

/// Minimum Hamming weight over all nonzero messages, or `ExceedsCap` when
/// there are more than `cap` of them.
pub fn min_distance_exhaustive(g: &FieldMatrix, cap: u64) -> Distance {
    let t = g.tower();
    let (k, n) = g.shape();
    let size = t.size() as u64;
    let count = (size as u128).checked_pow(k as u32).map(|c| c - 1);
    match count {
        Some(c) if c <= cap as u128 => {}
        _ => return Distance::ExceedsCap,
    }
    if k == 0 {
        return Distance::Exact(0);
    }
    // multiples[r][s] = (element s) · row r
    let multiples: Vec<Vec<Vec<FieldElement>>> = (0..k)
        .map(|r| {
            t.elements()
                .map(|s| g.row(r).iter().map(|&x| t.mul(s, x)).collect())
                .collect()
        })
        .collect();

    let best = (0..size as usize)
        .into_par_iter()
        .map(|s0| {
            let mut best = usize::MAX;
            let mut stack: Vec<Vec<FieldElement>> = vec![multiples[0][s0].clone(); k];
            search(t, &multiples, 1, s0 != 0, &mut stack, &mut best);
            best
        })
        .min()
        .unwrap_or(usize::MAX);
    Distance::Exact(if best == usize::MAX { n } else { best })
}

fn search(
    t: &FieldTower,
    multiples: &[Vec<Vec<FieldElement>>],
    depth: usize,
    nonzero: bool,
    stack: &mut Vec<Vec<FieldElement>>,
    best: &mut usize,
) {
    let k = multiples.len();
    if depth == k {
        if nonzero {
            let w = stack[k - 1].iter().filter(|x| !x.is_zero()).count();
            *best = (*best).min(w);
        }
        return;
    }
    for (s, mult) in multiples[depth].iter().enumerate() {
        let (head, tail) = stack.split_at_mut(depth);
        let prev = &head[depth - 1];
        for ((dst, &a), &b) in tail[0].iter_mut().zip(prev).zip(mult) {
            *dst = t.add(a, b);
        }
        search(t, multiples, depth + 1, nonzero || s != 0, stack, best);
    }
}
