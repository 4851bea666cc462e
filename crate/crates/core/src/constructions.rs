//! The five explicit families of Hermitian self-dual twisted GRS codes.
//!
//! Every constructor checks the scheme's algebraic preconditions, assembles
//! the code and then runs the Gram certifier; a code is only returned when
//! the certificate says self-dual.
//!
//! Scheme summary (q = p^e, codes over F_{q²}, n = 2k):
//!
//! - I: α = roots of x^n − δ in F_q with nt = q − 1, any twist with
//!   A^q = −J Aᵀ J.
//! - II: q = 2^s, α = U_{(a,q)}^0, anti-diagonal twist.
//! - III: e even, q₁ = p^{e/2}, α = ε^{i_c}(U_{(a,q₁)}^0 ∪ U_{(a,q₁)}^{−b}),
//!   diagonal twist with η_1 = η_k = 0.
//! - IV: q odd, α = roots of x^{q+1} − b, diagonal twist, v^{q+1} constant.
//! - V: as I with q odd and the all-η twist, η^q = −η; also MDS.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::code::{u_vector, TgrsCode};
use crate::duality::{is_hermitian_self_dual, DualityCertificate};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};
use crate::matrix::FieldMatrix;
use crate::mds::{is_mds, preferred_method, subset_count, MdsCertificate};
use crate::roots;

/// Scheme V certifies MDS-ness over every k-subset; above this many
/// subsets the request is refused.
pub const MDS_SUBSET_LIMIT: u128 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Scheme {
    I,
    II,
    III,
    IV,
    V,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [Scheme::I, Scheme::II, Scheme::III, Scheme::IV, Scheme::V];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::I => "I",
            Scheme::II => "II",
            Scheme::III => "III",
            Scheme::IV => "IV",
            Scheme::V => "V",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::usage(format!("unknown scheme {s:?}; expected I, II, III, IV or V")))
    }
}

/// Parameters for one construction. Field elements are little-endian
/// coefficient lists over F_p, resolved against the tower F_{(p^e)^2}.
///
/// `eta` holds explicit η choices; when empty every η is solved for and
/// the smallest admissible value is taken. Its meaning per scheme:
/// I: the diagonal of B in A = B − J(B^q)ᵀJ; II: η_1..η_{k−1};
/// III: the interior η_2..η_{k−1}; IV: η_1..η_k; V: the single η.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionRequest {
    pub scheme: Scheme,
    pub p: u32,
    pub e: u32,
    pub n: Option<usize>,
    pub t: Option<u64>,
    pub delta: Option<Vec<u32>>,
    pub a: Option<Vec<u32>>,
    pub b: Option<Vec<u32>>,
    pub c: Option<Vec<u32>>,
    pub i_c: Option<u64>,
    pub lambda: Option<Vec<u32>>,
    pub eta: Vec<Vec<u32>>,
    /// Scheme I only: an explicit twist, validated against A^q = −J Aᵀ J.
    pub twist: Option<Vec<Vec<Vec<u32>>>>,
    pub seed: u64,
}

impl ConstructionRequest {
    pub fn new(scheme: Scheme, p: u32, e: u32) -> Self {
        ConstructionRequest {
            scheme,
            p,
            e,
            n: None,
            t: None,
            delta: None,
            a: None,
            b: None,
            c: None,
            i_c: None,
            lambda: None,
            eta: Vec::new(),
            twist: None,
            seed: 0,
        }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }
}

/// Intermediate values a construction solved for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub u: Vec<FieldElement>,
    /// The common value of v_i^{q+1}/u_i (schemes I, II, III, V) or of
    /// v_i^{q+1} (scheme IV).
    pub lambda: FieldElement,
    pub eta: Vec<FieldElement>,
    pub elements: Vec<(String, FieldElement)>,
    pub integers: Vec<(String, u64)>,
}

#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub scheme: Scheme,
    pub code: TgrsCode,
    pub certificate: DualityCertificate,
    pub mds: Option<MdsCertificate>,
    pub provenance: Provenance,
}

/// Finds v with v_i^{q+1}/u_i = λ for all i.
///
/// Without λ the canonical representative λ = u_1^{-1} of the only
/// possible coset λ·F_q* is used. Each v_i is the smallest norm preimage.
pub fn solve_scaling_vector(
    t: &FieldTower,
    alpha: &[FieldElement],
    lambda: Option<FieldElement>,
) -> Result<(Vec<FieldElement>, FieldElement)> {
    let u = u_vector(t, alpha)?;
    let Some(&u1) = u.first() else {
        return Err(Error::usage("alpha is empty"));
    };
    let lambda = match lambda {
        Some(l) if l.is_zero() => return Err(Error::usage("lambda must be nonzero")),
        Some(l) => l,
        None => {
            let mut bad = Vec::new();
            for (i, &ui) in u.iter().enumerate().skip(1) {
                let r = t.div(ui, u1)?;
                if !t.in_subfield(r)? {
                    bad.push(format!("u_{}/u_1 = {}", i + 1, t.display(r)));
                }
            }
            if !bad.is_empty() {
                return Err(Error::infeasible(format!(
                    "no lambda makes every lambda*u_i a norm; quotients outside F_q: {}",
                    bad.join(", ")
                )));
            }
            t.inv(u1)?
        }
    };
    let mut bad = Vec::new();
    let mut v = Vec::with_capacity(u.len());
    for (i, &ui) in u.iter().enumerate() {
        let c = t.mul(lambda, ui);
        if t.in_subfield(c)? {
            v.push(t.solve_norm_equation(c)?[0]);
        } else {
            bad.push(format!("lambda*u_{} = {}", i + 1, t.display(c)));
        }
    }
    if !bad.is_empty() {
        return Err(Error::infeasible(format!(
            "lambda = {} leaves values outside F_q: {}",
            t.display(lambda),
            bad.join(", ")
        )));
    }
    Ok((v, lambda))
}

/// A = B − J (B^q)ᵀ J, which always satisfies A^q = −J Aᵀ J.
pub fn twist_from_b(b: &FieldMatrix) -> Result<FieldMatrix> {
    if !b.is_square() {
        return Err(Error::Shape(format!("B must be square, got {:?}", b.shape())));
    }
    let j = FieldMatrix::reversal(b.tower(), b.rows());
    b.sub(&j.mul(&b.pow_q()?.transpose())?.mul(&j)?)
}

/// [`twist_from_b`] with B drawn uniformly from a seeded ChaCha stream.
pub fn sample_twist_i(t: &FieldTower, k: usize, seed: u64) -> Result<FieldMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = Vec::with_capacity(k * k);
    for _ in 0..k * k {
        data.push(t.element_from_index(rng.random_range(0..t.size()))?);
    }
    twist_from_b(&FieldMatrix::new(t, k, k, data)?)
}

/// A^q = −J Aᵀ J.
pub fn satisfies_twist_constraint(a: &FieldMatrix) -> Result<bool> {
    if !a.is_square() {
        return Ok(false);
    }
    let j = FieldMatrix::reversal(a.tower(), a.rows());
    Ok(a.pow_q()? == j.mul(&a.transpose())?.mul(&j)?.neg())
}

/// All η with η^q + η/a^{2i−1} = 0, i.e. 0 and the roots of
/// η^{q−1} = −a^{−(2i−1)}.
pub fn eta_solutions_ii(t: &FieldTower, a: FieldElement, i: usize) -> Result<Vec<FieldElement>> {
    let q = t.q() as u64;
    let rhs = t.neg(t.pow_signed(a, -(2 * i as i64 - 1))?);
    let mut out = vec![FieldElement::ZERO];
    out.extend(t.nth_roots(rhs, q - 1)?);
    Ok(out)
}

/// All nonzero η with η^{q+1} = −b^{−k}.
pub fn eta_solutions_iv(t: &FieldTower, b: FieldElement, k: usize) -> Result<Vec<FieldElement>> {
    let rhs = t.neg(t.pow_signed(b, -(k as i64))?);
    t.solve_norm_equation(rhs)
}

/// All η ≠ 0 with η^q = −η.
pub fn eta_solutions_v(t: &FieldTower) -> Result<Vec<FieldElement>> {
    let q = t.q() as u64;
    t.nth_roots(t.neg(t.one()), q - 1)
}

/// Scheme III data fixed by (a, b, i_c): the rotated b* = ε^{i_c q₁} b and
/// c^k.
struct ThirdScheme {
    bstar: FieldElement,
    ck: FieldElement,
}

impl ThirdScheme {
    /// −η/(c^k (1 − b* η)), the right side of η_i^q for partner value η.
    fn image(&self, t: &FieldTower, eta: FieldElement) -> Result<FieldElement> {
        let den = t.mul(self.ck, t.sub(t.one(), t.mul(self.bstar, eta)));
        if den.is_zero() {
            return Err(Error::infeasible(format!(
                "1 - b*·eta vanishes at eta = {}",
                t.display(eta)
            )));
        }
        Ok(t.neg(t.div(eta, den)?))
    }

    /// Partner of η_i in the pair (i, k−i+1): η_{k−i+1} = image(η_i)^q.
    fn partner(&self, t: &FieldTower, eta: FieldElement) -> Result<FieldElement> {
        let x = self.image(t, eta)?;
        t.conjugate(x)
    }

    fn holds(&self, t: &FieldTower, eta_i: FieldElement, eta_j: FieldElement) -> bool {
        matches!(self.image(t, eta_j), Ok(x) if t.conjugate(eta_i) == Ok(x))
    }

    /// Nonzero solutions of the self-paired relation, as reciprocals of the
    /// nonzero roots of x^q + c^k x − c^k b* = 0.
    fn middle_solutions(&self, t: &FieldTower) -> Result<Vec<FieldElement>> {
        let q = t.q() as u64;
        let roots = roots::affine_roots_with_exponent(t, q, t.neg(self.ck), t.mul(self.ck, self.bstar));
        let mut out = roots
            .into_iter()
            .filter(|x| !x.is_zero())
            .map(|x| t.inv(x))
            .collect::<Result<Vec<_>>>()?;
        out.retain(|&e| self.holds(t, e, e));
        out.sort();
        Ok(out)
    }
}

pub fn construct(req: &ConstructionRequest) -> Result<ConstructionResult> {
    let t = FieldTower::hermitian(req.p, req.e)?;
    let built = match req.scheme {
        Scheme::I => build_i(&t, req)?,
        Scheme::II => build_ii(&t, req)?,
        Scheme::III => build_iii(&t, req)?,
        Scheme::IV => build_iv(&t, req)?,
        Scheme::V => build_v(&t, req)?,
    };
    let (code, provenance) = built;
    let certificate = is_hermitian_self_dual(&code)?;
    if !certificate.self_dual {
        return Err(Error::CertificationFailed(format!(
            "scheme {} produced a code that is not Hermitian self-dual ({:?})",
            req.scheme, certificate.reason
        )));
    }
    let mds = if req.scheme == Scheme::V {
        let cert = is_mds(&code, preferred_method(&code))?;
        if !cert.is_mds {
            return Err(Error::CertificationFailed(format!(
                "scheme V code is not MDS, witness {:?}",
                cert.witness
            )));
        }
        Some(cert)
    } else {
        None
    };
    Ok(ConstructionResult {
        scheme: req.scheme,
        code,
        certificate,
        mds,
        provenance,
    })
}

type Built = (TgrsCode, Provenance);

fn elt(t: &FieldTower, name: &str, c: &Option<Vec<u32>>) -> Result<Option<FieldElement>> {
    c.as_ref()
        .map(|c| t.element(c).map_err(|e| Error::usage(format!("{name}: {e}"))))
        .transpose()
}

fn etas(t: &FieldTower, req: &ConstructionRequest, expected: usize) -> Result<Option<Vec<FieldElement>>> {
    if req.eta.is_empty() {
        return Ok(None);
    }
    if req.eta.len() != expected {
        return Err(Error::usage(format!(
            "scheme {} takes {expected} eta values, got {}",
            req.scheme,
            req.eta.len()
        )));
    }
    req.eta
        .iter()
        .enumerate()
        .map(|(i, c)| t.element(c).map_err(|e| Error::usage(format!("eta[{i}]: {e}"))))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

fn in_subfield_nonzero(t: &FieldTower, name: &str, x: FieldElement) -> Result<()> {
    if x.is_zero() || !t.in_subfield(x)? {
        return Err(Error::precondition(format!(
            "{name} = {} must be a nonzero element of F_q",
            t.display(x)
        )));
    }
    Ok(())
}

/// α = roots of x^n − δ for schemes I and V, with n | q − 1 and δ of order t.
fn multiplicative_points(
    t: &FieldTower,
    req: &ConstructionRequest,
) -> Result<(Vec<FieldElement>, usize, FieldElement, u64)> {
    let q = t.q() as u64;
    let n = req
        .n
        .ok_or_else(|| Error::usage(format!("scheme {} needs n", req.scheme)))?;
    if n < 2 || n % 2 != 0 {
        return Err(Error::precondition(format!("n = {n} must be even and at least 2")));
    }
    if !(q - 1).is_multiple_of(n as u64) {
        return Err(Error::precondition(format!("n = {n} must divide q - 1 = {}", q - 1)));
    }
    let tt = (q - 1) / n as u64;
    if let Some(given) = req.t {
        if given != tt {
            return Err(Error::precondition(format!(
                "n*t must equal q - 1 = {}; with n = {n}, t = {tt}, not {given}",
                q - 1
            )));
        }
    }
    let delta = match elt(t, "delta", &req.delta)? {
        Some(d) => {
            in_subfield_nonzero(t, "delta", d)?;
            if t.order(d) != Some(tt) {
                return Err(Error::precondition(format!(
                    "delta = {} has order {:?}, expected t = {tt}",
                    t.display(d),
                    t.order(d)
                )));
            }
            d
        }
        None => t
            .subfield_elements()?
            .into_iter()
            .find(|&d| t.order(d) == Some(tt))
            .ok_or_else(|| Error::Internal(format!("no element of order {tt} in F_q")))?,
    };
    let alpha = t.nth_roots(delta, n as u64)?;
    if alpha.len() != n {
        return Err(Error::Internal(format!(
            "x^{n} - delta has {} roots, expected {n}",
            alpha.len()
        )));
    }
    Ok((alpha, n / 2, delta, tt))
}

fn build_i(t: &FieldTower, req: &ConstructionRequest) -> Result<Built> {
    let (alpha, k, delta, tt) = multiplicative_points(t, req)?;
    let lambda = elt(t, "lambda", &req.lambda)?;
    let (v, lambda) = solve_scaling_vector(t, &alpha, lambda)?;
    let (twist, eta) = if let Some(rows) = &req.twist {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|c| t.element(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let a = FieldMatrix::from_rows(t, &rows)?;
        if a.shape() != (k, k) {
            return Err(Error::usage(format!("twist must be {k}x{k}, got {:?}", a.shape())));
        }
        if !satisfies_twist_constraint(&a)? {
            return Err(Error::precondition("twist violates A^q = -J A^T J"));
        }
        (a, Vec::new())
    } else if let Some(d) = etas(t, req, k)? {
        (twist_from_b(&FieldMatrix::diag(t, &d))?, d)
    } else {
        (sample_twist_i(t, k, req.seed)?, Vec::new())
    };
    let code = TgrsCode::new(t, k, alpha, v, twist)?;
    let provenance = Provenance {
        u: code.u().to_vec(),
        lambda,
        eta,
        elements: vec![("delta".into(), delta)],
        integers: vec![("t".into(), tt), ("seed".into(), req.seed)],
    };
    Ok((code, provenance))
}

fn build_ii(t: &FieldTower, req: &ConstructionRequest) -> Result<Built> {
    if t.p() != 2 {
        return Err(Error::precondition("scheme II needs q = 2^s (p = 2)"));
    }
    let q = t.q() as u64;
    if q < 4 {
        return Err(Error::precondition("scheme II needs q >= 4"));
    }
    let n = q as usize;
    if let Some(given) = req.n {
        if given != n {
            return Err(Error::precondition(format!("scheme II has n = q = {n}, not {given}")));
        }
    }
    let k = n / 2;
    let a = elt(t, "a", &req.a)?.unwrap_or(t.one());
    if t.pow(a, q + 1) != t.one() {
        return Err(Error::precondition(format!(
            "a = {} must satisfy a^(q+1) = 1",
            t.display(a)
        )));
    }
    let alpha = roots::affine_frobenius_roots(t, a, t.zero())?.roots;
    if alpha.len() != n {
        return Err(Error::Internal(format!("x^q - a x has {} roots", alpha.len())));
    }
    let eta = match etas(t, req, k - 1)? {
        Some(given) => {
            for (i, &e) in given.iter().enumerate() {
                if !eta_solutions_ii(t, a, i + 1)?.contains(&e) {
                    return Err(Error::precondition(format!(
                        "eta_{} = {} violates eta^q + eta/a^{} = 0",
                        i + 1,
                        t.display(e),
                        2 * i + 1
                    )));
                }
            }
            given
        }
        None => (1..k)
            .map(|i| {
                let s = eta_solutions_ii(t, a, i)?;
                Ok(s.get(1).copied().unwrap_or(FieldElement::ZERO))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    // η_{k−r} sits at (r, k−1−r); the top-right corner stays zero
    let mut twist = FieldMatrix::zeros(t, k, k);
    for r in 1..k {
        twist.set(r, k - 1 - r, eta[k - r - 1]);
    }
    let lambda = elt(t, "lambda", &req.lambda)?.unwrap_or(t.one());
    if lambda.is_zero() {
        return Err(Error::usage("lambda must be nonzero"));
    }
    let code = TgrsCode::new(t, k, alpha, vec![lambda; n], twist)?;
    let ratio = t.div(t.pow(lambda, q + 1), code.u()[0])?;
    let provenance = Provenance {
        u: code.u().to_vec(),
        lambda: ratio,
        eta,
        elements: vec![("a".into(), a), ("v".into(), lambda)],
        integers: Vec::new(),
    };
    Ok((code, provenance))
}

fn build_iii(t: &FieldTower, req: &ConstructionRequest) -> Result<Built> {
    let e = t.e();
    if !e.is_multiple_of(2) {
        return Err(Error::precondition(format!("scheme III needs e even, got e = {e}")));
    }
    let q = t.q() as u64;
    let q1 = (t.p() as u64).pow(e / 2);
    let n = 2 * q1 as usize;
    let k = q1 as usize;
    if let Some(given) = req.n {
        if given != n {
            return Err(Error::precondition(format!("scheme III has n = 2 q1 = {n}, not {given}")));
        }
    }
    let a = elt(t, "a", &req.a)?.unwrap_or(t.one());
    if !t.in_subfield(a)? || t.pow(a, q1 + 1) != t.one() {
        return Err(Error::precondition(format!(
            "a = {} must lie in F_q with a^(q1+1) = 1",
            t.display(a)
        )));
    }
    let b = match elt(t, "b", &req.b)? {
        Some(b) => b,
        None => roots::admissible_set_with_exponent(t, q1, a)
            .into_iter()
            .find(|&b| !b.is_zero() && t.in_subfield(b).unwrap_or(false))
            .ok_or_else(|| Error::Internal("A_(a,q1) has no nonzero element".into()))?,
    };
    if b.is_zero() || !t.in_subfield(b)? || !roots::multiplicity_predicate_with_exponent(t, q1, a, b) {
        return Err(Error::precondition(format!(
            "b = {} must be a nonzero element of F_q with b^q1 + a^q1 b = 0",
            t.display(b)
        )));
    }
    let i_c = match (elt(t, "c", &req.c)?, req.i_c) {
        (Some(_), Some(_)) => return Err(Error::usage("give c or i_c, not both")),
        (Some(c), None) => roots::scale_index(t, c)?,
        (None, Some(i)) => {
            if i > q {
                return Err(Error::usage(format!("i_c = {i} must be at most q = {q}")));
            }
            i
        }
        (None, None) => 0,
    };
    let c = t.exp(i_c * (q - 1));
    let kc = t.exp(i_c);
    let first = roots::affine_roots_with_exponent(t, q1, a, t.zero());
    let second = roots::affine_roots_with_exponent(t, q1, a, t.neg(b));
    if first.len() != k || second.len() != k {
        return Err(Error::Internal(format!(
            "cosets have sizes {} and {}, expected {k}",
            first.len(),
            second.len()
        )));
    }
    if first.iter().any(|x| second.contains(x)) {
        return Err(Error::Internal("the two cosets overlap".into()));
    }
    let alpha: Vec<_> = first.iter().chain(&second).map(|&x| t.mul(kc, x)).collect();
    let lambda = elt(t, "lambda", &req.lambda)?;
    let (v, lambda) = solve_scaling_vector(t, &alpha, lambda)?;

    let sch = ThirdScheme {
        bstar: t.mul(t.exp(i_c * q1), b),
        ck: t.pow(c, k as u64),
    };
    let interior = k.saturating_sub(2);
    let mut diag = vec![FieldElement::ZERO; k];
    match etas(t, req, interior)? {
        Some(given) => {
            diag[1..k - 1].copy_from_slice(&given);
            for i in 1..k - 1 {
                let j = k - 1 - i;
                if !sch.holds(t, diag[i], diag[j]) {
                    return Err(Error::precondition(format!(
                        "eta_{} = {} and eta_{} = {} violate eta_i^q = -eta_j/(c^k (1 - b* eta_j))",
                        i + 1,
                        t.display(diag[i]),
                        j + 1,
                        t.display(diag[j])
                    )));
                }
            }
        }
        None => {
            // In odd characteristic the pair and middle equations hold one at
            // a time but not jointly, so only the middle slot is filled.
            let pairs = if t.p() == 2 { k / 2 } else { 1 };
            for i in 1..pairs {
                let j = k - 1 - i;
                let pick = t
                    .units()
                    .find(|&x| matches!(sch.partner(t, x), Ok(y) if sch.image(t, y).is_ok()))
                    .ok_or_else(|| Error::infeasible(format!("no eta for the pair ({}, {})", i + 1, j + 1)))?;
                diag[i] = pick;
                diag[j] = sch.partner(t, pick)?;
            }
            if k % 2 == 1 && k >= 3 {
                let mid = k / 2;
                diag[mid] = *sch
                    .middle_solutions(t)?
                    .first()
                    .ok_or_else(|| Error::infeasible("the self-paired eta equation has no nonzero solution"))?;
            }
        }
    }
    let twist = FieldMatrix::diag(t, &diag);
    let code = TgrsCode::new(t, k, alpha, v, twist)?;
    let provenance = Provenance {
        u: code.u().to_vec(),
        lambda,
        eta: diag,
        elements: vec![("a".into(), a), ("b".into(), b), ("c".into(), c), ("b_star".into(), sch.bstar)],
        integers: vec![("q1".into(), q1), ("i_c".into(), i_c)],
    };
    Ok((code, provenance))
}

fn build_iv(t: &FieldTower, req: &ConstructionRequest) -> Result<Built> {
    let q = t.q() as u64;
    if q.is_multiple_of(2) {
        return Err(Error::precondition("scheme IV needs q odd"));
    }
    let n = (q + 1) as usize;
    if let Some(given) = req.n {
        if given != n {
            return Err(Error::precondition(format!("scheme IV has n = q + 1 = {n}, not {given}")));
        }
    }
    let k = n / 2;
    let b = elt(t, "b", &req.b)?.unwrap_or(t.one());
    in_subfield_nonzero(t, "b", b)?;
    let alpha = t.nth_roots(b, n as u64)?;
    if alpha.len() != n {
        return Err(Error::Internal(format!("x^{n} - b has {} roots", alpha.len())));
    }
    let admissible = eta_solutions_iv(t, b, k)?;
    let eta = match etas(t, req, k)? {
        Some(given) => {
            for (i, e) in given.iter().enumerate() {
                if !admissible.contains(e) {
                    return Err(Error::precondition(format!(
                        "eta_{} = {} violates eta^(q+1) = -b^(-k)",
                        i + 1,
                        t.display(*e)
                    )));
                }
            }
            given
        }
        None => vec![admissible[0]; k],
    };
    let lambda = elt(t, "lambda", &req.lambda)?.unwrap_or(t.one());
    in_subfield_nonzero(t, "lambda", lambda)?;
    let v = vec![t.solve_norm_equation(lambda)?[0]; n];
    let code = TgrsCode::new(t, k, alpha, v, FieldMatrix::diag(t, &eta))?;
    let provenance = Provenance {
        u: code.u().to_vec(),
        lambda,
        eta,
        elements: vec![("b".into(), b)],
        integers: Vec::new(),
    };
    Ok((code, provenance))
}

fn build_v(t: &FieldTower, req: &ConstructionRequest) -> Result<Built> {
    if t.q().is_multiple_of(2) {
        return Err(Error::precondition("scheme V needs q odd"));
    }
    let (alpha, k, delta, tt) = multiplicative_points(t, req)?;
    let subsets = subset_count(2 * k, k);
    if subsets > MDS_SUBSET_LIMIT {
        return Err(Error::precondition(format!(
            "MDS certification needs {subsets} subset checks, above the limit {MDS_SUBSET_LIMIT}"
        )));
    }
    let admissible = eta_solutions_v(t)?;
    let eta = match etas(t, req, 1)? {
        Some(given) => {
            if !admissible.contains(&given[0]) {
                return Err(Error::precondition(format!(
                    "eta = {} must be nonzero with eta^q = -eta",
                    t.display(given[0])
                )));
            }
            given[0]
        }
        None => admissible[0],
    };
    let lambda = elt(t, "lambda", &req.lambda)?;
    let (v, lambda) = solve_scaling_vector(t, &alpha, lambda)?;
    let twist = FieldMatrix::from_fn(t, k, k, |_, _| eta);
    let code = TgrsCode::new(t, k, alpha, v, twist)?;
    let provenance = Provenance {
        u: code.u().to_vec(),
        lambda,
        eta: vec![eta],
        elements: vec![("delta".into(), delta)],
        integers: vec![("t".into(), tt)],
    };
    Ok((code, provenance))
}
