//! Solution sets of x^q − a·x − b = 0 in F_{q^2} and their coset structure.
//!
//! Most functions come in two flavours: the public one fixes the exponent
//! to the tower's q, the `*_with_exponent` one takes any power of p, which
//! the q₁ = √q construction needs.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};

/// U_{(a,q)}^{b}: all x with x^q = a·x + b, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    pub a: FieldElement,
    pub b: FieldElement,
    pub roots: Vec<FieldElement>,
}

/// The partition of the field into the cosets U_{(a,q)}^{b}, b ∈ A_{(a,q)}.
#[derive(Clone, Debug)]
pub struct CosetPartition {
    pub a: FieldElement,
    /// A_{(a,q)} = {b : b^q + a^q·b = 0}.
    pub admissible: Vec<FieldElement>,
    pub cosets: BTreeMap<FieldElement, Vec<FieldElement>>,
}

/// Exhaustive scan for x^r = a·x + b.
pub fn affine_roots_with_exponent(
    t: &FieldTower,
    r: u64,
    a: FieldElement,
    b: FieldElement,
) -> Vec<FieldElement> {
    t.elements()
        .filter(|&x| t.pow(x, r) == t.add(t.mul(a, x), b))
        .collect()
}

pub fn affine_frobenius_roots(t: &FieldTower, a: FieldElement, b: FieldElement) -> Result<RootSet> {
    require_quadratic(t)?;
    Ok(RootSet {
        a,
        b,
        roots: affine_roots_with_exponent(t, t.q() as u64, a, b),
    })
}

/// `a^{r+1} = 1 ∧ b^r + a^r·b = 0`.
pub fn multiplicity_predicate_with_exponent(
    t: &FieldTower,
    r: u64,
    a: FieldElement,
    b: FieldElement,
) -> bool {
    t.pow(a, r + 1) == t.one() && t.add(t.pow(b, r), t.mul(t.pow(a, r), b)).is_zero()
}

/// True exactly when x^q = a·x + b has more than one root.
pub fn multiplicity_predicate(t: &FieldTower, a: FieldElement, b: FieldElement) -> Result<bool> {
    require_quadratic(t)?;
    Ok(multiplicity_predicate_with_exponent(t, t.q() as u64, a, b))
}

/// A_{(a,r)} = {b : b^r + a^r·b = 0}.
pub fn admissible_set_with_exponent(t: &FieldTower, r: u64, a: FieldElement) -> Vec<FieldElement> {
    let ar = t.pow(a, r);
    t.elements()
        .filter(|&b| t.add(t.pow(b, r), t.mul(ar, b)).is_zero())
        .collect()
}

/// Computes A_{(a,q)} and every coset U_{(a,q)}^{b}, then checks that the
/// cosets are pairwise disjoint, all of size q, and cover the field.
pub fn admissible_set_and_partition(t: &FieldTower, a: FieldElement) -> Result<CosetPartition> {
    require_quadratic(t)?;
    let q = t.q() as u64;
    if t.pow(a, q + 1) != t.one() {
        return Err(Error::precondition(format!(
            "a = {} does not satisfy a^(q+1) = 1",
            t.display(a)
        )));
    }
    let admissible = admissible_set_with_exponent(t, q, a);
    let mut cosets = BTreeMap::new();
    let mut covered = BTreeSet::new();
    for &b in &admissible {
        let roots = affine_roots_with_exponent(t, q, a, b);
        if roots.len() != q as usize {
            return Err(Error::Internal(format!(
                "coset for b = {} has {} elements, expected {q}",
                t.display(b),
                roots.len()
            )));
        }
        for &x in &roots {
            if !covered.insert(x) {
                return Err(Error::Internal(format!(
                    "cosets overlap at {}",
                    t.display(x)
                )));
            }
        }
        cosets.insert(b, roots);
    }
    if covered.len() != t.size() as usize {
        return Err(Error::Internal(format!(
            "cosets cover {} of {} elements",
            covered.len(),
            t.size()
        )));
    }
    Ok(CosetPartition {
        a,
        admissible,
        cosets,
    })
}

/// Smallest i ≥ 0 with ε^{i(q−1)} = a, checked against the set identity
/// U_{(a,q)}^{0} = ε^i · U_{(1,q)}^{0}.
pub fn scale_index(t: &FieldTower, a: FieldElement) -> Result<u64> {
    require_quadratic(t)?;
    let q = t.q() as u64;
    if t.pow(a, q + 1) != t.one() {
        return Err(Error::precondition(format!(
            "a = {} does not satisfy a^(q+1) = 1",
            t.display(a)
        )));
    }
    let i = (0..=q)
        .find(|&i| t.exp(i * (q - 1)) == a)
        .ok_or_else(|| Error::Internal("no scale index found".into()))?;
    let scale = t.exp(i);
    let base = affine_roots_with_exponent(t, q, t.one(), t.zero());
    let mut scaled: Vec<_> = base.iter().map(|&x| t.mul(scale, x)).collect();
    scaled.sort();
    if scaled != affine_roots_with_exponent(t, q, a, t.zero()) {
        return Err(Error::Internal(format!(
            "ε^{i}·U(1,q) differs from U(a,q) for a = {}",
            t.display(a)
        )));
    }
    Ok(i)
}

fn require_quadratic(t: &FieldTower) -> Result<()> {
    if t.has_subfield() {
        Ok(())
    } else {
        Err(Error::usage("root sets need a quadratic tower F_q ⊂ F_{q^2}"))
    }
}
