//! Polynomial helpers over a tower. Coefficients are listed from the
//! leading term down: `[c_0, c_1, ..., c_n]` means Σ c_j x^{n−j}.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};

pub(crate) fn check_distinct(points: &[FieldElement]) -> Result<()> {
    let mut seen = HashMap::with_capacity(points.len());
    for (i, x) in points.iter().enumerate() {
        if let Some(&j) = seen.get(x) {
            return Err(Error::RepeatedPoint(j, i));
        }
        seen.insert(*x, i);
    }
    Ok(())
}

/// Coefficients of ∏(x − r) in descending order; the first entry is 1.
pub fn monic_from_roots(t: &FieldTower, roots: &[FieldElement]) -> Vec<FieldElement> {
    let mut c = vec![t.one()];
    for &r in roots {
        let mut next = c.clone();
        next.push(FieldElement::ZERO);
        for (j, &cj) in c.iter().enumerate() {
            next[j + 1] = t.sub(next[j + 1], t.mul(r, cj));
        }
        c = next;
    }
    c
}

/// Horner evaluation of a descending coefficient list.
pub fn eval_desc(t: &FieldTower, coeffs: &[FieldElement], x: FieldElement) -> FieldElement {
    coeffs
        .iter()
        .fold(FieldElement::ZERO, |acc, &c| t.add(t.mul(acc, x), c))
}

/// Formal derivative of a descending coefficient list.
pub fn derivative_desc(t: &FieldTower, coeffs: &[FieldElement]) -> Vec<FieldElement> {
    let n = coeffs.len().saturating_sub(1);
    coeffs[..n]
        .iter()
        .enumerate()
        .map(|(j, &c)| t.mul(t.from_int((n - j) as i64), c))
        .collect()
}
