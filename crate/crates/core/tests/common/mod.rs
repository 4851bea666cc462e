#![allow(dead_code)]

use rand::seq::index::sample;
use rand::Rng;
use tgrs_core::{FieldElement, FieldMatrix, FieldTower, TgrsCode};

pub fn random_element<R: Rng>(t: &FieldTower, rng: &mut R) -> FieldElement {
    t.element_from_index(rng.random_range(0..t.size())).unwrap()
}

pub fn random_unit<R: Rng>(t: &FieldTower, rng: &mut R) -> FieldElement {
    t.element_from_index(rng.random_range(1..t.size())).unwrap()
}

pub fn random_matrix<R: Rng>(t: &FieldTower, rows: usize, cols: usize, rng: &mut R) -> FieldMatrix {
    let data = (0..rows * cols).map(|_| random_element(t, rng)).collect();
    FieldMatrix::new(t, rows, cols, data).unwrap()
}

/// A random [n, k] code: distinct points, nonzero multipliers and a twist
/// whose entries are zero about half the time.
pub fn random_code<R: Rng>(t: &FieldTower, n: usize, k: usize, rng: &mut R) -> TgrsCode {
    let alpha = sample(rng, t.size() as usize, n)
        .into_iter()
        .map(|i| t.element_from_index(i as u32).unwrap())
        .collect();
    let v = (0..n).map(|_| random_unit(t, rng)).collect();
    let mut twist = FieldMatrix::zeros(t, k, n - k);
    for r in 0..k {
        for c in 0..n - k {
            if rng.random_bool(0.5) {
                twist.set(r, c, random_element(t, rng));
            }
        }
    }
    TgrsCode::new(t, k, alpha, v, twist).unwrap()
}

/// Shortcut for elements of a prime field or small integers.
pub fn ints(t: &FieldTower, v: &[i64]) -> Vec<FieldElement> {
    v.iter().map(|&x| t.from_int(x)).collect()
}
