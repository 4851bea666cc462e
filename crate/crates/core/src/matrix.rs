//! Dense matrices over a [`FieldTower`] and the special matrices used by
//! the code constructions.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};
use crate::poly;

/// Row-major dense matrix; every entry belongs to `tower`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    tower: FieldTower,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: FieldMatrix,
    pub pivots: Vec<usize>,
}

impl FieldMatrix {
    pub fn new(tower: &FieldTower, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(x) = data.iter().find(|x| !tower.contains(**x)) {
            return Err(Error::InvalidField(format!("entry {x:?} outside the tower")));
        }
        Ok(FieldMatrix {
            tower: tower.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(tower: &FieldTower, rows: &[Vec<FieldElement>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(tower, rows.len(), cols, rows.concat())
    }

    pub fn zeros(tower: &FieldTower, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            tower: tower.clone(),
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn from_fn(
        tower: &FieldTower,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        FieldMatrix {
            tower: tower.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn identity(tower: &FieldTower, k: usize) -> Self {
        let one = tower.one();
        Self::from_fn(tower, k, k, |r, c| if r == c { one } else { FieldElement::ZERO })
    }

    /// Ones on the anti-diagonal.
    pub fn reversal(tower: &FieldTower, k: usize) -> Self {
        let one = tower.one();
        Self::from_fn(tower, k, k, |r, c| {
            if r + c + 1 == k {
                one
            } else {
                FieldElement::ZERO
            }
        })
    }

    /// Row r is (α_1^r, ..., α_n^r), r = 0..rows.
    pub fn vandermonde(tower: &FieldTower, alpha: &[FieldElement], rows: usize) -> Self {
        Self::from_fn(tower, rows, alpha.len(), |r, c| tower.pow(alpha[c], r as u64))
    }

    pub fn diag(tower: &FieldTower, v: &[FieldElement]) -> Self {
        let n = v.len();
        Self::from_fn(tower, n, n, |r, c| if r == c { v[r] } else { FieldElement::ZERO })
    }

    /// Lower-triangular Toeplitz matrix T(α) built from the coefficients
    /// c_0..c_{n-1} of ∏(x − α_i) = Σ c_j x^{n−j}.
    pub fn toeplitz_t(tower: &FieldTower, alpha: &[FieldElement]) -> Result<Self> {
        poly::check_distinct(alpha)?;
        let c = poly::monic_from_roots(tower, alpha);
        let n = alpha.len();
        Ok(Self::from_fn(tower, n, n, |r, col| {
            if col <= r {
                c[r - col]
            } else {
                FieldElement::ZERO
            }
        }))
    }

    /// UA_k(b): upper triangular with entry (i, j) = C(j, i)·b^{j−i}
    /// (0-based), binomials taken from Pascal's triangle mod p.
    pub fn pascal_ua(tower: &FieldTower, k: usize, b: FieldElement) -> Self {
        let p = tower.p();
        let mut binom = vec![vec![0u32; k]; k];
        for j in 0..k {
            binom[j][0] = 1 % p;
            for i in 1..=j {
                binom[j][i] = (binom[j - 1][i - 1] + if i < j { binom[j - 1][i] } else { 0 }) % p;
            }
        }
        Self::from_fn(tower, k, k, |i, j| {
            if i <= j {
                tower.mul(tower.from_int(binom[j][i] as i64), tower.pow(b, (j - i) as u64))
            } else {
                FieldElement::ZERO
            }
        })
    }

    // ---- accessors ------------------------------------------------------

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: FieldElement) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn same_tower(&self, other: &FieldMatrix) -> Result<()> {
        if self.tower == other.tower {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    // ---- elementary algebra ---------------------------------------------

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.tower, self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<Self> {
        self.same_tower(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let t = &self.tower;
        let mut out = Self::zeros(t, self.rows, other.cols);
        for r in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(r, l);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = t.add(out.data[idx], t.mul(a, other.get(l, c)));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &FieldMatrix) -> Result<Self> {
        self.zip_with(other, |t, a, b| t.add(a, b))
    }

    pub fn sub(&self, other: &FieldMatrix) -> Result<Self> {
        self.zip_with(other, |t, a, b| t.sub(a, b))
    }

    fn zip_with(
        &self,
        other: &FieldMatrix,
        f: impl Fn(&FieldTower, FieldElement, FieldElement) -> FieldElement,
    ) -> Result<Self> {
        self.same_tower(other)?;
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "{:?} vs {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(&self.tower, a, b))
            .collect();
        Ok(FieldMatrix {
            tower: self.tower.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn map(&self, f: impl Fn(FieldElement) -> FieldElement) -> Self {
        FieldMatrix {
            tower: self.tower.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| self.tower.neg(x))
    }

    pub fn scale(&self, s: FieldElement) -> Self {
        self.map(|x| self.tower.mul(s, x))
    }

    /// Entrywise x ↦ x^q.
    pub fn pow_q(&self) -> Result<Self> {
        let t = &self.tower;
        let data = self
            .data
            .iter()
            .map(|&x| t.conjugate(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(FieldMatrix {
            tower: t.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &FieldMatrix) -> Result<Self> {
        self.same_tower(other)?;
        if self.rows != other.rows {
            return Err(Error::Shape("hstack needs equal row counts".into()));
        }
        Ok(Self::from_fn(&self.tower, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c)
            } else {
                other.get(r, c - self.cols)
            }
        }))
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(&self.tower, self.rows, cols.len(), |r, c| self.get(r, cols[c]))
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(&self.tower, rows.len(), self.cols, |r, c| self.get(rows[r], c))
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.rows {
            return Err(Error::Shape(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let t = &self.tower;
        Ok((0..self.cols)
            .map(|c| t.sum((0..self.rows).map(|r| t.mul(v[r], self.get(r, c)))))
            .collect())
    }

    // ---- elimination ----------------------------------------------------

    /// Reduced row echelon form. Pivots are the first nonzero entry found
    /// scanning each column top to bottom.
    pub fn rref(&self) -> Echelon {
        let t = &self.tower;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = t.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let x = m.get(row, c);
                m.set(row, c, t.mul(inv, x));
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col);
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let x = t.sub(m.get(r, c), t.mul(f, m.get(row, c)));
                    m.set(r, c, x);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// The nonzero rows of the reduced echelon form: a canonical basis of
    /// the row space.
    pub fn row_space_basis(&self) -> Self {
        let e = self.rref();
        let r = e.pivots.len();
        Self::from_fn(&self.tower, r, self.cols, |i, c| e.matrix.get(i, c))
    }

    pub fn det(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let t = &self.tower;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = t.one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(FieldElement::ZERO);
            };
            if pr != col {
                m.swap_rows(pr, col);
                det = t.neg(det);
            }
            let pivot = m.get(col, col);
            det = t.mul(det, pivot);
            let inv = t.inv(pivot)?;
            for r in col + 1..n {
                let f = t.mul(m.get(r, col), inv);
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let x = t.sub(m.get(r, c), t.mul(f, m.get(col, c)));
                    m.set(r, c, x);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(&self.tower, n))?;
        let e = aug.rref();
        let rank = e.pivots.iter().take_while(|&&c| c < n).count();
        if rank < n {
            return Err(Error::Singular { rank, size: n });
        }
        Ok(Self::from_fn(&self.tower, n, n, |r, c| e.matrix.get(r, n + c)))
    }

    /// X with `self · X = rhs`, for square invertible `self`.
    pub fn solve(&self, rhs: &FieldMatrix) -> Result<Self> {
        self.inverse()?.mul(rhs)
    }

    /// Basis (as rows) of {x : self · xᵀ = 0}; `basis · selfᵀ = 0`.
    pub fn null_space(&self) -> Self {
        let t = &self.tower;
        let e = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        Self::from_fn(t, free.len(), self.cols, |i, c| {
            let f = free[i];
            if c == f {
                t.one()
            } else if let Some(pr) = e.pivots.iter().position(|&pc| pc == c) {
                t.neg(e.matrix.get(pr, f))
            } else {
                FieldElement::ZERO
            }
        })
    }
}

/// Same row space: equal reduced echelon forms after dropping zero rows.
pub fn codes_equal(a: &FieldMatrix, b: &FieldMatrix) -> bool {
    a.cols() == b.cols() && a.tower() == b.tower() && a.row_space_basis() == b.row_space_basis()
}
