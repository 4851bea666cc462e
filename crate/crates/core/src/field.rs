//! Arithmetic in the tower F_p ⊂ F_q ⊂ F_{q^2}.
//!
//! A [`FieldTower`] is F_p[x]/(f) for a monic irreducible `f` of degree
//! `m`, where `m = 2e` when the quadratic subfield structure is wanted
//! (q = p^e) or `m = e` for plain F_q work. Elements are small copyable
//! handles; every operation goes through the tower that owns them.
//!
//! Elements are stored as their rank in the canonical order: the
//! little-endian coefficient sequence (c_0, c_1, ..., c_{m-1}) compared
//! lexicographically. So `a < b` on [`FieldElement`] is exactly that order.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp_poly;

/// Towers larger than this are rejected; log tables are built in full.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const ADD_TABLE_LIMIT: u32 = 1024;

/// One element of a [`FieldTower`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    /// Rank of the element in the canonical order.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Wire form of a tower: `{"p": int, "e": int, "modulus": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpec {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
}

struct Tables {
    // exp has length 2N so that log sums need no reduction
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u16>>,
    primitive: FieldElement,
}

struct TowerData {
    p: u32,
    e: u32,
    m: u32,
    modulus: Vec<u32>,
    size: u32,
    // place[i] = p^(m-1-i): weight of coefficient i in the element rank
    place: Vec<u32>,
    tables: OnceLock<Tables>,
}

/// The field F_p[x]/(modulus), optionally viewed as F_{q^2} over F_q.
#[derive(Clone)]
pub struct FieldTower {
    data: Arc<TowerData>,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.p == other.data.p
                && self.data.e == other.data.e
                && self.data.modulus == other.data.modulus)
    }
}

impl Eq for FieldTower {}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.data.p)
            .field("e", &self.data.e)
            .field("modulus", &self.data.modulus)
            .finish()
    }
}

impl FieldTower {
    /// F_{q^2} with q = p^e, using the first irreducible modulus of degree 2e.
    pub fn hermitian(p: u32, e: u32) -> Result<Self> {
        Self::build(p, e, 2 * e, None)
    }

    /// Plain F_q with q = p^e (no designated subfield).
    pub fn prime_power(p: u32, e: u32) -> Result<Self> {
        Self::build(p, e, e, None)
    }

    /// Tower with an explicit monic modulus (little-endian, leading 1 last).
    /// Its degree must be `e` or `2e`.
    pub fn with_modulus(p: u32, e: u32, modulus: Vec<u32>) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        let m = (modulus.len() - 1) as u32;
        if m != e && m != 2 * e {
            return Err(Error::InvalidField(format!(
                "modulus degree {m} must equal e = {e} or 2e = {}",
                2 * e
            )));
        }
        Self::build(p, e, m, Some(modulus))
    }

    pub fn from_spec(spec: &TowerSpec) -> Result<Self> {
        Self::with_modulus(spec.p, spec.e, spec.modulus.clone())
    }

    pub fn spec(&self) -> TowerSpec {
        TowerSpec {
            p: self.data.p,
            e: self.data.e,
            modulus: self.data.modulus.clone(),
        }
    }

    fn build(p: u32, e: u32, m: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !fp_poly::is_prime(p) {
            return Err(Error::InvalidField(format!("p = {p} is not prime")));
        }
        if e == 0 || m == 0 {
            return Err(Error::InvalidField("degrees must be positive".into()));
        }
        let size = (p as u64).checked_pow(m).filter(|&s| s <= MAX_FIELD_SIZE);
        let Some(size) = size else {
            return Err(Error::InvalidField(format!(
                "field of size {p}^{m} exceeds the supported maximum {MAX_FIELD_SIZE}"
            )));
        };
        let modulus = match modulus {
            Some(f) => {
                if let Some(&c) = f.iter().find(|&&c| c >= p) {
                    return Err(Error::InvalidField(format!(
                        "modulus coefficient {c} not reduced mod {p}"
                    )));
                }
                if f[m as usize] != 1 {
                    return Err(Error::InvalidField("modulus must be monic".into()));
                }
                if !fp_poly::is_irreducible(&f, p) {
                    return Err(Error::InvalidField(format!(
                        "modulus {f:?} is not irreducible over F_{p}"
                    )));
                }
                f
            }
            None => first_irreducible(p, m),
        };
        let place = (0..m).map(|i| p.pow(m - 1 - i)).collect();
        Ok(FieldTower {
            data: Arc::new(TowerData {
                p,
                e,
                m,
                modulus,
                size: size as u32,
                place,
                tables: OnceLock::new(),
            }),
        })
    }

    pub fn p(&self) -> u32 {
        self.data.p
    }

    pub fn e(&self) -> u32 {
        self.data.e
    }

    /// Degree of the tower over F_p.
    pub fn degree(&self) -> u32 {
        self.data.m
    }

    /// q = p^e.
    pub fn q(&self) -> u32 {
        self.data.p.pow(self.data.e)
    }

    /// Number of elements, p^m.
    pub fn size(&self) -> u32 {
        self.data.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.data.modulus
    }

    /// True when the tower is quadratic over F_q (m = 2e).
    pub fn has_subfield(&self) -> bool {
        self.data.m == 2 * self.data.e
    }

    fn require_subfield(&self) -> Result<()> {
        if self.has_subfield() {
            Ok(())
        } else {
            Err(Error::usage(
                "tower has no designated subfield F_q (modulus degree must be 2e)",
            ))
        }
    }

    fn tables(&self) -> &Tables {
        self.data.tables.get_or_init(|| build_tables(&self.data))
    }

    // ---- element construction -------------------------------------------

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(self.data.place[0])
    }

    /// Image of the integer `n` in the prime field.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.data.p as i64;
        let c = n.rem_euclid(p) as u32;
        FieldElement(c * self.data.place[0])
    }

    /// Element with the given little-endian coefficients. Shorter slices are
    /// zero-padded; entries must lie in `[0, p)`.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.data.m as usize {
            return Err(Error::InvalidField(format!(
                "element has {} coefficients, tower degree is {}",
                coeffs.len(),
                self.data.m
            )));
        }
        let mut idx = 0u32;
        for (i, &c) in coeffs.iter().enumerate() {
            if c >= self.data.p {
                return Err(Error::InvalidField(format!(
                    "coefficient {c} out of range [0, {})",
                    self.data.p
                )));
            }
            idx += c * self.data.place[i];
        }
        Ok(FieldElement(idx))
    }

    /// Element with exactly `m` coefficients, as required on the wire.
    pub fn element_exact(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.data.m as usize {
            return Err(Error::InvalidField(format!(
                "element must have exactly {} coefficients, got {}",
                self.data.m,
                coeffs.len()
            )));
        }
        self.element(coeffs)
    }

    pub fn element_from_index(&self, index: u32) -> Result<FieldElement> {
        if index < self.data.size {
            Ok(FieldElement(index))
        } else {
            Err(Error::InvalidField(format!("element index {index} out of range")))
        }
    }

    /// Little-endian coefficients, always of length `m`.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        let p = self.data.p;
        self.data.place.iter().map(|&w| x.0 / w % p).collect()
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.data.size).map(FieldElement)
    }

    pub fn units(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.data.size).map(FieldElement)
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        x.0 < self.data.size
    }

    /// Human-readable form like `2+x+x^3`.
    pub fn display(&self, x: FieldElement) -> String {
        let c = self.coeffs(x);
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| match (i, v) {
                (0, v) => v.to_string(),
                (1, 1) => "x".into(),
                (1, v) => format!("{v}x"),
                (i, 1) => format!("x^{i}"),
                (i, v) => format!("{v}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    // ---- arithmetic -----------------------------------------------------

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let d = &*self.data;
        if d.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let t = self.tables();
        if let Some(add) = &t.add {
            return FieldElement(add[(a.0 * d.size + b.0) as usize] as u32);
        }
        add_digits(d.p, d.m, a.0, b.0)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.data.p == 2 {
            return a;
        }
        FieldElement(self.tables().neg[a.0 as usize])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = self.tables();
        FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroDivision);
        }
        let t = self.tables();
        let n = self.data.size - 1;
        Ok(FieldElement(t.exp[((n - t.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^n` for a non-negative exponent. `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, n: u64) -> FieldElement {
        if n == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = self.tables();
        let order = (self.data.size - 1) as u64;
        let l = t.log[a.0 as usize] as u64 * (n % order) % order;
        FieldElement(t.exp[l as usize])
    }

    /// `a^n` for any integer exponent; negative powers need `a != 0`.
    pub fn pow_signed(&self, a: FieldElement, n: i64) -> Result<FieldElement> {
        if n >= 0 {
            Ok(self.pow(a, n as u64))
        } else {
            Ok(self.pow(self.inv(a)?, n.unsigned_abs()))
        }
    }

    /// Sum of a sequence of elements.
    pub fn sum<I: IntoIterator<Item = FieldElement>>(&self, items: I) -> FieldElement {
        items.into_iter().fold(self.zero(), |acc, x| self.add(acc, x))
    }

    pub fn product<I: IntoIterator<Item = FieldElement>>(&self, items: I) -> FieldElement {
        items.into_iter().fold(self.one(), |acc, x| self.mul(acc, x))
    }

    /// The absolute Frobenius x ↦ x^p, computed coefficient-wise on
    /// powers of the generator.
    pub fn frobenius_p(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.data.p as u64)
    }

    /// x ↦ x^q, the generator of Gal(F_{q^2}/F_q), as e applications of
    /// the p-power Frobenius.
    pub fn conjugate(&self, x: FieldElement) -> Result<FieldElement> {
        self.require_subfield()?;
        Ok((0..self.data.e).fold(x, |y, _| self.frobenius_p(y)))
    }

    /// Relative norm and trace `(x^{q+1}, x + x^q)` down to F_q.
    pub fn norm_trace(&self, x: FieldElement) -> Result<(FieldElement, FieldElement)> {
        let xq = self.conjugate(x)?;
        Ok((self.mul(x, xq), self.add(x, xq)))
    }

    pub fn norm(&self, x: FieldElement) -> Result<FieldElement> {
        Ok(self.norm_trace(x)?.0)
    }

    /// Membership in F_q, the fixed field of [`conjugate`](Self::conjugate).
    pub fn in_subfield(&self, x: FieldElement) -> Result<bool> {
        Ok(self.conjugate(x)? == x)
    }

    pub fn subfield_elements(&self) -> Result<Vec<FieldElement>> {
        self.require_subfield()?;
        let q = self.q() as u64;
        Ok(self.elements().filter(|&x| self.pow(x, q) == x).collect())
    }

    // ---- multiplicative structure ---------------------------------------

    /// Smallest element (canonical order) generating the unit group.
    pub fn primitive_element(&self) -> FieldElement {
        self.tables().primitive
    }

    /// Discrete logarithm to the base [`primitive_element`](Self::primitive_element).
    pub fn log(&self, x: FieldElement) -> Option<u32> {
        if x.0 == 0 {
            None
        } else {
            Some(self.tables().log[x.0 as usize])
        }
    }

    /// `ε^i` for the primitive element ε.
    pub fn exp(&self, i: u64) -> FieldElement {
        let n = (self.data.size - 1) as u64;
        FieldElement(self.tables().exp[(i % n) as usize])
    }

    /// Multiplicative order; zero has no order.
    pub fn order(&self, x: FieldElement) -> Option<u64> {
        let l = self.log(x)? as u64;
        let n = (self.data.size - 1) as u64;
        Some(n / gcd(l, n))
    }

    /// Every `x` in the tower with `x^n = c`, in canonical order.
    pub fn nth_roots(&self, c: FieldElement, n: u64) -> Result<Vec<FieldElement>> {
        if n == 0 {
            return Err(Error::usage("root exponent must be positive"));
        }
        let Some(l) = self.log(c) else {
            return Ok(vec![FieldElement::ZERO]);
        };
        let order = (self.data.size - 1) as u64;
        let g = gcd(n % order, order);
        let g = if g == 0 { order } else { g };
        if !(l as u64).is_multiple_of(g) {
            return Ok(Vec::new());
        }
        // n' j ≡ l' (mod N'), then lift by multiples of N'
        let (np, lp, op) = ((n % order) / g, l as u64 / g, order / g);
        let j0 = if op == 1 {
            0
        } else {
            lp % op * mod_inverse(np % op, op) % op
        };
        let mut roots: Vec<FieldElement> = (0..g).map(|s| self.exp(j0 + s * op)).collect();
        roots.sort();
        Ok(roots)
    }

    /// All solutions of `x^{q+1} = c`. `c` must lie in F_q.
    pub fn solve_norm_equation(&self, c: FieldElement) -> Result<Vec<FieldElement>> {
        if !self.in_subfield(c)? {
            return Err(Error::NotInSubfield(self.coeffs(c)));
        }
        self.nth_roots(c, self.q() as u64 + 1)
    }
}

fn add_digits(p: u32, m: u32, a: u32, b: u32) -> FieldElement {
    let (mut x, mut y) = (a, b);
    let mut out = 0;
    let mut w = 1;
    for _ in 0..m {
        out += (x % p + y % p) % p * w;
        w *= p;
        x /= p;
        y /= p;
    }
    FieldElement(out)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    old_s.rem_euclid(m as i128) as u64
}

/// First monic irreducible of degree `m`, scanning (c_0, ..., c_{m-1})
/// lexicographically.
fn first_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = p.pow(m);
    for rank in 0..count {
        let mut f: Vec<u32> = (0..m).map(|i| rank / p.pow(m - 1 - i) % p).collect();
        f.push(1);
        if fp_poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn build_tables(d: &TowerData) -> Tables {
    let p = d.p;
    let m = d.m as usize;
    let to_poly = |idx: u32| -> Vec<u32> { d.place.iter().map(|&w| idx / w % p).collect() };
    let from_poly = |c: &[u32]| -> u32 { c.iter().zip(&d.place).map(|(&c, &w)| c * w).sum() };
    let n = (d.size - 1) as u64;
    let factors = prime_factors(n);

    let slow_pow = |base: &[u32], mut e: u64| -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_poly::mul_mod(&acc, &b, &d.modulus, p);
            }
            b = fp_poly::mul_mod(&b, &b, &d.modulus, p);
            e >>= 1;
        }
        acc
    };
    let is_one = |c: &[u32]| c.len() == 1 && c[0] == 1;

    let primitive = (1..d.size)
        .find(|&idx| {
            let g = to_poly(idx);
            factors.iter().all(|&r| !is_one(&slow_pow(&g, n / r)))
        })
        .expect("unit group is cyclic");

    let g = to_poly(primitive);
    let mut exp = Vec::with_capacity(2 * n as usize);
    let mut log = vec![0u32; d.size as usize];
    let mut cur = vec![1u32];
    for i in 0..n {
        let mut padded = cur.clone();
        padded.resize(m, 0);
        let idx = from_poly(&padded);
        exp.push(idx);
        log[idx as usize] = i as u32;
        cur = fp_poly::mul_mod(&cur, &g, &d.modulus, p);
    }
    for i in 0..n as usize {
        exp.push(exp[i]);
    }

    let neg = (0..d.size)
        .map(|idx| {
            let c: Vec<u32> = to_poly(idx).into_iter().map(|v| (p - v) % p).collect();
            from_poly(&c)
        })
        .collect();

    let add = (p != 2 && d.size <= ADD_TABLE_LIMIT).then(|| {
        let mut t = Vec::with_capacity((d.size * d.size) as usize);
        for a in 0..d.size {
            for b in 0..d.size {
                t.push(add_digits(p, d.m, a, b).0 as u16);
            }
        }
        t
    });

    Tables {
        exp,
        log,
        neg,
        add,
        primitive: FieldElement(primitive),
    }
}
