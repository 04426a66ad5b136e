//! Brute-force orders of small matrix groups over `F_p` and `F_{p^2}`.
//!
//! Nothing here touches the catalog or the order formula: the counts come
//! from enumerating matrices entry by entry and testing the defining
//! equations, so they serve as an independent check of [`crate::counting`].

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default cap on `q^(n^2)`, the number of candidate matrices.
pub const ENUMERATION_BUDGET: u128 = 100_000_000;

/// Element of a [`FiniteField`], encoded as `c_0 + c_1 p` for `c_0 + c_1 x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u16);

impl FieldElement {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// `F_p` or `F_p[x]/(f)` for a fixed irreducible quadratic `f`, with full operation tables.
#[derive(Clone)]
pub struct FiniteField {
    p: u16,
    k: u8,
    q: u16,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

/// `x^2 + a x + b` for the degree-2 extensions we support.
fn irreducible_quadratic(p: u16) -> Option<(u16, u16)> {
    match p {
        2 => Some((1, 1)), // x^2 + x + 1
        3 => Some((0, 1)), // x^2 + 1
        5 => Some((0, 2)), // x^2 + 2
        _ => None,
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl FiniteField {
    /// Field with `q` elements; `q` must be a prime below 256 or one of 4, 9, 25.
    pub fn new(q: u64) -> Result<Self> {
        if is_prime(q) {
            if q >= 256 {
                return Err(Error::UnsupportedField(format!("prime {q} too large for table arithmetic")));
            }
            return Ok(Self::prime(q as u16));
        }
        let root = (q as f64).sqrt().round() as u64;
        if root * root == q && is_prime(root) {
            if let Some(f) = irreducible_quadratic(root as u16) {
                return Self::quadratic(root as u16, f);
            }
        }
        Err(Error::UnsupportedField(format!("F_{q}")))
    }

    fn prime(p: u16) -> Self {
        let n = p as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = ((a + b) % n) as u16;
                mul[a * n + b] = ((a * b) % n) as u16;
            }
        }
        let neg = (0..n).map(|a| ((n - a) % n) as u16).collect();
        FiniteField { p, k: 1, q: p, add, mul, neg }
    }

    fn quadratic(p: u16, (fa, fb): (u16, u16)) -> Result<Self> {
        // irreducible iff no root in F_p
        if (0..p).any(|x| (x * x + fa * x + fb) % p == 0) {
            return Err(Error::UnsupportedField(format!("x^2+{fa}x+{fb} is reducible mod {p}")));
        }
        let pp = p as usize;
        let n = pp * pp;
        let split = |e: usize| (e % pp, e / pp);
        let join = |c0: usize, c1: usize| (c0 + c1 * pp) as u16;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let (a0, a1) = split(a);
                let (b0, b1) = split(b);
                add[a * n + b] = join((a0 + b0) % pp, (a1 + b1) % pp);
                // (a0 + a1 x)(b0 + b1 x), x^2 = -fa x - fb
                let c0 = a0 * b0;
                let c1 = a0 * b1 + a1 * b0;
                let c2 = a1 * b1;
                let r0 = (c0 + c2 * (pp - fb as usize)) % pp;
                let r1 = (c1 + c2 * (pp - fa as usize)) % pp;
                mul[a * n + b] = join(r0, r1);
            }
        }
        let neg = (0..n)
            .map(|e| {
                let (c0, c1) = split(e);
                join((pp - c0) % pp, (pp - c1) % pp)
            })
            .collect();
        Ok(FiniteField { p, k: 2, q: n as u16, add, mul, neg })
    }

    pub fn order(&self) -> u64 {
        self.q as u64
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u8 {
        self.k
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// Element with polynomial coefficients `[c_0, c_1]` (`c_1` must be 0 over a prime field).
    pub fn element(&self, coeffs: &[u16]) -> Result<FieldElement> {
        if coeffs.len() > self.k as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidArgument(format!("bad coefficients {coeffs:?} for {self:?}")));
        }
        let v = coeffs.iter().rev().fold(0u16, |acc, &c| acc * self.p + c);
        Ok(FieldElement(v))
    }

    pub fn coeffs(&self, e: FieldElement) -> Vec<u16> {
        let mut v = e.0;
        (0..self.k)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.index() * self.q as usize + b.index()])
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.index() * self.q as usize + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        self.elements().find(|&b| self.mul(a, b) == self.one())
    }

    /// Exhaustive check of the field axioms on the operation tables.
    pub fn check_field_axioms(&self) -> bool {
        let els: Vec<_> = self.elements().collect();
        let (zero, one) = (self.zero(), self.one());
        for &a in &els {
            if self.add(a, zero) != a || self.mul(a, one) != a || self.add(a, self.neg(a)) != zero {
                return false;
            }
            if a != zero && self.inv(a).is_none() {
                return false;
            }
            for &b in &els {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
                for &c in &els {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn dot(&self, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        x.iter().zip(y).fold(self.zero(), |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }
}

/// Square matrix over a [`FiniteField`], row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixOverFq {
    pub size: usize,
    pub entries: Vec<FieldElement>,
}

impl MatrixOverFq {
    pub fn new(size: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::InvalidArgument(format!("{} entries for a {size}x{size} matrix", entries.len())));
        }
        Ok(MatrixOverFq { size, entries })
    }

    pub fn get(&self, row: usize, col: usize) -> FieldElement {
        self.entries[row * self.size + col]
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self, field: &FiniteField) -> FieldElement {
        let n = self.size;
        let mut m = self.entries.clone();
        let mut det = field.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| m[r * n + col] != field.zero()) else {
                return field.zero();
            };
            if pivot != col {
                for c in 0..n {
                    m.swap(pivot * n + c, col * n + c);
                }
                det = field.neg(det);
            }
            let pv = m[col * n + col];
            det = field.mul(det, pv);
            let pinv = field.inv(pv).expect("nonzero pivot");
            for r in col + 1..n {
                let factor = field.mul(m[r * n + col], pinv);
                if factor == field.zero() {
                    continue;
                }
                for c in col..n {
                    let sub = field.mul(factor, m[col * n + c]);
                    m[r * n + c] = field.sub(m[r * n + c], sub);
                }
            }
        }
        det
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleFamily {
    Sl,
    Sp,
    So,
}

impl std::str::FromStr for OracleFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sl" => Ok(OracleFamily::Sl),
            "sp" => Ok(OracleFamily::Sp),
            "so" => Ok(OracleFamily::So),
            _ => Err(Error::InvalidArgument(format!("unknown oracle family {s:?}"))),
        }
    }
}

fn check_budget(n: usize, q: u64, budget: u128) -> Result<()> {
    let size = (q as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    Ok(())
}

/// All vectors in `F^n`, in lexicographic order.
fn all_vectors(field: &FiniteField, n: usize) -> Vec<Vec<FieldElement>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                field.elements().map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

/// Order of `SL_n(F_q)` by testing `det = 1` on every `n x n` matrix.
pub fn order_sl(n: usize, q: u64) -> Result<u64> {
    order_sl_with(n, q, ENUMERATION_BUDGET, true)
}

/// `parallel` splits the enumeration over the first row; the count does not depend on it.
pub fn order_sl_with(n: usize, q: u64, budget: u128, parallel: bool) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix size must be positive".into()));
    }
    check_budget(n, q, budget)?;
    let field = FiniteField::new(q)?;
    let vectors = all_vectors(&field, n);
    // Every matrix is visited: rows 0..n-1 by recursion, the last row by a
    // full loop against the cofactors of the fixed prefix.
    let count_from_first = |first: &Vec<FieldElement>| -> u64 {
        let mut rows = vec![first.clone()];
        count_sl_rows(&field, &vectors, n, &mut rows)
    };
    Ok(if parallel {
        vectors.par_iter().map(count_from_first).sum()
    } else {
        vectors.iter().map(count_from_first).sum()
    })
}

fn count_sl_rows(field: &FiniteField, vectors: &[Vec<FieldElement>], n: usize, rows: &mut Vec<Vec<FieldElement>>) -> u64 {
    if rows.len() == n {
        // only reached for n == 1
        return (rows[0][0] == field.one()) as u64;
    }
    if rows.len() < n - 1 {
        let mut total = 0;
        for v in vectors {
            rows.push(v.clone());
            total += count_sl_rows(field, vectors, n, rows);
            rows.pop();
        }
        return total;
    }
    // cofactors for Laplace expansion along the last row
    let cofactors: Vec<FieldElement> = (0..n)
        .map(|col| {
            let minor: Vec<FieldElement> = rows
                .iter()
                .flat_map(|r| r.iter().enumerate().filter(move |(c, _)| *c != col).map(|(_, &e)| e))
                .collect();
            let m = MatrixOverFq { size: n - 1, entries: minor };
            let d = if n == 1 { field.one() } else { m.det(field) };
            if (n - 1 + col) % 2 == 1 {
                field.neg(d)
            } else {
                d
            }
        })
        .collect();
    vectors.iter().filter(|last| field.dot(last, &cofactors) == field.one()).count() as u64
}

/// Column-by-column enumeration of matrices `M` with `M^T G M = G`, where `gram`
/// is the Gram matrix of a bilinear form. Columns are fixed one at a time and a
/// partial matrix is abandoned as soon as a pairing with an earlier column fails.
fn count_form_preserving(
    field: &FiniteField,
    gram: &[FieldElement],
    n: usize,
    vectors: &[Vec<FieldElement>],
    parallel: bool,
    accept: &(dyn Fn(&[Vec<FieldElement>]) -> bool + Sync),
) -> u64 {
    let form = |x: &[FieldElement], y: &[FieldElement]| -> FieldElement {
        let mut acc = field.zero();
        for i in 0..n {
            if x[i] == field.zero() {
                continue;
            }
            let row: FieldElement = (0..n).fold(field.zero(), |a, j| field.add(a, field.mul(gram[i * n + j], y[j])));
            acc = field.add(acc, field.mul(x[i], row));
        }
        acc
    };
    fn rec(
        n: usize,
        gram: &[FieldElement],
        vectors: &[Vec<FieldElement>],
        cols: &mut Vec<Vec<FieldElement>>,
        form: &dyn Fn(&[FieldElement], &[FieldElement]) -> FieldElement,
        accept: &(dyn Fn(&[Vec<FieldElement>]) -> bool + Sync),
    ) -> u64 {
        let b = cols.len();
        if b == n {
            return accept(cols) as u64;
        }
        let mut total = 0;
        for v in vectors {
            let ok = (0..=b).all(|a| {
                let ca: &[FieldElement] = if a == b { v } else { &cols[a] };
                form(ca, v) == gram[a * n + b] && (a == b || form(v, ca) == gram[b * n + a])
            });
            if ok {
                cols.push(v.clone());
                total += rec(n, gram, vectors, cols, form, accept);
                cols.pop();
            }
        }
        total
    }
    let start = |v: &Vec<FieldElement>| -> u64 {
        if form(v, v) != gram[0] {
            return 0;
        }
        let mut cols = vec![v.clone()];
        rec(n, gram, vectors, &mut cols, &form, accept)
    };
    if parallel {
        vectors.par_iter().map(start).sum()
    } else {
        vectors.iter().map(start).sum()
    }
}

/// Order of `Sp_n(F_q)` (`n` even) for `J = [[0, I], [-I, 0]]`.
pub fn order_sp(n: usize, q: u64) -> Result<u64> {
    order_sp_with(n, q, ENUMERATION_BUDGET, true)
}

pub fn order_sp_with(n: usize, q: u64, budget: u128, parallel: bool) -> Result<u64> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::InvalidArgument(format!("symplectic size must be even and positive, got {n}")));
    }
    check_budget(n, q, budget)?;
    let field = FiniteField::new(q)?;
    let h = n / 2;
    let mut gram = vec![field.zero(); n * n];
    for i in 0..h {
        gram[i * n + h + i] = field.one();
        gram[(h + i) * n + i] = field.neg(field.one());
    }
    let vectors = all_vectors(&field, n);
    Ok(count_form_preserving(&field, &gram, n, &vectors, parallel, &|_| true))
}

/// Order of `SO_n(F_q)` for the identity form (`n` odd, `q` odd): `M^T M = I`, `det M = 1`.
pub fn order_so(n: usize, q: u64) -> Result<u64> {
    order_so_with(n, q, ENUMERATION_BUDGET, true)
}

pub fn order_so_with(n: usize, q: u64, budget: u128, parallel: bool) -> Result<u64> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!("orthogonal size must be odd, got {n}")));
    }
    if q % 2 == 0 {
        return Err(Error::EvenCharacteristic(q));
    }
    check_budget(n, q, budget)?;
    let field = FiniteField::new(q)?;
    let mut gram = vec![field.zero(); n * n];
    for i in 0..n {
        gram[i * n + i] = field.one();
    }
    let vectors = all_vectors(&field, n);
    let det_one = |cols: &[Vec<FieldElement>]| {
        // det M = det M^T, so the column list can be read as rows
        let entries = cols.iter().flatten().copied().collect();
        MatrixOverFq { size: n, entries }.det(&field) == field.one()
    };
    Ok(count_form_preserving(&field, &gram, n, &vectors, parallel, &det_one))
}

/// Dispatch by family; `n` is the matrix size.
pub fn order(family: OracleFamily, n: usize, q: u64) -> Result<u64> {
    match family {
        OracleFamily::Sl => order_sl(n, q),
        OracleFamily::Sp => order_sp(n, q),
        OracleFamily::So => order_so(n, q),
    }
}
