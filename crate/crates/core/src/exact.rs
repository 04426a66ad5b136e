//! Exact rationals and the quadratic field `Q(ω)`, `ω² + ω + 1 = 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::catalog::RootOfUnity;
use crate::error::{Error, Result};

pub type BigRational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `q^(-e)` as an exact rational.
pub fn inv_pow(q: u64, e: u64) -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(q), e as usize))
}

/// `{"num": "...", "den": "..."}` with decimal-string components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalJson {
    fn from(x: &BigRational) -> Self {
        RationalJson { num: x.numer().to_string(), den: x.denom().to_string() }
    }
}

/// Integers render without a denominator, everything else as `num/den`.
pub fn exact_string(x: &BigRational) -> String {
    x.to_string()
}

/// Scientific-notation approximation with `digits` significant digits, rounded half away from zero.
pub fn decimal_approx(x: &BigRational, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return "0".to_string();
    }
    let sign = if x.is_negative() { "-" } else { "" };
    let num = x.numer().abs();
    let den = x.denom().clone();
    let ten = BigInt::from(10);
    // Estimate the decimal exponent from digit counts, then correct by at most one.
    let mut exp = num.to_string().len() as i64 - den.to_string().len() as i64;
    let in_range = |e: i64| -> std::cmp::Ordering {
        // compare num/den against 10^e
        let (l, r) = if e >= 0 {
            (num.clone(), &den * num_traits::pow(ten.clone(), e as usize))
        } else {
            (&num * num_traits::pow(ten.clone(), (-e) as usize), den.clone())
        };
        l.cmp(&r)
    };
    while in_range(exp) == std::cmp::Ordering::Less {
        exp -= 1;
    }
    while in_range(exp + 1) != std::cmp::Ordering::Less {
        exp += 1;
    }
    // mantissa digits = round(x * 10^(digits-1-exp))
    let shift = digits as i64 - 1 - exp;
    let (n, d) = if shift >= 0 {
        (&num * num_traits::pow(ten.clone(), shift as usize), den)
    } else {
        (num, &den * num_traits::pow(ten.clone(), (-shift) as usize))
    };
    let (mut m, r) = n.div_rem(&d);
    if r * 2 >= d {
        m += 1;
    }
    let mut m = m.to_string();
    if m.len() > digits {
        // rounding carried into a new digit, e.g. 9.99 -> 10.0
        m.truncate(digits);
        exp += 1;
    }
    let mantissa = if digits == 1 { m } else { format!("{}.{}", &m[..1], &m[1..]) };
    if exp == 0 {
        format!("{sign}{mantissa}")
    } else {
        format!("{sign}{mantissa}e{exp}")
    }
}

/// `a + b ω` with rational `a, b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic3 {
    pub a: BigRational,
    pub b: BigRational,
}

impl Cyclotomic3 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Cyclotomic3 { a, b }
    }

    pub fn zero() -> Self {
        Cyclotomic3::from(BigRational::zero())
    }

    pub fn one() -> Self {
        Cyclotomic3::from(BigRational::one())
    }

    /// The fixed primitive cube root of unity.
    pub fn omega() -> Self {
        Cyclotomic3::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Complex conjugation, `ω ↦ ω² = -1 - ω`.
    pub fn conj(&self) -> Self {
        Cyclotomic3::new(&self.a - &self.b, -&self.b)
    }

    /// Field norm `a² - ab + b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("division by zero in Q(ω)".into()));
        }
        let n = self.norm();
        let c = self.conj();
        Ok(Cyclotomic3::new(c.a / &n, c.b / n))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclotomic3::new(&self.a * r, &self.b * r)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclotomic3::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl From<BigRational> for Cyclotomic3 {
    fn from(a: BigRational) -> Self {
        Cyclotomic3 { a, b: BigRational::zero() }
    }
}

impl fmt::Display for Cyclotomic3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + ({})ω", self.a, self.b)
        }
    }
}

impl Add for &Cyclotomic3 {
    type Output = Cyclotomic3;
    fn add(self, rhs: &Cyclotomic3) -> Cyclotomic3 {
        Cyclotomic3::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &Cyclotomic3 {
    type Output = Cyclotomic3;
    fn sub(self, rhs: &Cyclotomic3) -> Cyclotomic3 {
        Cyclotomic3::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Neg for &Cyclotomic3 {
    type Output = Cyclotomic3;
    fn neg(self) -> Cyclotomic3 {
        Cyclotomic3::new(-&self.a, -&self.b)
    }
}

impl Mul for &Cyclotomic3 {
    type Output = Cyclotomic3;
    fn mul(self, rhs: &Cyclotomic3) -> Cyclotomic3 {
        cyc_mul(self, rhs)
    }
}

impl Add for Cyclotomic3 {
    type Output = Cyclotomic3;
    fn add(self, rhs: Cyclotomic3) -> Cyclotomic3 {
        &self + &rhs
    }
}

impl Sub for Cyclotomic3 {
    type Output = Cyclotomic3;
    fn sub(self, rhs: Cyclotomic3) -> Cyclotomic3 {
        &self - &rhs
    }
}

impl Mul for Cyclotomic3 {
    type Output = Cyclotomic3;
    fn mul(self, rhs: Cyclotomic3) -> Cyclotomic3 {
        cyc_mul(&self, &rhs)
    }
}

impl Neg for Cyclotomic3 {
    type Output = Cyclotomic3;
    fn neg(self) -> Cyclotomic3 {
        -&self
    }
}

/// `(a + bω)(c + dω) = (ac - bd) + (ad + bc - bd)ω`.
pub fn cyc_mul(x: &Cyclotomic3, y: &Cyclotomic3) -> Cyclotomic3 {
    let bd = &x.b * &y.b;
    Cyclotomic3::new(&x.a * &y.a - &bd, &x.a * &y.b + &x.b * &y.a - bd)
}

/// The image of a root of unity of order dividing 6 in `Q(ω)`.
pub fn embed_root(r: RootOfUnity) -> Cyclotomic3 {
    // sixth roots: ζ^k with ζ = -ω² = 1 + ω
    let k6 = r.numerator() * (6 / r.order().max(1));
    assert!(6 % r.order() == 0, "root of unity of order {} is not in Q(ω)", r.order());
    let (a, b) = match k6 % 6 {
        0 => (1, 0),
        1 => (1, 1),
        2 => (0, 1),
        3 => (-1, 0),
        4 => (-1, -1),
        5 => (0, -1),
        _ => unreachable!(),
    };
    Cyclotomic3::new(int(a), int(b))
}

/// The rational value of `x`, failing if it has an `ω` component.
pub fn rational_part(x: &Cyclotomic3) -> Result<BigRational> {
    if x.is_rational() {
        Ok(x.a.clone())
    } else {
        Err(Error::NotRational(x.to_string()))
    }
}
