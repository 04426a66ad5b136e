//! Zeta functions of classifying stacks.
//!
//! `ζ_{BG}(t) = exp(Σ_{i>=1} #BG(F_{q^i}) t^i / i)` is computed two ways:
//! from the exponential directly ([`zeta_exp`]) and as the Euler product
//! `∏_{k >= 1} (1 - s(k) q^{-w(k)} t)^{-1}` truncated at a weight cutoff
//! ([`zeta_euler_truncated`]), where `w(k) = Σ k_j d_j + dim - Σ d_j` and
//! `s(k) = ∏ ε_j^{k_j - 1}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::catalog::{lookup, GroupDatum, GroupSpec, PrimePowerQ, RootOfUnity};
use crate::counting::{abs_diff, stacky_count};
use crate::error::{Error, Result};
use crate::exact::{embed_root, inv_pow, rational_part, BigRational, Cyclotomic3};

/// Default cap on the number of Euler factors in one product.
pub const FACTOR_BUDGET: u64 = 1_000_000;

/// Power series `a_0 + a_1 t + ... + a_M t^M`, truncated at order `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least the constant term");
        PowerSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = BigRational::one();
        PowerSeries { coeffs }
    }

    /// `1 / (1 - t) = 1 + t + t^2 + ...`
    pub fn geometric(order: usize) -> Self {
        PowerSeries { coeffs: vec![BigRational::one(); order + 1] }
    }

    /// Truncation order `M`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let m = self.order().min(other.order());
        PowerSeries { coeffs: (0..=m).map(|n| &self.coeffs[n] + &other.coeffs[n]).collect() }
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let m = self.order().min(other.order());
        let coeffs = (0..=m)
            .map(|n| (0..=n).fold(BigRational::zero(), |acc, k| acc + &self.coeffs[k] * &other.coeffs[n - k]))
            .collect();
        PowerSeries { coeffs }
    }

    pub fn scale(&self, r: &BigRational) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a * r).collect() }
    }

    /// `f(c t)`.
    pub fn scale_variable(&self, c: &BigRational) -> PowerSeries {
        let mut power = BigRational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &power);
            power *= c;
        }
        PowerSeries { coeffs }
    }

    /// `exp(Σ_{i>=1} c_i t^i / i)` truncated at `order`, where `power_sums[i-1] = c_i`.
    ///
    /// Uses `n a_n = Σ_{i=1}^n c_i a_{n-i}`, the logarithmic derivative of the exponential.
    pub fn exp_from_power_sums(power_sums: &[BigRational], order: usize) -> PowerSeries {
        assert!(power_sums.len() >= order, "need c_1..c_{order}");
        let mut a: Vec<BigRational> = Vec::with_capacity(order + 1);
        a.push(BigRational::one());
        for n in 1..=order {
            let s = (1..=n).fold(BigRational::zero(), |acc, i| acc + &power_sums[i - 1] * &a[n - i]);
            a.push(s / BigInt::from(n));
        }
        PowerSeries { coeffs: a }
    }

    /// Inverse of [`PowerSeries::exp_from_power_sums`]: recovers `c_1..c_M` from a series with `a_0 = 1`.
    pub fn log_power_sums(&self) -> Result<Vec<BigRational>> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidArgument("formal log needs constant term 1".into()));
        }
        let a = &self.coeffs;
        let mut c: Vec<BigRational> = Vec::with_capacity(self.order());
        for n in 1..=self.order() {
            let mut v = &a[n] * BigInt::from(n);
            for i in 1..n {
                v -= &c[i - 1] * &a[n - i];
            }
            c.push(v);
        }
        Ok(c)
    }
}

/// Zeta coefficients from the defining exponential, with `c_i = #BG(F_{q^i})`.
pub fn zeta_exp(datum: &GroupDatum, q: PrimePowerQ, order: usize) -> Result<PowerSeries> {
    let counts = (1..=order as u64).map(|i| stacky_count(datum, q, i)).collect::<Result<Vec<_>>>()?;
    Ok(PowerSeries::exp_from_power_sums(&counts, order))
}

/// Root-of-unity sign of the Euler factor indexed by `k` (every `k_j >= 1`).
pub fn euler_sign(datum: &GroupDatum, k: &[u64]) -> RootOfUnity {
    k.iter()
        .zip(&datum.eigenvalues)
        .fold(RootOfUnity::ONE, |acc, (&kj, e)| acc.mul(e.pow(kj - 1)))
}

/// Weight `Σ k_j d_j + dim - Σ d_j` of the Euler factor indexed by `k`.
pub fn euler_weight(datum: &GroupDatum, k: &[u64]) -> u64 {
    k.iter().zip(&datum.degrees).map(|(&kj, &d)| kj * d as u64).sum::<u64>() + datum.euler_shift()
}

/// Visit every `k >= 1` with `Σ k_j d_j <= bound`, stopping early once `limit` tuples have been seen.
/// Returns the number of tuples visited.
pub fn for_each_index_tuple(degrees: &[u32], bound: u64, limit: u64, mut visit: impl FnMut(&[u64])) -> u64 {
    fn rec(degrees: &[u32], j: usize, left: u64, k: &mut Vec<u64>, seen: &mut u64, limit: u64, visit: &mut dyn FnMut(&[u64])) {
        if *seen > limit {
            return;
        }
        if j == degrees.len() {
            *seen += 1;
            if *seen <= limit {
                visit(k);
            }
            return;
        }
        // the remaining indices need at least their own degree each
        let rest: u64 = degrees[j + 1..].iter().map(|&d| d as u64).sum();
        let d = degrees[j] as u64;
        let mut kj = 1;
        while kj * d + rest <= left {
            k.push(kj);
            rec(degrees, j + 1, left - kj * d, k, seen, limit, visit);
            k.pop();
            kj += 1;
        }
    }
    let mut seen = 0;
    rec(degrees, 0, bound, &mut Vec::with_capacity(degrees.len()), &mut seen, limit, &mut visit);
    seen
}

/// Euler factors of weight at most `weight_cutoff`, grouped as `(weight, sign) -> multiplicity`.
pub fn euler_factors(datum: &GroupDatum, weight_cutoff: u64, budget: u64) -> Result<BTreeMap<(u64, RootOfUnity), u64>> {
    let mut groups = BTreeMap::new();
    let shift = datum.euler_shift();
    if weight_cutoff < shift {
        return Ok(groups);
    }
    let seen = for_each_index_tuple(&datum.degrees, weight_cutoff - shift, budget, |k| {
        *groups.entry((euler_weight(datum, k), euler_sign(datum, k))).or_insert(0) += 1;
    });
    if seen > budget {
        return Err(Error::FactorBudgetExceeded { budget });
    }
    Ok(groups)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerProduct {
    pub series: PowerSeries,
    pub factor_count: u64,
    pub weight_cutoff: u64,
}

/// Euler product over all factors of weight `<= weight_cutoff`, truncated at `order`.
pub fn zeta_euler_truncated(datum: &GroupDatum, q: PrimePowerQ, order: usize, weight_cutoff: u64) -> Result<EulerProduct> {
    zeta_euler_truncated_with_budget(datum, q, order, weight_cutoff, FACTOR_BUDGET)
}

pub fn zeta_euler_truncated_with_budget(
    datum: &GroupDatum,
    q: PrimePowerQ,
    order: usize,
    weight_cutoff: u64,
    budget: u64,
) -> Result<EulerProduct> {
    let groups = euler_factors(datum, weight_cutoff, budget)?;
    let mut coeffs = vec![Cyclotomic3::zero(); order + 1];
    coeffs[0] = Cyclotomic3::one();
    let mut factor_count = 0;
    for (&(weight, sign), &mult) in &groups {
        factor_count += mult;
        let y = embed_root(sign).scale(&inv_pow(q.value(), weight));
        // multiply by (1 - y t)^{-1}: b_n = a_n + y b_{n-1}
        for _ in 0..mult {
            for n in 1..=order {
                let carry = &y * &coeffs[n - 1];
                coeffs[n] = &coeffs[n] + &carry;
            }
        }
    }
    let coeffs = coeffs.iter().map(rational_part).collect::<Result<Vec<_>>>()?;
    Ok(EulerProduct { series: PowerSeries::new(coeffs), factor_count, weight_cutoff })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    /// `|a_m(Euler, W) - a_m(exp)|`
    pub discrepancy: BigRational,
    /// Exact majorant `τ_m(W)`.
    pub majorant: BigRational,
}

impl Discrepancy {
    pub fn within_majorant(&self) -> bool {
        self.discrepancy <= self.majorant
    }
}

/// Coefficient-wise distance between the truncated Euler product and the exponential form.
///
/// The majorant is the sum of `∏ q^{-w}` over all size-`m` multisets of factors
/// that contain at least one factor of weight `> W`. It equals the same
/// Euler-vs-exp difference for the datum with every eigenvalue set to 1, which
/// is how it is computed: both terms of that difference are exact.
pub fn euler_exp_discrepancy(datum: &GroupDatum, q: PrimePowerQ, order: usize, weight_cutoff: u64) -> Result<Vec<Discrepancy>> {
    let exact = zeta_exp(datum, q, order)?;
    let euler = zeta_euler_truncated(datum, q, order, weight_cutoff)?;
    let magnitude = datum.magnitude();
    let exact_abs = zeta_exp(&magnitude, q, order)?;
    let euler_abs = zeta_euler_truncated(&magnitude, q, order, weight_cutoff)?;
    Ok((0..=order)
        .map(|m| Discrepancy {
            discrepancy: abs_diff(euler.series.coeff(m), exact.coeff(m)),
            majorant: exact_abs.coeff(m) - euler_abs.series.coeff(m),
        })
        .collect())
}

/// Checks `ζ(qt) = ζ(t) / (1 - t)` for the rank-one torus through `t^order`.
pub fn gm_functional_equation_check(q: PrimePowerQ, order: usize) -> Result<bool> {
    let gm = lookup(GroupSpec::new(crate::catalog::Family::Torus, 1, crate::catalog::Twist::None)?);
    let zeta = zeta_exp(&gm, q, order)?;
    let left = zeta.scale_variable(&BigRational::from_integer(q.value().into()));
    let right = zeta.mul(&PowerSeries::geometric(order));
    Ok(left == right)
}
