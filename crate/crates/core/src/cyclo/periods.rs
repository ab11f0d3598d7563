//! Gauss periods over a subgroup of `(Z/rZ)^*` and their period polynomials.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::element::{product_tree_poly, CycloPoly, CyclotomicInteger};
use super::intpoly::IntegerPolynomial;
use super::units::{is_subgroup, order_modulo_subgroup, subgroups_of_order, unit_group};
use crate::arith::{euler_phi, gcd, is_squarefree, lcm, mul_mod};
use crate::error::{Error, Result};
use crate::poly::factor_degrees;

/// A subgroup `K` of `(Z/rZ)^*` of order `e` and index `d`, with its cosets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodSpec {
    pub r: u64,
    pub d: u64,
    pub e: u64,
    pub subgroup: Vec<u64>,
    /// `cosets[0]` is `K`; the rest follow in order of their least element.
    pub cosets: Vec<Vec<u64>>,
}

impl PeriodSpec {
    /// Builds a `PeriodSpec` for an explicit subgroup (any order, sorted or not).
    pub fn from_subgroup(r: u64, subgroup: &[u64]) -> Result<Self> {
        if r < 3 {
            return Err(Error::InvalidConductor(r));
        }
        let mut k: Vec<u64> = subgroup.iter().map(|x| x % r).collect();
        k.sort_unstable();
        k.dedup();
        if !is_subgroup(&k, r) || k.iter().any(|&x| gcd(x, r) != 1) {
            return Err(Error::InvalidInput(format!("{k:?} is not a subgroup of units mod {r}")));
        }
        let units = unit_group(r);
        let mut covered = vec![false; r as usize];
        let mut cosets = Vec::new();
        for &a in &units {
            if covered[a as usize] {
                continue;
            }
            let mut coset: Vec<u64> = k.iter().map(|&x| mul_mod(a, x, r)).collect();
            coset.sort_unstable();
            for &c in &coset {
                covered[c as usize] = true;
            }
            cosets.push(coset);
        }
        let phi = units.len() as u64;
        let e = k.len() as u64;
        Ok(PeriodSpec { r, d: phi / e, e, subgroup: k, cosets })
    }
}

/// The index-`d` subgroup spec for conductor `r`; when several subgroups of
/// index `d` exist, the lexicographically least is taken.
pub fn period_spec(r: u64, d: u64) -> Result<PeriodSpec> {
    if r < 3 {
        return Err(Error::InvalidConductor(r));
    }
    let phi = euler_phi(r);
    if d == 0 || !phi.is_multiple_of(d) {
        return Err(Error::NoSuchSubgroup { r, d });
    }
    let subs = subgroups_of_order(r, phi / d);
    let k = subs.first().ok_or(Error::NoSuchSubgroup { r, d })?;
    PeriodSpec::from_subgroup(r, k)
}

/// `eta_j = sum_{x in coset_j} zeta^x`, exactly.
pub fn gauss_periods(spec: &PeriodSpec) -> Vec<CyclotomicInteger> {
    spec.cosets
        .iter()
        .map(|coset| {
            coset.iter().fold(CyclotomicInteger::zero(spec.r), |acc, &x| {
                acc.add(&CyclotomicInteger::zeta_pow(spec.r, x))
            })
        })
        .collect()
}

/// `1 + n * eta`
pub fn coperiod_from_period(eta: &CyclotomicInteger, n: u64) -> CyclotomicInteger {
    CyclotomicInteger::one(eta.conductor()).add(&eta.scale(&BigInt::from(n)))
}

type PeriodTable = RwLock<HashMap<(u64, Vec<u64>), IntegerPolynomial>>;

fn period_cache() -> &'static PeriodTable {
    static CACHE: OnceLock<PeriodTable> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Product over all periods of `(x - eta_j)`, demoted to `Z[x]`.
pub fn period_polynomial_of(spec: &PeriodSpec) -> Result<IntegerPolynomial> {
    let key = (spec.r, spec.subgroup.clone());
    if let Some(hit) = period_cache().read().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let factors = gauss_periods(spec).iter().map(CycloPoly::linear).collect();
    let product = product_tree_poly(factors);
    let poly = product
        .to_integer_polynomial()
        .ok_or(Error::NonIntegerCoefficients { r: spec.r, d: spec.d })?;
    period_cache().write().unwrap().insert(key, poly.clone());
    Ok(poly)
}

/// The degree-`d` period polynomial of conductor `r`.
pub fn period_polynomial(r: u64, d: u64) -> Result<IntegerPolynomial> {
    period_polynomial_of(&period_spec(r, d)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDegreeCheck {
    /// Degrees of the irreducible factors of the period polynomial mod `q`.
    pub degrees: Vec<usize>,
    pub lcm: u64,
    /// Least `d` with `q^d` in the subgroup.
    pub predicted: u64,
    pub pass: bool,
}

/// Compares the factorization pattern of the period polynomial over `F_q`
/// with the order of `q` modulo the subgroup.
pub fn factor_degree_check(r: u64, q: u64, spec: &PeriodSpec) -> Result<FactorDegreeCheck> {
    if spec.r != r {
        return Err(Error::InvalidInput("spec conductor does not match r".into()));
    }
    if gcd(r, q) != 1 || !is_squarefree(r) {
        return Err(Error::InvalidInput(format!("need gcd(r, q) = 1 and squarefree r, got r = {r}, q = {q}")));
    }
    if spec.d > 8 || q >= 100 {
        return Err(Error::DeskScaleExceeded(format!("degree {} over F_{q}", spec.d)));
    }
    crate::arith::check_odd_prime(q)?;
    let psi = period_polynomial_of(spec)?.reduce_mod(q);
    let degrees = factor_degrees(&psi);
    let l = degrees.iter().fold(1u64, |acc, &d| lcm(acc, d as u64));
    let predicted = order_modulo_subgroup(q, r, &spec.subgroup);
    Ok(FactorDegreeCheck { degrees, lcm: l, predicted, pass: l == predicted })
}
