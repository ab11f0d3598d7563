//! Polynomials with exact integer coefficients, and the cyclotomic polynomials.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::FpPoly;

/// Exact integer polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntegerPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    /// Division by a monic polynomial; exact over the integers.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dn = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dn {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dn];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dn].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dn);
        (Self::new(quot), Self::new(rem))
    }

    /// Divides every coefficient by `c`, or `None` if some division is inexact.
    pub fn exact_div_scalar(&self, c: &BigInt) -> Option<Self> {
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            v.push(q);
        }
        Some(Self::new(v))
    }

    /// `self(a x + b)` by Horner's rule.
    pub fn compose_affine(&self, a: &BigInt, b: &BigInt) -> Self {
        let lin = Self::new(vec![b.clone(), a.clone()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul(&lin).add(&Self::new(vec![c.clone()]))
        })
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Image in `F_p[x]`.
    pub fn reduce_mod(&self, p: u64) -> FpPoly {
        let m = BigInt::from(p);
        let v = self
            .coeffs
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().unwrap())
            .collect();
        FpPoly::new(p, v)
    }

    /// Largest absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for IntegerPolynomial {
    /// Comma-separated coefficients, lowest degree first (`-1,1,1` is `x^2 + x - 1`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl std::str::FromStr for IntegerPolynomial {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coeffs: Result<Vec<BigInt>, _> = s.split(',').map(|t| t.trim().parse::<BigInt>()).collect();
        coeffs
            .map(Self::new)
            .map_err(|e| format!("bad polynomial {s:?}: {e}"))
    }
}

fn cyclotomic_cache() -> &'static RwLock<HashMap<u64, Arc<IntegerPolynomial>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<IntegerPolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `r`-th cyclotomic polynomial, `(x^r - 1) / prod_{d | r, d < r} Phi_d`.
///
/// Results are memoized; the table only ever holds values equal to a fresh
/// computation.
pub fn cyclotomic_polynomial(r: u64) -> Arc<IntegerPolynomial> {
    assert!(r >= 1, "cyclotomic index must be positive");
    if let Some(hit) = cyclotomic_cache().read().unwrap().get(&r) {
        return Arc::clone(hit);
    }
    let mut num = IntegerPolynomial::monomial(BigInt::one(), r as usize);
    num = num.sub(&IntegerPolynomial::one());
    for d in (1..r).filter(|d| r.is_multiple_of(*d)) {
        let phi_d = cyclotomic_polynomial(d);
        let (q, rem) = num.div_rem_monic(&phi_d);
        debug_assert!(rem.is_zero());
        num = q;
    }
    let out = Arc::new(num);
    cyclotomic_cache()
        .write()
        .unwrap()
        .entry(r)
        .or_insert_with(|| Arc::clone(&out));
    out
}
