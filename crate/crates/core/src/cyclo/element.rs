//! Exact arithmetic in `Z[x]/Phi_r(x)` and polynomials over it.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::intpoly::{cyclotomic_polynomial, IntegerPolynomial};

/// An element of `Z[zeta_r]`, stored as its `phi(r)` coordinates in the power
/// basis `1, zeta, ..., zeta^(phi(r) - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicInteger {
    r: u64,
    coeffs: Vec<BigInt>,
}

fn reduce(v: &mut Vec<BigInt>, modulus: &IntegerPolynomial) {
    let m = modulus.coeffs();
    let n = m.len() - 1;
    while v.len() > n {
        let top = v.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = v.len() - n;
        for (j, c) in m[..n].iter().enumerate() {
            if !c.is_zero() {
                v[shift + j] -= &top * c;
            }
        }
    }
    v.resize(n, BigInt::zero());
}

impl CyclotomicInteger {
    fn modulus(r: u64) -> Arc<IntegerPolynomial> {
        cyclotomic_polynomial(r)
    }

    /// Reduces an arbitrary coefficient list (in powers of zeta) modulo `Phi_r`.
    pub fn from_coeffs(r: u64, mut coeffs: Vec<BigInt>) -> Self {
        assert!(r >= 2, "conductor must be at least 2");
        reduce(&mut coeffs, &Self::modulus(r));
        CyclotomicInteger { r, coeffs }
    }

    pub fn from_i64(r: u64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(r, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(r: u64) -> Self {
        Self::from_coeffs(r, Vec::new())
    }

    pub fn constant(r: u64, c: BigInt) -> Self {
        Self::from_coeffs(r, vec![c])
    }

    pub fn one(r: u64) -> Self {
        Self::constant(r, BigInt::one())
    }

    /// `zeta^k` for any integer exponent (taken mod `r`).
    pub fn zeta_pow(r: u64, k: u64) -> Self {
        let k = (k % r) as usize;
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::one();
        Self::from_coeffs(r, v)
    }

    pub fn conductor(&self) -> u64 {
        self.r
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The integer value when the element lies in `Z`.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.r, other.r, "mixed conductors");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CyclotomicInteger { r: self.r, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.r, other.r, "mixed conductors");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        CyclotomicInteger { r: self.r, coeffs }
    }

    pub fn neg(&self) -> Self {
        CyclotomicInteger { r: self.r, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        CyclotomicInteger { r: self.r, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.r, other.r, "mixed conductors");
        let n = self.coeffs.len();
        let mut v = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        reduce(&mut v, &Self::modulus(self.r));
        CyclotomicInteger { r: self.r, coeffs: v }
    }
}

/// A polynomial in `x` whose coefficients lie in `Z[zeta_r]`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloPoly {
    r: u64,
    coeffs: Vec<CyclotomicInteger>,
}

impl CycloPoly {
    pub fn new(r: u64, coeffs: Vec<CyclotomicInteger>) -> Self {
        assert!(coeffs.iter().all(|c| c.r == r), "mixed conductors");
        CycloPoly { r, coeffs }
    }

    /// `x - root`
    pub fn linear(root: &CyclotomicInteger) -> Self {
        CycloPoly::new(root.r, vec![root.neg(), CyclotomicInteger::one(root.r)])
    }

    pub fn conductor(&self) -> u64 {
        self.r
    }

    pub fn coeffs(&self) -> &[CyclotomicInteger] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.r, other.r, "mixed conductors");
        let mut v = vec![CyclotomicInteger::zero(self.r); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        CycloPoly { r: self.r, coeffs: v }
    }

    /// Demotes to an integer polynomial when every coefficient is a rational integer.
    pub fn to_integer_polynomial(&self) -> Option<IntegerPolynomial> {
        let v: Option<Vec<BigInt>> = self.coeffs.iter().map(|c| c.as_integer()).collect();
        v.map(IntegerPolynomial::new)
    }
}

/// Multiplies out a list of factors, balanced by degree.
///
/// Factors of equal degree are multiplied in pairs, level by level, until
/// every degree occurs at most once; the leftover factors of distinct degrees
/// are then multiplied together, smallest first.
pub fn product_tree_poly(factors: Vec<CycloPoly>) -> CycloPoly {
    assert!(!factors.is_empty(), "empty product");
    let mut pool = factors;
    loop {
        pool.sort_by_key(|f| f.degree());
        let mut next = Vec::with_capacity(pool.len());
        let mut paired = false;
        let mut i = 0;
        while i < pool.len() {
            if i + 1 < pool.len() && pool[i].degree() == pool[i + 1].degree() {
                next.push(pool[i].mul(&pool[i + 1]));
                paired = true;
                i += 2;
            } else {
                next.push(pool[i].clone());
                i += 1;
            }
        }
        pool = next;
        if !paired {
            break;
        }
    }
    let mut it = pool.into_iter();
    let first = it.next().unwrap();
    it.fold(first, |acc, f| acc.mul(&f))
}
