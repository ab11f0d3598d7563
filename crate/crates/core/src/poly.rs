//! Dense univariate polynomials over a prime field.

use std::fmt;

use num_bigint::BigUint;

use crate::arith::{add_mod, mod_inverse, mul_mod, neg_mod, reduce_i64, sub_mod};

/// A polynomial over `F_p`, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

/// Schoolbook product of two coefficient slices modulo `p`.
pub(crate) fn convolve(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    if p < (1 << 32) {
        // products stay below 2^64, so any realistic number of them fits in u128
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (slot, &y) in acc[i..].iter_mut().zip(b) {
                *slot += x as u128 * y as u128;
            }
        }
    } else {
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (slot, &y) in acc[i..].iter_mut().zip(b) {
                *slot += mul_mod(x, y, p) as u128;
            }
        }
    }
    acc.into_iter().map(|v| (v % p as u128) as u64).collect()
}

/// Reduces `coeffs` in place modulo a monic polynomial given by its coefficients.
pub(crate) fn reduce_by_monic(coeffs: &mut Vec<u64>, modulus: &[u64], p: u64) {
    let n = modulus.len() - 1;
    debug_assert_eq!(modulus[n], 1);
    while coeffs.len() > n {
        let top = coeffs.pop().unwrap();
        if top == 0 {
            continue;
        }
        let shift = coeffs.len() - n;
        for (j, &m) in modulus[..n].iter().enumerate() {
            let slot = &mut coeffs[shift + j];
            *slot = sub_mod(*slot, mul_mod(top, m, p), p);
        }
    }
    trim(coeffs);
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        trim(&mut coeffs);
        FpPoly { p, coeffs }
    }

    pub fn from_signed(p: u64, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| reduce_i64(c, p)).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn monomial(p: u64, coeff: u64, degree: usize) -> Self {
        let mut v = vec![0; degree + 1];
        v[degree] = coeff;
        Self::new(p, v)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| add_mod(self.coeff(i), other.coeff(i), self.p))
            .collect();
        Self::new(self.p, v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| sub_mod(self.coeff(i), other.coeff(i), self.p))
            .collect();
        Self::new(self.p, v)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&c| neg_mod(c, self.p)).collect())
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.p, convolve(&self.coeffs, &other.coeffs, self.p))
    }

    /// Scales to leading coefficient one. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = mod_inverse(self.leading(), self.p).expect("leading coefficient is a unit");
        self.scale(inv)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let dn = divisor.coeffs.len() - 1;
        let inv = mod_inverse(divisor.leading(), p).expect("leading coefficient is a unit");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dn {
            return (Self::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dn];
        for i in (0..quot.len()).rev() {
            let c = mul_mod(rem[i + dn], inv, p);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = sub_mod(rem[i + j], mul_mod(c, d, p), p);
            }
        }
        rem.truncate(dn);
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        if divisor.is_monic() {
            let mut v = self.coeffs.clone();
            reduce_by_monic(&mut v, &divisor.coeffs, self.p);
            return FpPoly { p: self.p, coeffs: v };
        }
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    pub fn pow_mod(&self, e: &BigUint, modulus: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus);
            if e.bit(i) {
                acc = acc.mul_mod(&base, modulus);
            }
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.p), c, self.p))
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
            .collect();
        Self::new(self.p, v)
    }
}

impl fmt::Display for FpPoly {
    /// Comma-separated coefficients, lowest degree first; `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses `"c0,c1,...,cn"` (lowest degree first, signed integers) into `F_p[x]`.
pub fn parse_poly(p: u64, text: &str) -> Option<FpPoly> {
    let coeffs: Option<Vec<i64>> = text
        .split(',')
        .map(|s| s.trim().parse::<i64>().ok())
        .collect();
    coeffs.map(|c| FpPoly::from_signed(p, &c))
}

/// `x^(p^k) mod f` for `k = 0..=count`.
fn frobenius_orbit_of_x(f: &FpPoly, count: usize) -> Vec<FpPoly> {
    let p = BigUint::from(f.p());
    let mut out = Vec::with_capacity(count + 1);
    let mut h = FpPoly::x(f.p()).rem(f);
    out.push(h.clone());
    for _ in 0..count {
        h = h.pow_mod(&p, f);
        out.push(h.clone());
    }
    out
}

/// Rabin's irreducibility test over `F_p`.
///
/// A polynomial of degree `n` is irreducible iff `x^(p^n) = x mod f` and
/// `gcd(x^(p^(n/l)) - x, f) = 1` for every prime `l | n`.
pub fn rabin_irreducible(f: &FpPoly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let f = f.monic();
    let x = FpPoly::x(f.p());
    let orbit = frobenius_orbit_of_x(&f, n);
    if orbit[n] != x.rem(&f) {
        return false;
    }
    crate::arith::factorize(n as u64).into_iter().all(|(l, _)| {
        let h = &orbit[n / l as usize];
        h.sub(&x).gcd(&f).degree() == Some(0)
    })
}

/// Degrees of the irreducible factors of `f`, with multiplicity, ascending.
///
/// Distinct-degree factorization, repeated at each degree so that repeated
/// factors are peeled off one copy at a time.
pub fn factor_degrees(f: &FpPoly) -> Vec<usize> {
    let mut f = f.monic();
    let p = BigUint::from(f.p());
    let x = FpPoly::x(f.p());
    let mut out = Vec::new();
    let mut h = x.rem(&f);
    let mut k = 0usize;
    loop {
        let deg = match f.degree() {
            None | Some(0) => break,
            Some(d) => d,
        };
        if deg < 2 * (k + 1) {
            out.push(deg);
            break;
        }
        k += 1;
        h = h.pow_mod(&p, &f);
        loop {
            let g = h.sub(&x).gcd(&f);
            let gd = g.degree().unwrap_or(0);
            if gd == 0 {
                break;
            }
            out.extend(std::iter::repeat_n(k, gd / k));
            f = f.div_rem(&g).0;
            h = h.rem(&f);
            if f.degree().unwrap_or(0) == 0 {
                break;
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::from_signed(p, c)
    }

    #[test]
    fn rabin_examples() {
        assert!(rabin_irreducible(&poly(5, &[1, 1, 1])));
        assert!(!rabin_irreducible(&poly(13, &[1, 0, 1])));
        assert!(rabin_irreducible(&poly(7, &[3, 1])));
        assert!(!rabin_irreducible(&poly(7, &[3])));
        // x^4 + 1 splits over every prime field
        assert!(!rabin_irreducible(&poly(3, &[1, 0, 0, 0, 1])));
    }

    #[test]
    fn division_identity() {
        let a = poly(11, &[3, 0, 7, 1, 9, 2]);
        let b = poly(11, &[5, 4, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn factor_degrees_with_repeats() {
        // (x-1)^2 (x^2+1) over F_7
        let f = poly(7, &[-1, 1]).mul(&poly(7, &[-1, 1])).mul(&poly(7, &[1, 0, 1]));
        assert_eq!(factor_degrees(&f), vec![1, 1, 2]);
        // x^2 + x + 1 over F_7 has roots 2 and 4
        assert_eq!(factor_degrees(&poly(7, &[1, 1, 1])), vec![1, 1]);
    }

    #[test]
    fn display_and_parse() {
        let f = poly(7, &[-1, 1, 1]);
        assert_eq!(f.to_string(), "6,1,1");
        assert_eq!(parse_poly(7, "-1,1,1"), Some(f));
        assert_eq!(parse_poly(7, "1,x"), None);
    }
}
