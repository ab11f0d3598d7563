//! Irreducible polynomials of 2-power degree, and new irreducibles from old
//! ones under linear fractional substitution.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::{mul_mod, sub_mod};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, QuotientRing, RingElement};
use crate::poly::{rabin_irreducible, FpPoly};

/// Monic irreducible of degree `2^e` over `F_p`.
///
/// Tries `x^(2^e) - z` first. When that factors it climbs a tower of
/// quadratic extensions: at each level it takes a nonsquare `w` of the current
/// field `F_p[x]/h` and replaces `h` by `m_w(x^2)`, `m_w` the minimal
/// polynomial of `w`. A nonsquare in a field of 2-power degree lies in no
/// proper subfield, so `m_w` has full degree and `x^2 - w` stays irreducible.
pub fn binomial_tower(desc: &FieldDescriptor, e: u32, z: u64) -> Result<FpPoly> {
    if !desc.is_prime_field() {
        return Err(Error::InvalidInput("binomial towers are built over prime fields".into()));
    }
    if e == 0 || e > 20 {
        return Err(Error::InvalidInput(format!("log2 degree {e} outside [1, 20]")));
    }
    let p = desc.p();
    if !desc.is_nonresidue(z) {
        return Err(Error::InvalidInput(format!("{z} is not a nonresidue mod {p}")));
    }
    let degree = 1usize << e;
    let binomial = FpPoly::monomial(p, 1, degree).sub(&FpPoly::constant(p, z % p));
    if rabin_irreducible(&binomial) {
        return Ok(binomial);
    }

    let mut h = FpPoly::monomial(p, 1, 2).sub(&FpPoly::constant(p, z % p));
    for _ in 1..e {
        let ring = QuotientRing::new(h.clone())?;
        let w = first_nonsquare(&ring).ok_or(Error::ConstructionFailed { degree })?;
        h = substitute_square(&minimal_polynomial(&w));
    }
    if h.degree() == Some(degree) && rabin_irreducible(&h) {
        Ok(h)
    } else {
        Err(Error::ConstructionFailed { degree })
    }
}

/// First non-constant element, in base-`p` counting order of its coefficient
/// vector, that is a nonsquare of the field `F_p[x]/h`.
fn first_nonsquare(ring: &std::sync::Arc<QuotientRing>) -> Option<RingElement> {
    let p = ring.p();
    let n = ring.degree() as u32;
    let half = (BigUint::from(p).pow(n) - 1u32) >> 1;
    let minus_one = ring.constant(p - 1);
    let mut digits = vec![0u64; n as usize];
    digits[1] = 1;
    loop {
        let w = ring.element(&digits);
        if w.pow(&half) == minus_one {
            return Some(w);
        }
        // next coefficient vector, skipping constants
        let mut i = 0;
        loop {
            if i == digits.len() {
                return None;
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if digits[1..].iter().all(|&c| c == 0) {
            digits[1] = 1;
        }
    }
}

/// `prod_j (X - w^(p^j))` over the Frobenius orbit of `w`.
fn minimal_polynomial(w: &RingElement) -> FpPoly {
    let ring = w.ring();
    let p = ring.p();
    let n = ring.degree();
    // coefficients in the ring, lowest degree first
    let mut acc: Vec<RingElement> = vec![ring.one()];
    let mut conj = w.clone();
    for _ in 0..n {
        let neg = ring.zero().sub(&conj);
        let mut next = vec![ring.zero(); acc.len() + 1];
        for (i, c) in acc.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].add(&c.mul(&neg));
        }
        acc = next;
        conj = conj.frobenius_power(1);
    }
    let coeffs = acc
        .iter()
        .map(|c| c.constant_value().expect("minimal polynomial has coefficients in F_p"))
        .collect();
    FpPoly::new(p, coeffs)
}

/// `f(x^2)`.
fn substitute_square(f: &FpPoly) -> FpPoly {
    let mut coeffs = vec![0u64; 2 * f.coeffs().len()];
    for (i, &c) in f.coeffs().iter().enumerate() {
        coeffs[2 * i] = c;
    }
    FpPoly::new(f.p(), coeffs)
}

/// `x -> (a x + b)/(c x + d)` over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusMap {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl MobiusMap {
    pub const IDENTITY: MobiusMap = MobiusMap { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(a: u64, b: u64, c: u64, d: u64) -> Self {
        MobiusMap { a, b, c, d }
    }

    pub fn det(&self, p: u64) -> u64 {
        sub_mod(mul_mod(self.a % p, self.d % p, p), mul_mod(self.b % p, self.c % p, p), p)
    }

    /// The map whose transform equals transforming by `self` and then by `next`,
    /// i.e. the matrix product `self * next`.
    pub fn compose(&self, next: &MobiusMap, p: u64) -> MobiusMap {
        let m = |x: u64, y: u64, u: u64, v: u64| (mul_mod(x, y, p) + mul_mod(u, v, p)) % p;
        MobiusMap {
            a: m(self.a, next.a, self.b, next.c),
            b: m(self.a, next.b, self.b, next.d),
            c: m(self.c, next.a, self.d, next.c),
            d: m(self.c, next.b, self.d, next.d),
        }
    }
}

/// `(c x + d)^n f((a x + b)/(c x + d))`, made monic.
pub fn mobius_generate(f: &FpPoly, map: &MobiusMap) -> Result<FpPoly> {
    let p = f.p();
    let n = f
        .degree()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::InvalidInput("polynomial must have degree at least 1".into()))?;
    if map.det(p) == 0 {
        return Err(Error::SingularTransform);
    }
    let num = FpPoly::new(p, vec![map.b % p, map.a % p]);
    let den = FpPoly::new(p, vec![map.d % p, map.c % p]);
    // den_pows[j] = den^j
    let mut den_pows = vec![FpPoly::one(p)];
    for j in 1..=n {
        den_pows.push(den_pows[j - 1].mul(&den));
    }
    let mut out = FpPoly::zero(p);
    let mut num_pow = FpPoly::one(p);
    for i in 0..=n {
        let term = num_pow.mul(&den_pows[n - i]).scale(f.coeff(i));
        out = out.add(&term);
        num_pow = num_pow.mul(&num);
    }
    if out.degree() != Some(n) {
        return Err(Error::DegreeDrop);
    }
    Ok(out.monic())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> FieldDescriptor {
        FieldDescriptor::prime(p).unwrap()
    }

    #[test]
    fn tower_examples() {
        let f = binomial_tower(&prime(7), 1, 3).unwrap();
        assert_eq!(f.coeffs(), &[4, 0, 1]);
        let f = binomial_tower(&prime(5), 2, 2).unwrap();
        assert_eq!(f.coeffs(), &[3, 0, 0, 0, 1]);
        let plain = FpPoly::from_signed(7, &[-3, 0, 0, 0, 1]);
        assert!(!rabin_irreducible(&plain));
        let f = binomial_tower(&prime(7), 2, 3).unwrap();
        assert_eq!(f.degree(), Some(4));
        assert!(rabin_irreducible(&f));
        let f = binomial_tower(&prime(7), 3, 3).unwrap();
        assert_eq!(f.degree(), Some(8));
        assert!(rabin_irreducible(&f));
    }

    #[test]
    fn tower_rejects_residue() {
        assert!(binomial_tower(&prime(7), 1, 2).is_err());
        assert!(binomial_tower(&prime(7), 0, 3).is_err());
    }

    #[test]
    fn mobius_examples() {
        let f = FpPoly::from_signed(7, &[1, 0, 1]);
        let g = mobius_generate(&f, &MobiusMap::new(1, 1, 0, 1)).unwrap();
        assert_eq!(g.coeffs(), &[2, 2, 1]);
        assert_eq!(mobius_generate(&f, &MobiusMap::IDENTITY).unwrap(), f);
        assert_eq!(mobius_generate(&f, &MobiusMap::new(0, 1, 1, 0)).unwrap(), f);
        assert_eq!(mobius_generate(&f, &MobiusMap::new(1, 2, 2, 4)), Err(Error::SingularTransform));
    }

    #[test]
    fn mobius_degree_drop() {
        // a/c = 1 is a root of x - 1
        let f = FpPoly::from_signed(7, &[-1, 1]);
        assert_eq!(mobius_generate(&f, &MobiusMap::new(1, 0, 1, 1)), Err(Error::DegreeDrop));
    }

    #[test]
    fn composition_matches_sequential() {
        let p = 11;
        let f = FpPoly::from_signed(p, &[2, 1, 0, 1]);
        let m1 = MobiusMap::new(2, 3, 1, 5);
        let m2 = MobiusMap::new(4, 1, 7, 2);
        let seq = mobius_generate(&mobius_generate(&f, &m1).unwrap(), &m2).unwrap();
        let once = mobius_generate(&f, &m1.compose(&m2, p)).unwrap();
        assert_eq!(seq, once);
    }
}
