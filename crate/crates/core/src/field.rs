//! Base fields `F_q` and quotient rings `F_p[y]/f(y)` with their Frobenius maps.
//!
//! A [`QuotientRing`] need not be a field: `f` may factor, in which case the
//! ring is a product of fields (or worse). Nothing here assumes otherwise.
//! Each ring remembers the size `q` of the field whose Frobenius `x -> x^q`
//! it applies, so the same machinery serves `F_p` and odd-degree extensions
//! `F_{p^n}` given by a user-supplied modulus.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::arith::{check_odd_prime, powmod_big, sub_mod};
use crate::error::{Error, Result};
use crate::poly::{convolve, rabin_irreducible, reduce_by_monic, FpPoly};
use crate::symbols::SymbolValue;

/// The field `F_q`, `q = p^n` with `n` odd, either prime (`n = 1`) or given by
/// an irreducible modulus of degree `n` over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDescriptor {
    p: u64,
    ext_modulus: Option<FpPoly>,
    q: BigUint,
}

impl FieldDescriptor {
    pub fn prime(p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(FieldDescriptor { p, ext_modulus: None, q: BigUint::from(p) })
    }

    /// `F_{p^n}` represented as `F_p[x]/g(x)`. `g` must be monic, irreducible and of odd degree.
    pub fn extension(p: u64, g: FpPoly) -> Result<Self> {
        check_odd_prime(p)?;
        if g.p() != p {
            return Err(Error::InvalidExtension(format!("modulus is over F_{}, not F_{p}", g.p())));
        }
        let n = g.degree().unwrap_or(0);
        if n == 0 || !g.is_monic() {
            return Err(Error::InvalidExtension("modulus must be monic of degree >= 1".into()));
        }
        if n.is_multiple_of(2) {
            return Err(Error::InvalidExtension(format!("degree {n} is even")));
        }
        if !rabin_irreducible(&g) {
            return Err(Error::InvalidExtension(format!("{g} is reducible over F_{p}")));
        }
        let q = BigUint::from(p).pow(n as u32);
        let ext_modulus = if n == 1 { None } else { Some(g) };
        Ok(FieldDescriptor { p, ext_modulus, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    /// `q` as a machine word, if it fits.
    pub fn q_u64(&self) -> Option<u64> {
        self.q.to_u64()
    }

    /// Extension degree `n` of `F_q` over `F_p`.
    pub fn degree(&self) -> usize {
        self.ext_modulus.as_ref().map_or(1, |g| g.degree().unwrap())
    }

    pub fn is_prime_field(&self) -> bool {
        self.ext_modulus.is_none()
    }

    pub fn ext_modulus(&self) -> Option<&FpPoly> {
        self.ext_modulus.as_ref()
    }

    pub fn q_mod(&self, m: u64) -> u64 {
        (&self.q % m).to_u64().unwrap()
    }

    /// Natural log of `q`.
    pub fn ln_q(&self) -> f64 {
        self.degree() as f64 * (self.p as f64).ln()
    }

    /// Quadratic character in `F_q` of an element of the prime subfield.
    ///
    /// For an extension the element is embedded in `F_p[x]/g` and raised to
    /// `(q - 1)/2` there.
    pub fn symbol(&self, a: u64) -> SymbolValue {
        let a = a % self.p;
        if a == 0 {
            return SymbolValue::Zero;
        }
        let half = (&self.q - 1u32) >> 1;
        let value = match &self.ext_modulus {
            None => powmod_big(a, &half, self.p),
            Some(g) => {
                let ring = QuotientRing::new(g.clone()).expect("validated modulus");
                ring.constant(a)
                    .pow(&half)
                    .constant_value()
                    .expect("a prime-subfield power stays in the prime subfield")
            }
        };
        if value == 1 {
            SymbolValue::PlusOne
        } else {
            debug_assert_eq!(value, self.p - 1);
            SymbolValue::MinusOne
        }
    }

    pub fn is_nonresidue(&self, a: u64) -> bool {
        self.symbol(a) == SymbolValue::MinusOne
    }
}

/// The ring `F_p[y]/f(y)` for a monic `f`, with Frobenius `x -> x^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    p: u64,
    modulus: FpPoly,
    frobenius_q: BigUint,
}

impl QuotientRing {
    /// Quotient over the prime field; the Frobenius is `x -> x^p`.
    pub fn new(modulus: FpPoly) -> Result<Arc<Self>> {
        let q = BigUint::from(modulus.p());
        Self::with_frobenius(modulus, q)
    }

    /// Quotient whose Frobenius is the `q`-power map of the given base field.
    ///
    /// Elements still carry `F_p` coefficients; this is exact for everything
    /// generated by `y`, because `F_p` is fixed by `x -> x^q`.
    pub fn over(field: &FieldDescriptor, modulus: FpPoly) -> Result<Arc<Self>> {
        if modulus.p() != field.p() {
            return Err(Error::InvalidInput("ring modulus over the wrong prime".into()));
        }
        Self::with_frobenius(modulus, field.q().clone())
    }

    fn with_frobenius(modulus: FpPoly, frobenius_q: BigUint) -> Result<Arc<Self>> {
        if modulus.degree().unwrap_or(0) == 0 || !modulus.is_monic() {
            return Err(Error::InvalidInput("ring modulus must be monic of degree >= 1".into()));
        }
        Ok(Arc::new(QuotientRing { p: modulus.p(), modulus, frobenius_q }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn frobenius_q(&self) -> &BigUint {
        &self.frobenius_q
    }

    pub fn element(self: &Arc<Self>, coeffs: &[u64]) -> RingElement {
        let mut v: Vec<u64> = coeffs.iter().map(|c| c % self.p).collect();
        reduce_by_monic(&mut v, self.modulus.coeffs(), self.p);
        RingElement { coeffs: v, ring: Arc::clone(self) }
    }

    pub fn constant(self: &Arc<Self>, c: u64) -> RingElement {
        self.element(&[c])
    }

    pub fn zero(self: &Arc<Self>) -> RingElement {
        self.element(&[])
    }

    pub fn one(self: &Arc<Self>) -> RingElement {
        self.constant(1)
    }

    /// The class of `y`.
    pub fn generator(self: &Arc<Self>) -> RingElement {
        self.element(&[0, 1])
    }
}

/// An element of a [`QuotientRing`], canonical: coefficients in `[0, p)`,
/// fewer than `deg f` of them, no trailing zeros.
#[derive(Clone, Debug)]
pub struct RingElement {
    coeffs: Vec<u64>,
    ring: Arc<QuotientRing>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
            && (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
    }
}

impl Eq for RingElement {}

impl RingElement {
    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficients padded with zeros to the ring degree.
    pub fn dense_coeffs(&self) -> Vec<u64> {
        let mut v = self.coeffs.clone();
        v.resize(self.ring.degree(), 0);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The value of a constant element.
    pub fn constant_value(&self) -> Option<u64> {
        match self.coeffs.as_slice() {
            [] => Some(0),
            [c] => Some(*c),
            _ => None,
        }
    }

    fn same_ring(&self, other: &Self) {
        debug_assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "elements of different rings"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_ring(other);
        let p = self.ring.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v: Vec<u64> = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                crate::arith::add_mod(a, b, p)
            })
            .collect();
        self.ring.element(&v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_ring(other);
        let p = self.ring.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v: Vec<u64> = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                sub_mod(a, b, p)
            })
            .collect();
        self.ring.element(&v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ring(other);
        let p = self.ring.p;
        let mut v = convolve(&self.coeffs, &other.coeffs, p);
        reduce_by_monic(&mut v, self.ring.modulus.coeffs(), p);
        RingElement { coeffs: v, ring: Arc::clone(&self.ring) }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, e: &BigUint) -> Self {
        let mut acc = self.ring.one();
        for i in (0..e.bits()).rev() {
            acc = acc.square();
            if e.bit(i) {
                acc = acc.mul(self);
            }
        }
        acc
    }

    /// `x^(q^j)`.
    pub fn frobenius_power(&self, j: u64) -> Self {
        frobenius_power(self, j)
    }
}

/// `x^(q^j)` by square-and-multiply, one `q`-th power at a time.
pub fn frobenius_power(x: &RingElement, j: u64) -> RingElement {
    let q = x.ring.frobenius_q.clone();
    let mut out = x.clone();
    for _ in 0..j {
        if out.is_constant() {
            break;
        }
        out = out.pow(&q);
    }
    out
}

/// `x + x^(q^step) + x^(q^(2 step)) + ...` with `terms` summands.
pub fn partial_trace(x: &RingElement, step: u64, terms: u64) -> RingElement {
    let mut acc = x.ring.zero();
    let mut cur = x.clone();
    for i in 0..terms {
        acc = acc.add(&cur);
        if i + 1 < terms {
            cur = frobenius_power(&cur, step);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, modulus: &[i64]) -> Arc<QuotientRing> {
        QuotientRing::new(FpPoly::from_signed(p, modulus)).unwrap()
    }

    #[test]
    fn frobenius_examples() {
        let r = ring(7, &[1, 0, 1]);
        assert_eq!(r.generator().frobenius_power(1).coeffs(), &[0, 6]);
        let r = ring(5, &[1, 1, 1]);
        assert_eq!(r.generator().frobenius_power(1).coeffs(), &[4, 4]);
        assert_eq!(r.constant(3).frobenius_power(5), r.constant(3));
        assert_eq!(r.generator().frobenius_power(0), r.generator());
    }

    #[test]
    fn partial_trace_examples() {
        let r = ring(7, &[1, 0, 1]);
        assert_eq!(partial_trace(&r.one(), 2, 4), r.constant(4));
        assert_eq!(partial_trace(&r.generator(), 1, 2), r.zero());
        let r = ring(5, &[1, 1, 1]);
        assert_eq!(partial_trace(&r.generator(), 1, 2), r.constant(4));
    }

    #[test]
    fn descriptor_validation() {
        assert_eq!(FieldDescriptor::prime(2), Err(Error::InvalidModulus(2)));
        assert!(FieldDescriptor::prime(15).is_err());
        // x^2 + 1 over F_7 is irreducible but has even degree
        assert!(FieldDescriptor::extension(7, FpPoly::from_signed(7, &[1, 0, 1])).is_err());
        // x^3 + x + 1 over F_5 is irreducible (no roots in F_5)
        let f = FieldDescriptor::extension(5, FpPoly::from_signed(5, &[1, 1, 0, 1])).unwrap();
        assert_eq!(f.q(), &BigUint::from(125u32));
        assert_eq!(f.degree(), 3);
        // x^3 + 1 has the root -1
        assert!(FieldDescriptor::extension(5, FpPoly::from_signed(5, &[1, 0, 0, 1])).is_err());
    }

    #[test]
    fn extension_symbol_matches_prime_field() {
        // an odd-degree extension preserves the quadratic character of F_p
        let ext = FieldDescriptor::extension(5, FpPoly::from_signed(5, &[1, 1, 0, 1])).unwrap();
        let base = FieldDescriptor::prime(5).unwrap();
        for a in 0..5 {
            assert_eq!(ext.symbol(a), base.symbol(a));
        }
    }
}
