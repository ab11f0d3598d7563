//! Closed forms for period polynomials of degree 2 and 4, and the affine link
//! between period and coperiod polynomials.

use num_bigint::BigInt;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use super::intpoly::IntegerPolynomial;
use crate::arith::{is_prime, isqrt};
use crate::error::{Error, Result};

/// `r = a^2 + b^2` with `a = 1 mod 4` and `b > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticPartition {
    pub r: u64,
    pub a: i64,
    pub b: i64,
}

/// Finds the partition of a prime `r = 1 mod 4` by scanning `b`.
pub fn quadratic_partition(r: u64) -> Result<QuadraticPartition> {
    if !is_prime(r) || r % 4 != 1 {
        return Err(Error::InvalidConductor(r));
    }
    for b in (2..=isqrt(r)).step_by(2) {
        let rest = r - b * b;
        let a = isqrt(rest);
        if a * a == rest {
            let a = a as i64;
            let a = if a % 4 == 1 { a } else { -a };
            return Ok(QuadraticPartition { r, a, b: b as i64 });
        }
    }
    unreachable!("every prime 1 mod 4 is a sum of two squares")
}

/// `x^2 + x + (1 - (-1)^((r-1)/2) r)/4` for an odd prime `r`.
pub fn closed_form_period_quadratic(r: u64) -> Result<IntegerPolynomial> {
    if r < 3 || !is_prime(r) {
        return Err(Error::InvalidConductor(r));
    }
    let signed_r = if r % 4 == 1 { r as i64 } else { -(r as i64) };
    Ok(IntegerPolynomial::from_i64(&[(1 - signed_r) / 4, 1, 1]))
}

/// Quartic coperiod polynomial of a prime `r = 4k + 1`:
/// `(x^2 - r)^2 - 4r(x - a)^2` for even `k`, `(x^2 + 3r)^2 - 4r(x - a)^2` for odd `k`.
pub fn closed_form_coperiod_quartic(r: u64, part: &QuadraticPartition) -> Result<IntegerPolynomial> {
    if !is_prime(r) || r % 4 != 1 || part.r != r {
        return Err(Error::InvalidConductor(r));
    }
    if part.a * part.a + part.b * part.b != r as i64 || part.a.rem_euclid(4) != 1 {
        return Err(Error::InvalidInput(format!("{part:?} is not a valid partition of {r}")));
    }
    let ri = r as i64;
    let k = (r - 1) / 4;
    let shift = if k.is_multiple_of(2) { -ri } else { 3 * ri };
    let square = IntegerPolynomial::from_i64(&[shift, 0, 1]);
    let lin = IntegerPolynomial::from_i64(&[-part.a, 1]);
    Ok(square
        .mul(&square)
        .sub(&lin.mul(&lin).scale(&BigInt::from(4 * ri))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LinkDirection {
    PeriodToCoperiod,
    CoperiodToPeriod,
}

/// Period-to-coperiod: `n^n psi((x - 1)/n)`. Coperiod-to-period: `n^(-n) theta(n x + 1)`.
pub fn link_period_coperiod(
    poly: &IntegerPolynomial,
    n: u64,
    direction: LinkDirection,
) -> Result<IntegerPolynomial> {
    if n == 0 || poly.degree() != Some(n as usize) || !poly.is_monic() {
        return Err(Error::InvalidInput(format!("expected a monic polynomial of degree {n}")));
    }
    let nb = BigInt::from(n);
    match direction {
        LinkDirection::PeriodToCoperiod => {
            // sum c_i n^(n-i) (x - 1)^i keeps everything integral
            let shifted = IntegerPolynomial::from_i64(&[-1, 1]);
            let mut acc = IntegerPolynomial::zero();
            let mut power = IntegerPolynomial::one();
            for (i, c) in poly.coeffs().iter().enumerate() {
                let weight = c * Pow::pow(&nb, n as usize - i);
                acc = acc.add(&power.scale(&weight));
                power = power.mul(&shifted);
            }
            Ok(acc)
        }
        LinkDirection::CoperiodToPeriod => {
            let composed = poly.compose_affine(&nb, &BigInt::one());
            composed
                .exact_div_scalar(&Pow::pow(&nb, n as usize))
                .ok_or(Error::NonIntegerResult)
        }
    }
}
