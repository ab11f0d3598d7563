//! Quadratic symbols and elementary nonresidue generators.

use serde::{Deserialize, Serialize};

use crate::arith::{check_odd_prime, mod_inverse, mul_mod, powmod, sub_mod};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymbolValue {
    MinusOne,
    Zero,
    PlusOne,
}

impl SymbolValue {
    pub fn as_i8(self) -> i8 {
        match self {
            SymbolValue::MinusOne => -1,
            SymbolValue::Zero => 0,
            SymbolValue::PlusOne => 1,
        }
    }

    fn from_sign(sign: i8) -> Self {
        match sign {
            1 => SymbolValue::PlusOne,
            -1 => SymbolValue::MinusOne,
            _ => SymbolValue::Zero,
        }
    }
}

impl std::ops::Mul for SymbolValue {
    type Output = SymbolValue;

    fn mul(self, rhs: Self) -> Self {
        SymbolValue::from_sign(self.as_i8() * rhs.as_i8())
    }
}

impl std::fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_i8())
    }
}

/// Legendre symbol `(a/p)` as `a^((p-1)/2) mod p`.
///
/// Only checks that `p` is odd and at least 3; primality is the caller's
/// contract, since this sits in every inner loop.
pub fn euler_criterion(a: u64, p: u64) -> Result<SymbolValue> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(Error::InvalidModulus(p));
    }
    let a = a % p;
    if a == 0 {
        return Ok(SymbolValue::Zero);
    }
    Ok(match powmod(a, (p - 1) / 2, p) {
        1 => SymbolValue::PlusOne,
        v if v == p - 1 => SymbolValue::MinusOne,
        // only reachable for composite p
        _ => SymbolValue::Zero,
    })
}

pub(crate) fn is_qnr(a: u64, p: u64) -> bool {
    !a.is_multiple_of(p) && powmod(a, (p - 1) / 2, p) == p - 1
}

/// Jacobi symbol `(a/n)` by reciprocity, without factoring `n`.
pub fn jacobi(a: i64, n: u64) -> Result<SymbolValue> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidModulus(n));
    }
    let mut a = (a as i128).rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        // (2/n) = -1 exactly when n = 3, 5 mod 8
        if twos % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        // flip, picking up a sign when both are 3 mod 4
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    Ok(if n == 1 { SymbolValue::from_sign(sign) } else { SymbolValue::Zero })
}

/// Smallest `z >= 2` with `(z/p) = -1`.
pub fn least_qnr(p: u64) -> Result<u64> {
    check_odd_prime(p)?;
    let z = (2..p).find(|&z| is_qnr(z, p)).expect("an odd prime has nonresidues");
    // classical bound n_p < sqrt(p) + 1, i.e. (z - 1)^2 < p
    assert!(
        (z - 1) * (z - 1) < p,
        "least nonresidue {z} of {p} violates the square-root bound"
    );
    Ok(z)
}

/// Nonresidue read off from `p mod 8`: 2 when `p = 3, 5 mod 8`, `p - 1` when `p = 7 mod 8`.
pub fn shortcut_qnr(p: u64) -> Result<u64> {
    check_odd_prime(p)?;
    let z = match p % 8 {
        3 | 5 => 2,
        7 => p - 1,
        _ => return Err(Error::NoShortcut(p)),
    };
    debug_assert!(is_qnr(z, p));
    Ok(z)
}

/// Pair of nonresidues spaced `v` apart, `z_s = (sz + v)^2 / (4sz)` and `z_s - v`.
pub fn qnr_spaced_pair(z: u64, s: u64, v: u64, p: u64) -> Result<(u64, u64)> {
    check_odd_prime(p)?;
    let (z, s, v) = (z % p, s % p, v % p);
    if !is_qnr(z, p) {
        return Err(Error::InvalidInput(format!("{z} is not a nonresidue mod {p}")));
    }
    if s == 0 || is_qnr(s, p) {
        return Err(Error::InvalidInput(format!("{s} is not a nonzero square mod {p}")));
    }
    if v == 0 {
        return Err(Error::InvalidInput("spacing must be nonzero".into()));
    }
    let sz = mul_mod(s, z, p);
    if sz == v || sz == p - v {
        return Err(Error::DegeneratePair { p });
    }
    let num = {
        let t = (sz + v) % p;
        mul_mod(t, t, p)
    };
    let den_inv = mod_inverse(mul_mod(4, sz, p), p)?;
    let zs = mul_mod(num, den_inv, p);
    Ok((zs, sub_mod(zs, v, p)))
}

/// `s^2 z mod p` for `s = 1..=count`.
pub fn qnr_orbit(z: u64, p: u64, count: u64) -> Result<Vec<u64>> {
    check_odd_prime(p)?;
    if !is_qnr(z, p) {
        return Err(Error::InvalidInput(format!("{z} is not a nonresidue mod {p}")));
    }
    Ok((1..=count).map(|s| mul_mod(mul_mod(s, s, p), z, p)).collect())
}

/// `sum_{x=1}^{n} (x/p)`.
pub fn char_sum_prefix(p: u64, n: u64) -> Result<i64> {
    check_odd_prime(p)?;
    if n == 0 || n >= p {
        return Err(Error::InvalidInput(format!("prefix length {n} outside [1, {p})")));
    }
    (1..=n).try_fold(0i64, |acc, x| Ok(acc + euler_criterion(x, p)?.as_i8() as i64))
}
