//! Square roots modulo a prime, given a nonresidue.

use serde::{Deserialize, Serialize};

use crate::arith::{check_odd_prime, mod_inverse, mul_mod, powmod, sub_mod, two_adic_split};
use crate::error::{Error, Result};
use crate::symbols::{euler_criterion, is_qnr, SymbolValue};

/// A root pair `{root, p - root}` with `root <= (p - 1)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqrtResult {
    pub root: u64,
    pub other_root: u64,
}

impl SqrtResult {
    fn canonical(x: u64, p: u64) -> Self {
        let x = x % p;
        let root = x.min(p - x) % p;
        let other_root = if root == 0 { 0 } else { p - root };
        SqrtResult { root, other_root }
    }
}

/// Reduces `a` and checks the common preconditions. `None` means `a = 0`.
fn prepare(a: u64, p: u64, z: u64) -> Result<Option<u64>> {
    check_odd_prime(p)?;
    if !is_qnr(z, p) {
        return Err(Error::InvalidInput(format!("{z} is not a nonresidue mod {p}")));
    }
    let a = a % p;
    match euler_criterion(a, p)? {
        SymbolValue::Zero => Ok(None),
        SymbolValue::MinusOne => Err(Error::NotAResidue { a, p }),
        SymbolValue::PlusOne => Ok(Some(a)),
    }
}

/// Tonelli-Shanks.
pub fn tonelli_shanks(a: u64, p: u64, z: u64) -> Result<SqrtResult> {
    let Some(a) = prepare(a, p, z)? else {
        return Ok(SqrtResult { root: 0, other_root: 0 });
    };
    let (n, k) = two_adic_split(p);
    let mut m = k;
    let mut c = powmod(z, n, p);
    let mut t = powmod(a, n, p);
    let mut x = powmod(a, n.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        x = mul_mod(x, b, p);
    }
    debug_assert_eq!(mul_mod(x, x, p), a);
    Ok(SqrtResult::canonical(x, p))
}

/// Largest 2-adic valuation of `p - 1` the root sum is evaluated for; the sum
/// has `2^(k-1)` terms.
pub const ROOT_SUM_MAX_TWO_ADIC: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSumOutcome {
    pub result: SqrtResult,
    /// The sum produced a value whose square is not `a`; `result` came from
    /// Tonelli-Shanks instead.
    pub fell_back: bool,
    /// What the sum produced before any fallback.
    pub sum_value: u64,
}

/// Square root by the closed-form sum over odd powers of `z`:
///
/// `sqrt(a) = ±2^(2-k) a^((n+1)/2) sum_{i < 2^(k-1)} a^(n i) / (z^((2i+1) n) - 1)`
///
/// where `p - 1 = 2^k n` with `n` odd.
pub fn cipolla_sum(a: u64, p: u64, z: u64) -> Result<RootSumOutcome> {
    let Some(a) = prepare(a, p, z)? else {
        let zero = SqrtResult { root: 0, other_root: 0 };
        return Ok(RootSumOutcome { result: zero, fell_back: false, sum_value: 0 });
    };
    let (n, k) = two_adic_split(p);
    if k > ROOT_SUM_MAX_TWO_ADIC {
        return Err(Error::DeskScaleExceeded(format!("2^{k} divides p - 1")));
    }
    let zn = powmod(z, n, p);
    let zn2 = mul_mod(zn, zn, p);
    let an = powmod(a, n, p);
    let mut sum = 0u64;
    let mut z_odd = zn; // z^((2i+1) n)
    let mut a_pow = 1u64; // a^(n i)
    for i in 0..1u64 << (k - 1) {
        let den = sub_mod(z_odd, 1, p);
        let inv = mod_inverse(den, p).map_err(|_| Error::ZeroDenominator { index: i, p })?;
        sum = (sum + mul_mod(inv, a_pow, p)) % p;
        z_odd = mul_mod(z_odd, zn2, p);
        a_pow = mul_mod(a_pow, an, p);
    }
    let scale = if k <= 2 {
        1u64 << (2 - k)
    } else {
        mod_inverse(powmod(2, (k - 2) as u64, p), p)?
    };
    let value = mul_mod(mul_mod(scale, powmod(a, n.div_ceil(2), p), p), sum, p);
    if mul_mod(value, value, p) == a {
        return Ok(RootSumOutcome { result: SqrtResult::canonical(value, p), fell_back: false, sum_value: value });
    }
    let result = tonelli_shanks(a, p, z)?;
    Ok(RootSumOutcome { result, fell_back: true, sum_value: value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tonelli_examples() {
        assert_eq!(tonelli_shanks(4, 7, 3).unwrap().root, 2);
        assert_eq!(tonelli_shanks(3, 13, 2).unwrap(), SqrtResult { root: 4, other_root: 9 });
        assert_eq!(tonelli_shanks(5, 7, 3), Err(Error::NotAResidue { a: 5, p: 7 }));
        assert_eq!(tonelli_shanks(0, 7, 3).unwrap(), SqrtResult { root: 0, other_root: 0 });
    }

    #[test]
    fn root_sum_examples() {
        let out = cipolla_sum(3, 13, 2).unwrap();
        assert_eq!((out.result.root, out.sum_value, out.fell_back), (4, 4, false));
        let out = cipolla_sum(4, 7, 3).unwrap();
        assert_eq!((out.result.root, out.sum_value, out.fell_back), (2, 5, false));
        let out = cipolla_sum(1, 13, 2).unwrap();
        assert_eq!((out.result.root, out.sum_value, out.fell_back), (1, 12, false));
    }

    #[test]
    fn root_sum_beyond_small_k() {
        // p = 11, a = 3 separates the exponent (n+1)/2 from 2(n+1)
        assert!(!cipolla_sum(3, 11, 2).unwrap().fell_back);
        // k = 4 and k = 5
        for (p, z) in [(17u64, 3u64), (97, 5)] {
            for a in 1..p {
                if is_qnr(a, p) {
                    continue;
                }
                let out = cipolla_sum(a, p, z).unwrap();
                assert!(!out.fell_back, "p = {p}, a = {a}");
                assert_eq!(out.result, tonelli_shanks(a, p, z).unwrap());
            }
        }
    }

    #[test]
    fn rejects_bad_nonresidue() {
        assert!(tonelli_shanks(4, 7, 2).is_err());
        assert!(cipolla_sum(4, 7, 2).is_err());
    }
}
