//! Discriminants of Gauss-period halves for conductors built from Fermat primes.

use serde::{Deserialize, Serialize};

use super::{Method, QnrCertificate, RejectReason, Rejection};
use crate::arith::{euler_phi, gcd, mul_mod, multiplicative_order};
use crate::cyclo::cyclotomic_polynomial;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, QuotientRing, RingElement};
use crate::poly::FpPoly;

const FERMAT_PRIMES: [u64; 5] = [3, 5, 17, 257, 65537];

/// Conductors above this ring degree are not attempted.
pub const SPECIAL_RING_DEGREE_CAP: u64 = 256;

/// Integers `2^v0 * F` with `0 <= v0 <= kmax` and `F` a product of distinct
/// Fermat primes, at least 3, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FermatRSet {
    pub kmax: u32,
    pub members: Vec<u64>,
}

pub fn fermat_r_set(kmax: u32) -> FermatRSet {
    let mut members = Vec::new();
    for mask in 0u32..(1 << FERMAT_PRIMES.len()) {
        let odd: u64 = FERMAT_PRIMES
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, f)| f)
            .product();
        for v0 in 0..=kmax {
            let Some(r) = 1u64.checked_shl(v0).and_then(|t| t.checked_mul(odd)) else {
                continue;
            };
            if r >= 3 {
                members.push(r);
            }
        }
    }
    members.sort_unstable();
    members.dedup();
    FermatRSet { kmax, members }
}

/// `ceil(log2 log2 q) + 4`.
pub fn default_kmax(desc: &FieldDescriptor) -> u32 {
    let log2_q = desc.ln_q() / std::f64::consts::LN_2;
    log2_q.log2().ceil().max(0.0) as u32 + 4
}

/// `y^k` in `F_p[y]/Phi_r`, using `y^r = 1`.
fn root_power(ring: &std::sync::Arc<QuotientRing>, k: u64, r: u64) -> RingElement {
    let k = (k % r) as usize;
    let mut v = vec![0u64; k + 1];
    v[k] = 1;
    ring.element(&v)
}

/// Scans the Fermat set for a conductor whose discriminant
/// `D = (tau - tau^q)^2` is a constant nonresidue.
///
/// `tau` is the sum of `y^(q^(2j))` over half the Frobenius orbit of `y`. Since
/// `y` is an `r`-th root of unity each conjugate is the monomial `y^(q^j mod r)`.
pub fn qnr_special(desc: &FieldDescriptor, kmax: u32) -> Result<QnrCertificate> {
    let p = desc.p();
    let mut rejections = Vec::new();
    for r in fermat_r_set(kmax).members {
        if gcd(r, p) != 1 {
            continue;
        }
        let q_r = desc.q_mod(r);
        let d = multiplicative_order(q_r, r).expect("coprime to r");
        if d < 2 {
            continue;
        }
        let phi = euler_phi(r);
        if phi > SPECIAL_RING_DEGREE_CAP {
            rejections.push(Rejection { r, reason: RejectReason::ExceedsCap { degree: phi } });
            continue;
        }
        let m = d.trailing_zeros() as u64;
        let ring = QuotientRing::over(desc, cyclotomic_polynomial(r).reduce_mod(p))?;

        let q2 = mul_mod(q_r, q_r, r);
        let mut tau = ring.zero();
        let mut exp = 1u64;
        for _ in 0..d / 2 {
            tau = tau.add(&root_power(&ring, exp, r));
            exp = mul_mod(exp, q2, r);
        }
        let mut tau_q = ring.zero();
        let mut exp = q_r;
        for _ in 0..d / 2 {
            tau_q = tau_q.add(&root_power(&ring, exp, r));
            exp = mul_mod(exp, q2, r);
        }

        if tau == tau_q {
            rejections.push(Rejection { r, reason: RejectReason::DegenerateTau });
            continue;
        }
        let disc = tau.sub(&tau_q).square();
        let Some(value) = disc.constant_value() else {
            rejections.push(Rejection {
                r,
                reason: RejectReason::NonConstantD { coeffs: disc.coeffs().to_vec() },
            });
            continue;
        };
        let mut cert = QnrCertificate::new(desc, Method::Special, value);
        cert.r = Some(r);
        cert.d = Some(d);
        cert.e = Some(phi / d);
        cert.m = Some(m);
        cert.transcript.tau = Some(FpPoly::new(p, tau.coeffs().to_vec()).to_string());
        cert.transcript.discriminant = Some(value);
        cert.transcript.rejections = rejections.clone();
        match cert.verify(desc) {
            Some(cert) => return Ok(cert),
            None => rejections.push(Rejection { r, reason: RejectReason::NotVerified { value } }),
        }
    }
    Err(Error::FallbackExhausted { rejections })
}
