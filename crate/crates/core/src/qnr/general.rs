//! Trace determinants of even-degree period polynomials.

use super::{Method, QnrCertificate, RejectReason, Rejection};
use crate::arith::{euler_phi, gcd, multiplicative_order};
use crate::cyclo::{cyclic_subgroup, period_polynomial_of, subgroups_of_order, PeriodSpec};
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::poly::rabin_irreducible;
use crate::tracemat::power_basis_trace_matrix;

/// `floor(4 (ln q)^2 + 16)`.
pub fn default_bound(desc: &FieldDescriptor) -> u64 {
    let l = desc.ln_q();
    (4.0 * l * l + 16.0).floor() as u64
}

/// Subgroup of order `phi(r)/d` meeting `<q>` trivially, `d = ord_r(q)`.
fn screen(r: u64, q_r: u64) -> Option<PeriodSpec> {
    let d = multiplicative_order(q_r, r)?;
    if d % 2 != 0 {
        return None;
    }
    let e = euler_phi(r) / d;
    let powers = cyclic_subgroup(q_r, r);
    let subs = subgroups_of_order(r, e);
    let k = subs
        .iter()
        .find(|k| k.iter().all(|&x| x == 1 || powers.binary_search(&x).is_err()))?;
    PeriodSpec::from_subgroup(r, k).ok()
}

/// Every `r` in `[3, bound]` passing the screen, ascending, with its spec.
///
/// The screen asks for `d = ord_r(q)` even and a subgroup `K` of index `d`
/// with `<q> ∩ K = {1}`, so that Frobenius permutes the `d` periods in a
/// single cycle. When several subgroups qualify the least one is used.
pub fn period_parameter_candidates(
    desc: &FieldDescriptor,
    bound: u64,
) -> impl Iterator<Item = PeriodSpec> + '_ {
    let p = desc.p();
    (3..=bound)
        .filter(move |&r| gcd(r, p) == 1)
        .filter_map(move |r| screen(r, desc.q_mod(r)))
}

/// The smallest screened `r <= bound`.
pub fn find_period_parameters(desc: &FieldDescriptor, bound: u64) -> Result<PeriodSpec> {
    if bound < 3 {
        return Err(Error::InvalidInput(format!("bound {bound} is below 3")));
    }
    period_parameter_candidates(desc, bound)
        .next()
        .ok_or(Error::NoParametersFound { bound, rejections: Vec::new() })
}

/// Builds the period polynomial for each screened `r` in turn, checks that it
/// is irreducible over `F_q`, and returns the determinant of its trace matrix.
pub fn qnr_general(desc: &FieldDescriptor) -> Result<QnrCertificate> {
    let bound = default_bound(desc);
    let p = desc.p();
    let n = desc.degree() as u64;
    let mut rejections = Vec::new();
    for spec in period_parameter_candidates(desc, bound) {
        let r = spec.r;
        let reject = |reason| Rejection { r, reason };
        let psi = match period_polynomial_of(&spec) {
            Ok(psi) => psi,
            Err(_) => {
                rejections.push(reject(RejectReason::NonIntegerCoefficients));
                continue;
            }
        };
        let psi_p = psi.reduce_mod(p);
        // irreducible over F_p of degree d stays so over F_{p^n} iff gcd(d, n) = 1
        if !rabin_irreducible(&psi_p) || gcd(spec.d, n) != 1 {
            rejections.push(reject(RejectReason::Reducible));
            continue;
        }
        let t = power_basis_trace_matrix(&psi_p)?;
        let det = t.det();
        if det == 0 {
            rejections.push(reject(RejectReason::SingularTraceMatrix));
            continue;
        }
        let mut cert = QnrCertificate::new(desc, Method::General, det);
        cert.r = Some(r);
        cert.d = Some(spec.d);
        cert.e = Some(spec.e);
        cert.transcript.psi = Some(psi.to_string());
        cert.transcript.psi_mod_p = Some(psi_p.to_string());
        cert.transcript.trace_matrix = Some(t.entries);
        cert.transcript.trace_det = Some(det);
        cert.transcript.rejections = rejections.clone();
        match cert.verify(desc) {
            Some(cert) => return Ok(cert),
            None => rejections.push(reject(RejectReason::NotVerified { value: det })),
        }
    }
    Err(Error::NoParametersFound { bound, rejections })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> FieldDescriptor {
        FieldDescriptor::prime(p).unwrap()
    }

    fn params(q: u64) -> (u64, u64, u64) {
        let s = find_period_parameters(&prime(q), default_bound(&prime(q))).unwrap();
        (s.r, s.d, s.e)
    }

    #[test]
    fn parameter_examples() {
        assert_eq!(params(7), (4, 2, 1));
        assert_eq!(params(13), (5, 4, 1));
        assert_eq!(params(3), (4, 2, 1));
        assert_eq!(params(5).0, 3);
        let s = find_period_parameters(&prime(109), 100).unwrap();
        assert_eq!((s.r, s.d, s.subgroup.clone()), (8, 2, vec![1, 3]));
        assert!(find_period_parameters(&prime(7), 2).is_err());
    }

    #[test]
    fn general_examples() {
        let c = qnr_general(&prime(7)).unwrap();
        assert_eq!((c.value, c.r), (3, Some(4)));
        assert_eq!(c.transcript.psi.as_deref(), Some("1,0,1"));
        assert_eq!(c.transcript.trace_matrix, Some(vec![vec![2, 0], vec![0, 5]]));
        let c = qnr_general(&prime(5)).unwrap();
        assert_eq!((c.value, c.r), (2, Some(3)));
        assert_eq!(c.transcript.psi.as_deref(), Some("1,1,1"));
        let c = qnr_general(&prime(109)).unwrap();
        assert_eq!((c.value, c.r), (101, Some(8)));
        assert_eq!(c.transcript.psi.as_deref(), Some("2,0,1"));
    }

    #[test]
    fn no_parameters_below_tight_bound() {
        // 13 needs r = 5
        assert!(matches!(
            find_period_parameters(&prime(13), 4),
            Err(Error::NoParametersFound { bound: 4, .. })
        ));
    }
}
