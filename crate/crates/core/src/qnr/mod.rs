//! Deterministic nonresidue construction with certificates.
//!
//! Two constructions are available. The Fermat-conductor path works in
//! `F_p[y]/Phi_r(y)` for conductors `r` whose totient is a power of two and
//! reads off a discriminant. The period path builds a period polynomial of
//! even degree that stays irreducible over `F_q` and takes the determinant of
//! its trace matrix. [`qnr_auto`] chains the residue-class shortcut, both
//! constructions and finally the least nonresidue.

mod general;
mod special;

use serde::{Deserialize, Serialize};

pub use general::{default_bound, find_period_parameters, period_parameter_candidates, qnr_general};
pub use special::{default_kmax, fermat_r_set, qnr_special, FermatRSet, SPECIAL_RING_DEGREE_CAP};

use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::symbols::{least_qnr, shortcut_qnr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Special,
    General,
    Least,
    /// Read off the residue class of `p` modulo 8.
    Class,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Special => "special",
            Method::General => "general",
            Method::Least => "least",
            Method::Class => "class",
        })
    }
}

/// Why a conductor `r` was passed over.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RejectReason {
    /// `(tau - tau^q)^2` is not a constant; its coefficients, lowest first.
    NonConstantD { coeffs: Vec<u64> },
    /// `tau^q = tau`.
    DegenerateTau,
    /// A constant was produced but it is a square.
    NotVerified { value: u64 },
    /// The period polynomial is not irreducible over `F_q`.
    Reducible,
    SingularTraceMatrix,
    NonIntegerCoefficients,
    /// `phi(r)` is above the ring-degree cap.
    ExceedsCap { degree: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rejection {
    pub r: u64,
    #[serde(flatten)]
    pub reason: RejectReason,
}

/// Intermediate objects backing a certificate. Fields that do not apply to
/// the method used are left empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Transcript {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub chain: Vec<String>,
    /// Period polynomial over `Z`, comma-separated, lowest degree first.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi_mod_p: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_matrix: Option<Vec<Vec<u64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_det: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rejections: Vec<Rejection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QnrCertificate {
    pub modulus: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ext_modulus: Option<String>,
    pub method: Method,
    pub value: u64,
    pub r: Option<u64>,
    pub d: Option<u64>,
    pub e: Option<u64>,
    pub m: Option<u64>,
    pub verified: bool,
    pub transcript: Transcript,
}

impl QnrCertificate {
    pub(crate) fn new(desc: &FieldDescriptor, method: Method, value: u64) -> Self {
        QnrCertificate {
            modulus: desc.p(),
            ext_modulus: desc.ext_modulus().map(|g| g.to_string()),
            method,
            value,
            r: None,
            d: None,
            e: None,
            m: None,
            verified: false,
            transcript: Transcript::default(),
        }
    }

    /// Re-runs the Euler check in `F_q` and sets `verified`.
    pub(crate) fn verify(mut self, desc: &FieldDescriptor) -> Option<Self> {
        self.verified = desc.is_nonresidue(self.value);
        self.verified.then_some(self)
    }
}

/// Least `z >= 2` in the prime field that is a nonresidue of `F_q`.
///
/// An element of `F_p` is a square in an odd-degree extension exactly when it
/// is a square in `F_p`, so this is `least_qnr(p)` in every case.
pub fn qnr_least(desc: &FieldDescriptor) -> Result<QnrCertificate> {
    let z = least_qnr(desc.p())?;
    QnrCertificate::new(desc, Method::Least, z)
        .verify(desc)
        .ok_or_else(|| Error::InvalidInput(format!("least nonresidue {z} failed verification")))
}

/// Nonresidue from `p mod 8`; prime fields only.
pub fn qnr_class(desc: &FieldDescriptor) -> Result<QnrCertificate> {
    if !desc.is_prime_field() {
        return Err(Error::InvalidInput("the residue-class shortcut needs a prime field".into()));
    }
    let z = shortcut_qnr(desc.p())?;
    QnrCertificate::new(desc, Method::Class, z)
        .verify(desc)
        .ok_or(Error::NoShortcut(desc.p()))
}

/// Shortcut, then the Fermat-conductor path, then the period path, then the
/// least nonresidue. The first verified result wins.
pub fn qnr_auto(desc: &FieldDescriptor) -> Result<QnrCertificate> {
    let mut chain = Vec::new();

    if desc.is_prime_field() {
        match qnr_class(desc) {
            Ok(mut cert) => {
                chain.push(format!("class: p = {} mod 8", desc.p() % 8));
                cert.transcript.chain = chain;
                return Ok(cert);
            }
            Err(err) => chain.push(format!("class: {err}")),
        }
    } else {
        chain.push("class: skipped for an extension field".into());
    }

    let mut carried = Vec::new();
    match qnr_special(desc, default_kmax(desc)) {
        Ok(mut cert) => {
            chain.push(format!("special: r = {}", cert.r.unwrap_or(0)));
            cert.transcript.chain = chain;
            return Ok(cert);
        }
        Err(Error::FallbackExhausted { rejections }) => {
            chain.push(format!("special: exhausted after {} rejections", rejections.len()));
            carried = rejections;
        }
        Err(err) => chain.push(format!("special: {err}")),
    }

    match qnr_general(desc) {
        Ok(mut cert) => {
            chain.push(format!("general: r = {}", cert.r.unwrap_or(0)));
            cert.transcript.chain = chain;
            cert.transcript.rejections.splice(0..0, carried);
            return Ok(cert);
        }
        Err(err) => chain.push(format!("general: {err}")),
    }

    let mut cert = qnr_least(desc)?;
    chain.push("least".into());
    cert.transcript.chain = chain;
    cert.transcript.rejections = carried;
    Ok(cert)
}

/// Dispatch by method name.
pub fn qnr_with(desc: &FieldDescriptor, method: Option<Method>) -> Result<QnrCertificate> {
    match method {
        None => qnr_auto(desc),
        Some(Method::Special) => qnr_special(desc, default_kmax(desc)),
        Some(Method::General) => qnr_general(desc),
        Some(Method::Least) => qnr_least(desc),
        Some(Method::Class) => qnr_class(desc),
    }
}
