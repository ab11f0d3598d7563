//! Trace matrices of power bases and the residue class of their determinants.

use serde::{Deserialize, Serialize};

use crate::arith::{add_mod, mod_inverse, mul_mod, neg_mod, sub_mod};
use crate::error::{Error, Result};
use crate::field::{partial_trace, QuotientRing};
use crate::poly::{rabin_irreducible, FpPoly};
use crate::symbols::{euler_criterion, SymbolValue};

/// `T[i][j] = Tr(x^(i+j))` for the power basis of `F_p[x]/f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceMatrix {
    pub n: usize,
    pub p: u64,
    pub entries: Vec<Vec<u64>>,
}

impl TraceMatrix {
    /// Hankel matrix from the power sums `s_0, ..., s_(2n-2)`.
    fn from_power_sums(p: u64, sums: &[u64]) -> Self {
        let n = sums.len().div_ceil(2);
        let entries = (0..n).map(|i| (0..n).map(|j| sums[i + j]).collect()).collect();
        TraceMatrix { n, p, entries }
    }

    pub fn is_hankel(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let k = i + j;
                let (i0, j0) = if k < self.n { (0, k) } else { (k - self.n + 1, self.n - 1) };
                self.entries[i][j] == self.entries[i0][j0]
            })
        })
    }
}

/// Power sums `s_k` of the roots of a monic `f`, for `k = 0..count`, by Newton's identities.
pub fn newton_power_sums(f: &FpPoly, count: usize) -> Vec<u64> {
    let p = f.p();
    let n = f.degree().expect("nonzero polynomial");
    // c(i) is the coefficient of x^(n-i)
    let c = |i: usize| f.coeff(n - i);
    let mut s = Vec::with_capacity(count);
    for k in 0..count {
        let value = if k == 0 {
            n as u64 % p
        } else {
            let mut acc = 0u64;
            let upper = if k <= n { k } else { n + 1 };
            for i in 1..upper {
                acc = add_mod(acc, mul_mod(c(i), s[k - i], p), p);
            }
            if k <= n {
                acc = add_mod(acc, mul_mod(k as u64 % p, c(k), p), p);
            }
            neg_mod(acc, p)
        };
        s.push(value);
    }
    s
}

/// The same power sums computed as traces `x^k + x^(kp) + ... ` in `F_p[x]/f`.
pub fn frobenius_power_sums(f: &FpPoly, count: usize) -> Vec<u64> {
    let n = f.degree().expect("nonzero polynomial");
    let ring = QuotientRing::new(f.monic()).expect("monic modulus");
    let x = ring.generator();
    let mut power = ring.one();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let t = partial_trace(&power, 1, n as u64);
        out.push(t.constant_value().expect("trace of a field element lies in F_p"));
        power = power.mul(&x);
    }
    out
}

/// Trace matrix of the power basis of `F_p[x]/f` for irreducible `f`.
pub fn power_basis_trace_matrix(f: &FpPoly) -> Result<TraceMatrix> {
    if !rabin_irreducible(f) {
        return Err(Error::ReduciblePolynomial { p: f.p() });
    }
    let f = f.monic();
    let n = f.degree().unwrap();
    Ok(TraceMatrix::from_power_sums(f.p(), &newton_power_sums(&f, 2 * n - 1)))
}

/// Determinant of a square matrix over `F_p` by Gaussian elimination.
pub fn det_mod_p(entries: &[Vec<u64>], p: u64) -> u64 {
    let n = entries.len();
    let mut m: Vec<Vec<u64>> = entries.iter().map(|row| row.iter().map(|v| v % p).collect()).collect();
    let mut det = 1u64;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if pivot != col {
            m.swap(pivot, col);
            det = neg_mod(det, p);
        }
        det = mul_mod(det, m[col][col], p);
        let inv = mod_inverse(m[col][col], p).expect("nonzero pivot mod a prime");
        for row in col + 1..n {
            let factor = mul_mod(m[row][col], inv, p);
            if factor == 0 {
                continue;
            }
            for k in col..n {
                let t = mul_mod(factor, m[col][k], p);
                m[row][k] = sub_mod(m[row][k], t, p);
            }
        }
    }
    det
}

impl TraceMatrix {
    pub fn det(&self) -> u64 {
        det_mod_p(&self.entries, self.p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ResidueClass {
    Residue,
    Nonresidue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceClassification {
    pub det: u64,
    /// Nonresidue exactly when the degree is even.
    pub predicted: ResidueClass,
    pub verified: ResidueClass,
    pub pass: bool,
}

/// Predicts the residue class of `det T` from the parity of `deg f` and checks
/// it against Euler's criterion.
pub fn classify_trace_determinant(f: &FpPoly) -> Result<TraceClassification> {
    let t = power_basis_trace_matrix(f)?;
    let det = t.det();
    let verified = match euler_criterion(det, t.p)? {
        SymbolValue::Zero => return Err(Error::SingularTraceMatrix { p: t.p }),
        SymbolValue::PlusOne => ResidueClass::Residue,
        SymbolValue::MinusOne => ResidueClass::Nonresidue,
    };
    let predicted = if t.n % 2 == 0 { ResidueClass::Nonresidue } else { ResidueClass::Residue };
    Ok(TraceClassification { det, predicted, verified, pass: predicted == verified })
}
