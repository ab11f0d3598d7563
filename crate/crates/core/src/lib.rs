//! Deterministic construction of quadratic nonresidues in finite fields of odd
//! characteristic, with the supporting arithmetic: prime fields and their
//! odd-degree extensions, cyclotomic integers and Gauss periods, trace
//! matrices, square roots and irreducible polynomials.

pub mod arith;
pub mod cyclo;
pub mod error;
pub mod field;
pub mod irrpoly;
pub mod poly;
pub mod qnr;
pub mod roots;
pub mod symbols;
pub mod tracemat;

pub use error::{Error, Result};
pub use field::{FieldDescriptor, QuotientRing, RingElement};
pub use poly::{factor_degrees, parse_poly, rabin_irreducible, FpPoly};
pub use qnr::{qnr_auto, qnr_general, qnr_least, qnr_special, qnr_with, Method, QnrCertificate};
pub use symbols::SymbolValue;
