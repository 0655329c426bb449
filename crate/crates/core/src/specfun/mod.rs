//! Self-contained special functions: gamma, Gauss hypergeometric 2F1,
//! complete elliptic integral of the first kind, and Jacobi elliptic
//! functions. Everything is pure and reentrant.

mod elliptic;
mod gamma;
mod hyp;

pub use elliptic::{elliptic_k, jacobi, jacobi_sd_cd, EllipticTriple, Modulus};
pub use gamma::{gamma, recip_gamma};
pub use hyp::{
    closed_form_f, hyp2f1, hyp2f1_contiguous_pair, hyp2f1_regularized, ClosedFormKind,
};

use std::fmt;

/// Errors raised by the special-function layer.
#[derive(Debug, Clone, PartialEq)]
pub enum SpecFunError {
    /// Gamma evaluated at a non-positive integer.
    GammaPole(f64),
    /// 2F1 argument outside |z| <= 1.
    HypDomain { z: f64 },
    /// 2F1 at |z| = 1 with c - a - b <= 0 and non-polynomial parameters.
    HypDivergent { a: f64, b: f64, c: f64 },
    /// c is a non-positive integer whose pole is hit before the series terminates.
    HypInvalidC { c: f64 },
    /// Series failed to converge within the iteration budget.
    NonConvergence { what: &'static str },
    /// Squared modulus outside (0, 1).
    InvalidModulus(f64),
    /// Closed form C requires a != 1/2.
    ClosedFormDegenerate,
}

impl fmt::Display for SpecFunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecFunError::GammaPole(x) => write!(f, "gamma pole at x = {x}"),
            SpecFunError::HypDomain { z } => write!(f, "2F1 argument |z| > 1: z = {z}"),
            SpecFunError::HypDivergent { a, b, c } => {
                write!(f, "2F1 divergent at |z| = 1 for (a,b,c) = ({a},{b},{c})")
            }
            SpecFunError::HypInvalidC { c } => {
                write!(f, "2F1 parameter c = {c} is a non-positive integer")
            }
            SpecFunError::NonConvergence { what } => write!(f, "{what} did not converge"),
            SpecFunError::InvalidModulus(k2) => {
                write!(f, "squared modulus must lie in (0,1), got {k2}")
            }
            SpecFunError::ClosedFormDegenerate => write!(f, "closed form C requires a != 1/2"),
        }
    }
}

impl std::error::Error for SpecFunError {}

/// True if `x` is within `tol` of a non-positive integer.
pub(crate) fn near_nonpositive_int(x: f64, tol: f64) -> bool {
    x <= 0.5 && (x - x.round()).abs() < tol && x.round() <= 0.0
}
