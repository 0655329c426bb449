use super::evaluate::{sum_basis_jets, Jet};
use super::{ExpansionError, TermBasis};
use crate::heun::{CheParams, HeunError};
use crate::recurrence::{coeffs_split, ThreeTermCoeffs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheKind {
    /// Power series around x = 0 with a linear gamma coefficient.
    Power,
    /// Series of regularized hypergeometric functions.
    Hyp,
}

/// A confluent-Heun series solution; the spectral split is in sigma.
#[derive(Debug, Clone)]
pub struct CheExpansion {
    pub params: CheParams,
    pub kind: CheKind,
    pub coeffs: ThreeTermCoeffs,
    pub basis: TermBasis,
}

/// Builds the power-series or hypergeometric-series solution of the
/// confluent equation.
pub fn che_expansion(p: &CheParams, kind: CheKind) -> Result<CheExpansion, HeunError> {
    if p.rho == 0.0 {
        return Err(HeunError::ZeroRho);
    }
    let (ga, de, al, rho, sigma) = (p.gamma, p.delta, p.alpha, p.rho, p.sigma);
    let (coeffs, basis) = match kind {
        CheKind::Power => (
            coeffs_split(
                move |n| {
                    let nf = n as f64;
                    (nf + ga) * (nf + 1.0)
                },
                move |n| {
                    let nf = n as f64;
                    -(nf * nf + (ga + de - 1.0 - rho) * nf)
                },
                |_| -1.0,
                move |n| {
                    let nf = n as f64;
                    -rho * (nf + al - 1.0)
                },
            ),
            TermBasis::Power,
        ),
        CheKind::Hyp => (
            coeffs_split(
                move |n| n as f64 + 1.0,
                move |n| {
                    let nf = n as f64;
                    -(nf * nf + (2.0 * al + 1.0 - ga - de - rho) * nf)
                        - al * (al + 1.0 - ga - de)
                },
                |_| -1.0,
                move |n| {
                    let nf = n as f64;
                    -rho * (nf + al - 1.0) * (nf + al - de)
                },
            ),
            TermBasis::HypShifted { a0: al, b: ga + de - al - 1.0, c0: ga },
        ),
    };
    let _ = sigma;
    Ok(CheExpansion { params: *p, kind, coeffs, basis })
}

impl CheExpansion {
    /// Value and x-derivatives at x for a coefficient vector.
    pub fn evaluate_jet(&self, b: &[f64], x: f64) -> Result<Jet, ExpansionError> {
        sum_basis_jets(&self.basis, b, x)
    }

    /// beta rows at the expansion's own sigma.
    pub fn sigma(&self) -> f64 {
        self.params.sigma
    }
}
