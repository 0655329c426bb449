//! Parameter algebra for Heun's general equation: the parameter tuple, the
//! eight homotopic transformations, three Moebius transformations, the
//! hypergeometric reductions, the confluent limit, and the ODE-residual
//! evaluator used as the universal correctness oracle.

mod reduce;
mod transform;

pub use reduce::{reduce_to_hypergeometric, HypergeometricReduction, ReductionCase, ZMap};
pub use transform::{homotopy, moebius, ArgMap, MoebiusKind, Prefactor, TransformedSolution};

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum HeunError {
    /// The singularity location a may not coincide with 0 or 1.
    InvalidSingularity(f64),
    /// Homotopic transformation index outside 1..=8.
    InvalidIndex(usize),
    /// Residual requested at a singular point of the equation.
    SingularPoint(f64),
    /// The confluent limit requires rho != 0.
    ZeroRho,
}

impl fmt::Display for HeunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeunError::InvalidSingularity(a) => write!(f, "a = {a} is not allowed (a must avoid 0 and 1)"),
            HeunError::InvalidIndex(i) => write!(f, "homotopic index {i} outside 1..=8"),
            HeunError::SingularPoint(x) => write!(f, "x = {x} is a singular point"),
            HeunError::ZeroRho => write!(f, "confluent limit needs rho != 0"),
        }
    }
}

impl std::error::Error for HeunError {}

/// Parameter tuple (a, q; alpha, beta, gamma, delta) with epsilon derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeunParams {
    pub a: f64,
    pub q: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl HeunParams {
    pub fn new(a: f64, q: f64, alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self, HeunError> {
        if a == 0.0 || a == 1.0 || !a.is_finite() {
            return Err(HeunError::InvalidSingularity(a));
        }
        Ok(HeunParams { a, q, alpha, beta, gamma, delta })
    }

    /// Degenerate locations a = 0 and a = 1 are only ever needed by the
    /// hypergeometric-reduction checks; everything else goes through `new`.
    pub fn new_unchecked(a: f64, q: f64, alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        HeunParams { a, q, alpha, beta, gamma, delta }
    }

    pub fn epsilon(&self) -> f64 {
        self.alpha + self.beta + 1.0 - self.gamma - self.delta
    }

    /// Interchanges alpha and beta; the equation is symmetric under this.
    pub fn swap_ab(&self) -> Self {
        HeunParams { alpha: self.beta, beta: self.alpha, ..*self }
    }
}

/// Normalized residual of the Heun equation at x for an evaluator returning
/// (H, H', H'').
pub fn ode_residual<F>(evaluate: F, p: &HeunParams, x: f64) -> Result<f64, HeunError>
where
    F: Fn(f64) -> (f64, f64, f64),
{
    for s in [0.0, 1.0, p.a] {
        if (x - s).abs() < 1e-12 {
            return Err(HeunError::SingularPoint(x));
        }
    }
    let (h, h1, h2) = evaluate(x);
    let lhs = h2
        + (p.gamma / x + p.delta / (x - 1.0) + p.epsilon() / (x - p.a)) * h1
        + (p.alpha * p.beta * x - p.q) / (x * (x - 1.0) * (x - p.a)) * h;
    Ok(lhs.abs() / h2.abs().max(1.0))
}

/// Parameters of the confluent Heun equation reached in the limit where a,
/// beta and q grow together.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheParams {
    pub gamma: f64,
    pub delta: f64,
    pub alpha: f64,
    pub rho: f64,
    pub sigma: f64,
}

/// Confluent limit: keeps (gamma, delta, alpha), replaces (a, beta, q) by
/// the scaled constants (rho, sigma).
pub fn confluent_limit(p: &HeunParams, rho: f64, sigma: f64) -> Result<CheParams, HeunError> {
    if rho == 0.0 {
        return Err(HeunError::ZeroRho);
    }
    Ok(CheParams { gamma: p.gamma, delta: p.delta, alpha: p.alpha, rho, sigma })
}

/// Normalized residual of the confluent Heun equation at x.
pub fn che_residual<F>(evaluate: F, p: &CheParams, x: f64) -> Result<f64, HeunError>
where
    F: Fn(f64) -> (f64, f64, f64),
{
    for s in [0.0, 1.0] {
        if (x - s).abs() < 1e-12 {
            return Err(HeunError::SingularPoint(x));
        }
    }
    let (s, s1, s2) = evaluate(x);
    let w = x * (x - 1.0);
    let lhs = s2
        + (-p.gamma + (p.gamma + p.delta) * x + p.rho * w) / w * s1
        + (p.alpha * p.rho * x - p.sigma) / w * s;
    Ok(lhs.abs() / s2.abs().max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_is_derived() {
        let p = HeunParams::new(2.0, 0.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(p.epsilon(), 1.0);
        // Associated-Lame family: gamma = delta = 1/2, a = 1/k^2.
        let (l, m) = (2.0, 0.5);
        let p = HeunParams::new(4.0, 0.1, (l - m + 1.0) / 2.0, (l + m + 2.0) / 2.0, 0.5, 0.5).unwrap();
        assert!((p.epsilon() - (l + 1.5)).abs() < 1e-15);
    }

    #[test]
    fn forbidden_locations() {
        assert!(HeunParams::new(1.0, 0.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(HeunParams::new(0.0, 0.0, 1.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn zero_function_has_zero_residual() {
        let p = HeunParams::new(3.0, 0.4, 0.3, 0.9, 0.7, 1.1).unwrap();
        let r = ode_residual(|_| (0.0, 0.0, 0.0), &p, 0.5).unwrap();
        assert_eq!(r, 0.0);
        assert!(ode_residual(|_| (0.0, 0.0, 0.0), &p, 3.0).is_err());
    }

    #[test]
    fn confluent_record() {
        let p = HeunParams::new(2.0, 0.0, 0.8, 1.0, 1.0, 1.0).unwrap();
        let c = confluent_limit(&p, 1.0, 0.0).unwrap();
        assert_eq!((c.gamma, c.delta, c.alpha, c.rho, c.sigma), (1.0, 1.0, 0.8, 1.0, 0.0));
        assert!(matches!(confluent_limit(&p, 0.0, 1.0), Err(HeunError::ZeroRho)));
    }
}
