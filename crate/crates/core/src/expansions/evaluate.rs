use super::{ExpansionError, SeriesExpansion, TermBasis};
use crate::recurrence::{backward_minimal_solve, forward_solve};
use crate::specfun::{hyp2f1, hyp2f1_regularized};

/// Value with first and second derivatives with respect to one variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub fn constant(v: f64) -> Jet {
        Jet { v, d1: 0.0, d2: 0.0 }
    }

    pub fn variable(v: f64) -> Jet {
        Jet { v, d1: 1.0, d2: 0.0 }
    }

    pub fn scale(self, s: f64) -> Jet {
        Jet { v: s * self.v, d1: s * self.d1, d2: s * self.d2 }
    }

    /// Composition g(f): outer jet `self` holds derivatives in f's value.
    pub fn chain(self, inner: Jet) -> Jet {
        Jet {
            v: self.v,
            d1: self.d1 * inner.d1,
            d2: self.d2 * inner.d1 * inner.d1 + self.d1 * inner.d2,
        }
    }
}

impl std::ops::Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet { v: self.v + o.v, d1: self.d1 + o.d1, d2: self.d2 + o.d2 }
    }
}

impl std::ops::Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        }
    }
}

/// Sums b_n * basis_n(z) as a jet in z. `z` must lie in the basis domain.
pub fn sum_basis_jets(basis: &TermBasis, b: &[f64], z: f64) -> Result<Jet, ExpansionError> {
    let mut v = 0.0;
    let mut d1 = 0.0;
    let mut d2 = 0.0;
    match basis {
        TermBasis::Power => {
            for (n, &bn) in b.iter().enumerate() {
                let nf = n as f64;
                let zn2 = if n >= 2 { z.powi(n as i32 - 2) } else { 0.0 };
                let zn1 = if n >= 1 { z.powi(n as i32 - 1) } else { 0.0 };
                let zn = z.powi(n as i32);
                v += bn * zn;
                d1 += bn * nf * zn1;
                d2 += bn * nf * (nf - 1.0) * zn2;
            }
        }
        TermBasis::HypShifted { a0, b: bb, c0 } => {
            for (n, &bn) in b.iter().enumerate() {
                let nf = n as f64;
                let (a, c) = (a0 + nf, c0 + nf);
                let f0 = hyp2f1_regularized(a, *bb, c, z)?;
                let f1 = a * bb * hyp2f1_regularized(a + 1.0, bb + 1.0, c + 1.0, z)?;
                let f2 = a * bb * (a + 1.0) * (bb + 1.0)
                    * hyp2f1_regularized(a + 2.0, bb + 2.0, c + 2.0, z)?;
                let zn2 = if n >= 2 { z.powi(n as i32 - 2) } else { 0.0 };
                let zn1 = if n >= 1 { z.powi(n as i32 - 1) } else { 0.0 };
                let zn = z.powi(n as i32);
                v += bn * zn * f0;
                d1 += bn * (nf * zn1 * f0 + zn * f1);
                d2 += bn * (nf * (nf - 1.0) * zn2 * f0 + 2.0 * nf * zn1 * f1 + zn * f2);
            }
        }
        TermBasis::HypFixedC { lambda, mu, c } => {
            for (n, &bn) in b.iter().enumerate() {
                let nf = n as f64;
                let (a, bb) = (lambda + nf, mu - nf);
                let f0 = hyp2f1(a, bb, *c, z)?;
                let f1 = a * bb / c * hyp2f1(a + 1.0, bb + 1.0, c + 1.0, z)?;
                let f2 = a * bb * (a + 1.0) * (bb + 1.0) / (c * (c + 1.0))
                    * hyp2f1(a + 2.0, bb + 2.0, c + 2.0, z)?;
                v += bn * f0;
                d1 += bn * f1;
                d2 += bn * f2;
            }
        }
    }
    Ok(Jet { v, d1, d2 })
}

/// Evaluation strategy for the coefficient vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalMode {
    /// Finite series of N+1 terms solved forward.
    Truncated(usize),
    /// Minimal-solution infinite series summed to a relative tolerance.
    Adaptive { tol: f64 },
}

/// Value of the expansion at x with explicit coefficients.
pub fn evaluate_with_coeffs(
    e: &SeriesExpansion,
    b: &[f64],
    x: f64,
) -> Result<f64, ExpansionError> {
    Ok(evaluate_jet(e, b, x)?.v)
}

/// Basis sum chained through the argument map, without the prefactor:
/// jets of sum_n b_n basis_n(z(x)) with respect to x.
pub fn series_jet_x(e: &SeriesExpansion, b: &[f64], x: f64) -> Result<Jet, ExpansionError> {
    let a = e.params.a;
    let z = e.arg.eval(x, a);
    let (z1, z2) = e.arg.derivs(x, a);
    let s = sum_basis_jets(&e.basis, b, z)?;
    Ok(Jet { v: s.v, d1: s.d1 * z1, d2: s.d2 * z1 * z1 + s.d1 * z2 })
}

/// Value and x-derivatives of the composite prefactor(x) * sum at x.
pub fn evaluate_jet(e: &SeriesExpansion, b: &[f64], x: f64) -> Result<Jet, ExpansionError> {
    let a = e.params.a;
    let g = series_jet_x(e, b, x)?;
    // Prefactor via its logarithmic derivative.
    let p = e.prefactor;
    let pv = p.eval(x, a);
    let mut l = 0.0;
    let mut l1 = 0.0;
    if p.x != 0.0 {
        l += p.x / x;
        l1 += -p.x / (x * x);
    }
    if p.one_minus_x != 0.0 {
        l += -p.one_minus_x / (1.0 - x);
        l1 += -p.one_minus_x / ((1.0 - x) * (1.0 - x));
    }
    if p.one_minus_x_over_a != 0.0 {
        l += -p.one_minus_x_over_a / (a - x);
        l1 += -p.one_minus_x_over_a / ((a - x) * (a - x));
    }
    let h = pv * g.v;
    let h1 = pv * (l * g.v + g.d1);
    let h2 = pv * ((l * l + l1) * g.v + 2.0 * l * g.d1 + g.d2);
    Ok(Jet { v: h, d1: h1, d2: h2 })
}

/// Coefficients for the requested mode at the expansion's own q.
pub fn coefficients(e: &SeriesExpansion, mode: EvalMode) -> Result<Vec<f64>, ExpansionError> {
    let q = e.params.q;
    match mode {
        EvalMode::Truncated(n) => Ok(forward_solve(&e.coeffs, n, q)?.b),
        EvalMode::Adaptive { .. } => {
            let mut len = 96;
            loop {
                let v = backward_minimal_solve(&e.coeffs, len, q)?;
                // Enough terms when the scaled tail is far below working
                // precision; the summation itself re-checks termwise.
                let m = v.b.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                let tail = v.b[len].abs();
                if tail <= 1e-18 * m || len >= 6144 {
                    return Ok(v.b);
                }
                len *= 2;
            }
        }
    }
}

/// Evaluates the expansion at x: prefactor times the basis sum, with the
/// coefficient vector chosen by `mode`.
pub fn evaluate(e: &SeriesExpansion, x: f64, mode: EvalMode) -> Result<f64, ExpansionError> {
    let b = coefficients(e, mode)?;
    let trimmed = match mode {
        EvalMode::Truncated(_) => b,
        EvalMode::Adaptive { tol } => {
            // The region check only applies to infinite series.
            let region = super::convergence_region(e)?;
            let z = e.arg.eval(x, e.params.a);
            let rad = match e.group {
                super::Group::PowerAt0 => region.radius,
                _ => 1.0,
            };
            if z.abs() > rad - 1e-12 {
                return Err(ExpansionError::OutOfRegion { x });
            }
            adaptive_trim(&e.basis, &b, z, tol)?
        }
    };
    evaluate_with_coeffs(e, &trimmed, x)
}

fn adaptive_trim(
    basis: &TermBasis,
    b: &[f64],
    z: f64,
    tol: f64,
) -> Result<Vec<f64>, ExpansionError> {
    // Keep terms until three consecutive ones fall below tol * |partial|.
    let mut partial = 0.0f64;
    let mut small_streak = 0;
    for (n, &bn) in b.iter().enumerate() {
        let mag = match basis {
            TermBasis::Power | TermBasis::HypShifted { .. } => bn * z.powi(n as i32),
            TermBasis::HypFixedC { .. } => bn,
        };
        partial += mag;
        if mag.abs() < tol * partial.abs().max(1e-300) {
            small_streak += 1;
            if small_streak >= 3 {
                return Ok(b[..=n].to_vec());
            }
        } else {
            small_streak = 0;
        }
    }
    Err(ExpansionError::NonConvergence)
}
