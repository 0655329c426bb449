use super::{CoefficientVector, RecurrenceError, ThreeTermCoeffs};

/// Poincare-Perron ratio limits for coefficient families growing at most
/// quadratically: the two roots of A t^2 + B t + C = 0 where A, B, C are the
/// limits of alpha_n/n^2, beta_n/n^2, gamma_n/n^2. Returned as (t1, t2) with
/// |t1| <= |t2|; errors when the moduli coincide.
pub fn minimal_ratio_limits(c: &ThreeTermCoeffs) -> Result<(f64, f64), RecurrenceError> {
    let limit = |f: &dyn Fn(usize) -> f64| {
        // Richardson step kills the 1/n term of f(n)/n^2.
        let n1 = 1usize << 20;
        let n2 = 1usize << 21;
        let v1 = f(n1) / (n1 as f64 * n1 as f64);
        let v2 = f(n2) / (n2 as f64 * n2 as f64);
        2.0 * v2 - v1
    };
    let a = limit(&|n| c.alpha(n));
    let b = limit(&|n| c.beta(n, 0.0));
    let g = limit(&|n| c.gamma(n));
    let (t1, t2) = if a.abs() < 1e-9 {
        // Linear leading behavior: one ratio collapses to zero.
        (-g / b, f64::INFINITY)
    } else {
        let disc = b * b - 4.0 * a * g;
        if disc < 0.0 {
            return Err(RecurrenceError::DegenerateRatioLimits { t: (g / a).abs().sqrt() });
        }
        let r = disc.sqrt();
        let x1 = (-b + r) / (2.0 * a);
        let x2 = (-b - r) / (2.0 * a);
        if x1.abs() <= x2.abs() {
            (x1, x2)
        } else {
            (x2, x1)
        }
    };
    if ((t1.abs() - t2.abs()).abs()) < 1e-6 * t2.abs().max(1.0) {
        return Err(RecurrenceError::DegenerateRatioLimits { t: t1 });
    }
    Ok((t1, t2))
}

/// Minimal solution by backward recurrence: ratios r_n = b_{n+1}/b_n seeded
/// at the asymptotic minimal ratio far beyond `n_needed`, recursed downward,
/// then b_0 normalized to 1. The start index doubles until the result is
/// stable to 1e-12; after three escalations the solve reports failure.
pub fn backward_minimal_solve(
    c: &ThreeTermCoeffs,
    n_needed: usize,
    lambda: f64,
) -> Result<CoefficientVector, RecurrenceError> {
    let (t1, _) = minimal_ratio_limits(c)?;
    let seed = if t1.is_finite() { t1 } else { 0.0 };
    let compute = |n_start: usize| -> Vec<f64> {
        let mut r = seed;
        let mut ratios = vec![0.0; n_start];
        for n in (1..=n_start).rev() {
            let den = c.beta_eff(n, lambda) + c.alpha(n) * r;
            r = if den == 0.0 { -c.gamma_eff(n) / 1e-300 } else { -c.gamma_eff(n) / den };
            ratios[n - 1] = r;
        }
        let mut b = Vec::with_capacity(n_needed + 1);
        b.push(1.0);
        for n in 1..=n_needed {
            let prev = *b.last().unwrap();
            b.push(prev * ratios[n - 1]);
        }
        b
    };
    let mut n_start = (4 * n_needed).max(60);
    let mut current = compute(n_start);
    for _ in 0..4 {
        n_start *= 2;
        let refined = compute(n_start);
        let stable = current.iter().zip(refined.iter()).all(|(x, y)| {
            (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1e-280)
        });
        if stable {
            return Ok(CoefficientVector { b: refined });
        }
        current = refined;
    }
    Err(RecurrenceError::BackwardUnstable)
}
