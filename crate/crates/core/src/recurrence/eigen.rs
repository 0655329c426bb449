use super::{
    arscott_check, forward_solve, CoefficientVector, RecurrenceError, SpectralResult,
    ThreeTermCoeffs,
};

/// Number of eigenvalues of a symmetric tridiagonal matrix strictly below
/// `lambda`, from the signs of the LDLT pivots (Sturm sequence).
fn sturm_count(diag: &[f64], off: &[f64], lambda: f64) -> usize {
    let n = diag.len();
    let pivot_guard = 1e-300;
    let mut count = 0;
    let mut q = diag[0] - lambda;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let q_safe = if q.abs() < pivot_guard {
            if q >= 0.0 {
                pivot_guard
            } else {
                -pivot_guard
            }
        } else {
            q
        };
        q = (diag[i] - lambda) - off[i - 1] * off[i - 1] / q_safe;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues of a symmetric tridiagonal matrix by Sturm bisection.
fn symmetric_tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    if n == 1 {
        return vec![diag[0]];
    }
    let mut lo = f64::MAX;
    let mut hi = f64::MIN;
    for i in 0..n {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i < n - 1 { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    lo -= 1.0;
    hi += 1.0;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut a = lo;
        let mut b = hi;
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if (b - a) < 2.0 * f64::EPSILON * mid.abs().max(1.0) {
                break;
            }
            if sturm_count(diag, off, mid) <= k {
                a = mid;
            } else {
                b = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

fn last_row_residual(c: &ThreeTermCoeffs, n: usize, lambda: f64, v: &CoefficientVector) -> f64 {
    let mid = c.beta_eff(n, lambda) * v.b[n];
    let down = if n >= 1 { c.gamma_eff(n) * v.b[n - 1] } else { 0.0 };
    let scale = (c.beta_base(n).abs() + lambda.abs() * c.weight(n).unwrap_or(0.0).abs())
        * v.b[n].abs()
        + down.abs();
    (mid + down).abs() / scale.max(1.0)
}

/// All real roots of the (N+1)-row characteristic problem in the spectral
/// parameter. With the Arscott condition the matrix pencil symmetrizes and
/// exactly N+1 real roots are returned; otherwise a determinant sign scan
/// over the Gershgorin window locates the real roots.
pub fn characteristic_roots(
    c: &ThreeTermCoeffs,
    n: usize,
) -> Result<SpectralResult, RecurrenceError> {
    let c = c.canonicalized();
    let arscott_ok = arscott_check(&c, n)?;
    let mut eigenvalues = if arscott_ok {
        // Diagonal similarity plus the weight scaling turn the pencil into a
        // symmetric ordinary eigenproblem: d_i = B_i/w_i,
        // e_i = sqrt(alpha_i gamma_{i+1}) / sqrt(w_i w_{i+1}).
        let diag: Vec<f64> = (0..=n).map(|i| c.beta_eff(i, 0.0) / c.weight(i).unwrap()).collect();
        let off: Vec<f64> = (0..n)
            .map(|i| {
                (c.alpha(i) * c.gamma_eff(i + 1)).sqrt()
                    / (c.weight(i).unwrap() * c.weight(i + 1).unwrap()).sqrt()
            })
            .collect();
        symmetric_tridiagonal_eigenvalues(&diag, &off)
    } else {
        scan_roots(&c, n)?
    };
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut residuals = Vec::with_capacity(eigenvalues.len());
    let mut vectors = Vec::with_capacity(eigenvalues.len());
    for &ev in &eigenvalues {
        let v = forward_solve(&c, n, ev)?;
        residuals.push(last_row_residual(&c, n, ev, &v));
        vectors.push(v);
    }
    Ok(SpectralResult { eigenvalues, arscott_ok, residuals, vectors })
}

fn scan_roots(c: &ThreeTermCoeffs, n: usize) -> Result<Vec<f64>, RecurrenceError> {
    // Gershgorin bounds of W^{-1} T localize every real root of the pencil.
    let mut lo = f64::MAX;
    let mut hi = f64::MIN;
    for i in 0..=n {
        let w = c.weight(i).unwrap();
        let center = c.beta_eff(i, 0.0) / w;
        let mut radius = 0.0;
        if i < n {
            radius += c.alpha(i).abs() / w.abs();
        }
        if i >= 1 {
            radius += c.gamma_eff(i).abs() / w.abs();
        }
        lo = lo.min(center - radius);
        hi = hi.max(center + radius);
    }
    lo -= 1.0;
    hi += 1.0;
    let steps = 50 * (n + 1);
    let dx = (hi - lo) / steps as f64;
    let det_sign = |l: f64| super::characteristic_det_scaled(c, n, l).0;
    let mut roots = Vec::new();
    let mut prev_l = lo;
    let mut prev = det_sign(lo);
    for k in 1..=steps {
        let l = lo + dx * k as f64;
        let cur = det_sign(l);
        if prev == 0.0 {
            roots.push(prev_l);
        } else if prev * cur < 0.0 {
            let (mut a, mut b) = (prev_l, l);
            let mut fa = prev;
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if (b - a).abs() < 2.0 * f64::EPSILON * mid.abs().max(1.0) {
                    break;
                }
                let fm = det_sign(mid);
                if fa * fm <= 0.0 {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            roots.push(0.5 * (a + b));
        }
        prev = cur;
        prev_l = l;
    }
    if roots.is_empty() {
        return Err(RecurrenceError::NoRootsFound);
    }
    Ok(roots)
}
