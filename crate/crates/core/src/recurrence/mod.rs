//! Generic engine for three-term recurrence relations
//! alpha_n b_{n+1} + beta_n b_n + gamma_n b_{n-1} = 0 (n >= 0, b_{-1} = 0):
//! forward and backward-minimal solving, truncation detection, characteristic
//! determinants and continued fractions, the Arscott real-spectrum test, and
//! antidiagonal similarity between two recurrences.
//!
//! A recurrence may carry a spectral split beta_n(L) = B_n - L w_n with
//! w_n > 0 after canonicalization; the characteristic problem is then an
//! eigenvalue problem in L.

mod eigen;
mod minimal;

pub use eigen::characteristic_roots;
pub use minimal::{backward_minimal_solve, minimal_ratio_limits};

use std::fmt;
use std::sync::Arc;

pub type CoeffFn = Arc<dyn Fn(usize) -> f64 + Send + Sync>;

#[derive(Debug, Clone, PartialEq)]
pub enum RecurrenceError {
    /// alpha_n vanished before the requested index.
    ZeroPivot { n: usize },
    /// The two ratio limits coincide; no minimal solution is singled out.
    DegenerateRatioLimits { t: f64 },
    /// Backward solve failed its stability test after the escalation budget.
    BackwardUnstable,
    /// Sign-change scan found no roots in the search window.
    NoRootsFound,
    /// Operation requires the spectral split.
    MissingSpectralSplit,
    /// The two recurrences have different lengths.
    DimensionMismatch { left: usize, right: usize },
}

impl fmt::Display for RecurrenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecurrenceError::ZeroPivot { n } => write!(f, "alpha_{n} = 0, forward solve blocked"),
            RecurrenceError::DegenerateRatioLimits { t } => {
                write!(f, "ratio limits coincide at {t}")
            }
            RecurrenceError::BackwardUnstable => write!(f, "backward minimal solve did not stabilize"),
            RecurrenceError::NoRootsFound => write!(f, "no characteristic roots in the scan window"),
            RecurrenceError::MissingSpectralSplit => write!(f, "operation needs a spectral split"),
            RecurrenceError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
        }
    }
}

impl std::error::Error for RecurrenceError {}

/// Where the extra coefficient alpha_{-1} enters the low-order rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbedForm {
    /// n = 1 row uses gamma_1 + alpha_{-1}.
    R2,
    /// n = 0 row uses beta_0 + alpha_{-1}.
    R3,
}

/// Generator of the recurrence coefficients, with an optional spectral split
/// and an optional perturbed low-order form.
#[derive(Clone)]
pub struct ThreeTermCoeffs {
    alpha: CoeffFn,
    beta_base: CoeffFn,
    /// Some(w) means beta_n(L) = beta_base(n) - L * w(n).
    weight: Option<CoeffFn>,
    gamma: CoeffFn,
    pub alpha_minus1: Option<(f64, PerturbedForm)>,
}

impl fmt::Debug for ThreeTermCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ThreeTermCoeffs")
            .field("spectral", &self.weight.is_some())
            .field("alpha_minus1", &self.alpha_minus1)
            .finish()
    }
}

impl ThreeTermCoeffs {
    pub fn new(alpha: CoeffFn, beta: CoeffFn, gamma: CoeffFn) -> Self {
        ThreeTermCoeffs { alpha, beta_base: beta, weight: None, gamma, alpha_minus1: None }
    }

    pub fn with_split(alpha: CoeffFn, beta_base: CoeffFn, weight: CoeffFn, gamma: CoeffFn) -> Self {
        ThreeTermCoeffs { alpha, beta_base, weight: Some(weight), gamma, alpha_minus1: None }
    }

    pub fn with_alpha_minus1(mut self, value: f64, form: PerturbedForm) -> Self {
        self.alpha_minus1 = Some((value, form));
        self
    }

    pub fn has_split(&self) -> bool {
        self.weight.is_some()
    }

    pub fn alpha(&self, n: usize) -> f64 {
        (self.alpha)(n)
    }

    pub fn gamma(&self, n: usize) -> f64 {
        (self.gamma)(n)
    }

    pub fn beta_base(&self, n: usize) -> f64 {
        (self.beta_base)(n)
    }

    pub fn weight(&self, n: usize) -> Option<f64> {
        self.weight.as_ref().map(|w| w(n))
    }

    /// beta_n at the spectral value; `lambda` is ignored without a split.
    pub fn beta(&self, n: usize, lambda: f64) -> f64 {
        match &self.weight {
            Some(w) => (self.beta_base)(n) - lambda * w(n),
            None => (self.beta_base)(n),
        }
    }

    /// Effective row entries honoring the perturbed forms.
    pub fn beta_eff(&self, n: usize, lambda: f64) -> f64 {
        let mut b = self.beta(n, lambda);
        if n == 0 {
            if let Some((v, PerturbedForm::R3)) = self.alpha_minus1 {
                b += v;
            }
        }
        b
    }

    pub fn gamma_eff(&self, n: usize) -> f64 {
        let mut g = self.gamma(n);
        if n == 1 {
            if let Some((v, PerturbedForm::R2)) = self.alpha_minus1 {
                g += v;
            }
        }
        g
    }

    /// Re-expresses the split in a new spectral variable through the affine
    /// substitution L_old = shift + scale * L_new.
    pub fn re_split(&self, shift: f64, scale: f64) -> ThreeTermCoeffs {
        let w = self.weight.clone().expect("re_split needs a spectral split");
        let base = self.beta_base.clone();
        let w2 = w.clone();
        ThreeTermCoeffs {
            alpha: self.alpha.clone(),
            beta_base: Arc::new(move |n| base(n) - shift * w(n)),
            weight: Some(Arc::new(move |n| scale * w2(n))),
            gamma: self.gamma.clone(),
            alpha_minus1: self.alpha_minus1,
        }
    }

    /// Flips every row sign so that the spectral weight is positive.
    /// The recurrence and its characteristic roots are unchanged.
    pub fn canonicalized(&self) -> ThreeTermCoeffs {
        if let Some(w) = &self.weight {
            if w(0) < 0.0 {
                let alpha = self.alpha.clone();
                let beta = self.beta_base.clone();
                let weight = w.clone();
                let gamma = self.gamma.clone();
                return ThreeTermCoeffs {
                    alpha: Arc::new(move |n| -alpha(n)),
                    beta_base: Arc::new(move |n| -beta(n)),
                    weight: Some(Arc::new(move |n| -weight(n))),
                    gamma: Arc::new(move |n| -gamma(n)),
                    alpha_minus1: self.alpha_minus1.map(|(v, f)| (-v, f)),
                };
            }
        }
        self.clone()
    }
}

/// Solution vector b_0..b_N with b_0 = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    pub b: Vec<f64>,
}

impl CoefficientVector {
    /// Largest relative residual of the interior rows 1..N-1 plus row 0.
    pub fn row_residual(&self, c: &ThreeTermCoeffs, lambda: f64) -> f64 {
        let n = self.b.len();
        let mut worst = 0.0f64;
        for k in 0..n.saturating_sub(1) {
            let up = self.b[k + 1] * c.alpha(k);
            let mid = self.b[k] * c.beta_eff(k, lambda);
            let down = if k >= 1 { self.b[k - 1] * c.gamma_eff(k) } else { 0.0 };
            let scale = up.abs().max(mid.abs()).max(down.abs()).max(1e-300);
            worst = worst.max((up + mid + down).abs() / scale);
        }
        worst
    }
}

/// Forward solve: b_0 = 1, successive b_n from the rows 0..N-1.
pub fn forward_solve(
    c: &ThreeTermCoeffs,
    n_terms: usize,
    lambda: f64,
) -> Result<CoefficientVector, RecurrenceError> {
    let mut b = Vec::with_capacity(n_terms + 1);
    b.push(1.0);
    for n in 0..n_terms {
        let a = c.alpha(n);
        if a.abs() < 1e-300 {
            return Err(RecurrenceError::ZeroPivot { n });
        }
        let mid = c.beta_eff(n, lambda) * b[n];
        let down = if n >= 1 { c.gamma_eff(n) * b[n - 1] } else { 0.0 };
        b.push(-(mid + down) / a);
    }
    Ok(CoefficientVector { b })
}

/// Smallest N < n_max with gamma_{N+1} = 0, if any.
pub fn detect_truncation(c: &ThreeTermCoeffs, n_max: usize) -> Option<usize> {
    (0..n_max).find(|&n| c.gamma_eff(n + 1).abs() < 1e-12)
}

/// Determinant of the (N+1)x(N+1) tridiagonal characteristic matrix at
/// `lambda`, as (mantissa, binary exponent) to dodge overflow.
pub fn characteristic_det_scaled(c: &ThreeTermCoeffs, n: usize, lambda: f64) -> (f64, i64) {
    let mut dm2 = 1.0f64; // D_{-1}
    let mut dm1 = c.beta_eff(0, lambda); // D_0
    let mut exp = 0i64;
    for k in 1..=n {
        let d = c.beta_eff(k, lambda) * dm1 - c.alpha(k - 1) * c.gamma_eff(k) * dm2;
        dm2 = dm1;
        dm1 = d;
        let m = dm1.abs().max(dm2.abs());
        if m > 1e100 {
            dm1 *= 1e-100;
            dm2 *= 1e-100;
            exp += 332; // ~ log2(1e100)
        } else if m < 1e-100 && m > 0.0 {
            dm1 *= 1e100;
            dm2 *= 1e100;
            exp -= 332;
        }
    }
    (dm1, exp)
}

/// Plain determinant value; may overflow to +-inf for large N.
pub fn characteristic_det(c: &ThreeTermCoeffs, n: usize, lambda: f64) -> f64 {
    let (m, e) = characteristic_det_scaled(c, n, lambda);
    m * 2f64.powi(e.clamp(-1000, 1000) as i32)
}

/// Arscott test: every product alpha_{i-1} gamma_i positive, i = 1..N, with
/// the spectral split present (the base entries are L-independent by type).
pub fn arscott_check(c: &ThreeTermCoeffs, n: usize) -> Result<bool, RecurrenceError> {
    if !c.has_split() {
        return Err(RecurrenceError::MissingSpectralSplit);
    }
    Ok((1..=n).all(|i| c.alpha(i - 1) * c.gamma_eff(i) > 0.0))
}

/// |beta_0 - K_{k=1}^{depth} (alpha_{k-1} gamma_k / beta_k)| evaluated
/// bottom-up; near zero at eigenvalues of the infinite problem.
pub fn continued_fraction_residual(c: &ThreeTermCoeffs, lambda: f64, depth: usize) -> f64 {
    let mut tail = 0.0f64;
    for k in (1..=depth).rev() {
        let mut den = c.beta_eff(k, lambda) - tail;
        if den == 0.0 {
            den = 1e-30;
        }
        tail = c.alpha(k - 1) * c.gamma_eff(k) / den;
    }
    (c.beta_eff(0, lambda) - tail).abs()
}

/// Spectrum of a finite (N+1)-row problem.
#[derive(Debug, Clone)]
pub struct SpectralResult {
    /// Ascending; repeated entries indicate a numerically degenerate cluster.
    pub eigenvalues: Vec<f64>,
    pub arscott_ok: bool,
    /// Last-row relative residual of the forward-solved vector per eigenvalue.
    pub residuals: Vec<f64>,
    pub vectors: Vec<CoefficientVector>,
}

impl SpectralResult {
    /// Eigenvalues clustered at relative tolerance `tol`, with multiplicity.
    pub fn clustered(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for &e in &self.eigenvalues {
            match out.last_mut() {
                Some((v, count)) if (e - *v).abs() <= tol * (1.0 + v.abs()) => *count += 1,
                _ => out.push((e, 1)),
            }
        }
        out
    }
}

/// Elementwise antidiagonal similarity: matrix(cB) equals the double
/// reversal U matrix(cA) U. Implies identical characteristic polynomials.
pub fn antidiagonal_similarity_check(
    ca: &ThreeTermCoeffs,
    cb: &ThreeTermCoeffs,
    n: usize,
) -> Result<bool, RecurrenceError> {
    if !ca.has_split() || !cb.has_split() {
        return Err(RecurrenceError::MissingSpectralSplit);
    }
    let tol = 1e-10;
    let close = |x: f64, y: f64| (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0);
    for i in 0..=n {
        let j = n - i;
        if !close(cb.beta_base(i), ca.beta_base(j)) {
            return Ok(false);
        }
        if !close(cb.weight(i).unwrap(), ca.weight(j).unwrap()) {
            return Ok(false);
        }
        if i < n {
            // super-diagonal of B against sub-diagonal of A and vice versa
            if !close(cb.alpha(i), ca.gamma_eff(n - i)) {
                return Ok(false);
            }
            if !close(cb.gamma_eff(i + 1), ca.alpha(n - i - 1)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Convenience constructor from plain closures.
pub fn coeffs<A, B, G>(alpha: A, beta: B, gamma: G) -> ThreeTermCoeffs
where
    A: Fn(usize) -> f64 + Send + Sync + 'static,
    B: Fn(usize) -> f64 + Send + Sync + 'static,
    G: Fn(usize) -> f64 + Send + Sync + 'static,
{
    ThreeTermCoeffs::new(Arc::new(alpha), Arc::new(beta), Arc::new(gamma))
}

/// Convenience constructor with a spectral split.
pub fn coeffs_split<A, B, W, G>(alpha: A, beta_base: B, weight: W, gamma: G) -> ThreeTermCoeffs
where
    A: Fn(usize) -> f64 + Send + Sync + 'static,
    B: Fn(usize) -> f64 + Send + Sync + 'static,
    W: Fn(usize) -> f64 + Send + Sync + 'static,
    G: Fn(usize) -> f64 + Send + Sync + 'static,
{
    ThreeTermCoeffs::with_split(Arc::new(alpha), Arc::new(beta_base), Arc::new(weight), Arc::new(gamma))
}
