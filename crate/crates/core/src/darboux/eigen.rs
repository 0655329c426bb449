use super::family::{family_coeffs, power_truncation_roots, x_expansion};
use super::{DarbouxError, EigenfunctionSpec, Family, FamilyKind, LameProblem, Parity, Period, Variant};
use crate::expansions::{series_jet_x, Jet, SeriesExpansion};
use crate::recurrence::{
    backward_minimal_solve, characteristic_roots, continued_fraction_residual, forward_solve,
    SpectralResult,
};
use crate::specfun::{jacobi, Modulus};

/// Spectrum of a finite family: delegates to the characteristic problem
/// with the energy as spectral parameter.
pub fn spectrum(prob: &LameProblem, spec: &EigenfunctionSpec) -> Result<SpectralResult, DarbouxError> {
    let n = spec
        .truncation
        .ok_or_else(|| DarbouxError::Regime("spectrum needs a finite truncation".into()))?;
    let coeffs = family_coeffs(&spec.family, prob)?;
    Ok(characteristic_roots(&coeffs, n)?)
}

/// Continued-fraction eigenvalues of an infinite series inside a window,
/// with the depth doubled until the residual roots stabilize.
pub fn infinite_spectrum(
    prob: &LameProblem,
    index: u8,
    window: (f64, f64),
    count: usize,
) -> Result<Vec<f64>, DarbouxError> {
    let family = Family::new(FamilyKind::Infinite, index, Variant::Ring);
    let (ring, tilde) = power_truncation_roots(index, prob.l, prob.m);
    if ring.is_some() || tilde.is_some() {
        return Err(DarbouxError::Truncates { index });
    }
    let coeffs = family_coeffs(&family, prob)?.canonicalized();
    let (lo, hi) = window;
    let steps = 600.max(40 * count);
    let mut roots = Vec::new();
    let mut depth = 40;
    loop {
        roots.clear();
        let f = |e: f64| {
            // Signed continued-fraction deviation for root bracketing.
            let mut tail = 0.0f64;
            for k in (1..=depth).rev() {
                let mut den = coeffs.beta_eff(k, e) - tail;
                if den == 0.0 {
                    den = 1e-30;
                }
                tail = coeffs.alpha(k - 1) * coeffs.gamma_eff(k) / den;
            }
            coeffs.beta_eff(0, e) - tail
        };
        let dx = (hi - lo) / steps as f64;
        let mut prev = f(lo);
        for k in 1..=steps {
            let x = lo + dx * k as f64;
            let cur = f(x);
            if prev.is_finite() && cur.is_finite() && prev * cur < 0.0 {
                let (mut a, mut b) = (x - dx, x);
                let mut fa = prev;
                for _ in 0..200 {
                    let mid = 0.5 * (a + b);
                    if (b - a).abs() < 2.0 * f64::EPSILON * mid.abs().max(1.0) {
                        break;
                    }
                    let fm = f(mid);
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
        }
        // Keep only roots whose residual survives a depth escalation.
        let deeper = depth * 2;
        let stable: Vec<f64> = roots
            .iter()
            .copied()
            .filter(|&e| continued_fraction_residual(&coeffs, e, deeper) < 1e-8 * (1.0 + e.abs()))
            .collect();
        if stable.len() >= count || depth >= 1280 {
            let mut out = stable;
            out.truncate(count.max(1));
            if out.is_empty() {
                return Err(DarbouxError::Recurrence(
                    crate::recurrence::RecurrenceError::NoRootsFound,
                ));
            }
            // Polish each root at a depth far beyond the stabilization
            // level so the fraction's own truncation no longer limits it.
            let polish_depth = 2000;
            let f = |e: f64| {
                let mut tail = 0.0f64;
                for k in (1..=polish_depth).rev() {
                    let mut den = coeffs.beta_eff(k, e) - tail;
                    if den == 0.0 {
                        den = 1e-30;
                    }
                    tail = coeffs.alpha(k - 1) * coeffs.gamma_eff(k) / den;
                }
                coeffs.beta_eff(0, e) - tail
            };
            for e in out.iter_mut() {
                let delta = 1e-5 * (1.0 + e.abs());
                let (mut a, mut b) = (*e - delta, *e + delta);
                let (mut fa, fb) = (f(a), f(b));
                if fa * fb < 0.0 {
                    for _ in 0..200 {
                        let mid = 0.5 * (a + b);
                        if (b - a).abs() < 2.0 * f64::EPSILON * mid.abs().max(1.0) {
                            break;
                        }
                        let fm = f(mid);
                        if fa * fm <= 0.0 {
                            b = mid;
                        } else {
                            a = mid;
                            fa = fm;
                        }
                    }
                    *e = 0.5 * (a + b);
                }
            }
            return Ok(out);
        }
        depth *= 2;
    }
}

/// A series solution assembled in the elliptic variable: signed sn/cn
/// factors, a real dn power, and the x-space series part.
#[derive(Debug, Clone)]
pub struct USolution {
    exp: SeriesExpansion,
    b: Vec<f64>,
    sn_pow: i32,
    cn_pow: i32,
    dn_pow: f64,
    k2: Modulus,
}

impl USolution {
    fn new(exp: SeriesExpansion, b: Vec<f64>, l: f64, k2: Modulus) -> USolution {
        let sn_pow = (2.0 * exp.prefactor.x).round() as i32;
        let cn_pow = (2.0 * exp.prefactor.one_minus_x).round() as i32;
        debug_assert!((2.0 * exp.prefactor.x - sn_pow as f64).abs() < 1e-12);
        debug_assert!((2.0 * exp.prefactor.one_minus_x - cn_pow as f64).abs() < 1e-12);
        let dn_pow = (l + 1.0) + 2.0 * exp.prefactor.one_minus_x_over_a;
        USolution { exp, b, sn_pow, cn_pow, dn_pow, k2 }
    }

    /// Value and u-derivatives of the eigenfunction form at u.
    pub fn eval_jet(&self, u: f64) -> Result<Jet, DarbouxError> {
        let k2 = self.k2.k2();
        let t = jacobi(u, self.k2);
        let (sn, cn, dn) = (t.sn, t.cn, t.dn);
        let s_jet = Jet { v: sn, d1: cn * dn, d2: -sn * dn * dn - k2 * sn * cn * cn };
        let c_jet = Jet { v: cn, d1: -sn * dn, d2: -cn * dn * dn + k2 * sn * sn * cn };
        let d_jet = Jet {
            v: dn,
            d1: -k2 * sn * cn,
            d2: -k2 * dn * (cn * cn - sn * sn),
        };
        // x = sn^2 u as a jet in u.
        let x_jet = Jet {
            v: sn * sn,
            d1: 2.0 * sn * cn * dn,
            d2: 2.0 * (cn * cn * dn * dn - sn * sn * dn * dn - k2 * sn * sn * cn * cn),
        };
        let g = series_jet_x(&self.exp, &self.b, x_jet.v)?;
        let mut out = g.chain(x_jet);
        // dn^E with E real; dn > 0 always.
        let e = self.dn_pow;
        if e != 0.0 {
            let p = Jet {
                v: dn.powf(e),
                d1: e * dn.powf(e - 1.0) * d_jet.d1,
                d2: e * (e - 1.0) * dn.powf(e - 2.0) * d_jet.d1 * d_jet.d1
                    + e * dn.powf(e - 1.0) * d_jet.d2,
            };
            out = out * p;
        }
        for _ in 0..self.sn_pow {
            out = out * s_jet;
        }
        for _ in 0..self.cn_pow {
            out = out * c_jet;
        }
        Ok(out)
    }
}

/// Crossing-aware evaluator for the hypergeometric families, whose series
/// representations have reflection kinks on a lattice of quarter periods.
/// Local Frobenius pairs around the even lattice (series in sn^2) and the
/// odd lattice (series in cn^2) are matched window by window.
#[derive(Debug, Clone)]
pub struct HypWalker {
    s_even: USolution,
    s_odd: USolution,
    ss_even: USolution,
    ss_odd: USolution,
    kq: f64,
    /// Window ownership threshold on cn^2.
    c_split: f64,
    /// reps[j + REP_RADIUS] are the basis coefficients on the window
    /// centered at j K, in the window's local pair.
    reps: Vec<(f64, f64)>,
}

const REP_RADIUS: i64 = 12;

fn match_pair(
    b1: &USolution,
    b2: &USolution,
    value: Jet,
    u: f64,
) -> Result<(f64, f64), DarbouxError> {
    let j1 = b1.eval_jet(u)?;
    let j2 = b2.eval_jet(u)?;
    let det = j1.v * j2.d1 - j1.d1 * j2.v;
    if det.abs() < 1e-250 {
        return Err(DarbouxError::Regime("degenerate continuation basis".into()));
    }
    let c1 = (value.v * j2.d1 - value.d1 * j2.v) / det;
    let c2 = (j1.v * value.d1 - j1.d1 * value.v) / det;
    Ok((c1, c2))
}

impl HypWalker {
    fn new(own: &USolution, prob: &LameProblem, energy: f64, own_center_even: bool) -> Result<HypWalker, DarbouxError> {
        let kq = prob.quarter_period();
        let a = 1.0 / prob.k2.k2();
        let c_split = 0.5 * (0.9 * (a - 1.0)).min(1.0);
        // Forward Frobenius pairs at this energy: exponents 0 and 1/2 at
        // the even lattice (indices 1, 2 of the sn^2 group) and at the odd
        // lattice (indices 1, 3 of the cn^2 group).
        let l = prob.lf();
        let build = |kind: FamilyKind, index: u8, x_max: f64| -> Result<USolution, DarbouxError> {
            let fam = Family::new(kind, index, Variant::Ring);
            let exp = x_expansion(&fam, prob, energy)?;
            let n_terms = ((-41.5 / x_max.ln()).ceil() as usize).clamp(80, 4000);
            let b = forward_solve(&exp.coeffs, n_terms, exp.params.q)?;
            Ok(USolution::new(exp, b.b, l, prob.k2))
        };
        let s_max = 1.0 - 0.9 * c_split;
        let ss_max = (c_split / (a - 1.0).min(1.0)).min(0.9);
        let s_even = build(FamilyKind::SnPower, 1, s_max)?;
        let s_odd = build(FamilyKind::SnPower, 2, s_max)?;
        let ss_even = build(FamilyKind::CnPower, 1, ss_max)?;
        let ss_odd = build(FamilyKind::CnPower, 3, ss_max)?;
        let mut walker = HypWalker {
            s_even,
            s_odd,
            ss_even,
            ss_odd,
            kq,
            c_split,
            reps: vec![(f64::NAN, f64::NAN); (2 * REP_RADIUS + 1) as usize],
        };
        // Seed the native window from the family's own form, then march.
        let start = if own_center_even { 0i64 } else { 1i64 };
        let u_seed = walker.boundary_point(start, 1);
        let seed_val = own.eval_jet(u_seed)?;
        let (p1, p2) = walker.pair(start);
        let rep = match_pair(p1, p2, seed_val, u_seed)?;
        walker.set_rep(start, rep);
        for j in (start + 1)..=REP_RADIUS {
            walker.extend(j - 1, j)?;
        }
        for j in (-REP_RADIUS..start).rev() {
            walker.extend(j + 1, j)?;
        }
        Ok(walker)
    }

    fn pair(&self, j: i64) -> (&USolution, &USolution) {
        if j.rem_euclid(2) == 0 {
            (&self.s_even, &self.s_odd)
        } else {
            (&self.ss_even, &self.ss_odd)
        }
    }

    fn set_rep(&mut self, j: i64, rep: (f64, f64)) {
        self.reps[(j + REP_RADIUS) as usize] = rep;
    }

    fn rep(&self, j: i64) -> (f64, f64) {
        self.reps[(j + REP_RADIUS) as usize]
    }

    /// The point between centers j K and (j + dir) K where cn^2 crosses the
    /// ownership threshold. cn^2 is 1 at even lattice points, 0 at odd ones
    /// and monotone in between, so the crossing is unique.
    fn boundary_point(&self, j: i64, dir: i64) -> f64 {
        let g = |u: f64| {
            let t = jacobi(u, self.k2());
            t.cn * t.cn - self.c_split
        };
        let (mut a, mut b) = (j as f64 * self.kq, (j + dir) as f64 * self.kq);
        let mut fa = g(a);
        for _ in 0..80 {
            let mid = 0.5 * (a + b);
            let fm = g(mid);
            if fa * fm <= 0.0 {
                b = mid;
            } else {
                a = mid;
                fa = fm;
            }
        }
        0.5 * (a + b)
    }

    fn k2(&self) -> Modulus {
        self.s_even.k2
    }

    fn extend(&mut self, from: i64, to: i64) -> Result<(), DarbouxError> {
        let u = self.boundary_point(from, to - from);
        let (b1, b2) = self.pair(from);
        let (c1, c2) = self.rep(from);
        let v1 = b1.eval_jet(u)?;
        let v2 = b2.eval_jet(u)?;
        let value = v1.scale(c1) + v2.scale(c2);
        let (n1, n2) = self.pair(to);
        let rep = match_pair(n1, n2, value, u)?;
        self.set_rep(to, rep);
        Ok(())
    }

    /// Window owning u under the cn^2 threshold rule.
    fn window_of(&self, u: f64) -> i64 {
        let t = jacobi(u, self.k2());
        let r = u / self.kq;
        if t.cn * t.cn >= self.c_split {
            2 * (r / 2.0).round() as i64
        } else {
            2 * ((r - 1.0) / 2.0).round() as i64 + 1
        }
    }

    pub fn eval_jet(&self, u: f64) -> Result<Jet, DarbouxError> {
        let j = self.window_of(u);
        if j.abs() > REP_RADIUS {
            return Err(DarbouxError::Regime(format!(
                "u = {u} outside the prepared window range"
            )));
        }
        let (c1, c2) = self.rep(j);
        let (b1, b2) = self.pair(j);
        Ok(b1.eval_jet(u)?.scale(c1) + b2.eval_jet(u)?.scale(c2))
    }
}

/// A concrete eigenfunction: a catalogued family pinned at an eigenvalue.
#[derive(Debug, Clone)]
pub struct LameEigenfunction {
    pub prob: LameProblem,
    pub spec: EigenfunctionSpec,
    pub energy: f64,
    body: Body,
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
enum Body {
    Global(USolution),
    Walker(Box<HypWalker>),
}

impl LameEigenfunction {
    pub fn eval_jet(&self, u: f64) -> Result<Jet, DarbouxError> {
        match &self.body {
            Body::Global(s) => s.eval_jet(u),
            Body::Walker(w) => w.eval_jet(u),
        }
    }

    pub fn eval(&self, u: f64) -> Result<f64, DarbouxError> {
        Ok(self.eval_jet(u)?.v)
    }

    /// Residual of the wave equation at u.
    pub fn residual(&self, u: f64) -> Result<f64, DarbouxError> {
        let jet = self.eval_jet(u)?;
        Ok(super::lame_residual(&self.prob, self.energy, u, (jet.v, jet.d1, jet.d2)))
    }
}

/// Builds the finite-series eigenfunction of a family at an eigenvalue.
/// The energy must sit on the family's spectrum.
pub fn eigenfunction(
    prob: &LameProblem,
    spec: &EigenfunctionSpec,
    energy: f64,
) -> Result<LameEigenfunction, DarbouxError> {
    let n = spec
        .truncation
        .ok_or_else(|| DarbouxError::Regime("use infinite_eigenfunction for infinite series".into()))?;
    let sp = spectrum(prob, spec)?;
    if !sp
        .eigenvalues
        .iter()
        .any(|&e| (e - energy).abs() <= 1e-9 * (1.0 + e.abs()))
    {
        return Err(DarbouxError::OffSpectrum { energy });
    }
    let exp = x_expansion(&spec.family, prob, energy)?;
    let b = forward_solve(&exp.coeffs, n, exp.params.q)?;
    let own = USolution::new(exp, b.b, prob.lf(), prob.k2);
    let body = match spec.family.kind {
        FamilyKind::SnPower | FamilyKind::CnPower => Body::Global(own),
        FamilyKind::SdHyp => Body::Walker(Box::new(HypWalker::new(&own, prob, energy, true)?)),
        FamilyKind::CnHyp => Body::Walker(Box::new(HypWalker::new(&own, prob, energy, false)?)),
        FamilyKind::Infinite => unreachable!(),
    };
    Ok(LameEigenfunction { prob: *prob, spec: spec.clone(), energy, body })
}

/// Builds a bounded infinite-series eigenfunction at a continued-fraction
/// eigenvalue, with minimal-solution coefficients.
pub fn infinite_eigenfunction(
    prob: &LameProblem,
    index: u8,
    energy: f64,
) -> Result<LameEigenfunction, DarbouxError> {
    // Enough terms for the sn^2 argument: the minimal ratio is k^2 < 1.
    let n_terms = ((-41.5 / prob.k2.k2().ln()).ceil() as usize).clamp(60, 4000);
    infinite_eigenfunction_with_depth(prob, index, energy, n_terms)
}

/// Same, with an explicit series depth (used by the depth-stability check).
pub fn infinite_eigenfunction_with_depth(
    prob: &LameProblem,
    index: u8,
    energy: f64,
    n_terms: usize,
) -> Result<LameEigenfunction, DarbouxError> {
    let (ring, tilde) = power_truncation_roots(index, prob.l, prob.m);
    if ring.is_some() || tilde.is_some() {
        return Err(DarbouxError::Truncates { index });
    }
    let family = Family::new(FamilyKind::Infinite, index, Variant::Ring);
    let coeffs = family_coeffs(&family, prob)?;
    let r = continued_fraction_residual(&coeffs.canonicalized(), energy, 400);
    if r > 1e-6 * (1.0 + energy.abs()) {
        return Err(DarbouxError::OffSpectrum { energy });
    }
    let exp = x_expansion(&family, prob, energy)?;
    let b = backward_minimal_solve(&exp.coeffs, n_terms, exp.params.q)?;
    let spec = super::family::family_spec(&family, prob)?
        .ok_or(DarbouxError::Truncates { index })?;
    let own = USolution::new(exp, b.b, prob.lf(), prob.k2);
    Ok(LameEigenfunction { prob: *prob, spec, energy, body: Body::Global(own) })
}

/// Outcome of the numeric parity and period check.
#[derive(Debug, Clone)]
pub struct ParityReport {
    pub parity_deviation: f64,
    pub period_deviation: f64,
    pub worst_u: f64,
    pub passed: bool,
}

/// Asserts the labelled parity about the family's center and the labelled
/// periodicity: psi(u + 2K) = (+-) psi(u) for the power families, and the
/// mid-band rule psi(u + 4K) = -psi(u) for the hypergeometric families.
pub fn parity_period_verify(
    f: &LameEigenfunction,
    samples: usize,
    tol: f64,
) -> Result<ParityReport, DarbouxError> {
    let kq = f.prob.quarter_period();
    let center = if f.spec.parity_center_at_k { kq } else { 0.0 };
    let parity_sign = match f.spec.parity {
        Parity::Even => 1.0,
        Parity::Odd => -1.0,
    };
    let hyp = matches!(f.spec.family.kind, FamilyKind::SdHyp | FamilyKind::CnHyp);
    let (shift, period_sign) = match (hyp, f.spec.period) {
        (false, Period::TwoK) => (2.0 * kq, 1.0),
        (false, Period::FourK) => (2.0 * kq, -1.0),
        (true, _) => (4.0 * kq, -1.0),
    };
    let mut scale = 0.0f64;
    let mut vals = Vec::with_capacity(samples);
    for i in 0..samples {
        let v = 0.045 * kq + 0.85 * kq * (i as f64 / samples.max(2) as f64) * 2.0;
        let base = f.eval(center + v)?;
        scale = scale.max(base.abs());
        vals.push((v, base));
    }
    let mut parity_dev = 0.0f64;
    let mut period_dev = 0.0f64;
    let mut worst = 0.0f64;
    for (v, base) in vals {
        let mirrored = f.eval(center - v)?;
        let d = (mirrored - parity_sign * base).abs();
        if d > parity_dev {
            parity_dev = d;
            worst = center - v;
        }
        let shifted = f.eval(center + v + shift)?;
        let d = (shifted - period_sign * base).abs();
        if d > period_dev {
            period_dev = d;
            worst = center + v + shift;
        }
    }
    let norm = scale.max(1e-30);
    let parity_deviation = parity_dev / norm;
    let period_deviation = period_dev / norm;
    Ok(ParityReport {
        parity_deviation,
        period_deviation,
        worst_u: worst,
        passed: parity_deviation < tol && period_deviation < tol,
    })
}
