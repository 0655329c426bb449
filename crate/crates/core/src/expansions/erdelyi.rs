use super::{ExpansionError, Group, SeriesExpansion, TermBasis};
use crate::heun::{ArgMap, HeunParams, Prefactor};
use crate::recurrence::{PerturbedForm, ThreeTermCoeffs};

/// The two instantiated branches of the fixed-denominator expansions in
/// hypergeometric functions F(n + lambda, -n + mu; gamma; x).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErdelyiBranch {
    /// lambda = alpha, mu = gamma + delta - 1 - alpha.
    LambdaAlpha,
    /// lambda = gamma + delta - 1, mu = 0 (polynomial basis terms).
    Svartholm,
}

fn near_int(x: f64) -> Option<i64> {
    let r = x.round();
    ((x - r).abs() < 1e-12).then_some(r as i64)
}

const ORDER_GUARD: usize = 512;

/// The displayed coefficient quotients develop removable zeros at the two
/// parameter sets that trigger the perturbed low-order forms; the closures
/// below carry the cancelled variants so every row stays finite.
fn lambda_alpha_coeffs(p: &HeunParams) -> Result<ThreeTermCoeffs, ExpansionError> {
    let (a, al, be, ga, de) = (p.a, p.alpha, p.beta, p.gamma, p.delta);
    let s = 2.0 * al - ga - de;
    let special = near_int(s).filter(|k| *k == 0 || *k == -1);
    if special.is_none() {
        if let Some(k) = near_int(s) {
            if k <= -2 && ((-k - 2) as usize) < 2 * ORDER_GUARD {
                return Err(ExpansionError::ExcludedParameters(format!(
                    "2 alpha - gamma - delta = {k} makes a coefficient denominator vanish"
                )));
            }
        }
    }
    let alpha_num = move |nf: f64| {
        -(nf + 1.0 + al - be) * (nf + 1.0 + al - ga) * (nf + 2.0 + al - ga - de)
    };
    let alpha_fn: crate::recurrence::CoeffFn = match special {
        Some(0) => std::sync::Arc::new(move |n: usize| {
            let nf = n as f64;
            alpha_num(nf) / (2.0 * (2.0 * nf + 3.0))
        }),
        Some(-1) => std::sync::Arc::new(move |n: usize| {
            let nf = n as f64;
            alpha_num(nf) / (2.0 * (2.0 * nf + 1.0))
        }),
        _ => std::sync::Arc::new(move |n: usize| {
            let nf = n as f64;
            alpha_num(nf) * (nf + 1.0) / ((2.0 * nf + 2.0 + s) * (2.0 * nf + 3.0 + s))
        }),
    };
    let bracket_tail = move |nf: f64| {
        // (gamma+delta-2) s (2 beta-gamma-delta) / ((2n+s)(2n+2+s))
        if special == Some(0) {
            if nf == 0.0 {
                (ga + de - 2.0) * (2.0 * be - ga - de) / 2.0
            } else {
                0.0
            }
        } else {
            (ga + de - 2.0) * s * (2.0 * be - ga - de) / ((2.0 * nf + s) * (2.0 * nf + 2.0 + s))
        }
    };
    let beta_base: crate::recurrence::CoeffFn = std::sync::Arc::new(move |n: usize| {
        let nf = n as f64;
        (0.5 - a) * (nf * (nf + s + 1.0) + al * (al + 1.0 - ga - de))
            + 0.5 * al * be
            + 0.125 * (ga - de) * (2.0 * al + 2.0 * be - ga - de + bracket_tail(nf))
    });
    let gamma_num = move |nf: f64| {
        -(nf + al - de) * (nf + al - 1.0) * (nf + al + be - ga - de)
    };
    let gamma_fn: crate::recurrence::CoeffFn = if special.is_some() {
        std::sync::Arc::new(move |n: usize| {
            let nf = n as f64;
            gamma_num(nf) / (2.0 * (2.0 * nf - 1.0))
        })
    } else {
        std::sync::Arc::new(move |n: usize| {
            let nf = n as f64;
            gamma_num(nf) * (nf + s) / ((2.0 * nf + s) * (2.0 * nf + s - 1.0))
        })
    };
    let mut c = ThreeTermCoeffs::with_split(
        alpha_fn,
        beta_base,
        std::sync::Arc::new(|_| 1.0),
        gamma_fn,
    );
    match special {
        Some(0) => {
            let am1 = -(al - be) * (al - ga) * (1.0 - al) / 2.0;
            c = c.with_alpha_minus1(am1, PerturbedForm::R3);
        }
        Some(-1) => {
            let am1 = -al * (al - be) * (al - ga) / 2.0;
            c = c.with_alpha_minus1(am1, PerturbedForm::R2);
        }
        _ => {}
    }
    Ok(c)
}

fn svartholm_coeffs(p: &HeunParams) -> Result<ThreeTermCoeffs, ExpansionError> {
    let (a, al, be, ga, de) = (p.a, p.alpha, p.beta, p.gamma, p.delta);
    let gd = ga + de;
    let special = near_int(gd).filter(|k| *k == 1 || *k == 2);
    if special.is_none() {
        if let Some(k) = near_int(gd) {
            if k <= 0 && ((-k) as usize) < 2 * ORDER_GUARD {
                return Err(ExpansionError::ExcludedParameters(format!(
                    "gamma + delta = {k} makes a coefficient denominator vanish"
                )));
            }
        }
    }
    let alpha_num = move |nf: f64| -(nf + gd - al) * (nf + gd - be) * (nf + de);
    let alpha_fn: crate::recurrence::CoeffFn = match special {
        Some(1) => std::sync::Arc::new(move |n: usize| {
            let nf = n as f64;
            alpha_num(nf) / (2.0 * (2.0 * nf + 1.0))
        }),
        Some(2) => std::sync::Arc::new(move |n: usize| {
            let nf = n as f64;
            alpha_num(nf) / (2.0 * (2.0 * nf + 3.0))
        }),
        _ => std::sync::Arc::new(move |n: usize| {
            let nf = n as f64;
            alpha_num(nf) * (nf + 1.0) / ((2.0 * nf + gd) * (2.0 * nf + gd + 1.0))
        }),
    };
    let bracket_tail = move |nf: f64| {
        if special == Some(2) {
            if nf == 0.0 {
                (2.0 * al - gd) * (2.0 * be - gd) / 2.0
            } else {
                0.0
            }
        } else {
            (gd - 2.0) * (2.0 * al - gd) * (2.0 * be - gd)
                / ((2.0 * nf + gd - 2.0) * (2.0 * nf + gd))
        }
    };
    let beta_base: crate::recurrence::CoeffFn = std::sync::Arc::new(move |n: usize| {
        let nf = n as f64;
        (0.5 - a) * nf * (nf + gd - 1.0)
            + 0.5 * al * be
            + 0.125 * (ga - de) * (2.0 * al + 2.0 * be - gd + bracket_tail(nf))
    });
    let gamma_num = move |nf: f64| -(nf + al - 1.0) * (nf + be - 1.0) * (nf + ga - 1.0);
    let gamma_fn: crate::recurrence::CoeffFn = if special.is_some() {
        std::sync::Arc::new(move |n: usize| {
            let nf = n as f64;
            gamma_num(nf) / (2.0 * (2.0 * nf - 1.0))
        })
    } else {
        std::sync::Arc::new(move |n: usize| {
            let nf = n as f64;
            gamma_num(nf) * (nf + gd - 2.0) / ((2.0 * nf + gd - 3.0) * (2.0 * nf + gd - 2.0))
        })
    };
    let mut c = ThreeTermCoeffs::with_split(
        alpha_fn,
        beta_base,
        std::sync::Arc::new(|_| 1.0),
        gamma_fn,
    );
    match special {
        Some(1) => {
            let am1 = al * be * (de - 1.0) / 2.0;
            c = c.with_alpha_minus1(am1, PerturbedForm::R2);
        }
        Some(2) => {
            let am1 = -(1.0 - al) * (1.0 - be) * (de - 1.0) / 2.0;
            c = c.with_alpha_minus1(am1, PerturbedForm::R3);
        }
        _ => {}
    }
    Ok(c)
}

/// Builds the lambda = alpha or Svartholm expansion for the equation.
pub fn erdelyi_expansion(
    p: &HeunParams,
    branch: ErdelyiBranch,
) -> Result<SeriesExpansion, ExpansionError> {
    if crate::specfun::near_nonpositive_int(p.gamma, 1e-12) {
        return Err(ExpansionError::DegenerateBasis { c: p.gamma });
    }
    let (lambda, mu, group) = match branch {
        ErdelyiBranch::LambdaAlpha => {
            (p.alpha, p.gamma + p.delta - 1.0 - p.alpha, Group::Erdelyi)
        }
        ErdelyiBranch::Svartholm => (p.gamma + p.delta - 1.0, 0.0, Group::Svartholm),
    };
    // mu - lambda in the positive integers would duplicate basis functions.
    if let Some(k) = near_int(mu - lambda) {
        if k >= 1 {
            return Err(ExpansionError::ExcludedParameters(format!(
                "mu - lambda = {k} is a positive integer"
            )));
        }
    }
    let coeffs = match branch {
        ErdelyiBranch::LambdaAlpha => lambda_alpha_coeffs(p)?,
        ErdelyiBranch::Svartholm => svartholm_coeffs(p)?,
    };
    let mut e = SeriesExpansion {
        group,
        index: 1,
        params: *p,
        coeffs,
        prefactor: Prefactor::ONE,
        basis: TermBasis::HypFixedC { lambda, mu, c: p.gamma },
        arg: ArgMap::Identity,
        truncation: None,
    };
    e.detect_truncation(256);
    Ok(e)
}
