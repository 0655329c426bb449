//! The four solution groups for the Heun equation: power series around
//! x = 0 and x = 1 and two groups in series of hypergeometric functions,
//! each with eight members generated from a seed solution by the homotopic
//! transformations and one Moebius substitution. Also the confluent-Heun
//! limits of the seeds and the Svartholm/Erdelyi expansions.
//!
//! Every expansion carries its three-term recurrence with the accessory
//! parameter q as the spectral split, so the same object drives both
//! characteristic-value solving and pointwise evaluation.

mod che;
mod convergence;
mod erdelyi;
mod evaluate;

pub use che::{che_expansion, CheExpansion, CheKind};
pub use convergence::{convergence_region, ConvergenceRegion};
pub use erdelyi::{erdelyi_expansion, ErdelyiBranch};
pub use evaluate::{
    evaluate, evaluate_jet, evaluate_with_coeffs, series_jet_x, sum_basis_jets, EvalMode, Jet,
};

use crate::heun::{homotopy, moebius, ArgMap, HeunParams, MoebiusKind, Prefactor};
use crate::recurrence::{coeffs_split, RecurrenceError, ThreeTermCoeffs};
use crate::specfun::SpecFunError;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum ExpansionError {
    /// A c-parameter of the term basis sits at a non-positive integer.
    DegenerateBasis { c: f64 },
    /// Parameter set excluded by the expansion's preconditions.
    ExcludedParameters(String),
    /// Evaluation point outside the convergence region.
    OutOfRegion { x: f64 },
    /// Adaptive summation did not settle.
    NonConvergence,
    SpecFun(SpecFunError),
    Recurrence(RecurrenceError),
}

impl fmt::Display for ExpansionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpansionError::DegenerateBasis { c } => {
                write!(f, "basis c-parameter {c} is a non-positive integer")
            }
            ExpansionError::ExcludedParameters(s) => write!(f, "excluded parameters: {s}"),
            ExpansionError::OutOfRegion { x } => write!(f, "x = {x} outside convergence region"),
            ExpansionError::NonConvergence => write!(f, "series did not converge"),
            ExpansionError::SpecFun(e) => write!(f, "{e}"),
            ExpansionError::Recurrence(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ExpansionError {}

impl From<SpecFunError> for ExpansionError {
    fn from(e: SpecFunError) -> Self {
        ExpansionError::SpecFun(e)
    }
}

impl From<RecurrenceError> for ExpansionError {
    fn from(e: RecurrenceError) -> Self {
        ExpansionError::Recurrence(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    PowerAt0,
    PowerAt1,
    HypM17,
    HypAt1,
    HypInitial,
    Erdelyi,
    Svartholm,
    ChePower,
    CheHyp,
}

/// Shape of the n-th basis function multiplying b_n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TermBasis {
    /// z^n
    Power,
    /// z^n * Freg(n + a0, b; n + c0; z), regularized hypergeometric
    HypShifted { a0: f64, b: f64, c0: f64 },
    /// F(n + lambda, -n + mu; c; z), fixed denominator parameter
    HypFixedC { lambda: f64, mu: f64, c: f64 },
}

/// A concrete series solution of the original equation: prefactor times a
/// sum of basis terms in the mapped argument, with coefficients governed by
/// a three-term recurrence split in the accessory parameter q.
#[derive(Debug, Clone)]
pub struct SeriesExpansion {
    pub group: Group,
    pub index: u8,
    /// Parameters of the equation the composite function solves.
    pub params: HeunParams,
    pub coeffs: ThreeTermCoeffs,
    pub prefactor: Prefactor,
    pub basis: TermBasis,
    pub arg: ArgMap,
    pub truncation: Option<usize>,
}

impl SeriesExpansion {
    /// Truncation detected from the recurrence, refreshed on demand.
    pub fn detect_truncation(&mut self, n_max: usize) {
        self.truncation = crate::recurrence::detect_truncation(&self.coeffs, n_max);
    }
}

/// Power-series seed coefficients (series around x = 0) for a parameter
/// tuple, with q split out: beta_n(q) = base_n - q * slope.
fn power_seed_coeffs(p: &HeunParams, q_at_zero: f64, q_slope: f64) -> ThreeTermCoeffs {
    let (a, al, be, ga, de) = (p.a, p.alpha, p.beta, p.gamma, p.delta);
    coeffs_split(
        move |n| {
            let nf = n as f64;
            a * (nf + ga) * (nf + 1.0)
        },
        move |n| {
            let nf = n as f64;
            -(a + 1.0) * nf * nf - (a * (ga + de - 1.0) + al + be - de) * nf - q_at_zero
        },
        move |_| q_slope,
        move |n| {
            let nf = n as f64;
            (nf + al - 1.0) * (nf + be - 1.0)
        },
    )
}

/// Hypergeometric-series seed coefficients with q split out.
fn hyp_seed_coeffs(p: &HeunParams, q_at_zero: f64, q_slope: f64) -> ThreeTermCoeffs {
    let (a, al, be, ga, de) = (p.a, p.alpha, p.beta, p.gamma, p.delta);
    coeffs_split(
        move |n| {
            let nf = n as f64;
            a * (nf + 1.0)
        },
        move |n| {
            let nf = n as f64;
            -(a + 1.0) * nf * nf
                - (a * (2.0 * al + 1.0 - ga - de) + al + be - de) * nf
                - a * al * (al + 1.0 - ga - de)
                - q_at_zero
        },
        move |_| q_slope,
        move |n| {
            let nf = n as f64;
            (nf + al - 1.0) * (nf + al - de) * (nf + al + be - ga - de)
        },
    )
}

fn hyp_seed_basis(p: &HeunParams) -> TermBasis {
    TermBasis::HypShifted {
        a0: p.alpha,
        b: p.gamma + p.delta - p.alpha - 1.0,
        c0: p.gamma,
    }
}

/// Tracks how the accessory parameter of the original equation maps through
/// a transformation chain; every map used here is affine with slope +-1.
fn q_affine(p: &HeunParams, chain: impl Fn(HeunParams) -> HeunParams) -> (f64, f64) {
    let p0 = chain(HeunParams { q: 0.0, ..*p });
    let p1 = chain(HeunParams { q: 1.0, ..*p });
    let slope = p1.q - p0.q;
    (p0.q, slope)
}

fn compose_prefactor(a: Prefactor, b: Prefactor) -> Prefactor {
    Prefactor {
        x: a.x + b.x,
        one_minus_x: a.one_minus_x + b.one_minus_x,
        one_minus_x_over_a: a.one_minus_x_over_a + b.one_minus_x_over_a,
    }
}

fn check_index(i: usize) -> Result<u8, ExpansionError> {
    if (1..=8).contains(&i) {
        Ok(i as u8)
    } else {
        Err(ExpansionError::ExcludedParameters(format!("index {i} outside 1..=8")))
    }
}

/// Power series around x = 0, member i of the group.
pub fn power_series_origin(p: &HeunParams, i: usize) -> Result<SeriesExpansion, ExpansionError> {
    let index = check_index(i)?;
    let t = homotopy(p, i).expect("index checked");
    // The inner series solves the transformed equation; the q split is
    // re-expressed in the original accessory parameter.
    let (q0, slope) = q_affine(p, |p| homotopy(&p, i).unwrap().params);
    // base uses the transformed tuple with its q contribution at q = 0
    let inner = HeunParams { q: 0.0, ..t.params };
    let coeffs = power_seed_coeffs(&inner, q0, slope);
    let mut e = SeriesExpansion {
        group: Group::PowerAt0,
        index,
        params: *p,
        coeffs,
        prefactor: t.prefactor,
        basis: TermBasis::Power,
        arg: ArgMap::Identity,
        truncation: None,
    };
    e.detect_truncation(256);
    Ok(e)
}

/// Power series around x = 1, member i of the group.
pub fn power_series_one(p: &HeunParams, i: usize) -> Result<SeriesExpansion, ExpansionError> {
    let index = check_index(i)?;
    let t = homotopy(p, i).expect("index checked");
    let chain = |p: HeunParams| moebius(&homotopy(&p, i).unwrap().params, MoebiusKind::M49).params;
    let (q0, slope) = q_affine(p, chain);
    let inner = HeunParams { q: 0.0, ..chain(*p) };
    let coeffs = power_seed_coeffs(&inner, q0, slope);
    let mut e = SeriesExpansion {
        group: Group::PowerAt1,
        index,
        params: *p,
        coeffs,
        prefactor: t.prefactor,
        basis: TermBasis::Power,
        arg: ArgMap::OneMinusX,
        truncation: None,
    };
    e.detect_truncation(256);
    Ok(e)
}

/// The initial hypergeometric-series solution around x = 0.
pub fn hyp_series_initial(p: &HeunParams) -> Result<SeriesExpansion, ExpansionError> {
    if crate::specfun::near_nonpositive_int(p.gamma, 1e-12) {
        return Err(ExpansionError::DegenerateBasis { c: p.gamma });
    }
    let inner = HeunParams { q: 0.0, ..*p };
    let coeffs = hyp_seed_coeffs(&inner, 0.0, 1.0);
    let mut e = SeriesExpansion {
        group: Group::HypInitial,
        index: 1,
        params: *p,
        coeffs,
        prefactor: Prefactor::ONE,
        basis: hyp_seed_basis(p),
        arg: ArgMap::Identity,
        truncation: None,
    };
    e.detect_truncation(256);
    Ok(e)
}

/// Hypergeometric series in the argument (a-1)x/(a-x), member i.
pub fn hyp_series_m17(p: &HeunParams, i: usize) -> Result<SeriesExpansion, ExpansionError> {
    let index = check_index(i)?;
    let t = homotopy(p, i).expect("index checked");
    let m = moebius(&t.params, MoebiusKind::M17);
    if crate::specfun::near_nonpositive_int(m.params.gamma, 1e-12) {
        return Err(ExpansionError::DegenerateBasis { c: m.params.gamma });
    }
    let chain = |p: HeunParams| moebius(&homotopy(&p, i).unwrap().params, MoebiusKind::M17).params;
    let (q0, slope) = q_affine(p, chain);
    let inner = HeunParams { q: 0.0, ..chain(*p) };
    let coeffs = hyp_seed_coeffs(&inner, q0, slope);
    let mut e = SeriesExpansion {
        group: Group::HypM17,
        index,
        params: *p,
        coeffs,
        prefactor: compose_prefactor(t.prefactor, m.prefactor),
        basis: hyp_seed_basis(&inner),
        arg: ArgMap::M17,
        truncation: None,
    };
    e.detect_truncation(256);
    Ok(e)
}

/// Hypergeometric series in the argument 1 - x, member i.
pub fn hyp_series_one(p: &HeunParams, i: usize) -> Result<SeriesExpansion, ExpansionError> {
    let index = check_index(i)?;
    let t = homotopy(p, i).expect("index checked");
    let m = moebius(&t.params, MoebiusKind::M49);
    if crate::specfun::near_nonpositive_int(m.params.gamma, 1e-12) {
        return Err(ExpansionError::DegenerateBasis { c: m.params.gamma });
    }
    let chain = |p: HeunParams| moebius(&homotopy(&p, i).unwrap().params, MoebiusKind::M49).params;
    let (q0, slope) = q_affine(p, chain);
    let inner = HeunParams { q: 0.0, ..chain(*p) };
    let coeffs = hyp_seed_coeffs(&inner, q0, slope);
    let mut e = SeriesExpansion {
        group: Group::HypAt1,
        index,
        params: *p,
        coeffs,
        prefactor: t.prefactor,
        basis: hyp_seed_basis(&inner),
        arg: ArgMap::OneMinusX,
        truncation: None,
    };
    e.detect_truncation(256);
    Ok(e)
}

#[cfg(test)]
mod tests;
