//! Specialization of the Heun machinery to the elliptic second-order
//! problem in Jacobi functions and the associated-Lame Schroedinger
//! equation: potential parameter maps, the finite and infinite
//! eigenfunction catalog, spectra, degeneracy and parity/period checks.

mod classify;
mod degeneracy;
mod eigen;
mod family;
mod rational;

pub use classify::{classify, classify_finite_series, infinite_available, Classification};
pub use degeneracy::{degeneracy_pairs, symmetry_map, DegeneratePair, SymmetryOp};
pub use eigen::{
    eigenfunction, infinite_eigenfunction, infinite_eigenfunction_with_depth, infinite_spectrum,
    parity_period_verify, spectrum, LameEigenfunction, ParityReport,
};
pub use family::{EigenfunctionSpec, Family, FamilyKind, Parity, Period, Variant};
pub use rational::{ParseRationalError, Rational};

use crate::heun::HeunParams;
use crate::specfun::{Modulus, SpecFunError};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum DarbouxError {
    /// The Heun location must equal 1/k^2.
    LocationMismatch { a: f64, k2: f64 },
    /// A strength coefficient fell below the real-exponent bound -1/4.
    UnmatchedStrength { value: f64 },
    /// Requested energy is not in the family's spectrum.
    OffSpectrum { energy: f64 },
    /// The family truncates; an infinite series does not exist there.
    Truncates { index: u8 },
    /// Family unavailable for these parameters.
    Regime(String),
    /// Physical constants must be positive.
    NonPositiveConstant(&'static str),
    SpecFun(SpecFunError),
    Expansion(crate::expansions::ExpansionError),
    Recurrence(crate::recurrence::RecurrenceError),
}

impl fmt::Display for DarbouxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DarbouxError::LocationMismatch { a, k2 } => {
                write!(f, "a = {a} does not equal 1/k^2 = {}", 1.0 / k2)
            }
            DarbouxError::UnmatchedStrength { value } => {
                write!(f, "strength coefficient {value} < -1/4 has no real exponent")
            }
            DarbouxError::OffSpectrum { energy } => write!(f, "{energy} is not an eigenvalue"),
            DarbouxError::Truncates { index } => {
                write!(f, "series {index} truncates; a finite family exists instead")
            }
            DarbouxError::Regime(s) => write!(f, "{s}"),
            DarbouxError::NonPositiveConstant(s) => write!(f, "{s} must be positive"),
            DarbouxError::SpecFun(e) => write!(f, "{e}"),
            DarbouxError::Expansion(e) => write!(f, "{e}"),
            DarbouxError::Recurrence(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for DarbouxError {}

impl From<SpecFunError> for DarbouxError {
    fn from(e: SpecFunError) -> Self {
        DarbouxError::SpecFun(e)
    }
}

impl From<crate::expansions::ExpansionError> for DarbouxError {
    fn from(e: crate::expansions::ExpansionError) -> Self {
        DarbouxError::Expansion(e)
    }
}

impl From<crate::recurrence::RecurrenceError> for DarbouxError {
    fn from(e: crate::recurrence::RecurrenceError) -> Self {
        DarbouxError::Recurrence(e)
    }
}

/// The associated-Lame spectral problem: strength parameters l, m and the
/// squared modulus. Energies are dimensionless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LameProblem {
    pub l: Rational,
    pub m: Rational,
    pub k2: Modulus,
}

impl LameProblem {
    pub fn new(l: Rational, m: Rational, k2: Modulus) -> LameProblem {
        LameProblem { l, m, k2 }
    }

    pub fn lf(&self) -> f64 {
        self.l.to_f64()
    }

    pub fn mf(&self) -> f64 {
        self.m.to_f64()
    }

    /// Quarter period of the modulus.
    pub fn quarter_period(&self) -> f64 {
        crate::specfun::elliptic_k(self.k2)
    }

    /// Heun parameters at a given energy: a = 1/k^2, gamma = delta = 1/2,
    /// alpha = (l-m+1)/2, beta = (l+m+2)/2, q = (l+1)^2/4 - E/(4k^2).
    pub fn heun_params(&self, energy: f64) -> HeunParams {
        let (l, m) = (self.lf(), self.mf());
        let k2 = self.k2.k2();
        HeunParams::new(
            1.0 / k2,
            (l + 1.0) * (l + 1.0) / 4.0 - energy / (4.0 * k2),
            (l - m + 1.0) / 2.0,
            (l + m + 2.0) / 2.0,
            0.5,
            0.5,
        )
        .expect("1/k^2 is never 0 or 1")
    }

    /// The affine map from energy to the accessory parameter.
    pub fn q_of_energy(&self) -> (f64, f64) {
        let l = self.lf();
        ((l + 1.0) * (l + 1.0) / 4.0, -1.0 / (4.0 * self.k2.k2()))
    }

    /// Potential value at u.
    pub fn potential(&self, u: f64) -> f64 {
        let t = crate::specfun::jacobi(u, self.k2);
        let k2 = self.k2.k2();
        let (l, m) = (self.lf(), self.mf());
        m * (m + 1.0) * k2 * t.sn * t.sn + l * (l + 1.0) * k2 * t.cn * t.cn / (t.dn * t.dn)
    }
}

/// Strength parameters of the elliptic potential form, recovered from a
/// Heun tuple, with h the spectral constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarbouxParams {
    pub h: f64,
    pub mu: f64,
    pub nu1: f64,
    pub nu2: f64,
    pub lambda: f64,
    pub k2: Modulus,
}

fn strength_root(s: f64) -> Result<f64, DarbouxError> {
    // nu (nu + 1) = s with a real nu needs s >= -1/4.
    let disc = 1.0 + 4.0 * s;
    if disc < -1e-12 {
        return Err(DarbouxError::UnmatchedStrength { value: s });
    }
    Ok((-1.0 + disc.max(0.0).sqrt()) / 2.0)
}

/// Reads the four strength products and the spectral constant off a Heun
/// tuple with a = 1/k^2.
pub fn heun_to_darboux(p: &HeunParams, k2: Modulus) -> Result<DarbouxParams, DarbouxError> {
    if (p.a - 1.0 / k2.k2()).abs() > 1e-12 * p.a.abs() {
        return Err(DarbouxError::LocationMismatch { a: p.a, k2: k2.k2() });
    }
    let (al, be, ga, de) = (p.alpha, p.beta, p.gamma, p.delta);
    let ep = p.epsilon();
    let kk = k2.k2();
    let h = (ga + de) * (ga + de) + 1.0 - 2.0 * ga - 2.0 * de
        - (4.0 * p.q - (ga + ep) * (ga + ep) - 1.0 + 2.0 * ga + 2.0 * ep) * kk;
    Ok(DarbouxParams {
        h,
        mu: strength_root((al - be) * (al - be) - 0.25)?,
        nu1: strength_root((ga - 0.5) * (ga - 1.5))?,
        nu2: strength_root((de - 0.5) * (de - 1.5))?,
        lambda: strength_root((ep - 0.5) * (ep - 1.5))?,
        k2,
    })
}

/// The four catalogued potentials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential {
    /// (1-k^2)[2/cn^2 - (l+2)(l+3)/dn^2]
    V1 { l: f64 },
    /// 2/sn^2 - (1-k^2)(l+2)(l+3)/dn^2
    V2 { l: f64 },
    /// m(m+1) k^2 sn^2 + l(l+1) k^2 cn^2/dn^2
    V3 { l: f64, m: f64 },
    /// The four-parameter quartic-strength potential.
    V4 { a: f64, b: f64, c: f64, l: f64 },
}

/// Matches a potential to the elliptic normal form and returns the Heun
/// tuple whose accessory parameter is linear in the energy.
pub fn potential_to_heun(
    pot: Potential,
    k2: Modulus,
    energy: f64,
) -> Result<HeunParams, DarbouxError> {
    let kk = k2.k2();
    // Strengths: s_sn of k^2 sn^2, s_inv of 1/sn^2, s_cn of dn^2/cn^2,
    // s_dn of k^2 cn^2/dn^2, plus the constant part of the potential.
    let (s_sn, s_inv, s_cn, s_dn, constant) = match pot {
        Potential::V1 { l } => {
            let c = (l + 2.0) * (l + 3.0);
            (0.0, 0.0, 2.0, c, -2.0 * kk - c)
        }
        Potential::V2 { l } => {
            let c = (l + 2.0) * (l + 3.0);
            (0.0, 2.0, 0.0, c, -c)
        }
        Potential::V3 { l, m } => (m * (m + 1.0), 0.0, 0.0, l * (l + 1.0), 0.0),
        Potential::V4 { a, b, c, l } => {
            let f = |x: f64| 4.0 * (x - 0.25) * (x - 0.75);
            let s = a + b + c + l;
            let constant = -f(a) - 4.0 * (a + c + l) * (a + 2.0 * b + c + l - 1.0) * kk
                - 8.0 * (b - 0.25) * (b - 0.75) * kk;
            (f(a), f(b), f(c), f(s), constant)
        }
    };
    for s in [s_sn, s_inv, s_cn, s_dn] {
        if s < -0.25 - 1e-12 {
            return Err(DarbouxError::UnmatchedStrength { value: s });
        }
    }
    // Exponent parameters from the strength products, smallest branch:
    // (x - 1/2)(x - 3/2) = s  =>  x = 1 - sqrt(s + 1/4) or 1 + sqrt(..).
    let exponent = |s: f64| 1.0 + (s + 0.25).max(0.0).sqrt();
    let ga = if s_inv == 0.0 { 0.5 } else { exponent(s_inv) };
    let de = if s_cn == 0.0 { 0.5 } else { exponent(s_cn) };
    let ep = if s_dn == 0.0 { 0.5 } else { exponent(s_dn) };
    // alpha - beta from the sn^2 strength, alpha + beta from epsilon.
    let diff = (s_sn + 0.25).max(0.0).sqrt(); // |alpha - beta|
    let sum = ep + ga + de - 1.0;
    let al = (sum - diff) / 2.0;
    let be = (sum + diff) / 2.0;
    // The spectral constant balances the energy against the constant part,
    // then q follows from the h identity.
    let h = energy - constant;
    let q = (((ga + de) * (ga + de) + 1.0 - 2.0 * ga - 2.0 * de - h) / kk
        + (ga + ep) * (ga + ep)
        + 1.0
        - 2.0 * ga
        - 2.0 * ep)
        / 4.0;
    HeunParams::new(1.0 / kk, q, al, be, ga, de).map_err(|_| {
        DarbouxError::LocationMismatch { a: 1.0 / kk, k2: kk }
    })
}

/// Dimensional inputs for the energy scaling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchrodingerScaling {
    pub mass: f64,
    pub energy: f64,
    pub hbar: f64,
    pub kappa: f64,
}

/// Dimensionless energy 2 M E / (hbar^2 kappa^2).
pub fn scale_energy(s: &SchrodingerScaling) -> Result<f64, DarbouxError> {
    if s.mass <= 0.0 {
        return Err(DarbouxError::NonPositiveConstant("mass"));
    }
    if s.hbar <= 0.0 {
        return Err(DarbouxError::NonPositiveConstant("hbar"));
    }
    if s.kappa <= 0.0 {
        return Err(DarbouxError::NonPositiveConstant("kappa"));
    }
    Ok(2.0 * s.mass * s.energy / (s.hbar * s.hbar * s.kappa * s.kappa))
}

/// Residual of the associated-Lame equation at u for a (psi, psi', psi'')
/// triple, normalized like the Heun residual.
pub fn lame_residual(prob: &LameProblem, energy: f64, u: f64, psi: (f64, f64, f64)) -> f64 {
    let (v, _, d2) = psi;
    let lhs = d2 + (energy - prob.potential(u)) * v;
    lhs.abs() / d2.abs().max(1.0)
}

#[cfg(test)]
mod unit_tests {
    use super::*;

    fn modulus(k2: f64) -> Modulus {
        Modulus::new(k2).unwrap()
    }

    #[test]
    fn lame_parameter_map() {
        let prob = LameProblem::new(Rational::integer(2), Rational::half(1), modulus(0.25));
        let p = prob.heun_params(0.0);
        assert_eq!(p.a, 4.0);
        assert_eq!((p.gamma, p.delta), (0.5, 0.5));
        assert!((p.alpha - (2.0 - 0.5 + 1.0) / 2.0).abs() < 1e-15);
        assert!((p.epsilon() - (2.0 + 1.5)).abs() < 1e-14);
        let (q0, qs) = prob.q_of_energy();
        let e = 1.7;
        assert!((q0 + qs * e - prob.heun_params(e).q).abs() < 1e-14);
    }

    #[test]
    fn strengths_from_heun() {
        let k2 = modulus(0.4);
        // gamma = delta = epsilon = 1/2 kills all three singular strengths.
        let p = HeunParams::new(1.0 / 0.4, 0.3, -0.25, 0.75, 0.5, 0.5).unwrap();
        let d = heun_to_darboux(&p, k2).unwrap();
        assert_eq!(d.nu1, 0.0);
        assert_eq!(d.nu2, 0.0);
        assert_eq!(d.lambda, 0.0);
        // delta = 3/2 keeps nu2 (nu2 + 1) = 0 with nu2 = 0 at the boundary.
        let p = HeunParams::new(1.0 / 0.4, 0.3, -0.75, 0.75, 0.5, 1.5).unwrap();
        let d = heun_to_darboux(&p, k2).unwrap();
        assert!(d.nu2.abs() < 1e-12);
        // The h identity is the defining equation.
        let prob = LameProblem::new(Rational::integer(1), Rational::integer(2), k2);
        let e = 2.2;
        let p = prob.heun_params(e);
        let d = heun_to_darboux(&p, k2).unwrap();
        assert!((d.h - e).abs() < 1e-12);
        // Mismatched location errors.
        let bad = HeunParams::new(3.0, 0.0, 0.5, 0.5, 0.5, 0.5).unwrap();
        assert!(heun_to_darboux(&bad, k2).is_err());
    }

    #[test]
    fn potentials_map_to_the_normal_form() {
        let k2 = modulus(0.3);
        // The third potential reproduces the standard tuple exactly.
        let (l, m) = (1.0, 2.5);
        let e = 0.9;
        let p = potential_to_heun(Potential::V3 { l, m }, k2, e).unwrap();
        assert!((p.alpha - (l - m + 1.0) / 2.0).abs() < 1e-12);
        assert!((p.beta - (l + m + 2.0) / 2.0).abs() < 1e-12);
        assert_eq!((p.gamma, p.delta), (0.5, 0.5));
        assert!((p.q - ((l + 1.0) * (l + 1.0) / 4.0 - e / (4.0 * k2.k2()))).abs() < 1e-12);

        // First potential: strengths {1/sn^2: 0, dn^2/cn^2: 2, k^2cn^2/dn^2: (l+2)(l+3)}.
        let p = potential_to_heun(Potential::V1 { l: 1.0 }, k2, e).unwrap();
        let d = heun_to_darboux(&p, k2).unwrap();
        assert!(d.nu1.abs() < 1e-12);
        assert!((d.nu2 * (d.nu2 + 1.0) - 2.0).abs() < 1e-10);
        let target = (1.0 + 2.0) * (1.0 + 3.0);
        assert!((d.lambda * (d.lambda + 1.0) - target).abs() < 1e-10);

        // Fourth potential with all quarter parameters: strengths vanish.
        let p = potential_to_heun(
            Potential::V4 { a: 0.25, b: 0.25, c: 0.25, l: 0.0 },
            k2,
            e,
        )
        .unwrap();
        let d = heun_to_darboux(&p, k2).unwrap();
        for s in [d.mu, d.nu1, d.nu2, d.lambda] {
            assert!(s.abs() < 1e-10);
        }
    }

    #[test]
    fn energy_scaling() {
        assert_eq!(
            scale_energy(&SchrodingerScaling { mass: 1.0, energy: 0.0, hbar: 1.0, kappa: 1.0 })
                .unwrap(),
            0.0
        );
        assert_eq!(
            scale_energy(&SchrodingerScaling { mass: 0.5, energy: 1.0, hbar: 1.0, kappa: 1.0 })
                .unwrap(),
            1.0
        );
        let s = SchrodingerScaling { mass: 9.109e-31, energy: 1.602e-19, hbar: 1.0546e-34, kappa: 1e9 };
        let e = scale_energy(&s).unwrap();
        let expect = 2.0 * s.mass * s.energy / (s.hbar * s.hbar * s.kappa * s.kappa);
        assert_eq!(e, expect);
        assert!(scale_energy(&SchrodingerScaling { mass: -1.0, energy: 0.0, hbar: 1.0, kappa: 1.0 })
            .is_err());
    }
}
