use super::{DarbouxError, LameProblem, Rational};
use crate::expansions::{
    hyp_series_m17, hyp_series_one, power_series_origin, power_series_one, SeriesExpansion,
};
use crate::recurrence::ThreeTermCoeffs;
use std::fmt;
use std::str::FromStr;

/// Which catalog an eigenfunction belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// Finite series in sn^2 u.
    SnPower,
    /// Finite series in cn^2 u.
    CnPower,
    /// Finite series of hypergeometric functions in (1-k^2) sd^2 u.
    SdHyp,
    /// Finite series of hypergeometric functions in cn^2 u.
    CnHyp,
    /// Infinite series in sn^2 u.
    Infinite,
}

/// Which of the two truncation branches a power family uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Ring,
    Tilde,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Family {
    pub kind: FamilyKind,
    pub index: u8,
    pub variant: Variant,
}

impl Family {
    pub fn new(kind: FamilyKind, index: u8, variant: Variant) -> Family {
        assert!((1..=8).contains(&index));
        Family { kind, index, variant }
    }

    pub fn name(&self) -> String {
        match (self.kind, self.variant) {
            (FamilyKind::SnPower, Variant::Ring) => format!("psi_ring_{}", self.index),
            (FamilyKind::SnPower, Variant::Tilde) => format!("psi_tilde_{}", self.index),
            (FamilyKind::CnPower, Variant::Ring) => format!("Psi_ring_{}", self.index),
            (FamilyKind::CnPower, Variant::Tilde) => format!("Psi_tilde_{}", self.index),
            (FamilyKind::SdHyp, _) => format!("psi_hyp_{}", self.index),
            (FamilyKind::CnHyp, _) => format!("Psi_hyp_{}", self.index),
            (FamilyKind::Infinite, _) => format!("Phi_{}", self.index),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for Family {
    type Err = DarbouxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DarbouxError::Regime(format!("unknown family name: {s}"));
        let (prefix, idx) = s.rsplit_once('_').ok_or_else(bad)?;
        let index: u8 = idx.parse().map_err(|_| bad())?;
        if !(1..=8).contains(&index) {
            return Err(bad());
        }
        let (kind, variant) = match prefix {
            "psi_ring" => (FamilyKind::SnPower, Variant::Ring),
            "psi_tilde" => (FamilyKind::SnPower, Variant::Tilde),
            "Psi_ring" => (FamilyKind::CnPower, Variant::Ring),
            "Psi_tilde" => (FamilyKind::CnPower, Variant::Tilde),
            "psi_hyp" => (FamilyKind::SdHyp, Variant::Ring),
            "Psi_hyp" => (FamilyKind::CnHyp, Variant::Ring),
            "Phi" => (FamilyKind::Infinite, Variant::Ring),
            _ => return Err(bad()),
        };
        Ok(Family { kind, index, variant })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Period {
    /// psi(u + 2K) = +psi(u).
    TwoK,
    /// psi(u + 2K) = -psi(u) for the power families; the hypergeometric
    /// families are the doubly degenerate mid-band states and satisfy
    /// psi(u + 4K) = -psi(u) instead.
    FourK,
}

/// A catalogued eigenfunction shape for one (l, m).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenfunctionSpec {
    pub family: Family,
    /// Highest kept series index N (N + 1 terms); None for infinite series.
    pub truncation: Option<usize>,
    pub parity: Parity,
    pub period: Period,
    /// The reflection center the parity refers to: 0, or K for the
    /// cn-argument hypergeometric families.
    pub parity_center_at_k: bool,
    pub arscott_ok: bool,
    /// Both truncation branches coincide (the m = -1/2 tie).
    pub boundary: bool,
}

/// Integer truncation roots (root r means gamma_r = 0, series order N = r-1)
/// of the two gamma factors for a power-family index: (ring, tilde).
pub fn power_truncation_roots(index: u8, l: Rational, m: Rational) -> (Option<i64>, Option<i64>) {
    let two = Rational::integer(2);
    let one = Rational::integer(1);
    let (ring, tilde) = match index {
        1 => (((m - l) + one).half_of(), -(l + m).half_of()),
        2 | 3 => ((m - l).half_of(), -((l + m) + one).half_of()),
        4 => (((m - l) - one).half_of(), -((l + m) + two).half_of()),
        5 => (((l - m) + one).half_of(), ((l + m) + two).half_of()),
        6 | 7 => ((l - m).half_of(), ((l + m) + one).half_of()),
        8 => (((l - m) - one).half_of(), (l + m).half_of()),
        _ => unreachable!(),
    };
    let keep = |r: Rational| r.as_integer().filter(|n| *n >= 1);
    (keep(ring), keep(tilde))
}

/// Evaluation-form partner: members whose natural prefactor carries a
/// half-power of x (sd-argument group) or of 1-x (cn-argument group) are
/// evaluated through the interchange partner, whose form is free of it.
pub fn hyp_evaluation_form(kind: FamilyKind, index: u8) -> (u8, bool) {
    match kind {
        FamilyKind::SdHyp => match index {
            3 => (1, true),
            4 => (2, true),
            7 => (5, true),
            8 => (6, true),
            i => (i, false),
        },
        FamilyKind::CnHyp => match index {
            2 => (1, true),
            4 => (3, true),
            6 => (5, true),
            8 => (7, true),
            i => (i, false),
        },
        _ => (index, false),
    }
}

/// The x-space expansion backing a family at a given energy, in its
/// evaluation form (possibly at interchanged alpha, beta).
pub fn x_expansion(
    family: &Family,
    prob: &LameProblem,
    energy: f64,
) -> Result<SeriesExpansion, DarbouxError> {
    let p = prob.heun_params(energy);
    let (idx, swapped) = hyp_evaluation_form(family.kind, family.index);
    let p = if swapped { p.swap_ab() } else { p };
    let e = match family.kind {
        FamilyKind::SnPower | FamilyKind::Infinite => power_series_origin(&p, family.index as usize)?,
        FamilyKind::CnPower => power_series_one(&p, family.index as usize)?,
        FamilyKind::SdHyp => hyp_series_m17(&p, idx as usize)?,
        FamilyKind::CnHyp => hyp_series_one(&p, idx as usize)?,
    };
    Ok(e)
}

/// The family's three-term recurrence with the energy as the spectral
/// parameter.
pub fn family_coeffs(family: &Family, prob: &LameProblem) -> Result<ThreeTermCoeffs, DarbouxError> {
    let e = x_expansion(family, prob, 0.0)?;
    let (q0, qs) = prob.q_of_energy();
    Ok(e.coeffs.re_split(q0, qs))
}

/// Truncation order for the family at (l, m), if it truncates.
pub fn truncation_order(family: &Family, prob: &LameProblem) -> Option<usize> {
    let (l, m) = (prob.l, prob.m);
    match family.kind {
        FamilyKind::SnPower | FamilyKind::CnPower => {
            let (ring, tilde) = power_truncation_roots(family.index, l, m);
            let own = match family.variant {
                Variant::Ring => ring,
                Variant::Tilde => tilde,
            }?;
            // When both branches truncate only the shorter series survives.
            let other = match family.variant {
                Variant::Ring => tilde,
                Variant::Tilde => ring,
            };
            if let Some(o) = other {
                if o < own {
                    return None;
                }
            }
            Some(own as usize - 1)
        }
        FamilyKind::SdHyp => {
            if !l.is_integer() || !m.is_half_odd() {
                return None;
            }
            let two_m = m.num(); // m = two_m / 2
            if two_m >= 1 && matches!(family.index, 1 | 4 | 6 | 7) {
                Some(((two_m - 1) / 2) as usize)
            } else if two_m <= -3 && matches!(family.index, 2 | 3 | 5 | 8) {
                Some(((-two_m - 3) / 2) as usize)
            } else {
                None
            }
        }
        FamilyKind::CnHyp => {
            if !m.is_integer() || !l.is_half_odd() {
                return None;
            }
            let two_l = l.num();
            if two_l >= 1 && matches!(family.index, 5..=8) {
                Some(((two_l - 1) / 2) as usize)
            } else if two_l <= -3 && matches!(family.index, 1..=4) {
                Some(((-two_l - 3) / 2) as usize)
            } else {
                None
            }
        }
        FamilyKind::Infinite => None,
    }
}

/// Structural parity and period labels from the evaluation-form prefactor.
pub fn structural_labels(
    family: &Family,
    prob: &LameProblem,
) -> Result<(Parity, Period, bool), DarbouxError> {
    let e = x_expansion(family, prob, 0.0)?;
    let sn_pow = (2.0 * e.prefactor.x).round() as i32;
    let cn_pow = (2.0 * e.prefactor.one_minus_x).round() as i32;
    match family.kind {
        FamilyKind::SnPower | FamilyKind::CnPower | FamilyKind::Infinite => {
            let parity = if sn_pow % 2 == 0 { Parity::Even } else { Parity::Odd };
            let period = if (sn_pow + cn_pow) % 2 == 0 { Period::TwoK } else { Period::FourK };
            Ok((parity, period, false))
        }
        FamilyKind::SdHyp => {
            let parity = if sn_pow % 2 == 0 { Parity::Even } else { Parity::Odd };
            Ok((parity, Period::FourK, false))
        }
        FamilyKind::CnHyp => {
            let parity = if cn_pow % 2 == 0 { Parity::Even } else { Parity::Odd };
            Ok((parity, Period::FourK, true))
        }
    }
}

/// Builds the full spec for a family if it exists at (l, m); finite kinds
/// need a truncation, the infinite kind needs the absence of one.
pub fn family_spec(
    family: &Family,
    prob: &LameProblem,
) -> Result<Option<EigenfunctionSpec>, DarbouxError> {
    let truncation = truncation_order(family, prob);
    match family.kind {
        FamilyKind::Infinite => {
            let (ring, tilde) = power_truncation_roots(family.index, prob.l, prob.m);
            if ring.is_some() || tilde.is_some() {
                return Ok(None);
            }
            let p = prob.heun_params(0.0);
            let one_minus_eps = 1.0 - p.epsilon();
            // A non-negative integer exponent collapses the pair identity
            // but not existence; only truncation excludes the series.
            let _ = one_minus_eps;
            let (parity, period, center) = structural_labels(family, prob)?;
            Ok(Some(EigenfunctionSpec {
                family: *family,
                truncation: None,
                parity,
                period,
                parity_center_at_k: center,
                arscott_ok: false,
                boundary: false,
            }))
        }
        _ => {
            let Some(n) = truncation else { return Ok(None) };
            let coeffs = family_coeffs(family, prob)?;
            let arscott_ok = crate::recurrence::arscott_check(&coeffs, n)?;
            let (parity, period, center) = structural_labels(family, prob)?;
            let boundary = match family.kind {
                FamilyKind::SnPower | FamilyKind::CnPower => {
                    let (ring, tilde) = power_truncation_roots(family.index, prob.l, prob.m);
                    ring.is_some() && ring == tilde
                }
                _ => false,
            };
            Ok(Some(EigenfunctionSpec {
                family: *family,
                truncation: Some(n),
                parity,
                period,
                parity_center_at_k: center,
                arscott_ok,
                boundary,
            }))
        }
    }
}
