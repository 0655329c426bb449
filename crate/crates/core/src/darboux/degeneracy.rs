use super::family::{family_coeffs, family_spec};
use super::{
    DarbouxError, EigenfunctionSpec, Family, FamilyKind, LameProblem, Rational, Variant,
};
use crate::recurrence::{antidiagonal_similarity_check, characteristic_roots, ThreeTermCoeffs};
use std::sync::Arc;

/// A degenerate pair of families sharing their whole spectrum, with the
/// verification outcome.
#[derive(Debug, Clone)]
pub struct DegeneratePair {
    pub first: Family,
    pub second: Family,
    pub truncation: usize,
    pub similar: bool,
    /// Shared eigenvalues (from the first member), ascending.
    pub energies: Vec<f64>,
    /// Largest pairwise gap between the two spectra.
    pub spectrum_gap: f64,
}

/// Rescaling b_n = r^n Gamma(n + c1) Gamma(n + c2) b_hat_n applied to a
/// recurrence: alpha picks up r (n + c1)(n + c2), gamma drops the shifted
/// factors, beta is unchanged.
fn rescale(c: &ThreeTermCoeffs, r: f64, c1: f64, c2: f64) -> ThreeTermCoeffs {
    let alpha = {
        let c = c.clone();
        move |n: usize| {
            let nf = n as f64;
            c.alpha(n) * r * (nf + c1) * (nf + c2)
        }
    };
    let gamma = {
        let c = c.clone();
        move |n: usize| {
            let nf = n as f64;
            c.gamma(n) / (r * (nf - 1.0 + c1) * (nf - 1.0 + c2))
        }
    };
    let beta = {
        let c = c.clone();
        move |n: usize| c.beta_base(n)
    };
    let weight = {
        let c = c.clone();
        move |n: usize| c.weight(n).expect("spectral split required")
    };
    ThreeTermCoeffs::with_split(
        Arc::new(alpha),
        Arc::new(beta),
        Arc::new(weight),
        Arc::new(gamma),
    )
}

/// The degenerate pairs of the hypergeometric regime at (l, m), verified by
/// the antidiagonal similarity of the rescaled recurrences and by direct
/// spectrum comparison.
pub fn degeneracy_pairs(prob: &LameProblem) -> Result<Vec<DegeneratePair>, DarbouxError> {
    let (l, m) = (prob.l, prob.m);
    let sd_regime = l.is_integer() && m.is_half_odd();
    let cn_regime = m.is_integer() && l.is_half_odd();
    if !sd_regime && !cn_regime {
        return Err(DarbouxError::Regime(
            "degeneracy needs one integer strength and one half-odd strength".into(),
        ));
    }
    // Pair table: (kind, plain member, rescaled member, Gamma shifts).
    // The shifts are symmetric in l and m, so one table serves both
    // regimes; the substitution images at (-l-1, -m-1) replace s by -s-2.
    let s = prob.lf() + prob.mf();
    let shifts_a = (-(s - 1.0) / 2.0, -(s - 2.0) / 2.0);
    let shifts_b = (-(s - 1.0) / 2.0, -s / 2.0);
    let shifts_a_neg = ((s + 3.0) / 2.0, (s + 4.0) / 2.0);
    let shifts_b_neg = ((s + 3.0) / 2.0, (s + 2.0) / 2.0);
    type PairRow = (FamilyKind, u8, u8, (f64, f64));
    let pairs: Vec<PairRow> = if sd_regime {
        if m.num() >= 1 {
            vec![
                (FamilyKind::SdHyp, 1, 6, shifts_a),
                (FamilyKind::SdHyp, 4, 7, shifts_b),
            ]
        } else {
            vec![
                (FamilyKind::SdHyp, 5, 2, shifts_a_neg),
                (FamilyKind::SdHyp, 8, 3, shifts_b_neg),
            ]
        }
    } else if l.num() >= 1 {
        vec![
            (FamilyKind::CnHyp, 5, 7, shifts_a),
            (FamilyKind::CnHyp, 8, 6, shifts_b),
        ]
    } else {
        vec![
            (FamilyKind::CnHyp, 1, 3, shifts_a_neg),
            (FamilyKind::CnHyp, 4, 2, shifts_b_neg),
        ]
    };
    let k2 = prob.k2.k2();
    let mut out = Vec::new();
    for (kind, i, j, (c1, c2)) in pairs {
        let fam_i = Family::new(kind, i, Variant::Ring);
        let fam_j = Family::new(kind, j, Variant::Ring);
        let (Some(spec_i), Some(spec_j)) = (family_spec(&fam_i, prob)?, family_spec(&fam_j, prob)?)
        else {
            continue;
        };
        let n = spec_i.truncation.expect("finite by construction");
        let ca = family_coeffs(&fam_i, prob)?.canonicalized();
        let cb = family_coeffs(&fam_j, prob)?.canonicalized();
        let r = k2 / (1.0 - k2);
        let rescaled = rescale(&cb, r, c1, c2);
        let similar = antidiagonal_similarity_check(&ca, &rescaled, n)?;
        let sa = characteristic_roots(&ca, n)?;
        let sb = characteristic_roots(&cb, n)?;
        let gap = sa
            .eigenvalues
            .iter()
            .zip(sb.eigenvalues.iter())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0f64, f64::max);
        out.push(DegeneratePair {
            first: fam_i,
            second: fam_j,
            truncation: n,
            similar,
            energies: sa.eigenvalues,
            spectrum_gap: gap,
        });
        let _ = spec_j;
    }
    Ok(out)
}

/// The two catalogued symmetry substitutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryOp {
    /// l -> -l-1, m -> -m-1; maps member i to i +- 4.
    NegateLm,
    /// l <-> m with u -> u + K; exchanges the sd- and cn-argument catalogs.
    ShiftK,
}

fn sigma_negate(i: u8) -> u8 {
    if i <= 4 {
        i + 4
    } else {
        i - 4
    }
}

fn sigma_shift(i: u8) -> u8 {
    match i {
        1 => 5,
        5 => 1,
        2 => 3,
        3 => 2,
        4 => 8,
        8 => 4,
        6 => 7,
        7 => 6,
        _ => unreachable!(),
    }
}

/// Maps a spec to its symmetry partner, returning the partner spec and the
/// transformed (l, m).
pub fn symmetry_map(
    spec: &EigenfunctionSpec,
    prob: &LameProblem,
    op: SymmetryOp,
) -> Result<(EigenfunctionSpec, LameProblem), DarbouxError> {
    let minus_one = Rational::integer(-1);
    let (family, l2, m2) = match op {
        SymmetryOp::NegateLm => {
            let fam = Family::new(
                spec.family.kind,
                sigma_negate(spec.family.index),
                spec.family.variant,
            );
            (fam, minus_one - prob.l, minus_one - prob.m)
        }
        SymmetryOp::ShiftK => {
            let kind = match spec.family.kind {
                FamilyKind::SnPower => FamilyKind::CnPower,
                FamilyKind::CnPower => FamilyKind::SnPower,
                FamilyKind::SdHyp => FamilyKind::CnHyp,
                FamilyKind::CnHyp => FamilyKind::SdHyp,
                FamilyKind::Infinite => FamilyKind::Infinite,
            };
            // The ring branches live on the antisymmetric conditions and
            // swap members; the tilde branches are symmetric in l + m and
            // keep their index.
            let index = match (spec.family.kind, spec.family.variant) {
                (FamilyKind::SnPower | FamilyKind::CnPower, Variant::Tilde) => spec.family.index,
                _ => sigma_shift(spec.family.index),
            };
            let fam = Family::new(kind, index, spec.family.variant);
            (fam, prob.m, prob.l)
        }
    };
    let prob2 = LameProblem::new(l2, m2, prob.k2);
    let spec2 = family_spec(&family, &prob2)?.ok_or_else(|| {
        DarbouxError::Regime(format!(
            "partner family {} does not exist at (l, m) = ({}, {})",
            family.name(),
            l2,
            m2
        ))
    })?;
    Ok((spec2, prob2))
}
