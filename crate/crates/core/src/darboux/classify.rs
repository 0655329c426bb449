use super::family::{family_spec, power_truncation_roots};
use super::{DarbouxError, EigenfunctionSpec, Family, FamilyKind, LameProblem, Variant};

/// Catalog entry listing for one (l, m): every admissible finite family
/// plus the available infinite-series indices.
#[derive(Debug, Clone)]
pub struct Classification {
    pub finite: Vec<EigenfunctionSpec>,
    pub infinite: Vec<u8>,
}

/// Enumerates every admissible finite-series family for the problem, in a
/// fixed deterministic order.
pub fn classify_finite_series(prob: &LameProblem) -> Result<Vec<EigenfunctionSpec>, DarbouxError> {
    let mut out = Vec::new();
    for kind in [FamilyKind::SnPower, FamilyKind::CnPower] {
        for index in 1..=8u8 {
            for variant in [Variant::Ring, Variant::Tilde] {
                let fam = Family::new(kind, index, variant);
                if let Some(spec) = family_spec(&fam, prob)? {
                    // The boundary tie produces identical ring and tilde
                    // series; list it once under the ring name.
                    if spec.boundary && variant == Variant::Tilde {
                        continue;
                    }
                    out.push(spec);
                }
            }
        }
    }
    for kind in [FamilyKind::SdHyp, FamilyKind::CnHyp] {
        for index in 1..=8u8 {
            let fam = Family::new(kind, index, Variant::Ring);
            if let Some(spec) = family_spec(&fam, prob)? {
                out.push(spec);
            }
        }
    }
    Ok(out)
}

/// Indices of the infinite-series family that do not truncate at (l, m).
pub fn infinite_available(prob: &LameProblem) -> Vec<u8> {
    (1..=8u8)
        .filter(|&i| {
            let (ring, tilde) = power_truncation_roots(i, prob.l, prob.m);
            ring.is_none() && tilde.is_none()
        })
        .collect()
}

/// Finite catalog plus infinite availability.
pub fn classify(prob: &LameProblem) -> Result<Classification, DarbouxError> {
    Ok(Classification {
        finite: classify_finite_series(prob)?,
        infinite: infinite_available(prob),
    })
}
