use super::{ExpansionError, Group, SeriesExpansion};

/// Convergence data for an expansion used as an infinite series.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRegion {
    /// Radius in |x| for the power groups, in |z| for the others.
    pub radius: f64,
    /// Whether convergence extends to the boundary circle.
    pub boundary_ok: bool,
    /// The parameter condition deciding the boundary.
    pub boundary_condition: String,
}

/// Convergence region of the minimal-solution infinite series.
pub fn convergence_region(e: &SeriesExpansion) -> Result<ConvergenceRegion, ExpansionError> {
    let p = &e.params;
    let a = p.a.abs();
    let eps = p.epsilon();
    match e.group {
        Group::PowerAt0 | Group::PowerAt1 => {
            let radius = if a < 1.0 { 1.0 } else { a };
            let lower_half = e.index <= 4 || (a < 1.0 && matches!(e.index, 1 | 2 | 5 | 6));
            // Boundary test depends on which circle bounds the region.
            let (ok, cond) = if a < 1.0 {
                if matches!(e.index, 1 | 2 | 5 | 6) {
                    (p.delta < 1.0, "Re delta < 1".to_string())
                } else {
                    (p.delta > 1.0, "Re delta > 1".to_string())
                }
            } else if e.index <= 4 {
                (eps < 1.0, "Re epsilon < 1".to_string())
            } else {
                (eps > 1.0, "Re epsilon > 1".to_string())
            };
            let _ = lower_half;
            Ok(ConvergenceRegion { radius, boundary_ok: ok, boundary_condition: cond })
        }
        Group::HypM17 => Ok(ConvergenceRegion {
            radius: 1.0,
            boundary_ok: p.delta < 1.0,
            boundary_condition: "Re delta < 1".to_string(),
        }),
        Group::HypAt1 => Ok(ConvergenceRegion {
            radius: 1.0,
            boundary_ok: p.gamma < 1.0,
            boundary_condition: "Re gamma < 1".to_string(),
        }),
        Group::HypInitial => Ok(ConvergenceRegion {
            radius: 1.0,
            boundary_ok: p.delta < 1.0,
            boundary_condition: "Re delta < 1".to_string(),
        }),
        _ => Err(ExpansionError::ExcludedParameters(format!(
            "no convergence region defined for group {:?}",
            e.group
        ))),
    }
}
