//! The acceptance suites: golden spectra, degeneracy, residual gates,
//! identity checks, the randomized real-spectrum property, the
//! special-function checks, the trigonometric-series cross check and the
//! parity/period/boundedness checks. The CLI and the integration tests run
//! the same code.

mod suites;

use crate::exec::ExecMode;
use std::collections::BTreeMap;
use std::time::Instant;

/// Tolerance overrides keyed by suite-specific names.
#[derive(Debug, Clone)]
#[derive(Default)]
pub struct VerifyConfig {
    pub tolerances: BTreeMap<String, f64>,
    pub exec: ExecMode,
}


impl VerifyConfig {
    pub fn tol(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

pub const SUITE_NAMES: [&str; 10] = [
    "appendix-c-1",
    "appendix-c-2",
    "appendix-c-3",
    "degeneracy",
    "ode-residual",
    "identity",
    "arscott",
    "specfun",
    "svartholm",
    "parity-period",
];

/// Runs every suite whose name starts with `only` (all when None),
/// returning one result per suite.
pub fn run(cfg: &VerifyConfig, only: Option<&str>) -> Vec<CheckResult> {
    let jobs: Vec<&'static str> = SUITE_NAMES
        .iter()
        .copied()
        .filter(|n| only.is_none_or(|o| n.starts_with(o)))
        .collect();
    jobs.into_iter()
        .map(|name| {
            let start = Instant::now();
            let outcome = std::panic::catch_unwind(|| dispatch(name, cfg));
            let millis = start.elapsed().as_millis();
            match outcome {
                Ok(Ok(detail)) => CheckResult { name, passed: true, detail, millis },
                Ok(Err(detail)) => CheckResult { name, passed: false, detail, millis },
                Err(_) => CheckResult {
                    name,
                    passed: false,
                    detail: "suite panicked".to_string(),
                    millis,
                },
            }
        })
        .collect()
}

fn dispatch(name: &str, cfg: &VerifyConfig) -> Result<String, String> {
    match name {
        "appendix-c-1" => suites::appendix_c_1(cfg),
        "appendix-c-2" => suites::appendix_c_2(cfg),
        "appendix-c-3" => suites::appendix_c_3(cfg),
        "degeneracy" => suites::degeneracy(cfg),
        "ode-residual" => suites::ode_residual(cfg, None),
        "identity" => suites::identity(cfg),
        "arscott" => suites::arscott(cfg),
        "specfun" => suites::specfun(cfg),
        "svartholm" => suites::svartholm(cfg),
        "parity-period" => suites::parity_period(cfg),
        _ => Err(format!("unknown suite {name}")),
    }
}
