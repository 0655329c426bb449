use super::{near_nonpositive_int, SpecFunError};
use std::f64::consts::PI;

// Lanczos approximation, g = 7, 9 coefficients (GSL values).
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_gamma(x: f64) -> f64 {
    // Requires x >= 0.5.
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        acc += p / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// Gamma function for real arguments away from the poles at 0, -1, -2, ...
pub fn gamma(x: f64) -> Result<f64, SpecFunError> {
    if near_nonpositive_int(x, 1e-12) {
        return Err(SpecFunError::GammaPole(x));
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection formula.
        PI / ((PI * x).sin() * lanczos_gamma(1.0 - x))
    } else {
        lanczos_gamma(x)
    }
}

/// 1/Gamma(x), finite for every real x (zero at the poles of Gamma).
pub fn recip_gamma(x: f64) -> f64 {
    if near_nonpositive_int(x, 1e-12) {
        0.0
    } else {
        1.0 / gamma_unchecked(x)
    }
}
