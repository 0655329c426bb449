use super::SpecFunError;
use std::f64::consts::FRAC_PI_2;

/// Squared elliptic modulus restricted to (0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus {
    k2: f64,
}

impl Modulus {
    pub fn new(k2: f64) -> Result<Self, SpecFunError> {
        if !(k2 > 0.0 && k2 < 1.0) {
            return Err(SpecFunError::InvalidModulus(k2));
        }
        Ok(Modulus { k2 })
    }

    pub fn k2(&self) -> f64 {
        self.k2
    }

    /// Complementary squared modulus 1 - k^2.
    pub fn k2_comp(&self) -> f64 {
        1.0 - self.k2
    }
}

/// sn, cn, dn at a common argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
    pub u: f64,
}

/// Complete elliptic integral of the first kind, AGM form.
pub fn elliptic_k(m: Modulus) -> f64 {
    let mut a = 1.0f64;
    let mut b = m.k2_comp().sqrt();
    for _ in 0..64 {
        if (a - b).abs() <= 1e-17 * a {
            break;
        }
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
    }
    FRAC_PI_2 / a
}

/// Jacobi elliptic functions by the descending Landen transformation.
///
/// The AGM scales feed an amplitude iteration solved backwards with the
/// principal arcsine branch, which keeps the quasi-linear growth of the
/// amplitude and hence the exact periodicity structure for any real `u`.
pub fn jacobi(u: f64, m: Modulus) -> EllipticTriple {
    let k2 = m.k2();
    let mut a = vec![1.0f64];
    let mut c = vec![k2.sqrt()];
    let mut b = m.k2_comp().sqrt();
    let mut n = 0;
    while c[n].abs() > 1e-15 * a[n] && n < 60 {
        let an = 0.5 * (a[n] + b);
        let cn = 0.5 * (a[n] - b);
        b = (a[n] * b).sqrt();
        a.push(an);
        c.push(cn);
        n += 1;
    }
    let mut phi = (1u64 << n) as f64 * a[n] * u;
    for i in (1..=n).rev() {
        let s = (c[i] / a[i] * phi.sin()).clamp(-1.0, 1.0);
        phi = 0.5 * (phi + s.asin());
    }
    let sn = phi.sin();
    let cn = phi.cos();
    let dn = (1.0 - k2 * sn * sn).sqrt();
    EllipticTriple { sn, cn, dn, u }
}

/// sd = sn/dn and cd = cn/dn; dn never vanishes for 0 < k^2 < 1.
pub fn jacobi_sd_cd(u: f64, m: Modulus) -> (f64, f64) {
    let t = jacobi(u, m);
    (t.sn / t.dn, t.cn / t.dn)
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn squared_identities_hold_everywhere(
            u in -12.0f64..12.0,
            k2 in 0.02f64..0.98,
        ) {
            let t = jacobi(u, Modulus::new(k2).unwrap());
            prop_assert!((t.sn * t.sn + t.cn * t.cn - 1.0).abs() < 1e-12);
            prop_assert!((k2 * t.sn * t.sn + t.dn * t.dn - 1.0).abs() < 1e-12);
            let (sd, cd) = jacobi_sd_cd(u, Modulus::new(k2).unwrap());
            prop_assert!(((1.0 - k2) * sd * sd + cd * cd - 1.0).abs() < 1e-12);
        }
    }
}
