use super::transform::Prefactor;
use super::HeunParams;

const TOL: f64 = 1e-12;

/// Argument substitution of a hypergeometric reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZMap {
    /// z = x
    X,
    /// z = x^2
    XSquared,
    /// z = x(2-x)
    XTwoMinusX,
    /// z = (x/(2-x))^2
    RatioSquared,
}

impl ZMap {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            ZMap::X => x,
            ZMap::XSquared => x * x,
            ZMap::XTwoMinusX => x * (2.0 - x),
            ZMap::RatioSquared => {
                let r = x / (2.0 - x);
                r * r
            }
        }
    }

    pub fn derivs(&self, x: f64) -> (f64, f64) {
        match self {
            ZMap::X => (1.0, 0.0),
            ZMap::XSquared => (2.0 * x, 2.0),
            ZMap::XTwoMinusX => (2.0 - 2.0 * x, -2.0),
            ZMap::RatioSquared => {
                let d = 2.0 - x;
                (4.0 * x / (d * d * d), (8.0 + 8.0 * x) / (d * d * d * d))
            }
        }
    }
}

/// Which constraint set fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionCase {
    AZero,
    AMinusOneEpsilonDelta,
    AMinusOneGammaSum,
    AOne,
    ATwoQAlphaBeta,
    ATwoQShifted,
    ATwoM17Alpha,
    ATwoM17Beta,
}

/// A detected reduction: H(x) = prefactor(x) * F(a, b; c; z_map(x)) up to a
/// constant factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeometricReduction {
    pub case: ReductionCase,
    pub z_map: ZMap,
    pub prefactor: Prefactor,
    pub hyp_a: f64,
    pub hyp_b: f64,
    pub hyp_c: f64,
}

fn near(x: f64, y: f64) -> bool {
    (x - y).abs() < TOL
}

/// Detects which of the eight reducible constraint sets the parameters
/// satisfy and returns the target hypergeometric data, or None.
pub fn reduce_to_hypergeometric(p: &HeunParams) -> Option<HypergeometricReduction> {
    let (a, q) = (p.a, p.q);
    let (al, be, ga, de) = (p.alpha, p.beta, p.gamma, p.delta);
    let ep = p.epsilon();

    if near(a, 0.0) {
        let disc = (1.0 - ga - ep) * (1.0 - ga - ep) - 4.0 * q;
        if disc >= 0.0 {
            let k1 = 0.5 * (1.0 - ga - ep - disc.sqrt());
            return Some(HypergeometricReduction {
                case: ReductionCase::AZero,
                z_map: ZMap::X,
                prefactor: Prefactor { x: k1, ..Prefactor::ONE },
                hyp_a: k1 + al,
                hyp_b: k1 + be,
                hyp_c: 2.0 * k1 + ga + ep,
            });
        }
        return None;
    }
    if near(a, -1.0) && near(ep, de) && near(q, 0.0) {
        return Some(HypergeometricReduction {
            case: ReductionCase::AMinusOneEpsilonDelta,
            z_map: ZMap::XSquared,
            prefactor: Prefactor::ONE,
            hyp_a: al / 2.0,
            hyp_b: be / 2.0,
            hyp_c: (1.0 + ga) / 2.0,
        });
    }
    if near(a, -1.0) && near(al + be, 1.0 + ga) && near(q, ga * (1.0 - de)) {
        return Some(HypergeometricReduction {
            case: ReductionCase::AMinusOneGammaSum,
            z_map: ZMap::XSquared,
            prefactor: Prefactor { one_minus_x: 1.0 - de, ..Prefactor::ONE },
            hyp_a: (al - de + 1.0) / 2.0,
            hyp_b: (be - de + 1.0) / 2.0,
            hyp_c: (al + be) / 2.0,
        });
    }
    if near(a, 1.0) {
        let disc = (ga - al - be) * (ga - al - be) - 4.0 * al * be + 4.0 * q;
        if disc >= 0.0 {
            let k2 = 0.5 * (ga - al - be - disc.sqrt());
            return Some(HypergeometricReduction {
                case: ReductionCase::AOne,
                z_map: ZMap::X,
                prefactor: Prefactor { one_minus_x: k2, ..Prefactor::ONE },
                hyp_a: k2 + al,
                hyp_b: k2 + be,
                hyp_c: ga,
            });
        }
        return None;
    }
    if near(a, 2.0) {
        if near(al + be + 1.0, 2.0 * ga + de) && near(q, al * be) {
            return Some(HypergeometricReduction {
                case: ReductionCase::ATwoQAlphaBeta,
                z_map: ZMap::XTwoMinusX,
                prefactor: Prefactor::ONE,
                hyp_a: al / 2.0,
                hyp_b: be / 2.0,
                hyp_c: ga,
            });
        }
        if near(al + be, 1.0 + de) && near(q, al * be + (ga - 1.0) * de) {
            return Some(HypergeometricReduction {
                case: ReductionCase::ATwoQShifted,
                z_map: ZMap::XTwoMinusX,
                prefactor: Prefactor { x: 1.0 - ga, ..Prefactor::ONE },
                hyp_a: (al - ga + 1.0) / 2.0,
                hyp_b: (be - ga + 1.0) / 2.0,
                hyp_c: 2.0 - ga,
            });
        }
        if near(be, al + 1.0 - de) && near(q, al * ga) {
            return Some(HypergeometricReduction {
                case: ReductionCase::ATwoM17Alpha,
                z_map: ZMap::RatioSquared,
                prefactor: Prefactor { one_minus_x_over_a: -al, ..Prefactor::ONE },
                hyp_a: al / 2.0,
                hyp_b: (ga + 2.0 * de - al - 1.0) / 2.0,
                hyp_c: (1.0 + ga) / 2.0,
            });
        }
        if near(al, be + 1.0 - de) && near(q, be * ga) {
            return Some(HypergeometricReduction {
                case: ReductionCase::ATwoM17Beta,
                z_map: ZMap::RatioSquared,
                prefactor: Prefactor { one_minus_x_over_a: -be, ..Prefactor::ONE },
                hyp_a: be / 2.0,
                hyp_b: (ga + 2.0 * de - be - 1.0) / 2.0,
                hyp_c: (1.0 + ga) / 2.0,
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_even_square_case() {
        // a = -1, epsilon = delta, q = 0.
        // epsilon = alpha+beta+1-gamma-delta = delta forces delta = (alpha+beta+1-gamma)/2.
        let (al, be, ga) = (0.6, 1.1, 0.9);
        let de = (al + be + 1.0 - ga) / 2.0;
        let p = HeunParams::new(-1.0, 0.0, al, be, ga, de).unwrap();
        let r = reduce_to_hypergeometric(&p).unwrap();
        assert_eq!(r.case, ReductionCase::AMinusOneEpsilonDelta);
        assert_eq!(r.z_map, ZMap::XSquared);
        assert!((r.hyp_a - al / 2.0).abs() < 1e-15);
        assert!((r.hyp_b - be / 2.0).abs() < 1e-15);
        assert!((r.hyp_c - (1.0 + ga) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn detects_x_two_minus_x_case() {
        let (al, be, ga) = (0.7, 1.2, 0.55);
        let de = al + be + 1.0 - 2.0 * ga;
        let p = HeunParams::new(2.0, al * be, al, be, ga, de).unwrap();
        let r = reduce_to_hypergeometric(&p).unwrap();
        assert_eq!(r.case, ReductionCase::ATwoQAlphaBeta);
        assert_eq!(r.z_map, ZMap::XTwoMinusX);
        assert!((r.hyp_c - ga).abs() < 1e-15);
    }

    #[test]
    fn generic_parameters_do_not_reduce() {
        let p = HeunParams::new(2.5, 0.37, 0.6, 1.4, 0.8, 1.2).unwrap();
        assert!(reduce_to_hypergeometric(&p).is_none());
        let p = HeunParams::new(2.0, 0.123, 0.6, 1.4, 0.8, 1.2).unwrap();
        assert!(reduce_to_hypergeometric(&p).is_none());
    }

    #[test]
    fn z_map_derivatives() {
        let h = 1e-6;
        for map in [ZMap::X, ZMap::XSquared, ZMap::XTwoMinusX, ZMap::RatioSquared] {
            for &x in &[0.15, 0.4, 0.8] {
                let (d1, d2) = map.derivs(x);
                let fd1 = (map.eval(x + h) - map.eval(x - h)) / (2.0 * h);
                let fd2 = (map.eval(x + h) - 2.0 * map.eval(x) + map.eval(x - h)) / (h * h);
                assert!((d1 - fd1).abs() < 1e-6, "{map:?} x = {x}");
                assert!((d2 - fd2).abs() < 1e-3, "{map:?} x = {x}");
            }
        }
    }
}
