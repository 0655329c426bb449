use super::{HeunError, HeunParams};

/// Multiplicative factor x^p (1-x)^q (1-x/a)^r attached to a transformed
/// solution; exponents refer to the original variable and location a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prefactor {
    pub x: f64,
    pub one_minus_x: f64,
    pub one_minus_x_over_a: f64,
}

impl Prefactor {
    pub const ONE: Prefactor = Prefactor { x: 0.0, one_minus_x: 0.0, one_minus_x_over_a: 0.0 };

    pub fn eval(&self, x: f64, a: f64) -> f64 {
        let mut v = 1.0;
        if self.x != 0.0 {
            v *= x.powf(self.x);
        }
        if self.one_minus_x != 0.0 {
            v *= (1.0 - x).powf(self.one_minus_x);
        }
        if self.one_minus_x_over_a != 0.0 {
            v *= (1.0 - x / a).powf(self.one_minus_x_over_a);
        }
        v
    }
}

/// Argument substitutions used by the transformations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgMap {
    /// y = x
    Identity,
    /// y = 1 - x
    OneMinusX,
    /// y = (1-a)x/(x-a), equivalently (a-1)x/(a-x)
    M17,
    /// y = a(x-1)/(x-a)
    M65,
}

impl ArgMap {
    pub fn eval(&self, x: f64, a: f64) -> f64 {
        match self {
            ArgMap::Identity => x,
            ArgMap::OneMinusX => 1.0 - x,
            ArgMap::M17 => (a - 1.0) * x / (a - x),
            ArgMap::M65 => a * (x - 1.0) / (x - a),
        }
    }

    /// First and second derivatives of the map with respect to x.
    pub fn derivs(&self, x: f64, a: f64) -> (f64, f64) {
        match self {
            ArgMap::Identity => (1.0, 0.0),
            ArgMap::OneMinusX => (-1.0, 0.0),
            ArgMap::M17 => {
                let d = a - x;
                (a * (a - 1.0) / (d * d), 2.0 * a * (a - 1.0) / (d * d * d))
            }
            ArgMap::M65 => {
                let d = x - a;
                (a * (1.0 - a) / (d * d), 2.0 * a * (a - 1.0) / (d * d * d))
            }
        }
    }
}

/// A transformed solution: new parameter tuple, prefactor in the original
/// variable, and the argument map feeding the inner solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformedSolution {
    pub params: HeunParams,
    pub prefactor: Prefactor,
    pub arg_map: ArgMap,
}

/// The eight homotopic transformations (index-shifting substitutions of the
/// dependent variable; the independent variable is untouched).
pub fn homotopy(p: &HeunParams, i: usize) -> Result<TransformedSolution, HeunError> {
    let (a, q) = (p.a, p.q);
    let (al, be, ga, de) = (p.alpha, p.beta, p.gamma, p.delta);
    let ep = p.epsilon();
    let (params, pre) = match i {
        1 => ((a, q, al, be, ga, de), Prefactor::ONE),
        2 => (
            (a, q - (ga - 1.0) * (de * a + ep), be - ga + 1.0, al - ga + 1.0, 2.0 - ga, de),
            Prefactor { x: 1.0 - ga, ..Prefactor::ONE },
        ),
        3 => (
            (a, q - (de - 1.0) * ga * a, be - de + 1.0, al - de + 1.0, ga, 2.0 - de),
            Prefactor { one_minus_x: 1.0 - de, ..Prefactor::ONE },
        ),
        4 => (
            (
                a,
                q - (ga + de - 2.0) * a - (ga - 1.0) * ep,
                al - ga - de + 2.0,
                be - ga - de + 2.0,
                2.0 - ga,
                2.0 - de,
            ),
            Prefactor { x: 1.0 - ga, one_minus_x: 1.0 - de, one_minus_x_over_a: 0.0 },
        ),
        5 => (
            (a, q - ga * (al + be - ga - de), -al + ga + de, -be + ga + de, ga, de),
            Prefactor { one_minus_x_over_a: 1.0 - ep, ..Prefactor::ONE },
        ),
        6 => (
            (
                a,
                q - de * (ga - 1.0) * a - al - be + de + 1.0,
                -be + de + 1.0,
                -al + de + 1.0,
                2.0 - ga,
                de,
            ),
            Prefactor { x: 1.0 - ga, one_minus_x: 0.0, one_minus_x_over_a: 1.0 - ep },
        ),
        7 => (
            (
                a,
                q - ga * ((de - 1.0) * a + al + be - ga - de),
                -be + ga + 1.0,
                -al + ga + 1.0,
                ga,
                2.0 - de,
            ),
            Prefactor { x: 0.0, one_minus_x: 1.0 - de, one_minus_x_over_a: 1.0 - ep },
        ),
        8 => (
            (
                a,
                q - (ga + de - 2.0) * a - al - be + de + 1.0,
                2.0 - al,
                2.0 - be,
                2.0 - ga,
                2.0 - de,
            ),
            Prefactor { x: 1.0 - ga, one_minus_x: 1.0 - de, one_minus_x_over_a: 1.0 - ep },
        ),
        _ => return Err(HeunError::InvalidIndex(i)),
    };
    let (a2, q2, al2, be2, ga2, de2) = params;
    Ok(TransformedSolution {
        params: HeunParams { a: a2, q: q2, alpha: al2, beta: be2, gamma: ga2, delta: de2 },
        prefactor: pre,
        arg_map: ArgMap::Identity,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoebiusKind {
    M17,
    M49,
    M65,
}

/// The three fractional substitutions of the independent variable used here.
pub fn moebius(p: &HeunParams, which: MoebiusKind) -> TransformedSolution {
    let (a, q) = (p.a, p.q);
    let (al, be, ga, de) = (p.alpha, p.beta, p.gamma, p.delta);
    match which {
        MoebiusKind::M17 => TransformedSolution {
            params: HeunParams {
                a: 1.0 - a,
                q: -q + al * ga,
                alpha: al,
                beta: -be + ga + de,
                gamma: ga,
                delta: de,
            },
            prefactor: Prefactor { x: 0.0, one_minus_x: 0.0, one_minus_x_over_a: -al },
            arg_map: ArgMap::M17,
        },
        MoebiusKind::M49 => TransformedSolution {
            params: HeunParams {
                a: 1.0 - a,
                q: -q + al * be,
                alpha: al,
                beta: be,
                gamma: de,
                delta: ga,
            },
            prefactor: Prefactor::ONE,
            arg_map: ArgMap::OneMinusX,
        },
        MoebiusKind::M65 => TransformedSolution {
            params: HeunParams {
                a,
                q: q - al * (be - de),
                alpha: al,
                beta: -be + ga + de,
                gamma: de,
                delta: ga,
            },
            prefactor: Prefactor { x: 0.0, one_minus_x: 0.0, one_minus_x_over_a: -al },
            arg_map: ArgMap::M65,
        },
    }
}
