use std::fmt;
use std::str::FromStr;

/// Exact rational used for the integrality analysis of the strength
/// parameters; the truncation and family case split is arithmetic on
/// integers and half-integers and must not run on floats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        let s = if den < 0 { -1 } else { 1 };
        Rational { num: s * num / g, den: s * den / g }
    }

    pub fn integer(n: i64) -> Rational {
        Rational { num: n, den: 1 }
    }

    /// Half-integer n/2.
    pub fn half(n: i64) -> Rational {
        Rational::new(n, 2)
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// True for odd multiples of 1/2.
    pub fn is_half_odd(&self) -> bool {
        self.den == 2
    }

    pub fn half_of(self) -> Rational {
        Rational::new(self.num, 2 * self.den)
    }

    /// Some(n) when the value is exactly the integer n.
    pub fn as_integer(&self) -> Option<i64> {
        self.is_integer().then_some(self.num)
    }

    /// Snaps a float to a small-denominator rational within 1e-12, if any.
    pub fn snap(x: f64) -> Option<Rational> {
        for den in 1..=16i64 {
            let num = (x * den as f64).round();
            if num.abs() < 1e15 && (x - num / den as f64).abs() < 1e-12 {
                return Some(Rational::new(num as i64, den));
            }
        }
        None
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl std::ops::Add for Rational {
    type Output = Rational;
    fn add(self, o: Rational) -> Rational {
        Rational::new(self.num * o.den + o.num * self.den, self.den * o.den)
    }
}

impl std::ops::Sub for Rational {
    type Output = Rational;
    fn sub(self, o: Rational) -> Rational {
        Rational::new(self.num * o.den - o.num * self.den, self.den * o.den)
    }
}

impl std::ops::Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { num: -self.num, den: self.den }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse rational: {}", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let num = n.trim().parse::<i64>().map_err(|_| ParseRationalError(s.to_string()))?;
            let den = d.trim().parse::<i64>().map_err(|_| ParseRationalError(s.to_string()))?;
            if den == 0 {
                return Err(ParseRationalError(s.to_string()));
            }
            return Ok(Rational::new(num, den));
        }
        if let Ok(n) = s.parse::<i64>() {
            return Ok(Rational::integer(n));
        }
        let x = s.parse::<f64>().map_err(|_| ParseRationalError(s.to_string()))?;
        Rational::snap(x).ok_or_else(|| ParseRationalError(s.to_string()))
    }
}
