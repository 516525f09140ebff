//! Runtime-tagged scalars and polynomials.
//!
//! Used at the serialization and CLI boundary where the mode is data rather
//! than a type. Arithmetic between an exact and a float operand is an error.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{FPoly, Poly, QPoly};

/// Shorthand for an exact rational `num/den`.
pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Parses `"num/den"`, an integer, or a decimal such as `"0.4"` into an exact
/// rational. Decimals are read as exact decimal fractions, never through `f64`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let err = || Error::ParseRational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err())?;
        let den: BigInt = den.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| err())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(all * ten.pow(scale as u32))
    } else {
        BigRational::new(all, ten.pow((-scale) as u32))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// `"num/den"`, or just `"num"` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational from a finite float (every finite binary float is a dyadic rational).
pub fn f64_to_rational(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::InvalidParameter(format!("non-finite value {x}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rational,
    Float,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Rational => "rational",
            Mode::Float => "float",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Rational(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Rational(_) => Mode::Rational,
            Scalar::Float(_) => Mode::Float,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => rational_to_f64(r),
            Scalar::Float(x) => *x,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Float(x) => *x < 0.0,
        }
    }
}

fn mismatch(expected: Mode, found: Mode) -> Error {
    Error::ModeMismatch {
        expected: expected.name(),
        found: found.name(),
    }
}

/// A polynomial whose scalar mode is chosen at runtime.
#[derive(Debug, Clone, PartialEq)]
pub enum Polynomial {
    Rational(QPoly),
    Float(FPoly),
}

impl Polynomial {
    pub fn mode(&self) -> Mode {
        match self {
            Polynomial::Rational(_) => Mode::Rational,
            Polynomial::Float(_) => Mode::Float,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            Polynomial::Rational(p) => p.degree(),
            Polynomial::Float(p) => p.degree(),
        }
    }

    /// Demote to float mode; float polynomials are returned unchanged.
    pub fn to_float(&self) -> Polynomial {
        match self {
            Polynomial::Rational(p) => Polynomial::Float(p.to_f64()),
            Polynomial::Float(_) => self.clone(),
        }
    }

    pub fn eval(&self, x: &Scalar) -> Result<Scalar> {
        match (self, x) {
            (Polynomial::Rational(p), Scalar::Rational(v)) => Ok(Scalar::Rational(p.eval(v))),
            (Polynomial::Float(p), Scalar::Float(v)) => Ok(Scalar::Float(p.eval(v))),
            _ => Err(mismatch(self.mode(), x.mode())),
        }
    }

    pub fn mul_linear(&self, root: &Scalar) -> Result<Polynomial> {
        match (self, root) {
            (Polynomial::Rational(p), Scalar::Rational(r)) => Ok(Polynomial::Rational(p.mul_linear(r.clone()))),
            (Polynomial::Float(p), Scalar::Float(r)) => Ok(Polynomial::Float(p.mul_linear(*r))),
            _ => Err(mismatch(self.mode(), root.mode())),
        }
    }

    /// `a * p + b * q`.
    pub fn linear_combine(a: &Scalar, p: &Polynomial, b: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
        use Polynomial as P;
        match (a, p, b, q) {
            (Scalar::Rational(a), P::Rational(p), P::Rational(b), P::Rational(q)) => {
                Ok(P::Rational(Poly::linear_combine(a, p, b, q)))
            }
            (Scalar::Float(a), P::Float(p), P::Float(b), P::Float(q)) => Ok(P::Float(Poly::linear_combine(a, p, b, q))),
            _ => {
                let found = [p.mode(), b.mode(), q.mode()]
                    .into_iter()
                    .find(|m| *m != a.mode())
                    .unwrap_or(a.mode());
                Err(mismatch(a.mode(), found))
            }
        }
    }

    /// Exact zero test; float polynomials are rejected rather than thresholded.
    pub fn is_identically_zero(&self) -> Result<bool> {
        match self {
            Polynomial::Rational(p) => Ok(p.is_zero()),
            Polynomial::Float(_) => Err(mismatch(Mode::Rational, Mode::Float)),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PolynomialWire {
    mode: Mode,
    coeffs: Vec<serde_json::Value>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = match self {
            Polynomial::Rational(p) => p
                .coeffs()
                .iter()
                .map(|c| serde_json::Value::String(format_rational(c)))
                .collect(),
            Polynomial::Float(p) => p.coeffs().iter().map(|&c| serde_json::json!(c)).collect(),
        };
        PolynomialWire {
            mode: self.mode(),
            coeffs,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = PolynomialWire::deserialize(deserializer)?;
        match wire.mode {
            Mode::Rational => {
                let cs = wire
                    .coeffs
                    .iter()
                    .map(|v| match v {
                        serde_json::Value::String(s) => parse_rational(s).map_err(D::Error::custom),
                        other => Err(D::Error::custom(format!(
                            "rational coefficient must be a string, got {other}"
                        ))),
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                Ok(Polynomial::Rational(Poly::new(cs)))
            }
            Mode::Float => {
                let cs = wire
                    .coeffs
                    .iter()
                    .map(|v| {
                        v.as_f64()
                            .ok_or_else(|| D::Error::custom(format!("float coefficient must be a number, got {v}")))
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                Ok(Polynomial::Float(Poly::new(cs)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-2/-4").unwrap(), q(1, 2));
        assert_eq!(parse_rational("0.4").unwrap(), q(2, 5));
        assert_eq!(parse_rational("-0.375").unwrap(), q(-3, 8));
        assert_eq!(parse_rational("14").unwrap(), q(14, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("1e-2").unwrap(), q(1, 100));
        for bad in ["", "1/0", "a", "1.2.3", "-", "1/x"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let r = parse_rational("10/-4").unwrap();
        assert_eq!(r.numer(), &BigInt::from(-5));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn mixed_mode_is_rejected() {
        let p = Polynomial::Rational(Poly::linear(q(1, 1)));
        assert!(matches!(p.eval(&Scalar::Float(1.0)), Err(Error::ModeMismatch { .. })));
        assert!(p.mul_linear(&Scalar::Float(0.0)).is_err());
        let f = Polynomial::Float(Poly::x());
        assert!(Polynomial::linear_combine(&Scalar::Rational(q(1, 1)), &p, &f, &p).is_err());
        assert!(f.is_identically_zero().is_err());
        assert_eq!(p.eval(&Scalar::Rational(q(1, 1))).unwrap(), Scalar::Rational(q(0, 1)));
    }

    #[test]
    fn json_schema() {
        let p = Polynomial::Rational(Poly::new(vec![q(1, 1), q(-3, 2)]));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"mode":"rational","coeffs":["1","-3/2"]}"#);
        let f: Polynomial = serde_json::from_str(r#"{"mode":"float","coeffs":[1.5,0,2]}"#).unwrap();
        assert_eq!(f, Polynomial::Float(Poly::new(vec![1.5, 0.0, 2.0])));
        assert!(serde_json::from_str::<Polynomial>(r#"{"mode":"rational","coeffs":[1]}"#).is_err());
    }

    proptest! {
        #[test]
        fn json_round_trip(cs in prop::collection::vec((-50i64..50, 1i64..20), 0..10)) {
            let p = Polynomial::Rational(Poly::new(cs.iter().map(|&(n, d)| q(n, d)).collect()));
            let back: Polynomial = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn format_parse_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let r = q(n, d);
            prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }
}
