//! Number fields the matrices are generic over.
//!
//! Three backends share the [`Scalar`] trait: double-precision complex
//! numbers, exact rationals and exact Gaussian rationals. Identity checks run
//! on the exact backends, where equality is decidable; spectral residual checks
//! and root finding run in floating point.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Exact Gaussian rational `p + i q` with `p, q` rational.
pub type GaussRational = Complex<BigRational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    FloatComplex,
    ExactRational,
    ExactGaussianRational,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::FloatComplex => "float-complex",
            Backend::ExactRational => "exact-rational",
            Backend::ExactGaussianRational => "exact-gaussian-rational",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "float-complex" => Ok(Backend::FloatComplex),
            "exact-rational" => Ok(Backend::ExactRational),
            "exact-gaussian-rational" => Ok(Backend::ExactGaussianRational),
            other => Err(Error::Parse(format!("unknown backend tag {other:?}"))),
        }
    }

    pub fn is_exact(self) -> bool {
        !matches!(self, Backend::FloatComplex)
    }
}

/// A field element. All arithmetic is by value; exact backends never round.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const BACKEND: Backend;

    fn from_rational(r: &BigRational) -> Self;

    /// Builds `re + i im`; fails on the real rational backend when `im != 0`.
    fn from_parts(re: &BigRational, im: &BigRational) -> Result<Self>;

    fn to_c64(&self) -> Complex64;

    fn is_finite(&self) -> bool;

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;

    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }

    fn is_exact() -> bool {
        Self::BACKEND.is_exact()
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(v)))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Integer power by repeated multiplication; negative exponents invert.
    fn powi(&self, e: i64) -> Self {
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * self.clone();
        }
        if e < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// Errors with [`Error::NonFinite`] on NaN/Inf payloads.
    fn checked(self) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite)
        }
    }
}

impl Scalar for Complex64 {
    const BACKEND: Backend = Backend::FloatComplex;

    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }

    fn from_parts(re: &BigRational, im: &BigRational) -> Result<Self> {
        Complex64::new(rational_to_f64(re), rational_to_f64(im)).checked()
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    fn to_json(&self) -> Value {
        serde_json::json!([self.re, self.im])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let pair = v
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Parse(format!("expected [re, im], found {v}")))?;
        let part = |x: &Value| {
            x.as_f64()
                .ok_or_else(|| Error::Parse(format!("expected a number, found {x}")))
        };
        Complex64::new(part(&pair[0])?, part(&pair[1])?).checked()
    }
}

impl Scalar for BigRational {
    const BACKEND: Backend = Backend::ExactRational;

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn from_parts(re: &BigRational, im: &BigRational) -> Result<Self> {
        if im.is_zero() {
            Ok(re.clone())
        } else {
            Err(Error::Parse(
                "imaginary part on the real rational backend".into(),
            ))
        }
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn magnitude(&self) -> f64 {
        rational_to_f64(&self.abs())
    }

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        let s = v
            .as_str()
            .ok_or_else(|| Error::Parse(format!("expected \"p/q\" string, found {v}")))?;
        parse_rational(s)
    }
}

impl Scalar for GaussRational {
    const BACKEND: Backend = Backend::ExactGaussianRational;

    fn from_rational(r: &BigRational) -> Self {
        Complex::new(r.clone(), BigRational::zero())
    }

    fn from_parts(re: &BigRational, im: &BigRational) -> Result<Self> {
        Ok(Complex::new(re.clone(), im.clone()))
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn to_json(&self) -> Value {
        serde_json::json!([format_rational(&self.re), format_rational(&self.im)])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let pair = v
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Parse(format!("expected [\"p/q\", \"p/q\"], found {v}")))?;
        let re = BigRational::from_json(&pair[0])?;
        let im = BigRational::from_json(&pair[1])?;
        Ok(Complex::new(re, im))
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact Gaussian rational equal to a finite complex float.
pub fn gauss_from_c64(z: Complex64) -> Result<GaussRational> {
    let part = |x: f64| BigRational::from_float(x).ok_or(Error::NonFinite);
    Ok(GaussRational::new(part(z.re)?, part(z.im)?))
}

/// Always `p/q`, including integers (`3/1`) and zero (`0/1`).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, an integer, or a plain decimal such as `-1.25` (converted
/// exactly).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = BigRational::new(numer, denom);
    Ok(if neg { -value } else { value })
}

/// Parses a scalar literal for any backend: rationals `p/q`, decimals, and
/// complex forms `a+bi`, `a-bi`, `bi`, `i`, `-i`.
pub fn parse_scalar<S: Scalar>(s: &str) -> Result<S> {
    let (re, im) = parse_complex_parts(s)?;
    S::from_parts(&re, &im)
}

fn parse_complex_parts(s: &str) -> Result<(BigRational, BigRational)> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse("empty scalar literal".into()));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok((parse_rational(&t)?, BigRational::zero()));
    };
    // Split at the last sign that is not leading and not part of an exponent.
    let split = body
        .char_indices()
        .rev()
        .find(|&(idx, c)| idx > 0 && (c == '+' || c == '-'))
        .map(|(idx, _)| idx);
    let (re_str, im_str) = match split {
        Some(idx) => (&body[..idx], &body[idx..]),
        None => ("", body),
    };
    let im = match im_str {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        other => parse_rational(other)?,
    };
    let re = if re_str.is_empty() {
        BigRational::zero()
    } else {
        parse_rational(re_str)?
    };
    Ok((re, im))
}

/// Relative/absolute closeness used by the float backend.
pub fn approx_eq<S: Scalar>(a: &S, b: &S, tol: f64) -> bool {
    if S::is_exact() {
        return a == b;
    }
    let diff = (a.clone() - b.clone()).magnitude();
    diff <= tol * a.magnitude().max(b.magnitude()).max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_rationals_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), q(-5, 4));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn parses_complex_literals() {
        let z: GaussRational = parse_scalar("1/2-3i").unwrap();
        assert_eq!(z, Complex::new(q(1, 2), q(-3, 1)));
        let z: GaussRational = parse_scalar("-i").unwrap();
        assert_eq!(z, Complex::new(q(0, 1), q(-1, 1)));
        let z: Complex64 = parse_scalar("2+0.5i").unwrap();
        assert_eq!(z, Complex64::new(2.0, 0.5));
        assert!(parse_scalar::<BigRational>("1+i").is_err());
    }

    #[test]
    fn json_encodings() {
        assert_eq!(q(3, 1).to_json(), Value::String("3/1".into()));
        let g = Complex::new(q(1, 2), q(0, 1));
        assert_eq!(g.to_json(), serde_json::json!(["1/2", "0/1"]));
        assert_eq!(GaussRational::from_json(&g.to_json()).unwrap(), g);
        let f = Complex64::new(0.25, -1.0);
        assert_eq!(Complex64::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn non_finite_float_rejected() {
        assert_eq!(
            Complex64::new(f64::NAN, 0.0).checked(),
            Err(Error::NonFinite)
        );
    }
}
