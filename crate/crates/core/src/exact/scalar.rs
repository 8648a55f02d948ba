//! Exact scalars: rationals and Gaussian rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact element of `Q` or `Q(i)`.
///
/// The representation is canonical: a value with zero imaginary part is
/// always stored as [`Scalar::Rational`], so derived equality and hashing
/// agree with mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Gaussian { re: BigRational, im: BigRational },
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `n/d`; panics if `d == 0`.
    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::Rational(rat(n, d))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Rational(r)
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        if im.is_zero() {
            Scalar::Rational(re)
        } else {
            Scalar::Gaussian { re, im }
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::gaussian(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> BigRational {
        match self {
            Scalar::Rational(r) => r.clone(),
            Scalar::Gaussian { re, .. } => re.clone(),
        }
    }

    pub fn im(&self) -> BigRational {
        match self {
            Scalar::Rational(_) => BigRational::zero(),
            Scalar::Gaussian { im, .. } => im.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Gaussian { .. } => None,
        }
    }

    /// Strictly positive real.
    pub fn is_positive(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_positive())
    }

    /// Membership in `{a+bi : a>0} ∪ {bi : b≥0}`.
    pub fn in_closed_right_half_plane(&self) -> bool {
        let (re, im) = (self.re(), self.im());
        re.is_positive() || (re.is_zero() && !im.is_negative())
    }

    pub fn conj(&self) -> Self {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::Gaussian { re, im } => Scalar::gaussian(re.clone(), -im.clone()),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Gaussian { re, im } => {
                let norm = re * re + im * im;
                Some(Scalar::gaussian(re / &norm, -(im / &norm)))
            }
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        let inv = other
            .inv()
            .ok_or_else(|| Error::InvalidParams("division by zero".into()))?;
        Ok(self * &inv)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// JSON form: `"p/q"` for rationals, `{"re": .., "im": ..}` otherwise.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rational(r) => serde_json::Value::String(fmt_rational(r)),
            Scalar::Gaussian { re, im } => serde_json::json!({
                "re": fmt_rational(re),
                "im": fmt_rational(im),
            }),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Scalar> {
        match v {
            serde_json::Value::String(s) => parse_rational(s).map(Scalar::Rational),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(Scalar::int)
                .ok_or_else(|| Error::Parse(format!("non-integer JSON number {n}"))),
            serde_json::Value::Object(map) => {
                let get = |k: &str| -> Result<BigRational> {
                    match map.get(k) {
                        Some(serde_json::Value::String(s)) => parse_rational(s),
                        Some(serde_json::Value::Number(n)) => n
                            .as_i64()
                            .map(|i| BigRational::from_integer(BigInt::from(i)))
                            .ok_or_else(|| Error::Parse(format!("bad {k} component"))),
                        None => Ok(BigRational::zero()),
                        _ => Err(Error::Parse(format!("bad {k} component"))),
                    }
                };
                Ok(Scalar::gaussian(get("re")?, get("im")?))
            }
            other => Err(Error::Parse(format!("cannot read scalar from {other}"))),
        }
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p`, `p/q`, `bi`, `a+bi`, `a-bi` with rational `a`, `b`.
    fn from_str(s: &str) -> Result<Scalar> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(body) = t.strip_suffix('i') {
            // split at the last sign that is not the leading one
            let split = body
                .char_indices()
                .skip(1)
                .filter(|&(_, c)| c == '+' || c == '-')
                .map(|(i, _)| i)
                .last();
            let (re, im) = match split {
                Some(i) => (&body[..i], &body[i..]),
                None => ("0", body),
            };
            let im = match im {
                "" | "+" => "1",
                "-" => "-1",
                other => other.strip_prefix('+').unwrap_or(other),
            };
            return Ok(Scalar::gaussian(parse_rational(re)?, parse_rational(im)?));
        }
        parse_rational(&t).map(Scalar::Rational)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Gaussian { re, im } => {
                if re.is_zero() {
                    write!(f, "{}i", fmt_rational(im))
                } else if im.is_negative() {
                    write!(f, "{}-{}i", fmt_rational(re), fmt_rational(&-im.clone()))
                } else {
                    write!(f, "{}+{}i", fmt_rational(re), fmt_rational(im))
                }
            }
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => Scalar::gaussian(self.re() + rhs.re(), self.im() + rhs.im()),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            _ => Scalar::gaussian(self.re() - rhs.re(), self.im() - rhs.im()),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Rational(a), Scalar::Gaussian { re, im })
            | (Scalar::Gaussian { re, im }, Scalar::Rational(a)) => {
                Scalar::gaussian(a * re, a * im)
            }
            (Scalar::Gaussian { re: a, im: b }, Scalar::Gaussian { re: c, im: d }) => {
                Scalar::gaussian(a * c - b * d, a * d + b * c)
            }
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] for fallible input.
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r.clone()),
            Scalar::Gaussian { re, im } => Scalar::Gaussian {
                re: -re.clone(),
                im: -im.clone(),
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (&mut *self, rhs) {
            *a += b;
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (&mut *self, rhs) {
            *a -= b;
            return;
        }
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_after_arithmetic() {
        let a = Scalar::frac(6, -4);
        assert_eq!(a, Scalar::frac(-3, 2));
        let i = Scalar::i();
        let minus_one = &i * &i;
        assert_eq!(minus_one, Scalar::int(-1));
        assert!(minus_one.is_real());
    }

    #[test]
    fn gaussian_inverse() {
        let z: Scalar = "1+2i".parse().unwrap();
        let inv = z.inv().unwrap();
        assert_eq!(&z * &inv, Scalar::one());
        assert_eq!(inv, "1/5-2/5i".parse().unwrap());
    }

    #[test]
    fn parse_and_display() {
        for s in ["0", "7", "-3/4", "2i", "-1/2+3i", "5-1/3i"] {
            let v: Scalar = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!("i".parse::<Scalar>().unwrap(), Scalar::i());
        assert_eq!("-i".parse::<Scalar>().unwrap(), -Scalar::i());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn json_forms() {
        assert_eq!(Scalar::frac(1, 2).to_json(), serde_json::json!("1/2"));
        let z = Scalar::gaussian(rat(1, 2), rat(-3, 1));
        let j = z.to_json();
        assert_eq!(j, serde_json::json!({"re": "1/2", "im": "-3"}));
        assert_eq!(Scalar::from_json(&j).unwrap(), z);
        // zero imaginary part collapses to a rational
        let r = Scalar::from_json(&serde_json::json!({"re": "2", "im": "0"})).unwrap();
        assert_eq!(r, Scalar::int(2));
    }

    #[test]
    fn right_half_plane() {
        let yes = ["1", "1/2-7i", "0", "3i"];
        let no = ["-1", "-3i", "-1/2+i"];
        for s in yes {
            assert!(s.parse::<Scalar>().unwrap().in_closed_right_half_plane(), "{s}");
        }
        for s in no {
            assert!(!s.parse::<Scalar>().unwrap().in_closed_right_half_plane(), "{s}");
        }
    }
}
