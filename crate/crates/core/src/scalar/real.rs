use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision real number.
///
/// Binary operations produce a result at the larger of the two operand
/// precisions. Operations with an `f64` keep the precision of the `Real`.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Real(Float);

impl Real {
    pub fn from_f64(value: f64, prec: u32) -> Real {
        Real(Float::with_val(prec, value))
    }

    pub fn from_int(value: i64, prec: u32) -> Real {
        Real(Float::with_val(prec, value))
    }

    /// `num / den`, correctly rounded.
    pub fn from_ratio(num: i64, den: i64, prec: u32) -> Real {
        let n = Float::with_val(prec, num);
        Real(Float::with_val(prec, n / den))
    }

    pub fn zero(prec: u32) -> Real {
        Real(Float::new(prec))
    }

    pub fn one(prec: u32) -> Real {
        Real::from_int(1, prec)
    }

    pub fn pi(prec: u32) -> Real {
        Real(Float::with_val(prec, Constant::Pi))
    }

    /// Parses a plain decimal string (`"0.25"`, `"-1.5e-3"`) at `prec` bits.
    pub fn parse_decimal(s: &str, prec: u32) -> Result<Real> {
        let parsed = Float::parse(s.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        Ok(Real(Float::with_val(prec, parsed)))
    }

    pub fn from_float(value: Float) -> Real {
        Real(value)
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    /// Copy rounded (or zero-extended) to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Real {
        Real(Float::with_val(prec, &self.0))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_sign_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    /// -1, 0 or 1.
    pub fn signum_i32(&self) -> i32 {
        match self.0.cmp0() {
            Some(Ordering::Less) => -1,
            Some(Ordering::Greater) => 1,
            _ => 0,
        }
    }

    /// Relative unit `2^(k - prec)` at this number's precision.
    pub fn ulp_scale(&self, k: i32) -> Real {
        let p = self.prec();
        Real(Float::with_val(p, 1) << (k - p as i32))
    }

    pub fn abs(&self) -> Real {
        Real(self.0.clone().abs())
    }

    pub fn sqr(&self) -> Real {
        Real(self.0.clone().square())
    }

    pub fn sqrt(&self) -> Real {
        Real(self.0.clone().sqrt())
    }

    pub fn exp(&self) -> Real {
        Real(self.0.clone().exp())
    }

    pub fn ln(&self) -> Real {
        Real(self.0.clone().ln())
    }

    pub fn log2(&self) -> Real {
        Real(self.0.clone().log2())
    }

    pub fn cos(&self) -> Real {
        Real(self.0.clone().cos())
    }

    pub fn sin(&self) -> Real {
        Real(self.0.clone().sin())
    }

    pub fn cosh(&self) -> Real {
        Real(self.0.clone().cosh())
    }

    pub fn sinh(&self) -> Real {
        Real(self.0.clone().sinh())
    }

    /// Inverse hyperbolic cosine; NaN below 1 as in MPFR.
    pub fn acosh(&self) -> Real {
        Real(self.0.clone().acosh())
    }

    /// Inverse cosine.
    ///
    /// Arguments beyond `[-1, 1]` by at most `2^(16 - prec)` are clamped to
    /// the boundary; anything further out is a domain error.
    pub fn acos(&self) -> Result<Real> {
        let p = self.prec();
        let one = Float::with_val(p, 1);
        let abs = Float::with_val(p, self.0.abs_ref());
        if abs > one {
            let excess = Float::with_val(p, &abs - &one);
            let slack = Float::with_val(p, 1) << (16 - p as i32);
            if excess > slack {
                return Err(Error::Domain(format!(
                    "acos argument {} outside [-1, 1]",
                    self.to_f64()
                )));
            }
            return Ok(if self.0.is_sign_negative() {
                Real::pi(p)
            } else {
                Real::zero(p)
            });
        }
        Ok(Real(self.0.clone().acos()))
    }

    pub fn powi(&self, n: i32) -> Real {
        Real(self.0.clone().pow(n))
    }

    pub fn max_of(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min_of(self, other: Real) -> Real {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Decimal digits needed so that parsing back reproduces the value.
    fn round_trip_digits(prec: u32) -> usize {
        (prec as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2
    }

    /// Decimal string with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        self.0.to_string_radix(10, Some(digits.max(1)))
    }

    /// Serialization with explicit precision tag, `p=<bits>:<decimal>`.
    pub fn to_tagged(&self) -> String {
        let p = self.prec();
        format!("p={}:{}", p, self.to_decimal(Self::round_trip_digits(p)))
    }

    /// Inverse of [`Real::to_tagged`].
    pub fn parse_tagged(s: &str) -> Result<Real> {
        let rest = s
            .trim()
            .strip_prefix("p=")
            .ok_or_else(|| Error::Parse(format!("missing precision tag in {s:?}")))?;
        let (bits, dec) = rest
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing ':' in {s:?}")))?;
        let prec: u32 = bits
            .parse()
            .map_err(|_| Error::Parse(format!("bad precision {bits:?}")))?;
        if !(rug::float::prec_min()..=rug::float::prec_max()).contains(&prec) {
            return Err(Error::Parse(format!("precision {prec} out of range")));
        }
        Real::parse_decimal(dec, prec)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(d) => write!(f, "{}", self.to_decimal(d)),
            None => write!(
                f,
                "{}",
                self.to_decimal(Self::round_trip_digits(self.prec()))
            ),
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tagged())
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_tagged())
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Real, D::Error> {
        let s = String::deserialize(deserializer)?;
        Real::parse_tagged(&s).map_err(serde::de::Error::custom)
    }
}

impl PartialEq<f64> for Real {
    fn eq(&self, other: &f64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<f64> for Real {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

macro_rules! real_binop {
    ($Trait:ident, $method:ident, $AssignTrait:ident, $assign:ident, $op:tt) => {
        impl $Trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let p = self.prec().max(rhs.prec());
                Real(Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
        impl $Trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $Trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
        impl $Trait<f64> for &Real {
            type Output = Real;
            fn $method(self, rhs: f64) -> Real {
                Real(Float::with_val(self.prec(), &self.0 $op rhs))
            }
        }
        impl $Trait<f64> for Real {
            type Output = Real;
            fn $method(self, rhs: f64) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $AssignTrait<&Real> for Real {
            fn $assign(&mut self, rhs: &Real) {
                *self = (&*self).$method(rhs);
            }
        }
        impl $AssignTrait<Real> for Real {
            fn $assign(&mut self, rhs: Real) {
                *self = (&*self).$method(&rhs);
            }
        }
        impl $AssignTrait<f64> for Real {
            fn $assign(&mut self, rhs: f64) {
                *self = (&*self).$method(rhs);
            }
        }
    };
}

real_binop!(Add, add, AddAssign, add_assign, +);
real_binop!(Sub, sub, SubAssign, sub_assign, -);
real_binop!(Mul, mul, MulAssign, mul_assign, *);
real_binop!(Div, div, DivAssign, div_assign, /);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(Float::with_val(self.prec(), -&self.0))
    }
}

/// Smallest bit count `p` with `p >= guard + ceil((2m + 2) log2((1 + a)/(1 - a)))`.
///
/// The error of the degree `2m + 1` sign approximant decays like
/// `((1 - a)/(1 + a))^m`; this budget keeps it representable with `guard`
/// bits to spare.
pub fn precision_for(a: &Real, m: usize, guard: u32) -> Result<u32> {
    let af = a.to_f64();
    if !(af > 0.0 && af < 1.0) {
        return Err(Error::Domain(format!("a = {af} must lie in (0, 1)")));
    }
    let ratio = (1.0 + af) / (1.0 - af);
    let bits = (2 * m + 2) as f64 * ratio.log2();
    // Absorb decimal-to-binary rounding of a (e.g. a = 1/3 gives ratio 2 + 4e-16).
    let extra = (bits - 1e-9).ceil().max(0.0) as u32;
    Ok(guard + extra.max(if bits > 0.0 { 1 } else { 0 }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_takes_max_precision() {
        let x = Real::from_f64(1.5, 80);
        let y = Real::from_f64(2.0, 200);
        assert_eq!((&x + &y).prec(), 200);
        assert_eq!((&x * 3.0).prec(), 80);
        assert_eq!((y / x).prec(), 200);
    }

    #[test]
    fn precision_budget_examples() {
        let third = Real::from_ratio(1, 3, 256);
        assert_eq!(precision_for(&third, 0, 64).unwrap(), 66);
        let tiny = Real::from_f64(1e-12, 64);
        assert_eq!(precision_for(&tiny, 10, 64).unwrap(), 65);
        let a = Real::from_f64(0.9, 64);
        assert_eq!(precision_for(&a, 5, 64).unwrap(), 115);
        assert!(precision_for(&Real::from_f64(1.0, 64), 3, 64).is_err());
        assert!(precision_for(&Real::from_f64(-0.2, 64), 3, 64).is_err());
    }

    #[test]
    fn tagged_round_trip() {
        let x = Real::from_ratio(2, 7, 300);
        let s = x.to_tagged();
        assert!(s.starts_with("p=300:"));
        let y = Real::parse_tagged(&s).unwrap();
        assert_eq!(y.prec(), 300);
        let rel = ((&y - &x) / &x).abs();
        assert!(rel <= x.ulp_scale(1));
        assert!(Real::parse_tagged("0.5").is_err());
        assert!(Real::parse_tagged("p=x:0.5").is_err());
    }

    #[test]
    fn acos_clamps_only_within_slack() {
        let p = 128;
        let one = Real::one(p);
        let nudged = &one + &one.ulp_scale(10);
        assert!(nudged.acos().unwrap().is_zero());
        let far = &one + &one.ulp_scale(40);
        assert!(far.acos().is_err());
        let neg = -nudged;
        let v = neg.acos().unwrap();
        assert!((v - Real::pi(p)).is_zero());
    }

    #[test]
    fn elementary_functions() {
        let p = 200;
        let three = Real::from_int(3, p);
        let b = three.acosh();
        let expect = (Real::from_int(3, p) + Real::from_int(8, p).sqrt()).ln();
        assert!((&b - &expect).abs() < Real::one(p).ulp_scale(4));
        assert!((b.cosh() - three).abs() < Real::one(p).ulp_scale(8));
    }
}
