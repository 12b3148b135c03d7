//! Exact arithmetic kernels: rationals, Laurent polynomials, q-Pochhammer
//! products, Euler product expansions and the graded series bases.

mod basis;
mod laurent;
mod pochhammer;
mod ratfunc;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use basis::{basis_expand, basis_project, BasisDescriptor, BasisKind, BasisTable, Projection};
pub use laurent::LaurentPoly;
pub use pochhammer::{euler_expand, inv_euler_expand, q_factorial, q_pochhammer, rising_factorial};
pub use ratfunc::RatFunc;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Field-like coefficient type shared by exact rationals and rational
/// functions of an auxiliary variable.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;

    fn from_int(i: i64) -> Self {
        Self::from_rational(&int(i))
    }

    /// Integer power; negative exponents invert (caller guarantees nonzero).
    fn pow_i(&self, e: i64) -> Self {
        let mut base = if e < 0 {
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            k >>= 1;
            if k > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn pow_i(&self, e: i64) -> Self {
        num_traits::Pow::pow(self, e as i32)
    }
}

pub fn int(i: i64) -> Rational {
    Rational::from_integer(BigInt::from(i))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p/q" or "p" (optional sign), rejecting zero denominators.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = |why: &str| Error::ParseRational {
        text: text.to_string(),
        reason: why.to_string(),
    };
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
    let d: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// Lowest-terms "p/q" (or "p" for integers).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal approximation for human-readable tables only.
pub fn to_f64(r: &Rational) -> f64 {
    let (n, d) = (r.numer(), r.denom());
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            // scale down huge operands by their bit lengths
            let shift = n.bits().max(d.bits()).saturating_sub(1000) as usize;
            let a = (n >> shift).to_f64().unwrap_or(f64::NAN);
            let b = (d >> shift).to_f64().unwrap_or(f64::NAN);
            a / b
        }
    }
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

pub mod serde_rational {
    //! Serde adapters writing rationals as "p/q" strings.
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(v) => s.serialize_str(&format_rational(v)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            let text: Option<String> = Option::deserialize(d)?;
            text.map(|t| parse_rational(&t).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        let r = parse_rational("-6/8").unwrap();
        assert_eq!(r, ratio(-3, 4));
        assert_eq!(format_rational(&r), "-3/4");
        assert_eq!(format_rational(&int(5)), "5");
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
    }

    #[test]
    fn parse_rejects_zero_denominator_and_junk() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x/2").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn pow_handles_negative_exponents() {
        let h = ratio(2, 3);
        assert_eq!(h.pow_i(-2), ratio(9, 4));
        assert_eq!(h.pow_i(0), int(1));
        let generic = <Rational as Scalar>::from_int(3);
        assert_eq!(generic.pow_i(3), int(27));
    }

    #[test]
    fn decimal_approximation_survives_huge_operands() {
        let big = Rational::new(BigInt::from(3) << 3000usize, BigInt::from(2) << 3000usize);
        assert!((to_f64(&big) - 1.5).abs() < 1e-12);
    }
}
