//! Scalar abstraction for spectra, energies and the closed-form formulas.
//!
//! Every quantity in this crate is first derived exactly (integers and
//! rationals over arbitrary precision) and then converted into the caller's
//! scalar type. [`BigRational`] is the verification scalar; `f64`/`f32` are
//! provided for quick numeric inspection only and carry rounding error.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// A signed field-like scalar that can represent exact rationals (possibly
/// approximately).
pub trait Scalar: Clone + Debug + PartialOrd + Signed + FromPrimitive {
    fn from_bigint(v: &BigInt) -> Self;

    fn from_rational(r: &BigRational) -> Self {
        Self::from_bigint(r.numer()) / Self::from_bigint(r.denom())
    }

    /// `true` when the value is an integer. Approximate scalars answer
    /// with their own notion of integrality.
    fn is_integral(&self) -> bool;
}

impl Scalar for BigRational {
    fn from_bigint(v: &BigInt) -> Self {
        Ratio::from_integer(v.clone())
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

impl Scalar for f64 {
    fn from_bigint(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }

    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn is_integral(&self) -> bool {
        self.fract() == 0.0
    }
}

impl Scalar for f32 {
    fn from_bigint(v: &BigInt) -> Self {
        v.to_f32().unwrap_or(f32::NAN)
    }

    fn from_rational(r: &BigRational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }

    fn is_integral(&self) -> bool {
        self.fract() == 0.0
    }
}

/// Integer power of an integer base as an exact rational; negative exponents
/// give the reciprocal.
pub(crate) fn rational_pow(base: u64, exp: i64) -> BigRational {
    let b = BigInt::from(base);
    let mag = num_traits::pow(b, exp.unsigned_abs() as usize);
    if exp >= 0 {
        Ratio::from_integer(mag)
    } else {
        Ratio::new(BigInt::from(1), mag)
    }
}

/// Renders an exact rational as `numerator/denominator`, always with an
/// explicit denominator.
pub fn fraction_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the `numerator/denominator` form produced by [`fraction_string`].
/// A bare integer is accepted as well.
pub fn parse_fraction(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(Ratio::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Ratio::from_integer),
    }
}
