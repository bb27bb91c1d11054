//! Scalar fields for the linear algebra layer.
//!
//! Everything representation-theoretic is generic over [`Field`]. Two
//! families are provided: the rationals (`BigRational`, the working field)
//! and prime fields `Fp<P>` (used only when counting points over `F_q`).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact field.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(v: i64) -> Self;

    /// Reduce a rational into the field; `None` when the denominator is not
    /// invertible (only possible in positive characteristic).
    fn from_rational(q: &BigRational) -> Option<Self>;

    /// Field characteristic (0 for the rationals).
    fn characteristic() -> u64;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }

    fn characteristic() -> u64 {
        0
    }
}

/// Element of the prime field `F_P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(&self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::<P>(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(o.0 != 0, "division by zero in F_{}", P);
        self * o.pow(P - 2)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        let p = BigInt::from(P);
        let num = q.numer().mod_floor(&p).to_u64()?;
        let den = q.denom().mod_floor(&p).to_u64()?;
        if den == 0 {
            return None;
        }
        Some(Fp(num) / Fp(den))
    }

    fn characteristic() -> u64 {
        P
    }
}

/// Parse `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Format a rational as `"p"` or `"p/q"`.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Integer value of a rational, if it has denominator one.
pub fn rational_to_integer(q: &BigRational) -> Option<BigInt> {
    if q.denom().is_one() || q.denom().abs().is_one() {
        Some(q.to_integer())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn prime_field_arithmetic() {
        let a = F7::new(3);
        let b = F7::new(5);
        assert_eq!((a + b).value(), 1);
        assert_eq!((a - b).value(), 5);
        assert_eq!((a * b).value(), 1);
        assert_eq!((a / b * b), a);
        assert_eq!((-a).value(), 4);
        assert_eq!(F7::new(-1).value(), 6);
    }

    #[test]
    fn rational_reduction_mod_p() {
        let half = parse_rational("1/2").unwrap();
        assert_eq!(F7::from_rational(&half).unwrap().value(), 4);
        let seventh = parse_rational("1/7").unwrap();
        assert!(F7::from_rational(&seventh).is_none());
        let neg = parse_rational("-3").unwrap();
        assert_eq!(F7::from_rational(&neg).unwrap().value(), 4);
    }

    #[test]
    fn rational_text_roundtrip() {
        for s in ["0", "-4", "3/5", "-7/2"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(format_rational(&q), s);
        }
        assert!(parse_rational("1/0").is_none());
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
    }
}
