//! Coefficient fields for the algebra kernel.
//!
//! Everything in this crate is exact. The kernel is generic over any type
//! implementing [`Coefficient`]; the crate root fixes the default to
//! arbitrary-precision rationals.

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed};

/// An exact field of characteristic zero.
pub trait Coefficient:
    Clone + Debug + Display + FromStr + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_i64(value: i64) -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_i64(numer) / Self::from_i64(denom)
    }

    fn is_negative(&self) -> bool;

    fn abs_value(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// `true` when the value has denominator one.
    fn is_integral(&self) -> bool;
}

impl Coefficient for BigRational {
    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

/// Machine-word rationals. Overflow panics, so this is only suitable for
/// small computations.
impl Coefficient for Ratio<i64> {
    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(value)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

/// `n!` as a coefficient.
pub fn factorial<C: Coefficient>(n: u32) -> C {
    (1..=n as i64).fold(C::one(), |acc, k| acc * C::from_i64(k))
}

/// `base^exp` for a small integer base.
pub fn int_pow<C: Coefficient>(base: i64, exp: u32) -> C {
    (0..exp).fold(C::one(), |acc, _| acc * C::from_i64(base))
}

/// Binomial coefficient as a plain integer; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_powers() {
        assert_eq!(factorial::<BigRational>(5), BigRational::from_i64(120));
        assert_eq!(int_pow::<BigRational>(-8, 3), BigRational::from_i64(-512));
        assert_eq!(factorial::<Ratio<i64>>(0), Ratio::from_integer(1));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(4, -1), 0);
        assert_eq!(binomial(16, 8), 12870);
    }

    #[test]
    fn rational_parse_is_reduced() {
        let q: BigRational = "6/4".parse().unwrap();
        assert_eq!(q.to_string(), "3/2");
        assert!(BigRational::from_ratio(4, 2).is_integral());
    }
}
