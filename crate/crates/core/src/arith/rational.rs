use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Reduces `n/d`; rejects `d = 0`.
    pub fn new(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(n.into(), d)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Exact square root when `self` is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        if &(&rn * &rn) == n && &(&rd * &rd) == d {
            Some(Rational(BigRational::new(rn, rd)))
        } else {
            None
        }
    }

    /// Bounds `lo <= sqrt(self) <= hi` with denominators `2^bits * denom`.
    pub fn sqrt_bounds(&self, bits: u32) -> (Self, Self) {
        debug_assert!(!self.is_negative());
        let scale = BigInt::one() << (2 * bits as usize);
        let pq = self.numer() * self.denom() * scale;
        let s = pq.sqrt();
        let den = self.denom() << (bits as usize);
        let lo = Rational(BigRational::new(s.clone(), den.clone()));
        let hi = if &s * &s == pq {
            lo.clone()
        } else {
            Rational(BigRational::new(s + 1, den))
        };
        (lo, hi)
    }

    /// Outward rounding to a dyadic grid of `2^-bits`; `up` picks the direction.
    pub fn round_dyadic(&self, bits: u32, up: bool) -> Self {
        let scale = BigInt::one() << (bits as usize);
        let scaled = self.numer() * &scale;
        let (q, r) = scaled.div_mod_floor(self.denom());
        if r.is_zero() {
            return self.clone();
        }
        let q = if up && !r.is_zero() { q + 1 } else { q };
        Rational(BigRational::new(q, scale))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        Ok(Rational(num_traits::pow(self.0.clone(), e as usize)))
    }

    pub fn to_f64(&self) -> f64 {
        // Shift both parts down so the quotient survives f64 range limits.
        let nb = self.numer().bits() as i64;
        let db = self.denom().bits() as i64;
        let shift_n = (nb - 60).max(0);
        let shift_d = (db - 60).max(0);
        let n = bigint_to_f64(&(self.numer() >> (shift_n as usize)));
        let d = bigint_to_f64(&(self.denom() >> (shift_d as usize)));
        n / d * libm::exp2((shift_n - shift_d) as f64)
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    let (sign, digits) = n.to_u64_digits();
    let mut acc = 0.0f64;
    for d in digits.iter().rev() {
        acc = acc * 18446744073709551616.0 + *d as f64;
    }
    if sign == Sign::Minus {
        -acc
    } else {
        acc
    }
}

/// Canonical reduced fraction; rejects zero denominators.
pub fn rat_normalize(n: i64, d: i64) -> Result<Rational> {
    Rational::new(n, d)
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p/q`, `p`, and finite decimals such as `1.25`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(String::from(s));
        if s.is_empty() {
            return Err(bad());
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            return Rational::new(n, d);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let neg = int.starts_with('-');
            let int_part: BigInt = if int.is_empty() || int == "-" || int == "+" {
                BigInt::zero()
            } else {
                int.parse().map_err(|_| bad())?
            };
            let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let mag = int_part.abs() * &scale + frac_part;
            let n = if neg { -mag } else { mag };
            return Rational::new(n, scale);
        }
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(n))
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0.denom().is_one() && self.0.numer() == &BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Rational::from(*other)))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational(self.0.$m(&rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational((&self.0).$m(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;
    /// Panics on a zero divisor; use [`Rational::recip`] for a checked path.
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(rat_normalize(6, 4).unwrap().to_string(), "3/2");
        assert_eq!(rat_normalize(0, 7).unwrap().to_string(), "0/1");
        assert_eq!(rat_normalize(-9, -5).unwrap().to_string(), "9/5");
        assert_eq!(rat_normalize(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn parse_forms() {
        assert_eq!("9/5".parse::<Rational>().unwrap(), rat_normalize(9, 5).unwrap());
        assert_eq!("-3".parse::<Rational>().unwrap(), Rational::from(-3));
        assert_eq!("1.25".parse::<Rational>().unwrap(), rat_normalize(5, 4).unwrap());
        assert_eq!("-0.5".parse::<Rational>().unwrap(), rat_normalize(-1, 2).unwrap());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn sqrt_helpers() {
        let r = rat_normalize(9, 4).unwrap();
        assert_eq!(r.sqrt_exact(), Some(rat_normalize(3, 2).unwrap()));
        assert_eq!(Rational::from(2).sqrt_exact(), None);
        let (lo, hi) = Rational::from(2).sqrt_bounds(20);
        assert!(lo.square() <= 2 && hi.square() >= 2);
        assert!((hi.to_f64() - lo.to_f64()) < 1e-5);
    }

    #[test]
    fn dyadic_rounding_is_outward() {
        let third = rat_normalize(1, 3).unwrap();
        let lo = third.round_dyadic(10, false);
        let hi = third.round_dyadic(10, true);
        assert!(lo < third && third < hi);
        assert_eq!(&hi - &lo, rat_normalize(1, 1024).unwrap());
    }
}
