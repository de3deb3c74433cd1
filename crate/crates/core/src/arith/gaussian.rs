use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use super::Rational;
use crate::error::{Error, Result};

/// Exact element of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(Rational::from(n))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    /// |z|^2.
    pub fn norm_sqr(&self) -> Rational {
        self.re.square() + self.im.square()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        GaussianRational { re: &self.re * k, im: &self.im * k }
    }

    pub fn recip(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = n.recip()?;
        Ok(self.conj().scale(&inv))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    /// Exact square root in Q(i), if one exists.
    pub fn sqrt_exact(&self) -> Option<Self> {
        let modulus = self.norm_sqr().sqrt_exact()?;
        let two = Rational::from(2);
        let re_sq = (&self.re + &modulus) / two.clone();
        let re = re_sq.sqrt_exact()?;
        if !re.is_zero() {
            let im = &self.im / &(&re * &two);
            return Some(GaussianRational { re, im });
        }
        let im_sq = (&modulus - &self.re) / two;
        let im = im_sq.sqrt_exact()?;
        Some(GaussianRational { re, im })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        GaussianRational::real(r)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_int(n)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_imag(s: &str) -> Result<Rational> {
    let body = s.strip_suffix('i').ok_or_else(|| Error::Parse(String::from(s)))?;
    match body {
        "" | "+" => Ok(Rational::one()),
        "-" => Ok(-Rational::one()),
        _ => {
            let body = body.strip_suffix('*').unwrap_or(body);
            body.parse()
        }
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts `p/q`, `p/q+r/si`, `p/q-r/si`, `r/si`, `i` and `-i`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse(String::from(s)));
        }
        if !t.ends_with('i') {
            return Ok(GaussianRational::real(t.parse()?));
        }
        // Split at the last sign that is not at position 0 and not after 'e'.
        let bytes = t.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if bytes[k] == b'+' || bytes[k] == b'-' {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => {
                let re: Rational = t[..k].parse()?;
                let im = parse_imag(&t[k..])?;
                Ok(GaussianRational { re, im })
            }
            None => Ok(GaussianRational { re: Rational::zero(), im: parse_imag(&t)? }),
        }
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        &self + &rhs
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        &self - &rhs
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn literal_round_trip() {
        for s in ["9/5", "0/1+1/1i", "3/2-1/4i", "-2/1+5/3i"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g("i"), GaussianRational::i());
        assert_eq!(g("-i"), -GaussianRational::i());
        assert_eq!(g("2"), GaussianRational::from_int(2));
        assert_eq!(g("1/2i"), GaussianRational::new(Rational::zero(), "1/2".parse().unwrap()));
        assert!("1/0+i".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn sqrt_in_gaussian_field() {
        assert_eq!(g("-4").sqrt_exact(), Some(g("0+2i")));
        let w = g("3/2+2i");
        assert_eq!(w.pow(2).sqrt_exact().map(|r| r.pow(2)), Some(w.pow(2)));
        assert_eq!(g("2").sqrt_exact(), None);
        assert_eq!(g("3/2").sqrt_exact(), None);
    }

    #[test]
    fn reciprocal() {
        let z = g("1+1i");
        assert_eq!(&z * &z.recip().unwrap(), GaussianRational::one());
        assert!(GaussianRational::zero().recip().is_err());
    }
}
