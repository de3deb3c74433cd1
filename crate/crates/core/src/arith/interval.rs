use core::fmt;

use super::{GaussianRational, Rational};
use crate::error::{Error, Result};

/// Closed real interval with rational endpoints.
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::invalid("interval with lo > hi"));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if v < &lo {
                lo = v.clone();
            }
            if v > &hi {
                hi = v.clone();
            }
        }
        Interval { lo, hi }
    }

    pub fn scale(&self, k: &Rational) -> Interval {
        self.mul(&Interval::point(k.clone()))
    }

    pub fn square(&self) -> Interval {
        if self.contains_zero() {
            let m = self.lo.square().max(self.hi.square());
            Interval { lo: Rational::zero(), hi: m }
        } else {
            self.mul(self)
        }
    }

    pub fn recip(&self) -> Result<Interval> {
        if self.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Interval { lo: self.hi.recip()?, hi: self.lo.recip()? })
    }

    pub fn div(&self, o: &Interval) -> Result<Interval> {
        Ok(self.mul(&o.recip()?))
    }

    /// Enclosure of the square root; the interval must be nonnegative.
    pub fn sqrt(&self, bits: u32) -> Result<Interval> {
        if self.lo.is_negative() {
            return Err(Error::invalid("square root of a negative interval"));
        }
        let (lo, _) = self.lo.sqrt_bounds(bits);
        let (_, hi) = self.hi.sqrt_bounds(bits);
        Ok(Interval { lo, hi })
    }

    /// Outward rounding of both endpoints to the dyadic grid `2^-bits`.
    pub fn round(&self, bits: u32) -> Interval {
        Interval { lo: self.lo.round_dyadic(bits, false), hi: self.hi.round_dyadic(bits, true) }
    }

    pub fn hull(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.clone().min(o.lo.clone()), hi: self.hi.clone().max(o.hi.clone()) }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17}, {:.17}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

/// Closed complex box `[re_lo, re_hi] x [im_lo, im_hi]` with rational corners.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatInterval {
    pub re: Interval,
    pub im: Interval,
}

impl RatInterval {
    pub fn new(re_lo: Rational, re_hi: Rational, im_lo: Rational, im_hi: Rational) -> Result<Self> {
        Ok(RatInterval { re: Interval::new(re_lo, re_hi)?, im: Interval::new(im_lo, im_hi)? })
    }

    pub fn point(z: &GaussianRational) -> Self {
        RatInterval { re: Interval::point(z.re.clone()), im: Interval::point(z.im.clone()) }
    }

    pub fn real(x: Interval) -> Self {
        RatInterval { re: x, im: Interval::point(Rational::zero()) }
    }

    pub fn contains(&self, z: &GaussianRational) -> bool {
        self.re.contains(&z.re) && self.im.contains(&z.im)
    }

    pub fn add(&self, o: &RatInterval) -> RatInterval {
        RatInterval { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &RatInterval) -> RatInterval {
        RatInterval { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &RatInterval) -> RatInterval {
        RatInterval {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn round(&self, bits: u32) -> RatInterval {
        RatInterval { re: self.re.round(bits), im: self.im.round(bits) }
    }

    /// Upper bound on the sup-norm distance of any point in the box to `z`.
    pub fn max_dist_inf(&self, z: &GaussianRational) -> Rational {
        let d = |iv: &Interval, c: &Rational| (iv.lo() - c).abs().max((iv.hi() - c).abs());
        d(&self.re, &z.re).max(d(&self.im, &z.im))
    }
}

/// True iff the box contains 0.
pub fn interval_contains_zero(v: &RatInterval) -> bool {
    v.re.contains_zero() && v.im.contains_zero()
}
