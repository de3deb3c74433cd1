//! Rational-endpoint enclosures of `pi`, `cos`, `sin` and `arccos`-style
//! inversions. Every result is a rigorous enclosure; the `bits` argument
//! controls the target width (roughly `2^-bits`).

use num_bigint::BigInt;
use num_traits::One;

use super::{Interval, Rational};
use crate::error::{Error, Result};

fn tol(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << (bits as usize)).expect("nonzero")
}

/// `atan(1/m)` for an integer `m >= 2` by its alternating series.
fn atan_inv(m: i64, bits: u32) -> Interval {
    let eps = tol(bits + 4);
    let m_r = Rational::from(m);
    let m_sq = m_r.square();
    let mut power = m_r.recip().expect("m >= 2");
    let mut sum = Rational::zero();
    let mut k: i64 = 0;
    loop {
        let term = &power / &Rational::from(2 * k + 1);
        if term < eps {
            // Alternating with decreasing terms: the tail is bounded by `term`.
            let lo = &sum - &term;
            let hi = &sum + &term;
            return Interval::new(lo.min(sum.clone()), hi.max(sum)).expect("ordered").round(bits + 2);
        }
        if k % 2 == 0 {
            sum = sum + term;
        } else {
            sum = sum - term;
        }
        power = &power / &m_sq;
        k += 1;
    }
}

/// Enclosure of `pi` (Machin's formula).
pub fn pi(bits: u32) -> Interval {
    let a = atan_inv(5, bits + 6).scale(&Rational::from(16));
    let b = atan_inv(239, bits + 6).scale(&Rational::from(4));
    a.sub(&b).round(bits + 2)
}

/// Taylor enclosure of `cos x` or `sin x` at a rational point.
fn trig_point(x: &Rational, bits: u32, sine: bool) -> Interval {
    let eps = tol(bits + 4);
    let x_sq = x.square();
    let mut term = if sine { x.clone() } else { Rational::one() };
    let mut n: i64 = if sine { 1 } else { 0 };
    let mut sum = Rational::zero();
    let mut sign_pos = true;
    loop {
        // Lagrange remainder after this partial sum is bounded by |x|^n/n!,
        // i.e. the magnitude of the next term, for every n.
        if term.abs() < eps {
            let r = term.abs();
            let iv = Interval::new(&sum - &r, &sum + &r).expect("ordered");
            return iv.round(bits + 2);
        }
        if sign_pos {
            sum = sum + &term;
        } else {
            sum = sum - &term;
        }
        sign_pos = !sign_pos;
        term = &(&term * &x_sq) / &Rational::from((n + 1) * (n + 2));
        n += 2;
    }
}

pub fn cos_point(x: &Rational, bits: u32) -> Interval {
    clamp_unit(trig_point(x, bits, false))
}

pub fn sin_point(x: &Rational, bits: u32) -> Interval {
    clamp_unit(trig_point(x, bits, true))
}

fn clamp_unit(iv: Interval) -> Interval {
    let one = Rational::one();
    let lo = iv.lo().clone().max(-&one);
    let hi = iv.hi().clone().min(one);
    Interval::new(lo, hi).expect("ordered")
}

/// Enclosure of `cos` over an interval contained in `[0, pi]`, where cos is
/// decreasing.
pub fn cos_monotone(x: &Interval, bits: u32) -> Result<Interval> {
    let p = pi(bits + 8);
    if x.lo().is_negative() || x.hi() > p.lo() {
        return Err(Error::invalid("cos_monotone needs an argument inside [0, pi]"));
    }
    let hi = cos_point(x.lo(), bits);
    let lo = cos_point(x.hi(), bits);
    Interval::new(lo.lo().clone(), hi.hi().clone())
}

/// Enclosure of `sin` over an interval contained in `[-pi/2, pi/2]`.
pub fn sin_monotone(x: &Interval, bits: u32) -> Result<Interval> {
    let half_pi = pi(bits + 8).scale(&Rational::new(1, 2)?);
    if x.lo() < &-half_pi.lo() || x.hi() > half_pi.lo() {
        return Err(Error::invalid("sin_monotone needs an argument inside [-pi/2, pi/2]"));
    }
    let lo = sin_point(x.lo(), bits);
    let hi = sin_point(x.hi(), bits);
    Interval::new(lo.lo().clone(), hi.hi().clone())
}

/// Encloses the unique root in `bracket` of a strictly monotone function
/// given by a point enclosure oracle `sign_of(t)` returning the certified
/// sign of `f(t)` (or `None` when undecided at the working precision).
pub(crate) fn bisect<F>(bracket: Interval, width_bits: u32, mut sign_of: F) -> Result<Interval>
where
    F: FnMut(&Rational) -> Option<i32>,
{
    let target = tol(width_bits);
    let mut lo = bracket.lo().clone();
    let mut hi = bracket.hi().clone();
    let s_lo = sign_of(&lo).ok_or_else(|| Error::Precision("bracket endpoint undecided".into()))?;
    let s_hi = sign_of(&hi).ok_or_else(|| Error::Precision("bracket endpoint undecided".into()))?;
    if s_lo == 0 {
        return Ok(Interval::point(lo));
    }
    if s_hi == 0 {
        return Ok(Interval::point(hi));
    }
    if s_lo == s_hi {
        return Err(Error::invalid("bracket does not straddle a root"));
    }
    let two = Rational::from(2);
    while &hi - &lo > target {
        let mid = (&lo + &hi) / two.clone();
        match sign_of(&mid) {
            Some(0) => return Ok(Interval::point(mid)),
            Some(s) if s == s_lo => lo = mid,
            Some(_) => hi = mid,
            None => {
                // Cannot separate at this precision; the root is within the
                // undecided neighbourhood of `mid`, keep the current bracket.
                break;
            }
        }
    }
    Interval::new(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let p = pi(80);
        assert!(p.contains(&"3.14159265358979323846".parse().unwrap()) || p.width() < tol(70));
        assert!((p.to_f64() - core::f64::consts::PI).abs() < 1e-15);
        assert!(p.width() < tol(78));
    }

    #[test]
    fn cos_sin_small() {
        let half: Rational = "1/2".parse().unwrap();
        let c = cos_point(&half, 60);
        assert!((c.to_f64() - libm::cos(0.5)).abs() < 1e-15);
        let s = sin_point(&half, 60);
        assert!((s.to_f64() - libm::sin(0.5)).abs() < 1e-15);
        assert!(c.width() < tol(55));
    }

    #[test]
    fn cos_monotone_rejects_outside() {
        let iv = Interval::new(Rational::from(-1), Rational::from(1)).unwrap();
        assert!(cos_monotone(&iv, 40).is_err());
    }
}
