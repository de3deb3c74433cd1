//! Upper half-plane data for real elements: trace classification, elliptic
//! rotation centres and angles, the angle bound for `A_lambda B_2^-1`, and
//! finite-order witnesses.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::arith::transcendental::{cos_monotone, pi};
use crate::arith::{GaussianRational, Interval, RatInterval, Rational};
use crate::error::{Error, Result};
use crate::moebius::{apply_word, IntervalMatrix2, Matrix2};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsometryKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
    /// `±I`
    IdentityLike,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryClass {
    pub kind: IsometryKind,
    pub trace: Rational,
}

/// Trace trichotomy for matrices with real entries.
pub fn classify(m: &Matrix2) -> Result<IsometryClass> {
    if !m.is_real() {
        return Err(Error::invalid("classification needs real entries"));
    }
    let trace = m.trace().re;
    let abs = trace.abs();
    let kind = if m.is_plus_minus_identity() {
        IsometryKind::IdentityLike
    } else if abs < 2 {
        IsometryKind::Elliptic
    } else if abs == 2 {
        IsometryKind::Parabolic
    } else {
        IsometryKind::Hyperbolic
    };
    Ok(IsometryClass { kind, trace })
}

/// Real 2x2 matrix in floating point (row major).
pub type RealMatrix = [[f64; 2]; 2];

pub fn to_real_matrix(m: &Matrix2) -> Result<RealMatrix> {
    if !m.is_real() {
        return Err(Error::invalid("matrix has non-real entries"));
    }
    Ok([[m.m11().re.to_f64(), m.m12().re.to_f64()], [m.m21().re.to_f64(), m.m22().re.to_f64()]])
}

/// `c_lambda = A_lambda B_2^-1 = (1 - 2 lambda, lambda; -2, 1)`.
pub fn c_lambda(lambda: &GaussianRational) -> Result<Matrix2> {
    let w: Word = "a b^-1".parse()?;
    let g = crate::moebius::make_generators(lambda, &GaussianRational::from_int(2))?;
    Ok(apply_word(&w, &g.a, &g.b))
}

pub fn c_lambda_real(lambda: f64) -> RealMatrix {
    [[1.0 - 2.0 * lambda, lambda], [-2.0, 1.0]]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationData {
    pub center: Complex64,
    /// Rotation angle in `(-pi, pi]`.
    pub angle: f64,
}

fn normalize_angle(a: f64) -> f64 {
    let mut x = a % (2.0 * PI);
    if x <= -PI {
        x += 2.0 * PI;
    } else if x > PI {
        x -= 2.0 * PI;
    }
    x
}

/// Centre and angle of an elliptic element, so that [`build_rotation`]
/// reproduces it up to sign.
pub fn rotation_data(m: &RealMatrix) -> Result<RotationData> {
    let [[a, b], [c, d]] = *m;
    let tr = a + d;
    if tr.abs() >= 2.0 || c == 0.0 {
        return Err(Error::invalid("rotation data needs an elliptic element"));
    }
    // Fixed point: c z^2 + (d - a) z - b = 0, take Im > 0.
    let disc = (d - a) * (d - a) + 4.0 * b * c;
    let sq = Complex64::new(disc, 0.0).sqrt();
    let mut z = (Complex64::new(a - d, 0.0) + sq) / (2.0 * c);
    if z.im < 0.0 {
        z = (Complex64::new(a - d, 0.0) - sq) / (2.0 * c);
    }
    // M (conj z, 1)^T = e^{i alpha} (conj z, 1)^T up to sign.
    let eig = Complex64::new(c, 0.0) * z.conj() + d;
    let angle = normalize_angle(2.0 * eig.arg());
    Ok(RotationData { center: z, angle })
}

/// `(conj z, z; 1, 1) diag(e^{i alpha}, e^{-i alpha}) (conj z, z; 1, 1)^-1`.
pub fn build_rotation(z: Complex64, two_alpha: f64) -> Result<RealMatrix> {
    if z.im <= 0.0 {
        return Err(Error::invalid("rotation centre must lie in the upper half-plane"));
    }
    let alpha = two_alpha / 2.0;
    let e = Complex64::from_polar(1.0, alpha);
    let p = [[z.conj(), z], [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]];
    let det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
    let pinv = [[p[1][1] / det, -p[0][1] / det], [-p[1][0] / det, p[0][0] / det]];
    let pd = [[p[0][0] * e, p[0][1] / e], [p[1][0] * e, p[1][1] / e]];
    let mut out = [[0.0; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = (pd[i][0] * pinv[0][j] + pd[i][1] * pinv[1][j]).re;
        }
    }
    Ok(out)
}

const THETA_BITS: u32 = 64;

fn quarter(x: &Interval) -> Interval {
    x.scale(&Rational::new(1, 4).expect("nonzero"))
}

/// Sign of `2 cos^2 t - lambda` where decidable.
fn theta_sign(t: &Rational, lambda: &Rational, bits: u32) -> Option<i32> {
    let c = crate::arith::transcendental::cos_point(t, bits);
    let v = c.square().scale(&Rational::from(2)).sub(&Interval::point(lambda.clone()));
    if v.is_positive() {
        Some(1)
    } else if v.is_negative() {
        Some(-1)
    } else {
        None
    }
}

/// Enclosure of `arccos sqrt(lambda / 2)` of width at most `2^-bits`.
pub fn theta_of_lambda(lambda: &Rational, bits: u32) -> Result<Interval> {
    if !lambda.is_positive() || *lambda >= 2 {
        return Err(Error::invalid("theta needs 0 < lambda < 2"));
    }
    let half_pi = pi(bits + 8).scale(&Rational::new(1, 2)?);
    let bracket = Interval::new(Rational::zero(), half_pi.lo().clone())?;
    crate::arith::transcendental::bisect(bracket, bits, |t| theta_sign(t, lambda, bits + 16).map(|s| -s))
}

/// `theta < pi/4`, i.e. `lambda > 1`.
pub fn theta_below_quarter_pi(lambda: &Rational) -> bool {
    *lambda > 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealBoundReport {
    pub lambda: Rational,
    pub theta: Interval,
    /// `floor(1 / (4 theta))`
    pub lemma_k: u64,
    /// `floor(1 / (2 theta)) + 1`
    pub syllable_bound: u64,
    /// `theta / sqrt(2 - lambda)`
    pub rate: Interval,
    /// `cos(1/2) cos(theta) / cos(1/2 + theta)`
    pub f_value: Interval,
    pub f_below_five_quarters: bool,
}

fn certified_floor(x: &Interval) -> Option<u64> {
    let lo = x.lo().floor();
    let hi = x.hi().floor();
    if lo == hi {
        u64::try_from(lo).ok()
    } else {
        None
    }
}

/// Angle-bound report for `9/5 <= lambda < 2`.
pub fn lemma32_bound(lambda: &Rational) -> Result<RealBoundReport> {
    if *lambda < Rational::new(9, 5)? || *lambda >= 2 {
        return Err(Error::invalid("the angle bound needs 9/5 <= lambda < 2"));
    }
    let mut bits = THETA_BITS;
    loop {
        let theta = theta_of_lambda(lambda, bits)?;
        let inv = theta.recip()?;
        let k = certified_floor(&quarter(&inv));
        let s = certified_floor(&inv.scale(&Rational::new(1, 2)?));
        if let (Some(lemma_k), Some(half)) = (k, s) {
            let root = Interval::point(Rational::from(2) - lambda.clone()).sqrt(bits)?;
            let rate = theta.div(&root)?.round(bits);
            let half_r = Rational::new(1, 2)?;
            let cos_half = cos_monotone(&Interval::point(half_r.clone()), bits)?;
            let num = cos_half.mul(&cos_monotone(&theta, bits)?);
            let den = cos_monotone(&theta.add(&Interval::point(half_r)), bits)?;
            let f_value = num.div(&den)?.round(bits);
            let f_below_five_quarters = *f_value.hi() < Rational::new(5, 4)?;
            return Ok(RealBoundReport {
                lambda: lambda.clone(),
                theta,
                lemma_k,
                syllable_bound: half + 1,
                rate,
                f_value,
                f_below_five_quarters,
            });
        }
        if bits > 1024 {
            return Err(Error::Precision("floor of 1/theta is not separated".into()));
        }
        bits *= 2;
    }
}

/// `2 cos^2(pi / (2n))` as an enclosure.
pub fn sharpness_lambda(n: u32, bits: u32) -> Result<Interval> {
    let arg = pi(bits + 8).scale(&Rational::new(1, 2 * i64::from(n))?);
    Ok(cos_monotone(&arg, bits + 4)?.square().scale(&Rational::from(2)).round(bits))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteOrderReport {
    pub n: u32,
    pub lambda: Interval,
    pub relation: &'static str,
    pub relator: Word,
    pub syllables: usize,
    /// Verified by exact multiplication.
    pub exact: bool,
    /// Sup-norm bound on the distance of the power to `±I`.
    pub residual: Rational,
    pub verified: bool,
}

const ORDER_TOL: f64 = 1e-12;
const ORDER_BITS: u32 = 96;

fn residual_pm_identity(m: &IntervalMatrix2) -> Rational {
    m.distance_to_scalar_identity(1).min(m.distance_to_scalar_identity(-1))
}

fn tolerance() -> Rational {
    // 1e-12 as an exact rational
    Rational::new(1, 1_000_000_000_000i64).expect("nonzero")
}

/// The relator `(a b^-1)^{2n}` at `lambda_n = 2 cos^2(pi/(2n))`.
pub fn sharpness_witness(n: u32) -> Result<FiniteOrderReport> {
    if n < 3 {
        return Err(Error::invalid("sharpness witnesses need n >= 3"));
    }
    let relator: Word = alloc::format!("(a b^-1)^{}", 2 * n).parse()?;
    let lambda = sharpness_lambda(n, ORDER_BITS)?;
    if n == 3 {
        let exact_lambda = GaussianRational::real(Rational::new(3, 2)?);
        let m = apply_word(&relator, &c_lambda(&exact_lambda)?, &Matrix2::identity());
        let ok = m.is_plus_minus_identity();
        return Ok(FiniteOrderReport {
            n,
            lambda,
            relation: "lambda = 2 cos^2(pi/(2n))",
            syllables: relator.syllable_count(),
            relator,
            exact: true,
            residual: Rational::zero(),
            verified: ok,
        });
    }
    let one = RatInterval::point(&GaussianRational::one());
    let zero = RatInterval::point(&GaussianRational::zero());
    let a = IntervalMatrix2 { m: [one.clone(), RatInterval::real(lambda.clone()), zero.clone(), one.clone()] };
    let b_inv = IntervalMatrix2 { m: [one.clone(), zero, RatInterval::point(&GaussianRational::from_int(-2)), one] };
    let c = a.mul(&b_inv, ORDER_BITS);
    let power = c.pow(2 * n, ORDER_BITS);
    let residual = residual_pm_identity(&power);
    let verified = residual <= tolerance();
    debug_assert!(residual.to_f64() < ORDER_TOL || !verified);
    Ok(FiniteOrderReport {
        n,
        lambda,
        relation: "lambda = 2 cos^2(pi/(2n))",
        syllables: relator.syllable_count(),
        relator,
        exact: false,
        residual,
        verified,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Example15Report {
    pub n: u32,
    pub lambda: Interval,
    pub exact: bool,
    pub residual: Rational,
    pub verified: bool,
}

/// `C_lambda = (1 2; (lambda-1)/2 lambda)` at `lambda_n = 2 cos(pi/n) - 1`
/// has order `2n` up to sign.
pub fn example15_check(n: u32) -> Result<Example15Report> {
    if n < 3 {
        return Err(Error::invalid("the order check needs n >= 3"));
    }
    let arg = pi(ORDER_BITS + 8).scale(&Rational::new(1, i64::from(n))?);
    let lambda = cos_monotone(&arg, ORDER_BITS + 4)?
        .scale(&Rational::from(2))
        .sub(&Interval::point(Rational::one()))
        .round(ORDER_BITS);
    if n == 3 {
        let half = GaussianRational::real(Rational::new(-1, 2)?);
        let c = Matrix2::new(GaussianRational::one(), GaussianRational::from_int(2), half, GaussianRational::zero())?;
        let cube = c.pow(3);
        let ok = cube.neg().is_identity() && c.pow(6).is_identity();
        return Ok(Example15Report { n, lambda, exact: true, residual: Rational::zero(), verified: ok });
    }
    let half = Rational::new(1, 2)?;
    let lower = lambda.sub(&Interval::point(Rational::one())).scale(&half);
    let c = IntervalMatrix2 {
        m: [
            RatInterval::point(&GaussianRational::one()),
            RatInterval::point(&GaussianRational::from_int(2)),
            RatInterval::real(lower),
            RatInterval::real(lambda.clone()),
        ],
    };
    let power = c.pow(2 * n, ORDER_BITS);
    let residual = power.distance_to_scalar_identity(1);
    let verified = residual <= tolerance();
    Ok(Example15Report { n, lambda, exact: false, residual, verified })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn classify_examples() {
        let gens = crate::moebius::make_generators(&g("2"), &g("2")).unwrap();
        assert_eq!(classify(&gens.a).unwrap().kind, IsometryKind::Parabolic);
        let c = c_lambda(&g("3/2")).unwrap();
        let cls = classify(&c).unwrap();
        assert_eq!((cls.kind, cls.trace), (IsometryKind::Elliptic, r("-1")));
        let gens3 = crate::moebius::make_generators(&g("3"), &g("2")).unwrap();
        let m = &gens3.a * &gens3.b;
        assert_eq!(classify(&m).unwrap(), IsometryClass { kind: IsometryKind::Hyperbolic, trace: r("8") });
        assert!(classify(&Matrix2::translation(g("0+1i"))).is_err());
    }

    #[test]
    fn rotation_examples() {
        let m = build_rotation(Complex64::new(0.0, 1.0), PI).unwrap();
        assert!((m[0][0]).abs() < 1e-12 && (m[1][1]).abs() < 1e-12);
        // J up to sign
        assert!((m[0][1] + m[1][0]).abs() < 1e-12 && (m[1][0].abs() - 1.0).abs() < 1e-12);

        let id = build_rotation(Complex64::new(0.3, 2.0), 0.0).unwrap();
        assert!((id[0][0] - 1.0).abs() < 1e-12 && id[0][1].abs() < 1e-12);

        let rd = rotation_data(&c_lambda_real(1.5)).unwrap();
        let theta = PI / 6.0;
        assert!((rd.angle + 4.0 * theta).abs() < 1e-9, "{rd:?}");
        let expect = (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, 2.0 * theta)) / 2.0;
        assert!((rd.center - expect).norm() < 1e-9);
        let back = build_rotation(rd.center, rd.angle).unwrap();
        let orig = c_lambda_real(1.5);
        let same = (0..2).all(|i| (0..2).all(|j| (back[i][j] - orig[i][j]).abs() < 1e-9));
        let neg = (0..2).all(|i| (0..2).all(|j| (back[i][j] + orig[i][j]).abs() < 1e-9));
        assert!(same || neg);
        assert!(rotation_data(&[[1.0, 1.0], [0.0, 1.0]]).is_err());
    }

    #[test]
    fn theta_examples() {
        let t = theta_of_lambda(&r("9/5"), 40).unwrap();
        assert!((t.to_f64() - 0.321_750_554).abs() < 1e-8);
        assert!(t.width() <= Rational::new(1, 1i64 << 30).unwrap());
        let q = theta_of_lambda(&r("1"), 40).unwrap();
        assert!((q.to_f64() - PI / 4.0).abs() < 1e-9);
        assert!(!theta_below_quarter_pi(&r("1")));
        let t8 = theta_of_lambda(&r("170711/100000"), 40).unwrap();
        assert!((t8.to_f64() - PI / 8.0).abs() < 1e-5);
        assert!(theta_of_lambda(&r("2"), 40).is_err());
        assert!(theta_of_lambda(&r("0"), 40).is_err());
    }

    #[test]
    fn lemma32_examples() {
        let rep = lemma32_bound(&r("9/5")).unwrap();
        assert!(rep.f_below_five_quarters);
        assert!((rep.f_value.to_f64() - 1.2226).abs() < 1e-3);
        assert_eq!(lemma32_bound(&r("19/10")).unwrap().lemma_k, 1);
        assert_eq!(lemma32_bound(&r("199/100")).unwrap().syllable_bound, 8);
        assert!(lemma32_bound(&r("17/10")).is_err());
    }

    #[test]
    fn finite_order_examples() {
        let w3 = sharpness_witness(3).unwrap();
        assert!(w3.exact && w3.verified && w3.syllables == 12);
        let w4 = sharpness_witness(4).unwrap();
        assert!(!w4.exact && w4.verified, "{:?}", w4.residual);
        assert_eq!(w4.syllables, 16);
        let e3 = example15_check(3).unwrap();
        assert!(e3.exact && e3.verified);
        for n in [4, 6] {
            assert!(example15_check(n).unwrap().verified);
        }
    }
}
