use core::fmt;
use core::ops::Mul;

use crate::arith::{GaussianRational, RatInterval, Rational};
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// 2x2 matrix over Q(i) with determinant exactly 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    m: [GaussianRational; 4],
}

impl Matrix2 {
    pub fn new(
        m11: GaussianRational,
        m12: GaussianRational,
        m21: GaussianRational,
        m22: GaussianRational,
    ) -> Result<Self> {
        let out = Matrix2 { m: [m11, m12, m21, m22] };
        if out.det() != GaussianRational::one() {
            return Err(Error::invalid("matrix determinant is not 1"));
        }
        Ok(out)
    }

    pub(crate) fn raw(m11: GaussianRational, m12: GaussianRational, m21: GaussianRational, m22: GaussianRational) -> Self {
        Matrix2 { m: [m11, m12, m21, m22] }
    }

    pub fn identity() -> Self {
        Self::raw(GaussianRational::one(), GaussianRational::zero(), GaussianRational::zero(), GaussianRational::one())
    }

    /// `z -> z + t`.
    pub fn translation(t: GaussianRational) -> Self {
        Self::raw(GaussianRational::one(), t, GaussianRational::zero(), GaussianRational::one())
    }

    /// `(1 0; t 1)`.
    pub fn lower(t: GaussianRational) -> Self {
        Self::raw(GaussianRational::one(), GaussianRational::zero(), t, GaussianRational::one())
    }

    /// `J = (0 -1; 1 0)`, acting as `z -> -1/z`.
    pub fn j() -> Self {
        Self::raw(GaussianRational::zero(), GaussianRational::from_int(-1), GaussianRational::one(), GaussianRational::zero())
    }

    /// `diag(z, 1/z)`.
    pub fn diagonal(z: &GaussianRational) -> Result<Self> {
        Ok(Self::raw(z.clone(), GaussianRational::zero(), GaussianRational::zero(), z.recip()?))
    }

    pub fn m11(&self) -> &GaussianRational {
        &self.m[0]
    }
    pub fn m12(&self) -> &GaussianRational {
        &self.m[1]
    }
    pub fn m21(&self) -> &GaussianRational {
        &self.m[2]
    }
    pub fn m22(&self) -> &GaussianRational {
        &self.m[3]
    }

    pub fn det(&self) -> GaussianRational {
        &(&self.m[0] * &self.m[3]) - &(&self.m[1] * &self.m[2])
    }

    pub fn trace(&self) -> GaussianRational {
        &self.m[0] + &self.m[3]
    }

    /// Inverse via the adjugate (determinant is 1).
    pub fn inverse(&self) -> Matrix2 {
        Self::raw(self.m[3].clone(), -&self.m[1], -&self.m[2], self.m[0].clone())
    }

    pub fn neg(&self) -> Matrix2 {
        Self::raw(-&self.m[0], -&self.m[1], -&self.m[2], -&self.m[3])
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix2::identity()
    }

    /// `M = ±I`.
    pub fn is_plus_minus_identity(&self) -> bool {
        self.is_identity() || self.neg().is_identity()
    }

    pub fn is_real(&self) -> bool {
        self.m.iter().all(GaussianRational::is_real)
    }

    pub fn pow(&self, n: i64) -> Matrix2 {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        // Unipotent powers have a closed form.
        let one = GaussianRational::one();
        let zero = GaussianRational::zero();
        let k = GaussianRational::from_int(n.abs());
        if base.m[0] == one && base.m[3] == one {
            if base.m[2] == zero {
                return Matrix2::translation(&base.m[1] * &k);
            }
            if base.m[1] == zero {
                return Matrix2::lower(&base.m[2] * &k);
            }
        }
        let mut acc = Matrix2::identity();
        let mut sq = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        acc
    }

    pub fn conjugate_by(&self, g: &Matrix2) -> Matrix2 {
        &(g * self) * &g.inverse()
    }

    pub fn entries(&self) -> &[GaussianRational; 4] {
        &self.m
    }
}

impl Mul<&Matrix2> for &Matrix2 {
    type Output = Matrix2;
    fn mul(self, o: &Matrix2) -> Matrix2 {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &o.m;
        Matrix2::raw(&(a * e) + &(b * g), &(a * f) + &(b * h), &(c * e) + &(d * g), &(c * f) + &(d * h))
    }
}

impl fmt::Debug for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.m[0], self.m[1], self.m[2], self.m[3])
    }
}

/// The pair `(A_lambda, B_mu)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    pub a: Matrix2,
    pub b: Matrix2,
}

impl Generators {
    pub fn matrix(&self, letter: Letter) -> &Matrix2 {
        match letter {
            Letter::A => &self.a,
            Letter::B => &self.b,
        }
    }
}

/// `A_lambda = (1 lambda; 0 1)` and `B_mu = (1 0; mu 1)`.
pub fn make_generators(lambda: &GaussianRational, mu: &GaussianRational) -> Result<Generators> {
    if lambda.is_zero() || mu.is_zero() {
        return Err(Error::invalid("generator parameters must be nonzero"));
    }
    Ok(Generators { a: Matrix2::translation(lambda.clone()), b: Matrix2::lower(mu.clone()) })
}

/// Evaluates the word as a matrix product, one power per syllable.
pub fn apply_word(w: &Word, a: &Matrix2, b: &Matrix2) -> Matrix2 {
    w.syllables().iter().fold(Matrix2::identity(), |acc, s| {
        let g = match s.letter {
            Letter::A => a,
            Letter::B => b,
        };
        &acc * &g.pow(s.exp)
    })
}

/// Matrix with complex-box entries, used for irrational parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalMatrix2 {
    pub m: [RatInterval; 4],
}

impl IntervalMatrix2 {
    pub fn from_exact(m: &Matrix2) -> Self {
        IntervalMatrix2 { m: m.m.clone().map(|e| RatInterval::point(&e)) }
    }

    pub fn identity() -> Self {
        Self::from_exact(&Matrix2::identity())
    }

    pub fn mul(&self, o: &IntervalMatrix2, bits: u32) -> IntervalMatrix2 {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &o.m;
        IntervalMatrix2 {
            m: [
                a.mul(e).add(&b.mul(g)).round(bits),
                a.mul(f).add(&b.mul(h)).round(bits),
                c.mul(e).add(&d.mul(g)).round(bits),
                c.mul(f).add(&d.mul(h)).round(bits),
            ],
        }
    }

    pub fn pow(&self, n: u32, bits: u32) -> IntervalMatrix2 {
        (0..n).fold(IntervalMatrix2::identity(), |acc, _| acc.mul(self, bits))
    }

    pub fn det(&self) -> RatInterval {
        self.m[0].mul(&self.m[3]).sub(&self.m[1].mul(&self.m[2]))
    }

    pub fn trace(&self) -> RatInterval {
        self.m[0].add(&self.m[3])
    }

    /// Sup-norm distance bound to `sign * I`.
    pub fn distance_to_scalar_identity(&self, sign: i64) -> Rational {
        let s = GaussianRational::from_int(sign);
        let z = GaussianRational::zero();
        [self.m[0].max_dist_inf(&s), self.m[1].max_dist_inf(&z), self.m[2].max_dist_inf(&z), self.m[3].max_dist_inf(&s)]
            .into_iter()
            .fold(Rational::zero(), Rational::max)
    }

    /// True when every entry box excludes the corresponding entry of `sign*I`.
    pub fn excludes_scalar_identity(&self, sign: i64) -> bool {
        let s = GaussianRational::from_int(sign);
        let z = GaussianRational::zero();
        !self.m[0].contains(&s) || !self.m[1].contains(&z) || !self.m[2].contains(&z) || !self.m[3].contains(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn generators() {
        let gens = make_generators(&g("2"), &g("2")).unwrap();
        assert_eq!(gens.a.det(), GaussianRational::one());
        assert_eq!(gens.a.m12(), &g("2"));
        assert_eq!(gens.b.m21(), &g("2"));
        let gens = make_generators(&g("9/5"), &g("2")).unwrap();
        assert_eq!(gens.a.m12(), &g("9/5"));
        assert!(make_generators(&g("0"), &g("2")).is_err());
        assert!(make_generators(&g("1"), &g("0")).is_err());
    }

    #[test]
    fn apply_word_examples() {
        let gens = make_generators(&g("2"), &g("2")).unwrap();
        assert_eq!(apply_word(&w("a"), &gens.a, &gens.b), gens.a);

        let gens = make_generators(&g("3/2"), &g("2")).unwrap();
        let m = apply_word(&w("a b^-1"), &gens.a, &gens.b);
        assert_eq!(m, Matrix2::new(g("-2"), g("3/2"), g("-2"), g("1")).unwrap());
        let m3 = apply_word(&w("(a b^-1)^3"), &gens.a, &gens.b);
        assert!(m3.is_identity());
    }

    #[test]
    fn unipotent_power_closed_form_matches_repeated_product() {
        let gens = make_generators(&g("3/7+1/2i"), &g("-5/3")).unwrap();
        for n in [-7i64, -1, 1, 2, 9] {
            let mut direct = Matrix2::identity();
            let step = if n < 0 { gens.b.inverse() } else { gens.b.clone() };
            for _ in 0..n.abs() {
                direct = &direct * &step;
            }
            assert_eq!(gens.b.pow(n), direct);
        }
        let m = &gens.a * &gens.b;
        assert_eq!(m.pow(3), &(&m * &m) * &m);
        assert_eq!(&m.pow(-2) * &m.pow(2), Matrix2::identity());
    }

    #[test]
    fn rejects_bad_determinant() {
        assert!(Matrix2::new(g("1"), g("1"), g("1"), g("1")).is_err());
    }
}
