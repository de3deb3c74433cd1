use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::Matrix2;
use crate::arith::{GaussianRational, Rational};
use crate::error::{Error, Result};

/// A point of the Riemann sphere.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExtPoint {
    Finite(GaussianRational),
    Infinity,
}

impl ExtPoint {
    pub fn finite(z: GaussianRational) -> Self {
        ExtPoint::Finite(z)
    }

    /// `z -> -z`, with `-inf = inf`.
    pub fn negate(&self) -> ExtPoint {
        match self {
            ExtPoint::Finite(z) => ExtPoint::Finite(-z),
            ExtPoint::Infinity => ExtPoint::Infinity,
        }
    }
}

impl fmt::Debug for ExtPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtPoint::Finite(z) => write!(f, "{z}"),
            ExtPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// `(m11 z + m12) / (m21 z + m22)`; the pole maps to infinity and infinity
/// maps to `m11/m21`.
pub fn mobius_point(m: &Matrix2, z: &ExtPoint) -> ExtPoint {
    match z {
        ExtPoint::Infinity => {
            if m.m21().is_zero() {
                ExtPoint::Infinity
            } else {
                ExtPoint::Finite(m.m11().checked_div(m.m21()).expect("nonzero"))
            }
        }
        ExtPoint::Finite(z) => {
            let num = &(m.m11() * z) + m.m12();
            let den = &(m.m21() * z) + m.m22();
            if den.is_zero() {
                ExtPoint::Infinity
            } else {
                ExtPoint::Finite(num.checked_div(&den).expect("nonzero"))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Openness {
    Open,
    Closed,
}

/// Generalized disk `{z : A|z|^2 + 2 Re(conj(B) z) + C < 0}` (open) or
/// `<= 0` (closed), with `AC - |B|^2 < 0`. Infinity belongs to it iff
/// `A < 0` (open) or `A <= 0` (closed).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GenDisk {
    a: Rational,
    b: GaussianRational,
    c: Rational,
    openness: Openness,
}

impl GenDisk {
    pub fn from_hermitian(a: Rational, b: GaussianRational, c: Rational, openness: Openness) -> Result<Self> {
        let d = GenDisk { a, b, c, openness };
        if !d.det().is_negative() {
            return Err(Error::invalid("degenerate generalized disk (AC - |B|^2 >= 0)"));
        }
        Ok(d)
    }

    /// `|z - center| < radius` (or `<=`).
    pub fn disk(center: &GaussianRational, radius: &Rational, openness: Openness) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::invalid("radius must be positive"));
        }
        Self::from_hermitian(Rational::one(), -center, center.norm_sqr() - radius.square(), openness)
    }

    /// `|z - center| > radius` together with infinity (or `>=`).
    pub fn exterior(center: &GaussianRational, radius: &Rational, openness: Openness) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::invalid("radius must be positive"));
        }
        Self::from_hermitian(-Rational::one(), center.clone(), radius.square() - center.norm_sqr(), openness)
    }

    /// `Re z > t` (or `>=`).
    pub fn re_greater(t: &Rational, openness: Openness) -> Self {
        Self::from_hermitian(Rational::zero(), GaussianRational::real(Rational::new(-1, 2).unwrap()), t.clone(), openness)
            .expect("half-plane is nondegenerate")
    }

    /// `Re z < t` (or `<=`).
    pub fn re_less(t: &Rational, openness: Openness) -> Self {
        Self::from_hermitian(Rational::zero(), GaussianRational::real(Rational::new(1, 2).unwrap()), -t, openness)
            .expect("half-plane is nondegenerate")
    }

    /// `Im z > t` (or `>=`).
    pub fn im_greater(t: &Rational, openness: Openness) -> Self {
        let b = GaussianRational::new(Rational::zero(), Rational::new(-1, 2).unwrap());
        Self::from_hermitian(Rational::zero(), b, t.clone(), openness).expect("half-plane is nondegenerate")
    }

    /// `Im z < t` (or `<=`).
    pub fn im_less(t: &Rational, openness: Openness) -> Self {
        let b = GaussianRational::new(Rational::zero(), Rational::new(1, 2).unwrap());
        Self::from_hermitian(Rational::zero(), b, -t, openness).expect("half-plane is nondegenerate")
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }
    pub fn b(&self) -> &GaussianRational {
        &self.b
    }
    pub fn c(&self) -> &Rational {
        &self.c
    }
    pub fn openness(&self) -> Openness {
        self.openness
    }
    pub fn is_closed(&self) -> bool {
        self.openness == Openness::Closed
    }

    /// `AC - |B|^2`.
    pub fn det(&self) -> Rational {
        &self.a * &self.c - self.b.norm_sqr()
    }

    /// Value of the form at a finite point.
    pub fn form_at(&self, z: &GaussianRational) -> Rational {
        // 2 Re(conj(B) z) = 2 (B.re z.re + B.im z.im)
        let lin = &self.b.re * &z.re + &self.b.im * &z.im;
        &self.a * &z.norm_sqr() + Rational::from(2) * lin + self.c.clone()
    }

    pub fn contains(&self, p: &ExtPoint) -> bool {
        let v = match p {
            ExtPoint::Infinity => self.a.clone(),
            ExtPoint::Finite(z) => self.form_at(z),
        };
        match self.openness {
            Openness::Open => v.is_negative(),
            Openness::Closed => !v.is_positive(),
        }
    }

    pub fn contains_infinity(&self) -> bool {
        self.contains(&ExtPoint::Infinity)
    }

    pub fn with_openness(&self, openness: Openness) -> GenDisk {
        GenDisk { openness, ..self.clone() }
    }

    pub fn closure(&self) -> GenDisk {
        self.with_openness(Openness::Closed)
    }

    pub fn interior(&self) -> GenDisk {
        self.with_openness(Openness::Open)
    }

    /// Set complement: the opposite side of the same circle.
    pub fn complement(&self) -> GenDisk {
        let openness = match self.openness {
            Openness::Open => Openness::Closed,
            Openness::Closed => Openness::Open,
        };
        GenDisk { a: -&self.a, b: -&self.b, c: -&self.c, openness }
    }

    /// Image under `z -> -z`.
    pub fn negate(&self) -> GenDisk {
        GenDisk { b: -&self.b, ..self.clone() }
    }

    /// Image under the Moebius map `m`: the form transforms as
    /// `H -> (M^-1)^* H M^-1`.
    pub fn image(&self, m: &Matrix2) -> GenDisk {
        let inv = m.inverse();
        let [p, q, r, s] = inv.entries();
        // H = [[A, B], [conj B, C]], N = M^-1 = [[p, q], [r, s]]
        // H' = N^* H N
        let a = GaussianRational::real(self.a.clone());
        let c = GaussianRational::real(self.c.clone());
        let b = &self.b;
        let bc = b.conj();
        // columns of H N
        let hn11 = &(&a * p) + &(b * r);
        let hn12 = &(&a * q) + &(b * s);
        let hn21 = &(&bc * p) + &(&c * r);
        let hn22 = &(&bc * q) + &(&c * s);
        let new_a = &(&p.conj() * &hn11) + &(&r.conj() * &hn21);
        let new_b = &(&p.conj() * &hn12) + &(&r.conj() * &hn22);
        let new_c = &(&q.conj() * &hn12) + &(&s.conj() * &hn22);
        debug_assert!(new_a.is_real() && new_c.is_real());
        GenDisk { a: new_a.re, b: new_b, c: new_c.re, openness: self.openness }
    }

    /// Canonical positive multiple of the form, for set equality.
    pub fn normalized(&self) -> GenDisk {
        let pivot = [&self.a, &self.b.re, &self.b.im, &self.c]
            .into_iter()
            .find(|v| !v.is_zero())
            .expect("nondegenerate form is nonzero")
            .abs();
        let k = pivot.recip().expect("nonzero");
        GenDisk { a: &self.a * &k, b: self.b.scale(&k), c: &self.c * &k, openness: self.openness }
    }

    /// Equal as point sets.
    pub fn same_set(&self, other: &GenDisk) -> bool {
        self.normalized() == other.normalized()
    }

    /// Center and squared radius for a bounded or co-bounded circle
    /// (`A != 0`).
    pub fn center_radius_sq(&self) -> Option<(GaussianRational, Rational)> {
        if self.a.is_zero() {
            return None;
        }
        let inv = self.a.recip().ok()?;
        let center = -&self.b.scale(&inv);
        let r2 = -(self.det() * inv.square());
        Some((center, r2))
    }
}

impl fmt::Debug for GenDisk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.is_closed() { "<=" } else { "<" };
        write!(f, "{{{}|z|^2 + 2Re(conj({}) z) + {} {rel} 0}}", self.a, self.b, self.c)
    }
}

/// Finite union of generalized disks of one openness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    members: Vec<GenDisk>,
    label: String,
}

impl Region {
    pub fn new(label: impl Into<String>, members: Vec<GenDisk>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::invalid("region needs at least one member"));
        };
        if members.iter().any(|m| m.openness() != first.openness()) {
            return Err(Error::invalid("region members must share openness"));
        }
        Ok(Region { members, label: label.into() })
    }

    pub fn single(label: impl Into<String>, d: GenDisk) -> Self {
        Region { members: alloc::vec![d], label: label.into() }
    }

    pub fn members(&self) -> &[GenDisk] {
        &self.members
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn openness(&self) -> Openness {
        self.members[0].openness()
    }

    pub fn with_label(&self, label: impl Into<String>) -> Region {
        Region { members: self.members.clone(), label: label.into() }
    }

    pub fn contains(&self, p: &ExtPoint) -> bool {
        self.members.iter().any(|m| m.contains(p))
    }

    pub fn map_members(&self, f: impl Fn(&GenDisk) -> GenDisk) -> Region {
        Region { members: self.members.iter().map(f).collect(), label: self.label.clone() }
    }

    pub fn image(&self, m: &Matrix2) -> Region {
        self.map_members(|d| d.image(m))
    }

    pub fn closure(&self) -> Region {
        self.map_members(GenDisk::closure)
    }
}

pub fn mobius_disk(m: &Matrix2, d: &GenDisk) -> GenDisk {
    d.image(m)
}

/// Image under `z -> -z`.
pub fn negate_region(u: &Region) -> Region {
    u.map_members(GenDisk::negate)
}

pub fn negate_point(z: &ExtPoint) -> ExtPoint {
    z.negate()
}

/// True iff `-U = U`, decided member-wise: negation permutes the members.
pub fn region_symmetric_about_origin(u: &Region) -> bool {
    let mut pool: Vec<GenDisk> = u.members.iter().map(GenDisk::normalized).collect();
    for m in &u.members {
        let neg = m.negate().normalized();
        match pool.iter().position(|p| *p == neg) {
            Some(k) => {
                pool.swap_remove(k);
            }
            None => return false,
        }
    }
    true
}

/// Image of a region under `J: z -> -1/z`.
pub fn conjugate_region_by_j(u: &Region) -> Region {
    u.image(&Matrix2::j())
}

/// `J M J^-1`.
pub fn conjugate_matrix_by_j(m: &Matrix2) -> Matrix2 {
    m.conjugate_by(&Matrix2::j())
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

    fn fin(s: &str) -> ExtPoint {
        ExtPoint::Finite(g(s))
    }

    #[test]
    fn mobius_point_examples() {
        let a2 = Matrix2::translation(g("2"));
        assert_eq!(mobius_point(&a2, &fin("0")), fin("2"));
        let b2 = Matrix2::lower(g("2"));
        assert_eq!(mobius_point(&b2, &ExtPoint::Infinity), fin("1/2"));
        assert_eq!(mobius_point(&b2, &fin("-1/2")), ExtPoint::Infinity);
        assert_eq!(mobius_point(&a2, &ExtPoint::Infinity), ExtPoint::Infinity);
    }

    #[test]
    fn disk_encodings() {
        let x1 = GenDisk::disk(&g("0"), &r("1"), Openness::Open).unwrap();
        assert!(x1.contains(&fin("1/2")) && !x1.contains(&fin("1")) && !x1.contains_infinity());
        let x2 = GenDisk::exterior(&g("0"), &r("1"), Openness::Open).unwrap();
        assert!(x2.contains_infinity() && x2.contains(&fin("2")) && !x2.contains(&fin("1")));
        let h = GenDisk::re_greater(&r("1"), Openness::Open);
        assert!(h.contains(&fin("3/2+7i")) && !h.contains(&fin("1")) && !h.contains_infinity());
        let h = GenDisk::im_less(&r("-1/2"), Openness::Closed);
        assert!(h.contains(&fin("5-1/2i")) && h.contains_infinity() && !h.contains(&fin("0")));
        assert!(GenDisk::from_hermitian(r("1"), g("0"), r("1"), Openness::Open).is_err());
    }

    #[test]
    fn mobius_disk_examples() {
        let b2 = Matrix2::lower(g("2"));
        let x2 = GenDisk::exterior(&g("0"), &r("1"), Openness::Open).unwrap();
        let img = mobius_disk(&b2, &x2);
        let expect = GenDisk::disk(&g("2/3"), &r("1/3"), Openness::Open).unwrap();
        assert!(img.same_set(&expect));

        assert_eq!(mobius_disk(&Matrix2::identity(), &x2), x2);

        let x1 = GenDisk::disk(&g("0"), &r("1"), Openness::Open).unwrap();
        let a2 = Matrix2::translation(g("2"));
        let expect = GenDisk::disk(&g("2"), &r("1"), Openness::Open).unwrap();
        assert!(mobius_disk(&a2, &x1).same_set(&expect));
    }

    #[test]
    fn negation_examples() {
        let d = GenDisk::disk(&g("2/3"), &r("1/3"), Openness::Open).unwrap();
        let e = GenDisk::disk(&g("-2/3"), &r("1/3"), Openness::Open).unwrap();
        assert!(d.negate().same_set(&e));
        assert_eq!(negate_point(&ExtPoint::Infinity), ExtPoint::Infinity);
        let x1 = GenDisk::disk(&g("0"), &r("1"), Openness::Open).unwrap();
        assert!(x1.negate().same_set(&x1));
    }

    fn three_balls() -> Region {
        Region::new(
            "X1",
            ["0+1i", "0", "0-1i"]
                .iter()
                .map(|c| GenDisk::disk(&g(c), &r("1"), Openness::Open).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn symmetry_examples() {
        let x1 = Region::single("X1", GenDisk::disk(&g("0"), &r("1"), Openness::Open).unwrap());
        assert!(region_symmetric_about_origin(&x1));
        let off = Region::single("D", GenDisk::disk(&g("2"), &r("1"), Openness::Open).unwrap());
        assert!(!region_symmetric_about_origin(&off));
        assert!(region_symmetric_about_origin(&three_balls()));
    }

    #[test]
    fn j_conjugation_examples() {
        let b_inv = Matrix2::lower(g("0+1i")).inverse();
        assert_eq!(conjugate_matrix_by_j(&b_inv), Matrix2::translation(g("0+1i")));

        let image = conjugate_region_by_j(&three_balls());
        let expect = [
            GenDisk::im_greater(&r("1/2"), Openness::Open),
            GenDisk::exterior(&g("0"), &r("1"), Openness::Open).unwrap(),
            GenDisk::im_less(&r("-1/2"), Openness::Open),
        ];
        for (got, want) in image.members().iter().zip(expect.iter()) {
            assert!(got.same_set(want), "{got:?} vs {want:?}");
        }

        let j2 = &Matrix2::j() * &Matrix2::j();
        let x = three_balls();
        for (m, orig) in x.image(&j2).members().iter().zip(x.members()) {
            assert!(m.same_set(orig));
        }
    }
}
