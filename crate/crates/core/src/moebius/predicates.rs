//! Exact containment and emptiness tests for generalized disks.
//!
//! Emptiness of a finite intersection of closed generalized disks is decided
//! on a finite candidate set: infinity, one point on each boundary circle, and
//! all pairwise boundary intersections. If the intersection is nonempty it
//! contains one of these. Candidates have coordinates in `Q(sqrt d)`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use super::{GenDisk, Openness, Region};
use crate::arith::Rational;
use crate::error::{Error, Result};

/// How signs of `u + v sqrt(d)` are decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SignPolicy {
    /// Try a rational enclosure of `sqrt(d)` first, then fall back to the
    /// exact comparison.
    #[default]
    Filtered,
    /// Always use the exact comparison.
    ExactOnly,
}

const FILTER_BITS: u32 = 64;

/// `(x0 + x1 sqrt d, y0 + y1 sqrt d)` with `d >= 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadPoint {
    pub x0: Rational,
    pub x1: Rational,
    pub y0: Rational,
    pub y1: Rational,
    pub d: Rational,
}

impl QuadPoint {
    pub fn rational(x: Rational, y: Rational) -> Self {
        QuadPoint { x0: x, x1: Rational::zero(), y0: y, y1: Rational::zero(), d: Rational::zero() }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let s = libm::sqrt(self.d.to_f64());
        (self.x0.to_f64() + self.x1.to_f64() * s, self.y0.to_f64() + self.y1.to_f64() * s)
    }
}

impl fmt::Debug for QuadPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {} r, {} + {} r; r^2 = {})", self.x0, self.x1, self.y0, self.y1, self.d)
    }
}

/// A point of the sphere with quadratic-irrational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Candidate {
    Infinity,
    Point(QuadPoint),
}

/// Exact sign of `u + v sqrt(d)`.
pub fn sign_quadratic(u: &Rational, v: &Rational, d: &Rational, policy: SignPolicy) -> i32 {
    if v.is_zero() || d.is_zero() {
        return u.signum();
    }
    let su = u.signum();
    let sv = v.signum();
    if su == 0 {
        return sv;
    }
    if su == sv {
        return su;
    }
    if policy == SignPolicy::Filtered {
        let (lo, hi) = d.sqrt_bounds(FILTER_BITS);
        let (a, b) = if v.is_positive() { (u + &(v * &lo), u + &(v * &hi)) } else { (u + &(v * &hi), u + &(v * &lo)) };
        if a.is_positive() {
            return 1;
        }
        if b.is_negative() {
            return -1;
        }
    }
    let lhs = u.square();
    let rhs = v.square() * d;
    if lhs > rhs {
        su
    } else if lhs < rhs {
        sv
    } else {
        0
    }
}

/// Coefficients of `A(x^2+y^2) + P x + Q y + C`.
struct Conic {
    a: Rational,
    p: Rational,
    q: Rational,
    c: Rational,
}

impl Conic {
    fn of(d: &GenDisk) -> Conic {
        let two = Rational::from(2);
        Conic { a: d.a().clone(), p: &two * &d.b().re, q: &two * &d.b().im, c: d.c().clone() }
    }
}

/// Sign of the form of `d` at the candidate.
pub fn form_sign(d: &GenDisk, pt: &Candidate, policy: SignPolicy) -> i32 {
    match pt {
        Candidate::Infinity => d.a().signum(),
        Candidate::Point(p) => {
            let k = Conic::of(d);
            let two = Rational::from(2);
            // x^2 + y^2 = (x0^2 + x1^2 d + y0^2 + y1^2 d) + 2 (x0 x1 + y0 y1) sqrt d
            let sq0 = p.x0.square() + p.y0.square() + (p.x1.square() + p.y1.square()) * &p.d;
            let sq1 = &two * &(&p.x0 * &p.x1 + &p.y0 * &p.y1);
            let u = &k.a * &sq0 + &k.p * &p.x0 + &k.q * &p.y0 + k.c.clone();
            let v = &k.a * &sq1 + &k.p * &p.x1 + &k.q * &p.y1;
            sign_quadratic(&u, &v, &p.d, policy)
        }
    }
}

/// Membership of a candidate point in `d`, respecting its openness.
pub fn candidate_in_disk(d: &GenDisk, pt: &Candidate, policy: SignPolicy) -> bool {
    let s = form_sign(d, pt, policy);
    match d.openness() {
        Openness::Open => s < 0,
        Openness::Closed => s <= 0,
    }
}

fn boundary_point(k: &Conic) -> QuadPoint {
    if k.a.is_zero() {
        if !k.q.is_zero() {
            QuadPoint::rational(Rational::zero(), -(&k.c / &k.q))
        } else {
            QuadPoint::rational(-(&k.c / &k.p), Rational::zero())
        }
    } else {
        let two_a = Rational::from(2) * &k.a;
        let cx = -(&k.p / &two_a);
        let cy = -(&k.q / &two_a);
        let r2 = cx.square() + cy.square() - &k.c / &k.a;
        QuadPoint { x0: cx, x1: Rational::zero(), y0: cy, y1: Rational::one(), d: r2 }
    }
}

/// Finite intersection points of a line `P x + Q y + C = 0` with a circle
/// given by a conic with `A != 0`.
fn line_circle(p: &Rational, q: &Rational, c: &Rational, circle: &Conic, out: &mut Vec<QuadPoint>) {
    let two = Rational::from(2);
    // Parametrize the line by one free coordinate t.
    // If Q != 0: x = t, y = m t + n. Otherwise y = t, x = n.
    if !q.is_zero() {
        let m = -(p / q);
        let n = -(c / q);
        // A(t^2 + (m t + n)^2) + P t + Q (m t + n) + C
        let qa = &circle.a * &(Rational::one() + m.square());
        let qb = &two * &(&circle.a * &(&m * &n)) + &circle.p + &circle.q * &m;
        let qc = &circle.a * &n.square() + &circle.q * &n + circle.c.clone();
        let disc = qb.square() - Rational::from(4) * &qa * &qc;
        if disc.is_negative() {
            return;
        }
        let two_qa = &two * &qa;
        let t0 = -(&qb / &two_qa);
        for sgn in [1i64, -1] {
            let t1 = Rational::from(sgn) / two_qa.clone();
            out.push(QuadPoint {
                x0: t0.clone(),
                x1: t1.clone(),
                y0: &m * &t0 + n.clone(),
                y1: &m * &t1,
                d: disc.clone(),
            });
            if disc.is_zero() {
                break;
            }
        }
    } else {
        let x = -(c / p);
        // A(x^2 + t^2) + P x + Q t + C
        let qa = circle.a.clone();
        let qb = circle.q.clone();
        let qc = &circle.a * &x.square() + &circle.p * &x + circle.c.clone();
        let disc = qb.square() - Rational::from(4) * &qa * &qc;
        if disc.is_negative() {
            return;
        }
        let two_qa = &two * &qa;
        let t0 = -(&qb / &two_qa);
        for sgn in [1i64, -1] {
            out.push(QuadPoint {
                x0: x.clone(),
                x1: Rational::zero(),
                y0: t0.clone(),
                y1: Rational::from(sgn) / two_qa.clone(),
                d: disc.clone(),
            });
            if disc.is_zero() {
                break;
            }
        }
    }
}

fn pair_intersections(k1: &Conic, k2: &Conic, out: &mut Vec<QuadPoint>) {
    if k1.a.is_zero() && k2.a.is_zero() {
        let det = &k1.p * &k2.q - &k2.p * &k1.q;
        if det.is_zero() {
            return;
        }
        let x = (&k1.q * &k2.c - &k2.q * &k1.c) / det.clone();
        let y = (&k2.p * &k1.c - &k1.p * &k2.c) / det;
        out.push(QuadPoint::rational(x, y));
        return;
    }
    // Radical line A1 F2 - A2 F1.
    let p = &k1.a * &k2.p - &k2.a * &k1.p;
    let q = &k1.a * &k2.q - &k2.a * &k1.q;
    let c = &k1.a * &k2.c - &k2.a * &k1.c;
    if p.is_zero() && q.is_zero() {
        return;
    }
    let circle = if k1.a.is_zero() { k2 } else { k1 };
    line_circle(&p, &q, &c, circle, out);
}

/// All candidate points for the given family of forms.
pub fn candidates(forms: &[GenDisk]) -> Vec<Candidate> {
    let conics: Vec<Conic> = forms.iter().map(Conic::of).collect();
    let mut pts = Vec::new();
    for k in &conics {
        pts.push(boundary_point(k));
    }
    for i in 0..conics.len() {
        for j in i + 1..conics.len() {
            pair_intersections(&conics[i], &conics[j], &mut pts);
        }
    }
    let mut out = Vec::with_capacity(pts.len() + 1);
    out.push(Candidate::Infinity);
    out.extend(pts.into_iter().map(Candidate::Point));
    out
}

/// A point in the intersection of the closures of `forms`, if any.
pub fn closed_intersection_point(forms: &[GenDisk], policy: SignPolicy) -> Option<Candidate> {
    candidates(forms).into_iter().find(|pt| forms.iter().all(|f| form_sign(f, pt, policy) <= 0))
}

/// Pencil data for `det(t H_P - H_Q) = qa t^2 - qb t + qc` and
/// `trace(t H_P - H_Q) = s t - k`.
struct Pencil {
    qa: Rational,
    qb: Rational,
    qc: Rational,
    s: Rational,
    k: Rational,
}

impl Pencil {
    fn new(p: &GenDisk, q: &GenDisk) -> Pencil {
        let cross = &p.b().re * &q.b().re + &p.b().im * &q.b().im;
        Pencil {
            qa: p.det(),
            qb: p.a() * q.c() + q.a() * p.c() - Rational::from(2) * cross,
            qc: q.det(),
            s: p.a() + p.c(),
            k: q.a() + q.c(),
        }
    }

    fn det_at(&self, t: &Rational) -> Rational {
        &self.qa * &t.square() - &self.qb * t + self.qc.clone()
    }

    fn disc(&self) -> Rational {
        self.qb.square() - Rational::from(4) * &self.qa * &self.qc
    }

    fn vertex(&self) -> Rational {
        &self.qb / &(Rational::from(2) * &self.qa)
    }
}

/// Closed `P` contained in closed `Q`: decided by the existence of `t >= 0`
/// with `t H_P - H_Q` positive semidefinite.
pub fn closed_subset_closed(p: &GenDisk, q: &GenDisk) -> bool {
    let pen = Pencil::new(p, q);
    // det is concave in t since det H_P < 0; its roots r1 <= r2 surround
    // the vertex.
    if pen.disc().is_negative() {
        return false;
    }
    let vertex = pen.vertex();
    let mut lo = Rational::zero();
    let mut hi: Option<Rational> = None;
    match pen.s.signum() {
        0 => {
            if pen.k.is_positive() {
                return false;
            }
        }
        1 => lo = lo.max(&pen.k / &pen.s),
        _ => hi = Some(&pen.k / &pen.s),
    }
    if let Some(h) = &hi {
        if *h < lo {
            return false;
        }
    }
    let le_r2 = |x: &Rational| !pen.det_at(x).is_negative() || *x < vertex;
    let ge_r1 = |x: &Rational| !pen.det_at(x).is_negative() || *x > vertex;
    le_r2(&lo) && hi.as_ref().is_none_or(ge_r1)
}

/// Closed `P` contained in the interior of `Q`: decided by the existence of
/// `t >= 0` with `t H_P - H_Q` positive definite.
pub fn closed_subset_open(p: &GenDisk, q: &GenDisk) -> bool {
    let pen = Pencil::new(p, q);
    if !pen.disc().is_positive() {
        return false;
    }
    let vertex = pen.vertex();
    // Feasible t: t >= 0, trace > 0, r1 < t < r2.
    let mut lo = Rational::zero();
    let mut hi: Option<Rational> = None;
    match pen.s.signum() {
        0 => {
            if !pen.k.is_negative() {
                return false;
            }
        }
        1 => {
            let b = &pen.k / &pen.s;
            if b >= lo {
                // strict bound t > b; the open root interval absorbs it
                lo = b;
            }
        }
        _ => hi = Some(&pen.k / &pen.s),
    }
    if let Some(h) = &hi {
        if *h <= lo {
            return false;
        }
    }
    let lt_r2 = |x: &Rational| pen.det_at(x).is_positive() || *x < vertex;
    let gt_r1 = |x: &Rational| pen.det_at(x).is_positive() || *x > vertex;
    lt_r2(&lo) && hi.as_ref().is_none_or(gt_r1)
}

/// `P ⊆ Q` for single generalized disks of any openness.
pub fn disk_subset_disk(p: &GenDisk, q: &GenDisk) -> bool {
    match (p.openness(), q.openness()) {
        (_, Openness::Closed) | (Openness::Open, Openness::Open) => closed_subset_closed(&p.closure(), &q.closure()),
        (Openness::Closed, Openness::Open) => closed_subset_open(p, q),
    }
}

/// `D ⊆ U` for a union region `U`.
///
/// Exact when `D` is closed and `U` open, or when a single member of `U`
/// already contains `D`. Otherwise the closure of `D` is tested against the
/// interiors of the members; a failure with a witness point that lies in
/// `D` and outside `U` is a definite no, anything else is undecidable.
pub fn disk_in_region(d: &GenDisk, u: &Region, policy: SignPolicy) -> Result<bool> {
    let mut forms = Vec::with_capacity(u.members().len() + 1);
    forms.push(d.closure());
    forms.extend(u.members().iter().map(|m| m.interior().complement()));
    if d.is_closed() && u.openness() == Openness::Open {
        if u.members().iter().any(|m| closed_subset_open(d, m)) {
            return Ok(true);
        }
        return Ok(closed_intersection_point(&forms, policy).is_none());
    }
    if u.members().iter().any(|m| disk_subset_disk(d, m)) {
        return Ok(true);
    }
    if u.members().len() == 1 {
        return Ok(false);
    }
    if closed_intersection_point(&forms, policy).is_none() {
        return Ok(true);
    }
    // Look for a point strictly inside D and outside U.
    let strict = |pt: &Candidate| {
        form_sign(d, pt, policy) < 0 && u.members().iter().all(|m| !candidate_in_disk(m, pt, policy))
    };
    let cands: Vec<Candidate> =
        candidates(&forms).into_iter().filter(|pt| forms.iter().all(|f| form_sign(f, pt, policy) <= 0)).collect();
    if cands.iter().any(strict) || interior_probes(&cands, d).iter().any(strict) {
        return Ok(false);
    }
    Err(Error::Undecidable(format!("containment of {d:?} in region {} is boundary-tangent", u.label())))
}

/// Rational points near the given candidates: the centre of `d` when
/// bounded, centroids of the candidates and pairwise midpoints.
fn interior_probes(cands: &[Candidate], d: &GenDisk) -> Vec<Candidate> {
    let approx: Vec<(Rational, Rational)> = cands
        .iter()
        .filter_map(|c| match c {
            Candidate::Infinity => None,
            Candidate::Point(p) => {
                let s = p.d.sqrt_bounds(48).0;
                Some((&p.x0 + &(&p.x1 * &s), &p.y0 + &(&p.y1 * &s)))
            }
        })
        .collect();
    let mut out = Vec::new();
    if let Some((c, _)) = d.center_radius_sq() {
        if d.a().is_positive() {
            out.push(QuadPoint::rational(c.re, c.im));
        }
    }
    if !approx.is_empty() {
        let n = Rational::from(approx.len() as i64);
        let sx = approx.iter().fold(Rational::zero(), |acc, (x, _)| acc + x);
        let sy = approx.iter().fold(Rational::zero(), |acc, (_, y)| acc + y);
        out.push(QuadPoint::rational(sx / n.clone(), sy / n));
    }
    let half = Rational::new(1, 2).expect("nonzero");
    for i in 0..approx.len() {
        for j in i + 1..approx.len() {
            let mx = (&approx[i].0 + &approx[j].0) * &half;
            let my = (&approx[i].1 + &approx[j].1) * &half;
            out.push(QuadPoint::rational(mx, my));
        }
    }
    out.into_iter().map(Candidate::Point).collect()
}

pub fn region_subset(inner: &Region, outer: &Region, policy: SignPolicy) -> Result<bool> {
    for m in inner.members() {
        if !disk_in_region(m, outer, policy)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `P ∩ Q = ∅`.
pub fn disks_disjoint(p: &GenDisk, q: &GenDisk) -> bool {
    disk_subset_disk(p, &q.complement())
}

pub fn regions_disjoint(x: &Region, y: &Region) -> bool {
    x.members().iter().all(|p| y.members().iter().all(|q| disks_disjoint(p, q)))
}
