//! Relator checks and searches: identity tests, a bounded enumeration, the
//! upper-right-entry polynomial, commutator relators from annihilating
//! words, and parameter normalization by diagonal conjugation.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{GaussianRational, Poly, Rational};
use crate::error::{Error, Result};
use crate::moebius::{apply_word, make_generators, IntervalMatrix2, Matrix2};
use crate::pingpong::{CertReport, Flavor};
use crate::word::{extract_theorem_form, FormReport, Letter, Syllable, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelatorMode {
    /// Product equals `I`.
    Exact,
    /// Product equals `±I`.
    Psl,
    /// Interval evaluation with the given working precision in bits. Never
    /// affirms a relator.
    Numeric { bits: u32 },
}

impl RelatorMode {
    pub fn name(&self) -> &'static str {
        match self {
            RelatorMode::Exact => "exact-identity",
            RelatorMode::Psl => "psl-identity",
            RelatorMode::Numeric { .. } => "numeric-identity",
        }
    }
}

impl fmt::Display for RelatorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorCertificate {
    pub word: Word,
    pub lambda: GaussianRational,
    pub mu: GaussianRational,
    pub mode: RelatorMode,
    pub residual: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelatorVerdict {
    Relator(RelatorCertificate),
    NotRelator { residual: Rational },
    /// Numeric evaluation could not separate the product from `±I`.
    Refused(String),
}

impl RelatorVerdict {
    pub fn certificate(&self) -> Option<&RelatorCertificate> {
        match self {
            RelatorVerdict::Relator(c) => Some(c),
            _ => None,
        }
    }
}

fn sup_distance(m: &Matrix2, sign: i64) -> Rational {
    IntervalMatrix2::from_exact(m).distance_to_scalar_identity(sign)
}

pub fn is_relator(w: &Word, lambda: &GaussianRational, mu: &GaussianRational, mode: RelatorMode) -> Result<RelatorVerdict> {
    if w.is_empty() {
        return Err(Error::invalid("relators are nonempty words"));
    }
    let g = make_generators(lambda, mu)?;
    match mode {
        RelatorMode::Exact | RelatorMode::Psl => {
            let m = apply_word(w, &g.a, &g.b);
            let ok = if mode == RelatorMode::Exact { m.is_identity() } else { m.is_plus_minus_identity() };
            if ok {
                Ok(RelatorVerdict::Relator(RelatorCertificate {
                    word: w.clone(),
                    lambda: lambda.clone(),
                    mu: mu.clone(),
                    mode,
                    residual: Rational::zero(),
                }))
            } else {
                let residual = if mode == RelatorMode::Exact {
                    sup_distance(&m, 1)
                } else {
                    sup_distance(&m, 1).min(sup_distance(&m, -1))
                };
                Ok(RelatorVerdict::NotRelator { residual })
            }
        }
        RelatorMode::Numeric { bits } => {
            let a = IntervalMatrix2::from_exact(&g.a);
            let b = IntervalMatrix2::from_exact(&g.b);
            let ai = IntervalMatrix2::from_exact(&g.a.inverse());
            let bi = IntervalMatrix2::from_exact(&g.b.inverse());
            let mut acc = IntervalMatrix2::identity();
            for s in w.syllables() {
                let step = match (s.letter, s.exp > 0) {
                    (Letter::A, true) => &a,
                    (Letter::A, false) => &ai,
                    (Letter::B, true) => &b,
                    (Letter::B, false) => &bi,
                };
                for _ in 0..s.exp.unsigned_abs() {
                    acc = acc.mul(step, bits);
                }
            }
            if acc.excludes_scalar_identity(1) && acc.excludes_scalar_identity(-1) {
                let residual = acc.distance_to_scalar_identity(1).min(acc.distance_to_scalar_identity(-1));
                Ok(RelatorVerdict::NotRelator { residual })
            } else {
                Ok(RelatorVerdict::Refused("interval product does not separate from ±I".into()))
            }
        }
    }
}

/// Sort key of an exponent: `1 < -1 < 2 < -2 < ...`.
fn exp_key(e: i64) -> (u64, bool) {
    (e.unsigned_abs(), e < 0)
}

fn exps_in_order(max_exp: i64) -> Vec<i64> {
    let mut v: Vec<i64> = (1..=max_exp).flat_map(|k| [k, -k]).collect();
    v.sort_by_key(|&e| exp_key(e));
    v
}

fn tuple_key(e: &[i64]) -> Vec<(u64, bool)> {
    e.iter().map(|&x| exp_key(x)).collect()
}

/// Least representative under even rotations and inversion of an
/// `a`-initial cyclic exponent sequence.
fn is_canonical(e: &[i64]) -> bool {
    let n = e.len();
    let key = tuple_key(e);
    let inv: Vec<i64> = e.iter().rev().map(|x| -x).collect();
    for base in [e, inv.as_slice()] {
        // Rotations keeping an a-letter first: the inverse sequence starts
        // with a b-letter, so shift it by one.
        let offset = if core::ptr::eq(base, e) { 0 } else { 1 };
        for r in (0..n).step_by(2) {
            let rot: Vec<i64> = (0..n).map(|k| base[(k + r + offset) % n]).collect();
            if tuple_key(&rot) < key {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsResult {
    pub word: Word,
    /// `sigma <= sigma_upper`
    pub sigma_upper: usize,
}

/// Relator of least syllable count (then least maximal exponent, then least
/// exponent sequence) among cyclically reduced `a`-initial words within the
/// bounds; words equal up to cyclic rotation and inversion are tested once.
/// `None` says nothing about freeness.
pub fn bfs_find_relator(
    lambda: &GaussianRational,
    mu: &GaussianRational,
    max_syllables: usize,
    max_exponent: i64,
) -> Result<Option<BfsResult>> {
    if max_syllables == 0 || max_exponent <= 0 {
        return Err(Error::invalid("search bounds must be positive"));
    }
    let g = make_generators(lambda, mu)?;
    for s in (2..=max_syllables).step_by(2) {
        for m in 1..=max_exponent {
            let exps = exps_in_order(m);
            let powers: Vec<(i64, Matrix2, Matrix2)> = exps.iter().map(|&e| (e, g.a.pow(e), g.b.pow(e))).collect();
            let mut stack = Vec::with_capacity(s);
            if let Some(e) = search(&powers, s, m, &mut stack, &Matrix2::identity()) {
                let word = Word::from_blocks(e.iter().enumerate().map(|(k, &x)| {
                    (if k % 2 == 0 { Letter::A } else { Letter::B }, x)
                }));
                return Ok(Some(BfsResult { sigma_upper: word.syllable_count(), word }));
            }
        }
    }
    Ok(None)
}

fn search(
    powers: &[(i64, Matrix2, Matrix2)],
    s: usize,
    m: i64,
    stack: &mut Vec<i64>,
    prefix: &Matrix2,
) -> Option<Vec<i64>> {
    let depth = stack.len();
    if depth == s {
        if stack.iter().any(|e| e.abs() == m) && prefix.is_identity() && is_canonical(stack) {
            return Some(stack.clone());
        }
        return None;
    }
    for (e, pa, pb) in powers {
        // An a-syllable later in the word may not sort before the first.
        if depth > 0 && depth.is_multiple_of(2) && exp_key(*e) < exp_key(stack[0]) {
            continue;
        }
        let next = if depth.is_multiple_of(2) { prefix * pa } else { prefix * pb };
        stack.push(*e);
        if let Some(found) = search(powers, s, m, stack, &next) {
            return Some(found);
        }
        stack.pop();
    }
    None
}

/// Upper-right entry of the word with `A = (1 x; 0 1)`, `B = (1 0; x 1)`,
/// as a polynomial in `x`. The word must begin and end with `a`.
pub fn pw_polynomial(pattern: &Word) -> Result<Poly> {
    if pattern.first_letter() != Some(Letter::A) || pattern.last_letter() != Some(Letter::A) {
        return Err(Error::invalid("pattern must begin and end with a"));
    }
    let one = Poly::constant(GaussianRational::one());
    let zero = Poly::zero();
    let mut acc = [one.clone(), zero.clone(), zero.clone(), one.clone()];
    for s in pattern.syllables() {
        let nx = Poly::x().scale(&GaussianRational::from_int(s.exp));
        let m = match s.letter {
            Letter::A => [one.clone(), nx, zero.clone(), one.clone()],
            Letter::B => [one.clone(), zero.clone(), nx, one.clone()],
        };
        acc = [
            &(&acc[0] * &m[0]) + &(&acc[1] * &m[2]),
            &(&acc[0] * &m[1]) + &(&acc[1] * &m[3]),
            &(&acc[2] * &m[0]) + &(&acc[3] * &m[2]),
            &(&acc[2] * &m[1]) + &(&acc[3] * &m[3]),
        ];
    }
    let [_, p, _, _] = acc;
    Ok(p)
}

/// First `a^x b^y a^z ...` pattern with the given number of syllables and
/// exponents in `[-max_exp, max_exp] \ {0}` whose polynomial vanishes at
/// `lambda`.
pub fn find_annihilating_word(lambda: &GaussianRational, syllables: usize, max_exp: i64) -> Result<Option<Word>> {
    if syllables.is_multiple_of(2) || max_exp <= 0 {
        return Err(Error::invalid("annihilating patterns have an odd syllable count and positive exponent bound"));
    }
    let exps = exps_in_order(max_exp);
    let mut idx = alloc::vec![0usize; syllables];
    loop {
        let w = Word::from_blocks(
            idx.iter().enumerate().map(|(k, &i)| (if k % 2 == 0 { Letter::A } else { Letter::B }, exps[i])),
        );
        if pw_polynomial(&w)?.eval(lambda).is_zero() {
            return Ok(Some(w));
        }
        let mut k = syllables;
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < exps.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// The commutator of `w b w^-1` with `b`, verified to be a relator of
/// `<A_lambda, B_lambda>`. With `p_w(lambda) = 0` the matrix of `w` is lower
/// triangular, so `w b w^-1` is a lower unipotent and commutes with `b`.
pub fn relator_from_annihilating_word(w: &Word, lambda: &GaussianRational) -> Result<Word> {
    if !pw_polynomial(w)?.eval(lambda).is_zero() {
        return Err(Error::invalid(format!("p_w does not vanish at {lambda}")));
    }
    let b = Word::from_syllables(alloc::vec![Syllable::b(1)])?;
    let c = w.concat(&b).concat(&w.inverse());
    let rel = c.concat(&b).concat(&c.inverse()).concat(&b.inverse());
    match is_relator(&rel, lambda, lambda, RelatorMode::Exact)? {
        RelatorVerdict::Relator(_) => Ok(rel),
        _ => Err(Error::Refused(format!("commutator {rel} failed verification"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationMap {
    pub z: GaussianRational,
    /// `diag(z, 1/z)`
    pub j: Matrix2,
    pub source: (GaussianRational, GaussianRational),
    pub target: (GaussianRational, GaussianRational),
}

impl NormalizationMap {
    /// Conjugates a word's matrix from the source group into the target
    /// group: `J w J^-1`.
    pub fn conjugate(&self, m: &Matrix2) -> Matrix2 {
        m.conjugate_by(&self.j)
    }
}

/// Diagonal conjugation sending `B_mu` to `B_{l/2}`; refuses when `2 mu / l`
/// has no square root in `Q(i)`.
pub fn normalize_parameters(lambda: &GaussianRational, mu: &GaussianRational, ell: &GaussianRational) -> Result<NormalizationMap> {
    if lambda.is_zero() || mu.is_zero() || ell.is_zero() {
        return Err(Error::invalid("parameters must be nonzero"));
    }
    let z2 = mu.scale(&Rational::from(2)).checked_div(ell)?;
    let Some(z) = z2.sqrt_exact() else {
        return Err(Error::Refused(format!("2 mu / l = {z2} is not a square in Q(i); use interval mode")));
    };
    let j = Matrix2::diagonal(&z)?;
    let target = (lambda * &z2, mu.checked_div(&z2)?);
    Ok(NormalizationMap { z, j, source: (lambda.clone(), mu.clone()), target })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormCheck {
    pub form: FormReport,
    pub syllables: usize,
    /// Set when a relator contradicts a certificate.
    pub alarm: bool,
    pub detail: String,
}

/// Structured-subword data of a relator, checked against a certificate
/// when one is supplied.
pub fn check_relator_form(cert: &RelatorCertificate, report: Option<&CertReport>) -> FormCheck {
    let form = extract_theorem_form(&cert.word);
    let syllables = cert.word.syllable_count();
    let mut alarm = false;
    let mut detail = String::new();
    if let Some(rep) = report {
        let s = rep.certified_syllables;
        if syllables <= s {
            alarm = true;
            detail.push_str(&format!("relator has {syllables} syllables, certificate requires more than {s}; "));
        }
        match rep.flavor {
            Flavor::MuI => {
                if form.alternating <= s {
                    alarm = true;
                    detail.push_str(&format!("longest ±1 run {} does not exceed {s}; ", form.alternating));
                }
            }
            _ => {
                let k = rep.guaranteed_subword_exponent;
                if form.power_exponent() < k {
                    alarm = true;
                    detail.push_str(&format!("power subword {} below guaranteed {k}; ", form.power_exponent()));
                }
            }
        }
        if !alarm {
            detail.push_str("consistent with certificate");
        }
    }
    FormCheck { form, syllables, alarm, detail }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::PowerKind;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn identity_tests() {
        let v = is_relator(&w("(a b^-1)^3"), &g("3/2"), &g("2"), RelatorMode::Exact).unwrap();
        assert_eq!(v.certificate().unwrap().residual, Rational::zero());
        let v = is_relator(&w("(a b^-1)^2"), &g("1"), &g("2"), RelatorMode::Psl).unwrap();
        assert!(v.certificate().is_some());
        let v = is_relator(&w("(a b^-1)^2"), &g("1"), &g("2"), RelatorMode::Exact).unwrap();
        assert!(matches!(v, RelatorVerdict::NotRelator { .. }));
        for mode in [RelatorMode::Exact, RelatorMode::Psl, RelatorMode::Numeric { bits: 64 }] {
            let v = is_relator(&w("a b"), &g("2"), &g("2"), mode).unwrap();
            assert!(matches!(v, RelatorVerdict::NotRelator { .. }), "{mode}");
        }
        let v = is_relator(&w("(a b^-1)^3"), &g("3/2"), &g("2"), RelatorMode::Numeric { bits: 64 }).unwrap();
        assert!(matches!(v, RelatorVerdict::Refused(_)));
    }

    #[test]
    fn bfs_examples() {
        let r = bfs_find_relator(&g("3/2"), &g("2"), 8, 3).unwrap().unwrap();
        assert_eq!(r.word, w("(a b^-1)^3"));
        let r = bfs_find_relator(&g("1"), &g("2"), 8, 3).unwrap().unwrap();
        assert!(r.sigma_upper <= 8);
        assert!(bfs_find_relator(&g("2"), &g("2"), 4, 2).unwrap().is_none());
    }

    #[test]
    fn canonical_forms() {
        assert!(is_canonical(&[1, -1, 1, -1]));
        assert!(!is_canonical(&[2, -1, 1, -1]));
        // inverse of a b a^-1 b^2 ... is b^-2 a b^-1 a^-1; rotated a b^-1 a^-1 b^-2
        assert!(is_canonical(&[1, -1, -1, -2]) || is_canonical(&[1, 2, -1, 1]));
    }

    #[test]
    fn pw_examples() {
        let p = pw_polynomial(&w("a b a")).unwrap();
        let expect = Poly::new(alloc::vec![g("0"), g("2"), g("0"), g("1")]);
        assert_eq!(p, expect);
        assert_eq!(pw_polynomial(&w("a")).unwrap(), Poly::x());
        assert_eq!(pw_polynomial(&w("a^5")).unwrap().degree(), Some(1));
        assert_eq!(pw_polynomial(&w("a^-3")).unwrap(), Poly::x().scale(&g("-3")));
        assert!(pw_polynomial(&w("a b")).is_err());
    }

    #[test]
    fn annihilating_examples() {
        for lam in ["2/5", "1/2"] {
            let aw = find_annihilating_word(&g(lam), 3, 5).unwrap().unwrap();
            let rel = relator_from_annihilating_word(&aw, &g(lam)).unwrap();
            assert!(is_relator(&rel, &g(lam), &g(lam), RelatorMode::Exact).unwrap().certificate().is_some());
        }
        assert!(relator_from_annihilating_word(&w("a"), &g("2/5")).is_err());
        assert!(relator_from_annihilating_word(&w("a b^-5 a^-5"), &g("2/5")).is_ok());
    }

    #[test]
    fn normalization_examples() {
        let n = normalize_parameters(&g("1"), &g("8"), &g("4")).unwrap();
        assert_eq!((n.z.clone(), n.target.clone()), (g("2"), (g("4"), g("2"))));
        let gens = make_generators(&g("1"), &g("8")).unwrap();
        let tgt = make_generators(&g("4"), &g("2")).unwrap();
        assert_eq!(n.conjugate(&gens.a), tgt.a);
        assert_eq!(n.conjugate(&gens.b), tgt.b);
        let n = normalize_parameters(&g("9/5"), &g("2"), &g("4")).unwrap();
        assert_eq!(n.z, g("1"));
        assert!(matches!(normalize_parameters(&g("1"), &g("3"), &g("4")), Err(Error::Refused(_))));
    }

    #[test]
    fn form_examples() {
        let cert = RelatorCertificate {
            word: w("(a b^-1)^3"),
            lambda: g("3/2"),
            mu: g("2"),
            mode: RelatorMode::Exact,
            residual: Rational::zero(),
        };
        let fc = check_relator_form(&cert, None);
        assert_eq!(fc.form.power, Some((PowerKind::AbInv, 3)));
        assert!(!fc.alarm);
    }
}
