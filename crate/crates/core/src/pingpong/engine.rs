use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use super::table::{CheckResult, Flavor, PingPongTable};
use crate::arith::{GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::moebius::{
    apply_word, conjugate_region_by_j, disk_in_region, make_generators, region_subset, Generators, GenDisk, Matrix2,
    Openness, Region, SignPolicy,
};
use crate::word::{b_word, enumerate_a_level, Letter, Syllable, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WSet {
    /// `W(X1, X2, K1, K2)`
    XToK,
    /// `W(K1, K2, X1, X2)`
    KToX,
}

impl WSet {
    pub fn name(self) -> &'static str {
        match self {
            WSet::XToK => "W_X_to_K",
            WSet::KToX => "W_K_to_X",
        }
    }
}

impl fmt::Display for WSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for WSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "W_X_to_K" | "XToK" | "x2k" => Ok(WSet::XToK),
            "W_K_to_X" | "KToX" | "k2x" => Ok(WSet::KToX),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WMembership {
    pub word: Word,
    pub set: WSet,
    /// First and last letter of the word.
    pub case: (Letter, Letter),
    pub source: String,
    pub target: String,
    pub member: bool,
}

fn select<'a>(t: &'a PingPongTable, set: WSet, w: &Word) -> Result<(&'a Region, &'a Region, (Letter, Letter))> {
    let (Some(first), Some(last)) = (w.first_letter(), w.last_letter()) else {
        return Err(Error::invalid("W-membership needs a nonempty word"));
    };
    let (c1, c2, d1, d2) = match set {
        WSet::XToK => (&t.x1, &t.x2, &t.k1, &t.k2),
        WSet::KToX => (&t.k1, &t.k2, &t.x1, &t.x2),
    };
    let source = if last == Letter::A { c1 } else { c2 };
    let target = if first == Letter::A { d2 } else { d1 };
    Ok((source, target, (first, last)))
}

/// Membership of `w` given its matrix.
pub fn w_membership_matrix(
    w: &Word,
    m: &Matrix2,
    t: &PingPongTable,
    set: WSet,
    policy: SignPolicy,
) -> Result<WMembership> {
    let (source, target, case) = select(t, set, w)?;
    let member = region_subset(&source.image(m), target, policy)?;
    Ok(WMembership {
        word: w.clone(),
        set,
        case,
        source: source.label().to_string(),
        target: target.label().to_string(),
        member,
    })
}

pub fn w_membership(
    w: &Word,
    t: &PingPongTable,
    set: WSet,
    lambda: &GaussianRational,
    mu: &GaussianRational,
    policy: SignPolicy,
) -> Result<WMembership> {
    let g = make_generators(lambda, mu)?;
    w_membership_matrix(w, &apply_word(w, &g.a, &g.b), t, set, policy)
}

fn member(w: &Word, g: &Generators, t: &PingPongTable, set: WSet, policy: SignPolicy) -> Result<bool> {
    Ok(w_membership_matrix(w, &apply_word(w, &g.a, &g.b), t, set, policy)?.member)
}

/// First exponent from which tails are handled by closed forms.
const TAIL_START: i64 = 3;

/// For `n >= n0`, the translates `C + n tau` of a bounded region lie in a
/// closed half-plane `{Re(conj(u) z) >= t}` with `u` a unit direction. The
/// tail is certified if some such half-plane lies in `target`.
fn translation_tail(
    source: &Region,
    tau: &GaussianRational,
    n0: i64,
    target: &Region,
    policy: SignPolicy,
) -> Result<(bool, String)> {
    let mut bounds = Vec::new();
    for m in source.members() {
        if !m.a().is_positive() {
            return Ok((false, "tail not certified: source region is unbounded".into()));
        }
        bounds.push(m.center_radius_sq().expect("bounded"));
    }
    let zero = Rational::zero();
    let one = Rational::one();
    let dirs = [(one.clone(), zero.clone()), (-&one, zero.clone()), (zero.clone(), one.clone()), (zero, -&one)];
    for (ur, ui) in dirs {
        let phi = |z: &GaussianRational| &ur * &z.re + &ui * &z.im;
        let step = phi(tau);
        if !step.is_positive() {
            continue;
        }
        let t = bounds
            .iter()
            .map(|(c, r2)| phi(c) - r2.sqrt_bounds(32).1)
            .reduce(Rational::min)
            .expect("nonempty region")
            + Rational::from(n0) * step;
        let half = match (ur.signum(), ui.signum()) {
            (1, _) => GenDisk::re_greater(&t, Openness::Closed),
            (-1, _) => GenDisk::re_less(&-&t, Openness::Closed),
            (_, 1) => GenDisk::im_greater(&t, Openness::Closed),
            _ => GenDisk::im_less(&-&t, Openness::Closed),
        };
        if disk_in_region(&half, target, policy)? {
            return Ok((true, format!("translates lie in {half:?}")));
        }
    }
    Ok((false, "tail not certified: no separating half-plane".into()))
}

/// `B_2^n X2` is the open disk on the real axis with boundary points
/// `1/(2n+1)` and `1/(2n-1)`.
pub fn b2_power_disk(n: i64) -> GenDisk {
    let n = Rational::from(n);
    let den = Rational::from(4) * n.square() - Rational::one();
    let center = GaussianRational::real(Rational::from(2) * &n / den.clone());
    GenDisk::disk(&center, &den.recip().expect("nonzero"), Openness::Open).expect("valid")
}

/// Ball-formula tail for `B_2`: every `b^n X2` with `n >= n0` lies in the
/// disk with diameter `[0, 1/(2 n0 - 1)]`.
fn b2_ball_tail(t: &PingPongTable, g: &Generators, n0: i64, negative: bool, policy: SignPolicy) -> Result<(bool, String)> {
    let exp = if negative { -n0 } else { n0 };
    let img = t.x2.image(&g.b.pow(exp));
    let formula = if negative { b2_power_disk(n0).negate() } else { b2_power_disk(n0) };
    if img.members().len() != 1 || !img.members()[0].same_set(&formula) {
        return Ok((false, "tail not certified: ball formula does not match".into()));
    }
    let half = Rational::new(1, 2 * (2 * n0 - 1))?;
    let center = GaussianRational::real(if negative { -&half } else { half.clone() });
    let envelope = GenDisk::disk(&center, &half, Openness::Closed)?;
    let ok = disk_in_region(&envelope, &t.k1, policy)?;
    Ok((ok, format!("envelope {envelope:?}")))
}

/// Runs the finite and tail checks that must hold before certification.
pub fn check_prerequisites(
    t: &PingPongTable,
    lambda: &GaussianRational,
    mu: &GaussianRational,
    policy: SignPolicy,
) -> Result<Vec<CheckResult>> {
    t.check_domain(lambda, mu)?;
    let g = make_generators(lambda, mu)?;
    let mut out: Vec<CheckResult> = t.invariants().to_vec();
    let signs: &[i64] = if t.is_symmetric() { &[1] } else { &[1, -1] };
    for &sgn in signs {
        for letter in [Letter::A, Letter::B] {
            let w = Word::from_blocks([(letter, 2 * sgn)]);
            let ok = member(&w, &g, t, WSet::XToK, policy)?;
            out.push(CheckResult::new(format!("{w} in W_X_to_K"), ok, ""));
        }
    }
    let sym_note = if t.is_symmetric() { "; negative exponents by symmetry" } else { "" };
    for &sgn in signs {
        let n0 = TAIL_START;
        let (ok, detail) = translation_tail(&t.x1, &lambda.scale(&Rational::from(sgn)), n0, &t.k2, policy)?;
        out.push(CheckResult::new(format!("a^n tail, n{}{}", if sgn > 0 { ">=" } else { "<=" }, n0 * sgn), ok, format!("{detail}{sym_note}")));
        let (ok, detail) = if t.flavor == Flavor::Mu2 {
            b2_ball_tail(t, &g, n0, sgn < 0, policy)?
        } else {
            // J b J^-1 is translation by -mu.
            let jx2 = conjugate_region_by_j(&t.x2);
            let jk1 = conjugate_region_by_j(&t.k1);
            translation_tail(&jx2, &mu.scale(&Rational::from(-sgn)), n0, &jk1, policy)?
        };
        out.push(CheckResult::new(format!("b^n tail, n{}{}", if sgn > 0 { ">=" } else { "<=" }, n0 * sgn), ok, format!("{detail}{sym_note}")));
    }
    if t.flavor != Flavor::MuI {
        let ab = Word::from_syllables(alloc::vec![Syllable::a(1), Syllable::b(1)])?;
        let ba = Word::from_syllables(alloc::vec![Syllable::b(1), Syllable::a(1)])?;
        for w in [ab.clone(), ba.clone(), ab.inverse(), ba.inverse()] {
            let ok = member(&w, &g, t, WSet::XToK, policy)?;
            out.push(CheckResult::new(format!("{w} in W_X_to_K"), ok, ""));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default)]
pub struct CertOptions {
    /// Largest syllable count examined; `None` uses the default schedule.
    pub cap: Option<usize>,
    pub policy: SignPolicy,
    /// Enumerate exponent-inverted words explicitly even for symmetric
    /// tables.
    pub no_symmetry: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertReport {
    pub lambda: GaussianRational,
    pub mu: GaussianRational,
    pub flavor: Flavor,
    pub certified_syllables: usize,
    pub failure_witness: Option<Word>,
    pub guaranteed_subword_exponent: usize,
    pub prerequisites: Vec<CheckResult>,
    pub cap: usize,
    pub margin: Rational,
}

/// `max(32, ceil(4 / sqrt|2 - lambda mu / 2|))` for power-form tables, 12
/// for the alternating one.
pub fn default_cap(flavor: Flavor, lambda: &GaussianRational, mu: &GaussianRational) -> usize {
    if flavor == Flavor::MuI {
        return 12;
    }
    let x = &GaussianRational::from_int(2) - &(lambda * mu).scale(&Rational::new(1, 2).expect("nonzero"));
    let n2 = x.norm_sqr();
    if n2.is_zero() {
        return 32;
    }
    // smallest m with m^4 |x|^2 >= 256
    let target = Rational::from(256) / n2;
    let approx = libm::floor(libm::pow(target.to_f64(), 0.25)).max(1.0) as u64;
    let mut m = approx.saturating_sub(2).max(1);
    while Rational::from(BigInt::from(m)).pow(4).expect("nonzero") < target {
        m += 1;
    }
    (m as usize).max(32)
}

/// The largest `k` such that every family word with more than `s`
/// syllables contains `(a b^-1)^k` or `(a^-1 b)^k` as an exact subword.
pub fn subword_guarantee(s: usize) -> usize {
    s / 2
}

/// Words examined at one syllable level.
pub fn level_words(t: &PingPongTable, s: usize, no_symmetry: bool) -> Vec<Word> {
    let use_sym = t.is_symmetric() && !no_symmetry;
    match t.flavor {
        Flavor::MuI => enumerate_a_level(s, use_sym),
        _ => {
            let mut v = alloc::vec![b_word(Letter::A, s), b_word(Letter::B, s)];
            if !use_sym {
                v.push(b_word(Letter::A, s).invert_exponents());
                v.push(b_word(Letter::B, s).invert_exponents());
            }
            v
        }
    }
}

pub fn certify_bound(
    t: &PingPongTable,
    lambda: &GaussianRational,
    mu: &GaussianRational,
    opts: &CertOptions,
) -> Result<CertReport> {
    certify_bound_with(t, lambda, mu, opts, |words, check| words.iter().map(check).collect())
}

/// Same as [`certify_bound`], with the per-level evaluation delegated to
/// `eval` (which must return one result per word, in order).
pub fn certify_bound_with<E>(
    t: &PingPongTable,
    lambda: &GaussianRational,
    mu: &GaussianRational,
    opts: &CertOptions,
    mut eval: E,
) -> Result<CertReport>
where
    E: FnMut(&[Word], &(dyn Fn(&Word) -> Result<bool> + Sync)) -> Vec<Result<bool>>,
{
    let cap = opts.cap.unwrap_or_else(|| default_cap(t.flavor, lambda, mu));
    if cap == 0 {
        return Err(Error::invalid("cap must be positive"));
    }
    let prerequisites = check_prerequisites(t, lambda, mu, opts.policy)?;
    if let Some(bad) = prerequisites.iter().find(|c| !c.pass) {
        return Err(Error::PrerequisiteFailed(format!("{}: {}", bad.name, bad.detail)));
    }
    let g = make_generators(lambda, mu)?;
    let policy = opts.policy;
    let check = |w: &Word| member(w, &g, t, WSet::KToX, policy);
    let mut certified = 0;
    let mut witness = None;
    for s in 1..=cap {
        let words = level_words(t, s, opts.no_symmetry);
        let results = eval(&words, &check);
        let mut failed = None;
        for (w, r) in words.iter().zip(results) {
            if !r? {
                failed = Some(w.clone());
                break;
            }
        }
        if let Some(w) = failed {
            witness = Some(w);
            break;
        }
        certified = s;
    }
    Ok(CertReport {
        lambda: lambda.clone(),
        mu: mu.clone(),
        flavor: t.flavor,
        certified_syllables: certified,
        failure_witness: witness,
        guaranteed_subword_exponent: subword_guarantee(certified),
        prerequisites,
        cap,
        margin: Rational::zero(),
    })
}

/// Plain-text statement of what the report guarantees.
pub fn relator_implication_report(rep: &CertReport) -> String {
    let s = rep.certified_syllables;
    let k = rep.guaranteed_subword_exponent;
    let mut out = String::new();
    if rep.flavor == Flavor::MuI {
        if s == 0 {
            out.push_str("no alternating word certified; the statement is vacuous");
        } else {
            out.push_str(&format!(
                "every relator contains an exact subword with all exponents ±1 and more than {s} syllables"
            ));
        }
    } else if k == 0 {
        out.push_str("no power subword guaranteed; the statement is vacuous");
    } else {
        let pow = |base: &str| if k == 1 { base.to_string() } else { format!("({base})^{k}") };
        out.push_str(&format!("every relator contains {} or {} as an exact subword", pow("a b^-1"), pow("a^-1 b")));
    }
    out.push_str(&format!("; sigma >= {}", s + 1));
    if let Some(w) = &rep.failure_witness {
        out.push_str(&format!("; first failing word: {w}"));
    } else {
        out.push_str(&format!("; cap {} reached without failure", rep.cap));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{extract_theorem_form, PowerKind};

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn membership_examples() {
        let t = PingPongTable::mu2();
        let p = SignPolicy::Filtered;
        let two = g("2");
        assert!(w_membership(&w("b^2"), &t, WSet::XToK, &two, &two, p).unwrap().member);
        let m = w_membership(&w("a"), &t, WSet::XToK, &two, &two, p).unwrap();
        assert!(!m.member);
        assert_eq!((m.source.as_str(), m.target.as_str()), ("X1", "K2"));
        assert!(w_membership(&w("a b"), &t, WSet::XToK, &two, &two, p).unwrap().member);
        assert!(w_membership(&Word::identity(), &t, WSet::XToK, &two, &two, p).is_err());
    }

    #[test]
    fn prerequisites_mu2() {
        let t = PingPongTable::mu2();
        for lam in ["2", "9/5"] {
            let res = check_prerequisites(&t, &g(lam), &g("2"), SignPolicy::Filtered).unwrap();
            assert!(res.iter().all(|c| c.pass), "{lam}: {res:?}");
        }
        assert!(matches!(
            check_prerequisites(&t, &g("1"), &g("2"), SignPolicy::Filtered),
            Err(Error::DomainGate(_))
        ));
    }

    #[test]
    fn ball_formula_small_n() {
        let b = Matrix2::lower(g("2"));
        let x2 = PingPongTable::mu2().x2;
        for n in 1..=6 {
            assert!(x2.image(&b.pow(n)).members()[0].same_set(&b2_power_disk(n)));
        }
    }

    #[test]
    fn subword_guarantee_matches_brute_force() {
        // Every family word with s+1 syllables, and the best power it must
        // contain; the minimum over shapes is the guarantee.
        for s in 0..12usize {
            let n = s + 1;
            let shapes = [b_word(Letter::A, n), b_word(Letter::B, n)];
            let worst = shapes
                .iter()
                .flat_map(|x| [x.clone(), x.invert_exponents()])
                .map(|x| extract_theorem_form(&x).power.map_or(0, |(_, k)| k))
                .min()
                .unwrap();
            assert_eq!(subword_guarantee(s), worst, "s = {s}");
        }
        assert_eq!(subword_guarantee(0), 0);
        assert_eq!(subword_guarantee(4), 2);
        assert_eq!(subword_guarantee(5), 2);
        let kind = extract_theorem_form(&w("(a b^-1)^2 a")).power.unwrap().0;
        assert_eq!(kind, PowerKind::AbInv);
    }

    #[test]
    fn default_cap_schedule() {
        assert_eq!(default_cap(Flavor::Mu2, &g("2"), &g("2")), 32);
        assert_eq!(default_cap(Flavor::Mu2, &g("199/100"), &g("2")), 40);
        assert_eq!(default_cap(Flavor::Mu2, &g("1999/1000"), &g("2")), 127);
        assert_eq!(default_cap(Flavor::MuI, &g("2"), &g("0+1i")), 12);
    }

    #[test]
    fn sanov_short_run() {
        let t = PingPongTable::mu2();
        let opts = CertOptions { cap: Some(8), ..Default::default() };
        let rep = certify_bound(&t, &g("2"), &g("2"), &opts).unwrap();
        assert_eq!(rep.certified_syllables, 8);
        assert!(rep.failure_witness.is_none());
    }

    #[test]
    fn report_text() {
        let mut rep = CertReport {
            lambda: g("9/5"),
            mu: g("2"),
            flavor: Flavor::Mu2,
            certified_syllables: 5,
            failure_witness: None,
            guaranteed_subword_exponent: subword_guarantee(5),
            prerequisites: Vec::new(),
            cap: 40,
            margin: Rational::zero(),
        };
        let text = relator_implication_report(&rep);
        assert!(text.contains("(a b^-1)^2 or (a^-1 b)^2") && text.contains("sigma >= 6"), "{text}");
        rep.certified_syllables = 0;
        rep.guaranteed_subword_exponent = 0;
        let text = relator_implication_report(&rep);
        assert!(text.contains("vacuous") && text.contains("sigma >= 1"));
        rep.certified_syllables = 2;
        rep.guaranteed_subword_exponent = 1;
        rep.failure_witness = Some(w("a b^-1 a"));
        assert!(relator_implication_report(&rep).contains("a b^-1 a"));
    }
}
