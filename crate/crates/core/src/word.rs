//! Reduced words in the free group on `a`, `b`, stored syllable by syllable.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn other(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    fn symbol(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }
}

/// A maximal block `letter^exp` of a reduced word; `exp != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub letter: Letter,
    pub exp: i64,
}

impl Syllable {
    pub fn new(letter: Letter, exp: i64) -> Self {
        debug_assert!(exp != 0);
        Syllable { letter, exp }
    }

    pub fn a(exp: i64) -> Self {
        Syllable::new(Letter::A, exp)
    }

    pub fn b(exp: i64) -> Self {
        Syllable::new(Letter::B, exp)
    }
}

/// Reduced word; adjacent syllables always carry distinct letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// Builds a word from arbitrary `(letter, exp)` blocks, merging and
    /// cancelling as needed.
    pub fn from_blocks<I: IntoIterator<Item = (Letter, i64)>>(blocks: I) -> Self {
        let mut out: Vec<Syllable> = Vec::new();
        for (letter, exp) in blocks {
            push_block(&mut out, letter, exp);
        }
        Word { syllables: out }
    }

    /// Validated constructor from a syllable list that must already be reduced.
    pub fn from_syllables(syllables: Vec<Syllable>) -> Result<Self> {
        if syllables.iter().any(|s| s.exp == 0) {
            return Err(Error::invalid("zero exponent in syllable list"));
        }
        if syllables.windows(2).any(|w| w[0].letter == w[1].letter) {
            return Err(Error::invalid("adjacent syllables share a letter"));
        }
        Ok(Word { syllables })
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllable_count(&self) -> usize {
        self.syllables.len()
    }

    /// Number of letters.
    pub fn len(&self) -> u64 {
        self.syllables.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    pub fn first_letter(&self) -> Option<Letter> {
        self.syllables.first().map(|s| s.letter)
    }

    pub fn last_letter(&self) -> Option<Letter> {
        self.syllables.last().map(|s| s.letter)
    }

    /// Group inverse.
    pub fn inverse(&self) -> Word {
        Word {
            syllables: self.syllables.iter().rev().map(|s| Syllable::new(s.letter, -s.exp)).collect(),
        }
    }

    /// Negates every exponent in place (not the group inverse).
    pub fn invert_exponents(&self) -> Word {
        Word { syllables: self.syllables.iter().map(|s| Syllable::new(s.letter, -s.exp)).collect() }
    }

    /// Free-group product, reduced.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.syllables.clone();
        for s in &other.syllables {
            push_block(&mut out, s.letter, s.exp);
        }
        Word { syllables: out }
    }

    pub fn pow(&self, n: u32) -> Word {
        (0..n).fold(Word::identity(), |acc, _| acc.concat(self))
    }

    /// The exact subword made of syllables `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word { syllables: self.syllables[start..end].to_vec() }
    }

    /// All exact subwords `s_i^{n_i} ... s_j^{n_j}`, `i <= j`, in order of
    /// start then end position.
    pub fn exact_subwords(&self) -> Result<impl Iterator<Item = Word> + '_> {
        if self.is_empty() {
            return Err(Error::invalid("exact subwords of the empty word"));
        }
        let k = self.syllables.len();
        Ok((0..k).flat_map(move |i| (i + 1..=k).map(move |j| self.slice(i, j))))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.syllables.first(), self.syllables.last()) {
            (Some(f), Some(l)) => self.syllables.len() == 1 || f.letter != l.letter,
            _ => true,
        }
    }
}

fn push_block(out: &mut Vec<Syllable>, letter: Letter, exp: i64) {
    if exp == 0 {
        return;
    }
    match out.last_mut() {
        Some(last) if last.letter == letter => {
            last.exp += exp;
            if last.exp == 0 {
                out.pop();
            }
        }
        _ => out.push(Syllable::new(letter, exp)),
    }
}

/// Reduces a letter sequence given as `(letter, ±1)` pairs.
pub fn reduce<I: IntoIterator<Item = (Letter, i64)>>(raw: I) -> Word {
    Word::from_blocks(raw)
}

pub fn syllable_count(w: &Word) -> usize {
    w.syllable_count()
}

pub fn invert_exponents(w: &Word) -> Word {
    w.invert_exponents()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (k, s) in self.syllables.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if s.exp == 1 {
                write!(f, "{}", s.letter.symbol())?;
            } else {
                write!(f, "{}^{}", s.letter.symbol(), s.exp)?;
            }
        }
        Ok(())
    }
}

struct WordParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> WordParser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(alloc::format!("{what} at byte {} in `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        if self.pos < bytes.len() && (bytes[self.pos] == b'-' || bytes[self.pos] == b'+') {
            self.pos += 1;
        }
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let e: i64 = self.src[start..self.pos].parse().map_err(|_| self.err("bad exponent"))?;
        if e == 0 {
            return Err(self.err("zero exponent"));
        }
        Ok(e)
    }

    fn sequence(&mut self, nested: bool) -> Result<Word> {
        let mut word = Word::identity();
        loop {
            match self.peek() {
                None => {
                    if nested {
                        return Err(self.err("unclosed parenthesis"));
                    }
                    return Ok(word);
                }
                Some(b')') => {
                    if !nested {
                        return Err(self.err("unexpected `)`"));
                    }
                    return Ok(word);
                }
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.sequence(true)?;
                    self.pos += 1; // ')'
                    let e = self.exponent()?;
                    let base = if e < 0 { inner.inverse() } else { inner };
                    let n = u32::try_from(e.unsigned_abs()).map_err(|_| self.err("power too large"))?;
                    word = word.concat(&base.pow(n));
                }
                Some(c @ (b'a' | b'b')) => {
                    self.pos += 1;
                    let letter = if c == b'a' { Letter::A } else { Letter::B };
                    let e = self.exponent()?;
                    word = word.concat(&Word::from_blocks([(letter, e)]));
                }
                Some(b'1') if !nested && word.is_empty() => {
                    self.pos += 1;
                    if self.peek().is_some() {
                        return Err(self.err("trailing input after identity"));
                    }
                    return Ok(word);
                }
                Some(_) => return Err(self.err("unexpected character")),
            }
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Whitespace-separated `a`, `b` tokens with optional `^<int>`; also
    /// accepts `( ... )^<int>` powers and `1` for the identity.
    fn from_str(s: &str) -> Result<Self> {
        WordParser { src: s, pos: 0 }.sequence(false)
    }
}

/// Membership oracle for a set of forbidden words.
pub trait WordPredicate {
    fn contains(&self, w: &Word) -> bool;
}

impl<F: Fn(&Word) -> bool> WordPredicate for F {
    fn contains(&self, w: &Word) -> bool {
        self(w)
    }
}

/// A finite forbidden set.
#[derive(Clone, Debug, Default)]
pub struct WordSet(pub BTreeSet<Word>);

impl WordSet {
    pub fn new<I: IntoIterator<Item = Word>>(words: I) -> Self {
        WordSet(words.into_iter().collect())
    }
}

impl WordPredicate for WordSet {
    fn contains(&self, w: &Word) -> bool {
        self.0.contains(w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PieceTag {
    /// The piece lies in the forbidden set.
    W,
    /// The piece avoids the forbidden set entirely.
    F,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub pieces: Vec<(Word, PieceTag)>,
}

impl Decomposition {
    pub fn w_count(&self) -> usize {
        self.pieces.iter().filter(|(_, t)| *t == PieceTag::W).count()
    }

    pub fn f_count(&self) -> usize {
        self.pieces.len() - self.w_count()
    }

    pub fn concatenation(&self) -> Word {
        self.pieces.iter().fold(Word::identity(), |acc, (p, _)| acc.concat(p))
    }
}

/// `in_w[i][j]` / `avoids[i][j]` for the exact subword of syllables `i..j`.
struct SubwordTable {
    in_w: Vec<Vec<bool>>,
    avoids: Vec<Vec<bool>>,
}

impl SubwordTable {
    fn build(w: &Word, pred: &dyn WordPredicate) -> Self {
        let k = w.syllable_count();
        let mut in_w = vec![vec![false; k + 1]; k + 1];
        let mut has_w = vec![vec![false; k + 1]; k + 1];
        for len in 1..=k {
            for i in 0..=k - len {
                let j = i + len;
                in_w[i][j] = pred.contains(&w.slice(i, j));
                has_w[i][j] = in_w[i][j] || (len > 1 && (has_w[i + 1][j] || has_w[i][j - 1]));
            }
        }
        let avoids = has_w.iter().map(|row| row.iter().map(|h| !h).collect()).collect();
        SubwordTable { in_w, avoids }
    }
}

/// Computes an F(W)-decomposition of a nonempty word that maximises the
/// number of W-pieces and, among those, minimises the number of F-pieces.
/// Ties prefer a W-piece over an F-piece at the leftmost position, then the
/// shorter piece.
pub fn fw_decompose(w: &Word, pred: &dyn WordPredicate) -> Result<Decomposition> {
    if w.is_empty() {
        return Err(Error::invalid("decomposition of the empty word"));
    }
    let k = w.syllable_count();
    let table = SubwordTable::build(w, pred);

    // best[p][prev_f] = (w_count, f_count, next_end, tag) for the suffix at p.
    type Cell = Option<(usize, usize, usize, PieceTag)>;
    let better = |cand: (usize, usize), cur: (usize, usize)| {
        cand.0 > cur.0 || (cand.0 == cur.0 && cand.1 < cur.1)
    };
    let mut best: Vec<[Cell; 2]> = vec![[None, None]; k + 1];
    let mut score: Vec<[Option<(usize, usize)>; 2]> = vec![[None, None]; k + 1];
    score[k] = [Some((0, 0)), Some((0, 0))];
    for p in (0..k).rev() {
        for prev_f in [false, true] {
            let mut chosen: Cell = None;
            let mut chosen_score: Option<(usize, usize)> = None;
            for tag in [PieceTag::W, PieceTag::F] {
                for j in p + 1..=k {
                    let ok = match tag {
                        PieceTag::W => table.in_w[p][j],
                        PieceTag::F => !prev_f && table.avoids[p][j],
                    };
                    if !ok {
                        continue;
                    }
                    let Some(rest) = score[j][usize::from(tag == PieceTag::F)] else {
                        continue;
                    };
                    let cand = match tag {
                        PieceTag::W => (rest.0 + 1, rest.1),
                        PieceTag::F => (rest.0, rest.1 + 1),
                    };
                    if chosen_score.is_none_or(|cur| better(cand, cur)) {
                        chosen_score = Some(cand);
                        chosen = Some((cand.0, cand.1, j, tag));
                    }
                }
            }
            best[p][usize::from(prev_f)] = chosen;
            score[p][usize::from(prev_f)] = chosen_score;
        }
    }

    let mut pieces = Vec::new();
    let mut p = 0;
    let mut prev_f = false;
    while p < k {
        let (_, _, j, tag) = best[p][usize::from(prev_f)]
            .ok_or_else(|| Error::invalid("no decomposition found"))?;
        pieces.push((w.slice(p, j), tag));
        prev_f = tag == PieceTag::F;
        p = j;
    }
    Ok(Decomposition { pieces })
}

/// Checks the two defining properties of an F(W)-decomposition of `w`.
pub fn is_valid_decomposition(w: &Word, d: &Decomposition, pred: &dyn WordPredicate) -> bool {
    if d.pieces.is_empty() || d.concatenation() != *w {
        return false;
    }
    // Pieces must be exact subwords: syllable counts add up.
    let total: usize = d.pieces.iter().map(|(p, _)| p.syllable_count()).sum();
    if total != w.syllable_count() {
        return false;
    }
    for (idx, (piece, tag)) in d.pieces.iter().enumerate() {
        if piece.is_empty() {
            return false;
        }
        match tag {
            PieceTag::W => {
                if !pred.contains(piece) {
                    return false;
                }
            }
            PieceTag::F => {
                let forbidden = piece.exact_subwords().map(|mut it| it.any(|s| pred.contains(&s)));
                if forbidden != Ok(false) {
                    return false;
                }
                if let Some((_, PieceTag::F)) = d.pieces.get(idx + 1) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every syllable is `a^{±1}` or `b^{±1}`.
pub fn is_in_a(w: &Word) -> bool {
    w.syllables.iter().all(|s| s.exp.abs() == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BClass {
    NotMember,
    MemberOfB,
    MemberOfBInverse,
}

/// Classifies against the alternating family of `a` and `b^-1` (and its
/// inverse family of `a^-1` and `b`).
pub fn is_in_b(w: &Word) -> BClass {
    if w.is_empty() {
        return BClass::NotMember;
    }
    let sign = |s: &Syllable| match s.letter {
        Letter::A => s.exp,
        Letter::B => -s.exp,
    };
    if w.syllables.iter().all(|s| sign(s) == 1) {
        BClass::MemberOfB
    } else if w.syllables.iter().all(|s| sign(s) == -1) {
        BClass::MemberOfBInverse
    } else {
        BClass::NotMember
    }
}

/// The alternating `a`, `b^-1` word with `syllables` syllables starting at
/// `first`.
pub fn b_word(first: Letter, syllables: usize) -> Word {
    let mut letter = first;
    let mut out = Vec::with_capacity(syllables);
    for _ in 0..syllables {
        let exp = if letter == Letter::A { 1 } else { -1 };
        out.push(Syllable::new(letter, exp));
        letter = letter.other();
    }
    Word { syllables: out }
}

/// Members of the family with at most `max_syllables` syllables, ordered by
/// syllable count, `a`-initial first.
pub fn enumerate_b(max_syllables: usize) -> Result<Vec<Word>> {
    if max_syllables == 0 {
        return Err(Error::invalid("max_syllables must be >= 1"));
    }
    Ok((1..=max_syllables)
        .flat_map(|s| [b_word(Letter::A, s), b_word(Letter::B, s)])
        .collect())
}

/// All words with every exponent ±1 and exactly `syllables` syllables,
/// optionally restricted to a first letter and a first exponent.
pub fn enumerate_a_level(syllables: usize, first_exp_positive_only: bool) -> Vec<Word> {
    let mut out = Vec::new();
    if syllables == 0 {
        return out;
    }
    for first in [Letter::A, Letter::B] {
        for mask in 0u64..(1u64 << syllables) {
            if first_exp_positive_only && mask & 1 == 1 {
                continue;
            }
            let mut letter = first;
            let mut syl = Vec::with_capacity(syllables);
            for k in 0..syllables {
                let exp = if (mask >> k) & 1 == 1 { -1 } else { 1 };
                syl.push(Syllable::new(letter, exp));
                letter = letter.other();
            }
            out.push(Word { syllables: syl });
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PowerKind {
    /// `(a b^-1)^k`
    AbInv,
    /// `(a^-1 b)^k`
    AInvB,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremForm {
    Power(PowerKind),
    Alternating,
    None,
}

/// Structured-subword data of a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormReport {
    /// Largest `k` with an exact subword `(a b^-1)^k` or `(a^-1 b)^k`
    /// (ties go to `(a b^-1)`); `None` when `k = 0`.
    pub power: Option<(PowerKind, usize)>,
    /// Syllable count of the longest exact subword with all exponents ±1.
    pub alternating: usize,
}

impl FormReport {
    /// Power form when present, otherwise the alternating form.
    pub fn primary(&self) -> (TheoremForm, usize) {
        match self.power {
            Some((kind, k)) => (TheoremForm::Power(kind), k),
            None if self.alternating > 0 => (TheoremForm::Alternating, self.alternating),
            None => (TheoremForm::None, 0),
        }
    }

    pub fn power_exponent(&self) -> usize {
        self.power.map_or(0, |(_, k)| k)
    }
}

pub fn extract_theorem_form(w: &Word) -> FormReport {
    let syl = &w.syllables;
    let mut best: Option<(PowerKind, usize)> = None;
    for (kind, first) in [(PowerKind::AbInv, Syllable::a(1)), (PowerKind::AInvB, Syllable::a(-1))] {
        let second = Syllable::new(Letter::B, -first.exp);
        let mut i = 0;
        while i < syl.len() {
            let mut pairs = 0;
            let mut j = i;
            while j + 1 < syl.len() && syl[j] == first && syl[j + 1] == second {
                pairs += 1;
                j += 2;
            }
            if pairs > 0 && best.is_none_or(|(_, k)| pairs > k) {
                best = Some((kind, pairs));
            }
            i += 1;
        }
    }
    let mut alternating = 0;
    let mut run = 0;
    for s in syl {
        if s.exp.abs() == 1 {
            run += 1;
            alternating = alternating.max(run);
        } else {
            run = 0;
        }
    }
    FormReport { power: best, alternating }
}

impl fmt::Display for PieceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PieceTag::W => write!(f, "W"),
            PieceTag::F => write!(f, "F"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(reduce([(Letter::A, 1), (Letter::A, -1)]).is_empty());
        let r = reduce([(Letter::A, 1), (Letter::A, 1), (Letter::B, 1), (Letter::B, 1), (Letter::A, -1)]);
        assert_eq!(r.syllables(), &[Syllable::a(2), Syllable::b(2), Syllable::a(-1)]);
        let r = reduce([(Letter::B, -1), (Letter::B, 1), (Letter::A, 1)]);
        assert_eq!(r.syllables(), &[Syllable::a(1)]);
    }

    #[test]
    fn syllable_count_examples() {
        assert_eq!(syllable_count(&w("a^3 b^-1 a")), 3);
        assert_eq!(syllable_count(&Word::identity()), 0);
        assert_eq!(syllable_count(&w("(a b^-1)^5")), 10);
    }

    #[test]
    fn parser() {
        assert_eq!(w("a^3 b^-1 a").to_string(), "a^3 b^-1 a");
        assert_eq!(w("(a b^-1)^2"), w("a b^-1 a b^-1"));
        assert_eq!(w("(a b)^-1"), w("b^-1 a^-1"));
        assert_eq!(w("a a^-1"), Word::identity());
        assert_eq!(w("1"), Word::identity());
        assert!("a^0".parse::<Word>().is_err());
        assert!("a c".parse::<Word>().is_err());
        assert!("(a b".parse::<Word>().is_err());
        assert!("a b)".parse::<Word>().is_err());
    }

    #[test]
    fn exact_subword_examples() {
        let subs: Vec<Word> = w("a b^-1").exact_subwords().unwrap().collect();
        assert_eq!(subs, vec![w("a"), w("a b^-1"), w("b^-1")]);
        assert_eq!(w("a^2 b").exact_subwords().unwrap().count(), 3);
        assert_eq!(w("a b a^-1 b").exact_subwords().unwrap().count(), 10);
        assert!(Word::identity().exact_subwords().is_err());
    }

    #[test]
    fn decomposition_examples() {
        let forbid = WordSet::new([w("b^2")]);
        let d = fw_decompose(&w("a b^2 a"), &forbid).unwrap();
        assert_eq!(d.pieces, vec![(w("a"), PieceTag::F), (w("b^2"), PieceTag::W), (w("a"), PieceTag::F)]);

        let empty = WordSet::default();
        let d = fw_decompose(&w("a b^3 a^-2"), &empty).unwrap();
        assert_eq!(d.pieces, vec![(w("a b^3 a^-2"), PieceTag::F)]);

        // `a` is not an exact subword of `a^3`.
        let forbid_a = WordSet::new([w("a")]);
        let d = fw_decompose(&w("a^3"), &forbid_a).unwrap();
        assert_eq!(d.pieces, vec![(w("a^3"), PieceTag::F)]);

        assert!(fw_decompose(&Word::identity(), &empty).is_err());
    }

    #[test]
    fn set_a_examples() {
        assert!(is_in_a(&w("a b a^-1 b")));
        assert!(!is_in_a(&w("a^2 b")));
        assert!(is_in_a(&Word::identity()));
    }

    #[test]
    fn set_b_examples() {
        assert_eq!(is_in_b(&w("a b^-1 a b^-1")), BClass::MemberOfB);
        assert_eq!(is_in_b(&w("b a^-1")), BClass::MemberOfBInverse);
        assert_eq!(is_in_b(&w("a b")), BClass::NotMember);
    }

    #[test]
    fn enumerate_b_examples() {
        assert_eq!(enumerate_b(1).unwrap(), vec![w("a"), w("b^-1")]);
        assert_eq!(enumerate_b(2).unwrap(), vec![w("a"), w("b^-1"), w("a b^-1"), w("b^-1 a")]);
        let three = enumerate_b(3).unwrap();
        assert_eq!(&three[4..], &[w("a b^-1 a"), w("b^-1 a b^-1")]);
        assert!(enumerate_b(0).is_err());
    }

    #[test]
    fn enumerate_b_disjoint_from_inverses() {
        let words = enumerate_b(12).unwrap();
        for x in &words {
            assert_eq!(is_in_b(x), BClass::MemberOfB);
            assert_eq!(is_in_b(&x.inverse()), BClass::MemberOfBInverse);
            assert!(!words.contains(&x.inverse()));
        }
    }

    #[test]
    fn invert_exponent_examples() {
        assert_eq!(invert_exponents(&w("a^2 b^-1")), w("a^-2 b"));
        assert_eq!(invert_exponents(&Word::identity()), Word::identity());
        assert_eq!(invert_exponents(&w("a b^-1 a b^-1")), w("a^-1 b a^-1 b"));
    }

    #[test]
    fn theorem_form_examples() {
        assert_eq!(extract_theorem_form(&w("(a b^-1)^6")).primary(), (TheoremForm::Power(PowerKind::AbInv), 6));
        let mixed = Word::from_syllables(vec![Syllable::a(4), Syllable::b(-1), Syllable::a(1), Syllable::b(3)]).unwrap();
        let rep = extract_theorem_form(&mixed);
        assert_eq!(rep.power, None);
        assert_eq!(rep.primary(), (TheoremForm::Alternating, 2));
        assert_eq!(
            extract_theorem_form(&w("b a^-1 b a^-1 b")).primary(),
            (TheoremForm::Power(PowerKind::AInvB), 2)
        );
    }

    #[test]
    fn theorem_form_tie_prefers_ab_inverse() {
        let rep = extract_theorem_form(&w("a b^-1 a^2 b^2 a^-1 b"));
        assert_eq!(rep.power, Some((PowerKind::AbInv, 1)));
    }

    #[test]
    fn enumerate_a_counts() {
        assert_eq!(enumerate_a_level(3, false).len(), 16);
        assert_eq!(enumerate_a_level(3, true).len(), 8);
        assert!(enumerate_a_level(4, false).iter().all(is_in_a));
    }
}
