//! Free groups of finite rank and the bi-order induced by the Magnus
//! expansion `x_i -> 1 + X_i` into truncated noncommutative power series.
//!
//! The sign of a word is the sign of the first nonzero coefficient of its
//! expansion minus one, with monomials ordered by total degree and then
//! lexicographically by variable index. The least such degree also computes
//! where the word sits in the lower central series filtration.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::order::{OrderOracle, SampleSet, Sign};
use crate::words;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MagnusError {
    #[error("expansion cap must be at least 1, got {0}")]
    CapTooSmall(usize),
    #[error("letter {letter} out of band for rank {rank}")]
    LetterOutOfBand { letter: i32, rank: usize },
    #[error("expansion stayed trivial up to the degree ceiling {0}")]
    DegreeCeilingExceeded(usize),
    #[error("the identity word has no sign or filtration degree")]
    IdentityWord,
}

/// Caps tried by sign extraction: doubling from 2 up to this ceiling. A
/// reduced nonempty word always shows a nonzero term long before this.
pub const DEGREE_CEILING: usize = 64;

/// A freely reduced word in the free group of the given rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FreeWord {
    pub rank: usize,
    letters: Vec<i32>,
}

impl<'de> serde::Deserialize<'de> for FreeWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            rank: usize,
            letters: Vec<i32>,
        }
        let raw = Raw::deserialize(deserializer)?;
        FreeWord::new(raw.rank, raw.letters).map_err(serde::de::Error::custom)
    }
}

impl FreeWord {
    /// Reduce arbitrary in-band letters into a word.
    pub fn new(rank: usize, letters: Vec<i32>) -> Result<Self, MagnusError> {
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize > rank {
                return Err(MagnusError::LetterOutOfBand { letter: l, rank });
            }
        }
        Ok(FreeWord { rank, letters: words::free_reduce(letters) })
    }

    pub fn identity(rank: usize) -> Self {
        FreeWord { rank, letters: Vec::new() }
    }

    pub fn generator(rank: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= rank);
        FreeWord { rank, letters: vec![i as i32] }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord { rank: self.rank, letters: words::invert(&self.letters) }
    }

    pub fn concat(&self, other: &FreeWord) -> Self {
        assert_eq!(self.rank, other.rank);
        FreeWord { rank: self.rank, letters: words::concat(&self.letters, &other.letters) }
    }

    pub fn commutator(u: &FreeWord, v: &FreeWord) -> Self {
        assert_eq!(u.rank, v.rank);
        FreeWord { rank: u.rank, letters: words::commutator(&u.letters, &v.letters) }
    }

    pub fn to_token_string(&self) -> String {
        self.letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
    }
}

/// A word in the variables `X_1..X_r`, compared by total degree and then
/// lexicographically by variable index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An integer-coefficient noncommutative polynomial truncated beyond total
/// degree `cap`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusSeries {
    pub rank: usize,
    pub cap: usize,
    pub terms: BTreeMap<Monomial, i128>,
}

impl MagnusSeries {
    pub fn one(rank: usize, cap: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(Vec::new()), 1);
        MagnusSeries { rank, cap, terms }
    }

    fn insert(&mut self, mono: Monomial, coef: i128) {
        use std::collections::btree_map::Entry;
        if coef == 0 || mono.degree() > self.cap {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coef;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coef);
            }
        }
    }

    pub fn mul(&self, other: &MagnusSeries) -> MagnusSeries {
        assert_eq!(self.rank, other.rank);
        assert_eq!(self.cap, other.cap);
        let mut out = MagnusSeries { rank: self.rank, cap: self.cap, terms: BTreeMap::new() };
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                if ma.degree() + mb.degree() <= self.cap {
                    let mut m = ma.0.clone();
                    m.extend_from_slice(&mb.0);
                    out.insert(Monomial(m), ca * cb);
                }
            }
        }
        out
    }

    /// Terms of `self - 1` in monomial order.
    pub fn augmentation_terms(&self) -> impl Iterator<Item = (&Monomial, i128)> {
        self.terms.iter().filter(|(m, _)| m.degree() > 0).map(|(m, &c)| (m, c))
    }

    pub fn is_one(&self) -> bool {
        self.augmentation_terms().next().is_none()
            && self.terms.get(&Monomial(Vec::new())) == Some(&1)
    }
}

/// JSON form: `{"cap": d, "terms": [{"mono": [..], "coef": c}, ..]}` in
/// monomial order.
impl Serialize for MagnusSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        struct Term<'a> {
            mono: &'a [u8],
            coef: i128,
        }
        let terms: Vec<Term> =
            self.terms.iter().map(|(m, &c)| Term { mono: &m.0, coef: c }).collect();
        let mut s = serializer.serialize_struct("MagnusSeries", 2)?;
        s.serialize_field("cap", &self.cap)?;
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

fn letter_series(letter: i32, rank: usize, cap: usize) -> MagnusSeries {
    let var = letter.unsigned_abs() as u8;
    let mut s = MagnusSeries { rank, cap, terms: BTreeMap::new() };
    if letter > 0 {
        // x -> 1 + X
        s.terms.insert(Monomial(Vec::new()), 1);
        s.terms.insert(Monomial(vec![var]), 1);
    } else {
        // x^{-1} -> 1 - X + X^2 - ... up to the cap
        let mut sign = 1i128;
        for d in 0..=cap {
            s.terms.insert(Monomial(vec![var; d]), sign);
            sign = -sign;
        }
    }
    s
}

/// Expand a word as the truncated product of its per-letter series.
pub fn magnus_expand(w: &FreeWord, cap: usize) -> Result<MagnusSeries, MagnusError> {
    if cap < 1 {
        return Err(MagnusError::CapTooSmall(cap));
    }
    let mut acc = MagnusSeries::one(w.rank, cap);
    for &l in &w.letters {
        acc = acc.mul(&letter_series(l, w.rank, cap));
    }
    Ok(acc)
}

fn leading_term(w: &FreeWord) -> Result<(Monomial, i128), MagnusError> {
    if w.is_empty() {
        return Err(MagnusError::IdentityWord);
    }
    let mut cap = 2;
    loop {
        let series = magnus_expand(w, cap)?;
        if let Some((m, c)) = series.augmentation_terms().next() {
            return Ok((m.clone(), c));
        }
        if cap >= DEGREE_CEILING {
            return Err(MagnusError::DegreeCeilingExceeded(DEGREE_CEILING));
        }
        cap *= 2;
    }
}

/// Sign of the first nonzero coefficient of the expansion minus one; `Zero`
/// exactly for the empty word.
pub fn magnus_sign(w: &FreeWord) -> Result<Sign, MagnusError> {
    if w.is_empty() {
        return Ok(Sign::Zero);
    }
    let (_, c) = leading_term(w)?;
    Ok(if c > 0 { Sign::Positive } else { Sign::Negative })
}

/// `u < v` iff `u^{-1} v` has positive sign.
pub fn magnus_compare(u: &FreeWord, v: &FreeWord) -> Result<Ordering, MagnusError> {
    assert_eq!(u.rank, v.rank);
    let w = u.inverse().concat(v);
    Ok(match magnus_sign(&w)? {
        Sign::Zero => Ordering::Equal,
        Sign::Positive => Ordering::Less,
        Sign::Negative => Ordering::Greater,
    })
}

/// Depth of `w` in the degree filtration: the least total degree with a
/// nonzero term in the expansion minus one.
pub fn lcs_degree(w: &FreeWord) -> Result<usize, MagnusError> {
    let (m, _) = leading_term(w)?;
    Ok(m.degree())
}

/// The Magnus bi-order as a comparison oracle.
#[derive(Debug, Clone)]
pub struct MagnusOrder {
    pub rank: usize,
}

impl OrderOracle for MagnusOrder {
    type Elem = FreeWord;

    fn compare(&self, a: &FreeWord, b: &FreeWord) -> Ordering {
        magnus_compare(a, b).expect("magnus comparison failed")
    }
    fn multiply(&self, a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.concat(b)
    }
    fn invert(&self, a: &FreeWord) -> FreeWord {
        a.inverse()
    }
    fn identity(&self) -> FreeWord {
        FreeWord::identity(self.rank)
    }
    fn describe(&self, a: &FreeWord) -> String {
        a.to_token_string()
    }
}

/// Seeded random freely reduced words: length uniform in `1..=max_len`, each
/// letter uniform among those not cancelling the previous one.
pub fn sample_words(seed: u64, count: usize, rank: usize, max_len: usize) -> SampleSet<FreeWord> {
    SampleSet::from_fn(seed, count, |rng| {
        let len = rng.gen_range(1..=max_len);
        let mut letters: Vec<i32> = Vec::with_capacity(len);
        for _ in 0..len {
            loop {
                let idx = rng.gen_range(1..=rank) as i32;
                let l = if rng.gen_bool(0.5) { idx } else { -idx };
                if letters.last() != Some(&-l) {
                    letters.push(l);
                    break;
                }
            }
        }
        FreeWord { rank, letters }
    })
}
