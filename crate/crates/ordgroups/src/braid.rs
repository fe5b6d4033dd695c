//! Braid groups on Artin generators: word arithmetic, the permutation
//! homomorphism, handle reduction, and the left order it decides.
//!
//! A word is a sequence of nonzero integers; `k` encodes the generator that
//! crosses strands `k` and `k+1`, `-k` its inverse. Handle reduction rewrites
//! a word into one with no handles, which is empty exactly when the braid is
//! trivial and otherwise exposes the least generator index with a uniform
//! sign. Comparing `u^{-1}v` this way yields a strict total left-invariant
//! order, which in turn feeds the prime-knot test on braid closures.

use std::cmp::Ordering;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::{OrderOracle, SampleSet};
use crate::words;

/// Guard against runaway reductions; reduction always terminates, the cap
/// only catches implementation bugs.
pub const DEFAULT_STEP_CAP: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BraidError {
    #[error("malformed braid word token: {0:?}")]
    MalformedWord(String),
    #[error("generator index {index} out of band for {strands} strands")]
    IndexOutOfBand { index: i32, strands: usize },
    #[error("braid words live in different groups: {0} vs {1} strands")]
    StrandMismatch(usize, usize),
    #[error("handle reduction exceeded the step cap of {0}")]
    StepCapExceeded(usize),
    #[error("a braid group needs at least 2 strands, got {0}")]
    BadStrandCount(usize),
}

/// A word in the Artin generators of the braid group on `strands` strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::BadStrandCount(strands));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(BraidError::IndexOutOfBand { index: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn inverse(&self) -> Self {
        BraidWord { strands: self.strands, letters: words::invert(&self.letters) }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<Self, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        Ok(BraidWord { strands: self.strands, letters: words::concat(&self.letters, &other.letters) })
    }

    pub fn power(&self, k: i32) -> Self {
        BraidWord { strands: self.strands, letters: words::power(&self.letters, k) }
    }

    pub fn free_reduced(&self) -> Self {
        BraidWord { strands: self.strands, letters: words::free_reduce(self.letters.iter().copied()) }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Signed-integer token form, e.g. "1 -2".
    pub fn to_token_string(&self) -> String {
        self.letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
    }
}

/// Parse whitespace-separated signed generator indices.
pub fn parse_braid(text: &str, strands: usize) -> Result<BraidWord, BraidError> {
    if strands < 2 {
        return Err(BraidError::BadStrandCount(strands));
    }
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        let l: i32 = tok.parse().map_err(|_| BraidError::MalformedWord(tok.to_string()))?;
        if l == 0 {
            return Err(BraidError::MalformedWord(tok.to_string()));
        }
        if l.unsigned_abs() as usize >= strands {
            return Err(BraidError::IndexOutOfBand { index: l, strands });
        }
        letters.push(l);
    }
    Ok(BraidWord { strands, letters })
}

/// A permutation of `{1..n}`, stored 0-based; `images[i]` is where start
/// position `i+1` ends up (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 1-based image vector, the external form.
    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&v| other.images[v]).collect() }
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if !seen[start] {
                cycles += 1;
                let mut at = start;
                while !seen[at] {
                    seen[at] = true;
                    at = self.images[at];
                }
            }
        }
        cycles
    }
}

/// Trace each start position through the word, left to right.
pub fn permutation(b: &BraidWord) -> Permutation {
    let mut images: Vec<usize> = (0..b.strands).collect();
    // images[s] = current position of the strand that started at s
    for &l in &b.letters {
        let i = (l.unsigned_abs() as usize) - 1;
        for v in images.iter_mut() {
            if *v == i {
                *v += 1;
            } else if *v == i + 1 {
                *v -= 1;
            }
        }
    }
    Permutation { images }
}

/// What a fully reduced word reveals about the braid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Classification {
    Trivial,
    Positive { index: usize },
    Negative { index: usize },
}

/// A handle-free word equal to the input, its classification, and the number
/// of reduction steps that were applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    pub word: BraidWord,
    pub classification: Classification,
    pub steps: usize,
}

/// Locate the leftmost handle that contains no nested handle.
///
/// A handle is a subword `s e ... -e` flanked by one generator index `i` with
/// opposite signs, whose interior uses only indices strictly above `i`.
fn find_reducible_handle(letters: &[i32]) -> Option<(usize, usize)> {
    let mut handles: Vec<(usize, usize)> = Vec::new();
    'outer: for p in 0..letters.len() {
        let a = letters[p];
        let i = a.unsigned_abs();
        for (off, &b) in letters[p + 1..].iter().enumerate() {
            let j = b.unsigned_abs();
            if j < i {
                continue 'outer;
            }
            if j == i {
                if b == -a {
                    handles.push((p, p + 1 + off));
                }
                continue 'outer;
            }
        }
    }
    handles
        .iter()
        .copied()
        .find(|&(p, q)| !handles.iter().any(|&(p2, q2)| (p2, q2) != (p, q) && p < p2 && q2 < q))
}

/// Delete the flanking pair and push the handle index through the interior:
/// every interior letter of index `i+1` with exponent `d` becomes
/// `(i+1)^{-e} i^{d} (i+1)^{e}`.
fn reduce_handle(letters: &[i32], p: usize, q: usize) -> Vec<i32> {
    let a = letters[p];
    let i = a.unsigned_abs() as i32;
    let e = a.signum();
    let mut out = Vec::with_capacity(letters.len() + 2 * (q - p));
    out.extend_from_slice(&letters[..p]);
    for &c in &letters[p + 1..q] {
        if c.unsigned_abs() as i32 == i + 1 {
            let d = c.signum();
            out.push(-e * (i + 1));
            out.push(d * i);
            out.push(e * (i + 1));
        } else {
            out.push(c);
        }
    }
    out.extend_from_slice(&letters[q + 1..]);
    words::free_reduce(out)
}

fn classify(letters: &[i32], strands: usize) -> Classification {
    if letters.is_empty() {
        return Classification::Trivial;
    }
    let index = letters.iter().map(|l| l.unsigned_abs() as usize).min().unwrap();
    debug_assert!(index < strands);
    let mut sign = 0i32;
    for &l in letters {
        if l.unsigned_abs() as usize == index {
            debug_assert!(sign == 0 || sign == l.signum(), "handle-free word with mixed signs");
            sign = l.signum();
        }
    }
    if sign > 0 {
        Classification::Positive { index }
    } else {
        Classification::Negative { index }
    }
}

/// Rewrite `b` into an equal handle-free word, deterministically reducing the
/// leftmost handle with no nested handle at every step.
pub fn handle_reduce(b: &BraidWord, step_cap: usize) -> Result<ReductionResult, BraidError> {
    let input_perm = permutation(b);
    let mut letters = words::free_reduce(b.letters.iter().copied());
    let mut steps = 0usize;
    while let Some((p, q)) = find_reducible_handle(&letters) {
        if steps >= step_cap {
            return Err(BraidError::StepCapExceeded(step_cap));
        }
        letters = reduce_handle(&letters, p, q);
        steps += 1;
    }
    let word = BraidWord { strands: b.strands, letters };
    assert_eq!(permutation(&word), input_perm, "handle reduction must preserve the permutation");
    let classification = classify(&word.letters, word.strands);
    Ok(ReductionResult { word, classification, steps })
}

/// Word-problem decision: `u = v` iff `u v^{-1}` reduces to the empty word.
/// Differing permutations give a fast negative.
pub fn braids_equal(u: &BraidWord, v: &BraidWord) -> Result<bool, BraidError> {
    if u.strands != v.strands {
        return Err(BraidError::StrandMismatch(u.strands, v.strands));
    }
    if permutation(u) != permutation(v) {
        return Ok(false);
    }
    let w = u.concat(&v.inverse())?;
    Ok(handle_reduce(&w, DEFAULT_STEP_CAP)?.classification == Classification::Trivial)
}

/// `u < v` iff `u^{-1} v` reduces to an i-positive word.
pub fn dehornoy_compare_with_cap(
    u: &BraidWord,
    v: &BraidWord,
    step_cap: usize,
) -> Result<Ordering, BraidError> {
    if u.strands != v.strands {
        return Err(BraidError::StrandMismatch(u.strands, v.strands));
    }
    let w = u.inverse().concat(v)?;
    Ok(match handle_reduce(&w, step_cap)?.classification {
        Classification::Trivial => Ordering::Equal,
        Classification::Positive { .. } => Ordering::Less,
        Classification::Negative { .. } => Ordering::Greater,
    })
}

pub fn dehornoy_compare(u: &BraidWord, v: &BraidWord) -> Result<Ordering, BraidError> {
    dehornoy_compare_with_cap(u, v, DEFAULT_STEP_CAP)
}

/// Compare `g u g^{-1}` against `g v g^{-1}`; for a fixed `g` this is again a
/// left order.
pub fn conjugate_compare(
    g: &BraidWord,
    u: &BraidWord,
    v: &BraidWord,
) -> Result<Ordering, BraidError> {
    let gi = g.inverse();
    let cu = g.concat(u)?.concat(&gi)?;
    let cv = g.concat(v)?.concat(&gi)?;
    dehornoy_compare(&cu, &cv)
}

/// The half twist: `(1 2 .. n-1)(1 2 .. n-2) .. (1 2)(1)`.
pub fn delta(n: usize) -> Result<BraidWord, BraidError> {
    if n < 2 {
        return Err(BraidError::BadStrandCount(n));
    }
    let mut letters = Vec::with_capacity(n * (n - 1) / 2);
    for row in (1..n).rev() {
        for i in 1..=row {
            letters.push(i as i32);
        }
    }
    Ok(BraidWord { strands: n, letters })
}

/// A braid is pure when its permutation is the identity.
pub fn is_pure(b: &BraidWord) -> bool {
    permutation(b).is_identity()
}

/// Number of components of the closure: cycles of the permutation.
pub fn closure_components(b: &BraidWord) -> usize {
    permutation(b).cycle_count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MnVerdict {
    PrimeNontrivialKnot,
    Inconclusive,
    NotAKnot,
}

/// One-directional primeness test for braid closures: a knot closure whose
/// braid lies beyond the fourth power of the half twist (on either side of
/// the order) is a nontrivial prime knot.
pub fn mn_prime_test(b: &BraidWord) -> Result<MnVerdict, BraidError> {
    if closure_components(b) != 1 {
        return Ok(MnVerdict::NotAKnot);
    }
    let d4 = delta(b.strands)?.power(4);
    if dehornoy_compare(&d4, b)? == Ordering::Less {
        return Ok(MnVerdict::PrimeNontrivialKnot);
    }
    if dehornoy_compare(b, &d4.inverse())? == Ordering::Less {
        return Ok(MnVerdict::PrimeNontrivialKnot);
    }
    Ok(MnVerdict::Inconclusive)
}

/// The Dehornoy order as a comparison oracle.
///
/// The step cap is a bug guard; the oracle panics if it is ever hit rather
/// than silently producing a wrong comparison.
#[derive(Debug, Clone)]
pub struct DehornoyOrder {
    pub strands: usize,
    pub step_cap: usize,
}

impl DehornoyOrder {
    pub fn new(strands: usize) -> Self {
        DehornoyOrder { strands, step_cap: DEFAULT_STEP_CAP }
    }
}

impl OrderOracle for DehornoyOrder {
    type Elem = BraidWord;

    fn compare(&self, a: &BraidWord, b: &BraidWord) -> Ordering {
        dehornoy_compare_with_cap(a, b, self.step_cap).expect("dehornoy comparison failed")
    }
    fn multiply(&self, a: &BraidWord, b: &BraidWord) -> BraidWord {
        a.concat(b).expect("strand mismatch in oracle multiply")
    }
    fn invert(&self, a: &BraidWord) -> BraidWord {
        a.inverse()
    }
    fn identity(&self) -> BraidWord {
        BraidWord::identity(self.strands)
    }
    fn describe(&self, a: &BraidWord) -> String {
        a.to_token_string()
    }
}

/// The conjugate `<_g` of the Dehornoy order: `u <_g v` iff
/// `g u g^{-1} < g v g^{-1}`.
#[derive(Debug, Clone)]
pub struct ConjugateDehornoy {
    pub conjugator: BraidWord,
}

impl OrderOracle for ConjugateDehornoy {
    type Elem = BraidWord;

    fn compare(&self, a: &BraidWord, b: &BraidWord) -> Ordering {
        conjugate_compare(&self.conjugator, a, b).expect("conjugate comparison failed")
    }
    fn multiply(&self, a: &BraidWord, b: &BraidWord) -> BraidWord {
        a.concat(b).expect("strand mismatch in oracle multiply")
    }
    fn invert(&self, a: &BraidWord) -> BraidWord {
        a.inverse()
    }
    fn identity(&self) -> BraidWord {
        BraidWord::identity(self.conjugator.strands)
    }
    fn describe(&self, a: &BraidWord) -> String {
        a.to_token_string()
    }
}

/// Wrapper whose `Ord` is the Dehornoy order, so braid elements can live in
/// ordered collections with exact deduplication.
#[derive(Debug, Clone)]
pub struct OrderedBraid(pub BraidWord);

impl PartialEq for OrderedBraid {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for OrderedBraid {}
impl PartialOrd for OrderedBraid {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for OrderedBraid {
    fn cmp(&self, other: &Self) -> Ordering {
        dehornoy_compare(&self.0, &other.0).expect("dehornoy comparison failed")
    }
}

/// Seeded random words: length uniform in `1..=max_len`, letters uniform over
/// the signed generator indices.
pub fn sample_words(seed: u64, count: usize, strands: usize, max_len: usize) -> SampleSet<BraidWord> {
    SampleSet::from_fn(seed, count, |rng| {
        let len = rng.gen_range(1..=max_len);
        let letters = (0..len)
            .map(|_| {
                let idx = rng.gen_range(1..strands) as i32;
                if rng.gen_bool(0.5) {
                    idx
                } else {
                    -idx
                }
            })
            .collect();
        BraidWord { strands, letters }
    })
}

/// Every word over `{1..strands-1}` with letters in `±band`, lengths
/// `1..=max_len`, in (length, lex) order. The lex order on letters is
/// `1 < -1 < 2 < -2 < ...`.
pub fn enumerate_words(strands: usize, max_len: usize) -> Vec<BraidWord> {
    let mut alphabet = Vec::new();
    for i in 1..strands {
        alphabet.push(i as i32);
        alphabet.push(-(i as i32));
    }
    let mut out = Vec::new();
    let mut layer: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &a in &alphabet {
                let mut nw = w.clone();
                nw.push(a);
                next.push(nw);
            }
        }
        for w in &next {
            out.push(BraidWord { strands, letters: w.clone() });
        }
        layer = next;
    }
    out
}
