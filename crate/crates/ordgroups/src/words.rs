//! Words over a signed-integer alphabet.
//!
//! A letter is a nonzero `i32`: `k > 0` is the `k`-th generator, `k < 0` its
//! inverse. Braid words, free-group words and presentation words all share
//! this encoding, so the elementary rewriting helpers live here.

/// Free reduction: repeatedly delete adjacent `k, -k` pairs.
pub fn free_reduce(letters: impl IntoIterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for l in letters {
        debug_assert!(l != 0, "zero is not a letter");
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// The formal inverse (reverse the word, negate every letter).
pub fn invert(letters: &[i32]) -> Vec<i32> {
    letters.iter().rev().map(|&l| -l).collect()
}

/// Concatenate two words and freely reduce the seam.
pub fn concat(a: &[i32], b: &[i32]) -> Vec<i32> {
    free_reduce(a.iter().chain(b.iter()).copied())
}

/// `w^k` for any integer `k`, freely reduced.
pub fn power(w: &[i32], k: i32) -> Vec<i32> {
    let base = if k < 0 { invert(w) } else { w.to_vec() };
    let mut out = Vec::new();
    for _ in 0..k.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    free_reduce(out)
}

/// `u v u^{-1} v^{-1}`, freely reduced.
pub fn commutator(u: &[i32], v: &[i32]) -> Vec<i32> {
    let mut w = u.to_vec();
    w.extend_from_slice(v);
    w.extend(invert(u));
    w.extend(invert(v));
    free_reduce(w)
}

/// All cyclic rotations of a word, without deduplication.
pub fn rotations(w: &[i32]) -> Vec<Vec<i32>> {
    (0..w.len().max(1))
        .map(|s| {
            let mut r = Vec::with_capacity(w.len());
            r.extend_from_slice(&w[s.min(w.len())..]);
            r.extend_from_slice(&w[..s.min(w.len())]);
            r
        })
        .collect()
}

/// Per-generator exponent sums; `rank` entries.
pub fn exponent_sums(w: &[i32], rank: usize) -> Vec<i64> {
    let mut e = vec![0i64; rank];
    for &l in w {
        let idx = (l.unsigned_abs() as usize) - 1;
        e[idx] += if l > 0 { 1 } else { -1 };
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduce_cancels_adjacent_pairs() {
        assert_eq!(free_reduce([1, -1]), Vec::<i32>::new());
        assert_eq!(free_reduce([1, 2, -2, 1]), vec![1, 1]);
        assert_eq!(free_reduce([1, 2, -1, -2]), vec![1, 2, -1, -2]);
    }

    #[test]
    fn inverse_is_two_sided() {
        let w = vec![1, 2, -1, 3];
        assert!(concat(&w, &invert(&w)).is_empty());
        assert!(concat(&invert(&w), &w).is_empty());
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(w in proptest::collection::vec(
            prop_oneof![Just(1i32), Just(-1), Just(2), Just(-2)], 0..40))
        {
            let once = free_reduce(w.iter().copied());
            let twice = free_reduce(once.iter().copied());
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn power_adds_exponents(w in proptest::collection::vec(
            prop_oneof![Just(1i32), Just(-1), Just(2), Just(-2)], 1..8), k in 0i32..4)
        {
            let lhs = power(&w, k + 1);
            let rhs = concat(&power(&w, k), &free_reduce(w.iter().copied()));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
