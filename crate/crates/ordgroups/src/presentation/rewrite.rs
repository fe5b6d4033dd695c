//! Bounded word-problem approximation: the set of short words reachable from
//! a start word by inserting cyclic rotations of relators or their inverses,
//! with parent links kept so any reachability claim can be replayed as an
//! explicit insertion chain.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::Presentation;
use crate::words;

/// Length, depth and size limits for a ball computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteBounds {
    /// Keep only words that freely reduce to at most this many letters.
    pub max_len: usize,
    /// BFS depth: number of insertions applied.
    pub max_steps: usize,
    /// Hard cap on the number of distinct words explored.
    pub max_words: usize,
}

impl RewriteBounds {
    pub fn new(max_len: usize, max_steps: usize, max_words: usize) -> Self {
        RewriteBounds { max_len, max_steps, max_words }
    }
}

/// One rewrite move: splice `letters` into the current word at `pos`, then
/// freely reduce. `letters` is always a cyclic rotation of a relator or of
/// an inverse relator of the presentation it was built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertStep {
    pub pos: usize,
    pub letters: Vec<i32>,
}

impl InsertStep {
    /// Apply the insertion to a word.
    pub fn apply(&self, word: &[i32]) -> Option<Vec<i32>> {
        if self.pos > word.len() {
            return None;
        }
        let mut spliced = Vec::with_capacity(word.len() + self.letters.len());
        spliced.extend_from_slice(&word[..self.pos]);
        spliced.extend_from_slice(&self.letters);
        spliced.extend_from_slice(&word[self.pos..]);
        Some(words::free_reduce(spliced))
    }
}

/// All words reachable from the start within the bounds, with parent links.
#[derive(Debug, Clone)]
pub struct RewriteBall {
    pub start: Vec<i32>,
    pub words: BTreeSet<Vec<i32>>,
    /// true when the bounds cut the search off before it closed
    pub truncated: bool,
    parents: BTreeMap<Vec<i32>, (Vec<i32>, InsertStep)>,
}

/// One edge of a ball path: source word, the insertion, resulting word.
pub type PathEdge = (Vec<i32>, InsertStep, Vec<i32>);

impl RewriteBall {
    pub fn contains(&self, word: &[i32]) -> bool {
        self.words.contains(word)
    }

    /// Chain of insertions from the start word to a member of the ball.
    pub fn path_to(&self, word: &[i32]) -> Option<Vec<PathEdge>> {
        if !self.contains(word) {
            return None;
        }
        let mut path = Vec::new();
        let mut at = word.to_vec();
        while at != self.start {
            let (prev, step) = self.parents.get(&at)?.clone();
            path.push((prev.clone(), step, at.clone()));
            at = prev;
        }
        path.reverse();
        Some(path)
    }
}

/// All cyclic rotations of every relator and inverse relator, deduplicated.
pub(crate) fn relator_rotations(p: &Presentation) -> Vec<Vec<i32>> {
    let mut set = BTreeSet::new();
    for r in &p.relators {
        for rot in words::rotations(r) {
            set.insert(words::invert(&rot));
            set.insert(rot);
        }
    }
    set.into_iter().collect()
}

/// Breadth-first ball of relator insertions around `start`.
pub fn rewrite_ball(start: &[i32], p: &Presentation, bounds: RewriteBounds) -> RewriteBall {
    let start = words::free_reduce(start.iter().copied());
    let moves = relator_rotations(p);
    let mut ball = RewriteBall {
        start: start.clone(),
        words: BTreeSet::from([start.clone()]),
        truncated: false,
        parents: BTreeMap::new(),
    };
    let mut frontier: VecDeque<Vec<i32>> = VecDeque::from([start]);
    for _ in 0..bounds.max_steps {
        let mut next: VecDeque<Vec<i32>> = VecDeque::new();
        while let Some(word) = frontier.pop_front() {
            for pos in 0..=word.len() {
                for mv in &moves {
                    let step = InsertStep { pos, letters: mv.clone() };
                    let out = step.apply(&word).unwrap();
                    if out.len() > bounds.max_len {
                        ball.truncated = true;
                        continue;
                    }
                    if ball.words.contains(&out) {
                        continue;
                    }
                    if ball.words.len() >= bounds.max_words {
                        ball.truncated = true;
                        continue;
                    }
                    ball.words.insert(out.clone());
                    ball.parents.insert(out.clone(), (word.clone(), step));
                    next.push_back(out);
                }
            }
        }
        if next.is_empty() {
            return ball;
        }
        frontier = next;
    }
    if !frontier.is_empty() {
        ball.truncated = true;
    }
    ball
}

/// One certified step between adjacent words of an equivalence chain. The
/// insertion may be stated in either direction; both certify equality in the
/// presented group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainStep {
    /// `reduce(words[i] with insertion) == words[i+1]`
    Forward,
    /// `reduce(words[i+1] with insertion) == words[i]`
    Backward,
}

/// A replayable witness that the first and last word are equal in the group:
/// consecutive words differ by a single relator-rotation insertion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceChain {
    pub words: Vec<Vec<i32>>,
    pub steps: Vec<(InsertStep, ChainStep)>,
}

impl EquivalenceChain {
    pub fn endpoints(&self) -> (&[i32], &[i32]) {
        (self.words.first().unwrap(), self.words.last().unwrap())
    }

    /// Replay every step; no search involved.
    pub fn verify(&self, p: &Presentation) -> bool {
        if self.words.is_empty() || self.words.len() != self.steps.len() + 1 {
            return false;
        }
        let allowed = relator_rotations(p);
        for (i, (step, dir)) in self.steps.iter().enumerate() {
            if !allowed.contains(&step.letters) {
                return false;
            }
            let (src, dst) = match dir {
                ChainStep::Forward => (&self.words[i], &self.words[i + 1]),
                ChainStep::Backward => (&self.words[i + 1], &self.words[i]),
            };
            match step.apply(src) {
                Some(out) if &out == dst => {}
                _ => return false,
            }
        }
        true
    }
}

fn chain_from_paths(
    u: &[i32],
    v: &[i32],
    meeting: &[i32],
    ball_u: &RewriteBall,
    ball_v: &RewriteBall,
) -> EquivalenceChain {
    let mut chain =
        EquivalenceChain { words: vec![u.to_vec()], steps: Vec::new() };
    for (_, step, to) in ball_u.path_to(meeting).unwrap() {
        chain.steps.push((step, ChainStep::Forward));
        chain.words.push(to);
    }
    // walk v's path backwards: each edge certifies dst from the v side
    let path_v = ball_v.path_to(meeting).unwrap();
    for (from, step, _) in path_v.into_iter().rev() {
        chain.steps.push((step, ChainStep::Backward));
        chain.words.push(from);
    }
    debug_assert_eq!(chain.words.last().unwrap(), &words::free_reduce(v.iter().copied()));
    chain
}

/// Bounded equality test between two words, meeting in the middle between
/// their rewrite balls. `Some(chain)` is a proof of equality; `None` only
/// means the bounds were not enough.
pub fn words_equivalent(
    u: &[i32],
    v: &[i32],
    p: &Presentation,
    bounds: RewriteBounds,
) -> Option<EquivalenceChain> {
    let u = words::free_reduce(u.iter().copied());
    let v = words::free_reduce(v.iter().copied());
    if u == v {
        return Some(EquivalenceChain { words: vec![u], steps: Vec::new() });
    }
    // cheap necessary condition: equal images in the abelianization
    let quotient_matrix = crate::snf::smith_normal_form(&p.exponent_matrix());
    if !abelian_images_equal(&u, &v, p, &quotient_matrix) {
        return None;
    }
    let ball_u = rewrite_ball(&u, p, bounds);
    if ball_u.contains(&v) {
        let path = ball_u.path_to(&v).unwrap();
        let mut chain = EquivalenceChain { words: vec![u], steps: Vec::new() };
        for (_, step, to) in path {
            chain.steps.push((step, ChainStep::Forward));
            chain.words.push(to);
        }
        return Some(chain);
    }
    let ball_v = rewrite_ball(&v, p, bounds);
    let meeting = ball_u.words.intersection(&ball_v.words).next()?.clone();
    Some(chain_from_paths(&u, &v, &meeting, &ball_u, &ball_v))
}

/// Do two words have the same image in the abelianization of `p`? Uses the
/// Smith form of the exponent matrix: the difference must lie in the row
/// lattice of the relators.
pub(crate) fn abelian_images_equal(
    u: &[i32],
    v: &[i32],
    p: &Presentation,
    snf: &crate::snf::SmithDecomposition,
) -> bool {
    let n = p.rank();
    let eu = words::exponent_sums(u, n);
    let ev = words::exponent_sums(v, n);
    let diff: Vec<i128> = eu.iter().zip(&ev).map(|(a, b)| i128::from(a - b)).collect();
    // diff is in the lattice spanned by the rows of A iff its coordinates in
    // the Smith basis are divisible by the invariant factors:
    // A = P^{-1} D Q^{-1}, rows of A span the same lattice as rows of D Q^{-1},
    // so solve y * Q = diff-as-row, then y_i must be divisible by d_i.
    let q = &snf.col_transform;
    // y = diff * Q (the transform is unimodular, its inverse maps back)
    let y: Vec<i128> = (0..q.cols)
        .map(|j| (0..q.rows).map(|i| diff[i] * q[(i, j)]).sum())
        .collect();
    for (i, &yi) in y.iter().enumerate() {
        let d = snf.diagonal.get(i).copied().unwrap_or(0);
        if d == 0 {
            if yi != 0 {
                return false;
            }
        } else if yi % d != 0 {
            return false;
        }
    }
    true
}
