//! Exhaustive search for homomorphisms into symmetric groups that separate
//! target words. A found assignment is its own certificate: checking it is a
//! handful of permutation compositions.

use serde::{Deserialize, Serialize};

use super::Presentation;

/// A permutation of `0..degree`, composed left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u8).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i as u8 == v)
    }

    pub fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        for &v in &self.0 {
            let v = v as usize;
            if v >= self.0.len() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&v| other.0[v as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u8; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            out[v as usize] = i as u8;
        }
        Perm(out)
    }
}

/// Image of a word under a generator assignment.
pub fn word_image(word: &[i32], images: &[Perm]) -> Perm {
    let degree = images.first().map_or(0, Perm::degree);
    let mut acc = Perm::identity(degree);
    for &l in word {
        let g = &images[(l.unsigned_abs() as usize) - 1];
        acc = if l > 0 { acc.then(g) } else { acc.then(&g.inverse()) };
    }
    acc
}

/// What a witness must separate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetCondition {
    /// The two target words map to distinct permutations.
    DistinctImages,
    /// The images of the two target words do not commute.
    NonCommutingImages,
}

/// A homomorphism to a symmetric group, found by search; all relators map to
/// the identity and the target condition holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientAssignment {
    pub degree: usize,
    pub images: Vec<Perm>,
    pub targets: (Vec<i32>, Vec<i32>),
    pub condition: TargetCondition,
}

impl QuotientAssignment {
    /// Replay the witness: permutations are bijections of the right degree,
    /// every relator maps to the identity, and the targets are separated.
    pub fn verify(&self, p: &Presentation) -> bool {
        if self.images.len() != p.rank() {
            return false;
        }
        if !self.images.iter().all(|g| g.degree() == self.degree && g.is_valid()) {
            return false;
        }
        if !p.relators.iter().all(|r| word_image(r, &self.images).is_identity()) {
            return false;
        }
        let u = word_image(&self.targets.0, &self.images);
        let v = word_image(&self.targets.1, &self.images);
        match self.condition {
            TargetCondition::DistinctImages => u != v,
            TargetCondition::NonCommutingImages => u.then(&v) != v.then(&u),
        }
    }
}

fn all_perms(degree: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = (0..degree as u8).collect();
    loop {
        out.push(Perm(current.clone()));
        // next lexicographic permutation
        let Some(i) = (0..current.len().saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            return out;
        };
        let j = (i + 1..current.len()).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
}

/// Allocation-free relator evaluation against the current assignment.
/// Returns true when the word maps to the identity.
fn word_maps_to_identity(
    word: &[i32],
    choice: &[usize],
    perms: &[Perm],
    inverses: &[Perm],
    buf_a: &mut [u8],
    buf_b: &mut [u8],
) -> bool {
    let degree = buf_a.len();
    for (i, slot) in buf_a.iter_mut().enumerate() {
        *slot = i as u8;
    }
    for &l in word {
        let idx = (l.unsigned_abs() as usize) - 1;
        let table = if l > 0 { &perms[choice[idx]].0 } else { &inverses[choice[idx]].0 };
        for i in 0..degree {
            buf_b[i] = table[buf_a[i] as usize];
        }
        buf_a[..degree].copy_from_slice(&buf_b[..degree]);
    }
    buf_a.iter().enumerate().all(|(i, &v)| i as u8 == v)
}

/// Search generator assignments by ascending degree and lexicographic image
/// order, returning the first homomorphism that satisfies every relator and
/// separates the targets. Exhaustive up to the cap; `None` means no witness
/// exists within it.
pub fn finite_quotient_witness(
    p: &Presentation,
    targets: (&[i32], &[i32]),
    condition: TargetCondition,
    degree_cap: usize,
) -> Option<QuotientAssignment> {
    let rank = p.rank();
    for degree in 2..=degree_cap {
        let perms = all_perms(degree);
        let inverses: Vec<Perm> = perms.iter().map(Perm::inverse).collect();
        let mut choice = vec![0usize; rank];
        let mut buf_a = vec![0u8; degree];
        let mut buf_b = vec![0u8; degree];
        'assign: loop {
            let satisfies = p.relators.iter().all(|r| {
                word_maps_to_identity(r, &choice, &perms, &inverses, &mut buf_a, &mut buf_b)
            });
            if satisfies {
                let candidate = QuotientAssignment {
                    degree,
                    images: choice.iter().map(|&c| perms[c].clone()).collect(),
                    targets: (targets.0.to_vec(), targets.1.to_vec()),
                    condition,
                };
                if candidate.verify(p) {
                    return Some(candidate);
                }
            }
            // odometer over the assignment tuple, last generator fastest
            for slot in (0..rank).rev() {
                choice[slot] += 1;
                if choice[slot] < perms.len() {
                    continue 'assign;
                }
                choice[slot] = 0;
                if slot == 0 {
                    break 'assign;
                }
            }
            break 'assign;
        }
    }
    None
}
