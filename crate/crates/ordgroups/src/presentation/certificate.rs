//! Machine-checkable evidence objects. A certificate stores the witnesses
//! and a replayable derivation; `verify_certificate` re-checks every step
//! against a presentation without running any search.

use serde::{Deserialize, Serialize};

use super::quotient::{word_image, QuotientAssignment};
use super::rewrite::EquivalenceChain;
use super::{AbelianizationResult, PresError, Presentation};
use crate::order::Sign;
use crate::snf::SmithDecomposition;
use crate::words;

pub const CERTIFICATE_FORMAT_VERSION: u32 = 1;

pub type QuotientCertificate = QuotientAssignment;

/// Why a group without a surjection to the integers is nontrivial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "evidence")]
pub enum NontrivialityEvidence {
    /// The abelianization itself has torsion, so the group is nontrivial.
    AbelianTorsion,
    /// A finite quotient moves something.
    Quotient(QuotientCertificate),
}

/// One inference of a cone-consistency derivation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "rule")]
pub enum ConeRule {
    /// Fact taken from the case hypothesis.
    Seed { index: usize },
    /// Positives multiply: the word is `facts[lhs] * facts[rhs]` reduced.
    Product { lhs: usize, rhs: usize },
    /// Sign flips under inversion: the word is `facts[of]^{-1}`.
    Inverse { of: usize },
    /// Equal group elements share a sign: the word is connected to
    /// `facts[from]` by the stored insertion chain.
    Transport { from: usize, chain: EquivalenceChain },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeInference {
    pub word: Vec<i32>,
    pub sign: Sign,
    pub rule: ConeRule,
}

/// How the derivation became absurd.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum ConeConclusion {
    /// The same word carries both signs.
    OppositeSigns { positive: usize, negative: usize },
    /// The empty word carries a strict sign.
    IdentityLabelled { fact: usize },
}

/// A replayable contradiction from a sign seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeCertificate {
    /// The strict hypotheses the derivation starts from.
    pub seed_facts: Vec<(Vec<i32>, Sign)>,
    /// Relators added for the case (equality hypotheses), if any.
    pub extra_relators: Vec<Vec<i32>>,
    pub inferences: Vec<ConeInference>,
    pub conclusion: ConeConclusion,
}

impl ConeCertificate {
    fn verify(&self, p: &Presentation) -> bool {
        let p = match augment(p, &self.extra_relators) {
            Some(p) => p,
            None => return false,
        };
        for (i, inf) in self.inferences.iter().enumerate() {
            if inf.word != words::free_reduce(inf.word.iter().copied()) {
                return false;
            }
            let ok = match &inf.rule {
                ConeRule::Seed { index } => self
                    .seed_facts
                    .get(*index)
                    .is_some_and(|(w, s)| {
                        words::free_reduce(w.iter().copied()) == inf.word && *s == inf.sign
                    }),
                ConeRule::Product { lhs, rhs } => {
                    let (Some(a), Some(b)) = (premise(self, i, *lhs), premise(self, i, *rhs))
                    else {
                        return false;
                    };
                    a.sign == inf.sign
                        && b.sign == inf.sign
                        && inf.sign != Sign::Zero
                        && words::concat(&a.word, &b.word) == inf.word
                }
                ConeRule::Inverse { of } => {
                    let Some(a) = premise(self, i, *of) else { return false };
                    a.sign == inf.sign.flip() && words::invert(&a.word) == inf.word
                }
                ConeRule::Transport { from, chain } => {
                    let Some(a) = premise(self, i, *from) else { return false };
                    let (start, end) = chain.endpoints();
                    a.sign == inf.sign
                        && start == a.word.as_slice()
                        && end == inf.word.as_slice()
                        && chain.verify(&p)
                }
            };
            if !ok {
                return false;
            }
        }
        match &self.conclusion {
            ConeConclusion::OppositeSigns { positive, negative } => {
                let (Some(pos), Some(neg)) =
                    (self.inferences.get(*positive), self.inferences.get(*negative))
                else {
                    return false;
                };
                pos.word == neg.word && pos.sign == Sign::Positive && neg.sign == Sign::Negative
            }
            ConeConclusion::IdentityLabelled { fact } => {
                let Some(f) = self.inferences.get(*fact) else { return false };
                f.word.is_empty() && f.sign != Sign::Zero
            }
        }
    }
}

fn premise(cert: &ConeCertificate, at: usize, idx: usize) -> Option<&ConeInference> {
    if idx < at {
        cert.inferences.get(idx)
    } else {
        None
    }
}

fn augment(p: &Presentation, extra: &[Vec<i32>]) -> Option<Presentation> {
    if extra.is_empty() {
        return Some(p.clone());
    }
    let mut relators = p.relators.clone();
    relators.extend(extra.iter().cloned());
    Presentation::new(p.generators.clone(), relators).ok()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum CertificateKind {
    /// A separating homomorphism to a symmetric group.
    QuotientWitness(QuotientCertificate),
    /// `u^k = v^k` with `u != v`: impossible in a bi-orderable group.
    UniqueRoots {
        u: Vec<i32>,
        v: Vec<i32>,
        k: u32,
        equal_powers: EquivalenceChain,
        distinctness: QuotientCertificate,
    },
    /// `[g, h^n] = 1` with `[g, h] != 1`: impossible in a bi-orderable group.
    PowerCommutes {
        g: Vec<i32>,
        h: Vec<i32>,
        n: u32,
        commutes_with_power: EquivalenceChain,
        non_commuting: QuotientCertificate,
    },
    /// `w^{-1} x w = x^{-1}` with `x != 1`: impossible in a bi-orderable group.
    ConjugationInversion {
        x: Vec<i32>,
        w: Vec<i32>,
        conjugate_inverts: EquivalenceChain,
        nontriviality: QuotientCertificate,
    },
    /// A sign seed saturates to a contradiction.
    ConeContradiction(ConeCertificate),
    /// No surjection to the integers; with nontriviality this refutes
    /// bi-orderability through local indicability.
    Indicability {
        abelianization: AbelianizationResult,
        decomposition: SmithDecomposition,
        nontriviality: Option<NontrivialityEvidence>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub format_version: u32,
    #[serde(flatten)]
    pub kind: CertificateKind,
}

impl Certificate {
    pub fn new(kind: CertificateKind) -> Self {
        Certificate { format_version: CERTIFICATE_FORMAT_VERSION, kind }
    }

    pub fn kind_name(&self) -> &'static str {
        match &self.kind {
            CertificateKind::QuotientWitness(_) => "QuotientWitness",
            CertificateKind::UniqueRoots { .. } => "UniqueRoots",
            CertificateKind::PowerCommutes { .. } => "PowerCommutes",
            CertificateKind::ConjugationInversion { .. } => "ConjugationInversion",
            CertificateKind::ConeContradiction(_) => "ConeContradiction",
            CertificateKind::Indicability { .. } => "Indicability",
        }
    }
}

/// Replay a certificate against a presentation. `Ok(false)` means the
/// evidence does not check out; errors are reserved for structurally
/// malformed input.
pub fn verify_certificate(cert: &Certificate, p: &Presentation) -> Result<bool, PresError> {
    if cert.format_version != CERTIFICATE_FORMAT_VERSION {
        return Err(PresError::MalformedCertificate(format!(
            "unsupported format version {}",
            cert.format_version
        )));
    }
    Ok(match &cert.kind {
        CertificateKind::QuotientWitness(q) => q.verify(p),
        CertificateKind::UniqueRoots { u, v, k, equal_powers, distinctness } => {
            let uk = words::power(u, *k as i32);
            let vk = words::power(v, *k as i32);
            let (start, end) = equal_powers.endpoints();
            *k >= 2
                && start == uk.as_slice()
                && end == vk.as_slice()
                && equal_powers.verify(p)
                && distinctness.targets == (u.clone(), v.clone())
                && distinctness.condition == super::TargetCondition::DistinctImages
                && distinctness.verify(p)
        }
        CertificateKind::PowerCommutes { g, h, n, commutes_with_power, non_commuting } => {
            let hn = words::power(h, *n as i32);
            let c = words::commutator(g, &hn);
            let (start, end) = commutes_with_power.endpoints();
            *n >= 2
                && start == c.as_slice()
                && end.is_empty()
                && !c.is_empty()
                && commutes_with_power.verify(p)
                && non_commuting.targets == (g.clone(), h.clone())
                && non_commuting.condition == super::TargetCondition::NonCommutingImages
                && non_commuting.verify(p)
        }
        CertificateKind::ConjugationInversion { x, w, conjugate_inverts, nontriviality } => {
            // w^{-1} x w x reduces to the empty word exactly when the
            // conjugate equals the inverse
            let mut conj = words::invert(w);
            conj.extend_from_slice(x);
            conj.extend_from_slice(w);
            conj.extend_from_slice(x);
            let target = words::free_reduce(conj);
            let (start, end) = conjugate_inverts.endpoints();
            !x.is_empty()
                && start == target.as_slice()
                && end.is_empty()
                && conjugate_inverts.verify(p)
                && nontriviality.targets == (x.clone(), Vec::new())
                && nontriviality.condition == super::TargetCondition::DistinctImages
                && nontriviality.verify(p)
        }
        CertificateKind::ConeContradiction(c) => c.verify(p),
        CertificateKind::Indicability { abelianization, decomposition, nontriviality } => {
            let m = p.exponent_matrix();
            let rank_ok = decomposition.matrix == m
                && decomposition.verify()
                && abelianization.rank == p.rank() - decomposition.rank()
                && abelianization.torsion
                    == decomposition
                        .diagonal
                        .iter()
                        .copied()
                        .filter(|&d| d > 1)
                        .collect::<Vec<_>>();
            let nontrivial_ok = match nontriviality {
                None => true,
                Some(NontrivialityEvidence::AbelianTorsion) => !abelianization.torsion.is_empty(),
                Some(NontrivialityEvidence::Quotient(q)) => {
                    let image_distinct = q.verify(p);
                    let (u, v) = (&q.targets.0, &q.targets.1);
                    image_distinct && word_image(u, &q.images) != word_image(v, &q.images)
                }
            };
            rank_ok && nontrivial_ok
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{trefoil_presentation, TargetCondition};

    #[test]
    fn version_gate() {
        let p = trefoil_presentation();
        let (_, cert) = super::super::indicability_obstruction(&p, None);
        let mut bad = cert;
        bad.format_version = 99;
        assert!(matches!(
            verify_certificate(&bad, &p),
            Err(PresError::MalformedCertificate(_))
        ));
    }

    #[test]
    fn indicability_certificate_is_presentation_specific() {
        let weeks = super::super::weeks_presentation();
        let (_, cert) = super::super::indicability_obstruction(&weeks, None);
        assert!(verify_certificate(&cert, &weeks).unwrap());
        // same certificate against the wrong presentation fails
        assert!(!verify_certificate(&cert, &trefoil_presentation()).unwrap());
    }

    #[test]
    fn quotient_certificate_round_trips_through_json() {
        let p = trefoil_presentation();
        let ab = p.parse_word("ab").unwrap();
        let ba = p.parse_word("ba").unwrap();
        let w = super::super::finite_quotient_witness(
            &p,
            (&ab, &ba),
            TargetCondition::DistinctImages,
            3,
        )
        .unwrap();
        let cert = Certificate::new(CertificateKind::QuotientWitness(w));
        let json = serde_json::to_string(&cert).unwrap();
        assert!(json.contains("\"format_version\":1"));
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
        assert!(verify_certificate(&back, &p).unwrap());
    }
}
