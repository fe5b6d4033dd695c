//! Bi-orderability refutations. Three algebraic rules are tried in order,
//! each over a deterministic bounded candidate sweep, then the abelianization
//! obstruction. Every success is returned as a self-contained certificate.

use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, CertificateKind, NontrivialityEvidence};
use super::quotient::{finite_quotient_witness, TargetCondition};
use super::rewrite::{abelian_images_equal, words_equivalent, RewriteBounds};
use super::{abelianization_with_proof, Presentation};
use crate::snf::SmithDecomposition;
use crate::words;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RefuteRule {
    /// Distinct words with equal powers.
    UniqueRoots,
    /// A word commuting with a proper power of a non-commuting partner.
    PowerCommutes,
    /// A word conjugated onto its own inverse.
    ConjugationInversion,
    /// Finitely generated, nontrivial, no surjection onto the integers.
    Indicability,
}

pub const DEFAULT_RULES: [RefuteRule; 4] = [
    RefuteRule::UniqueRoots,
    RefuteRule::PowerCommutes,
    RefuteRule::ConjugationInversion,
    RefuteRule::Indicability,
];

/// Search limits. `rules` selects which refutation rules run and in what
/// order; the default is all of them.
#[derive(Debug, Clone)]
pub struct RefuteBounds {
    pub rules: Vec<RefuteRule>,
    /// Candidate words are enumerated up to this length.
    pub max_word_len: usize,
    /// Powers `k` (and `n`) range over `2..=max_power`.
    pub max_power: u32,
    pub ball: RewriteBounds,
    pub degree_cap: usize,
}

impl Default for RefuteBounds {
    fn default() -> Self {
        RefuteBounds {
            rules: DEFAULT_RULES.to_vec(),
            max_word_len: 2,
            max_power: 4,
            ball: RewriteBounds::new(18, 1, 800),
            degree_cap: 5,
        }
    }
}

impl RefuteBounds {
    pub fn with_rules(mut self, rules: &[RefuteRule]) -> Self {
        self.rules = rules.to_vec();
        self
    }
}

#[derive(Debug, Clone)]
pub enum RefuteOutcome {
    Refuted(Certificate),
    Unknown,
}

/// Reduced words over the presentation's generators in (length, lex) order,
/// the letter order being `g1 < g1^{-1} < g2 < g2^{-1} < ...`.
fn candidate_words(rank: usize, max_len: usize) -> Vec<Vec<i32>> {
    let mut alphabet = Vec::new();
    for g in 1..=rank as i32 {
        alphabet.push(g);
        alphabet.push(-g);
    }
    let mut out: Vec<Vec<i32>> = Vec::new();
    let mut layer: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &a in &alphabet {
                if w.last() == Some(&-a) {
                    continue;
                }
                let mut nw = w.clone();
                nw.push(a);
                next.push(nw);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn try_unique_roots(
    p: &Presentation,
    bounds: &RefuteBounds,
    snf: &SmithDecomposition,
) -> Option<Certificate> {
    let candidates = candidate_words(p.rank(), bounds.max_word_len);
    for (i, u) in candidates.iter().enumerate() {
        for v in candidates.iter().skip(i + 1) {
            // u^k = v^k forces equal abelian images when the images differ
            // by a torsion-free element; the filter is a cheap heuristic cut
            if !abelian_images_equal(u, v, p, snf) {
                continue;
            }
            for k in 2..=bounds.max_power {
                let uk = words::power(u, k as i32);
                let vk = words::power(v, k as i32);
                let Some(chain) = words_equivalent(&uk, &vk, p, bounds.ball) else {
                    continue;
                };
                let Some(distinctness) = finite_quotient_witness(
                    p,
                    (u, v),
                    TargetCondition::DistinctImages,
                    bounds.degree_cap,
                ) else {
                    continue;
                };
                return Some(Certificate::new(CertificateKind::UniqueRoots {
                    u: u.clone(),
                    v: v.clone(),
                    k,
                    equal_powers: chain,
                    distinctness,
                }));
            }
        }
    }
    None
}

fn try_power_commutes(p: &Presentation, bounds: &RefuteBounds) -> Option<Certificate> {
    let candidates = candidate_words(p.rank(), bounds.max_word_len);
    for g in &candidates {
        for h in &candidates {
            for n in 2..=bounds.max_power {
                let hn = words::power(h, n as i32);
                let c = words::commutator(g, &hn);
                if c.is_empty() {
                    // freely commuting pair: g and h are powers of a common
                    // word, so no non-commuting quotient image exists
                    continue;
                }
                let Some(chain) = words_equivalent(&c, &[], p, bounds.ball) else {
                    continue;
                };
                let Some(non_commuting) = finite_quotient_witness(
                    p,
                    (g, h),
                    TargetCondition::NonCommutingImages,
                    bounds.degree_cap,
                ) else {
                    continue;
                };
                return Some(Certificate::new(CertificateKind::PowerCommutes {
                    g: g.clone(),
                    h: h.clone(),
                    n,
                    commutes_with_power: chain,
                    non_commuting,
                }));
            }
        }
    }
    None
}

fn try_conjugation_inversion(p: &Presentation, bounds: &RefuteBounds) -> Option<Certificate> {
    let candidates = candidate_words(p.rank(), bounds.max_word_len);
    // conjugation preserves abelian images, so x must be 2-torsion there
    let (_, snf) = abelianization_with_proof(p);
    for x in &candidates {
        let x_inv = words::invert(x);
        if !abelian_images_equal(x, &x_inv, p, &snf) {
            continue;
        }
        for w in &candidates {
            // w^{-1} x w x reduces to empty iff the conjugate equals x^{-1}
            let mut t = words::invert(w);
            t.extend_from_slice(x);
            t.extend_from_slice(w);
            t.extend_from_slice(x);
            let t = words::free_reduce(t);
            let Some(chain) = words_equivalent(&t, &[], p, bounds.ball) else {
                continue;
            };
            let Some(nontriviality) = finite_quotient_witness(
                p,
                (x, &[]),
                TargetCondition::DistinctImages,
                bounds.degree_cap,
            ) else {
                continue;
            };
            return Some(Certificate::new(CertificateKind::ConjugationInversion {
                x: x.clone(),
                w: w.clone(),
                conjugate_inverts: chain,
                nontriviality,
            }));
        }
    }
    None
}

fn try_indicability(p: &Presentation, bounds: &RefuteBounds) -> Option<Certificate> {
    let (ab, snf) = abelianization_with_proof(p);
    if ab.rank != 0 {
        return None;
    }
    let nontriviality = if !ab.torsion.is_empty() {
        Some(NontrivialityEvidence::AbelianTorsion)
    } else {
        // hunt for any generator with a nontrivial finite image
        (1..=p.rank() as i32).find_map(|g| {
            finite_quotient_witness(
                p,
                (&[g], &[]),
                TargetCondition::DistinctImages,
                bounds.degree_cap,
            )
            .map(NontrivialityEvidence::Quotient)
        })
    }?;
    Some(Certificate::new(CertificateKind::Indicability {
        abelianization: ab,
        decomposition: snf,
        nontriviality: Some(nontriviality),
    }))
}

/// Try the refutation rules in the configured order; the first certificate
/// wins. `Unknown` only means the bounds were exhausted.
pub fn biorder_refute(p: &Presentation, bounds: &RefuteBounds) -> RefuteOutcome {
    let (_, snf) = abelianization_with_proof(p);
    for rule in &bounds.rules {
        let cert = match rule {
            RefuteRule::UniqueRoots => try_unique_roots(p, bounds, &snf),
            RefuteRule::PowerCommutes => try_power_commutes(p, bounds),
            RefuteRule::ConjugationInversion => try_conjugation_inversion(p, bounds),
            RefuteRule::Indicability => try_indicability(p, bounds),
        };
        if let Some(cert) = cert {
            return RefuteOutcome::Refuted(cert);
        }
    }
    RefuteOutcome::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{
        braid3_presentation, klein_presentation, trefoil_presentation, verify_certificate,
        weeks_presentation,
    };

    #[test]
    fn braid_presentation_refutes_by_unique_roots() {
        let p = braid3_presentation();
        match biorder_refute(&p, &RefuteBounds::default()) {
            RefuteOutcome::Refuted(cert) => {
                assert!(verify_certificate(&cert, &p).unwrap());
                match &cert.kind {
                    CertificateKind::UniqueRoots { u, v, k, .. } => {
                        assert_eq!((u.as_slice(), v.as_slice()), ([1, 2].as_slice(), [2, 1].as_slice()));
                        assert_eq!(*k, 3);
                    }
                    other => panic!("expected unique roots, got {other:?}"),
                }
            }
            RefuteOutcome::Unknown => panic!("the braid group refutation must be found"),
        }
    }

    #[test]
    fn trefoil_refutes_by_power_commutes() {
        let p = trefoil_presentation();
        match biorder_refute(&p, &RefuteBounds::default()) {
            RefuteOutcome::Refuted(cert) => {
                assert!(verify_certificate(&cert, &p).unwrap());
                match &cert.kind {
                    CertificateKind::PowerCommutes { g, h, n, .. } => {
                        assert_eq!(g.as_slice(), [1]);
                        assert_eq!(h.as_slice(), [2]);
                        assert_eq!(*n, 3);
                    }
                    other => panic!("expected power commutes, got {other:?}"),
                }
            }
            RefuteOutcome::Unknown => panic!("the trefoil refutation must be found"),
        }
    }

    #[test]
    fn klein_refutes_by_conjugation_inversion_when_asked() {
        let p = klein_presentation();
        let bounds =
            RefuteBounds::default().with_rules(&[RefuteRule::ConjugationInversion]);
        match biorder_refute(&p, &bounds) {
            RefuteOutcome::Refuted(cert) => {
                assert!(verify_certificate(&cert, &p).unwrap());
                match &cert.kind {
                    CertificateKind::ConjugationInversion { x, w, .. } => {
                        assert_eq!(x.as_slice(), [1]);
                        assert_eq!(w.as_slice(), [2]);
                    }
                    other => panic!("expected conjugation inversion, got {other:?}"),
                }
            }
            RefuteOutcome::Unknown => panic!("the relator itself is the witness"),
        }
    }

    #[test]
    fn klein_default_run_also_refutes() {
        // the group genuinely has non-unique roots, so the default rule
        // order lands on an earlier certificate; it must still verify
        let p = klein_presentation();
        match biorder_refute(&p, &RefuteBounds::default()) {
            RefuteOutcome::Refuted(cert) => {
                assert!(verify_certificate(&cert, &p).unwrap());
            }
            RefuteOutcome::Unknown => panic!("the Klein bottle group is not bi-orderable"),
        }
    }

    #[test]
    fn weeks_falls_through_to_indicability() {
        let p = weeks_presentation();
        match biorder_refute(&p, &RefuteBounds::default()) {
            RefuteOutcome::Refuted(cert) => {
                assert!(verify_certificate(&cert, &p).unwrap());
                assert_eq!(cert.kind_name(), "Indicability");
            }
            RefuteOutcome::Unknown => panic!("rank zero abelianization must refute"),
        }
    }

    #[test]
    fn free_abelian_group_is_unknown() {
        let p = Presentation::parse("gens a b\nrel a b A B").unwrap();
        assert!(matches!(biorder_refute(&p, &RefuteBounds::default()), RefuteOutcome::Unknown));
    }
}
