//! Positive-cone consistency: saturate sign hypotheses under the semigroup
//! law, inversion and transport along relator rewrites, hunting for a word
//! that is forced to carry both signs or for a strictly signed identity.
//! A contradiction is returned as a trace that replays inference by
//! inference; exhausting the bounds without one is reported as exactly that.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::certificate::{
    Certificate, CertificateKind, ConeCertificate, ConeConclusion, ConeInference, ConeRule,
};
use super::quotient::TargetCondition;
use super::rewrite::{rewrite_ball, RewriteBounds};
use super::{finite_quotient_witness, PresError, Presentation};
use crate::order::Sign;
use crate::words;

/// Strict sign hypotheses on words, plus optional equality hypotheses that
/// are treated as added relators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignSeed {
    pub facts: Vec<(Vec<i32>, Sign)>,
    pub equalities: Vec<(Vec<i32>, Vec<i32>)>,
}

impl SignSeed {
    pub fn positive(words: Vec<Vec<i32>>) -> Self {
        SignSeed { facts: words.into_iter().map(|w| (w, Sign::Positive)).collect(), equalities: Vec::new() }
    }

    fn validate(&self) -> Result<(), PresError> {
        let mut seen: BTreeMap<Vec<i32>, Sign> = BTreeMap::new();
        for (w, s) in &self.facts {
            if *s == Sign::Zero {
                return Err(PresError::InconsistentSeed("seed facts must be strict".into()));
            }
            let w = words::free_reduce(w.iter().copied());
            if w.is_empty() {
                return Err(PresError::InconsistentSeed(
                    "the identity cannot carry a strict sign".into(),
                ));
            }
            let winv = words::invert(&w);
            if seen.get(&w).is_some_and(|prev| prev != s)
                || seen.get(&winv).is_some_and(|prev| *prev == *s)
            {
                return Err(PresError::InconsistentSeed(format!("conflicting sign for {w:?}")));
            }
            seen.insert(w, *s);
        }
        Ok(())
    }
}

/// Search limits for the saturation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeBounds {
    /// Longest word a derived fact may have.
    pub max_fact_len: usize,
    /// Most facts derived before giving up.
    pub max_facts: usize,
    /// Ball bounds used by the transport rule, per fact.
    pub ball: RewriteBounds,
    /// Degree cap for quotient witnesses discharging equality cases.
    pub degree_cap: usize,
}

impl Default for ConeBounds {
    fn default() -> Self {
        ConeBounds {
            max_fact_len: 10,
            max_facts: 20_000,
            ball: RewriteBounds::new(12, 1, 600),
            degree_cap: 5,
        }
    }
}

#[derive(Debug, Clone)]
pub enum ConeOutcome {
    Contradiction(Certificate),
    NoContradictionWithinBounds { facts_explored: usize },
}

struct Saturator {
    presentation: Presentation,
    bounds: ConeBounds,
    facts: Vec<ConeInference>,
    index: BTreeMap<Vec<i32>, (usize, Sign)>,
    queue: VecDeque<usize>,
    seed_facts: Vec<(Vec<i32>, Sign)>,
    extra_relators: Vec<Vec<i32>>,
    /// Fact indices of the seed words and their inverses; the semigroup
    /// closure extends by these cone generators.
    generators: Vec<usize>,
    conclusion: Option<ConeConclusion>,
}

impl Saturator {
    /// Record a fact; returns false once a contradiction has been reached.
    fn add(&mut self, word: Vec<i32>, sign: Sign, rule: ConeRule) -> bool {
        debug_assert_eq!(word, words::free_reduce(word.iter().copied()));
        if self.conclusion.is_some() {
            return false;
        }
        if word.len() > self.bounds.max_fact_len || self.facts.len() >= self.bounds.max_facts {
            return true;
        }
        if word.is_empty() {
            let idx = self.facts.len();
            self.facts.push(ConeInference { word, sign, rule });
            self.conclusion = Some(ConeConclusion::IdentityLabelled { fact: idx });
            return false;
        }
        match self.index.entry(word.clone()) {
            Entry::Occupied(e) => {
                let (prev_idx, prev_sign) = *e.get();
                if prev_sign == sign {
                    return true;
                }
                let idx = self.facts.len();
                self.facts.push(ConeInference { word, sign, rule });
                let (positive, negative) =
                    if sign == Sign::Positive { (idx, prev_idx) } else { (prev_idx, idx) };
                self.conclusion = Some(ConeConclusion::OppositeSigns { positive, negative });
                false
            }
            Entry::Vacant(e) => {
                let idx = self.facts.len();
                e.insert((idx, sign));
                self.facts.push(ConeInference { word, sign, rule });
                self.queue.push_back(idx);
                true
            }
        }
    }

    fn run(&mut self) {
        while let Some(idx) = self.queue.pop_front() {
            let fact = self.facts[idx].clone();

            // inversion: w positive iff w^{-1} negative
            if !self.add(words::invert(&fact.word), fact.sign.flip(), ConeRule::Inverse { of: idx })
            {
                return;
            }

            // semigroup closure: extend by the like-signed cone generators
            for j in self.generators.clone() {
                let peer = self.facts[j].clone();
                if peer.sign != fact.sign {
                    continue;
                }
                if !self.add(
                    words::concat(&fact.word, &peer.word),
                    fact.sign,
                    ConeRule::Product { lhs: idx, rhs: j },
                ) {
                    return;
                }
                if !self.add(
                    words::concat(&peer.word, &fact.word),
                    fact.sign,
                    ConeRule::Product { lhs: j, rhs: idx },
                ) {
                    return;
                }
            }

            // transport along relator rewrites
            let ball = rewrite_ball(&fact.word, &self.presentation, self.bounds.ball);
            for w in ball.words.clone() {
                if w == fact.word {
                    continue;
                }
                let path = ball.path_to(&w).expect("ball member has a path");
                let mut chain = super::rewrite::EquivalenceChain {
                    words: vec![fact.word.clone()],
                    steps: Vec::new(),
                };
                for (_, step, to) in path {
                    chain.steps.push((step, super::rewrite::ChainStep::Forward));
                    chain.words.push(to);
                }
                if !self.add(w, fact.sign, ConeRule::Transport { from: idx, chain }) {
                    return;
                }
            }
        }
    }
}

/// Saturate a seed under the cone rules. The certificate's trace replays
/// every inference that leads to the contradiction.
pub fn cone_consistency_search(
    p: &Presentation,
    seed: &SignSeed,
    bounds: ConeBounds,
) -> Result<ConeOutcome, PresError> {
    seed.validate()?;
    let mut relators = p.relators.clone();
    let mut extra_relators = Vec::new();
    for (lhs, rhs) in &seed.equalities {
        let rel = words::concat(lhs, &words::invert(rhs));
        if rel.is_empty() {
            continue;
        }
        extra_relators.push(rel.clone());
        relators.push(rel);
    }
    let augmented = Presentation::new(p.generators.clone(), relators)
        .map_err(|e| PresError::InconsistentSeed(format!("bad equality hypothesis: {e}")))?;

    let seed_facts: Vec<(Vec<i32>, Sign)> = seed
        .facts
        .iter()
        .map(|(w, s)| (words::free_reduce(w.iter().copied()), *s))
        .collect();

    let mut sat = Saturator {
        presentation: augmented,
        bounds,
        facts: Vec::new(),
        index: BTreeMap::new(),
        queue: VecDeque::new(),
        seed_facts: seed_facts.clone(),
        extra_relators,
        generators: Vec::new(),
        conclusion: None,
    };
    // seed facts and their inverses are the cone generators for the
    // semigroup closure; register them before anything is processed
    for (i, (w, s)) in seed_facts.iter().enumerate() {
        if !sat.add(w.clone(), *s, ConeRule::Seed { index: i }) {
            break;
        }
        let seed_idx = sat.index[w].0;
        if !sat.add(words::invert(w), s.flip(), ConeRule::Inverse { of: seed_idx }) {
            break;
        }
        let inv_idx = sat.index[&words::invert(w)].0;
        for idx in [seed_idx, inv_idx] {
            if !sat.generators.contains(&idx) {
                sat.generators.push(idx);
            }
        }
    }
    if sat.conclusion.is_none() {
        sat.run();
    }

    match sat.conclusion {
        Some(conclusion) => {
            let cert = prune_trace(ConeCertificate {
                seed_facts: sat.seed_facts,
                extra_relators: sat.extra_relators,
                inferences: sat.facts,
                conclusion,
            });
            Ok(ConeOutcome::Contradiction(Certificate::new(
                CertificateKind::ConeContradiction(cert),
            )))
        }
        None => Ok(ConeOutcome::NoContradictionWithinBounds { facts_explored: sat.facts.len() }),
    }
}

/// Drop every inference the conclusion does not depend on, renumbering the
/// premise references of the survivors.
fn prune_trace(cert: ConeCertificate) -> ConeCertificate {
    let roots = match &cert.conclusion {
        ConeConclusion::OppositeSigns { positive, negative } => vec![*positive, *negative],
        ConeConclusion::IdentityLabelled { fact } => vec![*fact],
    };
    let mut needed = vec![false; cert.inferences.len()];
    let mut stack = roots.clone();
    while let Some(idx) = stack.pop() {
        if needed[idx] {
            continue;
        }
        needed[idx] = true;
        match &cert.inferences[idx].rule {
            ConeRule::Seed { .. } => {}
            ConeRule::Product { lhs, rhs } => stack.extend([*lhs, *rhs]),
            ConeRule::Inverse { of } => stack.push(*of),
            ConeRule::Transport { from, .. } => stack.push(*from),
        }
    }
    let mut remap = vec![usize::MAX; cert.inferences.len()];
    let mut kept = Vec::new();
    for (old, inf) in cert.inferences.into_iter().enumerate() {
        if !needed[old] {
            continue;
        }
        remap[old] = kept.len();
        let rule = match inf.rule {
            ConeRule::Seed { index } => ConeRule::Seed { index },
            ConeRule::Product { lhs, rhs } => {
                ConeRule::Product { lhs: remap[lhs], rhs: remap[rhs] }
            }
            ConeRule::Inverse { of } => ConeRule::Inverse { of: remap[of] },
            ConeRule::Transport { from, chain } => {
                ConeRule::Transport { from: remap[from], chain }
            }
        };
        kept.push(ConeInference { word: inf.word, sign: inf.sign, rule });
    }
    let conclusion = match cert.conclusion {
        ConeConclusion::OppositeSigns { positive, negative } => ConeConclusion::OppositeSigns {
            positive: remap[positive],
            negative: remap[negative],
        },
        ConeConclusion::IdentityLabelled { fact } => {
            ConeConclusion::IdentityLabelled { fact: remap[fact] }
        }
    };
    ConeCertificate {
        seed_facts: cert.seed_facts,
        extra_relators: cert.extra_relators,
        inferences: kept,
        conclusion,
    }
}

/// One case of an exhaustive schema: either strict sign hypotheses to refute
/// by saturation, or an equality hypothesis to discharge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum CaseKind {
    Strict { seed: SignSeed },
    Equal { lhs: Vec<i32>, rhs: Vec<i32> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaCase {
    pub name: String,
    pub case: CaseKind,
}

/// An exhaustive enumeration of the possible strict orderings of its
/// comparison atoms, under the stated normalization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSchema {
    /// Human-readable statement of the atoms and the normalization, so the
    /// logical strength of a verdict is explicit.
    pub description: String,
    pub cases: Vec<SchemaCase>,
}

impl CaseSchema {
    /// The default schema over the atoms `{g1 vs 1, g2 vs 1, g1 vs g2}`.
    ///
    /// The first generator is normalized positive: reversing a left order is
    /// again a left order, so if any left order exists there is one with
    /// `a > 1` (once `a = 1` is ruled out). For one generator the cases
    /// degenerate to the sign of `a`.
    pub fn default_for(p: &Presentation) -> CaseSchema {
        let a = vec![1i32];
        if p.rank() == 1 {
            return CaseSchema {
                description: "atoms {a vs 1}; order reversal normalizes a > 1".into(),
                cases: vec![
                    SchemaCase {
                        name: "a = 1".into(),
                        case: CaseKind::Equal { lhs: a.clone(), rhs: vec![] },
                    },
                    SchemaCase {
                        name: "a > 1".into(),
                        case: CaseKind::Strict { seed: SignSeed::positive(vec![a]) },
                    },
                ],
            };
        }
        let b = vec![2i32];
        let b_inv_a = words::concat(&words::invert(&b), &a);
        let a_inv_b = words::concat(&words::invert(&a), &b);
        CaseSchema {
            description: "atoms {a vs 1, b vs 1, a vs b}; order reversal normalizes a > 1".into(),
            cases: vec![
                SchemaCase {
                    name: "a = 1".into(),
                    case: CaseKind::Equal { lhs: a.clone(), rhs: vec![] },
                },
                SchemaCase {
                    name: "b = 1".into(),
                    case: CaseKind::Equal { lhs: b.clone(), rhs: vec![] },
                },
                SchemaCase {
                    name: "a = b".into(),
                    case: CaseKind::Equal { lhs: a.clone(), rhs: b.clone() },
                },
                SchemaCase {
                    name: "a > 1, b < 1".into(),
                    case: CaseKind::Strict {
                        seed: SignSeed {
                            facts: vec![(a.clone(), Sign::Positive), (b.clone(), Sign::Negative)],
                            equalities: Vec::new(),
                        },
                    },
                },
                SchemaCase {
                    name: "a > b > 1".into(),
                    case: CaseKind::Strict {
                        seed: SignSeed::positive(vec![a.clone(), b.clone(), b_inv_a]),
                    },
                },
                SchemaCase {
                    name: "b > a > 1".into(),
                    case: CaseKind::Strict {
                        seed: SignSeed::positive(vec![a, b, a_inv_b]),
                    },
                },
            ],
        }
    }
}

#[derive(Debug, Clone)]
pub enum NonLoOutcome {
    /// Every case of the schema was refuted; one certificate per case.
    NotLeftOrderable { schema: String, certificates: Vec<(String, Certificate)> },
    /// Some case survived the bounds.
    Unknown { failing_case: String },
}

/// Run the schema: strict cases must saturate to a contradiction, equality
/// cases are discharged by a separating finite quotient (showing the
/// equality fails in the group) or, failing that, by substituting the
/// equality as a relator and refuting the first generator's positivity.
pub fn non_lo_case_analysis(
    p: &Presentation,
    schema: &CaseSchema,
    bounds: ConeBounds,
) -> Result<NonLoOutcome, PresError> {
    let mut certificates = Vec::new();
    for case in &schema.cases {
        match &case.case {
            CaseKind::Strict { seed } => match cone_consistency_search(p, seed, bounds)? {
                ConeOutcome::Contradiction(cert) => certificates.push((case.name.clone(), cert)),
                ConeOutcome::NoContradictionWithinBounds { .. } => {
                    return Ok(NonLoOutcome::Unknown { failing_case: case.name.clone() })
                }
            },
            CaseKind::Equal { lhs, rhs } => {
                if let Some(witness) = finite_quotient_witness(
                    p,
                    (lhs, rhs),
                    TargetCondition::DistinctImages,
                    bounds.degree_cap,
                ) {
                    certificates.push((
                        case.name.clone(),
                        Certificate::new(CertificateKind::QuotientWitness(witness)),
                    ));
                    continue;
                }
                // the equality may genuinely hold; adopt it and refute the
                // normalized positivity of the first generator instead
                let seed = SignSeed {
                    facts: vec![(vec![1], Sign::Positive)],
                    equalities: vec![(lhs.clone(), rhs.clone())],
                };
                match cone_consistency_search(p, &seed, bounds)? {
                    ConeOutcome::Contradiction(cert) => {
                        certificates.push((case.name.clone(), cert))
                    }
                    ConeOutcome::NoContradictionWithinBounds { .. } => {
                        return Ok(NonLoOutcome::Unknown { failing_case: case.name.clone() })
                    }
                }
            }
        }
    }
    Ok(NonLoOutcome::NotLeftOrderable {
        schema: schema.description.clone(),
        certificates,
    })
}
