//! Finite group presentations with bounded word-problem machinery, integer
//! abelianization, orderability refutation rules and a positive-cone
//! consistency search. Everything a search finds is packaged as a
//! certificate that replays without searching.

mod certificate;
mod cone;
mod quotient;
mod refute;
mod rewrite;

pub use certificate::{
    verify_certificate, Certificate, CertificateKind, ConeCertificate, ConeConclusion,
    ConeInference, ConeRule, NontrivialityEvidence, QuotientCertificate, CERTIFICATE_FORMAT_VERSION,
};
pub use cone::{
    cone_consistency_search, non_lo_case_analysis, CaseKind, CaseSchema, ConeBounds, ConeOutcome,
    NonLoOutcome, SchemaCase, SignSeed,
};
pub use quotient::{finite_quotient_witness, word_image, Perm, TargetCondition};
pub use refute::{biorder_refute, RefuteBounds, RefuteOutcome, RefuteRule};
pub use rewrite::{rewrite_ball, words_equivalent, ChainStep, EquivalenceChain, InsertStep, RewriteBall, RewriteBounds};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::snf::{smith_normal_form, IntMatrix, SmithDecomposition};
use crate::words;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresError {
    #[error("presentation parse error: {0}")]
    Parse(String),
    #[error("word uses letter {0:?} outside of the generator list")]
    UnknownLetter(char),
    #[error("relators must be nonempty after free reduction")]
    EmptyRelator,
    #[error("the sign seed is already inconsistent: {0}")]
    InconsistentSeed(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
}

/// A finite presentation: named generators and freely reduced relators.
///
/// Generators are single lowercase letters; in word syntax the corresponding
/// uppercase letter is the inverse. A relation `u = v` is stored as the
/// relator `u v^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: Vec<char>,
    pub relators: Vec<Vec<i32>>,
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            generators: Vec<char>,
            relators: Vec<Vec<i32>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Presentation::new(raw.generators, raw.relators).map_err(serde::de::Error::custom)
    }
}

impl Presentation {
    pub fn new(generators: Vec<char>, relators: Vec<Vec<i32>>) -> Result<Self, PresError> {
        let rank = generators.len() as u32;
        let mut reduced = Vec::with_capacity(relators.len());
        for r in relators {
            if r.iter().any(|&l| l == 0 || l.unsigned_abs() > rank) {
                return Err(PresError::Parse(format!("relator letter out of band: {r:?}")));
            }
            let r = words::free_reduce(r);
            if r.is_empty() {
                return Err(PresError::EmptyRelator);
            }
            reduced.push(r);
        }
        Ok(Presentation { generators, relators: reduced })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Parse a word like `"babab A bb A"`: lowercase letters are generators,
    /// uppercase their inverses, whitespace is ignored.
    pub fn parse_word(&self, text: &str) -> Result<Vec<i32>, PresError> {
        let mut letters = Vec::new();
        for ch in text.chars() {
            if ch.is_whitespace() {
                continue;
            }
            let lower = ch.to_ascii_lowercase();
            let idx = self
                .generators
                .iter()
                .position(|&g| g == lower)
                .ok_or(PresError::UnknownLetter(ch))?;
            let letter = (idx + 1) as i32;
            letters.push(if ch.is_ascii_uppercase() { -letter } else { letter });
        }
        Ok(words::free_reduce(letters))
    }

    /// Render a word back in letter syntax.
    pub fn word_string(&self, word: &[i32]) -> String {
        word.iter()
            .map(|&l| {
                let g = self.generators[(l.unsigned_abs() as usize) - 1];
                if l < 0 {
                    g.to_ascii_uppercase()
                } else {
                    g
                }
            })
            .collect()
    }

    /// Parse the presentation text format:
    ///
    /// ```text
    /// # comment
    /// gens a b
    /// rel babab A bb A
    /// rel ababa = b AA b
    /// ```
    ///
    /// A `rel` line with `=` is a relation and is normalized to `u v^{-1}`.
    pub fn parse(text: &str) -> Result<Self, PresError> {
        let mut generators: Option<Vec<char>> = None;
        let mut relator_lines: Vec<String> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("gens") {
                let gens: Vec<char> = rest
                    .split_whitespace()
                    .map(|tok| {
                        let mut chars = tok.chars();
                        match (chars.next(), chars.next()) {
                            (Some(c), None) if c.is_ascii_lowercase() => Ok(c),
                            _ => Err(PresError::Parse(format!(
                                "generators must be single lowercase letters, got {tok:?}"
                            ))),
                        }
                    })
                    .collect::<Result<_, _>>()?;
                if gens.is_empty() {
                    return Err(PresError::Parse("empty generator list".into()));
                }
                generators = Some(gens);
            } else if let Some(rest) = line.strip_prefix("rel") {
                relator_lines.push(rest.trim().to_string());
            } else {
                return Err(PresError::Parse(format!("unrecognized line: {line:?}")));
            }
        }
        let generators = generators.ok_or(PresError::Parse("missing gens line".into()))?;
        let stub = Presentation { generators: generators.clone(), relators: Vec::new() };
        let mut relators = Vec::new();
        for line in relator_lines {
            let word = match line.split_once('=') {
                Some((u, v)) => {
                    words::concat(&stub.parse_word(u)?, &words::invert(&stub.parse_word(v)?))
                }
                None => stub.parse_word(&line)?,
            };
            relators.push(word);
        }
        Presentation::new(generators, relators)
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let rows = self
            .relators
            .iter()
            .map(|r| {
                words::exponent_sums(r, self.rank()).into_iter().map(i128::from).collect()
            })
            .collect();
        let mut m = IntMatrix::from_rows(rows);
        if self.relators.is_empty() {
            m = IntMatrix::zero(0, self.rank());
        }
        m
    }

    /// Image of a word in the abelianization coordinates (exponent sums).
    pub fn abelianized(&self, word: &[i32]) -> Vec<i64> {
        words::exponent_sums(word, self.rank())
    }
}

/// `Z^rank` plus the listed cyclic torsion factors, each dividing the next.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianizationResult {
    pub rank: usize,
    pub torsion: Vec<i128>,
}

/// Abelianization by Smith normal form of the exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> AbelianizationResult {
    abelianization_with_proof(p).0
}

pub fn abelianization_with_proof(p: &Presentation) -> (AbelianizationResult, SmithDecomposition) {
    let snf = smith_normal_form(&p.exponent_matrix());
    let rank = p.rank() - snf.rank();
    let torsion = snf.diagonal.iter().copied().filter(|&d| d > 1).collect();
    (AbelianizationResult { rank, torsion }, snf)
}

/// Whether the group admits a surjection onto the integers. Decidable from
/// the abelianization: such a surjection exists exactly when the free rank
/// is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndicabilityVerdict {
    Indicable,
    NotIndicable,
}

/// Decide indicability and package the evidence. With a nontriviality
/// witness attached, a `NotIndicable` verdict upgrades to a refutation of
/// bi-orderability: a finitely generated nontrivial group with no surjection
/// to the integers is not locally indicable, hence not bi-orderable.
pub fn indicability_obstruction(
    p: &Presentation,
    nontriviality: Option<QuotientCertificate>,
) -> (IndicabilityVerdict, Certificate) {
    let (ab, snf) = abelianization_with_proof(p);
    let verdict = if ab.rank == 0 {
        IndicabilityVerdict::NotIndicable
    } else {
        IndicabilityVerdict::Indicable
    };
    let evidence = if ab.rank == 0 {
        if !ab.torsion.is_empty() {
            Some(NontrivialityEvidence::AbelianTorsion)
        } else {
            nontriviality.map(NontrivialityEvidence::Quotient)
        }
    } else {
        None
    };
    let cert = Certificate::new(CertificateKind::Indicability {
        abelianization: ab,
        decomposition: snf,
        nontriviality: evidence,
    });
    (verdict, cert)
}

#[cfg(test)]
pub(crate) fn weeks_presentation() -> Presentation {
    Presentation::parse("gens a b\nrel babab = a BB a\nrel ababa = b AA b").unwrap()
}

#[cfg(test)]
pub(crate) fn brieskorn_237_presentation() -> Presentation {
    Presentation::parse("gens a b\nrel aaaaaaa = bbb\nrel bbb = baba").unwrap()
}

#[cfg(test)]
pub(crate) fn trefoil_presentation() -> Presentation {
    Presentation::parse("gens a b\nrel aa = bbb").unwrap()
}

#[cfg(test)]
pub(crate) fn klein_presentation() -> Presentation {
    Presentation::parse("gens x y\nrel Y x y = X").unwrap()
}

#[cfg(test)]
pub(crate) fn braid3_presentation() -> Presentation {
    Presentation::parse("gens s t\nrel sts = tst").unwrap()
}
