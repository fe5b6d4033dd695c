//! Comparison oracles for left- and bi-invariant group orders, and the
//! property harness that every concrete order in this crate is run through.
//!
//! An order is never materialized as a positive-cone set; it is exposed as a
//! total comparison together with the group operations on the same carrier.
//! One harness then exercises the order axioms, invariance and cone laws
//! uniformly. All sampling is deterministic from a 64-bit seed.

use std::cmp::Ordering;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Position of a group element relative to the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// A strict total order on a group, given as a comparison oracle together
/// with the group operations on the same universe.
///
/// `compare` must decide `Equal` by an exact procedure (a normal form or a
/// certified reduction), never by sampling, and must agree with group-element
/// equality.
pub trait OrderOracle {
    type Elem: Clone;

    fn compare(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;
    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn invert(&self, a: &Self::Elem) -> Self::Elem;
    fn identity(&self) -> Self::Elem;

    /// Render an element for violation reports.
    fn describe(&self, a: &Self::Elem) -> String;

    /// Cone classification of `a` by comparison against the identity.
    fn sign(&self, a: &Self::Elem) -> Sign {
        match self.compare(a, &self.identity()) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.compare(a, b) == Ordering::Equal
    }
}

/// A finite, reproducible batch of group elements.
///
/// The generator rules per universe are documented on the module-level
/// `sample_*` functions; given the same seed and bounds they always produce
/// the same elements.
#[derive(Debug, Clone)]
pub struct SampleSet<T> {
    pub seed: u64,
    pub elements: Vec<T>,
}

impl<T> SampleSet<T> {
    pub fn from_fn(seed: u64, count: usize, mut gen: impl FnMut(&mut ChaCha8Rng) -> T) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let elements = (0..count).map(|_| gen(&mut rng)).collect();
        SampleSet { seed, elements }
    }

    pub fn from_elements(seed: u64, elements: Vec<T>) -> Self {
        SampleSet { seed, elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// One failed check, with the elements that witnessed it.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub kind: String,
    pub witness: Vec<String>,
}

/// Outcome of a harness run: how many assertions were made, and every
/// violation found.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    fn new() -> Self {
        CheckReport { checked: 0, violations: Vec::new() }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// How many pairs/triples of sample elements a law check may consume.
///
/// `None` means exhaustive. With `Some(budget)`, index tuples are drawn from
/// a ChaCha stream keyed by the sample seed whenever the exhaustive count
/// would exceed the budget, so runs stay deterministic.
#[derive(Debug, Clone, Copy)]
pub struct CheckBudget {
    pub pairs: Option<usize>,
    pub triples: Option<usize>,
}

impl CheckBudget {
    pub fn exhaustive() -> Self {
        CheckBudget { pairs: None, triples: None }
    }

    pub fn bounded(pairs: usize, triples: usize) -> Self {
        CheckBudget { pairs: Some(pairs), triples: Some(triples) }
    }
}

fn index_pairs(n: usize, budget: Option<usize>, seed: u64) -> Vec<(usize, usize)> {
    let total = n * n;
    match budget {
        Some(b) if total > b => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x70a1_7273);
            (0..b)
                .map(|_| {
                    use rand::Rng;
                    (rng.gen_range(0..n), rng.gen_range(0..n))
                })
                .collect()
        }
        _ => (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect(),
    }
}

fn index_triples(n: usize, budget: Option<usize>, seed: u64) -> Vec<(usize, usize, usize)> {
    let total = n.saturating_mul(n).saturating_mul(n);
    match budget {
        Some(b) if total > b => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7472_6970);
            (0..b)
                .map(|_| {
                    use rand::Rng;
                    (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))
                })
                .collect()
        }
        _ => (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .collect(),
    }
}

/// Strict-total-order laws on the sample: reflexivity-as-equal, antisymmetry
/// and transitivity of the comparison.
pub fn check_order_laws<O: OrderOracle>(
    oracle: &O,
    samples: &SampleSet<O::Elem>,
    budget: CheckBudget,
) -> CheckReport {
    let mut report = CheckReport::new();
    let el = &samples.elements;

    for a in el {
        report.checked += 1;
        if oracle.compare(a, a) != Ordering::Equal {
            report.violations.push(Violation {
                kind: "irreflexivity".into(),
                witness: vec![oracle.describe(a)],
            });
        }
    }

    for (i, j) in index_pairs(el.len(), budget.pairs, samples.seed) {
        report.checked += 1;
        let ab = oracle.compare(&el[i], &el[j]);
        let ba = oracle.compare(&el[j], &el[i]);
        if ab != ba.reverse() {
            report.violations.push(Violation {
                kind: "antisymmetry".into(),
                witness: vec![oracle.describe(&el[i]), oracle.describe(&el[j])],
            });
        }
    }

    for (i, j, k) in index_triples(el.len(), budget.triples, samples.seed) {
        let (a, b, c) = (&el[i], &el[j], &el[k]);
        if oracle.compare(a, b) == Ordering::Less && oracle.compare(b, c) == Ordering::Less {
            report.checked += 1;
            if oracle.compare(a, c) != Ordering::Less {
                report.violations.push(Violation {
                    kind: "transitivity".into(),
                    witness: vec![oracle.describe(a), oracle.describe(b), oracle.describe(c)],
                });
            }
        }
    }

    report
}

/// Cone axioms on the sample: classification against the identity is a
/// trichotomy consistent with equality, and positives are closed under
/// multiplication.
pub fn check_cone_axioms<O: OrderOracle>(
    oracle: &O,
    samples: &SampleSet<O::Elem>,
    budget: CheckBudget,
) -> CheckReport {
    let mut report = CheckReport::new();
    let el = &samples.elements;
    let id = oracle.identity();

    for a in el {
        report.checked += 1;
        let zero_sign = oracle.sign(a) == Sign::Zero;
        if zero_sign != oracle.equal(a, &id) {
            report.violations.push(Violation {
                kind: "trichotomy".into(),
                witness: vec![oracle.describe(a)],
            });
        }
    }

    for (i, j) in index_pairs(el.len(), budget.pairs, samples.seed) {
        let (g, h) = (&el[i], &el[j]);
        if oracle.sign(g) == Sign::Positive && oracle.sign(h) == Sign::Positive {
            report.checked += 1;
            if oracle.sign(&oracle.multiply(g, h)) != Sign::Positive {
                report.violations.push(Violation {
                    kind: "cone-closure".into(),
                    witness: vec![oracle.describe(g), oracle.describe(h)],
                });
            }
        }
    }

    report
}

/// For sampled triples `(f, g, h)` with `g < h`, assert `fg < fh`.
pub fn verify_left_invariance<O: OrderOracle>(
    oracle: &O,
    samples: &SampleSet<O::Elem>,
    budget: CheckBudget,
) -> CheckReport {
    let mut report = CheckReport::new();
    let el = &samples.elements;
    for (i, j, k) in index_triples(el.len(), budget.triples, samples.seed) {
        let (f, g, h) = (&el[i], &el[j], &el[k]);
        if oracle.compare(g, h) == Ordering::Less {
            report.checked += 1;
            let fg = oracle.multiply(f, g);
            let fh = oracle.multiply(f, h);
            if oracle.compare(&fg, &fh) != Ordering::Less {
                report.violations.push(Violation {
                    kind: "left-invariance".into(),
                    witness: vec![oracle.describe(f), oracle.describe(g), oracle.describe(h)],
                });
            }
        }
    }
    report
}

/// Left- and right-invariance together; right-side failures are reported
/// under their own kind so the two cannot be confused.
pub fn verify_bi_invariance<O: OrderOracle>(
    oracle: &O,
    samples: &SampleSet<O::Elem>,
    budget: CheckBudget,
) -> CheckReport {
    let mut report = verify_left_invariance(oracle, samples, budget);
    let el = &samples.elements;
    for (i, j, k) in index_triples(el.len(), budget.triples, samples.seed) {
        let (f, g, h) = (&el[i], &el[j], &el[k]);
        if oracle.compare(g, h) == Ordering::Less {
            report.checked += 1;
            let gf = oracle.multiply(g, f);
            let hf = oracle.multiply(h, f);
            if oracle.compare(&gf, &hf) != Ordering::Less {
                report.violations.push(Violation {
                    kind: "right-invariance".into(),
                    witness: vec![oracle.describe(f), oracle.describe(g), oracle.describe(h)],
                });
            }
        }
    }
    report
}

/// Outcome of the `g < h g^2` test over positive sample pairs.
#[derive(Debug, Clone)]
pub enum ConradianOutcome<T> {
    Pass { checked: usize },
    Counterexample { g: T, h: T },
}

/// Test `g < h g^2` for every ordered pair of positive sample elements,
/// returning the first violating pair.
pub fn conradian_check<O: OrderOracle>(
    oracle: &O,
    samples: &SampleSet<O::Elem>,
) -> ConradianOutcome<O::Elem> {
    let positives: Vec<&O::Elem> = samples
        .elements
        .iter()
        .filter(|e| oracle.sign(e) == Sign::Positive)
        .collect();
    let mut checked = 0;
    for g in &positives {
        let gg = oracle.multiply(g, g);
        for h in &positives {
            checked += 1;
            let hgg = oracle.multiply(h, &gg);
            if oracle.compare(g, &hgg) != Ordering::Less {
                return ConradianOutcome::Counterexample { g: (*g).clone(), h: (*h).clone() };
            }
        }
    }
    ConradianOutcome::Pass { checked }
}

/// Sort the ball by the order, assign integer ranks, and assert that left
/// multiplication by each multiplier is strictly increasing on ranks wherever
/// both products land back in the ball.
pub fn rank_embedding_monotone<O: OrderOracle>(
    oracle: &O,
    ball: &SampleSet<O::Elem>,
    multipliers: &SampleSet<O::Elem>,
) -> CheckReport {
    let mut report = CheckReport::new();

    let mut sorted: Vec<O::Elem> = ball.elements.clone();
    sorted.sort_by(|a, b| oracle.compare(a, b));
    for w in sorted.windows(2) {
        if oracle.equal(&w[0], &w[1]) {
            report.violations.push(Violation {
                kind: "ball-not-distinct".into(),
                witness: vec![oracle.describe(&w[0])],
            });
        }
    }
    let rank_of = |e: &O::Elem| -> Option<usize> {
        sorted.binary_search_by(|probe| oracle.compare(probe, e)).ok()
    };

    for f in &multipliers.elements {
        // ranks of f*a for ball elements a, in ascending rank(a) order
        let image_ranks: Vec<usize> =
            sorted.iter().filter_map(|a| rank_of(&oracle.multiply(f, a))).collect();
        for w in image_ranks.windows(2) {
            report.checked += 1;
            if w[0] >= w[1] {
                report.violations.push(Violation {
                    kind: "rank-monotonicity".into(),
                    witness: vec![oracle.describe(f)],
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The integers under addition with the usual order.
    struct IntOrder;

    impl OrderOracle for IntOrder {
        type Elem = i64;
        fn compare(&self, a: &i64, b: &i64) -> Ordering {
            a.cmp(b)
        }
        fn multiply(&self, a: &i64, b: &i64) -> i64 {
            a + b
        }
        fn invert(&self, a: &i64) -> i64 {
            -a
        }
        fn identity(&self) -> i64 {
            0
        }
        fn describe(&self, a: &i64) -> String {
            a.to_string()
        }
    }

    #[test]
    fn integer_order_passes_everything() {
        let samples = SampleSet::from_elements(0, (-5..=5).collect());
        assert!(check_order_laws(&IntOrder, &samples, CheckBudget::exhaustive()).is_clean());
        assert!(check_cone_axioms(&IntOrder, &samples, CheckBudget::exhaustive()).is_clean());
        assert!(verify_bi_invariance(&IntOrder, &samples, CheckBudget::exhaustive()).is_clean());
        match conradian_check(&IntOrder, &samples) {
            ConradianOutcome::Pass { checked } => assert!(checked > 0),
            ConradianOutcome::Counterexample { .. } => panic!("Z is Conradian"),
        }
    }

    #[test]
    fn empty_and_singleton_samples_pass_trivially() {
        let empty: SampleSet<i64> = SampleSet::from_elements(0, vec![]);
        let report = verify_left_invariance(&IntOrder, &empty, CheckBudget::exhaustive());
        assert_eq!(report.checked, 0);
        assert!(report.is_clean());

        let singleton = SampleSet::from_elements(0, vec![0]);
        let report = verify_left_invariance(&IntOrder, &singleton, CheckBudget::exhaustive());
        assert!(report.is_clean());
        match conradian_check(&IntOrder, &singleton) {
            ConradianOutcome::Pass { checked } => assert_eq!(checked, 0),
            _ => panic!("no positive elements to test"),
        }
    }

    #[test]
    fn budgeted_runs_are_deterministic() {
        let samples = SampleSet::from_fn(7, 50, |rng| {
            use rand::Rng;
            rng.gen_range(-100i64..100)
        });
        let budget = CheckBudget::bounded(40, 40);
        let a = check_order_laws(&IntOrder, &samples, budget);
        let b = check_order_laws(&IntOrder, &samples, budget);
        assert_eq!(a.checked, b.checked);
        assert!(a.is_clean() && b.is_clean());
    }

    #[test]
    fn report_serializes_with_kind_and_witness() {
        let mut report = CheckReport::new();
        report.checked = 3;
        report.violations.push(Violation { kind: "antisymmetry".into(), witness: vec!["x".into()] });
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(json, r#"{"checked":3,"violations":[{"kind":"antisymmetry","witness":["x"]}]}"#);
    }

    #[test]
    fn shipped_oracles_satisfy_the_order_laws_on_samples() {
        // braid order, left-invariant only
        let oracle = crate::braid::DehornoyOrder::new(3);
        let samples = crate::braid::sample_words(0xD3, 100, 3, 8);
        let budget = CheckBudget::bounded(2000, 2000);
        assert!(check_order_laws(&oracle, &samples, budget).is_clean());
        assert!(check_cone_axioms(&oracle, &samples, budget).is_clean());
        assert!(verify_left_invariance(&oracle, &samples, budget).is_clean());

        // series order on the free group, bi-invariant
        let oracle = crate::magnus::MagnusOrder { rank: 2 };
        let samples = crate::magnus::sample_words(0xD4, 100, 2, 8);
        assert!(check_order_laws(&oracle, &samples, budget).is_clean());
        assert!(verify_bi_invariance(&oracle, &samples, budget).is_clean());

        // germ order, bi-invariant
        let oracle = crate::lattice::GermOrder;
        let samples = crate::lattice::sample_germs(0xD5, 100);
        assert!(check_order_laws(&oracle, &samples, budget).is_clean());
        assert!(verify_bi_invariance(&oracle, &samples, budget).is_clean());
    }

    #[test]
    fn rank_embedding_on_shifted_integers() {
        let ball = SampleSet::from_elements(0, (-4..=4).collect());
        let mult = SampleSet::from_elements(0, vec![1, 2]);
        let report = rank_embedding_monotone(&IntOrder, &ball, &mult);
        assert!(report.is_clean());
        assert!(report.checked > 0);

        let singleton = SampleSet::from_elements(0, vec![3]);
        assert!(rank_embedding_monotone(&IntOrder, &singleton, &mult).is_clean());
    }
}
