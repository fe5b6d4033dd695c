//! Acceptance suite: one test per criterion, each printing a pass line with
//! its runtime. Run with `--nocapture` to see the lines:
//!
//! ```text
//! cargo test -p ordgroups-cli --test acceptance -- --nocapture
//! ```

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use ordgroups::braid::{
    braids_equal, dehornoy_compare, delta, enumerate_words, handle_reduce, mn_prime_test,
    permutation, BraidWord, Classification, DehornoyOrder, MnVerdict, OrderedBraid,
    DEFAULT_STEP_CAP,
};
use ordgroups::lattice::{
    klein_box, klein_compare, klein_mul, sample_germs, sample_vectors, sikora_perturb, zn_sign,
    GermOrder, IntVector, KleinElement, KleinOrder, WeightOrder, ZnOrder,
};
use ordgroups::magnus::{
    lcs_degree, magnus_expand, sample_words as sample_free_words, FreeWord, MagnusOrder, Monomial,
};
use ordgroups::order::{
    check_cone_axioms, check_order_laws, conradian_check, verify_bi_invariance,
    verify_left_invariance, CheckBudget, ConradianOutcome, SampleSet, Sign,
};
use ordgroups::pl::{
    chehata_compare, chehata_sign, sample_maps, testpoint_compare, ChehataOrder, PLMap,
    RationalEnumeration, TestpointOrder,
};
use ordgroups::presentation::{
    abelianization, biorder_refute, finite_quotient_witness, indicability_obstruction,
    non_lo_case_analysis, verify_certificate, CaseSchema, CertificateKind, ConeBounds,
    IndicabilityVerdict, NonLoOutcome, NontrivialityEvidence, Presentation, RefuteBounds,
    RefuteOutcome, RefuteRule, TargetCondition,
};

fn pass(criterion: &str, started: Instant) {
    println!("criterion {criterion}: PASS ({:?})", started.elapsed());
}

fn b(strands: usize, letters: &[i32]) -> BraidWord {
    BraidWord::new(strands, letters.to_vec()).unwrap()
}

fn presentation(file: &str) -> Presentation {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("presentations").join(file);
    Presentation::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn criterion_01_braid_relations() {
    let t = Instant::now();
    assert!(braids_equal(&b(3, &[1, 2, 1]), &b(3, &[2, 1, 2])).unwrap());
    assert!(braids_equal(&b(4, &[1, 3]), &b(4, &[3, 1])).unwrap());
    assert!(braids_equal(&b(3, &[1, 2]).power(3), &b(3, &[2, 1]).power(3)).unwrap());
    // the cube roots themselves differ, visibly in their permutations
    assert_eq!(permutation(&b(3, &[1, 2])).one_based(), vec![3, 1, 2]);
    assert_eq!(permutation(&b(3, &[2, 1])).one_based(), vec![2, 3, 1]);
    assert_ne!(permutation(&b(3, &[1, 2])), permutation(&b(3, &[2, 1])));
    pass("01 braid relations", t);
}

#[test]
fn criterion_02_half_twist_centrality() {
    let t = Instant::now();
    for n in 2..=5 {
        let dd = delta(n).unwrap().power(2);
        for i in 1..n {
            let gen = b(n, &[i as i32]);
            let lhs = dd.concat(&gen).unwrap();
            let rhs = gen.concat(&dd).unwrap();
            assert!(braids_equal(&lhs, &rhs).unwrap(), "delta_{n}^2 vs generator {i}");
        }
    }
    pass("02 half-twist centrality", t);
}

#[test]
fn criterion_03_dehornoy_order_laws() {
    let t = Instant::now();
    let oracle = DehornoyOrder::new(4);
    let samples = ordgroups::braid::sample_words(0xB4, 1000, 4, 12);
    let budget = CheckBudget::bounded(4000, 4000);
    let laws = check_order_laws(&oracle, &samples, budget);
    assert!(laws.is_clean(), "{:?}", laws.violations);
    let cone = check_cone_axioms(&oracle, &samples, budget);
    assert!(cone.is_clean(), "{:?}", cone.violations);
    let left = verify_left_invariance(&oracle, &samples, budget);
    assert!(left.is_clean(), "{:?}", left.violations);

    // trichotomy of the handle classification on nontrivial words
    let mut nontrivial = 0;
    for w in ordgroups::braid::sample_words(0xB5, 600, 4, 12).elements {
        let fwd = handle_reduce(&w, DEFAULT_STEP_CAP).unwrap().classification;
        if fwd == Classification::Trivial {
            continue;
        }
        nontrivial += 1;
        let bwd = handle_reduce(&w.inverse(), DEFAULT_STEP_CAP).unwrap().classification;
        let fwd_positive = matches!(fwd, Classification::Positive { .. });
        let bwd_positive = matches!(bwd, Classification::Positive { .. });
        assert!(fwd_positive ^ bwd_positive, "exactly one of w, w^-1 is positive");
        if nontrivial == 500 {
            break;
        }
    }
    assert_eq!(nontrivial, 500);
    pass("03 dehornoy order laws", t);
}

#[test]
fn criterion_04_dubrovina_dubrovin_cone() {
    let t = Instant::now();
    // the semigroup generated by s1 s2 and s2^{-1}, products of <= 12 factors
    let gen_a = b(3, &[1, 2]);
    let gen_b = b(3, &[-2]);
    let mut products: BTreeMap<OrderedBraid, BraidWord> = BTreeMap::new();
    let mut layer: Vec<BraidWord> = vec![BraidWord::identity(3)];
    for _ in 1..=12 {
        let mut next = Vec::new();
        for w in &layer {
            for gen in [&gen_a, &gen_b] {
                let nw = w.concat(gen).unwrap();
                products.entry(OrderedBraid(nw.clone())).or_insert_with(|| nw.clone());
                next.push(nw);
            }
        }
        layer = next;
    }

    let mut checked = 0;
    for w in enumerate_words(3, 6) {
        if handle_reduce(&w, DEFAULT_STEP_CAP).unwrap().classification == Classification::Trivial {
            continue;
        }
        checked += 1;
        let fwd = products.get(&OrderedBraid(w.clone()));
        let bwd = products.get(&OrderedBraid(w.inverse()));
        match (fwd, bwd) {
            (Some(product), None) => assert!(braids_equal(&w, product).unwrap()),
            (None, Some(product)) => assert!(braids_equal(&w.inverse(), product).unwrap()),
            (Some(_), Some(_)) => panic!("{} and its inverse both in the cone", w.to_token_string()),
            (None, None) => panic!("{} missed by the bounded search", w.to_token_string()),
        }
    }
    assert_eq!(checked, 5184);
    pass("04 dubrovina-dubrovin cone", t);
}

#[test]
fn criterion_05_mn_prime_test() {
    let t = Instant::now();
    assert_eq!(mn_prime_test(&b(2, &[1]).power(9)).unwrap(), MnVerdict::PrimeNontrivialKnot);
    assert_eq!(mn_prime_test(&b(2, &[1])).unwrap(), MnVerdict::Inconclusive);
    assert_eq!(mn_prime_test(&b(3, &[1, 1])).unwrap(), MnVerdict::NotAKnot);
    pass("05 mn prime test", t);
}

#[test]
fn criterion_06_magnus_suite() {
    let t = Instant::now();
    let xy = FreeWord::new(2, vec![1, -1]).unwrap();
    for cap in 2..=6 {
        assert!(magnus_expand(&xy, cap).unwrap().is_one(), "cap {cap}");
    }
    let c = FreeWord::commutator(
        &FreeWord::generator(2, 1),
        &FreeWord::generator(2, 2),
    );
    let s = magnus_expand(&c, 2).unwrap();
    let expected: Vec<(Monomial, i128)> = vec![
        (Monomial(vec![]), 1),
        (Monomial(vec![1, 2]), 1),
        (Monomial(vec![2, 1]), -1),
    ];
    assert_eq!(s.terms.into_iter().collect::<Vec<_>>(), expected);

    let oracle = MagnusOrder { rank: 2 };
    let samples = sample_free_words(0xF2, 1000, 2, 8);
    let report = verify_bi_invariance(&oracle, &samples, CheckBudget::bounded(4000, 4000));
    assert!(report.is_clean(), "{:?}", report.violations);

    assert_eq!(lcs_degree(&FreeWord::generator(2, 1)).unwrap(), 1);
    assert_eq!(lcs_degree(&c).unwrap(), 2);
    let cc = FreeWord::commutator(&c, &FreeWord::generator(2, 2));
    assert_eq!(lcs_degree(&cc).unwrap(), 3);
    pass("06 magnus suite", t);
}

#[test]
fn criterion_07_conradian() {
    let t = Instant::now();
    let oracle = MagnusOrder { rank: 2 };
    let samples = sample_free_words(0xC0, 500, 2, 6);
    match conradian_check(&oracle, &samples) {
        ConradianOutcome::Pass { checked } => assert!(checked > 1000),
        ConradianOutcome::Counterexample { .. } => panic!("a bi-order is Conradian"),
    }

    // exhaustive search over the braid ball reproduces the recorded pair
    let oracle = DehornoyOrder::new(3);
    let ball = SampleSet::from_elements(0, enumerate_words(3, 6));
    match conradian_check(&oracle, &ball) {
        ConradianOutcome::Counterexample { g, h } => {
            assert_eq!(g.letters, vec![1]);
            assert_eq!(h.letters, vec![-2, 1]);
            // replay the violation: g >= h g^2
            let hgg = h.concat(&g.power(2)).unwrap();
            assert_eq!(dehornoy_compare(&g, &hgg).unwrap(), Ordering::Greater);
        }
        ConradianOutcome::Pass { .. } => panic!("the braid order is not Conradian"),
    }
    pass("07 conradian", t);
}

#[test]
fn criterion_08_abelianizations_and_indicability() {
    let t = Instant::now();
    let weeks = presentation("weeks.pres");
    let brieskorn = presentation("brieskorn237.pres");
    let trefoil = presentation("trefoil.pres");

    let ab = abelianization(&weeks);
    assert_eq!((ab.rank, ab.torsion.as_slice()), (0, [5, 5].as_slice()));
    let ab = abelianization(&brieskorn);
    assert_eq!((ab.rank, ab.torsion.as_slice()), (0, [].as_slice()));
    let ab = abelianization(&trefoil);
    assert_eq!((ab.rank, ab.torsion.as_slice()), (1, [].as_slice()));

    // torsion already witnesses that the Weeks group is nontrivial
    let (verdict, cert) = indicability_obstruction(&weeks, None);
    assert_eq!(verdict, IndicabilityVerdict::NotIndicable);
    assert!(matches!(
        cert.kind,
        CertificateKind::Indicability { nontriviality: Some(NontrivialityEvidence::AbelianTorsion), .. }
    ));
    assert!(verify_certificate(&cert, &weeks).unwrap());

    // the perfect group needs a finite quotient moving a generator
    let witness =
        finite_quotient_witness(&brieskorn, (&[1], &[]), TargetCondition::DistinctImages, 7)
            .expect("a degree-7 quotient moves the first generator");
    assert_eq!(witness.degree, 7);
    let (verdict, cert) = indicability_obstruction(&brieskorn, Some(witness));
    assert_eq!(verdict, IndicabilityVerdict::NotIndicable);
    assert!(matches!(
        cert.kind,
        CertificateKind::Indicability { nontriviality: Some(NontrivialityEvidence::Quotient(_)), .. }
    ));
    assert!(verify_certificate(&cert, &brieskorn).unwrap());

    let (verdict, _) = indicability_obstruction(&trefoil, None);
    assert_eq!(verdict, IndicabilityVerdict::Indicable);
    pass("08 abelianizations and indicability", t);
}

#[test]
fn criterion_09_weeks_not_left_orderable() {
    let t = Instant::now();
    let weeks = presentation("weeks.pres");
    let schema = CaseSchema::default_for(&weeks);
    match non_lo_case_analysis(&weeks, &schema, ConeBounds::default()).unwrap() {
        NonLoOutcome::NotLeftOrderable { certificates, .. } => {
            assert_eq!(certificates.len(), 6);
            for (name, cert) in &certificates {
                assert!(verify_certificate(cert, &weeks).unwrap(), "case {name}");
            }
        }
        NonLoOutcome::Unknown { failing_case } => panic!("case {failing_case} did not close"),
    }
    pass("09 weeks not left-orderable", t);
}

#[test]
fn criterion_10_biorder_refutations() {
    let t = Instant::now();
    let braid3 = presentation("braid3.pres");
    match biorder_refute(&braid3, &RefuteBounds::default()) {
        RefuteOutcome::Refuted(cert) => {
            assert_eq!(cert.kind_name(), "UniqueRoots");
            assert!(verify_certificate(&cert, &braid3).unwrap());
        }
        RefuteOutcome::Unknown => panic!("braid refutation not found"),
    }

    let trefoil = presentation("trefoil.pres");
    match biorder_refute(&trefoil, &RefuteBounds::default()) {
        RefuteOutcome::Refuted(cert) => {
            assert_eq!(cert.kind_name(), "PowerCommutes");
            assert!(verify_certificate(&cert, &trefoil).unwrap());
        }
        RefuteOutcome::Unknown => panic!("trefoil refutation not found"),
    }

    let klein = presentation("klein.pres");
    let bounds = RefuteBounds::default().with_rules(&[RefuteRule::ConjugationInversion]);
    match biorder_refute(&klein, &bounds) {
        RefuteOutcome::Refuted(cert) => {
            assert_eq!(cert.kind_name(), "ConjugationInversion");
            match &cert.kind {
                CertificateKind::ConjugationInversion { x, w, .. } => {
                    assert_eq!((x.as_slice(), w.as_slice()), ([1].as_slice(), [2].as_slice()));
                }
                _ => unreachable!(),
            }
            assert!(verify_certificate(&cert, &klein).unwrap());
        }
        RefuteOutcome::Unknown => panic!("klein refutation not found"),
    }
    pass("10 biorder refutations", t);
}

#[test]
fn criterion_11_pl_suite() {
    let t = Instant::now();
    let maps = sample_maps(0x91, 500, 3, 12);
    for f in &maps.elements {
        assert!(f.compose(&f.invert()).is_identity());
        assert!(f.invert().compose(f).is_identity());
    }

    let budget = CheckBudget::bounded(4000, 4000);
    let samples = sample_maps(0x92, 1000, 3, 12);
    let chehata = verify_bi_invariance(&ChehataOrder, &samples, budget);
    assert!(chehata.is_clean(), "{:?}", chehata.violations);
    let testpoint = verify_left_invariance(&TestpointOrder::default(), &samples, budget);
    assert!(testpoint.is_clean(), "{:?}", testpoint.violations);

    assert_eq!(chehata_sign(&PLMap::identity()), Sign::Zero);
    let f = PLMap::from_int_points(&[((0, 1), (0, 1)), ((1, 2), (1, 4)), ((1, 1), (1, 1))]).unwrap();
    assert_eq!(chehata_sign(&f), Sign::Negative);
    assert_eq!(chehata_sign(&f.invert()), Sign::Positive);
    assert_eq!(chehata_compare(&PLMap::identity(), &f.invert()), Ordering::Less);
    assert_eq!(
        testpoint_compare(&PLMap::identity(), &f, &RationalEnumeration, 64).unwrap(),
        Ordering::Greater
    );
    pass("11 pl suite", t);
}

#[test]
fn criterion_12_klein_germ_lattice() {
    let t = Instant::now();
    let box4 = SampleSet::from_elements(0, klein_box(4));
    let left = verify_left_invariance(&KleinOrder, &box4, CheckBudget::exhaustive());
    assert!(left.is_clean(), "{:?}", left.violations);

    // recorded right-invariance counterexample: x < x^2 but xy > x^2 y
    let x = KleinElement::new(1, 0);
    let xx = KleinElement::new(2, 0);
    let y = KleinElement::new(0, 1);
    assert_eq!(klein_compare(x, xx), Ordering::Less);
    assert_eq!(klein_compare(klein_mul(x, y), klein_mul(xx, y)), Ordering::Greater);

    let germs = sample_germs(0x6E, 200);
    let report = verify_bi_invariance(&GermOrder, &germs, CheckBudget::bounded(2000, 2000));
    assert!(report.is_clean(), "{:?}", report.violations);

    // perturbation postconditions on seeded constraint sets
    let mut verified = 0;
    for seed in 0..50u64 {
        let order = match seed % 3 {
            0 => WeightOrder::lex(2),
            1 => WeightOrder::new(
                2,
                vec![vec![rational(2, 1), rational(3, 1)]],
                vec![1, 0],
            )
            .unwrap(),
            _ => WeightOrder::new(
                3,
                vec![vec![rational(1, 2), rational(-1, 3), rational(5, 1)]],
                vec![2, 0, 1],
            )
            .unwrap(),
        };
        let candidates = sample_vectors(seed, 12, order.dimension, 6);
        let constraints: Vec<IntVector> = candidates
            .elements
            .into_iter()
            .filter(|v| zn_sign(v, &order).unwrap() == Sign::Positive)
            .take(4)
            .collect();
        let (perturbed, witness) = sikora_perturb(&order, &constraints).unwrap();
        assert_ne!(perturbed, order);
        for c in &constraints {
            assert_eq!(zn_sign(c, &order).unwrap(), Sign::Positive);
            assert_eq!(zn_sign(c, &perturbed).unwrap(), Sign::Positive);
        }
        let before = zn_sign(&witness, &order).unwrap();
        let after = zn_sign(&witness, &perturbed).unwrap();
        assert_eq!(before, Sign::Positive);
        assert_eq!(after, Sign::Negative);
        verified += 1;
    }
    assert_eq!(verified, 50);

    // the weight orders used above stay bi-invariant on samples
    for (seed, order) in [(7u64, WeightOrder::lex(2)), (8, WeightOrder::lex(3))] {
        let samples = sample_vectors(seed, 80, order.dimension, 3);
        let report =
            verify_bi_invariance(&ZnOrder(order), &samples, CheckBudget::bounded(2000, 2000));
        assert!(report.is_clean());
    }
    pass("12 klein/germ/lattice", t);
}

fn rational(n: i64, d: i64) -> num_rational::BigRational {
    num_rational::BigRational::new(n.into(), d.into())
}

#[test]
fn criterion_13_cli_golden_outputs() {
    let t = Instant::now();
    let bin = env!("CARGO_BIN_EXE_ordgroups");
    let pres_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("presentations");
    let weeks = pres_dir.join("weeks.pres");

    let out = Command::new(bin)
        .args(["pres", "abelianize", weeks.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(out.stdout, b"{\"rank\":0,\"torsion\":[5,5]}\n");

    let out = Command::new(bin)
        .args(["braid", "mn-test", "--strands", "2", "1 1 1 1 1 1 1 1 1"])
        .output()
        .unwrap();
    assert_eq!(out.stdout, b"{\"result\":\"PrimeNontrivialKnot\"}\n");

    let out = Command::new(bin)
        .args(["braid", "compare", "--strands", "3", "1 2", "2 1"])
        .output()
        .unwrap();
    assert_eq!(out.stdout, b"{\"result\":\"Less\"}\n");
    pass("13 cli golden outputs", t);
}
