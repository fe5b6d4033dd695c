//! Batch CLI over the ordgroups library. Every subcommand reads its inputs
//! from arguments (values starting with `@` name a file, `-` reads standard
//! input), prints one JSON document to standard output and exits with:
//!
//! - 0: computed, including Inconclusive/Unknown verdicts
//! - 2: input or usage error
//! - 3: a resource bound was exceeded
//!
//! Output is compact JSON unless `--pretty` is given; identical inputs and
//! seeds always produce identical bytes.

use std::cmp::Ordering;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use ordgroups::braid::{self, BraidError, BraidWord};
use ordgroups::lattice::{self, IntVector, KleinElement, WeightOrder};
use ordgroups::magnus::{self, FreeWord, MagnusError};
use ordgroups::order::{
    check_cone_axioms, check_order_laws, verify_bi_invariance, verify_left_invariance,
    CheckBudget, CheckReport, SampleSet,
};
use ordgroups::pl::{self, PlError, RationalEnumeration};
use ordgroups::presentation::{
    self, CaseSchema, Certificate, ConeBounds, NonLoOutcome, Presentation, RefuteBounds,
    RefuteOutcome, RefuteRule, TargetCondition,
};

#[derive(Parser)]
#[command(name = "ordgroups", version, about = "exact computations with ordered groups")]
struct Cli {
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Braid words: handle reduction and the order it decides.
    Braid {
        #[command(subcommand)]
        cmd: BraidCmd,
    },
    /// Free groups under the series-expansion order.
    Free {
        #[command(subcommand)]
        cmd: FreeCmd,
    },
    /// Weight-vector orders on integer lattices.
    Zn {
        #[command(subcommand)]
        cmd: ZnCmd,
    },
    /// The Klein bottle group in normal form.
    Klein {
        #[command(subcommand)]
        cmd: KleinCmd,
    },
    /// Germs of boundary-fixing linear maps.
    Germ {
        #[command(subcommand)]
        cmd: GermCmd,
    },
    /// Piecewise linear homeomorphisms of the unit interval.
    Pl {
        #[command(subcommand)]
        cmd: PlCmd,
    },
    /// Finite presentations: abelianization, refutations, certificates.
    Pres {
        #[command(subcommand)]
        cmd: PresCmd,
    },
    /// Order-property suites over seeded samples.
    Harness {
        #[command(subcommand)]
        cmd: HarnessCmd,
    },
}

#[derive(Args)]
struct Strands {
    /// Number of strands of the braid group.
    #[arg(long)]
    strands: usize,
}

#[derive(Subcommand)]
enum BraidCmd {
    /// Handle-reduce a word and classify it.
    Reduce {
        #[command(flatten)]
        strands: Strands,
        /// Reduction step cap.
        #[arg(long, default_value_t = braid::DEFAULT_STEP_CAP)]
        step_cap: usize,
        /// Word as signed generator indices, e.g. "1 -2".
        word: String,
    },
    /// Compare two words in the braid left order.
    Compare {
        #[command(flatten)]
        strands: Strands,
        u: String,
        v: String,
    },
    /// The half-twist word.
    Delta {
        #[command(flatten)]
        strands: Strands,
        /// Raise the half twist to this power.
        #[arg(long, default_value_t = 1)]
        power: i32,
    },
    /// The permutation a word induces on strand positions.
    Permutation {
        #[command(flatten)]
        strands: Strands,
        word: String,
    },
    /// Prime-knot test on the braid closure.
    MnTest {
        #[command(flatten)]
        strands: Strands,
        word: String,
    },
}

#[derive(Subcommand)]
enum FreeCmd {
    /// Expand a word into a truncated series.
    Expand {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        cap: usize,
        /// Word as signed generator indices, e.g. "1 2 -1 -2".
        word: String,
    },
    /// Compare two words in the series order.
    Compare {
        #[arg(long)]
        rank: usize,
        u: String,
        v: String,
    },
    /// First degree at which the expansion differs from 1.
    LcsDegree {
        #[arg(long)]
        rank: usize,
        word: String,
    },
}

#[derive(Args)]
struct ZnOrderArg {
    /// Weight order as JSON (`@file` or inline); defaults to plain lex.
    #[arg(long)]
    order: Option<String>,
    /// Dimension, required when no order is given.
    #[arg(long)]
    dim: Option<usize>,
}

#[derive(Subcommand)]
enum ZnCmd {
    /// Compare two integer vectors.
    Compare {
        #[command(flatten)]
        order: ZnOrderArg,
        /// Vectors as JSON arrays, e.g. "[0,1]".
        u: String,
        v: String,
    },
    /// Perturb an order keeping finitely many positives positive.
    Perturb {
        #[command(flatten)]
        order: ZnOrderArg,
        /// Constraint vectors as a JSON array of arrays.
        constraints: String,
    },
}

#[derive(Subcommand)]
enum KleinCmd {
    /// Compare two elements given as JSON pairs `[m, n]`.
    Compare { a: String, b: String },
}

#[derive(Subcommand)]
enum GermCmd {
    /// Compare two germs `{"shear":{"num":..,"den":..},"scale":{..}}`.
    Compare { a: String, b: String },
}

#[derive(Subcommand)]
enum PlCmd {
    /// Compose two maps (first applied last).
    Compose { f: String, g: String },
    /// Invert a map.
    Invert { f: String },
    /// Compare in the first-departure order.
    Compare { f: String, g: String },
    /// Compare by first differing enumerated test point.
    TestpointCompare {
        #[arg(long, default_value_t = pl::DEFAULT_PROBE_CAP)]
        probe_cap: usize,
        f: String,
        g: String,
    },
}

#[derive(Subcommand)]
enum PresCmd {
    /// Abelianization as free rank plus torsion factors.
    Abelianize { file: String },
    /// Try the bi-orderability refutation rules.
    RefuteBiorder {
        /// Comma-separated rule list among unique-roots, power-commutes,
        /// conjugation-inversion, indicability.
        #[arg(long)]
        rules: Option<String>,
        #[arg(long, default_value_t = 5)]
        degree_cap: usize,
        file: String,
    },
    /// Exhaustive-case non-left-orderability analysis.
    CheckLo { file: String },
    /// Search for a separating finite quotient.
    QuotientWitness {
        /// Two comma-separated words, e.g. "ab,ba".
        #[arg(long)]
        targets: String,
        /// Ask for non-commuting rather than distinct images.
        #[arg(long)]
        noncommuting: bool,
        #[arg(long, default_value_t = 5)]
        degree_cap: usize,
        file: String,
    },
    /// Replay a certificate against a presentation.
    Verify {
        /// Certificate JSON (`@file`, `-`, or inline).
        #[arg(long)]
        certificate: String,
        file: String,
    },
}

#[derive(Subcommand)]
enum HarnessCmd {
    /// Run a named property suite.
    Run {
        /// One of: dehornoy-b3, dehornoy-b4, conjugate-b3, magnus-f2,
        /// klein, germ, chehata, testpoint, zn-lex.
        #[arg(long)]
        suite: String,
        /// Sampling seed; all randomized checks require one.
        #[arg(long)]
        seed: u64,
        /// Sample count for the seeded suites.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

/// Errors carrying their process exit code.
struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 2 }
    }
    fn resource(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 3 }
    }
}

impl From<BraidError> for CliError {
    fn from(e: BraidError) -> Self {
        match e {
            BraidError::StepCapExceeded(_) => CliError::resource(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<MagnusError> for CliError {
    fn from(e: MagnusError) -> Self {
        match e {
            MagnusError::DegreeCeilingExceeded(_) => CliError::resource(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<PlError> for CliError {
    fn from(e: PlError) -> Self {
        match e {
            PlError::ProbeCapExceeded(_) => CliError::resource(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<lattice::LatticeError> for CliError {
    fn from(e: lattice::LatticeError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<presentation::PresError> for CliError {
    fn from(e: presentation::PresError) -> Self {
        CliError::input(e.to_string())
    }
}

/// `@path` reads a file, `-` reads standard input, anything else is inline.
fn read_payload(arg: &str) -> Result<String, CliError> {
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::input(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("reading {path}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn ordering_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "Less",
        Ordering::Equal => "Equal",
        Ordering::Greater => "Greater",
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> Result<T, CliError> {
    let payload = read_payload(arg)?;
    serde_json::from_str(&payload).map_err(|e| CliError::input(format!("parsing {what}: {e}")))
}

fn free_word(rank: usize, text: &str) -> Result<FreeWord, CliError> {
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        let l: i32 =
            tok.parse().map_err(|_| CliError::input(format!("bad letter token {tok:?}")))?;
        letters.push(l);
    }
    Ok(FreeWord::new(rank, letters)?)
}

fn load_presentation(path: &str) -> Result<Presentation, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("reading {path}: {e}")))?;
    Ok(Presentation::parse(&text)?)
}

fn zn_order(arg: &ZnOrderArg) -> Result<WeightOrder, CliError> {
    match (&arg.order, arg.dim) {
        (Some(text), _) => {
            #[derive(serde::Deserialize)]
            struct RawRat {
                num: i64,
                den: i64,
            }
            #[derive(serde::Deserialize)]
            struct RawOrder {
                dimension: usize,
                weights: Vec<Vec<RawRat>>,
                tie_break: Vec<usize>,
            }
            let raw: RawOrder = parse_json(text, "weight order")?;
            let weights = raw
                .weights
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|r| {
                            if r.den == 0 {
                                return Err(CliError::input("zero denominator in weight"));
                            }
                            Ok(num_rational::BigRational::new(r.num.into(), r.den.into()))
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(WeightOrder::new(raw.dimension, weights, raw.tie_break)?)
        }
        (None, Some(dim)) => Ok(WeightOrder::lex(dim)),
        (None, None) => Err(CliError::input("either --order or --dim is required")),
    }
}

fn weight_order_json(order: &WeightOrder) -> serde_json::Value {
    let rat = |r: &num_rational::BigRational| {
        json!({
            "num": i64::try_from(r.numer()).expect("weight numerator out of range"),
            "den": i64::try_from(r.denom()).expect("weight denominator out of range"),
        })
    };
    json!({
        "dimension": order.dimension,
        "weights": order.weights.iter().map(|w| w.iter().map(rat).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "tie_break": order.tie_break,
    })
}

fn parse_rules(list: &str) -> Result<Vec<RefuteRule>, CliError> {
    list.split(',')
        .map(|tok| match tok.trim() {
            "unique-roots" => Ok(RefuteRule::UniqueRoots),
            "power-commutes" => Ok(RefuteRule::PowerCommutes),
            "conjugation-inversion" => Ok(RefuteRule::ConjugationInversion),
            "indicability" => Ok(RefuteRule::Indicability),
            other => Err(CliError::input(format!("unknown rule {other:?}"))),
        })
        .collect()
}

fn run(cli: &Cli) -> Result<serde_json::Value, CliError> {
    match &cli.command {
        Command::Braid { cmd } => run_braid(cmd),
        Command::Free { cmd } => run_free(cmd),
        Command::Zn { cmd } => run_zn(cmd),
        Command::Klein { cmd } => run_klein(cmd),
        Command::Germ { cmd } => run_germ(cmd),
        Command::Pl { cmd } => run_pl(cmd),
        Command::Pres { cmd } => run_pres(cmd),
        Command::Harness { cmd } => run_harness(cmd),
    }
}

fn run_braid(cmd: &BraidCmd) -> Result<serde_json::Value, CliError> {
    match cmd {
        BraidCmd::Reduce { strands, step_cap, word } => {
            let w = braid::parse_braid(word, strands.strands)?;
            let r = braid::handle_reduce(&w, *step_cap)?;
            Ok(json!({
                "word": r.word,
                "classification": r.classification,
                "steps": r.steps,
            }))
        }
        BraidCmd::Compare { strands, u, v } => {
            let u = braid::parse_braid(u, strands.strands)?;
            let v = braid::parse_braid(v, strands.strands)?;
            Ok(json!({ "result": ordering_name(braid::dehornoy_compare(&u, &v)?) }))
        }
        BraidCmd::Delta { strands, power } => {
            let d = braid::delta(strands.strands)?.power(*power);
            Ok(serde_json::to_value(d).unwrap())
        }
        BraidCmd::Permutation { strands, word } => {
            let w = braid::parse_braid(word, strands.strands)?;
            let p = braid::permutation(&w);
            Ok(json!({
                "images": p.one_based(),
                "cycles": p.cycle_count(),
                "pure": p.is_identity(),
            }))
        }
        BraidCmd::MnTest { strands, word } => {
            let w = braid::parse_braid(word, strands.strands)?;
            let verdict = braid::mn_prime_test(&w)?;
            Ok(json!({ "result": verdict }))
        }
    }
}

fn run_free(cmd: &FreeCmd) -> Result<serde_json::Value, CliError> {
    match cmd {
        FreeCmd::Expand { rank, cap, word } => {
            let w = free_word(*rank, word)?;
            let s = magnus::magnus_expand(&w, *cap)?;
            Ok(serde_json::to_value(s).unwrap())
        }
        FreeCmd::Compare { rank, u, v } => {
            let u = free_word(*rank, u)?;
            let v = free_word(*rank, v)?;
            Ok(json!({ "result": ordering_name(magnus::magnus_compare(&u, &v)?) }))
        }
        FreeCmd::LcsDegree { rank, word } => {
            let w = free_word(*rank, word)?;
            Ok(json!({ "degree": magnus::lcs_degree(&w)? }))
        }
    }
}

fn run_zn(cmd: &ZnCmd) -> Result<serde_json::Value, CliError> {
    match cmd {
        ZnCmd::Compare { order, u, v } => {
            let order = zn_order(order)?;
            let u: Vec<i64> = parse_json(u, "vector")?;
            let v: Vec<i64> = parse_json(v, "vector")?;
            let r = lattice::zn_compare(&IntVector(u), &IntVector(v), &order)?;
            Ok(json!({ "result": ordering_name(r) }))
        }
        ZnCmd::Perturb { order, constraints } => {
            let order = zn_order(order)?;
            let raw: Vec<Vec<i64>> = parse_json(constraints, "constraints")?;
            let constraints: Vec<IntVector> = raw.into_iter().map(IntVector).collect();
            let (perturbed, witness) = lattice::sikora_perturb(&order, &constraints)?;
            Ok(json!({
                "order": weight_order_json(&perturbed),
                "witness": witness.0,
            }))
        }
    }
}

fn run_klein(cmd: &KleinCmd) -> Result<serde_json::Value, CliError> {
    match cmd {
        KleinCmd::Compare { a, b } => {
            let a: (i64, i64) = parse_json(a, "klein element")?;
            let b: (i64, i64) = parse_json(b, "klein element")?;
            let r = lattice::klein_compare(KleinElement::new(a.0, a.1), KleinElement::new(b.0, b.1));
            Ok(json!({ "result": ordering_name(r) }))
        }
    }
}

fn run_germ(cmd: &GermCmd) -> Result<serde_json::Value, CliError> {
    #[derive(serde::Deserialize)]
    struct RawRat {
        num: i64,
        den: i64,
    }
    #[derive(serde::Deserialize)]
    struct RawGerm {
        shear: RawRat,
        scale: RawRat,
    }
    fn germ(raw: RawGerm) -> Result<lattice::GermElement, CliError> {
        if raw.shear.den == 0 || raw.scale.den == 0 {
            return Err(CliError::input("zero denominator in germ"));
        }
        let scale = num_rational::BigRational::new(raw.scale.num.into(), raw.scale.den.into());
        if scale <= num_rational::BigRational::from_integer(0.into()) {
            return Err(CliError::input("germ scale must be positive"));
        }
        Ok(lattice::GermElement::new(
            num_rational::BigRational::new(raw.shear.num.into(), raw.shear.den.into()),
            scale,
        ))
    }
    match cmd {
        GermCmd::Compare { a, b } => {
            let a = germ(parse_json(a, "germ")?)?;
            let b = germ(parse_json(b, "germ")?)?;
            Ok(json!({ "result": ordering_name(lattice::germ_compare(&a, &b)) }))
        }
    }
}

fn run_pl(cmd: &PlCmd) -> Result<serde_json::Value, CliError> {
    let load = |arg: &str| -> Result<pl::PLMap, CliError> { parse_json(arg, "pl map") };
    match cmd {
        PlCmd::Compose { f, g } => {
            let f = load(f)?;
            let g = load(g)?;
            Ok(serde_json::to_value(f.compose(&g)).unwrap())
        }
        PlCmd::Invert { f } => Ok(serde_json::to_value(load(f)?.invert()).unwrap()),
        PlCmd::Compare { f, g } => {
            let r = pl::chehata_compare(&load(f)?, &load(g)?);
            Ok(json!({ "result": ordering_name(r) }))
        }
        PlCmd::TestpointCompare { probe_cap, f, g } => {
            let r = pl::testpoint_compare(&load(f)?, &load(g)?, &RationalEnumeration, *probe_cap)?;
            Ok(json!({ "result": ordering_name(r) }))
        }
    }
}

fn run_pres(cmd: &PresCmd) -> Result<serde_json::Value, CliError> {
    match cmd {
        PresCmd::Abelianize { file } => {
            let p = load_presentation(file)?;
            let ab = presentation::abelianization(&p);
            Ok(json!({ "rank": ab.rank, "torsion": ab.torsion.iter().map(|d| *d as i64).collect::<Vec<_>>() }))
        }
        PresCmd::RefuteBiorder { rules, degree_cap, file } => {
            let p = load_presentation(file)?;
            let mut bounds = RefuteBounds { degree_cap: *degree_cap, ..RefuteBounds::default() };
            if let Some(list) = rules {
                bounds.rules = parse_rules(list)?;
            }
            match presentation::biorder_refute(&p, &bounds) {
                RefuteOutcome::Refuted(cert) => Ok(json!({
                    "result": "Refuted",
                    "rule": cert.kind_name(),
                    "certificate": cert,
                })),
                RefuteOutcome::Unknown => Ok(json!({ "result": "Unknown" })),
            }
        }
        PresCmd::CheckLo { file } => {
            let p = load_presentation(file)?;
            let schema = CaseSchema::default_for(&p);
            match presentation::non_lo_case_analysis(&p, &schema, ConeBounds::default())? {
                NonLoOutcome::NotLeftOrderable { schema, certificates } => Ok(json!({
                    "result": "NotLeftOrderableRelativeToSchema",
                    "schema": schema,
                    "cases": certificates
                        .iter()
                        .map(|(name, cert)| json!({ "case": name, "certificate": cert }))
                        .collect::<Vec<_>>(),
                })),
                NonLoOutcome::Unknown { failing_case } => {
                    Ok(json!({ "result": "Unknown", "open_case": failing_case }))
                }
            }
        }
        PresCmd::QuotientWitness { targets, noncommuting, degree_cap, file } => {
            let p = load_presentation(file)?;
            let (u, v) = targets
                .split_once(',')
                .ok_or_else(|| CliError::input("targets must be two comma-separated words"))?;
            let u = p.parse_word(u)?;
            let v = p.parse_word(v)?;
            let condition = if *noncommuting {
                TargetCondition::NonCommutingImages
            } else {
                TargetCondition::DistinctImages
            };
            match presentation::finite_quotient_witness(&p, (&u, &v), condition, *degree_cap) {
                Some(w) => Ok(json!({
                    "result": "Witness",
                    "certificate": Certificate::new(
                        presentation::CertificateKind::QuotientWitness(w)
                    ),
                })),
                None => Ok(json!({ "result": "NotFound" })),
            }
        }
        PresCmd::Verify { certificate, file } => {
            let p = load_presentation(file)?;
            let payload = read_payload(certificate)?;
            let cert: Certificate = serde_json::from_str(&payload)
                .map_err(|e| CliError::input(format!("parsing certificate: {e}")))?;
            Ok(json!({ "verified": presentation::verify_certificate(&cert, &p)? }))
        }
    }
}

#[derive(Serialize)]
struct NamedReport {
    name: String,
    #[serde(flatten)]
    report: CheckReport,
}

#[derive(Serialize)]
struct SuiteReport {
    suite: String,
    seed: u64,
    ok: bool,
    reports: Vec<NamedReport>,
}

fn suite_report(suite: &str, seed: u64, reports: Vec<(String, CheckReport)>) -> serde_json::Value {
    let ok = reports.iter().all(|(_, r)| r.is_clean());
    let reports =
        reports.into_iter().map(|(name, report)| NamedReport { name, report }).collect();
    serde_json::to_value(SuiteReport { suite: suite.into(), seed, ok, reports }).unwrap()
}

fn run_harness(cmd: &HarnessCmd) -> Result<serde_json::Value, CliError> {
    let HarnessCmd::Run { suite, seed, samples } = cmd;
    let n = *samples;
    let seed = *seed;
    let budget = CheckBudget::bounded(4 * n, 4 * n);
    let value = match suite.as_str() {
        "dehornoy-b3" | "dehornoy-b4" => {
            let strands = if suite == "dehornoy-b3" { 3 } else { 4 };
            let max_len = if strands == 3 { 8 } else { 12 };
            let oracle = braid::DehornoyOrder::new(strands);
            let s = braid::sample_words(seed, n, strands, max_len);
            suite_report(
                suite,
                seed,
                vec![
                    ("order-laws".into(), check_order_laws(&oracle, &s, budget)),
                    ("cone-axioms".into(), check_cone_axioms(&oracle, &s, budget)),
                    ("left-invariance".into(), verify_left_invariance(&oracle, &s, budget)),
                ],
            )
        }
        "conjugate-b3" => {
            let conjugator = BraidWord::new(3, vec![-1]).unwrap();
            let oracle = braid::ConjugateDehornoy { conjugator };
            let s = braid::sample_words(seed, n, 3, 8);
            suite_report(
                suite,
                seed,
                vec![("left-invariance".into(), verify_left_invariance(&oracle, &s, budget))],
            )
        }
        "magnus-f2" => {
            let oracle = magnus::MagnusOrder { rank: 2 };
            let s = magnus::sample_words(seed, n, 2, 8);
            suite_report(
                suite,
                seed,
                vec![
                    ("order-laws".into(), check_order_laws(&oracle, &s, budget)),
                    ("bi-invariance".into(), verify_bi_invariance(&oracle, &s, budget)),
                ],
            )
        }
        "klein" => {
            let oracle = lattice::KleinOrder;
            let s = SampleSet::from_elements(seed, lattice::klein_box(4));
            suite_report(
                suite,
                seed,
                vec![
                    ("order-laws".into(), check_order_laws(&oracle, &s, budget)),
                    ("left-invariance".into(), verify_left_invariance(&oracle, &s, budget)),
                ],
            )
        }
        "germ" => {
            let oracle = lattice::GermOrder;
            let s = lattice::sample_germs(seed, n);
            suite_report(
                suite,
                seed,
                vec![("bi-invariance".into(), verify_bi_invariance(&oracle, &s, budget))],
            )
        }
        "chehata" => {
            let oracle = pl::ChehataOrder;
            let s = pl::sample_maps(seed, n, 3, 12);
            suite_report(
                suite,
                seed,
                vec![("bi-invariance".into(), verify_bi_invariance(&oracle, &s, budget))],
            )
        }
        "testpoint" => {
            let oracle = pl::TestpointOrder::default();
            let s = pl::sample_maps(seed, n, 3, 12);
            suite_report(
                suite,
                seed,
                vec![("left-invariance".into(), verify_left_invariance(&oracle, &s, budget))],
            )
        }
        "zn-lex" => {
            let oracle = lattice::ZnOrder(WeightOrder::lex(2));
            let s = lattice::sample_vectors(seed, n, 2, 6);
            suite_report(
                suite,
                seed,
                vec![("bi-invariance".into(), verify_bi_invariance(&oracle, &s, budget))],
            )
        }
        other => return Err(CliError::input(format!("unknown suite {other:?}"))),
    };
    Ok(value)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            let rendered = if cli.pretty {
                serde_json::to_string_pretty(&value).unwrap()
            } else {
                serde_json::to_string(&value).unwrap()
            };
            println!("{rendered}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
