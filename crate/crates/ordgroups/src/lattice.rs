//! Concrete orders on small groups, all over exact rationals: weight-vector
//! orders on `Z^n` and a perturbation showing none of them is isolated, the
//! Klein bottle group's left order together with its right-invariance
//! failure, and the order on the group of germs of boundary-fixing linear
//! maps of a half plane.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::{OrderOracle, SampleSet, Sign};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("vector has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("constraint {0:?} is not positive under the given order")]
    InfeasibleConstraints(Vec<i64>),
    #[error("the zero vector cannot be a strict constraint")]
    ZeroConstraint,
}

/// An element of `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntVector(pub Vec<i64>);

impl IntVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn dot(w: &[BigRational], v: &IntVector) -> BigRational {
    w.iter().zip(&v.0).map(|(a, b)| a * BigRational::from(BigInt::from(*b))).sum()
}

/// A bi-order on `Z^n`: compare dot products against a finite sequence of
/// rational weight vectors lexicographically, then fall back to comparing
/// coordinates in a fixed tie-break ordering. The fallback makes the order
/// total whatever the weights are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightOrder {
    pub dimension: usize,
    pub weights: Vec<Vec<BigRational>>,
    pub tie_break: Vec<usize>,
}

impl WeightOrder {
    pub fn new(
        dimension: usize,
        weights: Vec<Vec<BigRational>>,
        tie_break: Vec<usize>,
    ) -> Result<Self, LatticeError> {
        for w in &weights {
            if w.len() != dimension {
                return Err(LatticeError::DimensionMismatch { expected: dimension, got: w.len() });
            }
        }
        let mut seen = tie_break.clone();
        seen.sort_unstable();
        if tie_break.len() != dimension || seen != (0..dimension).collect::<Vec<_>>() {
            return Err(LatticeError::DimensionMismatch {
                expected: dimension,
                got: tie_break.len(),
            });
        }
        Ok(WeightOrder { dimension, weights, tie_break })
    }

    /// Plain lexicographic order: no weights, identity tie-break.
    pub fn lex(dimension: usize) -> Self {
        WeightOrder { dimension, weights: Vec::new(), tie_break: (0..dimension).collect() }
    }
}

/// Compare under the weight order.
pub fn zn_compare(u: &IntVector, v: &IntVector, order: &WeightOrder) -> Result<Ordering, LatticeError> {
    for x in [u, v] {
        if x.dim() != order.dimension {
            return Err(LatticeError::DimensionMismatch { expected: order.dimension, got: x.dim() });
        }
    }
    for w in &order.weights {
        let du = dot(w, u);
        let dv = dot(w, v);
        match du.cmp(&dv) {
            Ordering::Equal => continue,
            other => return Ok(other),
        }
    }
    for &i in &order.tie_break {
        match u.0[i].cmp(&v.0[i]) {
            Ordering::Equal => continue,
            other => return Ok(other),
        }
    }
    Ok(Ordering::Equal)
}

pub fn zn_sign(v: &IntVector, order: &WeightOrder) -> Result<Sign, LatticeError> {
    let zero = IntVector(vec![0; order.dimension]);
    Ok(match zn_compare(v, &zero, order)? {
        Ordering::Less => Sign::Negative,
        Ordering::Equal => Sign::Zero,
        Ordering::Greater => Sign::Positive,
    })
}

/// Collapse a weight order onto a single rational vector that classifies any
/// fixed finite set of vectors the same way: weights are combined as
/// `w_1 + e w_2 + e^2 w_3 + ...` (tie-break coordinates appended as unit
/// vectors), with `e` halved until every constraint keeps its strict sign.
fn composite_weight(order: &WeightOrder, constraints: &[IntVector]) -> Vec<BigRational> {
    let mut layers: Vec<Vec<BigRational>> = order.weights.clone();
    for &i in &order.tie_break {
        let mut unit = vec![BigRational::zero(); order.dimension];
        unit[i] = BigRational::one();
        layers.push(unit);
    }
    let mut eps = rat(1, 2);
    'shrink: loop {
        let mut combined = vec![BigRational::zero(); order.dimension];
        let mut scale = BigRational::one();
        for layer in &layers {
            for (c, l) in combined.iter_mut().zip(layer) {
                *c += &scale * l;
            }
            scale *= &eps;
        }
        for v in constraints {
            if !dot(&combined, v).is_positive() {
                eps /= rat(2, 1);
                continue 'shrink;
            }
        }
        return combined;
    }
}

/// Given finitely many vectors positive in `order`, produce a different
/// weight order in which they are all still positive, together with a witness
/// vector the two orders classify oppositely.
pub fn sikora_perturb(
    order: &WeightOrder,
    constraints: &[IntVector],
) -> Result<(WeightOrder, IntVector), LatticeError> {
    let n = order.dimension;
    for c in constraints {
        if c.dim() != n {
            return Err(LatticeError::DimensionMismatch { expected: n, got: c.dim() });
        }
        if c.is_zero() {
            return Err(LatticeError::ZeroConstraint);
        }
        if zn_sign(c, order)? != Sign::Positive {
            return Err(LatticeError::InfeasibleConstraints(c.0.clone()));
        }
    }

    let base = composite_weight(order, constraints);
    // effective leading weight of the input order, for the separation witness
    let input_leading = if order.weights.is_empty() {
        let mut unit = vec![BigRational::zero(); n];
        unit[order.tie_break[0]] = BigRational::one();
        unit
    } else {
        order.weights[0].clone()
    };

    // deterministically nudge the composite weight along coordinate
    // directions until it is not proportional to the input's leading weight
    // and still keeps every constraint strictly positive
    for coord in 0..n {
        for dir in [1i64, -1] {
            let mut delta = rat(dir, 2);
            for _ in 0..64 {
                let mut candidate = base.clone();
                candidate[coord] += &delta;
                let keeps_constraints =
                    constraints.iter().all(|c| dot(&candidate, c).is_positive());
                if keeps_constraints {
                    if let Some(witness) = separation_witness(&input_leading, &candidate) {
                        if zn_sign(&witness, order)? == Sign::Positive {
                            let perturbed =
                                WeightOrder::new(n, vec![candidate], order.tie_break.clone())?;
                            debug_assert_eq!(
                                zn_sign(&witness, &perturbed)?,
                                Sign::Negative
                            );
                            return Ok((perturbed, witness));
                        }
                    }
                }
                delta /= rat(2, 1);
            }
        }
    }
    unreachable!("a non-proportional perturbation always exists in dimension >= 2");
}

/// An integer vector `v` with `<lead, v> > 0 > <cand, v>`, when `cand` is not
/// a positive multiple of `lead`. Built from the component of `lead`
/// orthogonal to `cand`, pulled slightly against `cand`.
fn separation_witness(lead: &[BigRational], cand: &[BigRational]) -> Option<IntVector> {
    let dotp = |a: &[BigRational], b: &[BigRational]| -> BigRational {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    };
    let cc = dotp(cand, cand);
    let lc = dotp(lead, cand);
    let ll = dotp(lead, lead);
    // Cauchy-Schwarz is strict unless proportional
    if (&ll * &cc - &lc * &lc).is_zero() {
        return None;
    }
    // u = lead*<c,c> - cand*<l,c>  is orthogonal to cand with <lead,u> > 0
    let u: Vec<BigRational> =
        lead.iter().zip(cand).map(|(l, c)| l * &cc - c * &lc).collect();
    // v = u - t*cand with small t keeps <lead,v> > 0 and makes <cand,v> < 0
    let lu = &ll * &cc - &lc * &lc;
    let mut t = rat(1, 2);
    for _ in 0..128 {
        let v: Vec<BigRational> = u.iter().zip(cand).map(|(a, c)| a - &t * c).collect();
        if (&lu - &t * &lc).is_positive() && (-(&t) * &cc).is_negative() {
            // clear denominators to land in Z^n
            let denom_lcm =
                v.iter().map(|x| x.denom().clone()).fold(BigInt::one(), num_integer::lcm);
            let ints: Vec<i64> = v
                .iter()
                .map(|x| {
                    let scaled = x * BigRational::from(denom_lcm.clone());
                    i64::try_from(scaled.to_integer()).expect("witness coordinate overflow")
                })
                .collect();
            if ints.iter().any(|&c| c != 0) {
                return Some(IntVector(ints));
            }
        }
        t /= rat(2, 1);
    }
    None
}

/// `Z^n` with a weight order, as a comparison oracle under vector addition.
#[derive(Debug, Clone)]
pub struct ZnOrder(pub WeightOrder);

impl OrderOracle for ZnOrder {
    type Elem = IntVector;

    fn compare(&self, a: &IntVector, b: &IntVector) -> Ordering {
        zn_compare(a, b, &self.0).expect("dimension mismatch in oracle")
    }
    fn multiply(&self, a: &IntVector, b: &IntVector) -> IntVector {
        a.add(b)
    }
    fn invert(&self, a: &IntVector) -> IntVector {
        a.neg()
    }
    fn identity(&self) -> IntVector {
        IntVector(vec![0; self.0.dimension])
    }
    fn describe(&self, a: &IntVector) -> String {
        format!("{:?}", a.0)
    }
}

/// An element `x^m y^n` of the group with presentation
/// `< x, y | y^{-1} x y = x^{-1} >`, in its unique normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KleinElement {
    pub x_exp: i64,
    pub y_exp: i64,
}

impl KleinElement {
    pub fn new(x_exp: i64, y_exp: i64) -> Self {
        KleinElement { x_exp, y_exp }
    }

    pub fn identity() -> Self {
        KleinElement { x_exp: 0, y_exp: 0 }
    }
}

fn parity_sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `(m1, n1) * (m2, n2) = (m1 + (-1)^{n1} m2, n1 + n2)`.
pub fn klein_mul(a: KleinElement, b: KleinElement) -> KleinElement {
    KleinElement { x_exp: a.x_exp + parity_sign(a.y_exp) * b.x_exp, y_exp: a.y_exp + b.y_exp }
}

pub fn klein_inv(a: KleinElement) -> KleinElement {
    KleinElement { x_exp: -parity_sign(a.y_exp) * a.x_exp, y_exp: -a.y_exp }
}

/// Left order from the exact sequence over the `y`-quotient: `a < b` iff
/// `a^{-1} b` has positive `y` exponent, or zero `y` exponent and positive
/// `x` exponent.
pub fn klein_compare(a: KleinElement, b: KleinElement) -> Ordering {
    let d = klein_mul(klein_inv(a), b);
    0.cmp(&d.y_exp).then_with(|| 0.cmp(&d.x_exp))
}

/// The Klein bottle group order as a comparison oracle.
#[derive(Debug, Clone, Default)]
pub struct KleinOrder;

impl OrderOracle for KleinOrder {
    type Elem = KleinElement;

    fn compare(&self, a: &KleinElement, b: &KleinElement) -> Ordering {
        klein_compare(*a, *b)
    }
    fn multiply(&self, a: &KleinElement, b: &KleinElement) -> KleinElement {
        klein_mul(*a, *b)
    }
    fn invert(&self, a: &KleinElement) -> KleinElement {
        klein_inv(*a)
    }
    fn identity(&self) -> KleinElement {
        KleinElement::identity()
    }
    fn describe(&self, a: &KleinElement) -> String {
        format!("x^{} y^{}", a.x_exp, a.y_exp)
    }
}

/// Every Klein element with both exponents bounded by `bound` in absolute
/// value, in a fixed scan order.
pub fn klein_box(bound: i64) -> Vec<KleinElement> {
    let mut out = Vec::new();
    for m in -bound..=bound {
        for n in -bound..=bound {
            out.push(KleinElement::new(m, n));
        }
    }
    out
}

/// A germ of a boundary-fixing linear map of the upper half plane, i.e. the
/// matrix with rows `(1, shear)` and `(0, scale)`, `scale > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermElement {
    pub shear: BigRational,
    pub scale: BigRational,
}

impl GermElement {
    pub fn new(shear: BigRational, scale: BigRational) -> Self {
        assert!(scale.is_positive(), "scale must be positive");
        GermElement { shear, scale }
    }

    pub fn from_ints(shear: (i64, i64), scale: (i64, i64)) -> Self {
        GermElement::new(rat(shear.0, shear.1), rat(scale.0, scale.1))
    }

    pub fn identity() -> Self {
        GermElement { shear: BigRational::zero(), scale: BigRational::one() }
    }
}

/// Matrix product: `(s1, r1) * (s2, r2) = (s2 + s1 r2, r1 r2)`.
pub fn germ_mul(a: &GermElement, b: &GermElement) -> GermElement {
    GermElement {
        shear: &b.shear + &a.shear * &b.scale,
        scale: &a.scale * &b.scale,
    }
}

pub fn germ_inv(a: &GermElement) -> GermElement {
    GermElement { shear: -(&a.shear / &a.scale), scale: a.scale.recip() }
}

fn germ_sign(a: &GermElement) -> Sign {
    match a.scale.cmp(&BigRational::one()) {
        Ordering::Greater => Sign::Positive,
        Ordering::Less => Sign::Negative,
        Ordering::Equal => {
            if a.shear.is_positive() {
                Sign::Positive
            } else if a.shear.is_negative() {
                Sign::Negative
            } else {
                Sign::Zero
            }
        }
    }
}

/// Bi-order on the semidirect product: positive iff the scale exceeds 1, or
/// the scale is 1 and the shear is positive.
pub fn germ_compare(a: &GermElement, b: &GermElement) -> Ordering {
    match germ_sign(&germ_mul(&germ_inv(a), b)) {
        Sign::Positive => Ordering::Less,
        Sign::Negative => Ordering::Greater,
        Sign::Zero => Ordering::Equal,
    }
}

/// The germ-group order as a comparison oracle.
#[derive(Debug, Clone, Default)]
pub struct GermOrder;

impl OrderOracle for GermOrder {
    type Elem = GermElement;

    fn compare(&self, a: &GermElement, b: &GermElement) -> Ordering {
        germ_compare(a, b)
    }
    fn multiply(&self, a: &GermElement, b: &GermElement) -> GermElement {
        germ_mul(a, b)
    }
    fn invert(&self, a: &GermElement) -> GermElement {
        germ_inv(a)
    }
    fn identity(&self) -> GermElement {
        GermElement::identity()
    }
    fn describe(&self, a: &GermElement) -> String {
        format!("(shear {}, scale {})", a.shear, a.scale)
    }
}

/// Seeded germ elements with small numerators and denominators.
pub fn sample_germs(seed: u64, count: usize) -> SampleSet<GermElement> {
    SampleSet::from_fn(seed, count, |rng| {
        let shear = rat(rng.gen_range(-9..=9), rng.gen_range(1..=9));
        let scale = rat(rng.gen_range(1..=9), rng.gen_range(1..=9));
        GermElement::new(shear, scale)
    })
}

/// Seeded vectors with coordinates in `-bound..=bound`.
pub fn sample_vectors(seed: u64, count: usize, dimension: usize, bound: i64) -> SampleSet<IntVector> {
    SampleSet::from_fn(seed, count, |rng| {
        IntVector((0..dimension).map(|_| rng.gen_range(-bound..=bound)).collect())
    })
}
