//! Predicted factorisation patterns of `ψ_ℓ` and their empirical check.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::curve::{Curve, CurveOrderData};
use crate::divpoly::{check_torsion_prime, psi};
use crate::error::{Error, Result};
use crate::frobclass::{classify_with, FrobeniusClass, FrobeniusKind};
use crate::poly::{factor, pattern_of, FactorPattern};

/// Marker carried by predictions outside the theorem's hypothesis.
pub const OUT_OF_SCOPE_REASON: &str =
    "same-field case, prediction out of scope";

pub fn h_func(x: u64) -> u64 {
    if x % 2 == 1 { x } else { x / 2 }
}

/// 2-adic valuation; 0 for odd inputs.
pub fn v2(mut x: u64) -> u32 {
    assert!(x > 0, "v2 of zero");
    let mut v = 0;
    while x.is_multiple_of(2) {
        x /= 2;
        v += 1;
    }
    v
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn i_func(x: u64, y: u64) -> u64 {
    let l = lcm(x, y);
    if x.is_multiple_of(2) && y.is_multiple_of(2) && v2(x) == v2(y) { l / 2 } else { l }
}

/// The earlier form that halves the lcm for every pair of even arguments.
pub fn i_func_uncorrected(x: u64, y: u64) -> u64 {
    let l = lcm(x, y);
    if x.is_multiple_of(2) && y.is_multiple_of(2) { l / 2 } else { l }
}

/// Formula output before and after merging equal degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternFormula {
    pub raw: Vec<(usize, usize)>,
    pub pattern: FactorPattern,
}

impl PatternFormula {
    fn from_raw(raw: Vec<(usize, usize)>) -> Self {
        let pattern = FactorPattern::from_entries(raw.iter().copied());
        PatternFormula { raw, pattern }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub class: FrobeniusClass,
    pub predicted: PatternFormula,
    /// Present only when the uncorrected `i` changes the raw entries.
    pub uncorrected: Option<PatternFormula>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PredictionOutcome {
    Predicted(Prediction),
    OutOfScope { class: FrobeniusClass, reason: String },
}

impl PredictionOutcome {
    pub fn prediction(&self) -> Option<&Prediction> {
        match self {
            PredictionOutcome::Predicted(p) => Some(p),
            PredictionOutcome::OutOfScope { .. } => None,
        }
    }

    pub fn pattern(&self) -> Option<&FactorPattern> {
        self.prediction().map(|p| &p.predicted.pattern)
    }
}

fn exact(num: u64, den: u64, what: &str) -> Result<usize> {
    if den == 0 || !num.is_multiple_of(den) {
        return Err(Error::Internal(format!("{what}: {num} is not divisible by {den}")));
    }
    Ok((num / den) as usize)
}

fn split_raw(ell: u64, alpha: u64, beta: u64, i: fn(u64, u64) -> u64) -> Result<Vec<(usize, usize)>> {
    let (ha, hb, iab) = (h_func(alpha), h_func(beta), i(alpha, beta));
    Ok(vec![
        (ha as usize, exact(ell - 1, 2 * ha, "count for h(alpha)")?),
        (hb as usize, exact(ell - 1, 2 * hb, "count for h(beta)")?),
        (iab as usize, exact((ell - 1) * (ell - 1), 2 * iab, "count for i(alpha, beta)")?),
    ])
}

/// Pattern of `ψ_ℓ` for the two classes covered by the theorem.
pub fn predict(fc: &FrobeniusClass) -> Result<PredictionOutcome> {
    let ell = fc.ell;
    let (predicted, uncorrected) = match fc.kind {
        FrobeniusKind::SplitDistinct { alpha, beta, .. } => {
            let raw = split_raw(ell, alpha, beta, i_func)?;
            let old = split_raw(ell, alpha, beta, i_func_uncorrected)?;
            let uncorrected = (old != raw).then(|| PatternFormula::from_raw(old));
            (PatternFormula::from_raw(raw), uncorrected)
        }
        FrobeniusKind::Jordan { alpha, .. } => {
            let ha = h_func(alpha);
            let n = exact(ell - 1, 2 * ha, "count for h(alpha)")?;
            (PatternFormula::from_raw(vec![(ha as usize, n), ((ha * ell) as usize, n)]), None)
        }
        _ => {
            return Ok(PredictionOutcome::OutOfScope { class: *fc, reason: OUT_OF_SCOPE_REASON.into() });
        }
    };
    let want = ((ell * ell - 1) / 2) as usize;
    if predicted.pattern.degree_sum() != want {
        return Err(Error::Internal(format!(
            "predicted pattern {} for {fc} has degree sum {}, expected {want}",
            predicted.pattern,
            predicted.pattern.degree_sum()
        )));
    }
    Ok(PredictionOutcome::Predicted(Prediction { class: *fc, predicted, uncorrected }))
}

/// Wall-clock time spent in each stage of [`verify`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StageTimings {
    pub count: Duration,
    pub psi: Duration,
    pub classify: Duration,
    pub factor: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub order: CurveOrderData,
    pub class: FrobeniusClass,
    pub prediction: PredictionOutcome,
    pub psi_degree: usize,
    pub empirical: FactorPattern,
    pub timings: StageTimings,
}

impl Verification {
    /// `None` when the class is out of scope.
    pub fn matches(&self) -> Option<bool> {
        self.prediction.pattern().map(|p| p == &self.empirical)
    }
}

/// Classify, predict, then factor `ψ_ℓ` and compare.
pub fn verify(c: &Curve, ell: u64, seed: u64) -> Result<Verification> {
    check_torsion_prime(ell, c.field().characteristic())?;
    let mut timings = StageTimings::default();
    let t0 = Instant::now();
    let order = c.count_points()?;
    timings.count = t0.elapsed();
    let t0 = Instant::now();
    let psi_x = psi(c, ell as usize)?.xpart;
    timings.psi = t0.elapsed();
    let t0 = Instant::now();
    let class = classify_with(c, ell, &order, &psi_x)?;
    let prediction = predict(&class)?;
    timings.classify = t0.elapsed();
    let t0 = Instant::now();
    let empirical = pattern_of(&factor(&psi_x, seed)?);
    timings.factor = t0.elapsed();
    Ok(Verification {
        order,
        class,
        prediction,
        psi_degree: psi_x.degree().unwrap_or(0),
        empirical,
        timings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_prime_field;
    use proptest::prelude::*;

    fn class(ell: u64, kind: FrobeniusKind) -> FrobeniusClass {
        FrobeniusClass { ell, trace_mod_ell: 0, q_mod_ell: 0, kind }
    }

    #[test]
    fn helper_values() {
        assert_eq!([h_func(2), h_func(3), h_func(4)], [1, 3, 2]);
        assert_eq!([i_func(2, 4), i_func(2, 6), i_func(3, 4)], [4, 3, 12]);
        assert_eq!(
            [i_func_uncorrected(2, 4), i_func_uncorrected(2, 6), i_func_uncorrected(3, 4)],
            [2, 3, 12]
        );
        assert_eq!([v2(1), v2(12), v2(64)], [0, 2, 6]);
    }

    #[test]
    fn corrected_and_uncorrected_differ_exactly_on_unequal_valuations() {
        for x in 1..=64u64 {
            for y in 1..=64u64 {
                let differ = i_func(x, y) != i_func_uncorrected(x, y);
                let expect = x % 2 == 0 && y % 2 == 0 && v2(x) != v2(y);
                assert_eq!(differ, expect, "({x}, {y})");
            }
        }
    }

    #[test]
    fn split_distinct_example_prediction() {
        let fc = class(5, FrobeniusKind::SplitDistinct { alpha: 2, rho: 4, beta: 4 });
        let p = predict(&fc).unwrap();
        let p = p.prediction().unwrap();
        assert_eq!(p.predicted.pattern.entries(), &[(1, 2), (2, 1), (4, 2)]);
        let old = p.uncorrected.as_ref().unwrap();
        assert_eq!(old.raw, vec![(1, 2), (2, 1), (2, 4)]);
        assert_eq!(old.pattern.entries(), &[(1, 2), (2, 5)]);
    }

    #[test]
    fn jordan_prediction() {
        let fc = class(5, FrobeniusKind::Jordan { alpha: 4, rho: 2 });
        let p = predict(&fc).unwrap();
        assert_eq!(p.pattern().unwrap().entries(), &[(2, 1), (10, 1)]);
        assert!(p.prediction().unwrap().uncorrected.is_none());
    }

    #[test]
    fn out_of_scope_classes() {
        for kind in [
            FrobeniusKind::Scalar { alpha: 1, rho: 1 },
            FrobeniusKind::SplitEqualOrders { alpha: 4, rho: 2 },
            FrobeniusKind::Irreducible { alpha: 8 },
        ] {
            match predict(&class(5, kind)).unwrap() {
                PredictionOutcome::OutOfScope { reason, .. } => assert_eq!(reason, OUT_OF_SCOPE_REASON),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn every_in_scope_class_has_integral_counts() {
        for ell in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let divs: Vec<u64> = (1..ell).filter(|d| (ell - 1) % d == 0).collect();
            for &a in &divs {
                for &b in divs.iter().filter(|&&b| b > a) {
                    let fc = class(ell, FrobeniusKind::SplitDistinct { alpha: a, rho: 0, beta: b });
                    let p = predict(&fc).unwrap();
                    assert_eq!(p.pattern().unwrap().degree_sum() as u64, (ell * ell - 1) / 2);
                }
                let p = predict(&class(ell, FrobeniusKind::Jordan { alpha: a, rho: 0 })).unwrap();
                assert_eq!(p.pattern().unwrap().degree_sum() as u64, (ell * ell - 1) / 2);
            }
        }
    }

    #[test]
    fn verify_example_and_scalar_case() {
        let k = make_prime_field(17).unwrap();
        let v = verify(&Curve::from_ints(&k, 3, 6).unwrap(), 5, 0).unwrap();
        assert_eq!(v.matches(), Some(true));
        assert_eq!(v.empirical.entries(), &[(1, 2), (2, 1), (4, 2)]);
        assert_eq!(v.psi_degree, 12);

        // first curve over F_13 whose full 3-torsion is rational up to sign
        let k = make_prime_field(13).unwrap();
        let found = (0..13).flat_map(|a| (0..13).map(move |b| (a, b))).find_map(|(a, b)| {
            let c = Curve::from_ints(&k, a, b).ok()?;
            let v = verify(&c, 3, 0).ok()?;
            matches!(v.class.kind, FrobeniusKind::Scalar { .. }).then_some(v)
        });
        let v = found.expect("a Scalar class curve over F_13 for l = 3");
        assert_eq!(v.matches(), None);
        assert_eq!(v.empirical.degree_sum(), 4);
    }

    proptest! {
        #[test]
        fn merge_is_order_insensitive(
            entries in proptest::collection::vec((1usize..12, 1usize..6), 1..6),
            rot in 0usize..6,
        ) {
            let mut shuffled = entries.clone();
            let n = shuffled.len();
            shuffled.rotate_left(rot % n);
            shuffled.reverse();
            prop_assert_eq!(FactorPattern::from_entries(entries), FactorPattern::from_entries(shuffled));
        }
    }
}
