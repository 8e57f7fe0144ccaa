//! The largest `c` for which the cyclic triple `(a, b, c)` is mutation-cyclic.
//!
//! For fixed `2 ≤ a ≤ b` the verdicts along `c = b, b+1, …` form a cyclic
//! prefix followed by an acyclic suffix, and the switch point `c0` lies in
//! `[ab − b, ab − 1]`. [`threshold_c0`] finds it by classifying every `c`
//! in that window and refuses to answer if the window is not monotone.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::classifier::{Classifier, Verdict};
use crate::error::{Error, Result};
use crate::quiver::SortedTriple;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanPoint {
    #[serde(with = "crate::decimal")]
    pub c: BigInt,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdResult {
    #[serde(with = "crate::decimal")]
    pub a: BigInt,
    #[serde(with = "crate::decimal")]
    pub b: BigInt,
    #[serde(with = "crate::decimal")]
    pub c0: BigInt,
    /// Every `c` in `[ab − b, ab − 1]`, ascending.
    pub scan_evidence: Vec<ScanPoint>,
}

fn check_pair(a: &BigInt, b: &BigInt) -> Result<()> {
    if *a < BigInt::from(2) || a > b {
        return Err(Error::InvalidArgument(format!(
            "threshold needs 2 <= a <= b, got a = {a}, b = {b}"
        )));
    }
    Ok(())
}

fn verdict_of(classifier: &Classifier, a: &BigInt, b: &BigInt, c: &BigInt) -> Result<Verdict> {
    let triple = SortedTriple::new(a.clone(), b.clone(), c.clone())?;
    Ok(classifier.classify(&triple.to_matrix())?.verdict)
}

pub fn threshold_c0(a: &BigInt, b: &BigInt) -> Result<ThresholdResult> {
    threshold_c0_with(&Classifier::default(), a, b)
}

pub fn threshold_c0_with(classifier: &Classifier, a: &BigInt, b: &BigInt) -> Result<ThresholdResult> {
    check_pair(a, b)?;
    let ab = a * b;
    let lo = &ab - b;
    let hi = &ab - BigInt::one();
    let mut evidence = Vec::new();
    let mut c = lo.clone();
    while c <= hi {
        let verdict = verdict_of(classifier, a, b, &c)?;
        evidence.push(ScanPoint {
            c: c.clone(),
            verdict,
        });
        c += 1;
    }
    let switch = evidence
        .iter()
        .position(|p| p.verdict == Verdict::MutationAcyclic)
        .ok_or_else(|| Error::Internal(format!("({a}, {b}, {hi}) classified cyclic")))?;
    if evidence[switch..]
        .iter()
        .any(|p| p.verdict == Verdict::MutationCyclic)
    {
        return Err(Error::Internal(format!(
            "verdicts for a = {a}, b = {b} are not a cyclic prefix"
        )));
    }
    if switch == 0 {
        return Err(Error::Internal(format!("({a}, {b}, {lo}) classified acyclic")));
    }
    let c0 = evidence[switch - 1].c.clone();
    Ok(ThresholdResult {
        a: a.clone(),
        b: b.clone(),
        c0,
        scan_evidence: evidence,
    })
}

/// `a² − 2`, the threshold when `b = a`.
pub fn c0_equal_case(a: &BigInt) -> Result<BigInt> {
    if *a < BigInt::from(2) {
        return Err(Error::InvalidArgument(format!("need a >= 2, got {a}")));
    }
    Ok(a * a - 2)
}

/// `a² + am − 3`, the threshold when `b = a + m` with `a > 2`, `1 ≤ m ≤ 4`.
pub fn c0_near_case(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    if *a <= BigInt::from(2) {
        return Err(Error::InvalidArgument(format!("need a > 2, got {a}")));
    }
    if *m < BigInt::one() || *m > BigInt::from(4) {
        return Err(Error::InvalidArgument(format!("need 1 <= m <= 4, got {m}")));
    }
    Ok(a * a + a * m - 3)
}

/// Verdicts for `c = c_lo..=c_hi`.
pub fn scan_window(a: &BigInt, b: &BigInt, c_lo: &BigInt, c_hi: &BigInt) -> Result<Vec<ScanPoint>> {
    check_pair(a, b)?;
    if b > c_lo || c_lo > c_hi {
        return Err(Error::InvalidArgument(format!(
            "window needs b <= c_lo <= c_hi, got b = {b}, [{c_lo}, {c_hi}]"
        )));
    }
    let classifier = Classifier::default();
    let mut points = Vec::new();
    let mut c = c_lo.clone();
    while c <= *c_hi {
        points.push(ScanPoint {
            verdict: verdict_of(&classifier, a, b, &c)?,
            c: c.clone(),
        });
        c += 1;
    }
    Ok(points)
}

/// True iff every `c ≤ c0` in the window is mutation-cyclic and every
/// `c > c0` mutation-acyclic, where `c0` comes from [`threshold_c0`].
pub fn verify_monotone_window(a: &BigInt, b: &BigInt, c_lo: &BigInt, c_hi: &BigInt) -> Result<bool> {
    let points = scan_window(a, b, c_lo, c_hi)?;
    let c0 = match threshold_c0(a, b) {
        Ok(t) => t.c0,
        Err(e) if e.is_internal() => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(points.iter().all(|p| {
        let expected = if p.c <= c0 {
            Verdict::MutationCyclic
        } else {
            Verdict::MutationAcyclic
        };
        p.verdict == expected
    }))
}
