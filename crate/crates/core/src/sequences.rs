//! The sequence `S_0 = 0`, `S_1 = 1`, `S_{n+2} = a·S_{n+1} − S_n`.
//!
//! [`s_recurrence`] is exact and authoritative. [`s_closed_form`] evaluates
//! the surd expression in `f64` and is only meaningful while `S_n < 2^52`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceParams {
    a: BigInt,
}

impl RecurrenceParams {
    /// Requires `a ≥ 2`.
    pub fn new(a: BigInt) -> Result<Self> {
        if a < BigInt::from(2) {
            return Err(Error::InvalidArgument(format!(
                "recurrence coefficient must be at least 2, got {a}"
            )));
        }
        Ok(RecurrenceParams { a })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
}

/// `S_0, …, S_n`.
pub fn s_terms(p: &RecurrenceParams, n: u64) -> Vec<BigInt> {
    let mut terms = Vec::with_capacity(n as usize + 1);
    terms.push(BigInt::zero());
    if n == 0 {
        return terms;
    }
    terms.push(BigInt::one());
    for i in 2..=n as usize {
        let next = &p.a * &terms[i - 1] - &terms[i - 2];
        terms.push(next);
    }
    terms
}

/// Exact `S_n`.
pub fn s_recurrence(p: &RecurrenceParams, n: u64) -> BigInt {
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &p.a * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Closed form: `n` when `a = 2`, otherwise
/// `((a + d)^n − (a − d)^n) / (2^n · d)` with `d = √(a² − 4)`.
pub fn s_closed_form(p: &RecurrenceParams, n: u64) -> f64 {
    if p.a == BigInt::from(2) {
        return n as f64;
    }
    let a = p.a.to_f64().unwrap_or(f64::INFINITY);
    let d = (a * a - 4.0).sqrt();
    let exp = i32::try_from(n).unwrap_or(i32::MAX);
    (((a + d) / 2.0).powi(exp) - ((a - d) / 2.0).powi(exp)) / d
}
