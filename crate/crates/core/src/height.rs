//! Mean traces and Cassels heights.
//!
//! The mean trace of `w_n^k` is `mu(d)/phi(d)` with `d` the order of the
//! term, so the mean trace of any stored representation is a weighted sum of
//! its coefficients. No reduction modulo the cyclotomic polynomial is needed.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{mobius, totient};
use crate::cyclo::{order_of_term, CycInt};
use crate::error::{Error, Result};
use crate::rat::Rat;

/// Exact Cassels height of one input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightReport {
    #[serde(serialize_with = "crate::rat::serialize_rat")]
    pub value: Rat,
    pub conductor_used: u64,
    pub term_count: usize,
}

fn positive(n: i64) -> Result<u64> {
    if n <= 0 {
        return Err(Error::Domain(format!(
            "expected a positive integer, got {n}"
        )));
    }
    Ok(n as u64)
}

/// Moebius function.
pub fn mu(n: i64) -> Result<i64> {
    Ok(mobius(positive(n)?))
}

/// Euler's totient.
pub fn phi(n: i64) -> Result<i64> {
    Ok(totient(positive(n)?) as i64)
}

/// `mu(n) / phi(n)`, the mean trace of a primitive `n`-th root of unity.
pub fn mu_phi(n: i64) -> Result<Rat> {
    let n = positive(n)?;
    Ok(mu_phi_u64(n))
}

fn mu_phi_u64(n: u64) -> Rat {
    Rat::new(BigInt::from(mobius(n)), BigInt::from(totient(n)))
}

/// Mean of the Galois conjugates.
pub fn mean_trace(x: &CycInt) -> Rat {
    let n = x.conductor();
    let mut by_order: HashMap<u64, BigInt> = HashMap::new();
    for (k, c) in x.terms() {
        *by_order.entry(order_of_term(n, k)).or_default() += c;
    }
    by_order
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .fold(Rat::zero(), |acc, (d, c)| {
            let m = mobius(d);
            if m == 0 {
                acc
            } else {
                acc + Rat::new(c * m, BigInt::from(totient(d)))
            }
        })
}

/// `M(x)`: the mean trace of `x * conj(x)`.
pub fn cassels_height(x: &CycInt) -> HeightReport {
    let sq = x * &x.conjugate();
    HeightReport {
        value: mean_trace(&sq),
        conductor_used: x.conductor(),
        term_count: x.term_count(),
    }
}

pub fn height(x: &CycInt) -> Rat {
    cassels_height(x).value
}

/// Smallest `i` in `[0, n)` with `mean_trace(w_n^i x) != 0`.
pub fn find_nonzero_trace_shift(x: &CycInt) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::Domain("zero has no nonzero-trace shift".into()));
    }
    let n = x.conductor();
    (0..n)
        .find(|&i| !mean_trace(&x.shift(i)).is_zero())
        .ok_or_else(|| Error::Invariant(format!("no nonzero-trace shift for {x}")))
}

/// Upper bound for the least number of roots of unity summing to `x`: the
/// smallest `N <= max_terms` such that `x` is a sum of `N` roots of unity of
/// order dividing `search_conductor`, or `None` when the bounded search
/// finds nothing.
///
/// Multisets are enumerated with nondecreasing exponents; a branch is cut as
/// soon as the residual `x - partial` has height above `remaining^2`, which
/// bounds the height of any sum of `remaining` roots of unity.
pub fn min_roots_upper(x: &CycInt, search_conductor: u64, max_terms: u32) -> Result<Option<u32>> {
    if x.is_zero() {
        return Err(Error::Domain("minroots needs a nonzero input".into()));
    }
    let target = x.embed(search_conductor)?;
    for count in 1..=max_terms {
        if search_multiset(&target, search_conductor, 0, count) {
            return Ok(Some(count));
        }
    }
    Ok(None)
}

fn search_multiset(residual: &CycInt, n: u64, min_exp: u64, remaining: u32) -> bool {
    let h = height(residual);
    if remaining == 0 {
        return h.is_zero();
    }
    let cap = BigInt::from(remaining) * BigInt::from(remaining);
    if h > Rat::from_integer(cap) || h.is_negative() {
        return false;
    }
    for k in min_exp..n {
        let root = CycInt::root(n, k as i64).expect("conductor is positive");
        let next = residual - &root;
        if search_multiset(&next, n, k, remaining - 1) {
            return true;
        }
    }
    false
}
