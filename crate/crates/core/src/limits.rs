//! Limit points of heights: two-term sequences approaching
//! `M(g1) + M(g2)` from a chosen side, and multi-term sums whose heights
//! converge to `sum M(g_k)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{is_prime, lcm};
use crate::cyclo::CycInt;
use crate::error::{Error, Result};
use crate::height::{find_nonzero_trace_shift, height, mean_trace};
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Above,
    Below,
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "above" => Ok(Side::Above),
            "below" => Ok(Side::Below),
            other => Err(Error::Parse(format!(
                "side must be above or below, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Above => "above",
            Side::Below => "below",
        })
    }
}

/// `w_l = w_{l*} w_n^shift`, or `w_{2 l*} w_n^shift` when doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EllSpec {
    pub ell_star: u64,
    pub shift: u64,
    pub doubled: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitStep {
    pub ell_star: u64,
    pub ell_spec: EllSpec,
    #[serde(serialize_with = "crate::rat::serialize_rat")]
    pub height: Rat,
    #[serde(serialize_with = "crate::rat::serialize_rat")]
    pub cross_term: Rat,
    #[serde(serialize_with = "crate::rat::serialize_rat")]
    pub predicted_cross: Rat,
    #[serde(serialize_with = "crate::rat::serialize_rat")]
    pub deviation: Rat,
}

/// `mean_trace(w^-1 g1 conj(g2)) + mean_trace(w conj(g1) g2)`, the amount by
/// which `M(g1 + w g2)` exceeds `M(g1) + M(g2)` for a root of unity `w`.
pub fn cross_term(g1: &CycInt, g2: &CycInt, omega: &CycInt) -> Result<Rat> {
    if omega.as_signed_root().is_none() {
        return Err(Error::Domain(format!("{omega} is not a root of unity")));
    }
    let left = &(&omega.conjugate() * g1) * &g2.conjugate();
    let right = &(omega * &g1.conjugate()) * g2;
    Ok(mean_trace(&left) + mean_trace(&right))
}

/// Odd primes not dividing `n`, ascending.
fn admissible_primes(n: u64) -> impl Iterator<Item = u64> {
    (3u64..)
        .step_by(2)
        .filter(move |&q| is_prime(q) && !n.is_multiple_of(q))
}

/// Heights `M(g1 + w_l g2)` for `count` values of `l`, all strictly on
/// `side` of `M(g1) + M(g2)`. Every step is checked against the
/// decomposition `M(g1) + M(g2) + cross` and against the closed form of
/// the cross term.
pub fn two_term_sequence(
    g1: &CycInt,
    g2: &CycInt,
    side: Side,
    count: usize,
) -> Result<Vec<LimitStep>> {
    if g1.is_zero() || g2.is_zero() {
        return Err(Error::Domain("both summands must be nonzero".into()));
    }
    let n = lcm(g1.conductor(), g2.conductor())?;
    let mixed = (&g1.conjugate() * g2).embed(n)?;
    let shift = find_nonzero_trace_shift(&mixed)?;
    let t = mean_trace(&mixed.shift(shift));

    // the odd-prime sequence has cross term -2t/(l*-1)
    let odd_side = if t.is_positive() {
        Side::Below
    } else {
        Side::Above
    };
    let doubled = odd_side != side;

    let m1 = height(g1);
    let m2 = height(g2);
    let limit = &m1 + &m2;
    let base = CycInt::root(n, shift as i64)?;

    let mut steps = Vec::with_capacity(count);
    for ell_star in admissible_primes(n).take(count) {
        let order = if doubled { 2 * ell_star } else { ell_star };
        let omega = &CycInt::root(order, 1)? * &base;
        let sum = g1 + &(&omega * g2);
        let h = height(&sum);
        let cross = cross_term(g1, g2, &omega)?;
        let scale = Rat::new(BigInt::from(2), BigInt::from(ell_star - 1));
        let predicted = if doubled { &scale * &t } else { -(&scale * &t) };

        if h != &limit + &cross {
            return Err(Error::Invariant(format!(
                "height {h} differs from {limit} + {cross} at l* = {ell_star}"
            )));
        }
        if cross != predicted {
            return Err(Error::Invariant(format!(
                "cross term {cross} differs from closed form {predicted} at l* = {ell_star}"
            )));
        }
        let on_side = match side {
            Side::Below => h < limit,
            Side::Above => h > limit,
        };
        if !on_side {
            return Err(Error::Invariant(format!(
                "height {h} is not {side} {limit} at l* = {ell_star}"
            )));
        }
        steps.push(LimitStep {
            ell_star,
            ell_spec: EllSpec {
                ell_star,
                shift,
                doubled,
            },
            deviation: (&h - &limit).abs(),
            height: h,
            cross_term: cross,
            predicted_cross: predicted,
        });
    }
    Ok(steps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiStep {
    /// `n_1..n_r` used for this step.
    pub primes: Vec<u64>,
    #[serde(serialize_with = "crate::rat::serialize_rat")]
    pub height: Rat,
    #[serde(serialize_with = "crate::rat::serialize_rat")]
    pub deviation: Rat,
}

/// Heights of `beta = g_0 + sum_{k>=1} g_k w_{n_k}` for `steps` choices of
/// `n_1 < .. < n_r`. At step `j` the `n_k` are the first `r` primes above
/// `max(t, 3) * 2^j`, with `t` the common conductor of the `g_k`, so every
/// ratio `w_{n_l} / w_{n_k}` has order growing geometrically.
pub fn multi_term_limit(gs: &[CycInt], steps: usize) -> Result<Vec<MultiStep>> {
    let Some((g0, rest)) = gs.split_first() else {
        return Err(Error::Input("need at least one summand".into()));
    };
    let limit: Rat = gs.iter().map(height).fold(Rat::zero(), |a, b| a + b);
    if rest.is_empty() {
        let h = height(g0);
        let step = MultiStep {
            primes: Vec::new(),
            deviation: (&h - &limit).abs(),
            height: h,
        };
        return Ok(vec![step; steps]);
    }
    let t = gs.iter().try_fold(1u64, |acc, g| lcm(acc, g.conductor()))?;

    let mut out = Vec::with_capacity(steps);
    for j in 0..steps {
        let threshold = 1u64
            .checked_shl(j as u32)
            .and_then(|x| x.checked_mul(t.max(3)))
            .ok_or_else(|| Error::Resource(format!("prime threshold overflows at step {j}")))?;
        let primes: Vec<u64> = (threshold + 1..)
            .filter(|&q| is_prime(q))
            .take(rest.len())
            .collect();
        let mut beta = g0.clone();
        for (g, &q) in rest.iter().zip(&primes) {
            beta = beta.try_add(&g.try_mul(&CycInt::root(q, 1)?)?)?;
        }
        let h = height(&beta);
        out.push(MultiStep {
            primes,
            deviation: (&h - &limit).abs(),
            height: h,
        });
    }
    Ok(out)
}
