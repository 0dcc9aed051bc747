//! Height sets of `Z[w_p]` for odd primes `p`.
//!
//! For `beta = sum a_i w_p^i` with coefficient sum `s` and `p' = (p-1)/2`,
//!
//! ```text
//! 2 p' M(beta) = p * sum a_i^2 - s^2 = p^2 * var(a)
//! ```
//!
//! and for `p >= 5` the attainable heights are exactly
//! `(s(p-s)/2 + r p) / p'` with `0 <= s <= p'`, `r >= 0`. For `p = 3` that
//! formula overshoots; the heights there are the integers
//! `a^2 - ab + b^2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{factorize, is_prime};
use crate::cyclo::CycInt;
use crate::error::{Error, Result};
use crate::quadforms::{a3a1_form, a4_form, four_squares, universal_poly1, universal_poly2};
use crate::rat::Rat;

pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

/// A member `(s(p-s)/2 + r p) / p'` of the height set of `Z[w_p]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CpElement {
    pub p: u64,
    pub s: u64,
    pub r: u64,
    #[serde(serialize_with = "crate::rat::serialize_rat")]
    pub value: Rat,
}

/// Coefficients `a_0..a_{p-1}` of `sum a_i w_p^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessVector {
    pub p: u64,
    pub a: Vec<i64>,
}

impl WitnessVector {
    pub fn coeff_sum(&self) -> i64 {
        self.a.iter().sum()
    }

    pub fn to_cycint(&self) -> CycInt {
        CycInt::from_coeffs(self.p, &self.a).expect("witness length equals p")
    }

    pub fn height(&self) -> Result<Rat> {
        variance_height(&self.a, self.p)
    }
}

pub fn half_order(p: u64) -> u64 {
    (p - 1) / 2
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not an odd prime")));
    }
    Ok(())
}

fn check_formula_prime(p: u64) -> Result<()> {
    if p == 3 {
        return Err(Error::Domain(
            "the height formula does not describe p = 3; use c3_membership".into(),
        ));
    }
    check_odd_prime(p)
}

fn check_len(a: &[i64], p: u64) -> Result<()> {
    if a.len() as u64 != p {
        return Err(Error::Input(format!(
            "expected {p} coefficients, got {}",
            a.len()
        )));
    }
    Ok(())
}

/// Translates every coefficient by `shift` and multiplies by `sign` so that
/// the coefficient sum lands in `[0, p']`. Returns the normalized vector
/// `sign * (a + shift)` together with `sign` and `shift`.
pub fn normalize_coeffs(a: &[i64], p: u64) -> Result<(WitnessVector, i64, i64)> {
    check_len(a, p)?;
    let pi = p as i64;
    let s: i64 = a.iter().sum();
    let mut centered = s.rem_euclid(pi);
    if centered > pi / 2 {
        centered -= pi;
    }
    let shift = (centered - s) / pi;
    let sign = if centered < 0 { -1 } else { 1 };
    let out = a.iter().map(|&x| sign * (x + shift)).collect();
    Ok((WitnessVector { p, a: out }, sign, shift))
}

/// `2 p' M` as an integer: `p * sum a_i^2 - s^2`.
pub fn twice_scaled_height(a: &[i64], p: u64) -> i64 {
    let s: i64 = a.iter().sum();
    let sq: i64 = a.iter().map(|x| x * x).sum();
    p as i64 * sq - s * s
}

/// Cassels height of `sum a_i w_p^i` from the coefficient statistics,
/// evaluated both from the sum of squares and from the variance, which must
/// agree.
pub fn variance_height(a: &[i64], p: u64) -> Result<Rat> {
    check_len(a, p)?;
    check_odd_prime(p)?;
    let pp = BigInt::from(half_order(p));
    let pb = BigInt::from(p);

    let by_squares = Rat::new(
        BigInt::from(twice_scaled_height(a, p)),
        BigInt::from(2) * &pp,
    );

    let mean = Rat::new(a.iter().map(|&x| BigInt::from(x)).sum(), pb.clone());
    let var = a
        .iter()
        .map(|&x| {
            let d = Rat::from_integer(BigInt::from(x)) - &mean;
            &d * &d
        })
        .fold(Rat::zero(), |acc, v| acc + v)
        / Rat::from_integer(pb.clone());
    let by_variance = Rat::from_integer(&pb * &pb) * var / Rat::from_integer(BigInt::from(2) * &pp);

    if by_squares != by_variance {
        return Err(Error::Invariant(format!(
            "height forms disagree for {a:?}: {by_squares} vs {by_variance}"
        )));
    }
    Ok(by_squares)
}

fn formula_value(p: u64, s: u64, r: u64) -> Rat {
    let num = BigInt::from(s * (p - s)) + BigInt::from(2) * BigInt::from(r) * BigInt::from(p);
    Rat::new(num, BigInt::from(2 * half_order(p)))
}

/// `(s(p-s)/2 + r p) / p'`.
pub fn cp_value(p: u64, s: u64, r: u64) -> Result<Rat> {
    check_formula_prime(p)?;
    if s > half_order(p) {
        return Err(Error::Domain(format!(
            "s = {s} exceeds p' = {}",
            half_order(p)
        )));
    }
    Ok(formula_value(p, s, r))
}

/// The unique `(s, r)` with `formula_value(p, s, r) = q`, if any. Accepts
/// every odd prime, including 3 where the formula is only an upper bound for
/// the height set.
pub fn formula_membership(p: u64, q: &Rat) -> Result<Option<(u64, u64)>> {
    check_odd_prime(p)?;
    let scaled = q * Rat::from_integer(BigInt::from(2 * half_order(p)));
    if !scaled.is_integer() || scaled.is_negative() {
        return Ok(None);
    }
    let x = scaled.to_integer();
    let two_p = BigInt::from(2 * p);
    for s in 0..=half_order(p) {
        let rest = &x - BigInt::from(s * (p - s));
        if rest.is_negative() {
            continue;
        }
        let (r, rem) = rest.div_rem(&two_p);
        if rem.is_zero() {
            let r = r
                .to_u64()
                .ok_or_else(|| Error::Resource(format!("r = {r} exceeds u64")))?;
            return Ok(Some((s, r)));
        }
    }
    Ok(None)
}

pub fn cp_membership(p: u64, q: &Rat) -> Result<Option<(u64, u64)>> {
    check_formula_prime(p)?;
    formula_membership(p, q)
}

/// All members with value at most `bound`, ascending.
pub fn cp_enumerate(p: u64, bound: &Rat) -> Result<Vec<CpElement>> {
    check_formula_prime(p)?;
    let mut out = Vec::new();
    for s in 0..=half_order(p) {
        let mut r = 0;
        loop {
            let value = formula_value(p, s, r);
            if &value > bound {
                break;
            }
            out.push(CpElement { p, s, r, value });
            r += 1;
        }
    }
    out.sort_by(|x, y| x.value.cmp(&y.value));
    Ok(out)
}

/// `s` ones followed by `p - s` zeros.
pub fn minimal_vector(p: u64, s: u64) -> WitnessVector {
    let a = (0..p).map(|i| i64::from(i < s)).collect();
    WitnessVector { p, a }
}

pub fn minimal_height_for_s(p: u64, s: u64) -> Result<(Rat, WitnessVector)> {
    let value = cp_value(p, s, 0)?;
    Ok((value, minimal_vector(p, s)))
}

/// A coefficient vector with normalized sum `s` and height
/// `cp_value(p, s, r)`.
///
/// `r = 0` gives the minimal 0/1 vector. Otherwise:
/// * `p >= 11`: `r = w^2+x^2+y^2+z^2`; four pairs of equal entries `(v, v)`
///   of the minimal vector (leftmost pairs, ones before zeros) become
///   `(v+n, v-n)`, each adding `p n^2` to `p' M`.
/// * `p = 7`, `s <= 2`: `(-a,-b,-c,-d,a+b+c+d,*,*)` with the A4 form at `2r`.
/// * `p = 7`, `s = 3`: `(a,b,c,-(a+b+c),d+1,1-d,1)` with the A3+A1 form.
/// * `p = 5`: `s = 0` uses the A4 form, `s = 1` the second universal
///   polynomial, `s = 2` the first.
pub fn cp_witness(p: u64, s: u64, r: u64) -> Result<WitnessVector> {
    let expected = cp_value(p, s, r)?;
    let a = if r == 0 {
        minimal_vector(p, s).a
    } else if p >= 11 {
        spread_pairs(p, s, r)
    } else if p == 7 {
        witness_p7(s, r)?
    } else {
        witness_p5(s, r)?
    };
    let w = WitnessVector { p, a };
    if w.coeff_sum() != s as i64 {
        return Err(Error::Invariant(format!(
            "witness {:?} has sum {} instead of {s}",
            w.a,
            w.coeff_sum()
        )));
    }
    let got = variance_height(&w.a, p)?;
    if got != expected {
        return Err(Error::Invariant(format!(
            "witness {:?} has height {got}, expected {expected}",
            w.a
        )));
    }
    Ok(w)
}

fn spread_pairs(p: u64, s: u64, r: u64) -> Vec<i64> {
    let mut a = minimal_vector(p, s).a;
    let ones = (0..s / 2).map(|i| 2 * i);
    let zeros = (0..(p - s) / 2).map(|i| s + 2 * i);
    let pairs: Vec<u64> = ones.chain(zeros).take(4).collect();
    debug_assert_eq!(pairs.len(), 4);
    for (&start, n) in pairs.iter().zip(four_squares(r)) {
        let (i, n) = (start as usize, n as i64);
        a[i] += n;
        a[i + 1] -= n;
    }
    a
}

fn witness_p7(s: u64, r: u64) -> Result<Vec<i64>> {
    if s <= 2 {
        let v = a4_form(2 * r)?.variables;
        let (a, b, c, d) = (v[0], v[1], v[2], v[3]);
        let tail = [i64::from(s >= 2), i64::from(s >= 1)];
        Ok(vec![-a, -b, -c, -d, a + b + c + d, tail[0], tail[1]])
    } else {
        let v = a3a1_form(2 * r)?.variables;
        let (a, b, c, d) = (v[0], v[1], v[2], v[3]);
        Ok(vec![a, b, c, -(a + b + c), d + 1, 1 - d, 1])
    }
}

fn witness_p5(s: u64, r: u64) -> Result<Vec<i64>> {
    Ok(match s {
        0 => {
            let v = a4_form(2 * r)?.variables;
            vec![-v[0], -v[1], -v[2], -v[3], v[0] + v[1] + v[2] + v[3]]
        }
        1 => {
            let v = universal_poly2(r)?.variables;
            let (a, b, c) = (v[0], v[1], v[2]);
            vec![0, -a, -b, -c, 1 + a + b + c]
        }
        _ => {
            let v = universal_poly1(r)?.variables;
            let (a, b, c) = (v[0], v[1], v[2]);
            vec![-a, -b, -c, 1 + a + b, 1 + c]
        }
    })
}

/// Minimum of `2 p' M` over all vectors with entries in `[lo, hi]` and
/// coefficient sum exactly `s`, with every minimizer.
pub fn exhaustive_minimum(p: u64, s: i64, lo: i64, hi: i64) -> (i64, Vec<Vec<i64>>) {
    fn rec(
        p: usize,
        s: i64,
        lo: i64,
        hi: i64,
        cur: &mut Vec<i64>,
        best: &mut (i64, Vec<Vec<i64>>),
    ) {
        let left = p - cur.len();
        let sum: i64 = cur.iter().sum();
        if left == 0 {
            if sum == s {
                let v = twice_scaled_height(cur, p as u64);
                if v < best.0 {
                    *best = (v, vec![cur.clone()]);
                } else if v == best.0 {
                    best.1.push(cur.clone());
                }
            }
            return;
        }
        let need = s - sum;
        for x in lo..=hi {
            let rest = need - x;
            let slots = left as i64 - 1;
            if rest < lo * slots || rest > hi * slots {
                continue;
            }
            cur.push(x);
            rec(p, s, lo, hi, cur, best);
            cur.pop();
        }
    }
    let mut best = (i64::MAX, Vec::new());
    rec(
        p as usize,
        s,
        lo,
        hi,
        &mut Vec::with_capacity(p as usize),
        &mut best,
    );
    best
}

/// Whether `n = a^2 - ab + b^2` for some integers, decided by the
/// factorization: every prime `q = 2 (mod 3)` must occur to an even power.
/// Trial division runs up to `factor_bound`; a cofactor that cannot be
/// certified prime below that bound is a resource error.
pub fn c3_membership_bounded(n: u64, factor_bound: u64) -> Result<bool> {
    if n == 0 {
        return Ok(true);
    }
    let mut rest = n;
    let mut ok = true;
    let mut q = 2u64;
    while q <= factor_bound && q.saturating_mul(q) <= rest {
        if rest.is_multiple_of(q) {
            let mut e = 0;
            while rest.is_multiple_of(q) {
                rest /= q;
                e += 1;
            }
            if q % 3 == 2 && e % 2 == 1 {
                ok = false;
            }
        }
        q += 1;
    }
    if rest > 1 {
        if q.saturating_mul(q) <= rest {
            return Err(Error::Resource(format!(
                "cannot factor {n} with trial division up to {factor_bound}"
            )));
        }
        // rest is prime
        if rest % 3 == 2 {
            ok = false;
        }
    }
    Ok(ok)
}

pub fn c3_membership(n: u64) -> Result<bool> {
    c3_membership_bounded(n, DEFAULT_FACTOR_BOUND)
}

/// `(a, b)` with `a^2 - ab + b^2 = n` and `0 <= b <= a`, smallest `a` first
/// (then smallest `b`). For each `b <= sqrt(n)` the equation is solved for
/// `a = (b + sqrt(4n - 3b^2)) / 2`.
pub fn c3_witness(n: u64) -> Option<(i64, i64)> {
    let n = u128::from(n);
    let mut best: Option<(u128, u128)> = None;
    let mut b = 0u128;
    while b * b <= n {
        let disc = 4 * n - 3 * b * b;
        let r = disc.isqrt();
        if r * r == disc && (b + r).is_multiple_of(2) {
            let a = (b + r) / 2;
            if a >= b && best.is_none_or(|cur| (a, b) < cur) {
                best = Some((a, b));
            }
        }
        b += 1;
    }
    best.map(|(a, b)| (a as i64, b as i64))
}

/// Prime factorization exponents of `n` as used by the `p = 3` criterion.
pub fn c3_obstructions(n: u64) -> Vec<(u64, u32)> {
    factorize(n)
        .into_iter()
        .filter(|&(q, e)| q % 3 == 2 && e % 2 == 1)
        .collect()
}
