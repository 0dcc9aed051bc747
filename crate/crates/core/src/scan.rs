//! Exhaustive scan of `{lo..hi}^p` checking three evaluations of the height
//! of `sum a_i w_p^i` against each other.
//!
//! Vectors are visited in reflected mixed-radix Gray order, so consecutive
//! vectors differ by one unit in one coordinate. The cyclic autocorrelation
//! `c_d = sum_i a_i a_{i+d}` is kept up to date in `O(p)` per step. All three
//! quantities are integers equal to `2 p' M`:
//!
//! * trace form: `(p-1) c_0 - sum_{d>=1} c_d`, which is `p'` times the mean
//!   trace of `beta * conj(beta)` doubled;
//! * square form: `p * sum a_i^2 - s^2`;
//! * variance form: `sum (p a_i - s)^2 / p`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::cp::{cp_membership, half_order};
use crate::cyclo::CycInt;
use crate::error::{Error, Result};
use crate::height::height;
use crate::rat::Rat;

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub p: u64,
    pub lo: i64,
    pub hi: i64,
    pub vectors: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<Vec<i64>>,
    /// Distinct `(normalized sum, 2 p' M)` pairs seen.
    pub realized: Vec<(u64, u64)>,
}

impl ScanReport {
    /// Realized heights not matching the closed form with the normalized
    /// coefficient sum of the vector that produced them.
    pub fn unexplained(&self) -> Result<Vec<(u64, u64)>> {
        let two_pp = BigInt::from(2 * half_order(self.p));
        let mut bad = Vec::new();
        for &(s, twice) in &self.realized {
            let m = Rat::new(BigInt::from(twice), two_pp.clone());
            match cp_membership(self.p, &m)? {
                Some((s2, _)) if s2 == s => {}
                _ => bad.push((s, twice)),
            }
        }
        Ok(bad)
    }
}

/// Scans every vector in `{lo..hi}^p`. Supported primes are 3, 5, 7, 11, 13.
pub fn scan_heights(p: u64, lo: i64, hi: i64) -> Result<ScanReport> {
    if lo > hi {
        return Err(Error::Input(format!("empty range {lo}..={hi}")));
    }
    if lo.abs().max(hi.abs()) > 100 {
        return Err(Error::Resource("entries must lie in [-100, 100]".into()));
    }
    match p {
        3 => Ok(scan::<3>(lo as i32, hi as i32)),
        5 => Ok(scan::<5>(lo as i32, hi as i32)),
        7 => Ok(scan::<7>(lo as i32, hi as i32)),
        11 => Ok(scan::<11>(lo as i32, hi as i32)),
        13 => Ok(scan::<13>(lo as i32, hi as i32)),
        _ => Err(Error::Domain(format!(
            "exhaustive scan supports p in {{3, 5, 7, 11, 13}}, got {p}"
        ))),
    }
}

fn scan<const P: usize>(lo: i32, hi: i32) -> ScanReport {
    let p = P as i64;
    let pi = P as i32;
    let radix = (hi - lo + 1) as usize;

    // a[i] and a[i + P] hold the same entry so shifted reads need no modulus;
    // c[d] for d in 1..=P/2 are tracked, the rest follow from c[d] = c[P - d]
    let mut a = [[lo; P], [lo; P]].concat();
    let mut c = [0i32; P];
    for (d, cd) in c.iter_mut().enumerate().take(P / 2 + 1) {
        *cd = (0..P).map(|i| a[i] * a[i + d]).sum();
    }
    let mut s: i32 = pi * lo;

    let max_twice = (p * p * i64::from(lo.abs().max(hi.abs())).pow(2)) as usize;
    let row = max_twice + 1;
    let mut seen = vec![false; (P / 2 + 1) * row];

    let mut digit = [0usize; P];
    let mut focus = [0usize; 16];
    for (j, f) in focus.iter_mut().enumerate().take(P + 1) {
        *f = j;
    }
    let mut dir = [1i32; P];

    let mut vectors = 0u64;
    let mut mismatches = 0u64;
    let mut first_mismatch = None;

    loop {
        vectors += 1;
        let sum_c: i32 = c[1..=P / 2].iter().sum::<i32>() * 2;
        let trace_form = (pi - 1) * c[0] - sum_c;
        let square_form = pi * c[0] - s * s;
        let mut var_num = 0i32;
        for &x in &a[..P] {
            let t = pi * x - s;
            var_num += t * t;
        }
        if trace_form != square_form || var_num != pi * square_form {
            mismatches += 1;
            if first_mismatch.is_none() {
                first_mismatch = Some(a[..P].iter().map(|&x| i64::from(x)).collect());
            }
        } else {
            let r = s.rem_euclid(pi);
            let st = r.min(pi - r) as usize;
            seen[st * row + square_form as usize] = true;
        }

        let j = focus[0];
        focus[0] = 0;
        if j == P {
            break;
        }
        let delta = dir[j];
        let old = a[j];
        for d in 1..=P / 2 {
            c[d] += delta * (a[j + d] + a[j + P - d]);
        }
        c[0] += 2 * delta * old + 1;
        a[j] = old + delta;
        a[j + P] = old + delta;
        s += delta;
        digit[j] = (digit[j] as i32 + delta) as usize;
        if digit[j] == 0 || digit[j] == radix - 1 {
            dir[j] = -dir[j];
            focus[j] = focus[j + 1];
            focus[j + 1] = j + 1;
        }
    }

    let realized = seen
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(idx, _)| ((idx / row) as u64, (idx % row) as u64))
        .collect();
    ScanReport {
        p: P as u64,
        lo: i64::from(lo),
        hi: i64::from(hi),
        vectors,
        mismatches,
        first_mismatch,
        realized,
    }
}

/// Checks the square form against the general height routine on `count`
/// random vectors from `{lo..hi}^p`. Returns the failing vectors.
pub fn sample_against_general(p: u64, lo: i64, hi: i64, count: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let two_pp = BigInt::from(2 * half_order(p));
    let mut bad = Vec::new();
    let mut tried = BTreeSet::new();
    for _ in 0..count {
        let a: Vec<i64> = (0..p).map(|_| rng.gen_range(lo..=hi)).collect();
        if !tried.insert(a.clone()) {
            continue;
        }
        let s: i64 = a.iter().sum();
        let sq: i64 = a.iter().map(|x| x * x).sum();
        let expected = Rat::new(BigInt::from(p as i64 * sq - s * s), two_pp.clone());
        let beta = CycInt::from_coeffs(p, &a).expect("length p");
        if height(&beta) != expected {
            bad.push(a);
        }
    }
    bad
}

/// Every vector of `{lo..hi}^p` checked against the general height routine.
pub fn exhaustive_against_general(p: u64, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let two_pp = BigInt::from(2 * half_order(p));
    let radix = (hi - lo + 1) as u64;
    let total = radix.pow(p as u32);
    let mut bad = Vec::new();
    for mut code in 0..total {
        let a: Vec<i64> = (0..p)
            .map(|_| {
                let v = lo + (code % radix) as i64;
                code /= radix;
                v
            })
            .collect();
        let s: i64 = a.iter().sum();
        let sq: i64 = a.iter().map(|x| x * x).sum();
        let expected = Rat::new(BigInt::from(p as i64 * sq - s * s), two_pp.clone());
        if height(&CycInt::from_coeffs(p, &a).expect("length p")) != expected {
            bad.push(a);
        }
    }
    bad
}
