//! Randomized checks of the mean trace identities on exact instances.

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::arith::gcd;
use crate::cyclo::CycInt;
use crate::error::{Error, Result};
use crate::height::{mean_trace, mu_phi};

/// Random element of conductor `n` with up to `max_terms` terms and
/// coefficients in `[-c, c]`.
pub fn random_cycint<R: Rng>(rng: &mut R, n: u64, max_terms: usize, c: i64) -> CycInt {
    let count = rng.gen_range(1..=max_terms);
    let terms: Vec<(i64, BigInt)> = (0..count)
        .map(|_| {
            (
                rng.gen_range(0..n as i64),
                BigInt::from(rng.gen_range(-c..=c)),
            )
        })
        .collect();
    CycInt::from_terms(n, terms).expect("positive conductor")
}

pub fn trace_additivity(x: &CycInt, y: &CycInt) -> bool {
    mean_trace(&(x + y)) == mean_trace(x) + mean_trace(y)
}

/// `mean_trace(w_m x) = mu_phi(m) mean_trace(x)` for `m` coprime to the
/// conductor of `x`.
pub fn coprime_multiplicativity(x: &CycInt, m: u64) -> Result<bool> {
    if gcd(m, x.conductor()) != 1 {
        return Err(Error::Domain(format!(
            "{m} is not coprime to {}",
            x.conductor()
        )));
    }
    let lhs = mean_trace(&(&CycInt::root(m, 1)? * x));
    Ok(lhs == mu_phi(m as i64)? * mean_trace(x))
}

/// `mean_trace(w_{2m} x) = -mu_phi(m) mean_trace(x)` for odd `m` coprime
/// to the conductor of `x`, whatever its parity.
pub fn doubled_odd_multiplicativity(x: &CycInt, m: u64) -> Result<bool> {
    if m.is_multiple_of(2) || gcd(m, x.conductor()) != 1 {
        return Err(Error::Domain(format!(
            "{m} must be odd and coprime to {}",
            x.conductor()
        )));
    }
    let lhs = mean_trace(&(&CycInt::root(2 * m, 1)? * x));
    Ok(lhs == -mu_phi(m as i64)? * mean_trace(x))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub count: usize,
    pub additivity: usize,
    pub coprime: usize,
    pub doubled_odd: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.additivity == self.count
            && self.coprime == self.count
            && self.doubled_odd == self.count
    }
}

fn coprime_partner<R: Rng>(rng: &mut R, n: u64, odd: bool) -> u64 {
    loop {
        let m = rng.gen_range(1..=60u64);
        if gcd(m, n) == 1 && (!odd || m % 2 == 1) {
            return m;
        }
    }
}

/// `count` random instances of each identity.
pub fn run_suite(seed: u64, count: usize) -> SuiteReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = SuiteReport {
        seed,
        count,
        ..Default::default()
    };
    for _ in 0..count {
        let n1 = rng.gen_range(1..=60);
        let n2 = rng.gen_range(1..=60);
        let x = random_cycint(&mut rng, n1, 6, 5);
        let y = random_cycint(&mut rng, n2, 6, 5);
        if trace_additivity(&x, &y) {
            report.additivity += 1;
        } else {
            report.failures.push(format!("additivity: {x} ; {y}"));
        }

        let m = coprime_partner(&mut rng, n1, false);
        match coprime_multiplicativity(&x, m) {
            Ok(true) => report.coprime += 1,
            Ok(false) => report.failures.push(format!("coprime: {x} ; m = {m}")),
            Err(e) => report.failures.push(format!("coprime: {e}")),
        }

        let m = coprime_partner(&mut rng, n2, true);
        match doubled_odd_multiplicativity(&y, m) {
            Ok(true) => report.doubled_odd += 1,
            Ok(false) => report.failures.push(format!("doubled odd: {y} ; m = {m}")),
            Err(e) => report.failures.push(format!("doubled odd: {e}")),
        }
    }
    report
}
