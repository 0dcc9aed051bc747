//! Small-integer number theory shared by the other modules.

use num_prime::nt_funcs::{factorize64, is_prime64};

use crate::error::{Error, Result};

pub use num_integer::gcd;

pub fn lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b))
        .checked_mul(b)
        .ok_or_else(|| Error::Resource(format!("lcm({a}, {b}) overflows u64")))
}

/// Prime factorization, ascending primes with exponents.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    if n < 2 {
        return Vec::new();
    }
    factorize64(n)
        .into_iter()
        .map(|(q, e)| (q, e as u32))
        .collect()
}

pub fn is_prime(n: u64) -> bool {
    is_prime64(n)
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (q, e) in factorize(n) {
        let base = out.clone();
        let mut pow = 1u64;
        for _ in 0..e {
            pow *= q;
            out.extend(base.iter().map(|d| d * pow));
        }
    }
    out.sort_unstable();
    out
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (q, _)| acc / q * (q - 1))
}

/// Square root of a perfect square, `None` otherwise.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = n.isqrt();
    (r * r == n).then_some(r)
}
