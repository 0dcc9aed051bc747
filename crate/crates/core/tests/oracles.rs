//! Library results against independent computations: floating-point
//! conjugate sums, brute-force searches and direct enumeration.

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use cassels::arith::gcd;
use cassels::cp::{
    c3_membership, c3_witness, cp_enumerate, exhaustive_minimum, formula_membership,
};
use cassels::cyclo::cyclotomic_poly;
use cassels::height::{height, mean_trace, min_roots_upper, mu_phi};
use cassels::limits::{two_term_sequence, Side};
use cassels::quadforms::{poly1_value, poly2_value, universal_poly1, universal_poly2};
use cassels::rat::{rat, rat_int};
use cassels::{CycInt, Rat};
use num_traits::ToPrimitive;

fn to_f64(q: &Rat) -> f64 {
    q.numer().to_f64().unwrap() / q.denom().to_f64().unwrap()
}

/// Values of `x` at every primitive `n`-th root of unity.
fn conjugates(x: &CycInt) -> Vec<(f64, f64)> {
    let n = x.conductor();
    (1..=n)
        .filter(|&j| gcd(j, n) == 1)
        .map(|j| {
            x.terms().fold((0.0, 0.0), |(re, im), (k, c)| {
                let c = c.to_f64().unwrap();
                let angle = TAU * ((j * k) % n) as f64 / n as f64;
                (re + c * angle.cos(), im + c * angle.sin())
            })
        })
        .collect()
}

fn numeric_height(x: &CycInt) -> f64 {
    let conj = conjugates(x);
    conj.iter().map(|(re, im)| re * re + im * im).sum::<f64>() / conj.len() as f64
}

fn numeric_trace(x: &CycInt) -> f64 {
    let conj = conjugates(x);
    conj.iter().map(|(re, _)| re).sum::<f64>() / conj.len() as f64
}

fn c(s: &str) -> CycInt {
    s.parse().unwrap()
}

#[test]
fn heights_match_conjugate_average() {
    let cases = [
        "1 + w5",
        "1",
        "1 + w3",
        "1 + w4",
        "1 - w5^2 + 3*w7",
        "2 + w12 - w12^5 + w12^7",
        "1 + w15 + w15^4 - 2*w15^11",
    ];
    for expr in cases {
        let x = c(expr);
        let exact = to_f64(&height(&x));
        assert!((exact - numeric_height(&x)).abs() < 1e-9, "{expr}: {exact}");
    }
    assert_eq!(height(&c("1 + w5")), rat(3, 2));
    assert_eq!(height(&c("1 + w3")), rat_int(1));
    assert_eq!(height(&c("1 + w4")), rat_int(2));
}

#[test]
fn mean_traces_match_conjugate_average() {
    for n in 1..=60u64 {
        let w = CycInt::root(n, 1).unwrap();
        assert!(
            (to_f64(&mu_phi(n as i64).unwrap()) - numeric_trace(&w)).abs() < 1e-9,
            "n = {n}"
        );
    }
    for expr in ["3 - w7 + 2*w7^3", "w12 + w12^5 - w4", "5*w30^7 - w6 + 1"] {
        let x = c(expr);
        assert!(
            (to_f64(&mean_trace(&x)) - numeric_trace(&x)).abs() < 1e-9,
            "{expr}"
        );
    }
}

#[test]
fn cyclotomic_polynomials_vanish_at_primitive_roots() {
    for n in [1u64, 2, 6, 12, 15, 30, 45, 105] {
        let phi = cyclotomic_poly(n);
        let coeffs: Vec<f64> = phi.iter().map(|c| c.to_f64().unwrap()).collect();
        for j in (1..=n).filter(|&j| gcd(j, n) == 1) {
            let angle = TAU * j as f64 / n as f64;
            let (mut re, mut im) = (0.0, 0.0);
            for (d, a) in coeffs.iter().enumerate() {
                re += a * (angle * d as f64).cos();
                im += a * (angle * d as f64).sin();
            }
            assert!(re.abs() < 1e-7 && im.abs() < 1e-7, "n = {n}, j = {j}");
        }
    }
}

#[test]
fn small_height_sets_match_enumeration() {
    // every height of Z[w_5] at most 4 already occurs for entries in [-2, 2]
    let bound = rat_int(4);
    let mut seen = BTreeSet::new();
    for code in 0..5u32.pow(5) {
        let mut rest = code;
        let a: Vec<i64> = (0..5)
            .map(|_| {
                let v = (rest % 5) as i64 - 2;
                rest /= 5;
                v
            })
            .collect();
        let h = height(&CycInt::from_coeffs(5, &a).unwrap());
        if h <= bound {
            seen.insert(h);
        }
    }
    let listed: BTreeSet<Rat> = cp_enumerate(5, &bound)
        .unwrap()
        .into_iter()
        .map(|e| e.value)
        .collect();
    assert_eq!(seen, listed);
}

#[test]
fn quadratic_solvers_agree_with_exhaustive_search() {
    let r = 20i64;
    let mut by_poly1 = BTreeSet::new();
    let mut by_poly2 = BTreeSet::new();
    for a in -r..=r {
        for b in -r..=r {
            for cc in -r..=r {
                by_poly1.insert(poly1_value(a, b, cc));
                by_poly2.insert(poly2_value(a, b, cc));
            }
        }
    }
    for m in 0..=200u64 {
        assert!(
            by_poly1.contains(&(m as i64)) && by_poly2.contains(&(m as i64)),
            "m = {m}"
        );
        let s = universal_poly1(m).unwrap().variables;
        assert_eq!(poly1_value(s[0], s[1], s[2]), m as i64);
        let s = universal_poly2(m).unwrap().variables;
        assert_eq!(poly2_value(s[0], s[1], s[2]), m as i64);
    }
}

#[test]
fn eisenstein_norms_match_brute_force() {
    let mut norms = BTreeSet::new();
    for a in -60i64..=60 {
        for b in -60i64..=60 {
            norms.insert(a * a - a * b + b * b);
        }
    }
    for n in 0..=2000u64 {
        let member = c3_membership(n).unwrap();
        assert_eq!(member, norms.contains(&(n as i64)), "N = {n}");
        assert_eq!(member, c3_witness(n).is_some(), "N = {n}");
    }
    for n in [6u64, 10, 15, 18] {
        assert!(!c3_membership(n).unwrap());
        assert!(formula_membership(3, &rat_int(n as i64)).unwrap().is_some());
    }
}

#[test]
fn minimal_heights_by_exhaustion() {
    for p in [5u64, 7] {
        for s in 0..=((p - 1) / 2) as i64 {
            let (min, minimizers) = exhaustive_minimum(p, s, -3, 3);
            assert_eq!(min, s * (p as i64 - s), "p = {p}, s = {s}");
            for v in &minimizers {
                assert!(v.iter().all(|&x| x == 0 || x == 1));
            }
            let choose = (0..s).fold(1i64, |acc, i| acc * (p as i64 - i) / (i + 1));
            assert_eq!(minimizers.len() as i64, choose);
        }
    }
}

#[test]
fn two_root_sums_match_closed_form() {
    let one = CycInt::one();
    let below = two_term_sequence(&one, &one, Side::Below, 8).unwrap();
    let above = two_term_sequence(&one, &one, Side::Above, 8).unwrap();
    for (lo, hi) in below.iter().zip(&above) {
        let q = lo.ell_star as i64;
        assert_eq!(lo.height, rat_int(2) - rat(2, q - 1));
        assert_eq!(hi.height, rat_int(2) + rat(2, q - 1));
        let direct = numeric_height(&(&one + &CycInt::root(q as u64, 1).unwrap()));
        assert!((direct - to_f64(&lo.height)).abs() < 1e-9);
    }
}

#[test]
fn minimal_root_counts() {
    assert_eq!(min_roots_upper(&CycInt::one(), 1, 3).unwrap(), Some(1));
    assert_eq!(min_roots_upper(&c("1 + w5"), 5, 3).unwrap(), Some(2));
    assert_eq!(min_roots_upper(&CycInt::integer(2), 2, 3).unwrap(), Some(2));
    assert_eq!(min_roots_upper(&CycInt::integer(3), 1, 2).unwrap(), None);
}
