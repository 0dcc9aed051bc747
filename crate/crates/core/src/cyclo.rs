//! Exact arithmetic in the rings `Z[w_n]`.
//!
//! A [`CycInt`] stores a conductor `n` and a sparse map from exponents in
//! `[0, n)` to nonzero integer coefficients, representing `sum a_k w_n^k`
//! with `w_n = exp(2 pi i / n)`. Representations are not unique (the powers
//! of `w_n` are linearly dependent), so equality is numeric: both sides are
//! reduced modulo the `n`-th cyclotomic polynomial before comparing.
//! Ring operations never reduce eagerly.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{divisors, gcd, lcm, totient};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct CycInt {
    conductor: u64,
    coeffs: BTreeMap<u64, BigInt>,
}

/// Order of `w_n^k`, i.e. `n / gcd(n, k)`.
pub fn order_of_term(n: u64, k: u64) -> u64 {
    n / gcd(n, k)
}

impl CycInt {
    pub fn zero() -> Self {
        CycInt {
            conductor: 1,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(v: impl Into<BigInt>) -> Self {
        Self::from_terms(1, [(0i64, v.into())]).expect("conductor 1 is valid")
    }

    /// `w_n^k`; negative `k` is reduced modulo `n`.
    pub fn root(n: u64, k: i64) -> Result<Self> {
        Self::from_terms(n, [(k, BigInt::one())])
    }

    /// `sum a_i w_n^i` for a dense coefficient slice of length `n`.
    pub fn from_coeffs<T: Clone + Into<BigInt>>(n: u64, a: &[T]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("conductor must be positive".into()));
        }
        if a.len() as u64 != n {
            return Err(Error::Input(format!(
                "expected {n} coefficients, got {}",
                a.len()
            )));
        }
        Self::from_terms(
            n,
            a.iter()
                .cloned()
                .enumerate()
                .map(|(i, c)| (i as i64, c.into())),
        )
    }

    /// Sums `coeff * w_n^exp` over the given terms, accumulating repeated
    /// exponents (taken modulo `n`).
    pub fn from_terms<I>(n: u64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        if n == 0 {
            return Err(Error::Domain("conductor must be positive".into()));
        }
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            let k = (k as i128).rem_euclid(n as i128) as u64;
            accumulate(&mut coeffs, k, c);
        }
        Ok(CycInt {
            conductor: n,
            coeffs,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Stored `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, k: u64) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Complex conjugation: `k -> -k mod n`.
    pub fn conjugate(&self) -> Self {
        let n = self.conductor;
        CycInt {
            conductor: n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&k, c)| ((n - k) % n, c.clone()))
                .collect(),
        }
    }

    /// The automorphism `w_n -> w_n^j`.
    pub fn galois(&self, j: i64) -> Result<Self> {
        let n = self.conductor;
        let j = (j as i128).rem_euclid(n as i128) as u64;
        if gcd(j, n) != 1 {
            return Err(Error::Domain(format!(
                "galois exponent {j} is not a unit modulo {n}"
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&k, c)| (((k as u128 * j as u128) % n as u128) as u64, c.clone()))
            .collect();
        Ok(CycInt {
            conductor: n,
            coeffs,
        })
    }

    /// Rewrites the element over conductor `m`, a multiple of the current one.
    pub fn embed(&self, m: u64) -> Result<Self> {
        let n = self.conductor;
        if m == 0 || !m.is_multiple_of(n) {
            return Err(Error::Domain(format!("conductor {n} does not divide {m}")));
        }
        let f = m / n;
        Ok(CycInt {
            conductor: m,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&k, c)| (k * f, c.clone()))
                .collect(),
        })
    }

    /// `w_n^k * self` within the same conductor.
    pub fn shift(&self, k: u64) -> Self {
        let n = self.conductor;
        let k = k % n;
        CycInt {
            conductor: n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| ((e + k) % n, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return CycInt {
                conductor: self.conductor,
                coeffs: BTreeMap::new(),
            };
        }
        CycInt {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, c * s)).collect(),
        }
    }

    /// If the element is stored as a single term `±w_n^k`, returns the sign
    /// and `k`.
    pub fn as_signed_root(&self) -> Option<(i8, u64)> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (&k, c) = self.coeffs.iter().next()?;
        if c.is_one() {
            Some((1, k))
        } else if *c == -BigInt::one() {
            Some((-1, k))
        } else {
            None
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        let (a, b) = self.common(rhs)?;
        let mut coeffs = a.coeffs;
        for (k, c) in b.coeffs {
            accumulate(&mut coeffs, k, c);
        }
        Ok(CycInt {
            conductor: a.conductor,
            coeffs,
        })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.try_add(&-rhs)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let (a, b) = self.common(rhs)?;
        let n = a.conductor;
        let mut coeffs = BTreeMap::new();
        for (&i, x) in &a.coeffs {
            for (&j, y) in &b.coeffs {
                let k = ((i as u128 + j as u128) % n as u128) as u64;
                accumulate(&mut coeffs, k, x * y);
            }
        }
        Ok(CycInt {
            conductor: n,
            coeffs,
        })
    }

    fn common(&self, rhs: &Self) -> Result<(Self, Self)> {
        if self.conductor == rhs.conductor {
            return Ok((self.clone(), rhs.clone()));
        }
        let m = lcm(self.conductor, rhs.conductor)?;
        Ok((self.embed(m)?, rhs.embed(m)?))
    }

    /// Reduction modulo the `n`-th cyclotomic polynomial: only exponents
    /// `0..phi(n)` remain. Two elements of the same conductor are equal iff
    /// their canonical forms coincide.
    pub fn canonical_form(&self) -> Self {
        let n = self.conductor;
        let d = totient(n) as usize;
        let phi = cyclotomic_poly(n);
        let Some((&top, _)) = self.coeffs.iter().next_back() else {
            return self.clone();
        };
        let mut dense = vec![BigInt::zero(); top as usize + 1];
        for (&k, c) in &self.coeffs {
            dense[k as usize] = c.clone();
        }
        for deg in (d..dense.len()).rev() {
            if dense[deg].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut dense[deg]);
            let base = deg - d;
            // phi is monic of degree d; subtract c * x^base * phi.
            for (i, p) in phi.iter().enumerate().take(d) {
                if !p.is_zero() {
                    dense[base + i] -= &c * p;
                }
            }
        }
        let coeffs = dense
            .into_iter()
            .enumerate()
            .take(d)
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u64, c))
            .collect();
        CycInt {
            conductor: n,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() || self.canonical_form().coeffs.is_empty()
    }

    pub fn equals(&self, other: &Self) -> bool {
        match self.try_sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }
}

fn accumulate(coeffs: &mut BTreeMap<u64, BigInt>, k: u64, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match coeffs.entry(k) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn phi_cache() -> &'static RwLock<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Coefficients (ascending degree) of the `n`-th cyclotomic polynomial,
/// obtained by dividing `x^n - 1` exactly by every `Phi_d` with `d | n`,
/// `d < n`. Results are cached per conductor.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n > 0, "cyclotomic_poly: n must be positive");
    if let Some(p) = phi_cache().read().expect("phi cache poisoned").get(&n) {
        return p.clone();
    }
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = -BigInt::one();
    poly[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        poly = exact_div_monic(&poly, &cyclotomic_poly(d));
    }
    let poly = Arc::new(poly);
    phi_cache()
        .write()
        .expect("phi cache poisoned")
        .insert(n, poly.clone());
    poly
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Eq for CycInt {}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&CycInt> for &CycInt {
            type Output = CycInt;
            fn $m(self, rhs: &CycInt) -> CycInt {
                self.$try(rhs).expect("conductor lcm overflow")
            }
        }
        impl $tr<CycInt> for CycInt {
            type Output = CycInt;
            fn $m(self, rhs: CycInt) -> CycInt {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycInt> for CycInt {
            type Output = CycInt;
            fn $m(self, rhs: &CycInt) -> CycInt {
                (&self).$m(rhs)
            }
        }
        impl $tr<CycInt> for &CycInt {
            type Output = CycInt;
            fn $m(self, rhs: CycInt) -> CycInt {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (&k, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "w{}", self.conductor)?;
            if k != 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

/// Parses sums of terms such as `1 - 2*w5^3 + w5`. A term is a product of
/// integers and root powers `w{n}` / `w{n}^{k}` (`k` may be negative).
/// Mixed conductors are embedded into their lcm.
impl FromStr for CycInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parser::new(s).parse_sum()
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn parse_sum(&mut self) -> Result<CycInt> {
        let mut acc = CycInt::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            if self.pos == self.src.len() {
                if first {
                    return Err(self.err("empty expression"));
                }
                return Ok(acc);
            }
            let negative = self.eat('-');
            if !negative && !self.eat('+') && !first {
                return Err(self.err("expected '+' or '-'"));
            }
            first = false;
            let term = self.parse_product()?;
            let term = if negative { -term } else { term };
            acc = acc.try_add(&term)?;
        }
    }

    fn parse_product(&mut self) -> Result<CycInt> {
        let mut acc = self.parse_factor()?;
        while self.eat('*') {
            let f = self.parse_factor()?;
            acc = acc.try_mul(&f)?;
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<CycInt> {
        self.skip_ws();
        if self.eat('w') {
            let n: u64 = self
                .digits()
                .ok_or_else(|| self.err("expected conductor after 'w'"))?
                .parse()
                .map_err(|_| self.err("conductor out of range"))?;
            if n == 0 {
                return Err(self.err("conductor must be positive"));
            }
            let mut k: i64 = 1;
            if self.eat('^') {
                let neg = self.eat('-');
                let e: i64 = self
                    .digits()
                    .ok_or_else(|| self.err("expected exponent after '^'"))?
                    .parse()
                    .map_err(|_| self.err("exponent out of range"))?;
                k = if neg { -e } else { e };
            }
            return CycInt::root(n, k);
        }
        match self.digits() {
            Some(d) => {
                let v: BigInt = d.parse().map_err(|_| self.err("bad integer"))?;
                Ok(CycInt::integer(v))
            }
            None => Err(self.err("expected integer or root of unity")),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct CycIntRepr {
    n: u64,
    coeffs: BTreeMap<String, JsonInt>,
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        // Numeric key order rather than the lexicographic order of a string map.
        struct Coeffs<'a>(&'a BTreeMap<u64, BigInt>);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut m = serializer.serialize_map(Some(self.0.len()))?;
                for (k, c) in self.0 {
                    let v = match c.to_i64() {
                        Some(v) => JsonInt::Small(v),
                        None => JsonInt::Big(c.to_string()),
                    };
                    m.serialize_entry(&k.to_string(), &v)?;
                }
                m.end()
            }
        }
        let mut m = serializer.serialize_map(Some(2))?;
        m.serialize_entry("n", &self.conductor)?;
        m.serialize_entry("coeffs", &Coeffs(&self.coeffs))?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for CycInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CycIntRepr::deserialize(deserializer)?;
        if repr.n == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let mut terms = Vec::with_capacity(repr.coeffs.len());
        for (k, v) in repr.coeffs {
            let k: u64 = k.parse().map_err(D::Error::custom)?;
            if k >= repr.n {
                return Err(D::Error::custom(format!(
                    "exponent {k} outside [0, {})",
                    repr.n
                )));
            }
            let c = match v {
                JsonInt::Small(v) => BigInt::from(v),
                JsonInt::Big(s) => s.parse().map_err(D::Error::custom)?,
            };
            terms.push((k as i64, c));
        }
        CycInt::from_terms(repr.n, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: u64, k: i64) -> CycInt {
        CycInt::root(n, k).unwrap()
    }

    fn int(v: i64) -> CycInt {
        CycInt::integer(v)
    }

    #[test]
    fn from_coeffs_examples() {
        let one = CycInt::from_coeffs(1, &[1]).unwrap();
        assert_eq!(one.conductor(), 1);
        assert_eq!(one.term_count(), 1);
        assert_eq!(one, int(1));

        let x = CycInt::from_coeffs(5, &[1, 1, 0, 0, 0]).unwrap();
        assert_eq!(x.term_count(), 2);
        assert_eq!(x, int(1) + w(5, 1));

        let z = CycInt::from_coeffs(3, &[1, 1, 1]).unwrap();
        assert_eq!(z.term_count(), 3);
        assert!(z.is_zero());

        assert!(matches!(
            CycInt::from_coeffs(5, &[1, 2]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            CycInt::from_coeffs::<i64>(0, &[]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn ring_operation_examples() {
        let p = w(5, 1) * w(5, 4);
        assert_eq!(p.term_count(), 1);
        assert_eq!(p.coeff(0), BigInt::one());

        // (1+w3)(1+w3^2) = 1 + w3 + w3^2 + 1 = 1
        let q = (int(1) + w(3, 1)) * (int(1) + w(3, 2));
        assert_eq!(q, int(1));

        let r = (int(1) + w(5, 1)) + int(-1);
        assert_eq!(r.term_count(), 1);
        assert_eq!(r.coeff(1), BigInt::one());
        assert_eq!(r.conductor(), 5);
    }

    #[test]
    fn mixed_conductors_embed_into_lcm() {
        let s = w(3, 1) + w(4, 1);
        assert_eq!(s.conductor(), 12);
        assert_eq!(s.coeff(4), BigInt::one());
        assert_eq!(s.coeff(3), BigInt::one());
        // w6 = -w3^2
        assert_eq!(w(6, 1), -w(3, 2));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(int(1).conjugate(), int(1));
        let c = w(5, 1).conjugate();
        assert_eq!(c.coeff(4), BigInt::one());
        let x = int(1) + w(7, 3).scale(&BigInt::from(2));
        let y = x.conjugate();
        assert_eq!(y.coeff(0), BigInt::one());
        assert_eq!(y.coeff(4), BigInt::from(2));
        assert_eq!(y.term_count(), 2);
        assert_eq!(y.conjugate().coeff(3), BigInt::from(2));
    }

    #[test]
    fn galois_examples() {
        assert_eq!(w(5, 1).galois(2).unwrap().coeff(2), BigInt::one());
        let x = int(1) + w(5, 1);
        assert_eq!(x.galois(1).unwrap(), x);
        let y = int(3) + w(5, 1) - w(5, 3).scale(&BigInt::from(2));
        let lhs = y.galois(2).unwrap().galois(3).unwrap();
        let rhs = y.galois(6 % 5).unwrap();
        assert_eq!(lhs.coeffs, rhs.coeffs);
        assert_eq!(w(5, 1).galois(-1).unwrap().coeff(4), BigInt::one());
        assert!(matches!(w(6, 1).galois(2), Err(Error::Domain(_))));
        assert!(matches!(w(6, 1).galois(3), Err(Error::Domain(_))));
    }

    #[test]
    fn embed_examples() {
        let e = w(3, 1).embed(6).unwrap();
        assert_eq!(e.conductor(), 6);
        assert_eq!(e.coeff(2), BigInt::one());
        let o = int(1).embed(35).unwrap();
        assert_eq!(o.conductor(), 35);
        assert_eq!(o.coeff(0), BigInt::one());
        let x = (int(1) + w(5, 1)).embed(10).unwrap();
        assert_eq!(x.coeff(0), BigInt::one());
        assert_eq!(x.coeff(2), BigInt::one());
        assert!(matches!(w(5, 1).embed(12), Err(Error::Domain(_))));
    }

    #[test]
    fn canonical_form_examples() {
        let c = w(4, 2).canonical_form();
        assert_eq!(c.term_count(), 1);
        assert_eq!(c.coeff(0), BigInt::from(-1));

        let c = w(5, 4).canonical_form();
        for k in 0..4 {
            assert_eq!(c.coeff(k), BigInt::from(-1), "exponent {k}");
        }
        assert_eq!(c.term_count(), 4);

        let z = (int(1) + w(3, 1) + w(3, 2)).canonical_form();
        assert_eq!(z.term_count(), 0);
    }

    #[test]
    fn zero_and_equality_examples() {
        assert!((int(1) + w(3, 1) + w(3, 2)).is_zero());
        assert!(!int(1).is_zero());
        assert!(w(6, 3).equals(&int(-1)));
        assert!(CycInt::zero().is_zero());
    }

    #[test]
    fn order_of_term_examples() {
        assert_eq!(order_of_term(5, 0), 1);
        assert_eq!(order_of_term(12, 8), 3);
        assert_eq!(order_of_term(7, 3), 7);
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |n| -> Vec<i64> {
            cyclotomic_poly(n)
                .iter()
                .map(|c| c.to_i64().unwrap())
                .collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        // first cyclotomic polynomial with a coefficient of absolute value 2
        assert!(as_i64(105).contains(&-2));
        assert_eq!(as_i64(105).len() as u64, totient(105) + 1);
    }

    #[test]
    fn text_grammar_round_trip() {
        let x: CycInt = "1 - 2*w5^3 + w5".parse().unwrap();
        assert_eq!(x.conductor(), 5);
        assert_eq!(x.coeff(0), BigInt::one());
        assert_eq!(x.coeff(1), BigInt::one());
        assert_eq!(x.coeff(3), BigInt::from(-2));
        assert_eq!(x.to_string(), "1 + w5 - 2*w5^3");
        let y: CycInt = x.to_string().parse().unwrap();
        assert_eq!(y.coeffs, x.coeffs);

        let m: CycInt = "w3 + w4^-1".parse().unwrap();
        assert_eq!(m.conductor(), 12);
        assert_eq!(m.coeff(9), BigInt::one());

        let p: CycInt = "-3 * w7^2 * w7".parse().unwrap();
        assert_eq!(p.coeff(3), BigInt::from(-3));
        assert_eq!("0".parse::<CycInt>().unwrap().to_string(), "0");

        for bad in ["", "1 +", "w", "w0", "w5^", "2 3", "x5", "1 + * w5"] {
            assert!(
                matches!(bad.parse::<CycInt>(), Err(Error::Parse(_))),
                "{bad:?} should fail"
            );
        }
    }

    #[test]
    fn json_shape() {
        let x: CycInt = "1 - 2*w12^10 + w12".parse().unwrap();
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"n":12,"coeffs":{"0":1,"1":1,"10":-2}}"#);
        let back: CycInt = serde_json::from_str(&j).unwrap();
        assert_eq!(back.coeffs, x.coeffs);
        let big: CycInt =
            serde_json::from_str(r#"{"n":3,"coeffs":{"2":"123456789012345678901234567890"}}"#)
                .unwrap();
        assert_eq!(big.coeff(2).to_string(), "123456789012345678901234567890");
        assert!(serde_json::from_str::<CycInt>(r#"{"n":3,"coeffs":{"3":1}}"#).is_err());
        assert!(serde_json::from_str::<CycInt>(r#"{"n":0,"coeffs":{}}"#).is_err());
    }
}
