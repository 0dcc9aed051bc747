//! Labels for points of Thue sets.
//!
//! A point `t` with `t_k <= t < t_{k+1}` (where `t_k = min T^(k)`) gets the
//! label `k r i_1 .. i_m`: `r` indexes the points of `T^(k)` in
//! `[t_k, t_{k+1})`, and each further index picks a point of the next lower
//! derived set inside the current gap `(L, R)`. Points in the upper half
//! `[(L+R)/2, R)` are numbered `0, 1, ..` upward from the midpoint, those in
//! the lower half `-1, -2, ..` downward from it.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{mobius, totient};
use crate::error::{Error, Result};
use crate::rat::{rat, rat_int, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThueLabel {
    terms: Vec<i64>,
}

impl ThueLabel {
    pub fn new(terms: Vec<i64>) -> Result<Self> {
        let label = ThueLabel { terms };
        label.validate()?;
        Ok(label)
    }

    pub fn validate(&self) -> Result<()> {
        let t = &self.terms;
        if t.len() < 2 {
            return Err(Error::Domain(format!(
                "label {self} has fewer than 2 terms"
            )));
        }
        let k = t[0];
        if k < 0 {
            return Err(Error::Domain(format!(
                "label {self} starts with a negative level"
            )));
        }
        if k == 0 && t[1] < 0 {
            return Err(Error::Domain(format!(
                "label {self} has a negative index at level 0"
            )));
        }
        if t.len() as i64 > k + 2 {
            return Err(Error::Domain(format!(
                "label {self} has more than {} terms",
                k + 2
            )));
        }
        Ok(())
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    pub fn level(&self) -> u64 {
        self.terms[0] as u64
    }

    /// Derived-set level of the labeled point: `k` minus the nesting depth.
    pub fn point_level(&self) -> u64 {
        self.level() + 2 - self.terms.len() as u64
    }
}

impl fmt::Display for ThueLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for ThueLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let terms = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad label term {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ThueLabel::new(terms)
    }
}

impl Serialize for ThueLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Lexicographic on the terms; a proper prefix comes first.
pub fn compare_labels(a: &ThueLabel, b: &ThueLabel) -> Result<Ordering> {
    a.validate()?;
    b.validate()?;
    Ok(a.terms.cmp(&b.terms))
}

/// Read access to the derived sets of a Thue set.
pub trait ThueOracle {
    /// `min T^(k)`.
    fn min_of_derived(&self, k: u64) -> Rat;

    /// `T^(level) ∩ [lo, hi)`, ascending.
    fn enumerate(&self, level: u64, lo: &Rat, hi: &Rat) -> Vec<Rat>;

    fn contains(&self, level: u64, t: &Rat) -> bool {
        self.enumerate(level, t, &(t + Rat::one())).first() == Some(t)
    }
}

pub fn label<O: ThueOracle + ?Sized>(t: &Rat, oracle: &O) -> Result<ThueLabel> {
    if !oracle.contains(0, t) {
        return Err(Error::Domain(format!("{t} is not a point of the set")));
    }
    let mut k = 0u64;
    while &oracle.min_of_derived(k + 1) <= t {
        k += 1;
    }
    let upper = oracle.min_of_derived(k + 1);
    let anchors = oracle.enumerate(k, &oracle.min_of_derived(k), &upper);
    let r = anchors
        .iter()
        .rposition(|a| a <= t)
        .ok_or_else(|| Error::Domain(format!("{t} lies below min T^({k})")))?;
    let mut terms = vec![k as i64, r as i64];
    let mut lo = anchors[r].clone();
    let mut hi = anchors.get(r + 1).cloned().unwrap_or(upper);

    for level in (0..k).rev() {
        if &lo == t {
            break;
        }
        let children: Vec<Rat> = oracle
            .enumerate(level, &lo, &hi)
            .into_iter()
            .filter(|c| c > &lo)
            .collect();
        let mid = (&lo + &hi) / rat_int(2);
        let split = children.partition_point(|c| c < &mid);
        let pos = children
            .iter()
            .rposition(|c| c <= t)
            .ok_or_else(|| Error::Domain(format!("{t} lies in an unresolved gap above {lo}")))?;
        let index = if pos >= split {
            (pos - split) as i64
        } else {
            pos as i64 - split as i64
        };
        terms.push(index);
        hi = children.get(pos + 1).cloned().unwrap_or(hi);
        lo = children[pos].clone();
    }
    if &lo != t {
        return Err(Error::Domain(format!(
            "{t} is not reached by the label procedure"
        )));
    }
    ThueLabel::new(terms)
}

/// Sorted per-level point lists; `levels[j]` holds `T^(j)`.
#[derive(Clone, Debug, Default)]
pub struct TableOracle {
    levels: Vec<Vec<Rat>>,
}

impl TableOracle {
    /// `points` pairs each value with its own derived-set level.
    pub fn from_points<I: IntoIterator<Item = (Rat, u64)>>(points: I) -> Self {
        let mut sets: Vec<BTreeSet<Rat>> = Vec::new();
        for (v, lvl) in points {
            let lvl = lvl as usize;
            if sets.len() <= lvl {
                sets.resize_with(lvl + 1, BTreeSet::new);
            }
            for s in &mut sets[..=lvl] {
                s.insert(v.clone());
            }
        }
        TableOracle {
            levels: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }

    fn level(&self, j: u64) -> &[Rat] {
        self.levels
            .get(j as usize)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Every stored point, ascending.
    pub fn points(&self) -> &[Rat] {
        self.level(0)
    }
}

/// `min T^(k) = k + 1`, the shape shared by the synthetic sets and the set
/// of all heights.
fn shifted_min(k: u64) -> Rat {
    Rat::from_integer(BigInt::from(k) + 1)
}

fn slice_range(points: &[Rat], lo: &Rat, hi: &Rat) -> Vec<Rat> {
    let a = points.partition_point(|p| p < lo);
    let b = points.partition_point(|p| p < hi);
    points[a..b.max(a)].to_vec()
}

/// Finite truncation of a Thue set built from the label grammar.
#[derive(Clone, Debug)]
pub struct SyntheticThue {
    pub max_k: u64,
    pub depth: u64,
    pub breadth: u64,
    pub points: Vec<(Rat, ThueLabel)>,
    table: TableOracle,
}

impl SyntheticThue {
    pub fn oracle(&self) -> &TableOracle {
        &self.table
    }

    /// Value of a label inside this truncation.
    pub fn decode(&self, label: &ThueLabel) -> Result<Rat> {
        label.validate()?;
        let t = label.terms();
        let b = self.breadth as i64;
        let nested = &t[2..];
        if t[0] as u64 > self.max_k
            || !(0..=b).contains(&t[1])
            || nested.len() as u64 > self.depth
            || nested.iter().any(|i| i.abs() > b)
        {
            return Err(Error::Domain(format!(
                "label {label} is outside the truncation"
            )));
        }
        Ok(decode_terms(t, self.breadth))
    }
}

fn decode_terms(t: &[i64], breadth: u64) -> Rat {
    let b = breadth as i64;
    let top = rat_int(t[0] + 2);
    let anchor = |r: i64| &top - rat(1, r + 1);
    let mut lo = anchor(t[1]);
    let mut hi = if t[1] < b {
        anchor(t[1] + 1)
    } else {
        top.clone()
    };
    for &i in &t[2..] {
        let mid = (&lo + &hi) / rat_int(2);
        let upper = |j: i64| &hi - (&hi - &mid) / rat_int(j + 1);
        let lower = |j: i64| &lo + (&mid - &lo) / rat_int(j + 1);
        let (point, next) = if i >= 0 {
            (upper(i), if i < b { upper(i + 1) } else { hi.clone() })
        } else {
            let j = -i;
            (lower(j), if j > 1 { lower(j - 1) } else { mid.clone() })
        };
        lo = point;
        hi = next;
    }
    lo
}

impl ThueOracle for TableOracle {
    fn min_of_derived(&self, k: u64) -> Rat {
        shifted_min(k)
    }

    fn enumerate(&self, level: u64, lo: &Rat, hi: &Rat) -> Vec<Rat> {
        slice_range(self.level(level), lo, hi)
    }
}

/// Every label with first term at most `max_k`, at most `depth` nested
/// indices and all indices bounded by `breadth`, with its decoded value.
///
/// Level-`k` anchors are `k + 2 - 1/(r+1)`, so `T^(k)` starts at `k + 1`.
/// Inside a gap `(L, R)` with midpoint `m` the children are
/// `R - (R-m)/(i+1)` for `i >= 0` and `L + (m-L)/(i+1)` for index `-i`.
pub fn synthetic_thue(max_k: u64, depth: u64, breadth: u64) -> SyntheticThue {
    let mut points = Vec::new();
    let b = breadth as i64;
    for k in 0..=max_k {
        let nest = depth.min(k) as usize;
        for r in 0..=b {
            let mut stack = vec![vec![k as i64, r]];
            while let Some(terms) = stack.pop() {
                if terms.len() - 2 < nest {
                    for i in -b..=b {
                        let mut next = terms.clone();
                        next.push(i);
                        stack.push(next);
                    }
                }
                let value = decode_terms(&terms, breadth);
                points.push((value, ThueLabel { terms }));
            }
        }
    }
    points.sort_by(|a, b| a.0.cmp(&b.0));
    let table = TableOracle::from_points(points.iter().map(|(v, l)| (v.clone(), l.point_level())));
    SyntheticThue {
        max_k,
        depth,
        breadth,
        points,
        table,
    }
}

/// Heights below `9/4` of sums of at most two roots of unity: `1` and
/// `2 + 2 mu(m)/phi(m)` for `3 <= m <= cap`, with `2 = min T^(1)` and
/// `3 = min T^(2)` as higher-level points.
pub fn height_fragment(cap: u64) -> TableOracle {
    let limit = rat(9, 4);
    let mut points = vec![(rat_int(1), 0), (rat_int(2), 1), (rat_int(3), 2)];
    for m in 3..=cap {
        let mu = mobius(m);
        if mu == 0 {
            continue;
        }
        let v = rat_int(2) + Rat::new(BigInt::from(2 * mu), BigInt::from(totient(m)));
        if v >= rat_int(1) && v < limit && !v.is_zero() {
            points.push((v, 0));
        }
    }
    TableOracle::from_points(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> ThueLabel {
        s.parse().unwrap()
    }

    #[test]
    fn grammar() {
        assert!(ThueLabel::new(vec![0, 0]).is_ok());
        assert!(ThueLabel::new(vec![2, -1, 3, -4]).is_ok());
        assert!(ThueLabel::new(vec![0]).is_err());
        assert!(ThueLabel::new(vec![-1, 0]).is_err());
        assert!(ThueLabel::new(vec![0, -1]).is_err());
        assert!(ThueLabel::new(vec![0, 1, 2]).is_err());
        assert!(ThueLabel::new(vec![1, 0, 0, 0]).is_err());
        assert!(matches!("1 x".parse::<ThueLabel>(), Err(Error::Parse(_))));
        assert_eq!(l("1 0 -1").to_string(), "1 0 -1");
    }

    #[test]
    fn comparison_examples() {
        assert_eq!(
            compare_labels(&l("0 1"), &l("0 2")).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            compare_labels(&l("1 0"), &l("1 0 0")).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            compare_labels(&l("1 0 -1"), &l("1 0 0")).unwrap(),
            Ordering::Less
        );
        let bad = ThueLabel { terms: vec![0, -1] };
        assert!(compare_labels(&bad, &l("0 0")).is_err());
    }

    #[test]
    fn synthetic_anchors() {
        let s = synthetic_thue(2, 2, 3);
        assert_eq!(s.decode(&l("0 0")).unwrap(), rat_int(1));
        assert_eq!(s.decode(&l("1 0")).unwrap(), rat_int(2));
        assert_eq!(s.decode(&l("1 0 0")).unwrap(), rat(9, 4));
        assert_eq!(s.decode(&l("1 0 -1")).unwrap(), rat(17, 8));
        assert!(s.decode(&l("1 9")).is_err());
        assert_eq!(label(&rat_int(2), s.oracle()).unwrap(), l("1 0"));
        assert_eq!(label(&rat_int(1), s.oracle()).unwrap(), l("0 0"));
        assert!(label(&rat(7, 5), s.oracle()).is_err());
    }

    #[test]
    fn synthetic_round_trip() {
        let s = synthetic_thue(3, 2, 3);
        let distinct: BTreeSet<&Rat> = s.points.iter().map(|(v, _)| v).collect();
        assert_eq!(distinct.len(), s.points.len());
        for (v, want) in &s.points {
            assert_eq!(&label(v, s.oracle()).unwrap(), want);
        }
        for w in s.points.windows(2) {
            assert_eq!(compare_labels(&w[0].1, &w[1].1).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn height_fragment_labels() {
        let o = height_fragment(200);
        assert_eq!(label(&rat_int(1), &o).unwrap(), l("0 0"));
        assert_eq!(label(&rat(3, 2), &o).unwrap(), l("0 1"));
        assert_eq!(label(&rat(5, 3), &o).unwrap(), l("0 2"));
        assert_eq!(label(&rat_int(2), &o).unwrap(), l("1 0"));
        assert_eq!(label(&rat_int(3), &o).unwrap(), l("2 0"));
        // 2 + 2/(q-1) with q = 11, the largest point below 9/4
        assert_eq!(label(&rat(11, 5), &o).unwrap(), l("1 0 -1"));
        assert!(label(&rat(5, 2), &o).is_err());
    }
}
