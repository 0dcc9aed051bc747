//! Constructive solvers for positive definite quadratic forms.
//!
//! The two universal polynomials are solved through their reductions to
//! diagonal ternary forms: a representation of the diagonal target is found
//! by bounded search and the linear substitutions are inverted. Every
//! solution is checked by substitution before it is returned.

use serde::Serialize;

use crate::arith::exact_sqrt;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormId {
    /// `a^2 + ab + b^2 + c^2 + a + b + c`
    Poly1,
    /// `a^2 + b^2 + c^2 + ab + bc + ca + a + b + c`
    Poly2,
    /// `d1 x^2 + d2 y^2 + d3 z^2`
    Diag([u64; 3]),
    /// `w^2 + x^2 + y^2 + z^2`
    FourSquares,
    /// `a^2 + b^2 + c^2 + d^2 + (a+b+c+d)^2`
    A4,
    /// `2(a^2 + (b+c)a + b^2 + bc + c^2 + d^2)`
    A3A1,
}

impl FormId {
    pub fn arity(&self) -> usize {
        match self {
            FormId::Poly1 | FormId::Poly2 | FormId::Diag(_) => 3,
            FormId::FourSquares | FormId::A4 | FormId::A3A1 => 4,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FormId::Poly1 => "poly1",
            FormId::Poly2 => "poly2",
            FormId::Diag(_) => "diag",
            FormId::FourSquares => "foursq",
            FormId::A4 => "a4",
            FormId::A3A1 => "a3a1",
        }
    }

    /// Value of the form at `v`, or `None` on an arity mismatch.
    pub fn evaluate(&self, v: &[i64]) -> Option<i64> {
        if v.len() != self.arity() {
            return None;
        }
        Some(match *self {
            FormId::Poly1 => poly1_value(v[0], v[1], v[2]),
            FormId::Poly2 => poly2_value(v[0], v[1], v[2]),
            FormId::Diag([d1, d2, d3]) => {
                d1 as i64 * v[0] * v[0] + d2 as i64 * v[1] * v[1] + d3 as i64 * v[2] * v[2]
            }
            FormId::FourSquares => v.iter().map(|x| x * x).sum(),
            FormId::A4 => {
                let s: i64 = v.iter().sum();
                v.iter().map(|x| x * x).sum::<i64>() + s * s
            }
            FormId::A3A1 => {
                let (a, b, c, d) = (v[0], v[1], v[2], v[3]);
                2 * (a * a + (b + c) * a + b * b + b * c + c * c + d * d)
            }
        })
    }
}

pub fn poly1_value(a: i64, b: i64, c: i64) -> i64 {
    a * a + a * b + b * b + c * c + a + b + c
}

pub fn poly2_value(a: i64, b: i64, c: i64) -> i64 {
    a * a + b * b + c * c + a * b + b * c + c * a + a + b + c
}

/// Integer tuple that represents `target` by `form`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadSolution {
    pub variables: Vec<i64>,
    pub target: i64,
    pub form: FormId,
}

impl QuadSolution {
    /// Builds a solution after checking it by substitution.
    pub fn checked(form: FormId, target: i64, variables: Vec<i64>) -> Result<Self> {
        let sol = QuadSolution {
            variables,
            target,
            form,
        };
        if sol.verify() {
            Ok(sol)
        } else {
            Err(Error::Invariant(format!(
                "{} does not represent {target} at {:?}",
                form.name(),
                sol.variables
            )))
        }
    }

    pub fn verify(&self) -> bool {
        self.form.evaluate(&self.variables) == Some(self.target)
    }
}

/// Nonnegative `(x, y, z)` with `d1 x^2 + d2 y^2 + d3 z^2 = t` accepted by
/// `accept`, or `None` if there is none.
///
/// Search order: `z` from its largest admissible value down to 0, then `x`
/// likewise, with `y` solved exactly.
pub fn represent_diag<F>(d: [u64; 3], t: u64, accept: F) -> Option<[i64; 3]>
where
    F: Fn([i64; 3]) -> bool,
{
    let [d1, d2, d3] = d;
    assert!(
        d1 > 0 && d2 > 0 && d3 > 0,
        "diagonal coefficients must be positive"
    );
    let zmax = (t / d3).isqrt();
    for z in (0..=zmax).rev() {
        let rz = t - d3 * z * z;
        let xmax = (rz / d1).isqrt();
        for x in (0..=xmax).rev() {
            let rx = rz - d1 * x * x;
            if !rx.is_multiple_of(d2) {
                continue;
            }
            if let Some(y) = exact_sqrt(rx / d2) {
                let v = [x as i64, y as i64, z as i64];
                if accept(v) {
                    return Some(v);
                }
            }
        }
    }
    None
}

/// `w^2 + x^2 + y^2 + z^2 = r` with `w >= x >= y >= z >= 0`, the
/// lexicographically largest such quadruple.
pub fn four_squares(r: u64) -> [u64; 4] {
    fn fill(rem: u64, cap: u64, slot: usize, out: &mut [u64; 4]) -> bool {
        if slot == 3 {
            return match exact_sqrt(rem) {
                Some(v) if v <= cap => {
                    out[3] = v;
                    true
                }
                _ => false,
            };
        }
        let hi = cap.min(rem.isqrt());
        for v in (0..=hi).rev() {
            // the remaining slots hold at most (3 - slot) * v^2
            if (3 - slot as u64) * v * v < rem - v * v {
                break;
            }
            out[slot] = v;
            if fill(rem - v * v, v, slot + 1, out) {
                return true;
            }
        }
        false
    }
    let mut out = [0; 4];
    let found = fill(r, u64::MAX, 0, &mut out);
    assert!(found, "every nonnegative integer is a sum of four squares");
    out
}

/// Solves `a^2 + ab + b^2 + c^2 + a + b + c = m` via
/// `3(2a+b+1)^2 + (3b+1)^2 + 3(2c+1)^2 = 12m + 7`.
pub fn universal_poly1(m: u64) -> Result<QuadSolution> {
    check_target(m)?;
    let target = 12 * m + 7;
    let [x, mut y, mut z] =
        represent_diag([1, 3, 3], target, |v| v[0] % 3 != 0).ok_or_else(|| {
            Error::Invariant(format!(
                "x^2+3y^2+3z^2 = {target} has no solution with 3 not dividing x"
            ))
        })?;
    // 3b + 1 = x, or = -x
    let b = if (x - 1).rem_euclid(3) == 0 {
        (x - 1) / 3
    } else {
        (-x - 1) / 3
    };
    // x even: b odd and y - z odd, take y to be the odd one.
    // x odd: b even and both y, z odd.
    if x % 2 == 0 && y % 2 == 0 {
        std::mem::swap(&mut y, &mut z);
    }
    // 2c + 1 = y, 2a + b + 1 = z
    if y % 2 == 0 || (z - b - 1) % 2 != 0 {
        return Err(Error::Invariant(format!(
            "parity case analysis failed for (x, y, z) = ({x}, {y}, {z})"
        )));
    }
    let c = (y - 1) / 2;
    let a = (z - b - 1) / 2;
    QuadSolution::checked(FormId::Poly1, m as i64, vec![a, b, c])
}

/// Solves `a^2 + b^2 + c^2 + ab + bc + ca + a + b + c = m` via
/// `6(2a+b+c+1)^2 + 2(3b+c+1)^2 + (4c+1)^2 = 24m + 9`.
pub fn universal_poly2(m: u64) -> Result<QuadSolution> {
    check_target(m)?;
    let target = 24 * m + 9;
    let [x, y, z] = represent_diag([1, 2, 6], target, |v| v[0] % 2 != 0).ok_or_else(|| {
        Error::Invariant(format!(
            "x^2+2y^2+6z^2 = {target} has no solution with x odd"
        ))
    })?;
    // 4c + 1 = x, or = -x
    let c = if (x - 1).rem_euclid(4) == 0 {
        (x - 1) / 4
    } else {
        (-x - 1) / 4
    };
    // 3b + c + 1 = y, or = -y; solvable because 3 | x iff 3 | y
    let b = if (y - c - 1).rem_euclid(3) == 0 {
        (y - c - 1) / 3
    } else if (-y - c - 1).rem_euclid(3) == 0 {
        (-y - c - 1) / 3
    } else {
        return Err(Error::Invariant(format!(
            "no b with 3b + c + 1 = +-{y} (c = {c})"
        )));
    };
    // 2a + b + c + 1 = z, solvable because y = z (mod 2)
    if (z - b - c - 1).rem_euclid(2) != 0 {
        return Err(Error::Invariant(format!(
            "parity of z = {z} does not match b + c + 1 = {}",
            b + c + 1
        )));
    }
    let a = (z - b - c - 1) / 2;
    QuadSolution::checked(FormId::Poly2, m as i64, vec![a, b, c])
}

/// Largest target the solvers accept; beyond it the bounded searches are
/// not run.
pub const MAX_TARGET: u64 = 1_000_000_000_000;

pub fn check_target(t: u64) -> Result<()> {
    if t > MAX_TARGET {
        return Err(Error::Resource(format!("target {t} exceeds {MAX_TARGET}")));
    }
    Ok(())
}

/// 0, 1, -1, 2, -2, ... up to magnitude `r`.
fn signed_range(r: i64) -> impl Iterator<Item = i64> + Clone {
    std::iter::once(0).chain((1..=r).flat_map(|v| [v, -v]))
}

fn require_even(t: u64, form: &str) -> Result<()> {
    if !t.is_multiple_of(2) {
        Err(Error::Domain(format!(
            "{form} only represents even integers, got {t}"
        )))
    } else {
        Ok(())
    }
}

/// `a^2 + b^2 + c^2 + d^2 + (a+b+c+d)^2 = t` for even `t`.
pub fn a4_form(t: u64) -> Result<QuadSolution> {
    require_even(t, "the A4 form")?;
    check_target(t)?;
    let r = t.isqrt() as i64;
    let t = t as i64;
    for a in signed_range(r) {
        for b in signed_range(r) {
            for c in signed_range(r) {
                let q = a * a + b * b + c * c;
                let s = a + b + c;
                // 2d^2 + 2sd + (q + s^2 - t) = 0
                let disc = 2 * t - 2 * q - s * s;
                if disc < 0 {
                    continue;
                }
                let Some(root) = exact_sqrt(disc as u64) else {
                    continue;
                };
                let root = root as i64;
                for num in [-s + root, -s - root] {
                    if num % 2 == 0 {
                        return QuadSolution::checked(FormId::A4, t, vec![a, b, c, num / 2]);
                    }
                }
            }
        }
    }
    Err(Error::Invariant(format!(
        "the A4 form does not represent {t}"
    )))
}

/// `2(a^2 + (b+c)a + b^2 + bc + c^2 + d^2) = t` for even `t`.
pub fn a3a1_form(t: u64) -> Result<QuadSolution> {
    require_even(t, "the A3+A1 form")?;
    check_target(t)?;
    let r = t.isqrt() as i64;
    let half = (t / 2) as i64;
    for a in signed_range(r) {
        for b in signed_range(r) {
            for c in signed_range(r) {
                let q = a * a + (b + c) * a + b * b + b * c + c * c;
                if q > half {
                    continue;
                }
                if let Some(d) = exact_sqrt((half - q) as u64) {
                    return QuadSolution::checked(FormId::A3A1, t as i64, vec![a, b, c, d as i64]);
                }
            }
        }
    }
    Err(Error::Invariant(format!(
        "the A3+A1 form does not represent {t}"
    )))
}
