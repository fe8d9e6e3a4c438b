//! Binary quadratic forms up to `GL₂(ℤ)` and the comparison of the quadratic
//! form `v ↦ χ(v, v)` of a line-bundle complement with that of a curve.

use std::fmt;

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::bn_complement_lattice;

/// `p·x² + q·xy + r·y²`
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinQuadForm {
    pub p: i64,
    pub q: i64,
    pub r: i64,
}

type Triple = (i128, i128, i128);

impl BinQuadForm {
    pub fn new(p: i64, q: i64, r: i64) -> Self {
        BinQuadForm { p, q, r }
    }

    pub fn discriminant(&self) -> i128 {
        let (p, q, r) = self.wide();
        q * q - 4 * p * r
    }

    fn wide(&self) -> Triple {
        (self.p as i128, self.q as i128, self.r as i128)
    }

    pub fn eval(&self, x: i64, y: i64) -> i128 {
        let (p, q, r) = self.wide();
        let (x, y) = (x as i128, y as i128);
        p * x * x + q * x * y + r * y * y
    }

    /// `f(αx + βy, γx + δy)` for the matrix `[[α, β], [γ, δ]]`.
    pub fn transform(&self, m: [[i64; 2]; 2]) -> BinQuadForm {
        let (p, q, r) = self.wide();
        let [[a, b], [c, d]] = m.map(|row| row.map(i128::from));
        let np = p * a * a + q * a * c + r * c * c;
        let nq = 2 * p * a * b + q * (a * d + b * c) + 2 * r * c * d;
        let nr = p * b * b + q * b * d + r * d * d;
        let narrow = |v: i128| i64::try_from(v).expect("transformed form fits in i64");
        BinQuadForm::new(narrow(np), narrow(nq), narrow(nr))
    }

    /// A representative that is the same for exactly the forms in one
    /// `GL₂(ℤ)` class.
    pub fn canonical(&self) -> (i128, i128, i128) {
        let d = self.discriminant();
        let f = self.wide();
        if d < 0 {
            definite_canonical(f)
        } else if d == 0 {
            degenerate_canonical(f)
        } else {
            let s = d.sqrt();
            if s * s == d {
                split_canonical(f, s)
            } else {
                let (p, q, r) = f;
                zagier_canonical(f, d).min(zagier_canonical((p, -q, r), d))
            }
        }
    }
}

impl fmt::Display for BinQuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [(self.p, "x^2"), (self.q, "xy"), (self.r, "y^2")];
        let mut first = true;
        for (c, m) in terms.into_iter().filter(|(c, _)| *c != 0) {
            let sign = match (first, c < 0) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let abs = c.unsigned_abs();
            let coeff = if abs == 1 { String::new() } else { abs.to_string() };
            write!(f, "{sign}{coeff}{m}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn form_equivalent(f1: &BinQuadForm, f2: &BinQuadForm) -> bool {
    f1.discriminant() == f2.discriminant() && f1.canonical() == f2.canonical()
}

/// `f(x − ny, y)`
fn shift(f: Triple, n: i128) -> Triple {
    let (p, q, r) = f;
    (p, q - 2 * p * n, p * n * n - q * n + r)
}

/// Gauss reduction to `|q| ≤ p ≤ r` with `q ≥ 0`, after making the form positive.
fn definite_canonical(f: Triple) -> Triple {
    let sign = f.0.signum();
    let (mut p, mut q, mut r) = (f.0 * sign, f.1 * sign, f.2 * sign);
    loop {
        if q.abs() > p {
            // nearest multiple of 2p, so that the new q lies in (−p, p]
            let n = Integer::div_floor(&(q + p - 1), &(2 * p));
            (p, q, r) = shift((p, q, r), n);
        }
        if p > r {
            (p, q, r) = (r, -q, p);
        } else {
            break;
        }
    }
    (sign * p, sign * q.abs(), sign * r)
}

/// `c·(αx + βy)²` with `α, β` coprime is equivalent to `c·x²`.
fn degenerate_canonical(f: Triple) -> Triple {
    let (p, q, r) = f;
    let content = p.gcd(&q).gcd(&r);
    let sign = if p != 0 { p.signum() } else { r.signum() };
    (sign * content, 0, 0)
}

/// Sends an isotropic primitive vector to `(1, 0)`, leaving `(0, s, r mod s)`;
/// the minimum over both isotropic lines is an invariant.
fn split_canonical(f: Triple, s: i128) -> Triple {
    let (p, q, r) = f;
    let lines: Vec<(i128, i128)> = if p == 0 {
        vec![(1, 0), (-r, q)]
    } else {
        vec![(-q + s, 2 * p), (-q - s, 2 * p)]
    };
    lines
        .into_iter()
        .map(|(x, y)| {
            let g = x.gcd(&y);
            let (x, y) = (x / g, y / g);
            // complete (x, y) to [[x, u], [y, v]] with xv − uy = 1
            let e = x.extended_gcd(&y);
            let (u, v) = (-e.y * e.gcd, e.x * e.gcd);
            let c2 = p * u * u + q * u * v + r * v * v;
            let q2 = 2 * p * x * u + q * (x * v + y * u) + 2 * r * y * v;
            debug_assert_eq!(p * x * x + q * x * y + r * y * y, 0);
            debug_assert_eq!(q2.abs(), s);
            (0, s, c2.mod_floor(&s))
        })
        .min()
        .expect("two isotropic lines")
}

fn is_zagier_reduced((a, b, c): Triple) -> bool {
    a > 0 && c > 0 && b > a + c
}

/// `f ∘ [[0, −1], [1, n]]` with `n = ⌈(b + √D)/(2c)⌉`.
fn zagier_step((a, b, c): Triple, d: i128) -> Triple {
    let m = b + d.sqrt();
    let n = if c > 0 { Integer::div_floor(&m, &(2 * c)) + 1 } else { -Integer::div_floor(&m, &(-2 * c)) };
    (c, 2 * c * n - b, a - b * n + c * n * n)
}

/// Minimum over the cycle of reduced forms `SL₂(ℤ)`-equivalent to `f`.
fn zagier_canonical(f: Triple, d: i128) -> Triple {
    let mut g = f;
    while !is_zagier_reduced(g) {
        g = zagier_step(g, d);
    }
    let start = g;
    let mut best = g;
    loop {
        g = zagier_step(g, d);
        if g == start {
            return best;
        }
        best = best.min(g);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// `L` is `O_C` or `ω_C`: the complement is the curve itself.
    Curve,
    NotACurve,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BnEntry {
    pub h0: u64,
    pub h1: u64,
    pub form: BinQuadForm,
    pub discriminant: i128,
    pub curve_form: BinQuadForm,
    pub curve_equivalent: bool,
    pub verdict: Verdict,
}

/// `v ↦ χ(v, v)` on a rank-2 lattice.
pub fn euler_form(gram: &crate::intmat::IntMatrix) -> BinQuadForm {
    BinQuadForm::new(gram[(0, 0)], gram[(0, 1)] + gram[(1, 0)], gram[(1, 1)])
}

/// For each factorization `g = h0·h1`, the form `χ(v, v)` on the complement of
/// the class of the line bundle compared with `(1 − g)·r²`.
pub fn classify_bn(g: u64) -> Result<Vec<BnEntry>> {
    if g == 0 {
        return Err(Error::Usage("genus must be at least 1".into()));
    }
    let curve_form = BinQuadForm::new(1 - g as i64, 0, 0);
    (1..=g)
        .filter(|h0| g % h0 == 0)
        .map(|h0| {
            let h1 = g / h0;
            let form = euler_form(bn_complement_lattice(g, h0, h1)?.gram());
            let (a, b) = (h0 as i64 - 1, h1 as i64 - 1);
            assert_eq!(form, BinQuadForm::new(-b, a * b, -a), "complement form for ({h0}, {h1})");
            let curve_equivalent = form_equivalent(&form, &curve_form);
            let verdict = if a == 0 || b == 0 { Verdict::Curve } else { Verdict::NotACurve };
            assert_eq!(curve_equivalent, verdict == Verdict::Curve, "form comparison for ({h0}, {h1})");
            Ok(BnEntry { h0, h1, form, discriminant: form.discriminant(), curve_form, curve_equivalent, verdict })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_cases() {
        let square = BinQuadForm::new(-2, 4, -2);
        assert!(!form_equivalent(&square, &BinQuadForm::new(-8, 0, 0)));
        assert!(form_equivalent(&square, &BinQuadForm::new(-2, 0, 0)));
        let other = BinQuadForm::new(-4, 4, -1);
        assert!(!form_equivalent(&other, &BinQuadForm::new(-9, 0, 0)));
        assert!(form_equivalent(&other, &BinQuadForm::new(-1, 0, 0)));
        assert!(!form_equivalent(&BinQuadForm::new(0, 0, 0), &BinQuadForm::new(1, 0, 0)));
        assert!(!form_equivalent(&BinQuadForm::new(1, 0, 0), &BinQuadForm::new(-1, 0, 0)));
    }

    #[test]
    fn display() {
        assert_eq!(BinQuadForm::new(-4, 4, -1).to_string(), "-4x^2 + 4xy - y^2");
        assert_eq!(BinQuadForm::new(0, 0, -9).to_string(), "-9y^2");
        assert_eq!(BinQuadForm::new(0, 0, 0).to_string(), "0");
    }

    #[test]
    fn definite_reduction() {
        let f = BinQuadForm::new(1, 0, 1);
        assert_eq!(f.canonical(), (1, 0, 1));
        assert!(form_equivalent(&f, &f.transform([[2, 1], [1, 1]])));
        assert!(!form_equivalent(&BinQuadForm::new(1, 0, 5), &BinQuadForm::new(2, 2, 3)));
        assert!(form_equivalent(&BinQuadForm::new(2, 2, 3), &BinQuadForm::new(2, -2, 3)));
        assert!(!form_equivalent(&f, &BinQuadForm::new(-1, 0, -1)));
    }

    #[test]
    fn indefinite_cases() {
        let f = BinQuadForm::new(1, 0, -3);
        assert!(!form_equivalent(&f, &BinQuadForm::new(-1, 0, 3)));
        assert!(form_equivalent(&f, &f.transform([[3, 2], [4, 3]])));
        let g = BinQuadForm::new(1, 0, -2);
        assert!(form_equivalent(&g, &BinQuadForm::new(-1, 0, 2)));
        // square discriminant
        let h = BinQuadForm::new(0, 3, 1);
        assert!(form_equivalent(&h, &h.transform([[1, 5], [1, 6]])));
        assert!(!form_equivalent(&BinQuadForm::new(0, 5, 1), &BinQuadForm::new(0, 5, 2)));
    }

    #[test]
    fn classification_small_genera() {
        let nine = classify_bn(9).unwrap();
        let mid = nine.iter().find(|e| e.h0 == 3).unwrap();
        assert_eq!(mid.discriminant, 0);
        assert!(!mid.curve_equivalent);
        let six = classify_bn(6).unwrap();
        let e = six.iter().find(|e| (e.h0, e.h1) == (2, 3)).unwrap();
        assert_eq!(e.discriminant, -4);
        assert_eq!(e.verdict, Verdict::NotACurve);
        for g in 1..=12 {
            let entries = classify_bn(g).unwrap();
            assert!(entries.first().unwrap().curve_equivalent && entries.last().unwrap().curve_equivalent);
        }
        assert!(classify_bn(0).is_err());
    }
}
