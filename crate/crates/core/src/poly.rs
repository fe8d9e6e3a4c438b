//! Dense integer polynomials and cyclotomic trial division.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Integer polynomial, coefficients stored lowest degree first with no
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly(Vec<i64>);

impl Poly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![1])
    }

    /// `t - a`
    pub fn linear(a: i64) -> Self {
        Poly(vec![-a, 1])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> i64 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Division by a monic polynomial: returns `(quotient, remainder)`.
    pub fn div_rem_monic(&self, d: &Poly) -> (Poly, Poly) {
        assert_eq!(d.leading(), 1, "divisor must be monic");
        let dd = d.0.len() - 1;
        if self.0.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.0.clone();
        let mut q = vec![0i64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd];
            q[k] = c;
            if c != 0 {
                for (i, x) in d.0.iter().enumerate() {
                    r[k + i] -= c * x;
                }
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, c| acc * t + c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => {}
                _ => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The n-th cyclotomic polynomial, from `t^n - 1 = prod_{d | n} Phi_d`.
pub fn cyclotomic(n: u64) -> Poly {
    assert!(n >= 1);
    let mut coeffs = vec![0i64; n as usize + 1];
    coeffs[0] = -1;
    coeffs[n as usize] = 1;
    let mut p = Poly::new(coeffs);
    for d in (1..n).filter(|d| n % d == 0) {
        let (q, r) = p.div_rem_monic(&cyclotomic(d));
        debug_assert!(r.is_zero());
        p = q;
    }
    p
}

/// Factors a monic polynomial into cyclotomic polynomials by trial division.
/// Returns the multiset `[(n, multiplicity)]`, or `None` if some factor is not
/// cyclotomic.
pub fn cyclotomic_factorization(p: &Poly) -> Option<Vec<(u64, u32)>> {
    let deg = p.degree()?;
    if p.leading() != 1 {
        return None;
    }
    let mut rest = p.clone();
    let mut factors = Vec::new();
    // phi(n) >= sqrt(n/2), so phi(n) <= deg forces n <= 2 deg^2
    let limit = 2 * (deg as u64).pow(2) + 2;
    for n in 1..=limit {
        if euler_phi(n) as usize > rest.degree().unwrap_or(0) {
            continue;
        }
        let phi = cyclotomic(n);
        let mut mult = 0;
        loop {
            let (q, r) = rest.div_rem_monic(&phi);
            if !r.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            factors.push((n, mult));
        }
    }
    (rest == Poly::one()).then_some(factors)
}
