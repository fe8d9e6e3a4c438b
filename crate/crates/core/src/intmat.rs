//! Exact integer matrix routines: determinants, adjugates, ranks, Hermite and
//! Smith normal forms, integer kernels and integral solves.
//!
//! Matrices are `nalgebra::DMatrix<i64>`. Anything that can grow beyond the
//! entries of the input (minors, eliminations) is carried out in `BigInt` or
//! `i128` and converted back with an explicit overflow check.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type IntMatrix = DMatrix<i64>;

/// Builds a matrix from row vectors. All rows must have the same length.
pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
    DMatrix::from_fn(nrows, ncols, |i, j| rows[i][j])
}

pub fn to_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

fn big_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| BigInt::from(m[(i, j)])).collect())
        .collect()
}

pub(crate) fn big_to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow)
}

/// Fraction-free Gaussian elimination. Returns the rank and, for square full
/// rank input, the determinant.
fn bareiss(mut a: Vec<Vec<BigInt>>, ncols: usize) -> (usize, BigInt) {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut negate = false;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            negate = !negate;
        }
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    let det = if nrows == ncols && r == nrows {
        if nrows == 0 {
            BigInt::one()
        } else if negate {
            -prev
        } else {
            prev
        }
    } else {
        BigInt::zero()
    };
    (r, det)
}

pub fn determinant(m: &IntMatrix) -> BigInt {
    assert!(m.is_square(), "determinant of a non-square matrix");
    bareiss(big_rows(m), m.ncols()).1
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    bareiss(big_rows(m), m.ncols()).0
}

fn minor(m: &IntMatrix, skip_row: usize, skip_col: usize) -> IntMatrix {
    let n = m.nrows();
    DMatrix::from_fn(n - 1, n - 1, |i, j| {
        let ii = if i < skip_row { i } else { i + 1 };
        let jj = if j < skip_col { j } else { j + 1 };
        m[(ii, jj)]
    })
}

/// Adjugate (transposed cofactor matrix), so that `adj(A)·A = det(A)·I`.
pub fn adjugate(m: &IntMatrix) -> Result<IntMatrix> {
    assert!(m.is_square(), "adjugate of a non-square matrix");
    let n = m.nrows();
    if n == 0 {
        return Ok(IntMatrix::zeros(0, 0));
    }
    if n == 1 {
        return Ok(IntMatrix::from_element(1, 1, 1));
    }
    let mut adj = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let c = determinant(&minor(m, i, j));
            let c = if (i + j) % 2 == 0 { c } else { -c };
            adj[(j, i)] = big_to_i64(&c)?;
        }
    }
    Ok(adj)
}

/// Inverse of a matrix with determinant ±1.
pub fn inverse_unimodular(m: &IntMatrix) -> Result<IntMatrix> {
    let det = determinant(m);
    if det.abs() != BigInt::one() {
        return Err(Error::NonUnimodular { det: det.to_string() });
    }
    let adj = adjugate(m)?;
    Ok(if det.is_negative() { -adj } else { adj })
}

/// Integer matrix product with overflow detection.
pub fn checked_mul(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    assert_eq!(a.ncols(), b.nrows(), "product shape mismatch");
    let mut out = IntMatrix::zeros(a.nrows(), b.ncols());
    for i in 0..a.nrows() {
        for j in 0..b.ncols() {
            let mut acc: i128 = 0;
            for k in 0..a.ncols() {
                acc += i128::from(a[(i, k)]) * i128::from(b[(k, j)]);
            }
            out[(i, j)] = i64::try_from(acc).map_err(|_| Error::Overflow)?;
        }
    }
    Ok(out)
}

/// Characteristic polynomial `det(t·I - M)` by the Faddeev–LeVerrier
/// recursion; every division in it is exact over the integers.
pub fn char_poly(m: &IntMatrix) -> Result<crate::poly::Poly> {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.nrows();
    let a = big_rows(m);
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::zero();
                for t in 0..n {
                    acc += &a[i][t] * &mk[t][j];
                }
                if i == j {
                    acc += &coeffs[n - k + 1];
                }
                next[i][j] = acc;
            }
        }
        let mut trace = BigInt::zero();
        for i in 0..n {
            for t in 0..n {
                trace += &a[i][t] * &next[t][i];
            }
        }
        coeffs[n - k] = -trace / BigInt::from(k);
        mk = next;
    }
    let coeffs = coeffs.iter().map(big_to_i64).collect::<Result<Vec<_>>>()?;
    Ok(crate::poly::Poly::new(coeffs))
}

fn floor_div(a: i128, b: i128) -> i128 {
    Integer::div_floor(&a, &b)
}

/// Row-style Hermite normal form with transform: returns `(H, U)` with
/// `U·B = H`, `U` unimodular, `H` in row echelon form with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_with_transform(b: &[Vec<i128>]) -> (Vec<Vec<i128>>, Vec<Vec<i128>>) {
    let m = b.len();
    let n = b.first().map_or(0, Vec::len);
    let mut h: Vec<Vec<i128>> = b.to_vec();
    let mut u: Vec<Vec<i128>> = (0..m)
        .map(|i| (0..m).map(|j| i128::from(i == j)).collect())
        .collect();
    let sub = |rows: &mut Vec<Vec<i128>>, target: usize, src: usize, q: i128| {
        if q == 0 {
            return;
        }
        let s = rows[src].clone();
        for (t, x) in rows[target].iter_mut().zip(s) {
            *t -= q * x;
        }
    };
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| h[i][c] != 0)
                .min_by_key(|&i| (h[i][c].abs(), i));
            let Some(p) = best else { break };
            h.swap(p, r);
            u.swap(p, r);
            let mut clean = true;
            for i in r + 1..m {
                if h[i][c] != 0 {
                    let q = floor_div(h[i][c], h[r][c]);
                    sub(&mut h, i, r, q);
                    sub(&mut u, i, r, q);
                    if h[i][c] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if h[r][c] == 0 {
            continue;
        }
        if h[r][c] < 0 {
            h[r].iter_mut().for_each(|x| *x = -*x);
            u[r].iter_mut().for_each(|x| *x = -*x);
        }
        for i in 0..r {
            let q = floor_div(h[i][c], h[r][c]);
            sub(&mut h, i, r, q);
            sub(&mut u, i, r, q);
        }
        r += 1;
    }
    (h, u)
}

/// Hermite normal form of the row lattice spanned by `rows`, zero rows dropped.
pub fn hermite_rows(rows: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let (h, _) = hermite_with_transform(rows);
    h.into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect()
}

/// A basis (as rows) of the integer kernel `{x : M x = 0}`, in Hermite normal
/// form. The kernel of an integer matrix is always saturated.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<i64>> {
    let n = m.ncols();
    let bt: Vec<Vec<i128>> = (0..n)
        .map(|j| (0..m.nrows()).map(|i| i128::from(m[(i, j)])).collect())
        .collect();
    let (h, u) = hermite_with_transform(&bt);
    let kernel: Vec<Vec<i128>> = h
        .iter()
        .zip(u)
        .filter(|(hr, _)| hr.iter().all(|&x| x == 0))
        .map(|(_, ur)| ur)
        .collect();
    hermite_rows(&kernel)
        .into_iter()
        .map(|r| r.into_iter().map(|x| i64::try_from(x).expect("kernel entry overflow")).collect())
        .collect()
}

/// Nonzero invariant factors of the Smith normal form, in divisibility order.
pub fn smith_invariants(m: &IntMatrix) -> Vec<i128> {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut a: Vec<Vec<i128>> = (0..rows)
        .map(|i| (0..cols).map(|j| i128::from(m[(i, j)])).collect())
        .collect();
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            for i in t + 1..rows {
                let q = a[i][t] / a[t][t];
                if q != 0 {
                    let src = a[t].clone();
                    for (x, s) in a[i].iter_mut().zip(src) {
                        *x -= q * s;
                    }
                }
                if a[i][t] != 0 {
                    a.swap(t, i);
                    done = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j] / a[t][t];
                if q != 0 {
                    for row in a.iter_mut() {
                        let s = row[t];
                        row[j] -= q * s;
                    }
                }
                if a[t][j] != 0 {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    done = false;
                }
            }
            if !done {
                continue;
            }
            let p = a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    let src = a[i].clone();
                    for (x, s) in a[t].iter_mut().zip(src) {
                        *x += s;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

/// Solves `E·X = B` over the integers for `E` of full column rank. Returns
/// `None` when the rational solution is not integral or does not exist.
pub fn solve_integer(e: &IntMatrix, b: &IntMatrix) -> Result<Option<IntMatrix>> {
    assert_eq!(e.nrows(), b.nrows(), "solve shape mismatch");
    let k = e.ncols();
    // greedily choose k rows giving a nonsingular square block
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..e.nrows() {
        let mut trial = chosen.clone();
        trial.push(i);
        let block = DMatrix::from_fn(trial.len(), k, |r, c| e[(trial[r], c)]);
        if rank(&block) == trial.len() {
            chosen = trial;
        }
        if chosen.len() == k {
            break;
        }
    }
    if chosen.len() < k {
        return Err(Error::Usage("basis matrix is rank deficient".into()));
    }
    let block = DMatrix::from_fn(k, k, |r, c| e[(chosen[r], c)]);
    let rhs = DMatrix::from_fn(k, b.ncols(), |r, c| b[(chosen[r], c)]);
    let det = determinant(&block);
    let adj = adjugate(&block)?;
    let mut x = IntMatrix::zeros(k, b.ncols());
    for i in 0..k {
        for j in 0..b.ncols() {
            let mut acc = BigInt::zero();
            for t in 0..k {
                acc += BigInt::from(adj[(i, t)]) * BigInt::from(rhs[(t, j)]);
            }
            let (q, r) = acc.div_rem(&det);
            if !r.is_zero() {
                return Ok(None);
            }
            x[(i, j)] = big_to_i64(&q)?;
        }
    }
    if checked_mul(e, &x)? != *b {
        return Ok(None);
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&m(&[&[2, 1], &[7, 4]])), BigInt::from(1));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), BigInt::zero());
        assert_eq!(determinant(&m(&[&[1, 1, 1], &[0, 1, 1], &[0, -1, 0]])), BigInt::from(1));
    }

    #[test]
    fn rank_skips_zero_columns() {
        assert_eq!(rank(&m(&[&[0, 1, 2], &[0, 2, 4], &[0, 0, 1]])), 2);
        assert_eq!(rank(&IntMatrix::zeros(3, 2)), 0);
    }

    #[test]
    fn adjugate_identity() {
        let a = m(&[&[2, -1, 0], &[1, 3, 5], &[0, 4, 1]]);
        let adj = adjugate(&a).unwrap();
        let d = determinant(&a).to_i64().unwrap();
        assert_eq!(&adj * &a, IntMatrix::identity(3, 3) * d);
    }

    #[test]
    fn char_poly_small() {
        use crate::poly::Poly;
        assert_eq!(char_poly(&m(&[&[2, 1], &[7, 4]])).unwrap(), Poly::new(vec![1, -6, 1]));
        assert_eq!(char_poly(&IntMatrix::identity(3, 3)).unwrap(), Poly::linear(1).pow(3));
        assert_eq!(char_poly(&IntMatrix::zeros(0, 0)).unwrap(), Poly::one());
    }

    #[test]
    fn hermite_and_kernel() {
        let h = hermite_rows(&[vec![2, 4], vec![3, 5]]);
        assert_eq!(h, vec![vec![1, 1], vec![0, 2]]);
        let k = kernel_basis(&m(&[&[1, 2, 3]]));
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v[0] + 2 * v[1] + 3 * v[2], 0);
        }
    }

    #[test]
    fn smith_known() {
        assert_eq!(smith_invariants(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])), vec![2, 6, 12]);
        assert_eq!(smith_invariants(&m(&[&[1, 0], &[0, 0]])), vec![1]);
        assert_eq!(smith_invariants(&m(&[&[2], &[4]])), vec![2]);
    }

    #[test]
    fn solve_integer_cases() {
        let e = m(&[&[1, 0], &[0, 2], &[1, 1]]);
        let b = m(&[&[1], &[4], &[3]]);
        assert_eq!(solve_integer(&e, &b).unwrap(), Some(m(&[&[1], &[2]])));
        let b = m(&[&[0], &[1], &[0]]);
        assert_eq!(solve_integer(&e, &b).unwrap(), None);
    }
}
