use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::EulerLattice;
use crate::error::Result;
use crate::intmat::{self, IntMatrix};

pub const DEFAULT_BOUND: i64 = 10;

/// Outcome of a bounded isometry search. `NotFoundUpToBound` is inconclusive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum IsometryResult {
    /// `Pᵀ A1 P = A2` with `|det P| = 1`; `matrix` is `P`, row-major.
    Found { matrix: Vec<Vec<i64>> },
    RefutedByInvariant { invariant: String },
    NotFoundUpToBound { bound: i64 },
}

impl IsometryResult {
    pub fn is_found(&self) -> bool {
        matches!(self, IsometryResult::Found { .. })
    }

    pub fn matrix(&self) -> Option<IntMatrix> {
        match self {
            IsometryResult::Found { matrix } => Some(intmat::from_rows(matrix)),
            _ => None,
        }
    }
}

/// Name of the first isometry invariant on which the two lattices differ.
fn refuting_invariant(l1: &EulerLattice, l2: &EulerLattice) -> Result<Option<&'static str>> {
    if l1.rank() != l2.rank() {
        return Ok(Some("rank"));
    }
    if l1.det().abs() != l2.det().abs() {
        return Ok(Some("abs_det"));
    }
    if l1.is_unimodular() {
        let c1 = intmat::char_poly(&l1.serre_matrix()?)?;
        let c2 = intmat::char_poly(&l2.serre_matrix()?)?;
        if c1 != c2 {
            return Ok(Some("serre_char_poly"));
        }
    }
    if intmat::smith_invariants(&l1.symmetrized()) != intmat::smith_invariants(&l2.symmetrized()) {
        return Ok(Some("symmetrized_smith_form"));
    }
    let skew = |l: &EulerLattice| l.gram() - l.gram().transpose();
    if intmat::smith_invariants(&skew(l1)) != intmat::smith_invariants(&skew(l2)) {
        return Ok(Some("antisymmetrized_smith_form"));
    }
    Ok(None)
}

struct Candidate {
    v: Vec<i64>,
    av: Vec<i64>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Searches for `P` with entries in `[-bound, bound]`, `|det P| = 1` and
/// `Pᵀ A1 P = A2`. Equal Gram matrices give the identity. Otherwise columns
/// are filled left to right from lexicographically sorted candidates, so the
/// first hit is the smallest `P` in column-major lexicographic order.
pub fn isometry_search(l1: &EulerLattice, l2: &EulerLattice, bound: i64) -> Result<IsometryResult> {
    if let Some(name) = refuting_invariant(l1, l2)? {
        return Ok(IsometryResult::RefutedByInvariant { invariant: name.to_string() });
    }
    let n = l1.rank();
    let a1 = l1.gram();
    let a2 = l2.gram();
    if n == 0 {
        return Ok(IsometryResult::Found { matrix: Vec::new() });
    }
    if a1 == a2 {
        return Ok(IsometryResult::Found { matrix: intmat::to_rows(&IntMatrix::identity(n, n)) });
    }
    let bound = bound.max(0);
    let wanted: Vec<i64> = (0..n).map(|j| a2[(j, j)]).collect();
    let mut pools: HashMap<i64, Vec<Candidate>> = wanted.iter().map(|&w| (w, Vec::new())).collect();
    let mut v = vec![-bound; n];
    loop {
        let av: Vec<i64> = (0..n).map(|i| (0..n).map(|j| a1[(i, j)] * v[j]).sum()).collect();
        let q = dot(&v, &av);
        if let Some(pool) = pools.get_mut(&q) {
            pool.push(Candidate { v: v.clone(), av });
        }
        // odometer in lexicographic order
        let Some(k) = (0..n).rev().find(|&k| v[k] < bound) else { break };
        v[k] += 1;
        for x in v.iter_mut().skip(k + 1) {
            *x = -bound;
        }
    }
    let mut chosen: Vec<&Candidate> = Vec::with_capacity(n);
    let found = extend(&pools, &wanted, a2, &mut chosen);
    if let Some(cols) = found {
        let p = IntMatrix::from_fn(n, n, |i, j| cols[j][i]);
        debug_assert_eq!(l1.transform(&p)?, *a2);
        return Ok(IsometryResult::Found { matrix: intmat::to_rows(&p) });
    }
    Ok(IsometryResult::NotFoundUpToBound { bound })
}

fn extend<'a>(
    pools: &'a HashMap<i64, Vec<Candidate>>,
    wanted: &[i64],
    a2: &IntMatrix,
    chosen: &mut Vec<&'a Candidate>,
) -> Option<Vec<Vec<i64>>> {
    let j = chosen.len();
    let n = wanted.len();
    if j == n {
        let p = IntMatrix::from_fn(n, n, |r, c| chosen[c].v[r]);
        let det = intmat::determinant(&p);
        return (det.abs() == BigInt::one())
            .then(|| chosen.iter().map(|c| c.v.clone()).collect());
    }
    for cand in &pools[&wanted[j]] {
        // χ(p_i, v) = p_iᵀ A v and χ(v, p_i) = vᵀ A p_i
        let fits = chosen
            .iter()
            .enumerate()
            .all(|(i, p)| dot(&p.v, &cand.av) == a2[(i, j)] && dot(&cand.v, &p.av) == a2[(j, i)]);
        if !fits {
            continue;
        }
        chosen.push(cand);
        if let Some(found) = extend(pools, wanted, a2, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}
