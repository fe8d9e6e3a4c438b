//! Finitely supported dimension tables `degree → dim`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Dimensions of a graded vector space. Degrees not present have dimension 0
/// and zero entries are never stored, so equality is equality of tables.
///
/// Hom and Ext tables use cohomological degrees. Hochschild tables are keyed by
/// the shift `m` of a summand `k[m]`, so `k^5[−2]` is stored at key `-2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "BTreeMap<i32, u64>", into = "BTreeMap<i32, u64>")]
pub struct GradedDims(BTreeMap<i32, u64>);

impl GradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, degree: i32) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn set(&mut self, degree: i32, dim: u64) {
        if dim == 0 {
            self.0.remove(&degree);
        } else {
            self.0.insert(degree, dim);
        }
    }

    pub fn add(&mut self, degree: i32, dim: u64) {
        let d = self.get(degree) + dim;
        self.set(degree, d);
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, u64)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    /// `Σ (−1)^degree · dim`
    pub fn euler_char(&self) -> i64 {
        self.iter().map(|(d, n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    /// Smallest and largest degree carrying a nonzero dimension.
    pub fn support(&self) -> Option<(i32, i32)> {
        Some((*self.0.keys().next()?, *self.0.keys().next_back()?))
    }

    /// Degreewise sum.
    pub fn direct_sum(&self, other: &GradedDims) -> GradedDims {
        let mut out = self.clone();
        for (d, n) in other.iter() {
            out.add(d, n);
        }
        out
    }

    /// Moves every entry from degree `d` to `d + by`.
    pub fn shifted(&self, by: i32) -> GradedDims {
        self.iter().map(|(d, n)| (d + by, n)).collect()
    }
}

impl From<BTreeMap<i32, u64>> for GradedDims {
    fn from(map: BTreeMap<i32, u64>) -> Self {
        map.into_iter().collect()
    }
}

impl From<GradedDims> for BTreeMap<i32, u64> {
    fn from(g: GradedDims) -> Self {
        g.0
    }
}

impl FromIterator<(i32, u64)> for GradedDims {
    fn from_iter<T: IntoIterator<Item = (i32, u64)>>(iter: T) -> Self {
        let mut out = GradedDims::new();
        for (d, n) in iter {
            out.add(d, n);
        }
        out
    }
}

impl<const N: usize> From<[(i32, u64); N]> for GradedDims {
    fn from(entries: [(i32, u64); N]) -> Self {
        entries.into_iter().collect()
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (d, n)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}:{n}")?;
        }
        write!(f, "}}")
    }
}
