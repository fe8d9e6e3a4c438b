//! Free abelian groups of finite rank with a non-symmetric integer bilinear
//! form `χ(v, w) = vᵀ A w`.

mod complement;
mod isometry;
mod serre;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::{self, IntMatrix};

pub use complement::Complement;
pub use isometry::{isometry_search, IsometryResult, DEFAULT_BOUND};
pub use serre::SerreAnalysis;

/// Integer coordinates of a class in some lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KClass(Vec<i64>);

impl KClass {
    pub fn new(coords: Vec<i64>) -> Self {
        KClass(coords)
    }

    pub fn zero(rank: usize) -> Self {
        KClass(vec![0; rank])
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        KClass(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `self + c·other`
    pub fn add_scaled(&self, c: i64, other: &KClass) -> KClass {
        assert_eq!(self.len(), other.len());
        KClass(self.0.iter().zip(&other.0).map(|(a, b)| a + c * b).collect())
    }

    pub fn scale(&self, c: i64) -> KClass {
        KClass(self.0.iter().map(|a| c * a).collect())
    }
}

impl From<Vec<i64>> for KClass {
    fn from(v: Vec<i64>) -> Self {
        KClass(v)
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Numerical shadows of exceptional and 2-spherical objects. These are
/// necessary conditions only: `χ(v,v) = 1` does not make an object exceptional.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPredicates {
    pub chi_self: i64,
    pub numerically_exceptional: bool,
    pub numerically_2spherical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerLattice {
    gram: IntMatrix,
    labels: Vec<String>,
    det: BigInt,
}

impl EulerLattice {
    pub fn new(gram: IntMatrix, labels: Vec<String>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Usage(format!(
                "gram matrix is {}x{}, not square",
                gram.nrows(),
                gram.ncols()
            )));
        }
        if labels.len() != gram.nrows() {
            return Err(Error::DimensionMismatch { expected: gram.nrows(), found: labels.len() });
        }
        let det = intmat::determinant(&gram);
        Ok(EulerLattice { gram, labels, det })
    }

    /// Lattice with labels `b1, b2, ...`.
    pub fn unlabeled(gram: IntMatrix) -> Result<Self> {
        let labels = (1..=gram.nrows()).map(|i| format!("b{i}")).collect();
        Self::new(gram, labels)
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::unlabeled(intmat::from_rows(rows))
    }

    pub fn rank(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn gram_rows(&self) -> Vec<Vec<i64>> {
        intmat::to_rows(&self.gram)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn is_unimodular(&self) -> bool {
        self.det.abs() == BigInt::one()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn basis_class(&self, i: usize) -> KClass {
        KClass::basis(self.rank(), i)
    }

    pub fn check(&self, v: &KClass) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: v.len() });
        }
        Ok(())
    }

    /// `χ(v, w) = vᵀ A w`
    pub fn pair(&self, v: &KClass, w: &KClass) -> Result<i64> {
        self.check(v)?;
        self.check(w)?;
        let n = self.rank();
        let mut acc: i128 = 0;
        for i in 0..n {
            if v.0[i] == 0 {
                continue;
            }
            let mut row: i128 = 0;
            for j in 0..n {
                row += i128::from(self.gram[(i, j)]) * i128::from(w.0[j]);
            }
            acc += i128::from(v.0[i]) * row;
        }
        i64::try_from(acc).map_err(|_| Error::Overflow)
    }

    pub fn class_predicates(&self, v: &KClass) -> Result<ClassPredicates> {
        let chi_self = self.pair(v, v)?;
        Ok(ClassPredicates {
            chi_self,
            numerically_exceptional: chi_self == 1,
            numerically_2spherical: chi_self == 2,
        })
    }

    /// Mutation of `v` through the numerically exceptional class `e`.
    /// Right: `v − χ(v,e)·e`. Left: `v − χ(e,v)·e`.
    pub fn mutate(&self, e: &KClass, v: &KClass, side: Side) -> Result<KClass> {
        let ee = self.pair(e, e)?;
        if ee != 1 {
            return Err(Error::NotExceptional { chi: ee });
        }
        let c = match side {
            Side::Right => self.pair(v, e)?,
            Side::Left => self.pair(e, v)?,
        };
        Ok(v.add_scaled(-c, e))
    }

    /// Gram matrix in a new basis given by the columns of `p`: `Pᵀ A P`.
    pub fn transform(&self, p: &IntMatrix) -> Result<IntMatrix> {
        if p.nrows() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: p.nrows() });
        }
        intmat::checked_mul(&intmat::checked_mul(&p.transpose(), &self.gram)?, p)
    }

    pub fn symmetrized(&self) -> IntMatrix {
        &self.gram + self.gram.transpose()
    }

    pub fn to_file(&self) -> LatticeFile {
        LatticeFile { basis: self.labels.clone(), gram: self.gram_rows() }
    }

    pub fn from_file(file: &LatticeFile) -> Result<Self> {
        let n = file.gram.len();
        if let Some(row) = file.gram.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        Self::new(intmat::from_rows(&file.gram), file.basis.clone())
    }
}

/// On-disk form: `{"basis": [...], "gram": [[...], ...]}`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub basis: Vec<String>,
    pub gram: Vec<Vec<i64>>,
}

impl Serialize for EulerLattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

impl<'de> Deserialize<'de> for EulerLattice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = LatticeFile::deserialize(d)?;
        EulerLattice::from_file(&file).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aug2() -> EulerLattice {
        EulerLattice::from_rows(&[vec![1, -1, 1], vec![0, -1, 1], vec![0, -1, 0]]).unwrap()
    }

    #[test]
    fn pairing_reads_rows_as_first_argument() {
        let l = aug2();
        assert_eq!(l.pair(&l.basis_class(1), &l.basis_class(2)).unwrap(), 1);
        assert_eq!(l.pair(&l.basis_class(2), &l.basis_class(1)).unwrap(), -1);
        assert_eq!(l.pair(&KClass::zero(3), &KClass::new(vec![4, 5, 6])).unwrap(), 0);
    }

    #[test]
    fn pairing_rejects_wrong_length() {
        let l = aug2();
        assert_eq!(
            l.pair(&KClass::new(vec![1, 0]), &l.basis_class(0)),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn mutation_kills_pairing() {
        let l = aug2();
        let e = l.basis_class(0);
        let v = KClass::new(vec![2, 3, -1]);
        let r = l.mutate(&e, &v, Side::Right).unwrap();
        assert_eq!(l.pair(&r, &e).unwrap(), 0);
        let lft = l.mutate(&e, &v, Side::Left).unwrap();
        assert_eq!(l.pair(&e, &lft).unwrap(), 0);
        assert!(l.mutate(&e, &e, Side::Right).unwrap().is_zero());
        assert_eq!(
            l.mutate(&l.basis_class(1), &v, Side::Left),
            Err(Error::NotExceptional { chi: -1 })
        );
    }

    #[test]
    fn predicates() {
        let l = aug2();
        let p = l.class_predicates(&l.basis_class(0)).unwrap();
        assert!(p.numerically_exceptional && !p.numerically_2spherical);
        assert_eq!(l.class_predicates(&KClass::zero(3)).unwrap().chi_self, 0);
    }

    #[test]
    fn json_round_trip() {
        let l = aug2();
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"basis":["b1","b2","b3"],"gram":[[1,-1,1],[0,-1,1],[0,-1,0]]}"#);
        let back: EulerLattice = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
        assert!(serde_json::from_str::<EulerLattice>(r#"{"basis":["a"],"gram":[[1,2]]}"#).is_err());
    }
}
