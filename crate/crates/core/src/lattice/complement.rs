use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{EulerLattice, KClass, Side};
use crate::error::{Error, Result};
use crate::intmat::{self, IntMatrix};

/// An orthogonal complement together with its embedding: the columns of
/// `embedding` are the sub-basis in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complement {
    pub lattice: EulerLattice,
    pub embedding: IntMatrix,
}

impl EulerLattice {
    /// Left: `{v : χ(v,e) = 0}`. Right: `{v : χ(e,v) = 0}`. The basis is the
    /// Hermite normal form of the integer kernel.
    pub fn orthogonal_complement(&self, e: &KClass, side: Side) -> Result<Complement> {
        self.check(e)?;
        if e.is_zero() {
            return Err(Error::Usage("cannot take the complement of the zero class".into()));
        }
        let col = IntMatrix::from_column_slice(e.len(), 1, e.coords());
        let functional = match side {
            Side::Left => intmat::checked_mul(self.gram(), &col)?,
            Side::Right => intmat::checked_mul(&self.gram().transpose(), &col)?,
        };
        let kernel = intmat::kernel_basis(&functional.transpose());
        let n = self.rank();
        let k = kernel.len();
        let embedding = IntMatrix::from_fn(n, k, |i, j| kernel[j][i]);
        let gram = self.transform(&embedding)?;
        let labels = (1..=k).map(|i| format!("c{i}")).collect();
        Ok(Complement { lattice: EulerLattice::new(gram, labels)?, embedding })
    }
}

impl Complement {
    pub fn basis(&self) -> Vec<KClass> {
        (0..self.embedding.ncols())
            .map(|j| KClass::new(self.embedding.column(j).iter().copied().collect()))
            .collect()
    }

    /// The ambient quotient by the sublattice is torsion-free.
    pub fn is_saturated(&self) -> bool {
        let inv = intmat::smith_invariants(&self.embedding);
        inv.len() == self.embedding.ncols() && inv.iter().all(|&d| d == 1)
    }

    /// Re-expresses the complement in another basis given in ambient
    /// coordinates. Fails unless the vectors form a basis of the complement.
    pub fn rebase(&self, vectors: &[KClass], labels: Vec<String>) -> Result<EulerLattice> {
        let n = self.embedding.nrows();
        let k = self.embedding.ncols();
        if vectors.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: vectors.len() });
        }
        for v in vectors {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        let b = IntMatrix::from_fn(n, k, |i, j| vectors[j].coords()[i]);
        let x = intmat::solve_integer(&self.embedding, &b)?
            .ok_or_else(|| Error::Usage("vectors do not lie in the complement".into()))?;
        if intmat::determinant(&x).abs() != BigInt::one() {
            return Err(Error::Usage("vectors do not span the complement".into()));
        }
        EulerLattice::new(self.lattice.transform(&x)?, labels)
    }
}
