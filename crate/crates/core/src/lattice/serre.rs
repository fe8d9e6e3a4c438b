use serde::{Deserialize, Serialize};

use super::{EulerLattice, KClass};
use crate::error::{Error, Result};
use crate::intmat::{self, IntMatrix};
use crate::poly::{self, Poly};

/// The numerical Serre operator `S = A⁻¹Aᵀ`, characterized by
/// `χ(x, y) = χ(y, Sx)` on column coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerreAnalysis {
    pub serre_matrix: Vec<Vec<i64>>,
    pub char_poly: Poly,
    /// Cyclotomic factors `(n, multiplicity)` when the char poly splits into them.
    pub cyclotomic_factors: Option<Vec<(u64, u32)>>,
    pub quasiunipotent: bool,
    pub unipotent: bool,
}

impl SerreAnalysis {
    pub fn matrix(&self) -> IntMatrix {
        intmat::from_rows(&self.serre_matrix)
    }
}

impl EulerLattice {
    pub fn serre_matrix(&self) -> Result<IntMatrix> {
        if !self.is_unimodular() {
            return Err(Error::NonUnimodular { det: self.det().to_string() });
        }
        let inv = intmat::inverse_unimodular(self.gram())?;
        intmat::checked_mul(&inv, &self.gram().transpose())
    }

    pub fn serre_analysis(&self) -> Result<SerreAnalysis> {
        let s = self.serre_matrix()?;
        debug_assert_eq!(self.transform(&s)?, *self.gram());
        let char_poly = intmat::char_poly(&s)?;
        let cyclotomic_factors = poly::cyclotomic_factorization(&char_poly);
        let unipotent = char_poly == Poly::linear(1).pow(self.rank() as u32);
        Ok(SerreAnalysis {
            serre_matrix: intmat::to_rows(&s),
            char_poly,
            quasiunipotent: cyclotomic_factors.is_some(),
            cyclotomic_factors,
            unipotent,
        })
    }

    fn apply(m: &IntMatrix, v: &KClass) -> Result<KClass> {
        let col = IntMatrix::from_column_slice(v.len(), 1, v.coords());
        let out = intmat::checked_mul(m, &col)?;
        Ok(KClass::new(out.iter().copied().collect()))
    }

    pub fn serre_apply(&self, v: &KClass) -> Result<KClass> {
        self.check(v)?;
        Self::apply(&self.serre_matrix()?, v)
    }

    /// `S⁻¹ = A⁻ᵀ A`
    pub fn serre_inverse_apply(&self, v: &KClass) -> Result<KClass> {
        self.check(v)?;
        let inv_t = intmat::inverse_unimodular(&self.gram().transpose())?;
        Self::apply(&intmat::checked_mul(&inv_t, self.gram())?, v)
    }
}
