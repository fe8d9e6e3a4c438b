//! Numerical K-theory of a smooth projective curve and of a product of two
//! curves, and the gluing pairings derived from a class on the product.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize, Serializer};

use crate::intmat::IntMatrix;
use crate::lattice::EulerLattice;

/// `r·[O_C] + d·[O_x]`: rank and degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveClass {
    pub r: i64,
    pub d: i64,
}

impl CurveClass {
    pub const STRUCTURE: CurveClass = CurveClass { r: 1, d: 0 };
    pub const POINT: CurveClass = CurveClass { r: 0, d: 1 };

    pub fn new(r: i64, d: i64) -> Self {
        CurveClass { r, d }
    }

    pub fn line_bundle(degree: i64) -> Self {
        CurveClass { r: 1, d: degree }
    }

    pub fn canonical(g: u64) -> Self {
        Self::line_bundle(2 * g as i64 - 2)
    }

    /// Tensor with a line bundle of the given degree.
    pub fn twist(self, degree: i64) -> CurveClass {
        self * Self::line_bundle(degree)
    }

    pub fn coords(self) -> [i64; 2] {
        [self.r, self.d]
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[O_C] + {}[O_x]", self.r, self.d)
    }
}

/// Product in the K-ring, where `[O_x]² = 0`.
impl Mul for CurveClass {
    type Output = CurveClass;

    fn mul(self, o: CurveClass) -> CurveClass {
        CurveClass { r: self.r * o.r, d: self.r * o.d + self.d * o.r }
    }
}

/// Riemann–Roch: `χ(v, w) = r r' (1−g) + (r d' − r' d)`.
pub fn curve_chi(g: u64, v: CurveClass, w: CurveClass) -> i64 {
    v.r * w.r * (1 - g as i64) + (v.r * w.d - w.r * v.d)
}

/// The curve lattice in the basis `[O_C], [O_x]`.
pub fn curve_lattice(g: u64) -> EulerLattice {
    let basis = [CurveClass::STRUCTURE, CurveClass::POINT];
    let gram = IntMatrix::from_fn(2, 2, |i, j| curve_chi(g, basis[i], basis[j]));
    EulerLattice::new(gram, vec!["[O_C]".into(), "[O_x]".into()]).expect("square")
}

/// The single point: one exceptional object.
pub fn point_lattice() -> EulerLattice {
    EulerLattice::new(IntMatrix::from_element(1, 1, 1), vec!["[E]".into()]).expect("square")
}

/// A class `c00 + c10·a + c01·b + c11·ab` in the rank-4 part of the K-ring of
/// `C1 × C2`, where `a = [O_{x1} ⊠ O]`, `b = [O ⊠ O_{x2}]` and `a² = b² = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductClass {
    pub c00: i64,
    pub c10: i64,
    pub c01: i64,
    pub c11: i64,
}

impl ProductClass {
    pub const ONE: ProductClass = ProductClass { c00: 1, c10: 0, c01: 0, c11: 0 };
    pub const A: ProductClass = ProductClass { c00: 0, c10: 1, c01: 0, c11: 0 };
    pub const B: ProductClass = ProductClass { c00: 0, c10: 0, c01: 1, c11: 0 };
    pub const AB: ProductClass = ProductClass { c00: 0, c10: 0, c01: 0, c11: 1 };

    pub fn new(c00: i64, c10: i64, c01: i64, c11: i64) -> Self {
        ProductClass { c00, c10, c01, c11 }
    }

    /// Ideal sheaf of a point: `[O⊠O] − [O_{x1}⊠O_{x2}]`.
    pub fn ideal_point() -> Self {
        ProductClass::new(1, 0, 0, -1)
    }

    /// Exterior product `v1 ⊠ v2`.
    pub fn boxed(v1: CurveClass, v2: CurveClass) -> Self {
        ProductClass::new(v1.r * v2.r, v1.d * v2.r, v1.r * v2.d, v1.d * v2.d)
    }

    /// Derived dual; point classes dualize with a sign.
    pub fn dual(self) -> Self {
        ProductClass::new(self.c00, -self.c10, -self.c01, self.c11)
    }

    /// Euler characteristic on `C1 × C2`.
    pub fn euler(self, g1: u64, g2: u64) -> i64 {
        let (e1, e2) = (1 - g1 as i64, 1 - g2 as i64);
        self.c00 * e1 * e2 + self.c10 * e2 + self.c01 * e1 + self.c11
    }
}

impl Mul for ProductClass {
    type Output = ProductClass;

    fn mul(self, o: ProductClass) -> ProductClass {
        ProductClass {
            c00: self.c00 * o.c00,
            c10: self.c00 * o.c10 + self.c10 * o.c00,
            c01: self.c00 * o.c01 + self.c01 * o.c00,
            c11: self.c00 * o.c11 + self.c11 * o.c00 + self.c10 * o.c01 + self.c01 * o.c10,
        }
    }
}

impl Add for ProductClass {
    type Output = ProductClass;

    fn add(self, o: ProductClass) -> ProductClass {
        ProductClass::new(self.c00 + o.c00, self.c10 + o.c10, self.c01 + o.c01, self.c11 + o.c11)
    }
}

pub fn product_chi(g1: u64, g2: u64, u: ProductClass, v: ProductClass) -> i64 {
    (u.dual() * v).euler(g1, g2)
}

/// `[G](v1, v2) = χ(v1 ⊠ O, (O ⊠ v2)·urG)` on chosen bases of the two curve
/// lattices. Rows index `basis1`, columns `basis2`.
pub fn gluing_pairing(
    g1: u64,
    g2: u64,
    ur_g: ProductClass,
    basis1: &[CurveClass],
    basis2: &[CurveClass],
) -> IntMatrix {
    IntMatrix::from_fn(basis1.len(), basis2.len(), |i, j| {
        let left = ProductClass::boxed(basis1[i], CurveClass::STRUCTURE);
        let right = ProductClass::boxed(CurveClass::STRUCTURE, basis2[j]) * ur_g;
        product_chi(g1, g2, left, right)
    })
}

/// Gluing of a point to a curve along a class `u` on the curve:
/// `[G](n, w) = n·χ(O_C, w·u)`. A single row.
pub fn point_gluing_pairing(g: u64, u: CurveClass, basis: &[CurveClass]) -> IntMatrix {
    IntMatrix::from_fn(1, basis.len(), |_, j| curve_chi(g, CurveClass::STRUCTURE, basis[j] * u))
}

/// A family of line bundles with `h⁰ = r`, `h¹ = s`, `rs = g`, counted by the
/// degree of the Grassmannian `Gr(r, r+s)`. The count is the one for a general
/// curve over an algebraically closed field of characteristic zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BnpEntry {
    pub r: u64,
    pub s: u64,
    pub degree: i64,
    #[serde(serialize_with = "as_decimal")]
    pub count: BigUint,
}

fn as_decimal<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `deg Gr(r, r+s) = (rs)! · ∏_{i<r} i!/(s+i)!`
pub fn grassmannian_degree(r: u64, s: u64) -> BigUint {
    let mut num = factorial(r * s);
    let mut den = BigUint::one();
    for i in 0..r {
        num *= factorial(i);
        den *= factorial(s + i);
    }
    num / den
}

pub fn bnp_enumerate(g: u64) -> Vec<BnpEntry> {
    (1..=g)
        .filter(|r| g % r == 0)
        .map(|r| {
            let s = g / r;
            BnpEntry { r, s, degree: r as i64 - s as i64 + g as i64 - 1, count: grassmannian_degree(r, s) }
        })
        .collect()
}
