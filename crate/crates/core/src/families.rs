//! Named glued lattices: the augmented curve, the ideal point gluing of two
//! curves, its reduced version, and the complements of BN-exceptional classes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::curve::{self, CurveClass, ProductClass};
use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::lattice::{EulerLattice, KClass, Side};

/// Largest genus accepted when parsing a family from text.
pub const MAX_GENUS: u64 = 10_000;

const CURVE_BASIS: [CurveClass; 2] = [CurveClass::STRUCTURE, CurveClass::POINT];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    Augmented { g: u64 },
    Ipg { g1: u64, g2: u64 },
    Rpg { g1: u64, g2: u64 },
    BnComplement { g: u64, h0: u64, h1: u64 },
}

impl FamilySpec {
    pub fn lattice(&self) -> Result<EulerLattice> {
        match *self {
            FamilySpec::Augmented { g } => Ok(augmented_lattice(g)),
            FamilySpec::Ipg { g1, g2 } => Ok(ipg_lattice(g1, g2)),
            FamilySpec::Rpg { g1, g2 } => rpg_lattice(g1, g2),
            FamilySpec::BnComplement { g, h0, h1 } => bn_complement_lattice(g, h0, h1),
        }
    }

    /// Total genus, i.e. the number of `H¹(O)` dimensions carried by the family.
    pub fn genus_sum(&self) -> u64 {
        match *self {
            FamilySpec::Augmented { g } | FamilySpec::BnComplement { g, .. } => g,
            FamilySpec::Ipg { g1, g2 } | FamilySpec::Rpg { g1, g2 } => g1 + g2,
        }
    }

    /// The two factors and the gluing pairing, for families that are glued
    /// directly (not obtained as complements).
    pub fn gluing_data(&self) -> Option<(EulerLattice, EulerLattice, IntMatrix)> {
        match *self {
            FamilySpec::Augmented { g } => Some((
                curve::point_lattice(),
                curve::curve_lattice(g),
                curve::point_gluing_pairing(g, CurveClass::STRUCTURE, &CURVE_BASIS),
            )),
            FamilySpec::Ipg { g1, g2 } => Some((
                curve::curve_lattice(g1),
                curve::curve_lattice(g2),
                curve::gluing_pairing(g1, g2, ProductClass::ideal_point(), &CURVE_BASIS, &CURVE_BASIS),
            )),
            _ => None,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Augmented { g } => write!(f, "augmented:{g}"),
            FamilySpec::Ipg { g1, g2 } => write!(f, "ipg:{g1},{g2}"),
            FamilySpec::Rpg { g1, g2 } => write!(f, "rpg:{g1},{g2}"),
            FamilySpec::BnComplement { g, h0, h1 } => write!(f, "bncomp:{g},{h0},{h1}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// `augmented:G | ipg:G1,G2 | rpg:G1,G2 | bncomp:G,H0,H1`
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Usage(format!("bad family '{s}'; expected augmented:G, ipg:G1,G2, rpg:G1,G2 or bncomp:G,H0,H1"));
        let (kind, params) = s.split_once(':').ok_or_else(bad)?;
        let nums = params
            .split(',')
            .map(|p| p.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        if let Some(&g) = nums.iter().find(|&&g| g > MAX_GENUS) {
            return Err(Error::Usage(format!("parameter {g} exceeds the cap {MAX_GENUS}")));
        }
        let spec = match (kind.trim(), nums.as_slice()) {
            ("augmented", &[g]) => FamilySpec::Augmented { g },
            ("ipg", &[g1, g2]) => FamilySpec::Ipg { g1, g2 },
            ("rpg", &[g1, g2]) => FamilySpec::Rpg { g1, g2 },
            ("bncomp", &[g, h0, h1]) => {
                check_bnp(g, h0, h1)?;
                FamilySpec::BnComplement { g, h0, h1 }
            }
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

/// Block Gram `[[A1, G], [0, A2]]`: nothing maps from the second factor to the
/// first, and `G` records the Euler pairing from the first factor to the second.
pub fn glue_lattices(l1: &EulerLattice, l2: &EulerLattice, g: &IntMatrix) -> Result<EulerLattice> {
    let (n1, n2) = (l1.rank(), l2.rank());
    if g.nrows() != n1 {
        return Err(Error::DimensionMismatch { expected: n1, found: g.nrows() });
    }
    if g.ncols() != n2 {
        return Err(Error::DimensionMismatch { expected: n2, found: g.ncols() });
    }
    let n = n1 + n2;
    let gram = IntMatrix::from_fn(n, n, |i, j| match (i < n1, j < n1) {
        (true, true) => l1.gram()[(i, j)],
        (true, false) => g[(i, j - n1)],
        (false, true) => 0,
        (false, false) => l2.gram()[(i - n1, j - n1)],
    });
    let labels = l1.labels().iter().chain(l2.labels()).cloned().collect();
    EulerLattice::new(gram, labels)
}

/// Point glued to a curve of genus `g` along the structure sheaf; basis
/// `[E], [O_C], [O_x]`.
pub fn augmented_lattice(g: u64) -> EulerLattice {
    let (point, c, pairing) = FamilySpec::Augmented { g }.gluing_data().expect("glued family");
    glue_lattices(&point, &c, &pairing).expect("shapes agree")
}

fn ipg_labels() -> Vec<String> {
    ["[O_C1]", "[O_x1]", "[O_C2]", "[O_x2]"].map(String::from).to_vec()
}

/// Two curves glued along the class `ur_g` on their product.
pub fn product_glued_lattice(g1: u64, g2: u64, ur_g: ProductClass) -> EulerLattice {
    let pairing = curve::gluing_pairing(g1, g2, ur_g, &CURVE_BASIS, &CURVE_BASIS);
    glue_lattices(&curve::curve_lattice(g1), &curve::curve_lattice(g2), &pairing)
        .and_then(|l| l.with_labels(ipg_labels()))
        .expect("shapes agree")
}

/// Ideal point gluing; basis `[O_C1], [O_x1], [O_C2], [O_x2]`.
pub fn ipg_lattice(g1: u64, g2: u64) -> EulerLattice {
    product_glued_lattice(g1, g2, ProductClass::ideal_point())
}

/// The gluing class twisted by `O ⊠ O(x2)`.
pub fn twisted_ideal_point() -> ProductClass {
    ProductClass::ideal_point() * ProductClass::boxed(CurveClass::STRUCTURE, CurveClass::line_bundle(1))
}

/// `(r, d) ↦ (r, d + r)` on the second curve factor of an ideal point gluing,
/// as a change-of-basis matrix `Q` with `Qᵀ A Q` the twisted Gram.
pub fn twist_transform() -> IntMatrix {
    let mut q = IntMatrix::identity(4, 4);
    q[(3, 2)] = 1;
    q
}

/// The class of the exotic exceptional object `Cone(O_{x1} → O_{x2})`.
pub fn exotic_class() -> KClass {
    KClass::new(vec![0, 1, 0, -1])
}

pub fn rpg_basis(g1: u64, g2: u64) -> [KClass; 3] {
    let (g1, g2) = (g1 as i64, g2 as i64);
    [
        KClass::new(vec![0, 1, 1, -1]),
        KClass::new(vec![1, -g1, 0, -g2]),
        KClass::new(vec![0, 1, 1, 0]),
    ]
}

/// Left complement of the exotic class in the ideal point gluing, expressed in
/// the basis of [`rpg_basis`].
pub fn rpg_lattice(g1: u64, g2: u64) -> Result<EulerLattice> {
    let ipg = ipg_lattice(g1, g2);
    let comp = ipg.orthogonal_complement(&exotic_class(), Side::Left)?;
    if comp.lattice.rank() != 3 {
        return Err(Error::Usage(format!("complement has rank {}, expected 3", comp.lattice.rank())));
    }
    let labels = vec![
        "[O_C2]+[O_x1]-[O_x2]".to_string(),
        format!("[O_C1]-{g1}[O_x1]-{g2}[O_x2]"),
        "[O_x1]+[O_C2]".to_string(),
    ];
    comp.rebase(&rpg_basis(g1, g2), labels)
}

fn check_bnp(g: u64, h0: u64, h1: u64) -> Result<()> {
    if h0 == 0 || h1 == 0 || h0 * h1 != g {
        return Err(Error::NotBnpExtremal { g, h0, h1 });
    }
    Ok(())
}

/// Degree of a line bundle with the given `h⁰`, `h¹` on a genus-`g` curve.
pub fn bnp_degree(g: u64, h0: u64, h1: u64) -> i64 {
    h0 as i64 - h1 as i64 + g as i64 - 1
}

/// `h⁰(L)[E] − [L]` in the augmented basis.
pub fn bn_class(g: u64, h0: u64, h1: u64) -> Result<KClass> {
    check_bnp(g, h0, h1)?;
    Ok(KClass::new(vec![h0 as i64, -1, -bnp_degree(g, h0, h1)]))
}

pub fn bn_complement_basis(h0: u64, h1: u64) -> [KClass; 2] {
    [KClass::new(vec![1, 0, -(h1 as i64)]), KClass::new(vec![1, -1, -(h0 as i64)])]
}

/// Left complement of [`bn_class`] in `augmented_lattice(g)`, in the basis
/// `[E] − h¹[O_x], [E] − [O_C] − h⁰[O_x]`.
pub fn bn_complement_lattice(g: u64, h0: u64, h1: u64) -> Result<EulerLattice> {
    let e = bn_class(g, h0, h1)?;
    let comp = augmented_lattice(g).orthogonal_complement(&e, Side::Left)?;
    let labels = vec![format!("[E]-{h1}[O_x]"), format!("[E]-[O_C]-{h0}[O_x]")];
    comp.rebase(&bn_complement_basis(h0, h1), labels)
}

/// Euler lattice of a linear quiver with the given arrow counts between
/// consecutive vertices, in the basis of indecomposable projectives ordered so
/// that `χ(P_i, P_j)` counts paths from `i` to `j`.
pub fn quiver_lattice(arrows: &[u64]) -> EulerLattice {
    let n = arrows.len() + 1;
    let gram = IntMatrix::from_fn(n, n, |i, j| {
        if i > j {
            0
        } else {
            arrows[i..j].iter().product::<u64>() as i64
        }
    });
    let labels = (1..=n).map(|i| format!("P{i}")).collect();
    EulerLattice::new(gram, labels).expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn augmented_small_genus() {
        assert_eq!(augmented_lattice(0).gram_rows(), vec![vec![1, 1, 1], vec![0, 1, 1], vec![0, -1, 0]]);
        assert_eq!(augmented_lattice(2).gram_rows(), vec![vec![1, -1, 1], vec![0, -1, 1], vec![0, -1, 0]]);
        assert_eq!(augmented_lattice(2).labels(), ["[E]", "[O_C]", "[O_x]"]);
    }

    #[test]
    fn zero_pairing_gives_direct_sum() {
        let a = curve::curve_lattice(2);
        let b = curve::point_lattice();
        let l = glue_lattices(&a, &b, &IntMatrix::zeros(2, 1)).unwrap();
        assert_eq!(l.gram_rows(), vec![vec![-1, 1, 0], vec![-1, 0, 0], vec![0, 0, 1]]);
        assert!(glue_lattices(&a, &b, &IntMatrix::zeros(1, 2)).is_err());
    }

    #[test]
    fn spec_round_trip() {
        for s in ["augmented:4", "ipg:2,3", "rpg:0,5", "bncomp:4,2,2"] {
            assert_eq!(s.parse::<FamilySpec>().unwrap().to_string(), s);
        }
        assert!("augmented:".parse::<FamilySpec>().is_err());
        assert!("ipg:1".parse::<FamilySpec>().is_err());
        assert!("bncomp:5,2,2".parse::<FamilySpec>().is_err());
        assert!("augmented:10001".parse::<FamilySpec>().is_err());
        assert!("torus:1".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn bn_complement_examples() {
        assert_eq!(bn_complement_lattice(4, 2, 2).unwrap().gram_rows(), vec![vec![-1, 0], vec![1, -1]]);
        assert_eq!(bn_complement_lattice(5, 1, 5).unwrap().gram_rows(), vec![vec![-4, -1], vec![1, 0]]);
        assert_eq!(bn_class(6, 4, 1), Err(Error::NotBnpExtremal { g: 6, h0: 4, h1: 1 }));
    }

    #[test]
    fn quiver_paths() {
        assert_eq!(quiver_lattice(&[1, 2]).gram_rows(), vec![vec![1, 1, 2], vec![0, 1, 2], vec![0, 0, 1]]);
    }
}
