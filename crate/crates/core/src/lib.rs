//! Exact integer invariants of Euler-form lattices of glued triangulated
//! categories: Gram matrices, Serre operators, mutations and complements,
//! formal Hom computations, Hochschild tables and binary quadratic forms.

pub mod bnclassify;
pub mod curve;
pub mod error;
pub mod families;
pub mod graded;
pub mod hochschild;
pub mod homcalc;
pub mod intmat;
pub mod lattice;
pub mod poly;

pub use error::{Error, Result};
pub use lattice::{EulerLattice, KClass, Side};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    struct Readme;
    #[doc = include_str!("../../../book/src/overview.md")]
    struct Overview;
    #[doc = include_str!("../../../book/src/lattices.md")]
    struct Lattices;
    #[doc = include_str!("../../../book/src/families.md")]
    struct Families;
    #[doc = include_str!("../../../book/src/homcalc.md")]
    struct Homcalc;
    #[doc = include_str!("../../../book/src/hochschild.md")]
    struct Hochschild;
    #[doc = include_str!("../../../book/src/forms.md")]
    struct Forms;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
