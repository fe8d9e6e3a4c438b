//! Ext tables of augmentations `(V, F, V → H⁰(F))` read off from the long exact
//! sequence of the gluing, given the ranks of the maps in it.

use serde::{Deserialize, Serialize};

use crate::curve::CurveClass;
use crate::error::{Error, Result};
use crate::graded::GradedDims;

/// A line bundle `L` of degree `degree` on a curve of genus `g` with
/// `h⁰(L) = h0`, `h¹(L) = h1`, and `petri_rank` the rank of
/// `H⁰(L) ⊗ H⁰(ω⊗L⁻¹) → H⁰(ω)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentationData {
    pub g: u64,
    pub h0: u64,
    pub h1: u64,
    pub petri_rank: u64,
    pub degree: i64,
}

impl AugmentationData {
    pub fn validate(&self) -> Result<()> {
        if self.h0 as i64 - self.h1 as i64 != self.degree + 1 - self.g as i64 {
            return Err(Error::Usage(format!(
                "h0 - h1 = {} but degree + 1 - g = {}",
                self.h0 as i64 - self.h1 as i64,
                self.degree + 1 - self.g as i64
            )));
        }
        if self.petri_rank > self.g.min(self.h0 * self.h1) {
            return Err(Error::Usage(format!("petri rank {} exceeds min(g, h0*h1)", self.petri_rank)));
        }
        Ok(())
    }
}

/// `Ext(fa(L), fa(L))` for `fa(L) = (H⁰(L), L, ev)`: `{0: 1, 1: g − p, 2: h0·h1 − p}`.
pub fn bn_ext_table(a: &AugmentationData) -> Result<GradedDims> {
    a.validate()?;
    if a.h0 == 0 {
        return Err(Error::Usage("the line bundle needs a section".into()));
    }
    bn_cross_ext_table(&CrossExtData {
        hom: 1,
        ext1: a.g,
        h0_first: a.h0,
        h1_second: a.h1,
        mixed_rank: a.petri_rank,
    })
}

/// Inputs for `Ext(fa(L1), fa(L2))`: `Hom(L1, L2)`, `Ext¹(L1, L2)`, `h⁰(L1)`,
/// `h¹(L2)` and the rank of `Ext¹(L1, L2) → H⁰(L1)^∨ ⊗ H¹(L2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossExtData {
    pub hom: u64,
    pub ext1: u64,
    pub h0_first: u64,
    pub h1_second: u64,
    pub mixed_rank: u64,
}

/// The degree-0 part of the sequence is an isomorphism onto `Hom(H⁰(L1), H⁰(L2))`,
/// so only the degree-1 map contributes.
pub fn bn_cross_ext_table(d: &CrossExtData) -> Result<GradedDims> {
    let target = d.h0_first * d.h1_second;
    if d.mixed_rank > d.ext1.min(target) {
        return Err(Error::Usage(format!(
            "mixed rank {} exceeds min(ext1 = {}, h0*h1 = {target})",
            d.mixed_rank, d.ext1
        )));
    }
    Ok(GradedDims::from([(0, d.hom), (1, d.ext1 - d.mixed_rank), (2, target - d.mixed_rank)]))
}

/// An augmentation `(V, F, φ)` on a curve of genus `g`, with the cohomology
/// of `F ⊗ ω` and the rank `mult_rank` of `V ⊗ H⁰(ω) → H⁰(F ⊗ ω)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerreInput {
    pub g: u64,
    pub v: u64,
    pub class: CurveClass,
    pub h0_twist: u64,
    pub h1_twist: u64,
    pub mult_rank: u64,
    pub globally_generated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerreImage {
    pub v_bar: GradedDims,
    pub f_bar: CurveClass,
    /// The image is again an augmentation of a sheaf, shifted by `[2]`.
    pub shifted_augmentation: bool,
}

fn twist_euler(g: u64, class: CurveClass) -> i64 {
    let twisted = class * CurveClass::canonical(g);
    twisted.d + twisted.r * (1 - g as i64)
}

/// Serre functor on an augmentation: `V̄ = Cone(V ⊗ H⁰(ω) → H•(F ⊗ ω))[1]`
/// and `F̄ = dim V · [ω] − [F ⊗ ω]`.
pub fn serre_on_augmentation(input: &SerreInput) -> Result<SerreImage> {
    let chi = input.h0_twist as i64 - input.h1_twist as i64;
    if chi != twist_euler(input.g, input.class) {
        return Err(Error::Usage(format!(
            "h0 - h1 of F(K) is {chi}, Riemann-Roch gives {}",
            twist_euler(input.g, input.class)
        )));
    }
    let source = input.v * input.g;
    if input.mult_rank > source.min(input.h0_twist) {
        return Err(Error::Usage(format!(
            "multiplication rank {} exceeds min(dim V * g = {source}, h0(F(K)) = {})",
            input.mult_rank, input.h0_twist
        )));
    }
    let omega = CurveClass::canonical(input.g);
    let twisted = input.class * omega;
    Ok(SerreImage {
        v_bar: GradedDims::from([
            (-2, source - input.mult_rank),
            (-1, input.h0_twist - input.mult_rank),
            (0, input.h1_twist),
        ]),
        f_bar: CurveClass::new(input.v as i64 * omega.r - twisted.r, input.v as i64 * omega.d - twisted.d),
        shifted_augmentation: input.globally_generated && input.mult_rank == input.h0_twist && input.h1_twist == 0,
    })
}

/// A sheaf `F` with `h⁰(F) = h0`, `h¹(F) = h1`, the same data for `F ⊗ ω`, and
/// the rank of `H⁰(F) ⊗ H⁰(ω) → H⁰(F ⊗ ω)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentedSheafData {
    pub g: u64,
    pub class: CurveClass,
    pub h0: u64,
    pub h1: u64,
    pub h0_twist: u64,
    pub h1_twist: u64,
    pub mult_rank: u64,
    pub globally_generated: bool,
}

impl AugmentedSheafData {
    fn serre_input(&self) -> Result<SerreInput> {
        if self.h0 as i64 - self.h1 as i64 != self.class.d + self.class.r * (1 - self.g as i64) {
            return Err(Error::Usage("h0 - h1 contradicts Riemann-Roch".into()));
        }
        Ok(SerreInput {
            g: self.g,
            v: self.h0,
            class: self.class,
            h0_twist: self.h0_twist,
            h1_twist: self.h1_twist,
            mult_rank: self.mult_rank,
            globally_generated: self.globally_generated,
        })
    }

    fn check_hypotheses(&self) -> Result<()> {
        if !self.globally_generated {
            return Err(Error::HypothesisNotMet("global_generation".into()));
        }
        if self.h1_twist != 0 {
            return Err(Error::HypothesisNotMet("h1_twist_vanishes".into()));
        }
        if self.mult_rank != self.h0_twist {
            return Err(Error::HypothesisNotMet("multiplication_surjective".into()));
        }
        Ok(())
    }
}

/// Whether the Serre functor sends `fa(F1)` to `fa(F2)[2]` and `fa(F2)` to
/// `fa(F1)[2]`, compared on dimensions and classes.
pub fn serre_pair_check(first: &AugmentedSheafData, second: &AugmentedSheafData) -> Result<bool> {
    first.check_hypotheses()?;
    second.check_hypotheses()?;
    if first.g != second.g {
        return Err(Error::Usage("both sheaves must live on the same curve".into()));
    }
    let sends = |a: &AugmentedSheafData, b: &AugmentedSheafData| -> Result<bool> {
        let image = serre_on_augmentation(&a.serre_input()?)?;
        Ok(image.shifted_augmentation && image.v_bar == GradedDims::from([(-2, b.h0)]) && image.f_bar == b.class)
    };
    Ok(sends(first, second)? && sends(second, first)?)
}
