//! Finite formal models of glued categories and the rank chases on them.
//!
//! All categories here are formal: Hom spaces are graded vector spaces with
//! zero differential and composition is strictly associative. Only the gluing
//! bimodule carries a differential.

mod bimodule;
mod category;
mod gluing;
mod les;

pub use bimodule::{ActionEntry, Bimodule, BimoduleFile, DiffEntry, ValueEntry};
pub use category::{CategoryFile, CompositionEntry, FiniteGradedCategory, Generator, HomEntry, IDENTITY};
pub use gluing::{
    cone_bimodule, curve_category, exotic_ext_table, exotic_triple, gluing_hom, ipg_local_model, GlueTriple,
    GluingModel, GluingModelFile, MuLambda,
};
pub use les::{
    bn_cross_ext_table, bn_ext_table, serre_on_augmentation, serre_pair_check, AugmentationData, AugmentedSheafData,
    CrossExtData, SerreImage, SerreInput,
};
