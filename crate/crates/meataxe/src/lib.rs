//! A small MeatAxe: permutation and tensor modules, Norton-certified
//! composition series, isomorphism of irreducibles and invariant forms.

pub mod form;
pub mod module;
pub mod poly;
pub mod split;

pub use form::{invariant_bilinear_form, invariant_forms, FormSpace};
pub use module::{permutation_module, symmetric_group_generators, tensor_module, GModule};
pub use split::{
    composition_factors, composition_series, composition_series_with, is_irreducible, isomorphic, AlgebraElement,
    Certificate, CompositionFactor, CompositionSeries, Section, SeriesStep, DEFAULT_SEED, DEFAULT_TRIES, MAX_DIM,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeatAxeError {
    #[error("generator counts differ: {left} vs {right}")]
    GeneratorCount { left: usize, right: usize },
    #[error("modules are over different fields")]
    FieldMismatch,
    #[error("generator {index} is not a {dim}×{dim} matrix")]
    Dimension { index: usize, dim: usize },
    #[error("generator {0} is singular")]
    Singular(usize),
    #[error("generator {index} is not a permutation of 0..{degree}")]
    BadPermutation { index: usize, degree: usize },
    #[error("module of dimension {dim} undecided after {tries} random elements")]
    Undecided { dim: usize, tries: usize },
    #[error("dimension {dim} exceeds the limit {limit}")]
    TooLarge { dim: usize, limit: usize },
    #[error("the subspace is not invariant under generator {0}")]
    NotInvariant(usize),
    #[error("module is not irreducible")]
    Reducible,
    #[error("no non-zero invariant bilinear form")]
    NotSelfDual,
    #[error("the only invariant forms are alternating")]
    AlternatingOnly,
}
