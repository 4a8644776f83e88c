//! Sparse (Canny–Emiris) and dense (Macaulay) resultants, and dense discriminants.

pub mod ce;
pub mod discriminant;
pub mod macaulay;
pub mod sparse;

pub use ce::{CeContext, ResultantMatrix, RowLabel};
pub use discriminant::{discriminant_dense, jacobian_resultant, rho};
pub use macaulay::{
    degrees_of, homogenize, leading_form_resultant, macaulay_pencil, macaulay_pencil_forms, macaulay_resultant,
    macaulay_resultant_forms,
};
pub use sparse::{
    ce_resultant, directional_derivative, facet_resultant, reduce, resultant_pencil, sparse_resultant, PencilResult,
    ReducedFamily, Reduction, ResultantProblem,
};
