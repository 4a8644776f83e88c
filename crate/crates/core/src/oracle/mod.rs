//! Gröbner-basis ground truth for traces and residues.

pub mod algebra;
pub mod groebner;

pub use algebra::{
    affine_algebra, global_residue_oracle, shape_ideal, torus_algebra, torus_residue_oracle, trace_oracle, Embedding,
    QuotientAlgebra, RationalMatrix,
};
pub use groebner::groebner_basis;
