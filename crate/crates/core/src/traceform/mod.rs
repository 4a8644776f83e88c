//! Traces of multiplication maps from Chow forms and resultants, denominators and residues.

pub mod chowform;
pub mod dense;
pub mod denominators;
pub mod sparse;

use num_bigint::BigInt;

use crate::poly::Rational;

pub use chowform::{chowform_from_roots, monomials_up_to, trace_from_chowform, ChowForm};
pub use dense::{dense_residue, euler_jacobi_check, EulerJacobiReport, ResidueCheck};
pub use denominators::{
    compare_denominators, residue_denominator_cds, residue_denominator_ours, DenominatorComparison, FacetDenominator,
    ResidueDenominator,
};
pub use sparse::{denominator_factorization, trace_sparse, DenominatorFactorization, FactorTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TraceMethod {
    ChowForm,
    SparseResultant,
    DenseResultant,
    Oracle,
}

impl TraceMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            TraceMethod::ChowForm => "chowform",
            TraceMethod::SparseResultant => "sparse-resultant",
            TraceMethod::DenseResultant => "dense-resultant",
            TraceMethod::Oracle => "oracle",
        }
    }
}

/// Lattice data behind the sparse trace formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeData {
    pub e: BigInt,
    pub d: BigInt,
    /// `[Z^k : L(A_0, .., A_k)]`.
    pub index: BigInt,
    pub mixed_volume: BigInt,
    pub essential: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceResult {
    pub value: Rational,
    pub numerator: Rational,
    pub denominator: Rational,
    pub method: TraceMethod,
    pub lattice: Option<LatticeData>,
    pub matrix_size: Option<usize>,
}
