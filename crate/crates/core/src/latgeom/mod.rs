//! Integer lattices and lattice polytopes.

pub mod family;
pub mod hull;
pub mod lattice;
pub mod mixed;
pub mod smith;
pub mod subdivision;

pub use family::{
    delta_exponents, essential_subfamily, essential_subsets, exponent_d, exponent_e, exponent_e_with,
    saturation_index,
    family_lattice, DeltaExponents, FacetExponent,
};
pub use hull::{convex_hull, face_data, lattice_points, minkowski_sum, minkowski_sum_all, normalized_volume, Facet, Polytope};
pub use lattice::{difference_lattice, lattice_index, saturate, IntegerLattice, LatticeIndex};
pub use mixed::{mixed_volume, mixed_volume_with, InclusionExclusion, MixedCells, MixedVolumeStrategy};
pub use smith::{hermite_basis, smith_normal_form, IntegerMatrix, SmithForm};
