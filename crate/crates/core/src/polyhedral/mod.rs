//! Exact lattices, cones, Hilbert bases, monoid membership and polytopes.

pub mod cone;
pub mod hilbert;
pub mod lattice;
pub mod membership;
pub mod polytope;

pub use cone::{cone_facets, dual_cone, RationalCone};
pub use lattice::{lattice_span, primitive_vector, Lattice};
pub use hilbert::{hilbert_basis, hilbert_basis_with_lineality, HilbertBasis};
pub use membership::{monoid_membership, Membership, MonoidOracle};
pub use polytope::{polytope_from_halfspaces, HalfSpace, Polytope};
