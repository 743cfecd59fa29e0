//! Exact minimum-image distances for arbitrarily skewed periodic cells in
//! two and three dimensions.
//!
//! The library reduces a lattice basis, builds the Voronoi cell from its
//! relevant vectors, sizes the block of cell copies that covers
//! `D = P ⊕ V` for any parallelepiped cell `P`, and enumerates the cells for
//! which the `3^n` block is enough. Brute-force references live in
//! [`oracle`].

pub mod cells;
pub mod copies;
pub mod distance;
pub mod error;
pub mod input;
pub mod lattice;
mod linalg;
pub mod oracle;
pub mod reduction;
pub mod tol;
pub mod voronoi;

pub use cells::{canonical_key, check_cell, enumerate_ps, CanonicalKey, CellBasisCandidate, CellReport};
pub use copies::{
    copy_counts, domain_extents, domain_outline_2d, is_3n_sufficient, primitive_coefficients, CopyCounts,
};
pub use distance::{
    min_image_distance, neighbors_within, pairwise_distances, DistanceResult, MinImage, Neighbor, PeriodicPointSet,
};
pub use error::{LatticeError, Result};
pub use lattice::{
    cart_to_frac, cell_params_to_basis, cell_params_to_basis_2d, frac_to_cart, validate_basis, Basis, CartPoint,
    FracPoint, GramMatrix, LatticeVector,
};
pub use linalg::IntMatrix;
pub use reduction::{is_reduced, reduce, ReducedBasis};
pub use voronoi::{
    frac_extents, relevant_vectors, voronoi_cell, Halfspace, RelevantVector, RelevantVectorSet, VoronoiCell,
};
