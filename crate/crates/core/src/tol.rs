//! Numerical tolerances shared by the geometry kernels.
//!
//! All of them are relative; absolute thresholds are derived from the scale
//! of the data they are applied to.

/// `|det| > TOL_SINGULAR * prod |v_i|` for a basis to be accepted.
pub const TOL_SINGULAR: f64 = 1e-10;
/// Generic relative tolerance for round trips and integrality checks.
pub const TOL_NUM: f64 = 1e-9;
/// Two coset members closer than this (relative, squared norms) are tied.
pub const TOL_TIE: f64 = 1e-9;
/// Feasibility and deduplication tolerance for Voronoi vertices, relative to
/// the cell diameter.
pub const TOL_GEOM: f64 = 1e-8;
/// Half-extents within this distance of an integer snap down before the
/// ceiling is taken.
pub const TOL_SNAP: f64 = 1e-9;
/// Inner products with `|cos| < TOL_ORTHO` count as exactly orthogonal.
pub const TOL_ORTHO: f64 = 1e-9;
/// Upper bound on superbase reduction steps.
pub const MAX_SELLING_STEPS: usize = 1000;
