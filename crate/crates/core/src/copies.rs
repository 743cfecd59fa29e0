//! Extents of the minimal domain `D = P ⊕ V` and the cell-copy block that
//! covers it.
//!
//! In the cell's fractional coordinates `D` spans `[-h_i, 1 + h_i]` along
//! axis `i`, where `h_i` is the half-extent of the Voronoi cell `V`. A block
//! with `m_i` extra layers on each side covers `D` iff `m_i >= h_i`.

use crate::error::{LatticeError, Result};
use crate::lattice::{Basis, CartPoint};
use crate::linalg::{self, IntMatrix};
use crate::tol::TOL_SNAP;
use crate::voronoi::{frac_extents, voronoi_cell, VoronoiCell};

#[derive(Debug, Clone, PartialEq)]
pub struct CopyCounts {
    /// Half-extents of `V` along the cell's fractional axes.
    pub h: Vec<f64>,
    /// Extra layers on each side, `m_i >= 1`.
    pub layers: Vec<u32>,
    /// `2 m_i + 1`.
    pub per_axis: Vec<u32>,
    pub total: u64,
}

impl CopyCounts {
    pub fn from_extents(h: Vec<f64>) -> CopyCounts {
        let layers: Vec<u32> = h.iter().map(|&x| ceil_snapped(x).max(1)).collect();
        let per_axis: Vec<u32> = layers.iter().map(|m| 2 * m + 1).collect();
        let total = per_axis.iter().map(|&p| p as u64).product();
        CopyCounts { h, layers, per_axis, total }
    }

    pub fn is_3n(&self) -> bool {
        self.layers.iter().all(|&m| m == 1)
    }
}

/// Smallest integer `m` with `m >= x - TOL_SNAP`.
pub fn ceil_snapped(x: f64) -> u32 {
    let m = (x - TOL_SNAP).ceil();
    if m <= 0.0 {
        0
    } else {
        m as u32
    }
}

/// Integer coefficients of `cell` in `lattice`, required to be unimodular.
pub fn primitive_coefficients(cell: &Basis, lattice: &Basis) -> Result<IntMatrix> {
    if cell.dim() != lattice.dim() {
        return Err(LatticeError::DimensionMismatch { expected: lattice.dim(), got: cell.dim() });
    }
    let u = lattice
        .integer_coordinates(cell)
        .ok_or_else(|| LatticeError::NotAPrimitiveCell("cell vectors are not lattice vectors".into()))?;
    if !u.is_unimodular() {
        return Err(LatticeError::NotAPrimitiveCell(format!("cell spans a sublattice of index {}", u.det().abs())));
    }
    Ok(u)
}

pub fn domain_extents(cell: &Basis, lattice: &Basis) -> Result<Vec<f64>> {
    primitive_coefficients(cell, lattice)?;
    frac_extents(&voronoi_cell(lattice)?, cell)
}

pub fn copy_counts(cell: &Basis, lattice: &Basis) -> Result<CopyCounts> {
    Ok(CopyCounts::from_extents(domain_extents(cell, lattice)?))
}

/// Copy counts when the Voronoi cell of the lattice is already known.
pub fn copy_counts_with(cell: &Basis, v: &VoronoiCell) -> Result<CopyCounts> {
    Ok(CopyCounts::from_extents(frac_extents(v, cell)?))
}

/// `V` fits inside the `2^n` cells around the origin, so the `3^n` block
/// suffices for every pair of points.
pub fn is_3n_sufficient(cell: &Basis, lattice: &Basis) -> Result<bool> {
    Ok(domain_extents(cell, lattice)?.iter().all(|&h| h <= 1.0 + TOL_SNAP))
}

/// Outline of `D = P ⊕ V` for a 2D cell, counter-clockwise, as the convex
/// hull of all sums of cell corners and Voronoi vertices.
pub fn domain_outline_2d(cell: &Basis, lattice: &Basis) -> Result<Vec<CartPoint>> {
    if cell.dim() != 2 {
        return Err(LatticeError::UnsupportedDimension(cell.dim()));
    }
    primitive_coefficients(cell, lattice)?;
    let v = voronoi_cell(lattice)?;
    let a = cell.raw_col(0);
    let b = cell.raw_col(1);
    let corners = [linalg::ZERO, *a, linalg::add(a, b), *b];
    let mut pts: Vec<[f64; 2]> = Vec::new();
    for c in &corners {
        for x in v.vertices() {
            let s = linalg::add(c, x.raw());
            pts.push([s[0], s[1]]);
        }
    }
    Ok(convex_hull(pts).into_iter().map(|p| CartPoint::new(&p).expect("2D point")).collect())
}

/// Andrew's monotone chain; drops collinear points.
pub(crate) fn convex_hull(mut pts: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross =
        |o: &[f64; 2], a: &[f64; 2], b: &[f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let scale = pts.iter().map(|p| p[0].abs().max(p[1].abs())).fold(0.0, f64::max);
    let eps = 1e-12 * scale * scale;
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for p in iter {
            while hull.len() >= start + 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= eps {
                hull.pop();
            }
            hull.push(*p);
        }
        hull.pop();
    }
    hull
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{cell_params_to_basis, validate_basis};

    fn skewed() -> Basis {
        validate_basis(&[[1.0, 0.0], [-5.0, 1.0]]).unwrap()
    }

    #[test]
    fn square_extents() {
        let id = Basis::identity(2).unwrap();
        assert_eq!(domain_extents(&id, &id).unwrap(), vec![0.5, 0.5]);
    }

    #[test]
    fn skewed_cell_needs_21_copies() {
        let z2 = Basis::identity(2).unwrap();
        let h = domain_extents(&skewed(), &z2).unwrap();
        assert!((h[0] - 3.0).abs() < 1e-12 && (h[1] - 0.5).abs() < 1e-12);
        let cc = copy_counts(&skewed(), &z2).unwrap();
        assert_eq!(cc.layers, vec![3, 1]);
        assert_eq!(cc.per_axis, vec![7, 3]);
        assert_eq!(cc.total, 21);
        assert!(!is_3n_sufficient(&skewed(), &z2).unwrap());
        let mild = validate_basis(&[[1.0, 0.0], [-1.0, 1.0]]).unwrap();
        assert!(is_3n_sufficient(&mild, &z2).unwrap());
    }

    #[test]
    fn orthogonal_cells() {
        let r = validate_basis(&[[2.0, 0.0], [0.0, 0.7]]).unwrap();
        assert_eq!(copy_counts(&r, &r).unwrap().total, 9);
        let o = cell_params_to_basis(1.0, 2.0, 3.0, 90.0, 90.0, 90.0).unwrap();
        let cc = copy_counts(&o, &o).unwrap();
        assert_eq!(cc.per_axis, vec![3, 3, 3]);
        assert_eq!(cc.total, 27);
    }

    #[test]
    fn snapping_keeps_integral_extents() {
        assert_eq!(ceil_snapped(1.0 + 1e-12), 1);
        assert_eq!(ceil_snapped(1.0 + 1e-6), 2);
        assert_eq!(ceil_snapped(3.0), 3);
        assert_eq!(ceil_snapped(0.4), 1);
    }

    #[test]
    fn rejects_non_primitive() {
        let z2 = Basis::identity(2).unwrap();
        let doubled = validate_basis(&[[2.0, 0.0], [0.0, 1.0]]).unwrap();
        assert!(matches!(copy_counts(&doubled, &z2), Err(LatticeError::NotAPrimitiveCell(_))));
        let off = validate_basis(&[[1.0, 0.0], [0.5, 1.0]]).unwrap();
        assert!(matches!(domain_extents(&off, &z2), Err(LatticeError::NotAPrimitiveCell(_))));
    }

    #[test]
    fn outline_of_square_domain() {
        let id = Basis::identity(2).unwrap();
        let d = domain_outline_2d(&id, &id).unwrap();
        assert_eq!(d.len(), 4);
        for p in &d {
            assert!(p.coords().iter().all(|c| (*c + 0.5).abs() < 1e-12 || (*c - 1.5).abs() < 1e-12));
        }
    }
}
