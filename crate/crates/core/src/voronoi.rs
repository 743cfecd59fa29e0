//! Voronoi-relevant vectors and the Voronoi cell of a lattice.
//!
//! Relevant vectors come from the coset characterization: a nonzero class of
//! `L / 2L` contributes a facet iff its shortest members are a single `±r`
//! pair. Classes whose minimum is shared by several pairs contribute only
//! lower-dimensional faces and are dropped.

use crate::error::{LatticeError, Result};
use crate::lattice::{Basis, CartPoint, FracPoint, LatticeVector};
use crate::linalg::{self, Vector, ZERO};
use crate::reduction::{for_each_coeff, reduce, ReducedBasis};
use crate::tol::{TOL_GEOM, TOL_TIE};

/// Coset search radius in reduced coordinates.
const COSET_RADIUS: i64 = 2;

#[derive(Debug, Clone)]
pub struct RelevantVector {
    /// Coefficients in the input basis, canonical sign.
    pub coeffs: LatticeVector,
    /// The same vector in reduced-basis coefficients.
    pub reduced_coeffs: LatticeVector,
    pub cart: CartPoint,
}

/// One representative per `±r` pair of Voronoi-relevant vectors.
#[derive(Debug, Clone)]
pub struct RelevantVectorSet {
    reduced: ReducedBasis,
    vectors: Vec<RelevantVector>,
}

impl RelevantVectorSet {
    pub fn reduced(&self) -> &ReducedBasis {
        &self.reduced
    }

    pub fn vectors(&self) -> &[RelevantVector] {
        &self.vectors
    }

    /// Number of `±` pairs.
    pub fn pairs(&self) -> usize {
        self.vectors.len()
    }

    /// Number of relevant vectors counting both signs.
    pub fn count(&self) -> usize {
        2 * self.vectors.len()
    }
}

pub fn relevant_vectors(b: &Basis) -> Result<RelevantVectorSet> {
    let reduced = reduce(b)?;
    Ok(relevant_from_reduced(reduced))
}

pub(crate) fn relevant_from_reduced(reduced: ReducedBasis) -> RelevantVectorSet {
    let rb = reduced.basis();
    let n = rb.dim();
    let u = *reduced.transform();
    let span = [COSET_RADIUS; 3];
    let mut vectors = Vec::new();
    for class in 1u32..(1 << n) {
        let c: [i64; 3] = std::array::from_fn(|i| ((class >> i) & 1) as i64);
        let mut members: Vec<(f64, [i64; 3])> = Vec::new();
        for_each_coeff(n, &span, |z| {
            let k = [2 * z[0] + c[0], 2 * z[1] + c[1], if n == 3 { 2 * z[2] + c[2] } else { 0 }];
            members.push((linalg::norm2(&linalg::mul_int_vec(rb.raw_cols(), &k)), k));
        });
        members.sort_by(|a, b| a.0.total_cmp(&b.0));
        let min = members[0].0;
        let tied = members.iter().take_while(|m| m.0 - min <= TOL_TIE * min).count();
        // the minimum always comes as a ±r pair
        if tied != 2 {
            continue;
        }
        let red = LatticeVector::from_raw(n, members[0].1);
        let input = LatticeVector::from_raw(n, u.apply(red.raw()));
        let (input, red) = if input.canonical() == input { (input, red) } else { (input.neg(), red.neg()) };
        let cart = CartPoint::from_raw(n, linalg::mul_int_vec(rb.raw_cols(), red.raw()));
        vectors.push(RelevantVector { coeffs: input, reduced_coeffs: red, cart });
    }
    vectors.sort_by(|a, b| a.cart.norm().total_cmp(&b.cart.norm()).then_with(|| a.coeffs.cmp(&b.coeffs)));
    RelevantVectorSet { reduced, vectors }
}

/// `{x : normal · x <= offset}` with `offset = |r|^2 / 2`.
#[derive(Debug, Clone)]
pub struct Halfspace {
    pub normal: CartPoint,
    pub offset: f64,
    /// Lattice vector `r` in input-basis coefficients (sign as used here).
    pub coeffs: LatticeVector,
}

/// Origin-centred Voronoi cell.
#[derive(Debug, Clone)]
pub struct VoronoiCell {
    dim: usize,
    halfspaces: Vec<Halfspace>,
    vertices: Vec<CartPoint>,
    volume: f64,
    tol: f64,
}

impl VoronoiCell {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn vertices(&self) -> &[CartPoint] {
        &self.vertices
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// Absolute geometric tolerance used for feasibility and deduplication.
    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// Indices of the vertices lying on facet `f`.
    pub fn facet_vertices(&self, f: usize) -> Vec<usize> {
        let h = &self.halfspaces[f];
        let tol = self.tol * h.normal.norm();
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| (linalg::dot(h.normal.raw(), v.raw()) - h.offset).abs() <= tol)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn contains(&self, x: &CartPoint) -> bool {
        self.halfspaces.iter().all(|h| linalg::dot(h.normal.raw(), x.raw()) <= h.offset + self.tol * h.normal.norm())
    }
}

pub fn voronoi_cell(b: &Basis) -> Result<VoronoiCell> {
    let rel = relevant_vectors(b)?;
    cell_from_relevant(&rel)
}

pub(crate) fn cell_from_relevant(rel: &RelevantVectorSet) -> Result<VoronoiCell> {
    let n = rel.reduced().basis().dim();
    let mut halfspaces = Vec::with_capacity(rel.count());
    for r in rel.vectors() {
        let off = linalg::norm2(r.cart.raw()) / 2.0;
        halfspaces.push(Halfspace { normal: r.cart, offset: off, coeffs: r.coeffs });
        let neg = CartPoint::from_raw(n, linalg::scale(r.cart.raw(), -1.0));
        halfspaces.push(Halfspace { normal: neg, offset: off, coeffs: r.coeffs.neg() });
    }
    // every relevant vector is at most twice the longest reduced vector, and
    // V's diameter is bounded by the longest relevant vector
    let diameter = rel.vectors().iter().map(|r| r.cart.norm()).fold(0.0, f64::max);
    let tol = TOL_GEOM * diameter;

    let m = halfspaces.len();
    let mut vertices: Vec<Vector> = Vec::new();
    let mut consider = |idx: &[usize]| {
        let rows: Vec<Vector> = idx.iter().map(|&i| *halfspaces[i].normal.raw()).collect();
        let rhs: Vec<f64> = idx.iter().map(|&i| halfspaces[i].offset).collect();
        let Some(x) = linalg::solve_rows(&rows, &rhs, n, 1e-9) else {
            return;
        };
        let feasible = halfspaces.iter().all(|h| linalg::dot(h.normal.raw(), &x) <= h.offset + tol * h.normal.norm());
        if feasible && !vertices.iter().any(|v| linalg::norm(&linalg::sub(v, &x)) <= tol) {
            vertices.push(x);
        }
    };
    for i in 0..m {
        for j in i + 1..m {
            if n == 2 {
                consider(&[i, j]);
            } else {
                for k in j + 1..m {
                    consider(&[i, j, k]);
                }
            }
        }
    }
    if vertices.len() < n + 1 {
        return Err(LatticeError::DegenerateCell { vertices: vertices.len() });
    }
    vertices.sort_by(|a, b| {
        a.iter().zip(b.iter()).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    let vertices: Vec<CartPoint> = vertices.into_iter().map(|v| CartPoint::from_raw(n, v)).collect();

    let mut cell = VoronoiCell { dim: n, halfspaces, vertices, volume: 0.0, tol };
    cell.volume = pyramid_volume(&cell);
    Ok(cell)
}

/// Sum over facets of the cone from the origin: `area · (|r|/2) / n`.
fn pyramid_volume(cell: &VoronoiCell) -> f64 {
    let n = cell.dim;
    let mut total = 0.0;
    for (f, h) in cell.halfspaces.iter().enumerate() {
        let idx = cell.facet_vertices(f);
        let height = h.offset / h.normal.norm();
        let pts: Vec<Vector> = idx.iter().map(|&i| *cell.vertices[i].raw()).collect();
        let measure = if n == 2 {
            match pts.len() {
                2 => linalg::norm(&linalg::sub(&pts[0], &pts[1])),
                _ => 0.0,
            }
        } else {
            polygon_area(&pts, h.normal.raw())
        };
        total += measure * height / n as f64;
    }
    total
}

/// Area of a planar convex polygon given unordered vertices and its normal.
fn polygon_area(pts: &[Vector], normal: &Vector) -> f64 {
    if pts.len() < 3 {
        return 0.0;
    }
    let centroid = linalg::scale(&pts.iter().fold(ZERO, |a, p| linalg::add(&a, p)), 1.0 / pts.len() as f64);
    let nhat = linalg::scale(normal, 1.0 / linalg::norm(normal));
    let e1 = linalg::sub(&pts[0], &centroid);
    let e1 = linalg::scale(&e1, 1.0 / linalg::norm(&e1));
    let e2 = linalg::cross(&nhat, &e1);
    let mut ordered: Vec<(f64, Vector)> = pts
        .iter()
        .map(|p| {
            let d = linalg::sub(p, &centroid);
            (linalg::dot(&d, &e2).atan2(linalg::dot(&d, &e1)), *p)
        })
        .collect();
    ordered.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut area = 0.0;
    for i in 0..ordered.len() {
        let a = linalg::sub(&ordered[i].1, &centroid);
        let b = linalg::sub(&ordered[(i + 1) % ordered.len()].1, &centroid);
        area += linalg::dot(&linalg::cross(&a, &b), &nhat);
    }
    area.abs() / 2.0
}

/// Half-extent of `v` along each fractional axis of `frame`:
/// `h_i = max_x |(frame^-1 x)_i|` over the vertices of `v`.
pub fn frac_extents(v: &VoronoiCell, frame: &Basis) -> Result<Vec<f64>> {
    if frame.dim() != v.dim {
        return Err(LatticeError::DimensionMismatch { expected: v.dim, got: frame.dim() });
    }
    let mut h = vec![0.0f64; v.dim];
    for x in &v.vertices {
        let f: FracPoint = frame.cart_to_frac(x);
        for (hi, fi) in h.iter_mut().zip(f.coords()) {
            *hi = hi.max(fi.abs());
        }
    }
    Ok(h)
}
