//! Minimum-image distances on the torus `R^n / L`.
//!
//! Points are re-expressed in the reduced basis, their difference is folded
//! into `[-1/2, 1/2]^n`, and the closest image is searched in the block of
//! reduced cells that covers `D` (the `3^n` block in all but rare 3D
//! lattices; the block is sized from the reduced cell's own copy counts so the
//! result stays exact either way). Witness images are reported in the
//! caller's basis; distances are evaluated in the reduced frame, where
//! no cancellation occurs.

use crate::copies::copy_counts_with;
use crate::error::{LatticeError, Result};
use crate::lattice::{Basis, FracPoint, LatticeVector};
use crate::linalg::{self, IntMatrix, Vector, ZERO};
use crate::reduction::{for_each_coeff, ReducedBasis};
use crate::voronoi::{cell_from_relevant, relevant_vectors};

/// Relative slack on squared norms for treating two images as tied.
const TIE: f64 = 2e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceResult {
    pub distance: f64,
    /// Translate `t` (caller basis) minimizing `|B (p2 + t - p1)|`.
    pub image: LatticeVector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Neighbor {
    pub i: usize,
    pub j: usize,
    pub image: LatticeVector,
    pub distance: f64,
}

/// Precomputed minimum-image search for one lattice.
#[derive(Debug, Clone)]
pub struct MinImage {
    basis: Basis,
    reduced: ReducedBasis,
    u_inv: IntMatrix,
    layers: Vec<u32>,
    offsets: Vec<[i64; 3]>,
    voronoi_diameter: f64,
}

impl MinImage {
    pub fn new(b: &Basis) -> Result<MinImage> {
        let rel = relevant_vectors(b)?;
        let v = cell_from_relevant(&rel)?;
        let reduced = rel.reduced().clone();
        let layers = copy_counts_with(reduced.basis(), &v)?.layers;
        let n = b.dim();
        let mut bound = [0i64; 3];
        for (bd, &m) in bound.iter_mut().zip(&layers) {
            *bd = m as i64;
        }
        let mut offsets = Vec::new();
        for_each_coeff(n, &bound, |t| offsets.push(*t));
        let voronoi_diameter = 2.0 * v.vertices().iter().map(|x| x.norm()).fold(0.0, f64::max);
        Ok(MinImage {
            basis: b.clone(),
            u_inv: reduced.inverse_transform(),
            reduced,
            layers,
            offsets,
            voronoi_diameter,
        })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn reduced(&self) -> &ReducedBasis {
        &self.reduced
    }

    /// Layers searched along each reduced axis (1 for the `3^n` block).
    pub fn layers(&self) -> &[u32] {
        &self.layers
    }

    fn check(&self, p: &FracPoint) -> Result<()> {
        if p.dim() != self.basis.dim() {
            return Err(LatticeError::DimensionMismatch { expected: self.basis.dim(), got: p.dim() });
        }
        Ok(())
    }

    /// Split `p2 - p1` into reduced coordinates `shift + d`, `d` in `[-1/2, 1/2]^n`.
    fn fold(&self, p1: &FracPoint, p2: &FracPoint) -> ([i64; 3], Vector) {
        let delta = linalg::sub(p2.raw(), p1.raw());
        let dr = self.u_inv.apply_f64(&delta);
        let mut shift = [0i64; 3];
        let mut d = ZERO;
        for i in 0..self.basis.dim() {
            let s = dr[i].round();
            shift[i] = s as i64;
            d[i] = dr[i] - s;
        }
        (shift, d)
    }

    /// Reduced translate `t - shift` mapped to the caller's basis.
    fn caller_image(&self, t: &[i64; 3], shift: &[i64; 3]) -> [i64; 3] {
        let tr = [t[0] - shift[0], t[1] - shift[1], t[2] - shift[2]];
        self.reduced.transform().apply(&tr)
    }

    pub fn distance(&self, p1: &FracPoint, p2: &FracPoint) -> Result<DistanceResult> {
        self.check(p1)?;
        self.check(p2)?;
        let n = self.basis.dim();
        let (shift, d) = self.fold(p1, p2);
        let rcols = self.reduced.basis().raw_cols();
        let norms: Vec<f64> = self
            .offsets
            .iter()
            .map(|t| {
                let x = [d[0] + t[0] as f64, d[1] + t[1] as f64, d[2] + t[2] as f64];
                linalg::norm2(&linalg::mul_vec(rcols, &x))
            })
            .collect();
        let min = norms.iter().cloned().fold(f64::INFINITY, f64::min);
        let (image, n2) = self
            .offsets
            .iter()
            .zip(&norms)
            .filter(|(_, &n2)| n2 - min <= TIE * min)
            .map(|(t, &n2)| (self.caller_image(t, &shift), n2))
            .min_by(|a, b| a.0[..n].cmp(&b.0[..n]))
            .expect("block is never empty");
        Ok(DistanceResult { distance: n2.sqrt(), image: LatticeVector::from_raw(n, image) })
    }

    /// All images of `p2` within `cutoff` of `p1`, excluding the zero
    /// translate when `exclude_zero` is set.
    fn images_within(
        &self,
        p1: &FracPoint,
        p2: &FracPoint,
        cutoff: f64,
        exclude_zero: bool,
    ) -> Vec<(LatticeVector, f64)> {
        let n = self.basis.dim();
        let (shift, d) = self.fold(p1, p2);
        let rb = self.reduced.basis();
        let mut bound = [0i64; 3];
        for (k, bd) in bound.iter_mut().enumerate().take(n) {
            *bd = ((cutoff + self.voronoi_diameter) / rb.slab_width(k)).ceil() as i64;
        }
        let limit2 = (cutoff * (1.0 + 1e-12)).powi(2);
        let mut out = Vec::new();
        for_each_coeff(n, &bound, |t| {
            let x = [d[0] + t[0] as f64, d[1] + t[1] as f64, d[2] + t[2] as f64];
            let n2 = linalg::norm2(&linalg::mul_vec(rb.raw_cols(), &x));
            if n2 > limit2 {
                return;
            }
            let image = self.caller_image(t, &shift);
            if !(exclude_zero && image == [0, 0, 0]) {
                out.push((LatticeVector::from_raw(n, image), n2.sqrt()));
            }
        });
        out
    }
}

pub fn min_image_distance(b: &Basis, p1: &FracPoint, p2: &FracPoint) -> Result<DistanceResult> {
    MinImage::new(b)?.distance(p1, p2)
}

/// Points of the quotient, stored wrapped into `[0, 1)^n`.
#[derive(Debug, Clone)]
pub struct PeriodicPointSet {
    basis: Basis,
    points: Vec<FracPoint>,
    labels: Option<Vec<String>>,
}

impl PeriodicPointSet {
    pub fn new(basis: Basis, points: Vec<FracPoint>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.dim() != basis.dim()) {
            return Err(LatticeError::DimensionMismatch { expected: basis.dim(), got: p.dim() });
        }
        let points = points.iter().map(FracPoint::wrapped).collect();
        Ok(Self { basis, points, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.points.len() {
            return Err(LatticeError::InvalidArgument(format!(
                "{} labels for {} points",
                labels.len(),
                self.points.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn points(&self) -> &[FracPoint] {
        &self.points
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Symmetric matrix of minimum-image distances with zero diagonal.
pub fn pairwise_distances(ps: &PeriodicPointSet) -> Result<Vec<Vec<f64>>> {
    let engine = MinImage::new(ps.basis())?;
    let n = ps.len();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = engine.distance(&ps.points[i], &ps.points[j])?.distance;
            m[i][j] = d;
            m[j][i] = d;
        }
    }
    Ok(m)
}

/// Every pair `i <= j` and lattice image within `cutoff`, sorted by
/// `(i, j, image)`. Self pairs exclude the zero image.
pub fn neighbors_within(ps: &PeriodicPointSet, cutoff: f64) -> Result<Vec<Neighbor>> {
    if !(cutoff > 0.0 && cutoff.is_finite()) {
        return Err(LatticeError::InvalidArgument(format!("cutoff must be positive, got {cutoff}")));
    }
    let engine = MinImage::new(ps.basis())?;
    let mut out = Vec::new();
    for i in 0..ps.len() {
        for j in i..ps.len() {
            for (image, distance) in engine.images_within(&ps.points[i], &ps.points[j], cutoff, i == j) {
                out.push(Neighbor { i, j, image, distance });
            }
        }
    }
    out.sort_by(|a, b| (a.i, a.j, a.image).cmp(&(b.i, b.j, b.image)));
    Ok(out)
}
