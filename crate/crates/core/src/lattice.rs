//! Bases, lattice vectors and coordinate transforms.

use std::fmt;

use crate::error::{LatticeError, Result};
use crate::linalg::{self, IntMatrix, Matrix, Vector, ZERO};
use crate::tol::{TOL_NUM, TOL_SINGULAR};

fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 3 {
        Ok(())
    } else {
        Err(LatticeError::UnsupportedDimension(dim))
    }
}

/// A basis of `R^n` (n = 2 or 3) whose columns span the cell and generate the
/// lattice. The inverse and determinant are cached.
#[derive(Clone, PartialEq)]
pub struct Basis {
    dim: usize,
    cols: Matrix,
    inv_rows: Matrix,
    det: f64,
}

impl fmt::Debug for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Basis").field("columns", &self.columns()).field("det", &self.det).finish()
    }
}

/// Validate an `n x n` matrix given as a list of column vectors.
pub fn validate_basis<C: AsRef<[f64]>>(columns: &[C]) -> Result<Basis> {
    let dim = columns.len();
    check_dim(dim)?;
    let mut cols: Matrix = [ZERO; 3];
    for (j, c) in columns.iter().enumerate() {
        let c = c.as_ref();
        if c.len() != dim {
            return Err(LatticeError::DimensionMismatch { expected: dim, got: c.len() });
        }
        if c.iter().any(|x| !x.is_finite()) {
            return Err(LatticeError::InvalidArgument("non-finite basis entry".into()));
        }
        cols[j][..dim].copy_from_slice(c);
    }
    Basis::from_raw(dim, cols)
}

impl Basis {
    pub(crate) fn from_raw(dim: usize, cols: Matrix) -> Result<Basis> {
        check_dim(dim)?;
        let det = linalg::det(&cols, dim);
        let norms: f64 = cols.iter().take(dim).map(linalg::norm).product();
        if !(det.abs() > TOL_SINGULAR * norms) {
            return Err(LatticeError::SingularBasis { det });
        }
        let inv_rows = linalg::inverse_rows(&cols, dim);
        Ok(Basis { dim, cols, inv_rows, det })
    }

    pub fn identity(dim: usize) -> Result<Basis> {
        check_dim(dim)?;
        let mut cols = [ZERO; 3];
        for (j, c) in cols.iter_mut().enumerate().take(dim) {
            c[j] = 1.0;
        }
        Basis::from_raw(dim, cols)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    /// Volume (area in 2D) of the spanned cell.
    pub fn volume(&self) -> f64 {
        self.det.abs()
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.cols[j][..self.dim]
    }

    pub fn columns(&self) -> Vec<Vec<f64>> {
        (0..self.dim).map(|j| self.column(j).to_vec()).collect()
    }

    pub(crate) fn raw_cols(&self) -> &Matrix {
        &self.cols
    }

    pub(crate) fn raw_col(&self, j: usize) -> &Vector {
        &self.cols[j]
    }

    /// Rows of `B^{-1}`, i.e. the dual basis vectors.
    pub(crate) fn inv_rows(&self) -> &Matrix {
        &self.inv_rows
    }

    pub fn column_norm(&self, j: usize) -> f64 {
        linalg::norm(&self.cols[j])
    }

    /// Distance between the two cell faces not containing column `j`.
    pub fn slab_width(&self, j: usize) -> f64 {
        1.0 / linalg::norm(&self.inv_rows[j])
    }

    pub fn gram(&self) -> GramMatrix {
        let mut entries = vec![vec![0.0; self.dim]; self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                entries[i][j] = linalg::dot(&self.cols[i], &self.cols[j]);
            }
        }
        GramMatrix { entries }
    }

    pub fn scaled(&self, s: f64) -> Result<Basis> {
        let mut cols = self.cols;
        for c in cols.iter_mut() {
            *c = linalg::scale(c, s);
        }
        Basis::from_raw(self.dim, cols)
    }

    /// `B · U`: the basis whose columns are the integer combinations given by
    /// the columns of `u`.
    pub fn transformed(&self, u: &IntMatrix) -> Result<Basis> {
        if u.dim() != self.dim {
            return Err(LatticeError::DimensionMismatch { expected: self.dim, got: u.dim() });
        }
        let mut cols = [ZERO; 3];
        for (j, c) in cols.iter_mut().enumerate().take(self.dim) {
            *c = linalg::mul_int_vec(&self.cols, u.raw_column(j));
        }
        Basis::from_raw(self.dim, cols)
    }

    /// Apply an arbitrary linear map `x -> M x` (given by its columns) to every
    /// column, e.g. a rotation.
    pub fn mapped(&self, map_columns: &[Vec<f64>]) -> Result<Basis> {
        let m = validate_basis(map_columns)?;
        if m.dim != self.dim {
            return Err(LatticeError::DimensionMismatch { expected: self.dim, got: m.dim });
        }
        let mut cols = [ZERO; 3];
        for (j, c) in cols.iter_mut().enumerate().take(self.dim) {
            *c = linalg::mul_vec(&m.cols, &self.cols[j]);
        }
        Basis::from_raw(self.dim, cols)
    }

    /// Integer coordinates of `other`'s columns in this basis, if they are
    /// all integral within `TOL_NUM` (relative).
    pub fn integer_coordinates(&self, other: &Basis) -> Option<IntMatrix> {
        if other.dim != self.dim {
            return None;
        }
        let mut cols = [[0i64; 3]; 3];
        for (j, col) in cols.iter_mut().enumerate().take(self.dim) {
            let x = other.cols[j];
            for i in 0..self.dim {
                let c = linalg::dot(&self.inv_rows[i], &x);
                let r = c.round();
                // scale-aware: error grows with the size of the coefficient
                // and with how far the product B^{-1} x cancels
                let mag = linalg::norm(&self.inv_rows[i]) * linalg::norm(&x);
                if (c - r).abs() > TOL_NUM * mag.max(1.0) || r.abs() > i64::MAX as f64 / 4.0 {
                    return None;
                }
                col[i] = r as i64;
            }
        }
        Some(IntMatrix::from_raw(self.dim, cols))
    }

    pub fn frac_to_cart(&self, p: &FracPoint) -> CartPoint {
        debug_assert_eq!(p.dim, self.dim);
        CartPoint { dim: self.dim, c: linalg::mul_vec(&self.cols, &p.c) }
    }

    pub fn cart_to_frac(&self, p: &CartPoint) -> FracPoint {
        debug_assert_eq!(p.dim, self.dim);
        let mut c = ZERO;
        for (i, ci) in c.iter_mut().enumerate().take(self.dim) {
            *ci = linalg::dot(&self.inv_rows[i], &p.c);
        }
        FracPoint { dim: self.dim, c }
    }

    /// Cartesian position of the lattice point `B · v`.
    pub fn lattice_point(&self, v: &LatticeVector) -> CartPoint {
        CartPoint { dim: self.dim, c: linalg::mul_int_vec(&self.cols, &v.coeffs) }
    }

    /// The crystallographic parameters `(a, b, c, alpha, beta, gamma)` (3D)
    /// or `(a, b, gamma)` (2D), angles in degrees.
    pub fn cell_parameters(&self) -> Vec<f64> {
        let g = self.gram();
        let len = |i: usize| g.entries[i][i].sqrt();
        let angle = |i: usize, j: usize| (g.entries[i][j] / (len(i) * len(j))).clamp(-1.0, 1.0).acos().to_degrees();
        match self.dim {
            2 => vec![len(0), len(1), angle(0, 1)],
            _ => vec![len(0), len(1), len(2), angle(1, 2), angle(0, 2), angle(0, 1)],
        }
    }
}

/// Symmetric matrix of inner products `g_ij = v_i · v_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub entries: Vec<Vec<f64>>,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let scale = (self.entries[i][i] * self.entries[j][j]).sqrt();
                (self.entries[i][j] - self.entries[j][i]).abs() <= tol * scale
            })
        })
    }

    /// All leading principal minors are positive.
    pub fn is_positive_definite(&self) -> bool {
        let g = &self.entries;
        let m1 = g[0][0];
        let m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        if self.dim() == 2 {
            return m1 > 0.0 && m2 > 0.0;
        }
        let m3 = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
        m1 > 0.0 && m2 > 0.0 && m3 > 0.0
    }

    /// Cosine of the angle between basis vectors `i` and `j`.
    pub fn cosine(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j] / (self.entries[i][i] * self.entries[j][j]).sqrt()
    }
}

/// Lattice point `B · coeffs` with exact integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    dim: usize,
    coeffs: [i64; 3],
}

impl LatticeVector {
    pub fn new(coeffs: &[i64]) -> Result<Self> {
        check_dim(coeffs.len())?;
        let mut c = [0; 3];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(Self { dim: coeffs.len(), coeffs: c })
    }

    pub(crate) fn from_raw(dim: usize, coeffs: [i64; 3]) -> Self {
        Self { dim, coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, coeffs: [0; 3] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs[..self.dim]
    }

    pub(crate) fn raw(&self) -> &[i64; 3] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> Self {
        Self { dim: self.dim, coeffs: [-self.coeffs[0], -self.coeffs[1], -self.coeffs[2]] }
    }

    /// Sign-normalized representative: first nonzero coefficient positive.
    pub fn canonical(&self) -> Self {
        match self.coeffs().iter().find(|&&c| c != 0) {
            Some(&c) if c < 0 => self.neg(),
            _ => *self,
        }
    }
}

/// Coordinates with respect to a basis (dimensionless).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracPoint {
    dim: usize,
    c: Vector,
}

/// Cartesian coordinates (length units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartPoint {
    dim: usize,
    c: Vector,
}

macro_rules! point_common {
    ($t:ident) => {
        impl $t {
            pub fn new(coords: &[f64]) -> Result<Self> {
                check_dim(coords.len())?;
                let mut c = ZERO;
                c[..coords.len()].copy_from_slice(coords);
                Ok(Self { dim: coords.len(), c })
            }

            pub(crate) fn from_raw(dim: usize, c: Vector) -> Self {
                Self { dim, c }
            }

            pub fn dim(&self) -> usize {
                self.dim
            }

            pub fn coords(&self) -> &[f64] {
                &self.c[..self.dim]
            }

            pub(crate) fn raw(&self) -> &Vector {
                &self.c
            }
        }
    };
}

point_common!(FracPoint);
point_common!(CartPoint);

impl FracPoint {
    /// Representative in `[0, 1)^n` of the same point of the quotient.
    pub fn wrapped(&self) -> FracPoint {
        let mut c = self.c;
        for x in c.iter_mut().take(self.dim) {
            let mut w = *x - x.floor();
            // x slightly below an integer can round up to exactly 1.0
            if w >= 1.0 {
                w = 0.0;
            }
            *x = w;
        }
        FracPoint { dim: self.dim, c }
    }
}

impl CartPoint {
    pub fn norm(&self) -> f64 {
        linalg::norm(&self.c)
    }
}

pub fn frac_to_cart(b: &Basis, p: &FracPoint) -> CartPoint {
    b.frac_to_cart(p)
}

pub fn cart_to_frac(b: &Basis, p: &CartPoint) -> FracPoint {
    b.cart_to_frac(p)
}

fn cos_deg(angle: f64) -> f64 {
    // exact zeros for right angles so orthogonal cells come out exactly
    if angle == 90.0 {
        0.0
    } else {
        angle.to_radians().cos()
    }
}

fn sin_deg(angle: f64) -> f64 {
    if angle == 90.0 {
        1.0
    } else {
        angle.to_radians().sin()
    }
}

fn check_lengths_angles(lengths: &[f64], angles: &[f64]) -> Result<()> {
    if let Some(l) = lengths.iter().find(|&&l| !(l > 0.0 && l.is_finite())) {
        return Err(LatticeError::InvalidCellParameters(format!("length {l} must be positive")));
    }
    if let Some(a) = angles.iter().find(|&&a| !(a > 0.0 && a < 180.0)) {
        return Err(LatticeError::InvalidCellParameters(format!(
            "angle {a} must lie strictly between 0 and 180 degrees"
        )));
    }
    Ok(())
}

/// Standard crystallographic setting: `a` along x, `b` in the xy-plane,
/// `c` completing a right-handed cell. Angles in degrees.
pub fn cell_params_to_basis(a: f64, b: f64, c: f64, alpha: f64, beta: f64, gamma: f64) -> Result<Basis> {
    check_lengths_angles(&[a, b, c], &[alpha, beta, gamma])?;
    let (ca, cb, cg) = (cos_deg(alpha), cos_deg(beta), cos_deg(gamma));
    let sg = sin_deg(gamma);
    let vol2 = 1.0 - ca * ca - cb * cb - cg * cg + 2.0 * ca * cb * cg;
    if !(vol2 > 0.0) {
        return Err(LatticeError::InvalidCellParameters(format!(
            "angles ({alpha}, {beta}, {gamma}) do not define a positive volume"
        )));
    }
    let cx = c * cb;
    let cy = c * (ca - cb * cg) / sg;
    let cz = c * vol2.sqrt() / sg;
    validate_basis(&[[a, 0.0, 0.0], [b * cg, b * sg, 0.0], [cx, cy, cz]])
}

/// Two-dimensional analogue: `a` along x, angle `gamma` between the vectors.
pub fn cell_params_to_basis_2d(a: f64, b: f64, gamma: f64) -> Result<Basis> {
    check_lengths_angles(&[a, b], &[gamma])?;
    validate_basis(&[[a, 0.0], [b * cos_deg(gamma), b * sin_deg(gamma)]])
}
