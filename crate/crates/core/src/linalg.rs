//! Fixed-capacity dense helpers for dimensions 2 and 3.
//!
//! Every vector and matrix is stored with capacity 3; entries beyond the
//! active dimension are kept at zero so that 2D values can flow through the
//! 3D formulas unchanged.

pub(crate) type Vector = [f64; 3];
/// Column-major: `m[j]` is column `j`.
pub(crate) type Matrix = [[f64; 3]; 3];

pub(crate) const ZERO: Vector = [0.0; 3];

#[inline]
pub(crate) fn dot(a: &Vector, b: &Vector) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub(crate) fn norm2(a: &Vector) -> f64 {
    dot(a, a)
}

#[inline]
pub(crate) fn norm(a: &Vector) -> f64 {
    norm2(a).sqrt()
}

#[inline]
pub(crate) fn add(a: &Vector, b: &Vector) -> Vector {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub(crate) fn sub(a: &Vector, b: &Vector) -> Vector {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub(crate) fn scale(a: &Vector, s: f64) -> Vector {
    [a[0] * s, a[1] * s, a[2] * s]
}

#[inline]
pub(crate) fn cross(a: &Vector, b: &Vector) -> Vector {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// `m · x` for a column-major matrix.
#[inline]
pub(crate) fn mul_vec(m: &Matrix, x: &Vector) -> Vector {
    let mut out = ZERO;
    for (col, &xj) in m.iter().zip(x.iter()) {
        for i in 0..3 {
            out[i] += col[i] * xj;
        }
    }
    out
}

/// `m · c` for an integer coefficient vector.
#[inline]
pub(crate) fn mul_int_vec(m: &Matrix, c: &[i64; 3]) -> Vector {
    mul_vec(m, &[c[0] as f64, c[1] as f64, c[2] as f64])
}

pub(crate) fn det(m: &Matrix, dim: usize) -> f64 {
    match dim {
        2 => m[0][0] * m[1][1] - m[1][0] * m[0][1],
        _ => dot(&m[0], &cross(&m[1], &m[2])),
    }
}

/// Inverse as a list of rows: `frac_i = rows[i] · x` solves `m · frac = x`.
///
/// The caller guarantees `m` is non-singular.
pub(crate) fn inverse_rows(m: &Matrix, dim: usize) -> Matrix {
    let d = det(m, dim);
    match dim {
        2 => [[m[1][1] / d, -m[1][0] / d, 0.0], [-m[0][1] / d, m[0][0] / d, 0.0], [0.0; 3]],
        _ => {
            // rows of the inverse are the dual vectors a_j x a_k / det
            let r0 = scale(&cross(&m[1], &m[2]), 1.0 / d);
            let r1 = scale(&cross(&m[2], &m[0]), 1.0 / d);
            let r2 = scale(&cross(&m[0], &m[1]), 1.0 / d);
            [r0, r1, r2]
        }
    }
}

/// Solve `rows[i] · x = rhs[i]` for `i < dim`; `None` when the system is
/// (numerically) singular relative to `tol`.
pub(crate) fn solve_rows(rows: &[Vector], rhs: &[f64], dim: usize, tol: f64) -> Option<Vector> {
    // The rows of the system matrix are the columns of its transpose, which
    // has the same determinant.
    let mut t: Matrix = [ZERO; 3];
    for (i, row) in rows.iter().take(dim).enumerate() {
        t[i] = *row;
    }
    let d = det(&t, dim);
    let scale_ref: f64 = rows.iter().take(dim).map(norm).product();
    if d.abs() <= tol * scale_ref {
        return None;
    }
    // t holds the system rows as "columns", so x = (t^T)^{-1} rhs; the
    // inverse rows of t^T are the columns of t^{-1}.
    let inv = inverse_rows(&t, dim);
    let mut x = ZERO;
    for j in 0..dim {
        for i in 0..dim {
            // (t^T)^{-1} = (t^{-1})^T, entry (j, i) = t^{-1}(i, j)
            x[j] += inv[i][j] * rhs[i];
        }
    }
    Some(x)
}

/// Integer matrix with column-major storage, used for unimodular changes of
/// basis and cell coefficient matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    cols: [[i64; 3]; 3],
}

impl IntMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut cols = [[0; 3]; 3];
        for (j, col) in cols.iter_mut().enumerate().take(dim) {
            col[j] = 1;
        }
        Self { dim, cols }
    }

    /// Build from columns; each column must have `dim` entries.
    pub fn from_columns(columns: &[Vec<i64>]) -> Self {
        let dim = columns.len();
        let mut cols = [[0; 3]; 3];
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), dim, "column {j} has wrong length");
            cols[j][..dim].copy_from_slice(c);
        }
        Self { dim, cols }
    }

    pub(crate) fn from_raw(dim: usize, cols: [[i64; 3]; 3]) -> Self {
        Self { dim, cols }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, j: usize) -> &[i64] {
        &self.cols[j][..self.dim]
    }

    pub(crate) fn raw_column(&self, j: usize) -> &[i64; 3] {
        &self.cols[j]
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.dim).map(|j| self.column(j).to_vec()).collect()
    }

    pub fn det(&self) -> i64 {
        let c = &self.cols;
        match self.dim {
            2 => c[0][0] * c[1][1] - c[1][0] * c[0][1],
            _ => {
                c[0][0] * (c[1][1] * c[2][2] - c[1][2] * c[2][1]) - c[1][0] * (c[0][1] * c[2][2] - c[0][2] * c[2][1])
                    + c[2][0] * (c[0][1] * c[1][2] - c[0][2] * c[1][1])
            }
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    /// `self · v`.
    pub fn apply(&self, v: &[i64; 3]) -> [i64; 3] {
        let mut out = [0; 3];
        for j in 0..self.dim {
            for (i, o) in out.iter_mut().enumerate().take(self.dim) {
                *o += self.cols[j][i] * v[j];
            }
        }
        out
    }

    /// `self · v` for a real vector.
    pub(crate) fn apply_f64(&self, v: &Vector) -> Vector {
        let mut out = ZERO;
        for j in 0..self.dim {
            for (i, o) in out.iter_mut().enumerate().take(self.dim) {
                *o += self.cols[j][i] as f64 * v[j];
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let mut cols = [[0; 3]; 3];
        for (j, col) in cols.iter_mut().enumerate().take(self.dim) {
            *col = self.apply(&other.cols[j]);
        }
        IntMatrix { dim: self.dim, cols }
    }

    /// Exact inverse of a unimodular matrix (adjugate times ±1).
    ///
    /// Returns `None` if the matrix is not unimodular.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        let d = self.det();
        if d.abs() != 1 {
            return None;
        }
        let c = &self.cols;
        // entry (i, j) of M is c[j][i]
        let m = |i: usize, j: usize| c[j][i];
        let mut inv = [[0i64; 3]; 3];
        match self.dim {
            2 => {
                inv[0][0] = m(1, 1) * d;
                inv[1][1] = m(0, 0) * d;
                inv[1][0] = -m(0, 1) * d;
                inv[0][1] = -m(1, 0) * d;
            }
            _ => {
                for i in 0..3 {
                    for j in 0..3 {
                        // inverse entry (i, j) = cofactor(j, i) / det
                        let (r0, r1) = others(j);
                        let (c0, c1) = others(i);
                        let minor = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
                        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                        inv[j][i] = sign * minor * d;
                    }
                }
            }
        }
        Some(IntMatrix { dim: self.dim, cols: inv })
    }
}

fn others(k: usize) -> (usize, usize) {
    match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}
