//! Basis reduction to the shortest generating vectors.
//!
//! Both dimensions go through the same final stage: an obtuse superbase
//! `b_0 + b_1 + ... + b_n = 0` with all `b_i · b_j <= 0` is built first, and
//! the reduced basis is then picked among the `2^n - 1` subset sums of that
//! superbase (which contain every Voronoi-relevant vector, hence the
//! successive minima). The chosen vectors are sign-normalized so that the
//! pairwise inner products are non-positive wherever a sign choice allows it.
//!
//! In 3D the shortest basis is not always pairwise obtuse: once `v1 · v2 <= 0`
//! and `v1 · v3 <= 0` are fixed, the sign of `v2 · v3` is determined, and it
//! can be positive. [`ReducedBasis::is_obtuse`] reports which case occurred.

use crate::error::{LatticeError, Result};
use crate::lattice::{Basis, LatticeVector};
use crate::linalg::{self, IntMatrix, Vector};
use crate::tol::{MAX_SELLING_STEPS, TOL_NUM, TOL_ORTHO, TOL_TIE};

/// Reduced basis together with the unimodular change of basis
/// `input · transform = reduced`.
#[derive(Debug, Clone)]
pub struct ReducedBasis {
    basis: Basis,
    transform: IntMatrix,
    superbase: Vec<LatticeVector>,
}

impl ReducedBasis {
    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn transform(&self) -> &IntMatrix {
        &self.transform
    }

    pub fn inverse_transform(&self) -> IntMatrix {
        self.transform.inverse_unimodular().expect("reduction transform is unimodular")
    }

    /// The obtuse superbase the basis was selected from, as coefficient
    /// vectors in the input basis (`n + 1` vectors summing to zero).
    pub fn superbase(&self) -> &[LatticeVector] {
        &self.superbase
    }

    /// All pairwise inner products are non-positive (up to `TOL_ORTHO`).
    pub fn is_obtuse(&self) -> bool {
        let g = self.basis.gram();
        let n = g.dim();
        (0..n).all(|i| (i + 1..n).all(|j| snapped_cosine(g.cosine(i, j)) <= 0.0))
    }
}

fn snapped_cosine(c: f64) -> f64 {
    if c.abs() < TOL_ORTHO {
        0.0
    } else {
        c
    }
}

/// Columns of `b · u` as raw vectors.
fn combine(b: &Basis, coeffs: &[i64; 3]) -> Vector {
    linalg::mul_int_vec(b.raw_cols(), coeffs)
}

fn sub_coeffs(a: &[i64; 3], b: &[i64; 3], k: i64) -> [i64; 3] {
    [a[0] - k * b[0], a[1] - k * b[1], a[2] - k * b[2]]
}

fn add_coeffs(a: &[i64; 3], b: &[i64; 3]) -> [i64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn neg_coeffs(a: &[i64; 3]) -> [i64; 3] {
    [-a[0], -a[1], -a[2]]
}

fn round_to_i64(x: f64) -> Result<i64> {
    let r = x.round();
    if !r.is_finite() || r.abs() > 1e15 {
        return Err(LatticeError::ReductionNonConvergence { steps: 0 });
    }
    Ok(r as i64)
}

/// Lagrange-Gauss reduction of a 2D basis; returns integer coefficient
/// columns in the input basis.
fn gauss_2d(b: &Basis) -> Result<[[i64; 3]; 2]> {
    let mut u = [[1, 0, 0], [0, 1, 0]];
    let n2 = |c: &[i64; 3]| linalg::norm2(&combine(b, c));
    if n2(&u[0]) > n2(&u[1]) {
        u.swap(0, 1);
    }
    for _ in 0..MAX_SELLING_STEPS {
        let v1 = combine(b, &u[0]);
        let v2 = combine(b, &u[1]);
        let mu = round_to_i64(linalg::dot(&v1, &v2) / linalg::norm2(&v1))?;
        if mu != 0 {
            u[1] = sub_coeffs(&u[1], &u[0], mu);
        }
        if n2(&u[1]) < n2(&u[0]) * (1.0 - TOL_TIE) {
            u.swap(0, 1);
        } else {
            return Ok(u);
        }
    }
    Err(LatticeError::ReductionNonConvergence { steps: MAX_SELLING_STEPS })
}

/// Textbook LLL (delta = 0.99) for 3D, used only to bring skewed inputs close
/// to reduced before the superbase iteration.
fn lll_3d(b: &Basis) -> Result<[[i64; 3]; 3]> {
    const DELTA: f64 = 0.99;
    let mut u = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut k = 1;
    let mut steps = 0;
    while k < 3 {
        steps += 1;
        if steps > 100 * MAX_SELLING_STEPS {
            return Err(LatticeError::ReductionNonConvergence { steps });
        }
        let (gs, _) = gram_schmidt(&u.map(|c| combine(b, &c)));
        // size reduction; gs[j] for j < k is unaffected by changes to u[k]
        for j in (0..k).rev() {
            let vk = combine(b, &u[k]);
            let q = round_to_i64(linalg::dot(&vk, &gs[j]) / linalg::norm2(&gs[j]))?;
            if q != 0 {
                u[k] = sub_coeffs(&u[k], &u[j], q);
            }
        }
        let (gs, mu) = gram_schmidt(&u.map(|c| combine(b, &c)));
        let lhs = linalg::norm2(&gs[k]);
        let rhs = (DELTA - mu[k][k - 1] * mu[k][k - 1]) * linalg::norm2(&gs[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            u.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    Ok(u)
}

fn gram_schmidt(v: &[Vector]) -> (Vec<Vector>, [[f64; 3]; 3]) {
    let mut gs: Vec<Vector> = Vec::with_capacity(v.len());
    let mut mu = [[0.0; 3]; 3];
    for i in 0..v.len() {
        let mut w = v[i];
        for j in 0..i {
            mu[i][j] = linalg::dot(&v[i], &gs[j]) / linalg::norm2(&gs[j]);
            w = linalg::sub(&w, &linalg::scale(&gs[j], mu[i][j]));
        }
        gs.push(w);
    }
    (gs, mu)
}

/// Superbase iteration: repeatedly fix the most positive pairwise inner
/// product. Each step lowers `sum |b_i|^2` by a multiple of `b_i · b_j`.
fn selling(b: &Basis, start: &[[i64; 3]]) -> Result<Vec<[i64; 3]>> {
    let n = b.dim();
    let mut sb: Vec<[i64; 3]> = Vec::with_capacity(n + 1);
    let mut sum = [0i64; 3];
    for c in start.iter().take(n) {
        sum = add_coeffs(&sum, c);
    }
    sb.push(neg_coeffs(&sum));
    sb.extend_from_slice(&start[..n]);

    for _ in 0..MAX_SELLING_STEPS {
        let v: Vec<Vector> = sb.iter().map(|c| combine(b, c)).collect();
        let mut worst: Option<(f64, usize, usize)> = None;
        for i in 0..=n {
            for j in i + 1..=n {
                let s = linalg::dot(&v[i], &v[j]);
                let cos = s / (linalg::norm(&v[i]) * linalg::norm(&v[j]));
                if cos > TOL_ORTHO && worst.map_or(true, |(w, _, _)| s > w) {
                    worst = Some((s, i, j));
                }
            }
        }
        let Some((_, i, j)) = worst else {
            return Ok(sb);
        };
        // the remaining members absorb 2 b_i in total so the sum stays zero
        let bi = sb[i];
        let share = if n == 2 { add_coeffs(&bi, &bi) } else { bi };
        for (k, c) in sb.iter_mut().enumerate() {
            if k != i && k != j {
                *c = add_coeffs(c, &share);
            }
        }
        sb[i] = neg_coeffs(&bi);
    }
    Err(LatticeError::ReductionNonConvergence { steps: MAX_SELLING_STEPS })
}

/// Sort candidates by norm; near-equal norms are ordered by coefficient
/// vector (lexicographically descending, so `e1` precedes `e2`).
pub(crate) fn order_by_norm(cands: &mut Vec<(f64, LatticeVector)>) {
    cands.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut out = Vec::with_capacity(cands.len());
    let mut start = 0;
    while start < cands.len() {
        let mut end = start + 1;
        while end < cands.len() && cands[end].0 - cands[end - 1].0 <= TOL_TIE * cands[end].0 {
            end += 1;
        }
        let mut cluster = cands[start..end].to_vec();
        cluster.sort_by(|x, y| y.1.cmp(&x.1));
        out.extend(cluster);
        start = end;
    }
    *cands = out;
}

fn select_basis(b: &Basis, superbase: &[[i64; 3]]) -> Result<[[i64; 3]; 3]> {
    let n = b.dim();
    let mut cands: Vec<(f64, LatticeVector)> = Vec::new();
    for mask in 1u32..(1 << n) {
        let mut c = [0i64; 3];
        for bit in 0..n {
            if mask & (1 << bit) != 0 {
                c = add_coeffs(&c, &superbase[bit + 1]);
            }
        }
        let v = LatticeVector::from_raw(n, c).canonical();
        cands.push((linalg::norm2(&combine(b, v.raw())), v));
    }
    order_by_norm(&mut cands);

    let m = cands.len();
    let pick = |idx: &[usize]| {
        let mut cols = [[0i64; 3]; 3];
        for (j, &i) in idx.iter().enumerate() {
            cols[j] = *cands[i].1.raw();
        }
        cols
    };
    if n == 2 {
        for i in 0..m {
            for j in i + 1..m {
                let cols = pick(&[i, j]);
                if IntMatrix::from_raw(2, cols).is_unimodular() {
                    return Ok(cols);
                }
            }
        }
    } else {
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let cols = pick(&[i, j, k]);
                    if IntMatrix::from_raw(3, cols).is_unimodular() {
                        return Ok(cols);
                    }
                }
            }
        }
    }
    // the superbase members themselves always form a basis
    Err(LatticeError::ReductionNonConvergence { steps: 0 })
}

fn normalize_signs(b: &Basis, cols: &mut [[i64; 3]; 3]) {
    let n = b.dim();
    let cosine = |cols: &[[i64; 3]; 3], i: usize, j: usize| {
        let (x, y) = (combine(b, &cols[i]), combine(b, &cols[j]));
        snapped_cosine(linalg::dot(&x, &y) / (linalg::norm(&x) * linalg::norm(&y)))
    };
    for j in 1..n {
        if cosine(cols, 0, j) > 0.0 {
            cols[j] = neg_coeffs(&cols[j]);
        }
    }
    if n == 3 && cosine(cols, 1, 2) > 0.0 {
        if cosine(cols, 0, 1) == 0.0 {
            cols[1] = neg_coeffs(&cols[1]);
        } else if cosine(cols, 0, 2) == 0.0 {
            cols[2] = neg_coeffs(&cols[2]);
        }
    }
}

/// Reduce `b` to its shortest basis, sorted by length, with non-positive
/// pairwise inner products wherever a sign choice allows.
pub fn reduce(b: &Basis) -> Result<ReducedBasis> {
    let n = b.dim();
    let start: Vec<[i64; 3]> = match n {
        2 => gauss_2d(b)?.to_vec(),
        _ => lll_3d(b)?.to_vec(),
    };
    let superbase = selling(b, &start)?;
    let mut cols = select_basis(b, &superbase)?;
    normalize_signs(b, &mut cols);
    let transform = IntMatrix::from_raw(n, cols);
    debug_assert!(transform.is_unimodular());
    let basis = b.transformed(&transform)?;
    Ok(ReducedBasis { basis, transform, superbase: superbase.iter().map(|c| LatticeVector::from_raw(n, *c)).collect() })
}

/// Whether some lattice vector beats the basis in the successive-minima sense:
/// shorter than `v1`, or independent of `v1..v_{k-1}` and shorter than `v_k`.
///
/// For slot `k` the coefficients are bounded by `|c_i| <= |v_k| · |row_i(B^-1)|`,
/// which covers every vector no longer than `v_k`. Returns `None` if a box is
/// too large to enumerate (such a basis is far from reduced anyway).
pub(crate) fn has_shorter_vector(b: &Basis) -> Option<bool> {
    const MAX_POINTS: f64 = 4e6;
    let n = b.dim();
    let norms2: Vec<f64> = (0..n).map(|j| linalg::norm2(b.raw_col(j))).collect();
    for slot in 0..n {
        let mut bound = [0i64; 3];
        let mut points = 1.0;
        for (i, bd) in bound.iter_mut().enumerate().take(n) {
            let k = (norms2[slot].sqrt() * (1.0 + TOL_NUM) * linalg::norm(&b.inv_rows()[i])).floor();
            points *= 2.0 * k + 1.0;
            if points > MAX_POINTS {
                return None;
            }
            *bd = k as i64;
        }
        let mut found = false;
        for_each_coeff(n, &bound, |c| {
            // c competes for this slot iff it is independent of the earlier vectors
            if found || c[slot..n].iter().all(|&x| x == 0) {
                return;
            }
            if linalg::norm2(&combine(b, c)) < norms2[slot] * (1.0 - TOL_NUM) {
                found = true;
            }
        });
        if found {
            return Some(true);
        }
    }
    Some(false)
}

/// Call `f` for every coefficient vector in `[-bound_i, bound_i]`.
pub(crate) fn for_each_coeff(n: usize, bound: &[i64; 3], mut f: impl FnMut(&[i64; 3])) {
    let b2 = if n == 3 { bound[2] } else { 0 };
    for z in -b2..=b2 {
        for y in -bound[1]..=bound[1] {
            for x in -bound[0]..=bound[0] {
                f(&[x, y, z]);
            }
        }
    }
}

/// True iff `b` is sorted by length, consists of successive minima (checked
/// by bounded enumeration), and has non-positive pairwise inner products
/// except where the sign pattern forces one positive product (3D only).
pub fn is_reduced(b: &Basis) -> bool {
    let n = b.dim();
    let g = b.gram();
    for j in 1..n {
        if g.entries[j][j] < g.entries[j - 1][j - 1] * (1.0 - TOL_NUM) {
            return false;
        }
    }
    if has_shorter_vector(b) != Some(false) {
        return false;
    }
    let c = |i: usize, j: usize| snapped_cosine(g.cosine(i, j));
    if n == 2 {
        return c(0, 1) <= 0.0;
    }
    if c(0, 1) > 0.0 || c(0, 2) > 0.0 {
        return false;
    }
    // v2 · v3 > 0 is only acceptable when no sign flip can remove it
    c(1, 2) <= 0.0 || (c(0, 1) < 0.0 && c(0, 2) < 0.0)
}
