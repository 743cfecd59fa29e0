//! Slow reference implementations. Nothing here calls the reduction,
//! Voronoi or copy-count code; only basis transforms and small linear
//! solves are shared with the fast paths.

use crate::distance::DistanceResult;
use crate::error::{LatticeError, Result};
use crate::lattice::{Basis, CartPoint, FracPoint, LatticeVector};
use crate::linalg::{self, Vector, ZERO};
use crate::tol::TOL_TIE;

/// Calls `f` for every coefficient vector in `[-k_i, k_i]`, lexicographic order.
fn for_each_in_box(n: usize, k: &[i64], mut f: impl FnMut([i64; 3])) {
    let r = |i: usize| if i < n { k[i] } else { 0 };
    for a in -r(0)..=r(0) {
        for b in -r(1)..=r(1) {
            for c in -r(2)..=r(2) {
                f([a, b, c]);
            }
        }
    }
}

fn to_f64(t: &[i64; 3]) -> Vector {
    [t[0] as f64, t[1] as f64, t[2] as f64]
}

/// Minimum of `|B (p2 + t - p1)|` over `t` in `[-k, k]^n` after both points
/// are wrapped into the unit cell. The image is reported relative to the
/// unwrapped inputs; exact ties keep the lexicographically smallest image.
pub fn brute_distance(b: &Basis, p1: &FracPoint, p2: &FracPoint, k: u32) -> Result<DistanceResult> {
    let n = b.dim();
    if k < 1 {
        return Err(LatticeError::InvalidArgument("brute_distance needs at least one layer".into()));
    }
    for p in [p1, p2] {
        if p.dim() != n {
            return Err(LatticeError::DimensionMismatch { expected: n, got: p.dim() });
        }
    }
    let mut r = ZERO;
    let mut shift = [0i64; 3];
    for i in 0..n {
        let (a, c) = (p1.coords()[i], p2.coords()[i]);
        shift[i] = c.floor() as i64 - a.floor() as i64;
        r[i] = (c - c.floor()) - (a - a.floor());
    }
    let mut best: Option<(f64, [i64; 3])> = None;
    for_each_in_box(n, &[k as i64; 3], |t| {
        let d = linalg::norm(&linalg::mul_vec(b.raw_cols(), &linalg::add(&r, &to_f64(&t))));
        let image = [t[0] - shift[0], t[1] - shift[1], t[2] - shift[2]];
        match best {
            Some((bd, _)) if d >= bd => {}
            _ => best = Some((d, image)),
        }
    });
    let (_, image) = best.expect("box is never empty");
    let x = linalg::add(&linalg::sub(p2.raw(), p1.raw()), &to_f64(&image));
    Ok(DistanceResult {
        distance: linalg::norm(&linalg::mul_vec(b.raw_cols(), &x)),
        image: LatticeVector::from_raw(n, image),
    })
}

/// Voronoi-relevant vectors by the facet criterion: `r` is kept iff its
/// midpoint is strictly closer to `0` (and `r`) than to every other lattice
/// point with coefficients in the box. One representative per `±` pair,
/// canonical sign, sorted.
pub fn brute_relevant(b: &Basis, k: u32) -> Result<Vec<LatticeVector>> {
    if k < 2 {
        return Err(LatticeError::InvalidArgument("brute_relevant needs a box radius of at least 2".into()));
    }
    let n = b.dim();
    let mut points: Vec<([i64; 3], Vector)> = Vec::new();
    for_each_in_box(n, &[k as i64; 3], |t| {
        if t != [0, 0, 0] {
            points.push((t, linalg::mul_int_vec(b.raw_cols(), &t)));
        }
    });
    let mut out = Vec::new();
    for (rc, rv) in &points {
        let lv = LatticeVector::from_raw(n, *rc);
        if lv.canonical() != lv {
            continue;
        }
        let mid = linalg::scale(rv, 0.5);
        let bound = linalg::norm(&mid) + TOL_TIE * linalg::norm(rv);
        let strict =
            points.iter().filter(|(wc, _)| wc != rc).all(|(_, wv)| linalg::norm(&linalg::sub(&mid, wv)) > bound);
        if strict {
            out.push(lv);
        }
    }
    out.sort();
    Ok(out)
}

/// Vertices of the Voronoi cell from the brute-force facets.
fn brute_vertices(lattice: &Basis) -> Result<Vec<Vector>> {
    let n = lattice.dim();
    let mut facets: Vec<(Vector, f64)> = Vec::new();
    for r in brute_relevant(lattice, 3)? {
        let v = linalg::mul_int_vec(lattice.raw_cols(), r.raw());
        let off = linalg::norm2(&v) / 2.0;
        facets.push((v, off));
        facets.push((linalg::scale(&v, -1.0), off));
    }
    let scale = facets.iter().map(|f| f.1).fold(0.0, f64::max).sqrt();
    let tol = 1e-9 * scale;
    let mut verts: Vec<Vector> = Vec::new();
    let m = facets.len();
    let mut consider = |idx: &[usize]| {
        let rows: Vec<Vector> = idx.iter().map(|&i| facets[i].0).collect();
        let rhs: Vec<f64> = idx.iter().map(|&i| facets[i].1).collect();
        let Some(x) = linalg::solve_rows(&rows, &rhs, n, 1e-12) else { return };
        let feasible = facets.iter().all(|(a, o)| linalg::dot(a, &x) <= o + tol * linalg::norm(a));
        if feasible && !verts.iter().any(|y| linalg::norm(&linalg::sub(y, &x)) <= tol) {
            verts.push(x);
        }
    };
    for i in 0..m {
        for j in i + 1..m {
            if n == 2 {
                consider(&[i, j]);
                continue;
            }
            for k in j + 1..m {
                consider(&[i, j, k]);
            }
        }
    }
    Ok(verts)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub p1: FracPoint,
    pub p2: FracPoint,
    /// Minimum over the block with one layer removed on the tested axis.
    pub restricted: f64,
    pub true_distance: f64,
    pub gap: f64,
}

const WITNESS_GAP: f64 = 1e-9;
const GRID: usize = 33;
const GRID_3D_PAIR: usize = 9;

/// `res` samples per axis from 0 to just below 1, so the far faces of the
/// cell are approached from inside.
fn grid(n: usize, res: usize) -> Vec<Vector> {
    let ticks: Vec<f64> =
        (0..res).map(|k| if k + 1 == res { 1.0 - 1e-9 } else { k as f64 / (res - 1) as f64 }).collect();
    let r = |i: usize| if i < n { res } else { 1 };
    let mut out = Vec::new();
    for a in 0..r(0) {
        for b in 0..r(1) {
            for c in 0..r(2) {
                let mut p = [ticks[a], ticks[b], ticks[c]];
                p[n..].iter_mut().for_each(|x| *x = 0.0);
                out.push(p);
            }
        }
    }
    out
}

/// Searches for a point pair whose distance, minimized over the block with
/// `layers[axis] - 1` layers on `axis` (and `layers[i]` elsewhere), exceeds
/// the true distance by more than `1e-9`. Points are cell fractional
/// coordinates in `[0, 1)^n`. Candidates are `p1` on a grid with `p2` a
/// shifted Voronoi-vertex image of `p1`, then grid pairs.
pub fn minimality_witness(cell: &Basis, lattice: &Basis, layers: &[u32], axis: usize) -> Result<Option<Witness>> {
    let n = cell.dim();
    if lattice.dim() != n || layers.len() != n {
        return Err(LatticeError::DimensionMismatch { expected: n, got: layers.len().min(lattice.dim()) });
    }
    if axis >= n || layers[axis] == 0 {
        return Err(LatticeError::InvalidArgument(format!("axis {axis} has no layer to remove")));
    }
    let full_k = layers.iter().copied().max().unwrap_or(1) as i64 + 3;
    let mut limit = [0i64; 3];
    for i in 0..n {
        limit[i] = layers[i] as i64 - (i == axis) as i64;
    }
    let mut offsets: Vec<(Vector, bool)> = Vec::new();
    for_each_in_box(n, &[full_k; 3], |t| {
        let inside = (0..n).all(|i| t[i].abs() <= limit[i]);
        offsets.push((linalg::mul_int_vec(cell.raw_cols(), &t), inside));
    });
    let test = |p1: &Vector, p2: &Vector| -> Option<Witness> {
        let base = linalg::mul_vec(cell.raw_cols(), &linalg::sub(p2, p1));
        let (mut all, mut restricted) = (f64::INFINITY, f64::INFINITY);
        for (o, inside) in &offsets {
            let d = linalg::norm(&linalg::add(&base, o));
            all = all.min(d);
            if *inside {
                restricted = restricted.min(d);
            }
        }
        (restricted - all > WITNESS_GAP).then(|| Witness {
            p1: FracPoint::from_raw(n, *p1),
            p2: FracPoint::from_raw(n, *p2),
            restricted,
            true_distance: all,
            gap: restricted - all,
        })
    };
    let wrap = |x: Vector| -> Vector {
        let mut y = ZERO;
        for i in 0..n {
            y[i] = x[i] - x[i].floor();
        }
        y
    };

    let g = grid(n, GRID);
    let vertex_fracs: Vec<Vector> =
        brute_vertices(lattice)?.iter().map(|x| *cell.cart_to_frac(&CartPoint::from_raw(n, *x)).raw()).collect();
    for p1 in &g {
        for lambda in [1.0 - 1e-6, 0.999, 0.99] {
            for v in &vertex_fracs {
                let p2 = wrap(linalg::add(p1, &linalg::scale(v, lambda)));
                if let Some(w) = test(p1, &p2) {
                    return Ok(Some(w));
                }
            }
        }
    }
    let g2 = if n == 2 { g.clone() } else { grid(n, GRID_3D_PAIR) };
    for p1 in &g {
        for p2 in &g2 {
            if let Some(w) = test(p1, p2) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}
