#![allow(dead_code)]

use latcover::{validate_basis, Basis, FracPoint, IntMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Orthonormal columns from Gram-Schmidt on random vectors.
pub fn rotation(rng: &mut impl Rng, n: usize) -> Vec<Vec<f64>> {
    loop {
        let mut q: Vec<Vec<f64>> = Vec::new();
        for _ in 0..n {
            let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            for u in &q {
                let d = dot(&v, u);
                v.iter_mut().zip(u).for_each(|(x, y)| *x -= d * y);
            }
            let l = norm(&v);
            if l < 1e-3 {
                break;
            }
            q.push(v.iter().map(|x| x / l).collect());
        }
        if q.len() == n {
            return q;
        }
    }
}

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    // column-major: (a b)_j = a * b_j
    b.iter().map(|bj| (0..a.len()).map(|i| (0..a.len()).map(|k| a[k][i] * bj[k]).sum()).collect()).collect()
}

/// `R1 diag(s) R2` with singular values log-uniform and ratio at most `max_cond`.
pub fn random_basis(rng: &mut impl Rng, n: usize, max_cond: f64) -> Basis {
    let top = rng.gen_range(0.0..max_cond.log10());
    let mut s: Vec<f64> = (0..n).map(|_| 10f64.powf(rng.gen_range(0.0..top.max(1e-9)))).collect();
    s[0] = 1.0;
    s[n - 1] = 10f64.powf(top);
    let scale = rng.gen_range(0.5..2.0);
    let d: Vec<Vec<f64>> = (0..n).map(|j| (0..n).map(|i| if i == j { s[j] * scale } else { 0.0 }).collect()).collect();
    let cols = mat_mul(&rotation(rng, n), &mat_mul(&d, &rotation(rng, n)));
    validate_basis(&cols).unwrap()
}

pub fn random_unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> IntMatrix {
    let mut cols: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| (i == j) as i64).collect()).collect();
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = [-2, -1, 1, 2][rng.gen_range(0..4)];
        let cj = cols[j].clone();
        cols[i].iter_mut().zip(&cj).for_each(|(x, y)| *x += c * y);
    }
    if rng.gen_bool(0.5) {
        cols.swap(0, 1);
    }
    if rng.gen_bool(0.5) {
        cols[n - 1].iter_mut().for_each(|x| *x = -*x);
    }
    let u = IntMatrix::from_columns(&cols);
    assert!(u.is_unimodular());
    u
}

pub fn random_point(rng: &mut impl Rng, n: usize) -> FracPoint {
    let c: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
    FracPoint::new(&c).unwrap()
}

/// Rotated axis-aligned box lattice with distinct edge lengths.
pub fn orthogonal(rng: &mut impl Rng, n: usize) -> Basis {
    let r = rotation(rng, n);
    let cols: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let l = rng.gen_range(0.3..3.0);
            r[j].iter().map(|x| x * l).collect()
        })
        .collect();
    validate_basis(&cols).unwrap()
}

/// A lattice whose shortest basis `v` is strictly obtuse (every inner
/// product of the superbase `v1, .., vn, -(v1 + .. + vn)` negative) and
/// whose subset sums have distinct norms. Returns the vectors sorted by norm
/// and the same lattice disguised by a random unimodular change of basis.
pub fn generic_obtuse(rng: &mut impl Rng, n: usize) -> (Vec<Vec<f64>>, Basis) {
    generic_obtuse_with(rng, n, 4)
}

/// As [`generic_obtuse`] with `steps` elementary operations in the disguise.
pub fn generic_obtuse_with(rng: &mut impl Rng, n: usize, steps: usize) -> (Vec<Vec<f64>>, Basis) {
    loop {
        let r = rotation(rng, n);
        let b = match n {
            2 => latcover::cell_params_to_basis_2d(1.0, rng.gen_range(1.02..1.45), rng.gen_range(93.0..115.0)),
            _ => latcover::cell_params_to_basis(
                1.0,
                rng.gen_range(1.02..1.35),
                rng.gen_range(1.02..1.35),
                rng.gen_range(92.0..112.0),
                rng.gen_range(92.0..112.0),
                rng.gen_range(92.0..112.0),
            ),
        };
        let Ok(b) = b else { continue };
        let v: Vec<Vec<f64>> = b.columns();
        let mut sb = v.clone();
        sb.push(v.iter().fold(vec![0.0; n], |acc, x| add(&acc, x)).iter().map(|x| -x).collect());
        let obtuse = (0..=n).all(|i| (i + 1..=n).all(|j| dot(&sb[i], &sb[j]) < -1e-3 * norm(&sb[i]) * norm(&sb[j])));
        let mut sums: Vec<(f64, u32)> = (1u32..(1 << n))
            .map(|m| {
                let s = (0..n).filter(|i| m & (1 << i) != 0).fold(vec![0.0; n], |acc, i| add(&acc, &v[i]));
                (norm(&s), m)
            })
            .collect();
        sums.sort_by(|a, b| a.0.total_cmp(&b.0));
        let distinct = sums.windows(2).all(|w| w[1].0 - w[0].0 > 1e-4 * w[1].0);
        let singles_first = sums[..n].iter().all(|(_, m)| m.count_ones() == 1);
        if !(obtuse && distinct && singles_first) {
            continue;
        }
        let mut sorted = v.clone();
        sorted.sort_by(|a, b| norm(a).total_cmp(&norm(b)));
        let rotated = b.mapped(&r).unwrap();
        let sorted = sorted.iter().map(|x| mat_mul(&r, &[x.clone()])[0].clone()).collect();
        let input = rotated.transformed(&random_unimodular(rng, n, steps)).unwrap();
        return (sorted, input);
    }
}

/// Basis from integer combinations of the given vectors.
pub fn combine(v: &[Vec<f64>], coeffs: &[&[i64]]) -> Basis {
    let cols: Vec<Vec<f64>> = coeffs
        .iter()
        .map(|c| {
            c.iter()
                .zip(v)
                .fold(vec![0.0; v.len()], |acc, (&k, x)| acc.iter().zip(x).map(|(a, b)| a + k as f64 * b).collect())
        })
        .collect();
    validate_basis(&cols).unwrap()
}

/// Fractional coordinates of the same point in the basis `B U`, computed
/// exactly as `U^-1 p`.
pub fn recoordinatize(u: &IntMatrix, p: &FracPoint) -> FracPoint {
    let inv = u.inverse_unimodular().unwrap();
    let n = u.dim();
    let c: Vec<f64> = (0..n).map(|i| (0..n).map(|j| inv.column(j)[i] as f64 * p.coords()[j]).sum()).collect();
    FracPoint::new(&c).unwrap()
}
