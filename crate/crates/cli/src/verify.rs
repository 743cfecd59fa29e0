//! `--verify`: recompute results with the brute-force oracles and compare.

use latcover::oracle::{brute_distance, brute_relevant};
use latcover::{
    is_reduced, voronoi_cell, Basis, FracPoint, LatticeError, Neighbor, PeriodicPointSet, ReducedBasis,
    RelevantVectorSet, VoronoiCell,
};

use crate::error::CliError;

const AGREE: f64 = 1e-9;

#[derive(Debug)]
pub struct Report {
    pub ok: bool,
    pub lines: Vec<String>,
}

impl Default for Report {
    fn default() -> Report {
        Report::new()
    }
}

impl Report {
    fn new() -> Report {
        Report { ok: true, lines: Vec::new() }
    }

    fn check(&mut self, pass: bool, what: String) {
        if !pass {
            self.ok = false;
            self.lines.push(format!("MISMATCH {what}"));
        }
    }

    fn done(mut self, what: &str) -> Report {
        if self.ok {
            self.lines.push(format!("ok: {what}"));
        }
        self
    }

    pub fn merge(&mut self, other: Report) {
        self.ok &= other.ok;
        self.lines.extend(other.lines);
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= AGREE * b.abs().max(1.0)
}

fn cart(cols: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    let n = cols.len();
    (0..n).map(|r| (0..n).map(|c| cols[c][r] * x[c]).sum()).collect()
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Calls `f` for every integer vector in `[-k_0, k_0] x ... `.
fn each_in_box(k: &[i64], mut f: impl FnMut(&[i64])) {
    let n = k.len();
    let mut t: Vec<i64> = k.iter().map(|&x| -x).collect();
    loop {
        f(&t);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if t[i] < k[i] {
                t[i] += 1;
                break;
            }
            t[i] = -k[i];
            i += 1;
        }
    }
}

/// Box radius that provably contains the minimizing translate for any pair
/// of wrapped points: `|B t| <= sum |b_i| + R` with `R` the Voronoi
/// circumradius, and `|t_k| <= |B t| / slab_k`.
fn safe_radius(b: &Basis, v: &VoronoiCell) -> u32 {
    let s: f64 = (0..b.dim()).map(|j| b.column_norm(j)).sum();
    let r = v.vertices().iter().map(|x| x.norm()).fold(0.0, f64::max);
    (0..b.dim()).map(|k| ((s + r) / b.slab_width(k)).ceil() as u32).max().unwrap_or(1).max(1)
}

pub fn reduction(b: &Basis, r: &ReducedBasis) -> Result<Report, CliError> {
    let mut rep = Report::new();
    let t = r.transform();
    rep.check(t.is_unimodular(), "transform is not unimodular".into());
    let mapped = b.transformed(t)?;
    let (got, want) = (mapped.columns(), r.basis().columns());
    let agree = got.iter().flatten().zip(want.iter().flatten()).all(|(a, w)| close(*a, *w));
    rep.check(agree, "B T differs from the reduced basis".into());
    rep.check(is_reduced(r.basis()), "reduced basis admits a shorter vector".into());
    // shortest nonzero vector by direct search around the reduced basis
    let cols = r.basis().columns();
    let mut shortest = f64::INFINITY;
    each_in_box(&vec![3; b.dim()], |c| {
        if c.iter().any(|&x| x != 0) {
            let x: Vec<f64> = c.iter().map(|&v| v as f64).collect();
            shortest = shortest.min(norm(&cart(&cols, &x)));
        }
    });
    rep.check(
        close(r.basis().column_norm(0), shortest),
        format!("first vector {} vs shortest {shortest}", r.basis().column_norm(0)),
    );
    Ok(rep.done("reduction"))
}

pub fn relevant(rel: &RelevantVectorSet) -> Result<Report, CliError> {
    let mut rep = Report::new();
    let mut want: Vec<Vec<i64>> =
        brute_relevant(rel.reduced().basis(), 4)?.iter().map(|v| v.coeffs().to_vec()).collect();
    let mut got: Vec<Vec<i64>> = rel.vectors().iter().map(|v| v.reduced_coeffs.canonical().coeffs().to_vec()).collect();
    want.sort();
    got.sort();
    rep.check(got == want, format!("relevant vectors {got:?} vs brute force {want:?}"));
    Ok(rep.done(&format!("{} relevant pairs", got.len())))
}

pub fn voronoi(b: &Basis, v: &VoronoiCell) -> Result<Report, CliError> {
    let mut rep = Report::new();
    rep.check(close(v.volume(), b.volume()), format!("volume {} vs |det B| {}", v.volume(), b.volume()));
    // every vertex is as close to the origin as to any other lattice point
    let red = latcover::reduce(b)?;
    let cols = red.basis().columns();
    for x in v.vertices() {
        let r = x.norm();
        let mut nearest = f64::INFINITY;
        each_in_box(&vec![3; b.dim()], |c| {
            let t: Vec<f64> = c.iter().map(|&v| v as f64).collect();
            let p = cart(&cols, &t);
            let d: Vec<f64> = x.coords().iter().zip(&p).map(|(a, q)| a - q).collect();
            nearest = nearest.min(norm(&d));
        });
        rep.check(close(nearest, r), format!("vertex {:?} at {r} has a lattice point at {nearest}", x.coords()));
    }
    Ok(rep.done(&format!("{} vertices, volume", v.vertices().len())))
}

pub fn distances(b: &Basis, cases: &[(FracPoint, FracPoint, f64)]) -> Result<Report, CliError> {
    let mut rep = Report::new();
    let k = safe_radius(b, &voronoi_cell(b)?);
    for (p1, p2, d) in cases {
        let truth = brute_distance(b, p1, p2, k)?.distance;
        rep.check(
            close(*d, truth),
            format!("distance {d} vs brute force {truth} for {:?} {:?}", p1.coords(), p2.coords()),
        );
    }
    Ok(rep.done(&format!("{} distances against a {k}-layer block", cases.len())))
}

/// Distances restricted to the `layers` block agree with the full search on
/// sample pairs: grid points paired with near-vertex images.
pub fn block(cell: &Basis, lattice: &Basis, layers: &[u32]) -> Result<Report, CliError> {
    let n = cell.dim();
    if lattice.dim() != n {
        return Err(LatticeError::DimensionMismatch { expected: n, got: lattice.dim() }.into());
    }
    let mut rep = Report::new();
    let v = voronoi_cell(lattice)?;
    let k = safe_radius(cell, &v);
    let cols = cell.columns();
    let verts: Vec<Vec<f64>> = v.vertices().iter().map(|x| cell.cart_to_frac(x).coords().to_vec()).collect();
    let res: i64 = if n == 2 { 9 } else { 5 };
    let lim: Vec<i64> = layers.iter().map(|&l| l as i64).collect();
    let mut checked = 0usize;
    each_in_box(&vec![(res - 1) / 2; n], |g| {
        let p1: Vec<f64> = g.iter().map(|&x| (x + (res - 1) / 2) as f64 / res as f64).collect();
        for w in &verts {
            let p2: Vec<f64> = p1.iter().zip(w).map(|(a, c)| a + 0.999 * c).map(|x| x - x.floor()).collect();
            let (f1, f2) = (FracPoint::new(&p1).unwrap(), FracPoint::new(&p2).unwrap());
            let mut restricted = f64::INFINITY;
            each_in_box(&lim, |t| {
                let x: Vec<f64> = (0..n).map(|i| p2[i] - p1[i] + t[i] as f64).collect();
                restricted = restricted.min(norm(&cart(&cols, &x)));
            });
            match brute_distance(cell, &f1, &f2, k) {
                Ok(truth) => rep.check(
                    restricted - truth.distance <= AGREE * truth.distance.max(1.0),
                    format!("block {lim:?} gives {restricted}, true distance {} for {p1:?} {p2:?}", truth.distance),
                ),
                Err(e) => rep.check(false, e.to_string()),
            }
            checked += 1;
        }
    });
    Ok(rep.done(&format!("block {lim:?} exact on {checked} sample pairs")))
}

pub fn neighbors(ps: &PeriodicPointSet, cutoff: f64, got: &[Neighbor]) -> Result<Report, CliError> {
    let b = ps.basis();
    let n = b.dim();
    let mut rep = Report::new();
    let cols = b.columns();
    let s: f64 = (0..n).map(|j| b.column_norm(j)).sum();
    let k: Vec<i64> = (0..n).map(|j| ((cutoff + s) / b.slab_width(j)).ceil() as i64).collect();
    let p = ps.points();
    let dist = |i: usize, j: usize, t: &[i64]| {
        let x: Vec<f64> = (0..n).map(|a| p[j].coords()[a] - p[i].coords()[a] + t[a] as f64).collect();
        norm(&cart(&cols, &x))
    };
    for x in got {
        let d = dist(x.i, x.j, x.image.coeffs());
        rep.check(
            close(x.distance, d),
            format!("pair ({}, {}) image {:?}: {} vs {d}", x.i, x.j, x.image.coeffs(), x.distance),
        );
        rep.check(d <= cutoff * (1.0 + AGREE), format!("pair ({}, {}) at {d} exceeds the cutoff", x.i, x.j));
    }
    let mut missing = 0usize;
    for i in 0..p.len() {
        for j in i..p.len() {
            each_in_box(&k, |t| {
                if i == j && t.iter().all(|&c| c == 0) {
                    return;
                }
                if dist(i, j, t) <= cutoff * (1.0 - AGREE)
                    && !got.iter().any(|x| x.i == i && x.j == j && x.image.coeffs() == t)
                {
                    missing += 1;
                }
            });
        }
    }
    rep.check(missing == 0, format!("{missing} neighbors within the cutoff were not reported"));
    Ok(rep.done(&format!("{} neighbors", got.len())))
}
