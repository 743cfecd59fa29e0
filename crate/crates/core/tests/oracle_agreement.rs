mod common;

use common::*;
use latcover::oracle::{brute_distance, brute_relevant, minimality_witness};
use latcover::*;

fn fp(c: &[f64]) -> FracPoint {
    FracPoint::new(c).unwrap()
}

fn hexagonal() -> Basis {
    validate_basis(&[[1.0, 0.0], [-0.5, 3f64.sqrt() / 2.0]]).unwrap()
}

fn fcc() -> Basis {
    validate_basis(&[[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]]).unwrap()
}

fn all_vectors(b: &Basis, k: i64) -> Vec<(Vec<i64>, f64)> {
    let n = b.dim();
    let mut out = Vec::new();
    let kz = if n == 3 { k } else { 0 };
    for x in -k..=k {
        for y in -k..=k {
            for z in -kz..=kz {
                let c = vec![x, y, z][..n].to_vec();
                if c.iter().any(|&v| v != 0) {
                    let p = b.lattice_point(&LatticeVector::new(&c).unwrap());
                    out.push((c, p.norm()));
                }
            }
        }
    }
    out
}

fn independent(vs: &[&[i64]]) -> bool {
    match vs.len() {
        1 => vs[0].iter().any(|&x| x != 0),
        2 if vs[0].len() == 2 => vs[0][0] * vs[1][1] - vs[0][1] * vs[1][0] != 0,
        2 => {
            let (a, b) = (vs[0], vs[1]);
            let c = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
            c.iter().any(|&x| x != 0)
        }
        _ => IntMatrix::from_columns(&vs.iter().map(|v| v.to_vec()).collect::<Vec<_>>()).det() != 0,
    }
}

/// Successive minima check: no vector in the box beats `v_k` while being
/// independent of `v_1 .. v_{k-1}`.
fn assert_norm_optimal(input: &Basis, k: i64) {
    let red = reduce(input).unwrap();
    let u = red.transform();
    let n = input.dim();
    let cols: Vec<Vec<i64>> = (0..n).map(|j| u.column(j).to_vec()).collect();
    for slot in 0..n {
        let target = red.basis().column_norm(slot);
        for (c, len) in all_vectors(input, k) {
            let mut set: Vec<&[i64]> = cols[..slot].iter().map(|v| v.as_slice()).collect();
            set.push(&c);
            if independent(&set) {
                assert!(len >= target * (1.0 - 1e-12), "slot {slot}: {c:?} has length {len} < {target}");
            }
        }
    }
}

#[test]
fn cell_parameters_round_trip() {
    let b = cell_params_to_basis(2.0, 3.0, 4.0, 80.0, 95.0, 100.0).unwrap();
    let p = b.cell_parameters();
    for (x, y) in p.iter().zip([2.0, 3.0, 4.0, 80.0, 95.0, 100.0]) {
        assert!((x - y).abs() < 1e-9);
    }
    let again = cell_params_to_basis(p[0], p[1], p[2], p[3], p[4], p[5]).unwrap();
    for j in 0..3 {
        for (x, y) in again.column(j).iter().zip(b.column(j)) {
            assert!((x - y).abs() < 1e-9);
        }
    }
    let hex = cell_params_to_basis(1.0, 1.0, 1.0, 90.0, 90.0, 120.0).unwrap();
    let g = hex.gram();
    assert!((g.cosine(0, 1) + 0.5).abs() < 1e-12);
    assert!(g.cosine(0, 2).abs() < 1e-12 && g.cosine(1, 2).abs() < 1e-12);
}

#[test]
fn skewed_2d_reduction_is_shortest() {
    let b = validate_basis(&[[1.0, 0.0], [10.3, 1.0]]).unwrap();
    assert_norm_optimal(&b, 15);
}

#[test]
fn reduced_bases_are_successive_minima() {
    let mut r = rng(11);
    for i in 0..60 {
        let n = 2 + i % 2;
        let b = reduce(&random_basis(&mut r, n, 30.0))
            .unwrap()
            .basis()
            .transformed(&random_unimodular(&mut r, n, 2))
            .unwrap();
        assert_norm_optimal(&b, 10);
    }
}

#[test]
fn facet_oracle_on_known_lattices() {
    assert_eq!(brute_relevant(&Basis::identity(2).unwrap(), 2).unwrap().len(), 2);
    assert_eq!(brute_relevant(&hexagonal(), 2).unwrap().len(), 3);
    let f = brute_relevant(&fcc(), 4).unwrap();
    assert_eq!(f.len(), 6);
    let fast: Vec<LatticeVector> = {
        let mut v: Vec<LatticeVector> = relevant_vectors(&fcc()).unwrap().vectors().iter().map(|x| x.coeffs).collect();
        v.sort();
        v
    };
    assert_eq!(fast, f);
    let v = voronoi_cell(&fcc()).unwrap();
    assert_eq!(v.halfspaces().len(), 12);
    assert_eq!(v.vertices().len(), 14);
}

#[test]
fn facet_oracle_matches_on_many_lattices() {
    let mut r = rng(5);
    let mut checked = 0;
    for i in 0..120 {
        let n = 2 + i % 2;
        let b = match i % 3 {
            0 => generic_obtuse_with(&mut r, n, 1).1,
            1 => orthogonal(&mut r, n).transformed(&random_unimodular(&mut r, n, 1)).unwrap(),
            _ => reduce(&random_basis(&mut r, n, 20.0))
                .unwrap()
                .basis()
                .transformed(&random_unimodular(&mut r, n, 1))
                .unwrap(),
        };
        let mut fast: Vec<LatticeVector> = relevant_vectors(&b).unwrap().vectors().iter().map(|x| x.coeffs).collect();
        fast.sort();
        let brute = brute_relevant(&b, 4).unwrap();
        assert_eq!(fast, brute, "lattice {:?}", b.columns());
        assert_eq!(brute, brute_relevant(&b, 5).unwrap());
        checked += 1;
    }
    assert!(checked >= 100);
}

#[test]
fn skewed_pair_needs_distant_copy() {
    let b = validate_basis(&[[1.0, 0.0], [-5.0, 1.0]]).unwrap();
    let (p1, p2) = (fp(&[0.0, 0.0]), fp(&[0.5, 0.5]));
    let fast = min_image_distance(&b, &p1, &p2).unwrap();
    let brute = brute_distance(&b, &p1, &p2, 7).unwrap();
    assert_eq!(fast.distance, brute.distance);
    assert_eq!(fast.image, brute.image);
    let naive = brute_distance(&b, &p1, &p2, 1).unwrap();
    assert!(naive.distance > fast.distance + 1e-9);
}

#[test]
fn random_3d_matrix_matches_oracle() {
    let mut r = rng(20);
    let lattice = random_basis(&mut r, 3, 10.0);
    let b = lattice.transformed(&random_unimodular(&mut r, 3, 3)).unwrap();
    let pts: Vec<FracPoint> = (0..20).map(|_| random_point(&mut r, 3)).collect();
    let m = pairwise_distances(&PeriodicPointSet::new(b.clone(), pts.clone()).unwrap()).unwrap();
    let k = *copy_counts(&b, &b).unwrap().layers.iter().max().unwrap() + 3;
    for i in 0..20 {
        for j in 0..20 {
            let o = brute_distance(&b, &pts[i], &pts[j], k).unwrap().distance;
            assert!((m[i][j] - o).abs() <= 1e-12 * o.max(1e-300), "{i} {j}: {} vs {o}", m[i][j]);
        }
    }
}

#[test]
fn hexagonal_kissing_number() {
    let ps = PeriodicPointSet::new(hexagonal(), vec![fp(&[0.3, 0.4])]).unwrap();
    let nb = neighbors_within(&ps, 1.01).unwrap();
    let at_one = all_vectors(&hexagonal(), 4).into_iter().filter(|(_, l)| *l <= 1.01).count();
    assert_eq!(at_one, 6);
    assert_eq!(nb.len(), 6);
    assert!(nb.iter().all(|x| (x.distance - 1.0).abs() < 1e-12 && x.i == 0 && x.j == 0));
}

#[test]
fn neighbor_lists_match_enumeration() {
    let mut r = rng(8);
    for n in [2usize, 3] {
        let b = random_basis(&mut r, n, 5.0);
        let pts: Vec<FracPoint> = (0..4).map(|_| random_point(&mut r, n)).collect();
        let ps = PeriodicPointSet::new(b.clone(), pts).unwrap();
        let cutoff = 1.5 * b.volume().powf(1.0 / n as f64);
        let nb = neighbors_within(&ps, cutoff).unwrap();
        // brute count over a generous box in the input basis
        let k = (3.0 * cutoff * (0..n).map(|j| 1.0 / b.slab_width(j)).fold(0.0, f64::max)).ceil() as i64 + 2;
        let mut count = 0;
        for i in 0..ps.len() {
            for j in i..ps.len() {
                let (a, c) = (&ps.points()[i], &ps.points()[j]);
                let box_pts = all_vectors(&b, k);
                let zero = vec![0i64; n];
                for (t, _) in
                    box_pts.iter().map(|(t, l)| (t.as_slice(), l)).chain(std::iter::once((zero.as_slice(), &0.0)))
                {
                    if i == j && t.iter().all(|&x| x == 0) {
                        continue;
                    }
                    let x: Vec<f64> = (0..n).map(|d| c.coords()[d] + t[d] as f64 - a.coords()[d]).collect();
                    if b.frac_to_cart(&fp(&x)).norm() <= cutoff {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(nb.len(), count, "n = {n}");
    }
}

#[test]
fn witness_examples() {
    let z2 = Basis::identity(2).unwrap();
    let rect = validate_basis(&[[2.0, 0.0], [0.0, 0.5]]).unwrap();
    for axis in 0..2 {
        assert!(minimality_witness(&rect, &rect, &[1, 1], axis).unwrap().is_some());
    }
    let skew = validate_basis(&[[1.0, 0.0], [-5.0, 1.0]]).unwrap();
    let w = minimality_witness(&skew, &z2, &[3, 1], 0).unwrap().unwrap();
    assert!(w.gap > 1e-9);
    let direct = brute_distance(&skew, &w.p1, &w.p2, 8).unwrap().distance;
    assert!((direct - w.true_distance).abs() < 1e-12);
    assert!(minimality_witness(&hexagonal(), &hexagonal(), &[1, 1], 0).unwrap().is_some());
}

#[test]
fn oracle_boundaries() {
    let id = Basis::identity(2).unwrap();
    let r = brute_distance(&id, &fp(&[0.1, 0.1]), &fp(&[0.9, 0.1]), 1).unwrap();
    assert!((r.distance - 0.2).abs() < 1e-12);
    assert!(brute_distance(&id, &fp(&[0.1, 0.1]), &fp(&[0.9, 0.1]), 0).is_err());
    assert!(brute_relevant(&id, 1).is_err());
}
