mod common;

use common::*;
use latcover::oracle::{brute_distance, brute_relevant};
use latcover::*;
use proptest::prelude::*;

fn dims() -> impl Strategy<Value = usize> {
    prop_oneof![Just(2usize), Just(3usize)]
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frac_cart_round_trip(seed in any::<u64>(), n in dims()) {
        let mut r = rng(seed);
        let b = random_basis(&mut r, n, 1e3);
        let p = random_point(&mut r, n);
        let back = b.cart_to_frac(&b.frac_to_cart(&p));
        for (x, y) in p.coords().iter().zip(back.coords()) {
            prop_assert!((x - y).abs() < 1e-12 * 1e3);
        }
    }

    #[test]
    fn gram_is_positive_definite(seed in any::<u64>(), n in dims()) {
        let b = random_basis(&mut rng(seed), n, 1e3);
        let g = b.gram();
        prop_assert!(g.is_symmetric(0.0));
        prop_assert!(g.is_positive_definite());
    }

    #[test]
    fn reduction_is_idempotent_and_preserves_lattice(seed in any::<u64>(), n in dims()) {
        let b = random_basis(&mut rng(seed), n, 1e3);
        let red = reduce(&b).unwrap();
        prop_assert!(red.transform().is_unimodular());
        let u = b.integer_coordinates(red.basis()).expect("reduced vectors are lattice vectors");
        prop_assert!(u.is_unimodular());
        prop_assert!(is_reduced(red.basis()));
        let again = reduce(red.basis()).unwrap();
        for j in 0..n {
            prop_assert!(rel_close(again.basis().column_norm(j), red.basis().column_norm(j), 1e-12));
        }
        prop_assert!(rel_close(red.basis().volume(), b.volume(), 1e-9));
    }

    #[test]
    fn voronoi_volume_matches_determinant(seed in any::<u64>(), n in dims()) {
        let b = random_basis(&mut rng(seed), n, 1e3);
        let v = voronoi_cell(&b).unwrap();
        prop_assert!(rel_close(v.volume(), b.volume(), 1e-9));
    }

    #[test]
    fn relevant_vectors_match_facet_oracle(seed in any::<u64>(), n in dims()) {
        // moderately skewed inputs keep the facet oracle's box adequate
        let mut r = rng(seed);
        let (_, b) = if r.gen_bool(0.5) {
            generic_obtuse_with(&mut r, n, 1)
        } else {
            let red = reduce(&random_basis(&mut r, n, 20.0)).unwrap();
            (vec![], red.basis().transformed(&random_unimodular(&mut r, n, 1)).unwrap())
        };
        let fast: Vec<LatticeVector> = {
            let mut v: Vec<LatticeVector> = relevant_vectors(&b).unwrap().vectors().iter().map(|x| x.coeffs).collect();
            v.sort();
            v
        };
        prop_assert_eq!(fast, brute_relevant(&b, 5).unwrap());
    }

    #[test]
    fn rotation_invariance(seed in any::<u64>(), n in dims()) {
        let mut r = rng(seed);
        let b = random_basis(&mut r, n, 100.0);
        let q = rotation(&mut r, n);
        let rb = b.mapped(&q).unwrap();
        let (p1, p2) = (random_point(&mut r, n), random_point(&mut r, n));
        let d = min_image_distance(&b, &p1, &p2).unwrap();
        let dr = min_image_distance(&rb, &p1, &p2).unwrap();
        prop_assert!(rel_close(d.distance, dr.distance, 1e-10));
        prop_assert_eq!(copy_counts(&b, &b).unwrap().layers, copy_counts(&rb, &rb).unwrap().layers);
        prop_assert_eq!(relevant_vectors(&b).unwrap().pairs(), relevant_vectors(&rb).unwrap().pairs());
    }

    #[test]
    fn scale_equivariance(seed in any::<u64>(), n in dims(), s in 0.01f64..100.0) {
        let mut r = rng(seed);
        let b = random_basis(&mut r, n, 100.0);
        let sb = b.scaled(s).unwrap();
        let (p1, p2) = (random_point(&mut r, n), random_point(&mut r, n));
        let d = min_image_distance(&b, &p1, &p2).unwrap();
        let ds = min_image_distance(&sb, &p1, &p2).unwrap();
        prop_assert!(rel_close(ds.distance, s * d.distance, 1e-12));
        prop_assert_eq!(d.image, ds.image);
        prop_assert!(rel_close(voronoi_cell(&sb).unwrap().volume(), s.powi(n as i32) * b.volume(), 1e-9));
    }

    #[test]
    fn copy_block_is_sufficient(seed in any::<u64>(), n in dims()) {
        let mut r = rng(seed);
        let lattice = random_basis(&mut r, n, 30.0);
        let cell = reduce(&lattice).unwrap().basis().transformed(&random_unimodular(&mut r, n, 3)).unwrap();
        let cc = copy_counts(&cell, &lattice).unwrap();
        let m_max = *cc.layers.iter().max().unwrap();
        for _ in 0..8 {
            let (p1, p2) = (random_point(&mut r, n), random_point(&mut r, n));
            let big = brute_distance(&cell, &p1, &p2, m_max + 3).unwrap().distance;
            // minimize over exactly the copy-count block
            let mut best = f64::INFINITY;
            let m: Vec<i64> = cc.layers.iter().map(|&x| x as i64).collect();
            let m2 = if n == 3 { m[2] } else { 0 };
            for a in -m[0]..=m[0] {
                for b in -m[1]..=m[1] {
                    for c in -m2..=m2 {
                        let t = [a as f64, b as f64, c as f64];
                        let x: Vec<f64> = (0..n).map(|i| p2.coords()[i] + t[i] - p1.coords()[i]).collect();
                        let cart = cell.frac_to_cart(&FracPoint::new(&x).unwrap());
                        best = best.min(cart.norm());
                    }
                }
            }
            prop_assert!(rel_close(best, big, 1e-12), "block {} vs brute {}", best, big);
        }
    }

    #[test]
    fn distances_independent_of_basis(seed in any::<u64>(), n in dims()) {
        let mut r = rng(seed);
        let b = random_basis(&mut r, n, 100.0);
        let u = random_unimodular(&mut r, n, 5);
        let b2 = b.transformed(&u).unwrap();
        let pts: Vec<FracPoint> = (0..5).map(|_| random_point(&mut r, n)).collect();
        let pts2: Vec<FracPoint> = pts.iter().map(|p| recoordinatize(&u, p)).collect();
        let m1 = pairwise_distances(&PeriodicPointSet::new(b, pts).unwrap()).unwrap();
        let m2 = pairwise_distances(&PeriodicPointSet::new(b2, pts2).unwrap()).unwrap();
        for (row1, row2) in m1.iter().zip(&m2) {
            for (x, y) in row1.iter().zip(row2) {
                prop_assert!((x - y).abs() <= 1e-12 * x.max(1.0));
            }
        }
    }

    #[test]
    fn metric_axioms(seed in any::<u64>(), n in dims()) {
        let mut r = rng(seed);
        let b = random_basis(&mut r, n, 100.0);
        let engine = MinImage::new(&b).unwrap();
        let p: Vec<FracPoint> = (0..3).map(|_| random_point(&mut r, n)).collect();
        let d = |i: usize, j: usize| engine.distance(&p[i], &p[j]).unwrap().distance;
        prop_assert_eq!(d(0, 1), d(1, 0));
        prop_assert_eq!(d(0, 0), 0.0);
        let scale = d(0, 1).max(d(1, 2)).max(d(0, 2));
        prop_assert!(d(0, 2) <= d(0, 1) + d(1, 2) + 1e-12 * scale);
    }

    #[test]
    fn enumerate_is_stable_under_recoordinatization(seed in any::<u64>(), n in dims()) {
        let mut r = rng(seed);
        let b = random_basis(&mut r, n, 10.0);
        let b2 = b.transformed(&random_unimodular(&mut r, n, 5)).unwrap();
        let k1: Vec<CanonicalKey> = enumerate_ps(&b).unwrap().into_iter().map(|c| c.key).collect();
        let k2: Vec<CanonicalKey> = enumerate_ps(&b2).unwrap().into_iter().map(|c| c.key).collect();
        prop_assert_eq!(k1, k2);
    }

    #[test]
    fn candidates_are_primitive_and_sufficient(seed in any::<u64>(), n in dims()) {
        let b = random_basis(&mut rng(seed), n, 10.0);
        for c in enumerate_ps(&b).unwrap() {
            prop_assert!(rel_close(c.basis.volume(), b.volume(), 1e-9));
            prop_assert!(c.coeffs.is_unimodular());
            prop_assert!(is_3n_sufficient(&c.basis, &b).unwrap());
        }
    }
}

use rand::Rng;
