mod common;

use common::*;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use zonomon::Zonotope;

fn planar_zonotope() -> impl Strategy<Value = Zonotope> {
    (1usize..6)
        .prop_flat_map(|m| {
            (
                prop::collection::vec(-3.0..3.0f64, 2),
                prop::collection::vec(-1.5..1.5f64, 2 * m),
            )
        })
        .prop_map(|(c, g)| {
            let m = g.len() / 2;
            Zonotope::new(DVector::from_vec(c), DMatrix::from_vec(2, m, g)).unwrap()
        })
}

fn zonotope_in(n: usize, max_gens: usize) -> impl Strategy<Value = Zonotope> {
    (1..=max_gens)
        .prop_flat_map(move |m| {
            (
                prop::collection::vec(-3.0..3.0f64, n),
                prop::collection::vec(-1.0..1.0f64, n * m),
            )
        })
        .prop_map(move |(c, g)| {
            let m = g.len() / n;
            Zonotope::new(DVector::from_vec(c), DMatrix::from_vec(n, m, g)).unwrap()
        })
}

/// `d·c + Σ|d·g|` evaluated directly.
fn support_by_hand(z: &Zonotope, d: &DVector<f64>) -> f64 {
    let g = z.generators();
    d.dot(z.center())
        + (0..g.ncols())
            .map(|j| d.dot(&g.column(j)).abs())
            .sum::<f64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn affine_map_support_is_exact(
        z in planar_zonotope(),
        m in prop::collection::vec(-2.0..2.0f64, 4),
        b in prop::collection::vec(-2.0..2.0f64, 2),
        seed in any::<u64>(),
    ) {
        let m = DMatrix::from_row_slice(2, 2, &m);
        let b = DVector::from_vec(b);
        let image = z.affine_map(&m, &b).unwrap();
        let mut r = rng(seed);
        for _ in 0..32 {
            let d = random_unit_direction(&mut r, 2);
            // h(MZ + b, d) = h(Z, Mᵀd) + d·b
            let expected = support_by_hand(&z, &(m.transpose() * &d)) + d.dot(&b);
            prop_assert!((image.support(&d).unwrap() - expected).abs() <= 1e-9);
        }
    }

    #[test]
    fn minkowski_sum_support_is_exact(
        a in planar_zonotope(),
        b in planar_zonotope(),
        seed in any::<u64>(),
    ) {
        let s = a.minkowski_sum(&b).unwrap();
        let mut r = rng(seed);
        for _ in 0..32 {
            let d = random_unit_direction(&mut r, 2);
            let expected = support_by_hand(&a, &d) + support_by_hand(&b, &d);
            prop_assert!((s.support(&d).unwrap() - expected).abs() <= 1e-9);
        }
    }

    #[test]
    fn interval_hull_contains_every_point(z in zonotope_in(3, 8), seed in any::<u64>()) {
        let hull = z.interval_hull();
        let (lo, hi) = hull_by_hand(&z);
        for i in 0..3 {
            prop_assert!((hull.lower()[i] - lo[i]).abs() <= 1e-12);
            prop_assert!((hull.upper()[i] - hi[i]).abs() <= 1e-12);
        }
        let mut r = rng(seed);
        for _ in 0..1000 {
            let p = z.point_at(&random_xi(&mut r, z.num_generators())).unwrap();
            for i in 0..3 {
                prop_assert!(lo[i] - 1e-12 <= p[i] && p[i] <= hi[i] + 1e-12);
            }
        }
    }

    #[test]
    fn order_reduce_contains_input(z in zonotope_in(2, 12), max in 2usize..6, seed in any::<u64>()) {
        let reduced = z.order_reduce(max).unwrap();
        prop_assert!(reduced.num_generators() <= max);
        let mut r = rng(seed);
        for _ in 0..1000 {
            let p = z.point_at(&random_xi(&mut r, z.num_generators())).unwrap();
            prop_assert!(planar_contains(&reduced, (p[0], p[1])));
        }
    }

    #[test]
    fn intersects_is_symmetric(a in planar_zonotope(), b in planar_zonotope()) {
        prop_assert_eq!(a.intersects(&b).unwrap(), b.intersects(&a).unwrap());
    }
}

#[test]
fn order_reduce_contains_input_in_higher_dimensions() {
    let mut r = rng(11);
    for _ in 0..20 {
        let z = random_zonotope(&mut r, 4, 14, 2.0);
        let reduced = z.order_reduce(6).unwrap();
        for _ in 0..1000 {
            let p = z.point_at(&random_xi(&mut r, 14)).unwrap();
            assert!(reduced.contains_point(&p).unwrap());
        }
    }
}

#[test]
fn intersects_matches_planar_oracle() {
    let pairs = oracle_pairs(2024, 200);
    let mut disagreements = 0;
    let mut overlapping = 0;
    for (a, b, expected) in &pairs {
        // The ξ grid is a one-sided check: any point it finds is a witness.
        if grid_finds_overlap(a, b, 21) {
            assert!(*expected, "grid found a common point the oracle missed");
        }
        overlapping += usize::from(*expected);
        if a.intersects(b).unwrap() != *expected {
            disagreements += 1;
        }
    }
    assert_eq!(disagreements, 0);
    assert!(
        overlapping > 40 && overlapping < 160,
        "unbalanced sample: {overlapping}"
    );
}
