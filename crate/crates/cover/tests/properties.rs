//! Property-based invariants of the exact evaluation.

use cover::covering::eval_bundle;
use cover::geometry::{
    build_partition, screen_nondegenerate, Configuration, ConvexPolygon, Point2, Region,
};
use cover::oracle::{fd_gradient, mc_area};
use proptest::prelude::*;

fn square(x0: f64, y0: f64, s: f64) -> Region {
    let p = ConvexPolygon::new(
        vec![
            Point2::new(x0, y0),
            Point2::new(x0 + s, y0),
            Point2::new(x0 + s, y0 + s),
            Point2::new(x0, y0 + s),
        ],
        1e-12 * s,
    )
    .unwrap();
    Region::new(vec![p], None).unwrap()
}

fn centers_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-0.4..1.4_f64, -0.4..1.4_f64), 1..=4)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    /// G is equivariant under uniform scaling: areas pick up a factor s^2.
    #[test]
    fn g_scales_quadratically(
        centers in centers_strategy(),
        r in 0.15..0.9_f64,
        s in 0.3..4.0_f64,
    ) {
        let base = square(0.0, 0.0, 1.0);
        let cfg = Configuration::new(
            centers.iter().map(|&(x, y)| Point2::new(x, y)).collect(),
            r,
        );
        prop_assume!(screen_nondegenerate(&base, &cfg).ok);
        let g0 = eval_bundle(&base, &cfg).unwrap().g;

        let scaled_region = square(0.0, 0.0, s);
        let scaled_cfg = Configuration::new(
            centers.iter().map(|&(x, y)| Point2::new(s * x, s * y)).collect(),
            s * r,
        );
        let g1 = eval_bundle(&scaled_region, &scaled_cfg).unwrap().g;
        prop_assert!((g1 - s * s * g0).abs() <= 1e-9 * (1.0 + g1.abs()));
    }

    /// G and its gradient are translation invariant.
    #[test]
    fn g_translation_invariant(
        centers in centers_strategy(),
        r in 0.15..0.9_f64,
        dx in -5.0..5.0_f64,
        dy in -5.0..5.0_f64,
    ) {
        let base = square(0.0, 0.0, 1.0);
        let cfg = Configuration::new(
            centers.iter().map(|&(x, y)| Point2::new(x, y)).collect(),
            r,
        );
        prop_assume!(screen_nondegenerate(&base, &cfg).ok);
        let b0 = eval_bundle(&base, &cfg).unwrap();

        let moved = square(dx, dy, 1.0);
        let moved_cfg = Configuration::new(
            centers.iter().map(|&(x, y)| Point2::new(x + dx, y + dy)).collect(),
            r,
        );
        let b1 = eval_bundle(&moved, &moved_cfg).unwrap();
        prop_assert!((b0.g - b1.g).abs() <= 1e-10);
        for (a, b) in b0.grad.iter().zip(&b1.grad) {
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }

    /// The gradient agrees with central finite differences away from
    /// degeneracies.
    #[test]
    fn gradient_matches_finite_differences(
        centers in centers_strategy(),
        r in 0.15..0.9_f64,
    ) {
        let region = square(0.0, 0.0, 1.0);
        let cfg = Configuration::new(
            centers.iter().map(|&(x, y)| Point2::new(x, y)).collect(),
            r,
        );
        prop_assume!(screen_nondegenerate(&region, &cfg).ok);
        let bundle = eval_bundle(&region, &cfg).unwrap();
        let fd = fd_gradient(&region, &cfg, 1e-6);
        let scale = bundle.grad.iter().fold(1.0_f64, |a, &v| a.max(v.abs()));
        for (a, b) in bundle.grad.iter().zip(&fd) {
            prop_assert!((a - b).abs() <= 1e-5 * scale);
        }
    }

    /// The Hessian is stored (and reconstructed) symmetric.
    #[test]
    fn hessian_symmetric(
        centers in centers_strategy(),
        r in 0.15..0.9_f64,
    ) {
        let region = square(0.0, 0.0, 1.0);
        let cfg = Configuration::new(
            centers.iter().map(|&(x, y)| Point2::new(x, y)).collect(),
            r,
        );
        prop_assume!(screen_nondegenerate(&region, &cfg).ok);
        let h = eval_bundle(&region, &cfg).unwrap().hess;
        let n = h.order();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(h.get(i, j).to_bits(), h.get(j, i).to_bits());
            }
        }
    }

    /// Evaluation is bit-for-bit deterministic.
    #[test]
    fn evaluation_deterministic(
        centers in centers_strategy(),
        r in 0.15..0.9_f64,
    ) {
        let region = square(0.0, 0.0, 1.0);
        let cfg = Configuration::new(
            centers.iter().map(|&(x, y)| Point2::new(x, y)).collect(),
            r,
        );
        prop_assume!(build_partition(&region, &cfg).is_ok());
        let a = eval_bundle(&region, &cfg).unwrap();
        let b = eval_bundle(&region, &cfg).unwrap();
        prop_assert_eq!(a.g.to_bits(), b.g.to_bits());
        let ga: Vec<u64> = a.grad.iter().map(|v| v.to_bits()).collect();
        let gb: Vec<u64> = b.grad.iter().map(|v| v.to_bits()).collect();
        prop_assert_eq!(ga, gb);
    }
}

/// Covered area from the partition matches Monte-Carlo integration (few
/// cases; the acceptance suite covers all instances).
#[test]
fn partition_area_matches_monte_carlo() {
    let region = square(0.0, 0.0, 1.0);
    for (k, &(x0, y0, x1, y1, r)) in [
        (0.3, 0.4, 0.8, 0.6, 0.35),
        (0.1, 0.1, 0.9, 0.9, 0.5),
        (-0.2, 0.5, 0.5, 0.5, 0.27),
    ]
    .iter()
    .enumerate()
    {
        let cfg = Configuration::new(vec![Point2::new(x0, y0), Point2::new(x1, y1)], r);
        let part = build_partition(&region, &cfg).unwrap();
        let exact = part.covered_area(&cfg);
        let (mc, se) = mc_area(&region, &cfg, 400_000, k as u64);
        assert!(
            (exact - mc).abs() <= 4.0 * se.max(1e-12),
            "case {k}: exact {exact} vs mc {mc} (se {se})"
        );
    }
}
