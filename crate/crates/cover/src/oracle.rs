//! Independent checks: finite-difference derivatives of G, Monte-Carlo
//! covered area, and the two-/three-ball closed-form area families.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::covering::{eval_g, eval_grad, SymMatrix};
use crate::error::Error;
use crate::geometry::{build_partition, Configuration, Point2, Region};

fn g_at(region: &Region, v: &[f64]) -> f64 {
    let cfg = Configuration::from_slice(v);
    let p = build_partition(region, &cfg).expect("partition");
    eval_g(region, &p.book, &cfg)
}

fn grad_at(region: &Region, v: &[f64]) -> Vec<f64> {
    let cfg = Configuration::from_slice(v);
    let p = build_partition(region, &cfg).expect("partition");
    eval_grad(&p.book, &cfg)
}

/// Central-difference gradient of G with step h.
pub fn fd_gradient(region: &Region, cfg: &Configuration, h: f64) -> Vec<f64> {
    let v0 = cfg.to_vec();
    let mut g = vec![0.0; v0.len()];
    for k in 0..v0.len() {
        let mut vp = v0.clone();
        let mut vm = v0.clone();
        vp[k] += h;
        vm[k] -= h;
        g[k] = (g_at(region, &vp) - g_at(region, &vm)) / (2.0 * h);
    }
    g
}

/// Central-difference Hessian (differences of the analytic gradient),
/// symmetrized as (M + Mᵀ)/2.
pub fn fd_hessian(region: &Region, cfg: &Configuration, h: f64) -> SymMatrix {
    let v0 = cfg.to_vec();
    let n = v0.len();
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut vp = v0.clone();
        let mut vm = v0.clone();
        vp[k] += h;
        vm[k] -= h;
        let (gp, gm) = (grad_at(region, &vp), grad_at(region, &vm));
        cols.push((0..n).map(|r| (gp[r] - gm[r]) / (2.0 * h)).collect());
    }
    let mut out = SymMatrix::zeros(n);
    for r in 0..n {
        for c in 0..=r {
            out.add(r, c, 0.5 * (cols[c][r] + cols[r][c]));
        }
    }
    out
}

/// Monte-Carlo estimate of Vol(A ∩ Ω): per-polygon stratified uniform
/// sampling of the covered indicator. Returns (estimate, standard error).
pub fn mc_area(region: &Region, cfg: &Configuration, samples: usize, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vol = region.volume();
    let r2 = cfg.radius * cfg.radius;
    let p = region.polygons().len();
    // Largest-remainder allocation proportional to polygon area.
    let mut alloc: Vec<usize> = region
        .polygons()
        .iter()
        .map(|poly| ((samples as f64) * poly.signed_area() / vol).floor() as usize)
        .collect();
    let mut rest: usize = samples - alloc.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&a, &b| {
        let fa = (samples as f64) * region.polygons()[a].signed_area() / vol;
        let fb = (samples as f64) * region.polygons()[b].signed_area() / vol;
        (fb - fb.floor()).total_cmp(&(fa - fa.floor()))
    });
    for &j in &order {
        if rest == 0 {
            break;
        }
        alloc[j] += 1;
        rest -= 1;
    }

    let mut estimate = 0.0;
    let mut variance = 0.0;
    for (j, poly) in region.polygons().iter().enumerate() {
        let n = alloc[j].max(1);
        let (lo, hi) = poly.bounding_box();
        let mut covered = 0usize;
        for _ in 0..n {
            let z = loop {
                let z = Point2::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
                if poly.contains(z, 0.0) {
                    break z;
                }
            };
            if cfg.centers.iter().any(|&x| (z - x).norm_sq() <= r2) {
                covered += 1;
            }
        }
        let phat = covered as f64 / n as f64;
        let area = poly.signed_area();
        estimate += area * phat;
        variance += area * area * phat * (1.0 - phat) / n as f64;
    }
    (estimate, variance.sqrt())
}

/// Area of the intersection of two balls of radius r at center distance d.
pub fn lens_area(r: f64, d: f64) -> Result<f64, Error> {
    if !(r > 0.0) || !(0.0..=2.0 * r).contains(&d) {
        return Err(Error::Domain(format!("lens_area requires 0 <= d <= 2r, got r={r}, d={d}")));
    }
    Ok(2.0 * r * r * (d / (2.0 * r)).acos() - d * (r * r - d * d / 4.0).sqrt())
}

/// Area of the triple intersection of three balls of radius r centered at the
/// vertices of an equilateral triangle with the given side (a circular
/// triangle): inner equilateral triangle plus three circular segments.
pub fn reuleaux_area(r: f64, side: f64) -> Result<f64, Error> {
    if !(r > 0.0) || !(0.0..=3.0_f64.sqrt() * r).contains(&side) {
        return Err(Error::Domain(format!(
            "reuleaux_area requires 0 <= side <= sqrt(3) r, got r={r}, side={side}"
        )));
    }
    let h = (r * r - side * side / 4.0).sqrt();
    let rho = h - side / (2.0 * 3.0_f64.sqrt());
    let a = 3.0_f64.sqrt() * rho;
    let phi = (a / (2.0 * r)).asin();
    Ok(3.0_f64.sqrt() / 4.0 * a * a + 3.0 * r * r * (phi - phi.sin() * phi.cos()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::eval_hess;
    use crate::geometry::ConvexPolygon;
    use std::f64::consts::PI;

    fn square_region(x0: f64, y0: f64, s: f64) -> Region {
        Region::new(
            vec![ConvexPolygon::new_unchecked(vec![
                Point2::new(x0, y0),
                Point2::new(x0 + s, y0),
                Point2::new(x0 + s, y0 + s),
                Point2::new(x0, y0 + s),
            ])],
            None,
        )
        .unwrap()
    }

    #[test]
    fn fd_gradient_interior_ball() {
        let region = square_region(0.0, 0.0, 10.0);
        let cfg = Configuration::new(vec![Point2::new(5.0, 5.0)], 1.5);
        let g = fd_gradient(&region, &cfg, 1e-6);
        assert!(g[0].abs() < 1e-8 && g[1].abs() < 1e-8);
        assert!((g[2] + 2.0 * PI * 1.5).abs() < 1e-7);
    }

    #[test]
    fn fd_matches_analytic_on_overlapping_pair() {
        let region = square_region(0.0, 0.0, 3.0);
        let cfg = Configuration::new(vec![Point2::new(1.0, 1.3), Point2::new(1.9, 1.8)], 0.8);
        let p = build_partition(&region, &cfg).unwrap();
        let grad = eval_grad(&p.book, &cfg);
        let fd = fd_gradient(&region, &cfg, 1e-6);
        for k in 0..grad.len() {
            assert!(
                (grad[k] - fd[k]).abs() <= 1e-6 * (1.0 + grad[k].abs()),
                "k={k}: {} vs {}",
                grad[k],
                fd[k]
            );
        }
        let (hess, _) = eval_hess(&region, &p.book, &cfg);
        let fdh = fd_hessian(&region, &cfg, 1e-5);
        for r in 0..grad.len() {
            for c in 0..=r {
                let (a, b) = (hess.get(r, c), fdh.get(r, c));
                assert!((a - b).abs() <= 1e-5 * (1.0 + a.abs()), "({r},{c}): {a} vs {b}");
            }
        }
    }

    #[test]
    fn fd_order_two_convergence() {
        let region = square_region(0.0, 0.0, 3.0);
        let cfg = Configuration::new(vec![Point2::new(1.0, 1.3), Point2::new(1.9, 1.8)], 0.8);
        let p = build_partition(&region, &cfg).unwrap();
        let grad = eval_grad(&p.book, &cfg);
        let err = |h: f64| -> f64 {
            fd_gradient(&region, &cfg, h)
                .iter()
                .zip(&grad)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        };
        let (e1, e2) = (err(1e-3), err(5e-4));
        assert!(e2 < e1 / 3.0, "e(h)={e1}, e(h/2)={e2}");
    }

    #[test]
    fn mc_area_fig10() {
        let region = square_region(0.0, 0.0, 3.0);
        let cfg = Configuration::new(vec![Point2::new(0.0, 3.0), Point2::new(1.2, 1.7)], 1.0);
        let (est, se) = mc_area(&region, &cfg, 1_000_000, 42);
        assert!((est - 3.781718647855564).abs() < 4.0 * se, "est={est}, se={se}");
    }

    #[test]
    fn mc_area_trivial_cases() {
        let region = square_region(0.0, 0.0, 1.0);
        let all = Configuration::new(vec![Point2::new(0.5, 0.5)], 2.0);
        let (est, se) = mc_area(&region, &all, 10_000, 7);
        assert_eq!(est, 1.0);
        assert_eq!(se, 0.0);
        let none = Configuration::new(vec![Point2::new(9.0, 9.0)], 1.0);
        let (est, _) = mc_area(&region, &none, 10_000, 7);
        assert_eq!(est, 0.0);
    }

    #[test]
    fn closed_form_boundary_values() {
        assert!((lens_area(1.3, 0.0).unwrap() - PI * 1.69).abs() < 1e-14);
        assert!(lens_area(1.0, 2.0).unwrap().abs() < 1e-14);
        assert!(reuleaux_area(1.0, 3.0_f64.sqrt()).unwrap().abs() < 1e-14);
        assert!(lens_area(1.0, 2.5).is_err());
        assert!(reuleaux_area(1.0, 2.0).is_err());
    }

    #[test]
    fn reuleaux_full_overlap() {
        // side → 0: the triple intersection tends to the full disk.
        let a = reuleaux_area(1.0, 1e-9).unwrap();
        assert!((a - PI).abs() < 1e-8);
    }
}
