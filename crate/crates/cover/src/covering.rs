//! Exact evaluation of the uncovered area G(x,r) = Vol(A) − Vol(A ∩ Ω(x,r))
//! and its first and second derivatives from a per-ball arc book.
//!
//! Variable ordering is (x_1x, x_1y, …, x_mx, x_my, r) throughout.

use std::f64::consts::{PI, TAU};

use crate::error::Error;
use crate::geometry::{build_partition, wrap_angle, ArcBook, Configuration, Region};

/// Symmetric matrix stored as its lower triangle, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, data: vec![0.0; n * (n + 1) / 2] }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn idx(r: usize, c: usize) -> usize {
        debug_assert!(r >= c);
        r * (r + 1) / 2 + c
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let (r, c) = if r >= c { (r, c) } else { (c, r) };
        self.data[Self::idx(r, c)]
    }

    /// Adds into the lower-triangle entry (r ≥ c).
    pub fn add(&mut self, r: usize, c: usize, v: f64) {
        self.data[Self::idx(r, c)] += v;
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|r| (0..self.n).map(|c| self.get(r, c)).collect()).collect()
    }
}

/// Counts of denominators that fell below ε_deg during the Hessian assembly
/// (values are still returned as computed).
#[derive(Debug, Clone, Copy, Default)]
pub struct HessDiagnostics {
    pub near_singular: usize,
}

#[derive(Debug, Clone)]
pub struct DerivativeBundle {
    pub g: f64,
    pub grad: Vec<f64>,
    pub hess: SymMatrix,
    pub diagnostics: HessDiagnostics,
}

/// Algorithm 1: G(x,r) = Vol(A) − Σ Vol(S_ij) via Green's theorem over the
/// edge and arc books.
pub fn eval_g(region: &Region, book: &ArcBook, cfg: &Configuration) -> f64 {
    let r = cfg.radius;
    let mut gamma = 0.0;
    for i in 0..book.m() {
        if book.circle[i] {
            gamma += PI * r * r;
            continue;
        }
        for &(v, w) in &book.edges[i] {
            gamma += 0.5 * (v.x + w.x) * (w.y - v.y);
        }
        let x1 = cfg.centers[i].x;
        for arc in &book.arcs[i] {
            let (tv, tw) = (arc.theta_v, arc.theta_w);
            gamma += x1 * r * (tw.sin() - tv.sin())
                + 0.5 * r * r * (tw - tv + tw.sin() * tw.cos() - tv.sin() * tv.cos());
        }
    }
    region.volume() - gamma
}

/// Algorithm 2: ∇G in (x…, r) ordering.
pub fn eval_grad(book: &ArcBook, cfg: &Configuration) -> Vec<f64> {
    let m = book.m();
    let r = cfg.radius;
    let mut g = vec![0.0; 2 * m + 1];
    for i in 0..m {
        if book.circle[i] {
            g[2 * m] -= TAU * r;
            continue;
        }
        for arc in &book.arcs[i] {
            let (tv, tw) = (arc.theta_v, arc.theta_w);
            g[2 * m] -= r * (tw - tv);
            g[2 * i] += r * (tv.sin() - tw.sin());
            g[2 * i + 1] += r * (tw.cos() - tv.cos());
        }
    }
    g
}

/// Algorithm 3: lower triangle of ∇²G in (x…, r) ordering.
pub fn eval_hess(
    region: &Region,
    book: &ArcBook,
    _cfg: &Configuration,
) -> (SymMatrix, HessDiagnostics) {
    let m = book.m();
    let eps_deg = region.eps_deg();
    let rr = 2 * m; // index of the radius row/column
    let mut h = SymMatrix::zeros(2 * m + 1);
    let mut diag = HessDiagnostics::default();

    for i in 0..m {
        if book.circle[i] {
            h.add(rr, rr, -TAU);
            continue;
        }
        for arc in &book.arcs[i] {
            let (tv, tw) = (arc.theta_v, arc.theta_w);
            h.add(2 * i, 2 * i, (tv - tw).sin() * (tv + tw).cos());
            h.add(2 * i + 1, 2 * i, tw.cos() * tw.cos() - tv.cos() * tv.cos());
            h.add(2 * i + 1, 2 * i + 1, (tw - tv).sin() * (tv + tw).cos());
            h.add(rr, 2 * i, tv.sin() - tw.sin());
            h.add(rr, 2 * i + 1, tw.cos() - tv.cos());
            h.add(rr, rr, tv - tw);

            for (z, sign) in [(&arc.v, -1.0), (&arc.w, 1.0)] {
                let (ct, st) = (z.theta.cos(), z.theta.sin());
                if let Some(nu) = z.nu_a {
                    let den = -nu.x * st + nu.y * ct; // ν_A · τ_i
                    if den.abs() < eps_deg {
                        diag.near_singular += 1;
                    }
                    // Opposite endpoint convention to the L(z) branch: the
                    // boundary-crossing term enters with +α at v and −α at w
                    // (checked against finite differences and the closed-form
                    // −r Θ'(r) of a centered ball in a square).
                    let alpha = (nu.x * ct + nu.y * st) / den;
                    h.add(2 * i, 2 * i, sign * alpha * ct * ct);
                    h.add(2 * i + 1, 2 * i, sign * alpha * st * ct);
                    h.add(2 * i + 1, 2 * i + 1, sign * alpha * st * st);
                    h.add(rr, 2 * i, sign * alpha * ct);
                    h.add(rr, 2 * i + 1, sign * alpha * st);
                    h.add(rr, rr, sign * alpha);
                }
                for &(l, vartheta) in &z.l {
                    let delta = wrap_angle(vartheta - z.theta);
                    let (sd, cd) = (delta.sin(), delta.cos());
                    if sd.abs() < eps_deg {
                        diag.near_singular += 1;
                    }
                    let cot = cd / sd;
                    h.add(2 * i, 2 * i, sign * cot * ct * ct);
                    h.add(2 * i + 1, 2 * i, sign * cot * st * ct);
                    h.add(2 * i + 1, 2 * i + 1, sign * cot * st * st);
                    h.add(rr, 2 * i, sign * (cot * ct - ct / sd));
                    h.add(rr, 2 * i + 1, sign * (cot * st - st / sd));
                    h.add(rr, rr, sign * (cd - 1.0) / sd);
                    if l > i {
                        let (cv, sv) = (vartheta.cos(), vartheta.sin());
                        let f = -sign / sd;
                        h.add(2 * l, 2 * i, f * ct * cv);
                        h.add(2 * l, 2 * i + 1, f * st * cv);
                        h.add(2 * l + 1, 2 * i, f * ct * sv);
                        h.add(2 * l + 1, 2 * i + 1, f * st * sv);
                    }
                }
            }
        }
    }
    (h, diag)
}

/// Builds the partition and evaluates G, ∇G, ∇²G in one call.
pub fn eval_bundle(region: &Region, cfg: &Configuration) -> Result<DerivativeBundle, Error> {
    let partition = build_partition(region, cfg)?;
    let g = eval_g(region, &partition.book, cfg);
    let grad = eval_grad(&partition.book, cfg);
    let (hess, diagnostics) = eval_hess(region, &partition.book, cfg);
    Ok(DerivativeBundle { g, grad, hess, diagnostics })
}
