use std::f64::consts::TAU;

use super::ball::{intersect_polygon_ball, BallChain, PieceKind};
use super::clip::{bisectors_of, voronoi_neighbors, EdgeLabel, LabeledPolygon};
use super::point::{unit_tangent, wrap_angle, Point2};
use super::region::{Configuration, Region};
use crate::error::Error;

/// Angular tolerance for matching shared arc endpoints during merging.
const MERGE_TOL: f64 = 1e-10;

/// Annotation of one arc endpoint z on ∂B(x_i,r).
#[derive(Debug, Clone)]
pub struct ArcEndpoint {
    pub point: Point2,
    /// θ_z: angular coordinate of z − x_i.
    pub theta: f64,
    pub on_boundary_a: bool,
    /// Outward unit normal ν_A(z); absent when z sits on a polygon vertex of
    /// ∂A (non-differentiable corner, flagged by screening).
    pub nu_a: Option<Point2>,
    /// L(z): balls ℓ ≠ i with z ∈ ∂B(x_ℓ,r), each with its angle ϑ_z of z − x_ℓ.
    pub l: Vec<(usize, f64)>,
}

impl ArcEndpoint {
    /// True when the endpoint carries no boundary information, i.e. it lies
    /// on an interior edge of the polygon decomposition and the adjacent
    /// arcs must be merged.
    pub fn is_plain(&self) -> bool {
        !self.on_boundary_a && self.l.is_empty()
    }
}

/// Maximal arc of 𝔸_i with θ_w ∈ (θ_v, θ_v + 2π].
#[derive(Debug, Clone)]
pub struct Arc {
    pub ball: usize,
    pub theta_v: f64,
    pub theta_w: f64,
    pub v: ArcEndpoint,
    pub w: ArcEndpoint,
}

/// Per-ball arc/edge books: the sole input of Algorithms 1-3.
#[derive(Debug, Clone)]
pub struct ArcBook {
    /// 𝔸_i: maximal merged arcs per ball.
    pub arcs: Vec<Vec<Arc>>,
    /// Circle(𝔸_i): the whole circle ∂B(x_i,r) lies on ∂Ω ∩ A.
    pub circle: Vec<bool>,
    /// 𝔼_i: straight boundary pieces of the cells S_ij, per ball.
    pub edges: Vec<Vec<(Point2, Point2)>>,
    /// 𝒦: pairs (i,j) with S_ij of positive area.
    pub k_pairs: Vec<(usize, usize)>,
}

impl ArcBook {
    pub fn m(&self) -> usize {
        self.circle.len()
    }

    /// 𝒦_{B_i}: polygons j receiving a piece of ball i.
    pub fn polys_of_ball(&self, i: usize) -> Vec<usize> {
        self.k_pairs.iter().filter(|&&(b, _)| b == i).map(|&(_, j)| j).collect()
    }

    /// 𝒦_{A_j}: balls i contributing a piece to polygon j.
    pub fn balls_of_poly(&self, j: usize) -> Vec<usize> {
        self.k_pairs.iter().filter(|&&(_, p)| p == j).map(|&(b, _)| b).collect()
    }
}

/// One curvilinear piece S_ij = A_j ∩ V_i ∩ B̄(x_i,r).
#[derive(Debug, Clone)]
pub struct CellPiece {
    pub ball: usize,
    pub poly: usize,
    pub chain: BallChain,
}

#[derive(Debug, Clone)]
pub struct Partition {
    pub pieces: Vec<CellPiece>,
    pub book: ArcBook,
}

impl Partition {
    pub fn covered_area(&self, cfg: &Configuration) -> f64 {
        self.pieces
            .iter()
            .map(|p| p.chain.area(cfg.centers[p.ball], cfg.radius))
            .sum()
    }
}

/// Degeneracy screening margins (Assumptions 4.1/4.3).
#[derive(Debug, Clone)]
pub struct DiagnosticsReport {
    /// min over ball pairs of |‖x_i − x_ℓ‖ − 2r|.
    pub min_tangency_margin: f64,
    /// min over ball pairs of ‖x_i − x_ℓ‖.
    pub min_center_distance: f64,
    /// min over arc endpoints of |τ_i · ν_{−i}|.
    pub min_transversality: f64,
    /// Distinct ball-ball intersection points lying within ε_deg of a third
    /// circle.
    pub near_triple_count: usize,
    /// Arc endpoints within ε_geo of a polygon vertex of ∂A.
    pub near_vertex_count: usize,
    pub ok: bool,
}

/// A_j ∩ V_i as a labeled polygon (None when empty).
pub(crate) fn cell_polygon(
    region: &Region,
    centers: &[Point2],
    i: usize,
    j: usize,
    neighbors: &[usize],
) -> Option<LabeledPolygon> {
    let eps = region.eps_geo();
    let mut cell =
        LabeledPolygon::from_region_polygon(&region.polygons()[j], &region.boundary_flags()[j]);
    for hp_and_l in bisectors_of(centers, i, neighbors).iter().zip(neighbors) {
        let (hp, &other) = hp_and_l;
        cell = cell.clip(hp, EdgeLabel::Bisector { other }, eps)?;
    }
    Some(cell)
}

/// Builds the Voronoi-restricted partition {S_ij} of A ∩ Ω(x,r) together with
/// the merged per-ball arc book.
pub fn build_partition(region: &Region, cfg: &Configuration) -> Result<Partition, Error> {
    let eps = region.eps_geo();
    let m = cfg.m();
    let r = cfg.radius;
    let neighbors = voronoi_neighbors(&cfg.centers, eps)?;
    let boundary_vertices = region.boundary_vertices();

    let mut pieces = Vec::new();
    let mut raw: Vec<Vec<Arc>> = vec![Vec::new(); m];
    let mut circle = vec![false; m];
    let mut edges: Vec<Vec<(Point2, Point2)>> = vec![Vec::new(); m];
    let mut k_pairs = Vec::new();

    for i in 0..m {
        for j in 0..region.polygons().len() {
            let Some(cell) = cell_polygon(region, &cfg.centers, i, j, &neighbors[i]) else {
                continue;
            };
            let chain = intersect_polygon_ball(&cell, cfg.centers[i], r, eps);
            if chain.is_empty() && !chain.full_ball {
                continue;
            }
            k_pairs.push((i, j));
            if chain.full_ball {
                circle[i] = true;
            } else {
                let n = chain.pieces.len();
                for k in 0..n {
                    let piece = &chain.pieces[k];
                    let next = &chain.pieces[(k + 1) % n];
                    match piece.kind {
                        PieceKind::Segment => edges[i].push((piece.start, next.start)),
                        PieceKind::Arc => raw[i].push(raw_arc(
                            i,
                            cfg,
                            piece.start,
                            piece.label,
                            next.start,
                            next.label,
                            &boundary_vertices,
                            eps,
                        )),
                    }
                }
            }
            pieces.push(CellPiece { ball: i, poly: j, chain });
        }
    }

    let mut arcs: Vec<Vec<Arc>> = Vec::with_capacity(m);
    for i in 0..m {
        if circle[i] {
            arcs.push(Vec::new());
            continue;
        }
        let (merged, full) = merge_arcs(std::mem::take(&mut raw[i]));
        circle[i] = full;
        arcs.push(merged);
    }

    Ok(Partition { pieces, book: ArcBook { arcs, circle, edges, k_pairs } })
}

#[allow(clippy::too_many_arguments)]
fn raw_arc(
    i: usize,
    cfg: &Configuration,
    v: Point2,
    v_label: EdgeLabel,
    w: Point2,
    w_label: EdgeLabel,
    boundary_vertices: &[Point2],
    eps: f64,
) -> Arc {
    let x = cfg.centers[i];
    let theta_v = (v - x).angle();
    let mut theta_w = (w - x).angle();
    if theta_w <= theta_v + MERGE_TOL {
        theta_w += TAU;
    }
    Arc {
        ball: i,
        theta_v,
        theta_w,
        v: annotate(cfg, v, theta_v, v_label, boundary_vertices, eps),
        w: annotate(cfg, w, theta_w, w_label, boundary_vertices, eps),
    }
}

fn annotate(
    cfg: &Configuration,
    z: Point2,
    theta: f64,
    label: EdgeLabel,
    boundary_vertices: &[Point2],
    eps: f64,
) -> ArcEndpoint {
    match label {
        EdgeLabel::Poly { normal: Some(nu) } => {
            // A corner of ∂A is non-differentiable: keep the contact flag but
            // drop ν_A so derivative formulas skip its terms.
            let on_vertex = boundary_vertices.iter().any(|&q| q.dist(z) < eps);
            ArcEndpoint {
                point: z,
                theta,
                on_boundary_a: true,
                nu_a: (!on_vertex).then_some(nu),
                l: Vec::new(),
            }
        }
        EdgeLabel::Poly { normal: None } => {
            ArcEndpoint { point: z, theta, on_boundary_a: false, nu_a: None, l: Vec::new() }
        }
        EdgeLabel::Bisector { other } => {
            let vartheta = (z - cfg.centers[other]).angle();
            ArcEndpoint {
                point: z,
                theta,
                on_boundary_a: false,
                nu_a: None,
                l: vec![(other, vartheta)],
            }
        }
    }
}

fn angle_close(a: f64, b: f64, tol: f64) -> bool {
    wrap_angle(a - b).abs() < tol
}

/// Merges consecutive raw arcs sharing a plain endpoint (an endpoint on an
/// interior edge of the decomposition, neither on ∂A nor on another circle)
/// into maximal arcs; reports whether they close into the full circle.
fn merge_arcs(mut raw: Vec<Arc>) -> (Vec<Arc>, bool) {
    if raw.is_empty() {
        return (Vec::new(), false);
    }
    raw.sort_by(|a, b| a.theta_v.total_cmp(&b.theta_v));
    let mut merged: Vec<Arc> = Vec::with_capacity(raw.len());
    for a in raw {
        if let Some(last) = merged.last_mut() {
            if angle_close(last.theta_w, a.theta_v, MERGE_TOL)
                && last.w.is_plain()
                && a.v.is_plain()
            {
                last.theta_w += a.theta_w - a.theta_v;
                last.w = a.w;
                continue;
            }
        }
        merged.push(a);
    }
    if merged.len() >= 2 {
        let first_v = merged[0].theta_v;
        let last = merged.last().unwrap();
        if angle_close(last.theta_w, first_v, MERGE_TOL)
            && last.w.is_plain()
            && merged[0].v.is_plain()
        {
            let first = merged.remove(0);
            let last = merged.last_mut().unwrap();
            last.theta_w += first.theta_w - first.theta_v;
            last.w = first.w;
        }
    }
    if merged.len() == 1
        && merged[0].theta_w - merged[0].theta_v >= TAU - MERGE_TOL
        && merged[0].v.is_plain()
        && merged[0].w.is_plain()
    {
        return (Vec::new(), true);
    }
    (merged, false)
}

/// Degeneracy screening per Assumptions 4.1/4.3: tangent or coincident ball
/// pairs, non-transversal boundary crossings, near-triple circle
/// intersections, and arc endpoints at polygon vertices of ∂A.
pub fn screen_nondegenerate(region: &Region, cfg: &Configuration) -> DiagnosticsReport {
    let eps_deg = region.eps_deg();
    let eps_geo = region.eps_geo();
    let m = cfg.m();
    let r = cfg.radius;

    let mut min_center_distance = f64::INFINITY;
    let mut min_tangency_margin = f64::INFINITY;
    for i in 0..m {
        for l in (i + 1)..m {
            let d = cfg.centers[i].dist(cfg.centers[l]);
            min_center_distance = min_center_distance.min(d);
            min_tangency_margin = min_tangency_margin.min((d - 2.0 * r).abs());
        }
    }

    let mut min_transversality = f64::INFINITY;
    let mut near_vertex_count = 0usize;
    if min_center_distance > eps_geo {
        if let Ok(partition) = build_partition(region, cfg) {
            let boundary_vertices = region.boundary_vertices();
            for arcs in &partition.book.arcs {
                for arc in arcs {
                    for z in [&arc.v, &arc.w] {
                        let tau = unit_tangent(z.theta);
                        if z.on_boundary_a {
                            match z.nu_a {
                                Some(nu) => {
                                    min_transversality = min_transversality.min(nu.dot(tau).abs())
                                }
                                None => near_vertex_count += 1,
                            }
                        } else if boundary_vertices.iter().any(|&q| q.dist(z.point) < eps_geo) {
                            near_vertex_count += 1;
                        }
                        for &(_, vartheta) in &z.l {
                            min_transversality =
                                min_transversality.min(wrap_angle(vartheta - z.theta).sin().abs());
                        }
                    }
                }
            }
        }
    }

    // Pairwise circle intersections inside A that a third circle passes near:
    // computed from center geometry since an exact triple point degenerates to
    // a segment-segment vertex in the partition and leaves no arc endpoint.
    let mut triples: Vec<Point2> = Vec::new();
    for i in 0..m {
        for l in (i + 1)..m {
            let d = cfg.centers[i].dist(cfg.centers[l]);
            if d <= eps_geo || d >= 2.0 * r {
                continue;
            }
            let h = (r * r - 0.25 * d * d).sqrt();
            let mid = (cfg.centers[i] + cfg.centers[l]) * 0.5;
            let dir = (cfg.centers[l] - cfg.centers[i]) * (1.0 / d);
            for z in [mid + dir.perp() * h, mid - dir.perp() * h] {
                if !region.contains(z) {
                    continue;
                }
                let third = (0..m)
                    .any(|k| k != i && k != l && (cfg.centers[k].dist(z) - r).abs() < eps_deg);
                if third && !triples.iter().any(|&c| c.dist(z) < eps_deg) {
                    triples.push(z);
                }
            }
        }
    }
    let near_triple_count = triples.len();

    let ok = min_center_distance > eps_deg
        && min_tangency_margin > eps_deg
        && min_transversality > eps_deg
        && near_triple_count == 0
        && near_vertex_count == 0;
    DiagnosticsReport {
        min_tangency_margin,
        min_center_distance,
        min_transversality,
        near_triple_count,
        near_vertex_count,
        ok,
    }
}
