use super::point::Point2;
use super::polygon::{signed_area, ConvexPolygon};
use crate::error::Error;

/// Closed half-plane `{ y : (y − point) · normal ≥ 0 }` with inward normal.
#[derive(Debug, Clone, Copy)]
pub struct HalfPlane {
    pub point: Point2,
    pub normal: Point2,
}

impl HalfPlane {
    /// Signed distance to the boundary line; positive inside.
    pub fn dist(&self, p: Point2) -> f64 {
        (p - self.point).dot(self.normal)
    }
}

/// Provenance of an edge of a clipped cell: needed to annotate the arc
/// endpoints that Algorithms 2 and 3 consume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeLabel {
    /// Part of an edge of some A_j. `normal` is the outward unit normal of
    /// ∂A there, present iff the edge lies on ∂A.
    Poly { normal: Option<Point2> },
    /// Part of the perpendicular bisector against ball `other`.
    Bisector { other: usize },
}

/// Convex polygon whose edges carry provenance labels. Entry k labels the
/// edge from vertex k to vertex k+1.
#[derive(Debug, Clone)]
pub struct LabeledPolygon {
    pub vertices: Vec<(Point2, EdgeLabel)>,
}

impl LabeledPolygon {
    pub fn from_region_polygon(
        poly: &ConvexPolygon,
        flags: &[bool],
    ) -> LabeledPolygon {
        let vertices = poly
            .vertices()
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                let normal = flags[k].then(|| poly.edge_normal(k));
                (v, EdgeLabel::Poly { normal })
            })
            .collect();
        LabeledPolygon { vertices }
    }

    pub fn points(&self) -> Vec<Point2> {
        self.vertices.iter().map(|&(p, _)| p).collect()
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.points())
    }

    /// Sutherland-Hodgman clip against one half-plane. The closing edge along
    /// the clip line receives `clip_label`; split edges keep their label.
    /// Returns None when the intersection has (near-)zero area.
    pub fn clip(&self, hp: &HalfPlane, clip_label: EdgeLabel, eps: f64) -> Option<LabeledPolygon> {
        let n = self.vertices.len();
        if n < 3 {
            return None;
        }
        let dist: Vec<f64> = self.vertices.iter().map(|&(p, _)| hp.dist(p)).collect();
        let mut out: Vec<(Point2, EdgeLabel)> = Vec::with_capacity(n + 2);
        for k in 0..n {
            let (s, label) = self.vertices[k];
            let (e, _) = self.vertices[(k + 1) % n];
            let (ds, de) = (dist[k], dist[(k + 1) % n]);
            let s_in = ds >= -eps;
            let e_in = de >= -eps;
            match (s_in, e_in) {
                (true, true) => out.push((s, label)),
                (true, false) => {
                    out.push((s, label));
                    out.push((intersect(s, e, ds, de), clip_label));
                }
                (false, true) => out.push((intersect(s, e, ds, de), label)),
                (false, false) => {}
            }
        }
        dedupe(&mut out, eps);
        if out.len() < 3 || signed_area(&out.iter().map(|&(p, _)| p).collect::<Vec<_>>()) <= eps * eps {
            None
        } else {
            Some(LabeledPolygon { vertices: out })
        }
    }
}

fn intersect(s: Point2, e: Point2, ds: f64, de: f64) -> Point2 {
    let t = ds / (ds - de);
    s + (e - s) * t
}

/// Removes zero-length edges; the preceding edge absorbs the dropped vertex.
fn dedupe(v: &mut Vec<(Point2, EdgeLabel)>, eps: f64) {
    let mut k = 0;
    while v.len() >= 2 && k < v.len() {
        let next = (k + 1) % v.len();
        if v[k].0.dist(v[next].0) < eps {
            v.remove(k);
        } else {
            k += 1;
        }
    }
}

/// Clips a convex polygon against one half-plane (Sutherland-Hodgman step).
/// Returns None when the intersection has zero area.
pub fn clip_polygon_halfplane(
    poly: &ConvexPolygon,
    hp: &HalfPlane,
    eps: f64,
) -> Option<ConvexPolygon> {
    let labeled = LabeledPolygon {
        vertices: poly.vertices().iter().map(|&p| (p, EdgeLabel::Poly { normal: None })).collect(),
    };
    labeled
        .clip(hp, EdgeLabel::Poly { normal: None }, eps)
        .map(|lp| ConvexPolygon::new_unchecked(lp.points()))
}

/// Half-planes whose intersection is the Voronoi cell V_i of `centers[i]`.
///
/// For m ≥ 3 the list is restricted to the Delaunay neighbors of i; for
/// m < 3 or a degenerate (collinear) triangulation every other center
/// contributes its bisector.
pub fn bisector_halfplanes(
    centers: &[Point2],
    i: usize,
    eps: f64,
) -> Result<Vec<HalfPlane>, Error> {
    let neighbors = voronoi_neighbors(centers, eps)?;
    Ok(bisectors_of(centers, i, &neighbors[i]))
}

pub(crate) fn bisectors_of(centers: &[Point2], i: usize, neighbors: &[usize]) -> Vec<HalfPlane> {
    neighbors
        .iter()
        .map(|&l| {
            let mid = (centers[i] + centers[l]) * 0.5;
            HalfPlane { point: mid, normal: (centers[i] - centers[l]).normalized() }
        })
        .collect()
}

/// Per-center neighbor lists sufficient to cut exact Voronoi cells.
pub(crate) fn voronoi_neighbors(centers: &[Point2], eps: f64) -> Result<Vec<Vec<usize>>, Error> {
    let m = centers.len();
    // Coincident-center detection by plane sweep: only pairs within eps in x
    // can collide, so this is near-linear instead of all-pairs.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_unstable_by(|&a, &b| centers[a].x.total_cmp(&centers[b].x));
    for a in 0..m {
        for b in (a + 1)..m {
            if centers[order[b]].x - centers[order[a]].x >= eps {
                break;
            }
            if centers[order[a]].dist(centers[order[b]]) < eps {
                let (i, l) = (order[a].min(order[b]), order[a].max(order[b]));
                return Err(Error::DuplicateCenters(i, l));
            }
        }
    }
    if m < 3 {
        return Ok((0..m).map(|i| (0..m).filter(|&l| l != i).collect()).collect());
    }
    let points: Vec<delaunator::Point> =
        centers.iter().map(|c| delaunator::Point { x: c.x, y: c.y }).collect();
    let tri = delaunator::triangulate(&points);
    if tri.triangles.is_empty() {
        // Collinear centers: no triangulation exists, fall back to all pairs.
        return Ok((0..m).map(|i| (0..m).filter(|&l| l != i).collect()).collect());
    }
    let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut push = |a: usize, b: usize| {
        if !neighbors[a].contains(&b) {
            neighbors[a].push(b);
        }
    };
    for t in tri.triangles.chunks(3) {
        for &(a, b) in &[(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
            push(a, b);
            push(b, a);
        }
    }
    for n in &mut neighbors {
        n.sort_unstable();
    }
    Ok(neighbors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> ConvexPolygon {
        ConvexPolygon::new_unchecked(vec![
            Point2::new(x0, y0),
            Point2::new(x1, y0),
            Point2::new(x1, y1),
            Point2::new(x0, y1),
        ])
    }

    #[test]
    fn clip_splits_square() {
        // [0,2]² clipped by x <= 1.
        let hp = HalfPlane { point: Point2::new(1.0, 0.0), normal: Point2::new(-1.0, 0.0) };
        let out = clip_polygon_halfplane(&rect(0.0, 0.0, 2.0, 2.0), &hp, 1e-12).unwrap();
        assert!((out.signed_area() - 2.0).abs() < 1e-12);
        let (lo, hi) = out.bounding_box();
        assert!((hi.x - 1.0).abs() < 1e-12 && lo.x.abs() < 1e-12 && (hi.y - 2.0).abs() < 1e-12);
    }

    #[test]
    fn clip_no_op_and_empty() {
        let sq = rect(0.0, 0.0, 1.0, 1.0);
        let inside = HalfPlane { point: Point2::new(2.0, 0.0), normal: Point2::new(-1.0, 0.0) };
        let out = clip_polygon_halfplane(&sq, &inside, 1e-12).unwrap();
        assert!((out.signed_area() - 1.0).abs() < 1e-12);
        let outside = HalfPlane { point: Point2::new(-1.0, 0.0), normal: Point2::new(-1.0, 0.0) };
        assert!(clip_polygon_halfplane(&sq, &outside, 1e-12).is_none());
    }

    #[test]
    fn single_center_has_no_bisectors() {
        let hps = bisector_halfplanes(&[Point2::new(0.0, 0.0)], 0, 1e-12).unwrap();
        assert!(hps.is_empty());
    }

    #[test]
    fn two_centers_bisector() {
        let hps =
            bisector_halfplanes(&[Point2::new(0.0, 0.0), Point2::new(2.0, 0.0)], 0, 1e-12).unwrap();
        assert_eq!(hps.len(), 1);
        assert!(hps[0].point.dist(Point2::new(1.0, 0.0)) < 1e-12);
        assert!(hps[0].normal.dist(Point2::new(-1.0, 0.0)) < 1e-12);
    }

    #[test]
    fn square_corner_cell() {
        // Four centers at unit-square corners: cell of (0,0) is x<=0.5, y<=0.5.
        let centers = [
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ];
        let hps = bisector_halfplanes(&centers, 0, 1e-12).unwrap();
        let p_in = Point2::new(0.4, 0.4);
        let p_out = Point2::new(0.6, 0.4);
        assert!(hps.iter().all(|hp| hp.dist(p_in) > 0.0));
        assert!(hps.iter().any(|hp| hp.dist(p_out) < 0.0));
    }

    #[test]
    fn duplicate_centers_rejected() {
        let r = bisector_halfplanes(&[Point2::new(0.0, 0.0), Point2::new(0.0, 0.0)], 0, 1e-9);
        assert!(matches!(r, Err(Error::DuplicateCenters(_, _))));
    }
}
