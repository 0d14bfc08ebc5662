use super::point::Point2;
use crate::error::Error;

/// A strictly convex polygon with vertices in counter-clockwise order.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl ConvexPolygon {
    /// Validates and wraps a CCW convex vertex list.
    pub fn new(vertices: Vec<Point2>, eps: f64) -> Result<Self, Error> {
        if vertices.len() < 3 {
            return Err(Error::InvalidRegion("polygon has fewer than 3 vertices".into()));
        }
        for v in &vertices {
            if !v.is_finite() {
                return Err(Error::InvalidRegion("non-finite polygon coordinate".into()));
            }
        }
        let poly = ConvexPolygon { vertices };
        if poly.signed_area() <= 0.0 {
            return Err(Error::InvalidRegion("polygon is not counter-clockwise".into()));
        }
        let n = poly.vertices.len();
        for i in 0..n {
            let a = poly.vertices[i];
            let b = poly.vertices[(i + 1) % n];
            let c = poly.vertices[(i + 2) % n];
            if (b - a).cross(c - b) < -eps {
                return Err(Error::InvalidRegion("polygon is not convex".into()));
            }
        }
        Ok(poly)
    }

    /// Wraps a vertex list without validation. Caller guarantees CCW convexity.
    pub fn new_unchecked(vertices: Vec<Point2>) -> Self {
        ConvexPolygon { vertices }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Shoelace area; positive for CCW polygons.
    pub fn signed_area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Directed edges (v, w) in CCW order.
    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Outward unit normal of edge k.
    pub fn edge_normal(&self, k: usize) -> Point2 {
        let n = self.vertices.len();
        let d = self.vertices[(k + 1) % n] - self.vertices[k];
        // CCW polygon: interior on the left of each edge, outward normal points right.
        Point2::new(d.y, -d.x).normalized()
    }

    /// Closed-polygon containment (boundary counts as inside, within eps).
    pub fn contains(&self, p: Point2, eps: f64) -> bool {
        self.edges().all(|(v, w)| (w - v).cross(p - v) >= -eps)
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        bounding_box(&self.vertices)
    }
}

pub fn signed_area(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    let mut a = 0.0;
    for i in 0..n {
        let v = vertices[i];
        let w = vertices[(i + 1) % n];
        a += v.cross(w);
    }
    0.5 * a
}

pub fn bounding_box(points: &[Point2]) -> (Point2, Point2) {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}
