use serde::{Deserialize, Serialize};

use super::point::Point2;
use super::polygon::{bounding_box, ConvexPolygon};
use crate::error::Error;

/// A region `A = ∪ A_j` given by pairwise non-overlapping convex polygons.
///
/// Each polygon edge carries a flag telling whether it lies on the outer
/// boundary `∂A` (true) or is shared with a sibling polygon (false).
#[derive(Debug, Clone)]
pub struct Region {
    polygons: Vec<ConvexPolygon>,
    /// boundary_flags[j][k] refers to edge k of polygon j.
    boundary_flags: Vec<Vec<bool>>,
    volume: f64,
    bbox: (Point2, Point2),
    diameter: f64,
}

/// Ball centers `x_1..x_m` and the common radius `r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    pub centers: Vec<Point2>,
    pub radius: f64,
}

impl Configuration {
    pub fn new(centers: Vec<Point2>, radius: f64) -> Self {
        Configuration { centers, radius }
    }

    pub fn m(&self) -> usize {
        self.centers.len()
    }

    /// Flattens to the optimization variable ordering (x_1x, x_1y, …, r).
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(2 * self.centers.len() + 1);
        for c in &self.centers {
            v.push(c.x);
            v.push(c.y);
        }
        v.push(self.radius);
        v
    }

    pub fn from_slice(v: &[f64]) -> Self {
        let m = (v.len() - 1) / 2;
        let centers = (0..m).map(|i| Point2::new(v[2 * i], v[2 * i + 1])).collect();
        Configuration { centers, radius: v[2 * m] }
    }
}

impl Region {
    /// Builds a region, detecting interior edges by twin matching when no
    /// explicit flags are given: an edge is interior iff another polygon has
    /// the geometrically coincident reversed edge.
    pub fn new(
        polygons: Vec<ConvexPolygon>,
        explicit_flags: Option<Vec<Vec<bool>>>,
    ) -> Result<Self, Error> {
        if polygons.is_empty() {
            return Err(Error::InvalidRegion("region has no polygons".into()));
        }
        let all_points: Vec<Point2> =
            polygons.iter().flat_map(|p| p.vertices().iter().copied()).collect();
        let bbox = bounding_box(&all_points);
        let diameter = (bbox.1 - bbox.0).norm();
        if diameter <= 0.0 {
            return Err(Error::InvalidRegion("region has zero extent".into()));
        }
        let eps = 1e-12 * diameter;

        let boundary_flags = match explicit_flags {
            Some(flags) => {
                if flags.len() != polygons.len()
                    || flags.iter().zip(&polygons).any(|(f, p)| f.len() != p.len())
                {
                    return Err(Error::InvalidRegion(
                        "boundary_flags shape does not match polygons".into(),
                    ));
                }
                flags
            }
            None => detect_boundary_flags(&polygons, eps),
        };

        let volume = polygons.iter().map(|p| p.signed_area()).sum();
        Ok(Region { polygons, boundary_flags, volume, bbox, diameter })
    }

    pub fn polygons(&self) -> &[ConvexPolygon] {
        &self.polygons
    }

    /// Vol(A), the sum of the polygon shoelace areas.
    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        self.bbox
    }

    /// Diameter of the bounding box; the length scale of the tolerances.
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Point-classification tolerance ε_geo.
    pub fn eps_geo(&self) -> f64 {
        1e-12 * self.diameter
    }

    /// Degeneracy-screening tolerance ε_deg.
    pub fn eps_deg(&self) -> f64 {
        1e-9 * self.diameter
    }

    /// Whether edge k of polygon j lies on ∂A.
    pub fn edge_on_boundary(&self, j: usize, k: usize) -> bool {
        self.boundary_flags[j][k]
    }

    pub fn boundary_flags(&self) -> &[Vec<bool>] {
        &self.boundary_flags
    }

    pub fn contains(&self, p: Point2) -> bool {
        let eps = self.eps_geo();
        self.polygons.iter().any(|poly| poly.contains(p, eps))
    }

    /// Vertices of ∂A: polygon vertices incident to at least one boundary edge.
    pub fn boundary_vertices(&self) -> Vec<Point2> {
        let mut out = Vec::new();
        for (j, poly) in self.polygons.iter().enumerate() {
            let n = poly.len();
            for k in 0..n {
                let prev = (k + n - 1) % n;
                if self.boundary_flags[j][k] || self.boundary_flags[j][prev] {
                    out.push(poly.vertices()[k]);
                }
            }
        }
        out
    }
}

fn detect_boundary_flags(polygons: &[ConvexPolygon], eps: f64) -> Vec<Vec<bool>> {
    let edges: Vec<(usize, Point2, Point2)> = polygons
        .iter()
        .enumerate()
        .flat_map(|(j, p)| p.edges().map(move |(v, w)| (j, v, w)))
        .collect();
    polygons
        .iter()
        .enumerate()
        .map(|(j, p)| {
            p.edges()
                .map(|(v, w)| {
                    !edges.iter().any(|&(j2, a, b)| {
                        j2 != j && a.dist(w) < eps && b.dist(v) < eps
                    })
                })
                .collect()
        })
        .collect()
}

/// Wire format for regions:
/// `{"polygons": [[[x,y],...],...], "boundary_flags": [[bool,...],...]?}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct RegionJson {
    pub polygons: Vec<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary_flags: Option<Vec<Vec<bool>>>,
}

impl RegionJson {
    pub fn from_region(region: &Region) -> Self {
        RegionJson {
            polygons: region
                .polygons()
                .iter()
                .map(|p| p.vertices().iter().map(|v| [v.x, v.y]).collect())
                .collect(),
            boundary_flags: Some(region.boundary_flags().to_vec()),
        }
    }

    pub fn into_region(self) -> Result<Region, Error> {
        let all: Vec<Point2> = self
            .polygons
            .iter()
            .flat_map(|p| p.iter().map(|&[x, y]| Point2::new(x, y)))
            .collect();
        if all.is_empty() {
            return Err(Error::InvalidRegion("region has no polygons".into()));
        }
        let (lo, hi) = bounding_box(&all);
        let eps = 1e-12 * (hi - lo).norm();
        let polygons = self
            .polygons
            .into_iter()
            .map(|p| {
                ConvexPolygon::new(p.into_iter().map(|[x, y]| Point2::new(x, y)).collect(), eps)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Region::new(polygons, self.boundary_flags)
    }
}

/// Computes Vol(A) by the shoelace formula, as used by the covering function.
pub fn region_volume(region: &Region) -> f64 {
    region.volume()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn poly(pts: &[(f64, f64)]) -> ConvexPolygon {
        ConvexPolygon::new(pts.iter().map(|&(x, y)| Point2::new(x, y)).collect(), 1e-12).unwrap()
    }

    #[test]
    fn unit_square_volume() {
        let r = Region::new(vec![poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])], None)
            .unwrap();
        assert_eq!(region_volume(&r), 1.0);
    }

    #[test]
    fn twin_edges_detected() {
        // Two unit squares sharing the edge x = 1.
        let r = Region::new(
            vec![
                poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]),
                poly(&[(1.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 1.0)]),
            ],
            None,
        )
        .unwrap();
        // Edge 1 of polygon 0 is (1,0)->(1,1); its twin in polygon 1 is (1,1)->(1,0).
        assert!(!r.edge_on_boundary(0, 1));
        assert!(!r.edge_on_boundary(1, 3));
        assert!(r.edge_on_boundary(0, 0));
        assert_eq!(r.volume(), 2.0);
    }

    #[test]
    fn json_round_trip() {
        let r = Region::new(
            vec![
                poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]),
                poly(&[(1.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 1.0)]),
            ],
            None,
        )
        .unwrap();
        let text = serde_json::to_string(&RegionJson::from_region(&r)).unwrap();
        let back: RegionJson = serde_json::from_str(&text).unwrap();
        let r2 = back.into_region().unwrap();
        assert_eq!(r2.volume(), r.volume());
        assert_eq!(r2.boundary_flags(), r.boundary_flags());
    }
}
