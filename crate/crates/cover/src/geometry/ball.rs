use super::clip::{EdgeLabel, LabeledPolygon};
use super::point::Point2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PieceKind {
    Segment,
    Arc,
}

/// One entry of a curvilinear polygon boundary: the piece from `start` to the
/// next entry's start is a segment or an arc of the clipping circle. `label`
/// is the provenance of the cell edge `start` lies on.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryPiece {
    pub start: Point2,
    pub kind: PieceKind,
    pub label: EdgeLabel,
}

/// W ∩ B̄(x,r) as a counter-clockwise chain of pieces. `full_ball` marks the
/// degenerate chain {((x₁, x₂+r), arc)} representing the whole ball.
#[derive(Debug, Clone)]
pub struct BallChain {
    pub pieces: Vec<BoundaryPiece>,
    pub full_ball: bool,
}

impl BallChain {
    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Enclosed area via Green's theorem: shoelace terms for segments plus
    /// triangle-and-circular-segment terms for arcs of B(x,r).
    pub fn area(&self, x: Point2, r: f64) -> f64 {
        if self.full_ball {
            return std::f64::consts::PI * r * r;
        }
        let n = self.pieces.len();
        let mut area = 0.0;
        for k in 0..n {
            let v = self.pieces[k].start;
            let w = self.pieces[(k + 1) % n].start;
            match self.pieces[k].kind {
                PieceKind::Segment => area += 0.5 * v.cross(w),
                PieceKind::Arc => {
                    let tv = (v - x).angle();
                    let mut tw = (w - x).angle();
                    if tw <= tv {
                        tw += 2.0 * std::f64::consts::PI;
                    }
                    let dt = tw - tv;
                    // Chord shoelace term plus the circular-segment bulge.
                    area += 0.5 * v.cross(w) + 0.5 * r * r * (dt - dt.sin());
                }
            }
        }
        area
    }
}

/// Intersection of a labeled convex polygon with the closed ball B̄(x,r);
/// one Sutherland-Hodgman-style sweep over the polygon edges.
///
/// When no edge meets the circle the result is either the full ball (center
/// inside W) or empty.
pub fn intersect_polygon_ball(w: &LabeledPolygon, x: Point2, r: f64, eps: f64) -> BallChain {
    let n = w.vertices.len();
    let mut pieces: Vec<BoundaryPiece> = Vec::with_capacity(2 * n);
    let d: Vec<f64> = w.vertices.iter().map(|&(p, _)| p.dist(x) - r).collect();
    for k in 0..n {
        let (p, label) = w.vertices[k];
        let (q, _) = w.vertices[(k + 1) % n];
        let p_in = d[k] <= eps;
        let q_in = d[(k + 1) % n] <= eps;
        match (p_in, q_in) {
            (true, true) => pieces.push(BoundaryPiece { start: p, kind: PieceKind::Segment, label }),
            (true, false) => {
                if d[k] < -eps {
                    pieces.push(BoundaryPiece { start: p, kind: PieceKind::Segment, label });
                }
                if let Some((_, t2)) = segment_circle(p, q, x, r, eps) {
                    let a = p + (q - p) * t2;
                    pieces.push(BoundaryPiece { start: a, kind: PieceKind::Arc, label });
                } else {
                    // p sits on the circle and the edge leaves immediately.
                    pieces.push(BoundaryPiece { start: p, kind: PieceKind::Arc, label });
                }
            }
            (false, true) => {
                if let Some((t1, _)) = segment_circle(p, q, x, r, eps) {
                    let a = p + (q - p) * t1;
                    pieces.push(BoundaryPiece { start: a, kind: PieceKind::Segment, label });
                }
            }
            (false, false) => {
                if let Some((t1, t2)) = segment_circle(p, q, x, r, eps) {
                    if t1 > eps && t2 < 1.0 - eps && t2 - t1 > eps {
                        let a = p + (q - p) * t1;
                        let b = p + (q - p) * t2;
                        pieces.push(BoundaryPiece { start: a, kind: PieceKind::Segment, label });
                        pieces.push(BoundaryPiece { start: b, kind: PieceKind::Arc, label });
                    }
                }
            }
        }
    }
    dedupe(&mut pieces, eps);
    if pieces.is_empty() {
        if point_in_labeled(w, x, eps) {
            return BallChain {
                pieces: vec![BoundaryPiece {
                    start: Point2::new(x.x, x.y + r),
                    kind: PieceKind::Arc,
                    label: EdgeLabel::Poly { normal: None },
                }],
                full_ball: true,
            };
        }
        return BallChain { pieces: Vec::new(), full_ball: false };
    }
    BallChain { pieces, full_ball: false }
}

/// Roots t1 <= t2 of |p + t(q-p) - x|² = r² when the open chord is nontrivial.
fn segment_circle(p: Point2, q: Point2, x: Point2, r: f64, eps: f64) -> Option<(f64, f64)> {
    let d = q - p;
    let f = p - x;
    let a = d.norm_sq();
    if a == 0.0 {
        return None;
    }
    let b = f.dot(d);
    let c = f.norm_sq() - r * r;
    let disc = b * b - a * c;
    if disc <= eps * eps * a {
        return None;
    }
    let s = disc.sqrt();
    Some(((-b - s) / a, (-b + s) / a))
}

/// Drops degenerate (zero-length) pieces: if two consecutive starts coincide
/// the earlier entry is removed, keeping the later entry's kind and label.
fn dedupe(pieces: &mut Vec<BoundaryPiece>, eps: f64) {
    let mut k = 0;
    while pieces.len() >= 2 && k < pieces.len() {
        let next = (k + 1) % pieces.len();
        if pieces[k].start.dist(pieces[next].start) < eps {
            pieces.remove(k);
        } else {
            k += 1;
        }
    }
    if pieces.len() < 2 {
        pieces.clear();
    }
}

fn point_in_labeled(w: &LabeledPolygon, p: Point2, eps: f64) -> bool {
    let n = w.vertices.len();
    (0..n).all(|k| {
        let a = w.vertices[k].0;
        let b = w.vertices[(k + 1) % n].0;
        (b - a).cross(p - a) >= -eps
    })
}
