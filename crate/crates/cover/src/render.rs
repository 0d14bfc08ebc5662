//! SVG rendering of regions, coverings and the restricted partition.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::geometry::{build_partition, Configuration, Point2, Region};

/// Stable fill palette, cycled per ball.
const PALETTE: [&str; 8] = [
    "#4878cf", "#6acc65", "#d65f5f", "#b47cc7", "#c4ad66", "#77bedb", "#e58b3a", "#8c8c8c",
];

#[derive(Debug, Clone)]
pub struct RenderOptions {
    /// Draw the straight cell edges of the Voronoi-restricted partition.
    pub show_partition: bool,
    /// Highlight the arcs of ∂Ω(x,r) ∩ A in red.
    pub show_arcs: bool,
    /// Margin around the drawing, as a fraction of the content size.
    pub margin: f64,
    /// Longest side of the output in pixels.
    pub max_dim: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { show_partition: false, show_arcs: false, margin: 0.04, max_dim: 1024.0 }
    }
}

struct Frame {
    scale: f64,
    x0: f64,
    y1: f64,
    width: f64,
    height: f64,
}

impl Frame {
    /// World → pixel, flipping y so the drawing is upright.
    fn px(&self, p: Point2) -> (f64, f64) {
        ((p.x - self.x0) * self.scale, (self.y1 - p.y) * self.scale)
    }
}

fn fit_frame(region: &Region, cfg: Option<&Configuration>, opt: &RenderOptions) -> Frame {
    let (mut lo, mut hi) = region.bounding_box();
    if let Some(c) = cfg {
        for &x in &c.centers {
            lo.x = lo.x.min(x.x - c.radius);
            lo.y = lo.y.min(x.y - c.radius);
            hi.x = hi.x.max(x.x + c.radius);
            hi.y = hi.y.max(x.y + c.radius);
        }
    }
    let w = (hi.x - lo.x).max(f64::MIN_POSITIVE);
    let h = (hi.y - lo.y).max(f64::MIN_POSITIVE);
    let pad = opt.margin * w.max(h);
    let (w, h) = (w + 2.0 * pad, h + 2.0 * pad);
    let scale = opt.max_dim / w.max(h);
    Frame {
        scale,
        x0: lo.x - pad,
        y1: hi.y + pad,
        width: w * scale,
        height: h * scale,
    }
}

fn path_of_polygon(frame: &Frame, vertices: &[Point2]) -> String {
    let mut d = String::new();
    for (k, &v) in vertices.iter().enumerate() {
        let (px, py) = frame.px(v);
        let cmd = if k == 0 { 'M' } else { 'L' };
        let _ = write!(d, "{}{:.3} {:.3} ", cmd, px, py);
    }
    d.push('Z');
    d
}

/// Draws ∂A as stroked polygons and, when a configuration is given, the balls
/// as translucent disks; optional layers add the partition edges and the arcs
/// of ∂Ω(x,r) ∩ A. Output is plain SVG 1.1 text, byte-identical for identical
/// inputs.
pub fn render_svg(region: &Region, cfg: Option<&Configuration>, opt: &RenderOptions) -> String {
    let frame = fit_frame(region, cfg, opt);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.3} {:.3}\">",
        frame.width.ceil(),
        frame.height.ceil(),
        frame.width,
        frame.height
    );
    let _ = writeln!(
        s,
        "<rect x=\"0\" y=\"0\" width=\"{:.3}\" height=\"{:.3}\" fill=\"#ffffff\"/>",
        frame.width, frame.height
    );

    for poly in region.polygons() {
        let _ = writeln!(
            s,
            "<path d=\"{}\" fill=\"#efefef\" stroke=\"#333333\" stroke-width=\"1.5\"/>",
            path_of_polygon(&frame, poly.vertices())
        );
    }

    if let Some(cfg) = cfg {
        for (i, &x) in cfg.centers.iter().enumerate() {
            let (cx, cy) = frame.px(x);
            let color = PALETTE[i % PALETTE.len()];
            let _ = writeln!(
                s,
                "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{:.3}\" fill=\"{}\" fill-opacity=\"0.35\" stroke=\"{}\" stroke-width=\"0.8\"/>",
                cx,
                cy,
                cfg.radius * frame.scale,
                color,
                color
            );
        }

        if opt.show_partition || opt.show_arcs {
            // Degenerate configurations (duplicate centers and the like) have
            // no partition; skip the optional layers rather than fail.
            if let Ok(part) = build_partition(region, cfg) {
                if opt.show_partition {
                    for edges in &part.book.edges {
                        for &(a, b) in edges {
                            let (ax, ay) = frame.px(a);
                            let (bx, by) = frame.px(b);
                            let _ = writeln!(
                                s,
                                "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#666666\" stroke-width=\"0.6\"/>",
                                ax, ay, bx, by
                            );
                        }
                    }
                }
                if opt.show_arcs {
                    let rpx = cfg.radius * frame.scale;
                    for (i, arcs) in part.book.arcs.iter().enumerate() {
                        if part.book.circle[i] {
                            let (cx, cy) = frame.px(cfg.centers[i]);
                            let _ = writeln!(
                                s,
                                "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{:.3}\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2.0\"/>",
                                cx, cy, rpx
                            );
                            continue;
                        }
                        for arc in arcs {
                            let (vx, vy) = frame.px(arc.v.point);
                            let (wx, wy) = frame.px(arc.w.point);
                            let dt = arc.theta_w - arc.theta_v;
                            // y is flipped, so counter-clockwise world arcs
                            // sweep clockwise in pixel coordinates (flag 0).
                            let large = if dt > 0.5 * TAU { 1 } else { 0 };
                            let _ = writeln!(
                                s,
                                "<path d=\"M{:.3} {:.3} A{:.3} {:.3} 0 {} 0 {:.3} {:.3}\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2.0\"/>",
                                vx, vy, rpx, rpx, large, wx, wy
                            );
                        }
                    }
                }
            }
        }
    }

    s.push_str("</svg>\n");
    s
}
