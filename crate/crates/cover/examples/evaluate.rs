//! Evaluates the uncovered-area function G and its gradient on the analytic
//! two-ball configuration of a 3x3 square (one ball centered on a corner,
//! one interior), then prints the exact covered area.

use cover::covering::eval_bundle;
use cover::geometry::{Configuration, ConvexPolygon, Point2, Region};

fn main() {
    let square = ConvexPolygon::new(
        vec![
            Point2::new(0.0, 0.0),
            Point2::new(3.0, 0.0),
            Point2::new(3.0, 3.0),
            Point2::new(0.0, 3.0),
        ],
        1e-12,
    )
    .unwrap();
    let region = Region::new(vec![square], None).unwrap();
    let cfg = Configuration::new(vec![Point2::new(0.0, 3.0), Point2::new(1.2, 1.7)], 1.0);

    let bundle = eval_bundle(&region, &cfg).unwrap();
    println!("Vol(A)       = {}", region.volume());
    println!("G(x, r)      = {}", bundle.g);
    println!("covered area = {}", region.volume() - bundle.g);
    println!("grad G       = {:?}", bundle.grad);
}
