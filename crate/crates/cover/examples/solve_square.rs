//! Covers the unit square with one ball: the optimum is the circumscribed
//! circle, r* = sqrt(2)/2, centered at (1/2, 1/2).

use cover::geometry::{Configuration, ConvexPolygon, Point2, Region};
use cover::optimize::{al_solve, ALParams};

fn main() {
    let square = ConvexPolygon::new(
        vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ],
        1e-12,
    )
    .unwrap();
    let region = Region::new(vec![square], None).unwrap();

    let cfg0 = Configuration::new(vec![Point2::new(0.2, 0.8)], 1.0);
    let res = al_solve(&region, &cfg0, &ALParams::default()).unwrap();

    println!("status   = {:?}", res.status);
    println!("r        = {}   (sqrt(2)/2 = {})", res.cfg.radius, 0.5_f64.sqrt());
    println!("center   = {:?}", res.cfg.centers[0]);
    println!("lambda   = {}", res.lambda);
    println!("kkt_opt  = {:.3e}, |G| = {:.3e}", res.kkt_opt, res.kkt_feas);
    println!("work     = {:?}", res.counters);
}
