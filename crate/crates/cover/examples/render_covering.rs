//! Solves a small covering and writes an SVG drawing with the partition
//! edges and the free boundary arcs highlighted.

use cover::instances::get_instance;
use cover::multistart::run_multistart;
use cover::optimize::ALParams;
use cover::render::{render_svg, RenderOptions};

fn main() {
    let region = get_instance("cesaro").unwrap();
    let rep = run_multistart(&region, 4, 10, 1, &ALParams::default()).unwrap();
    println!("r = {} (trial {})", rep.best.cfg.radius, rep.best_trial);

    let opt = RenderOptions { show_partition: true, show_arcs: true, ..Default::default() };
    let svg = render_svg(&region, Some(&rep.best.cfg), &opt);
    let path = "cesaro_m4.svg";
    std::fs::write(path, svg).unwrap();
    println!("wrote {path}");
}
