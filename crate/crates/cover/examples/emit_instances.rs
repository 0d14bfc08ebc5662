//! Prints the five built-in benchmark regions with polygon counts and areas.

use cover::geometry::RegionJson;
use cover::instances::{get_instance, INSTANCE_NAMES};

fn main() {
    for name in INSTANCE_NAMES {
        let region = get_instance(name).unwrap();
        println!(
            "{name:16} polygons = {:2}, Vol(A) = {:.14}",
            region.polygons().len(),
            region.volume()
        );
    }

    // Full JSON of one of them, as consumed by `cover solve --region`.
    let star = get_instance("star").unwrap();
    println!("{}", serde_json::to_string_pretty(&RegionJson::from_region(&star)).unwrap());
}
