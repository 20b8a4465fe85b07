//! Generates a small field map and prints it in the same CSV layout the
//! `map` subcommand writes: header `r,z,Br,Bz`, rows z-outer/r-inner,
//! on-wire cells marked `nan`.
//!
//! ```bash
//! cargo run --example field_map_csv
//! ```

use loopfield::field::{field_map, FieldSource, LoopGeometry};

fn main() {
    let source = FieldSource::Loop(LoopGeometry::new(1.0, 1.0).expect("valid geometry"));
    // A coarse grid that deliberately contains the conductor at
    // (r, z) = (1, 0).
    let map = field_map(&source, (0.0, 2.0), (-1.0, 1.0), 5, 5).expect("valid grid");

    println!("r,z,Br,Bz");
    for (r, z, b) in map.cells() {
        let fmt = |x: f64| {
            if x.is_nan() {
                "nan".to_string()
            } else {
                format!("{x:.16e}")
            }
        };
        println!("{},{},{},{}", fmt(r), fmt(z), fmt(b.b_r), fmt(b.b_z));
    }
}
