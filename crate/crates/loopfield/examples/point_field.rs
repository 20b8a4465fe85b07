//! Field of a single current loop at a few observation points, computed
//! through the hypergeometric closed forms and double-checked against
//! the classical elliptic-integral formulation.
//!
//! ```bash
//! cargo run --example point_field
//! ```

use loopfield::field::{field_at_point, field_elliptic_oracle, FieldPoint, LoopGeometry};

fn main() {
    let geom = LoopGeometry::new(1.0, 1.0).expect("valid geometry");
    println!("loop: R = {} m, I = {} A", geom.radius_m, geom.current_a);
    println!(
        "{:>6} {:>6} {:>24} {:>24} {:>12}",
        "r [m]", "z [m]", "Br [T]", "Bz [T]", "vs oracle"
    );

    let points = [
        (0.0, 0.0),
        (0.0, 1.0),
        (0.5, 0.5),
        (0.5, 0.0),
        (2.0, 1.0),
        (0.3, -0.7),
    ];
    for (r, z) in points {
        let pt = FieldPoint::new(r, z).expect("valid point");
        let b = field_at_point(&geom, &pt).expect("off-wire point");
        let oracle = field_elliptic_oracle(&geom, &pt).expect("off-wire point");
        let dev = ((b.b_r - oracle.b_r).abs() / oracle.b_r.abs().max(1e-15))
            .max((b.b_z - oracle.b_z).abs() / oracle.b_z.abs().max(1e-15));
        println!(
            "{r:>6.2} {z:>6.2} {:>24.16e} {:>24.16e} {dev:>12.2e}",
            b.b_r, b.b_z
        );
    }

    // Points on the conductor are rejected rather than returning
    // divergent numbers.
    let on_wire = FieldPoint::new(1.0, 0.0).unwrap();
    println!(
        "\nat (r, z) = (1, 0): {}",
        field_at_point(&geom, &on_wire).unwrap_err()
    );
}
