//! Axial field profile of a thin solenoid built by superposing single
//! loops, compared with the infinite-solenoid limit mu0 n I / L in the
//! interior.
//!
//! ```bash
//! cargo run --example solenoid_profile
//! ```

use loopfield::field::{solenoid_field, FieldPoint, SolenoidGeometry, MU_0};

fn main() {
    let sol = SolenoidGeometry::new(0.05, 10.0, 200, 1.0).expect("valid solenoid");
    let ideal = MU_0 * sol.n_turns as f64 * sol.current_a / sol.length_m;
    println!(
        "solenoid: R = {} m, I = {} A, {} turns over {} m",
        sol.radius_m, sol.current_a, sol.n_turns, sol.length_m
    );
    println!("ideal interior field mu0 n I / L = {ideal:.6e} T\n");
    println!("{:>8} {:>16} {:>12}", "z [m]", "Bz(0, z) [T]", "Bz/ideal");

    for k in 0..=12 {
        let z = -0.75 + 1.5 * k as f64 / 12.0;
        let b = solenoid_field(&sol, &FieldPoint::new(0.0, z).unwrap()).expect("on axis");
        println!("{z:>8.3} {:>16.8e} {:>12.6}", b.b_z, b.b_z / ideal);
    }

    // The midplane field of a symmetric solenoid is purely axial even
    // off axis; mirror turns cancel Br pairwise.
    let b = solenoid_field(&sol, &FieldPoint::new(0.03, 0.0).unwrap()).unwrap();
    println!(
        "\nmidplane sample at r = 0.03 m: Br = {:e} T (exact cancellation)",
        b.b_r
    );
}
