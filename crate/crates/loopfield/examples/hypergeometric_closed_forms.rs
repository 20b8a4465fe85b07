//! The two angular integrals behind the loop field,
//!
//! ```text
//! I1(xi) = integral_0^pi (1 - xi cos psi)^(-3/2) dpsi
//! I2(xi) = integral_0^pi cos(psi) (1 - xi cos psi)^(-3/2) dpsi
//! ```
//!
//! evaluated through their 2F1 closed forms and through adaptive
//! quadrature of the definitions, side by side across the whole xi
//! range including the near-wire regime.
//!
//! ```bash
//! cargo run --example hypergeometric_closed_forms
//! ```

use loopfield::field::{i1_closed, i1_quad, i2_closed, i2_quad};

fn main() {
    println!(
        "{:>6} {:>20} {:>20} {:>10} {:>10}",
        "xi", "I1 closed", "I2 closed", "I1 dev", "I2 dev"
    );
    let mut grid: Vec<f64> = (0..=9).map(|k| 0.1 * k as f64).collect();
    grid.extend([0.95, 0.99, 0.999]);

    for &xi in &grid {
        let c1 = i1_closed(xi).expect("xi in domain");
        let c2 = i2_closed(xi).expect("xi in domain");
        let q1 = i1_quad(xi).expect("quadrature converges");
        let q2 = i2_quad(xi).expect("quadrature converges");
        let d1 = (c1 - q1).abs() / q1.abs();
        // I2 passes through zero at xi = 0; report the deviation there
        // absolutely instead of against a vanishing reference.
        let d2 = if q2.abs() > 1e-10 {
            (c2 - q2).abs() / q2.abs()
        } else {
            (c2 - q2).abs()
        };
        println!("{xi:>6.3} {c1:>20.13e} {c2:>20.13e} {d1:>10.1e} {d2:>10.1e}");
    }

    println!("\ndev = |closed - quadrature| / |quadrature|; quadrature is the arbiter.");
    println!("I1(0) = pi and I2(0) = 0 exactly; both integrals diverge as xi -> 1.");
}
