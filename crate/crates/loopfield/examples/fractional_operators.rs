//! The fractional operators against their exact monomial oracles: the
//! Riemann-Liouville integral, the Caputo derivative, the branch-cut
//! Cauchy-type operator, and the mesh-convergence behavior of the
//! product-integration scheme.
//!
//! ```bash
//! cargo run --example fractional_operators
//! ```

use loopfield::fracops::{
    caputo_derivative, cauchy_like_fracderiv, frac_monomial_rule, rl_integral, FracSpec,
    SampledFunction, Scheme,
};

fn main() {
    println!("Riemann-Liouville D^(-1/2) of t^p at z = 1 (product scheme, 2048 cells):");
    for p in [0.0, 1.0, 2.0] {
        let f = SampledFunction::new(move |t: f64| t.powf(p), 2);
        let spec = FracSpec::new(0.5, 0.0);
        let got = rl_integral(&f, &spec, 1.0).unwrap();
        let exact = frac_monomial_rule(p, 0.5, 1.0).unwrap();
        println!(
            "  p = {p}: {got:.15e}   oracle {exact:.15e}   relerr {:.1e}",
            ((got - exact) / exact).abs()
        );
    }

    println!("\nSame integrals through the Gauss-Jacobi scheme (8 points, exact for polynomials):");
    for p in [0.0, 1.0, 2.0] {
        let f = SampledFunction::new(move |t: f64| t.powf(p), 2);
        let spec = FracSpec::new(0.5, 0.0)
            .with_scheme(Scheme::GaussJacobi)
            .with_nodes(8);
        let got = rl_integral(&f, &spec, 1.0).unwrap();
        let exact = frac_monomial_rule(p, 0.5, 1.0).unwrap();
        println!(
            "  p = {p}: {got:.15e}   oracle {exact:.15e}   relerr {:.1e}",
            ((got - exact) / exact).abs()
        );
    }

    println!("\nCaputo D^(1/2):");
    let f = SampledFunction::new(|_| 4.2, 2);
    let v = caputo_derivative(&f, &FracSpec::new(0.5, 0.0), 1.0).unwrap();
    println!("  of a constant: {v:e}  (Caputo kills constants)");
    let f = SampledFunction::new(|t: f64| t, 2);
    let v = caputo_derivative(&f, &FracSpec::new(0.5, 0.0), 1.0).unwrap();
    println!("  of t at z = 1: {v:.15e}  (exact: 2/sqrt(pi) = 1.128379167095513)");

    println!("\nBranch-cut Cauchy-type operator, f = 1, alpha = -1/2 on [0, 1]:");
    let f = SampledFunction::new(|_| 1.0, 2);
    let v = cauchy_like_fracderiv(&f, -0.5, 0.0, 1.0).unwrap();
    println!("  value {v:.15e}  (exact: -2/sqrt(pi) = -1.128379167095513)");
    println!("  integer orders are rejected: the sin(pi alpha) prefactor vanishes there.");

    println!("\nMesh convergence for f = t^2, alpha = 1/2 (error vs cells):");
    let f = SampledFunction::new(|t: f64| t * t, 2);
    let exact = frac_monomial_rule(2.0, 0.5, 1.0).unwrap();
    let mut prev: Option<f64> = None;
    for n in [128, 256, 512, 1024, 2048] {
        let spec = FracSpec::new(0.5, 0.0).with_nodes(n);
        let err = ((rl_integral(&f, &spec, 1.0).unwrap() - exact) / exact).abs();
        match prev {
            Some(p) => println!("  n = {n:>5}: relerr {err:.3e}  (x{:.2} smaller)", p / err),
            None => println!("  n = {n:>5}: relerr {err:.3e}"),
        }
        prev = Some(err);
    }
}
