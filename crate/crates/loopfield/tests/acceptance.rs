//! Acceptance suite: one test per criterion, each printing a
//! `[criterion N] PASS ...` line with the measured quantity (visible
//! with `--nocapture`). Tolerances are pinned in the assertions.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use loopfield::field::{
    field_at_point, field_elliptic_oracle, i1_closed, i1_quad, i2_closed, i2_quad, FieldPoint,
    LoopGeometry, MU_0,
};
use loopfield::fracops::{
    branchcut_series_partial, cauchy_like_fracderiv, frac_monomial_rule, rl_integral, FracSpec,
    SampledFunction,
};

const SQRT_PI: f64 = 1.7724538509055159;

fn rel(got: f64, expected: f64) -> f64 {
    ((got - expected) / expected).abs()
}

#[test]
fn criterion_01_closed_forms_reproduce_quadrature() {
    let start = Instant::now();
    let mut max_i1 = 0.0_f64;
    let mut max_i2 = 0.0_f64;
    for k in 1..=18 {
        let xi = 0.05 * k as f64;
        let q1 = i1_quad(xi).unwrap();
        let q2 = i2_quad(xi).unwrap();
        let e1 = rel(i1_closed(xi).unwrap(), q1);
        let e2 = (i2_closed(xi).unwrap() - q2).abs() / q2.abs().max(1e-12);
        assert!(e1 <= 1e-10, "I1 at xi = {xi}: rel {e1:e}");
        assert!(e2 <= 1e-10, "I2 at xi = {xi}: rel {e2:e}");
        max_i1 = max_i1.max(e1);
        max_i2 = max_i2.max(e2);
    }
    let e1 = rel(i1_closed(0.99).unwrap(), i1_quad(0.99).unwrap());
    let e2 = rel(i2_closed(0.99).unwrap(), i2_quad(0.99).unwrap());
    assert!(e1 <= 1e-6, "I1 at xi = 0.99: rel {e1:e}");
    assert!(e2 <= 1e-6, "I2 at xi = 0.99: rel {e2:e}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "[criterion 1] PASS closed vs quadrature: max I1 {max_i1:.2e}, max I2 {max_i2:.2e}, \
         near-wire ({e1:.2e}, {e2:.2e}), {elapsed:?}"
    );
}

#[test]
fn criterion_02_exact_anchors_at_xi_zero() {
    let i1c = rel(i1_closed(0.0).unwrap(), PI);
    let i1q = rel(i1_quad(0.0).unwrap(), PI);
    let i2c = i2_closed(0.0).unwrap().abs();
    let i2q = i2_quad(0.0).unwrap().abs();
    assert!(i1c <= 1e-14, "I1 closed anchor: rel {i1c:e}");
    assert!(i1q <= 1e-14, "I1 quad anchor: rel {i1q:e}");
    assert!(i2c <= 1e-14, "I2 closed anchor: abs {i2c:e}");
    assert!(i2q <= 1e-14, "I2 quad anchor: abs {i2q:e}");
    println!(
        "[criterion 2] PASS anchors: I1 rel ({i1c:.1e}, {i1q:.1e}), I2 abs ({i2c:.1e}, {i2q:.1e})"
    );
}

#[test]
fn criterion_03_field_matches_elliptic_oracle_on_grid() {
    let start = Instant::now();
    let geom = LoopGeometry::new(1.0, 1.0).unwrap();
    let mut max_err = 0.0_f64;
    let mut checked = 0;
    for i in 0..20 {
        for j in 0..20 {
            let r = 3.0 * i as f64 / 19.0;
            let z = -3.0 + 6.0 * j as f64 / 19.0;
            if ((r - 1.0) * (r - 1.0) + z * z).sqrt() < 0.05 {
                continue;
            }
            let pt = FieldPoint::new(r, z).unwrap();
            let a = field_at_point(&geom, &pt).unwrap();
            let b = field_elliptic_oracle(&geom, &pt).unwrap();
            let err_r = (a.b_r - b.b_r).abs() / b.b_r.abs().max(1e-15);
            let err_z = (a.b_z - b.b_z).abs() / b.b_z.abs().max(1e-15);
            assert!(err_r <= 1e-9, "Br at ({r}, {z}): {err_r:e}");
            assert!(err_z <= 1e-9, "Bz at ({r}, {z}): {err_z:e}");
            max_err = max_err.max(err_r).max(err_z);
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "[criterion 3] PASS field vs oracle: {checked} grid points, max componentwise \
         {max_err:.2e}, {elapsed:?}"
    );
}

#[test]
fn criterion_04_on_axis_law() {
    let geom = LoopGeometry::new(1.0, 1.0).unwrap();
    let mut max_err = 0.0_f64;
    for m_z in [0.0, 0.5, 1.0, 2.0, 10.0] {
        let b = field_at_point(&geom, &FieldPoint::new(0.0, m_z).unwrap()).unwrap();
        assert_eq!(b.b_r, 0.0, "Br not exactly zero at z/R = {m_z}");
        let expected = MU_0 / (2.0 * (1.0 + m_z * m_z).powf(1.5));
        let err = rel(b.b_z, expected);
        assert!(err <= 1e-12, "Bz at z/R = {m_z}: rel {err:e}");
        max_err = max_err.max(err);
    }
    println!("[criterion 4] PASS on-axis law: max rel {max_err:.2e}, Br exactly 0");
}

#[test]
fn criterion_05_fractional_operator_convergence() {
    // Error against the exact monomial rule at n = 2048, and decay by at
    // least 3x per mesh doubling. Constant and linear monomials are
    // reproduced exactly (the scheme interpolates them without error),
    // so the decay ratio is only measurable above the rounding floor.
    const FLOOR: f64 = 1e-11;
    let mut max_err = 0.0_f64;
    let mut min_ratio = f64::INFINITY;
    let mut measured = 0;
    for p in [0.0, 1.0, 2.0] {
        for alpha in [0.25, 0.5, 0.75] {
            let f = SampledFunction::new(move |t: f64| t.powf(p), 2);
            let exact = frac_monomial_rule(p, alpha, 1.0).unwrap();
            let errors: Vec<f64> = [256, 512, 1024, 2048]
                .iter()
                .map(|&n| {
                    let spec = FracSpec::new(alpha, 0.0).with_nodes(n);
                    rel(rl_integral(&f, &spec, 1.0).unwrap(), exact)
                })
                .collect();
            let final_err = *errors.last().unwrap();
            assert!(
                final_err < 1e-6,
                "p = {p}, alpha = {alpha}: err {final_err:e}"
            );
            max_err = max_err.max(final_err);
            for w in errors.windows(2) {
                if w[0] > FLOOR {
                    let ratio = w[0] / w[1];
                    assert!(
                        ratio >= 3.0,
                        "p = {p}, alpha = {alpha}: doubling ratio {ratio}"
                    );
                    min_ratio = min_ratio.min(ratio);
                    measured += 1;
                }
            }
        }
    }
    assert!(measured > 0, "no doubling ratio was measurable");
    println!(
        "[criterion 5] PASS RL convergence: max err {max_err:.2e} at n = 2048, \
         min doubling ratio {min_ratio:.2} over {measured} measurable doublings"
    );
}

#[test]
fn criterion_06_semigroup_property() {
    let mut max_err = 0.0_f64;
    for (a, b) in [(0.5, 0.5), (0.3, 0.7)] {
        for p in [0.0, 1.0, 2.0] {
            let inner = SampledFunction::new(
                move |t: f64| {
                    if t <= 0.0 {
                        return 0.0;
                    }
                    let f = SampledFunction::new(move |u: f64| u.powf(p), 2);
                    rl_integral(&f, &FracSpec::new(a, 0.0), t).unwrap()
                },
                2,
            );
            let composed = rl_integral(&inner, &FracSpec::new(b, 0.0), 1.0).unwrap();
            let exact = frac_monomial_rule(p, a + b, 1.0).unwrap();
            let err = rel(composed, exact);
            assert!(err <= 1e-6, "({a}, {b}), p = {p}: rel {err:e}");
            max_err = max_err.max(err);
        }
    }
    println!("[criterion 6] PASS semigroup composition: max rel {max_err:.2e}");
}

#[test]
fn criterion_07_cauchy_like_consistency() {
    let f = SampledFunction::new(|_| 1.0, 2);
    let got = cauchy_like_fracderiv(&f, -0.5, 0.0, 1.0).unwrap();
    let anchor = rel(got, -2.0 / SQRT_PI);
    assert!(anchor <= 1e-8, "anchor rel {anchor:e}");
    let rl = rl_integral(&f, &FracSpec::new(0.5, 0.0), 1.0).unwrap();
    let reflection = rel(got.abs(), rl);
    assert!(reflection <= 1e-8, "reflection rel {reflection:e}");
    println!(
        "[criterion 7] PASS cauchy-like: anchor rel {anchor:.2e}, \
         |value| vs RL rel {reflection:.2e}"
    );
}

#[test]
fn criterion_08_m_test_decay() {
    // Single measured constant M; with it, |S_(n+1) - S_n| <= M r^n for
    // every n <= 40, and M coincides with the first-term bound to the
    // partial-sum rounding noise.
    let sums = branchcut_series_partial(0.5, 0.5, 1.0, 41).unwrap();
    let r: f64 = 0.5;
    let first = sums[0].abs();
    let m = (1..sums.len())
        .map(|k| (sums[k] - sums[k - 1]).abs() / r.powi(k as i32))
        .fold(0.0_f64, f64::max);
    assert!(
        ((m - first) / first).abs() < 1e-3,
        "measured M {m} vs first term {first}"
    );
    for k in 1..sums.len() {
        let diff = (sums[k] - sums[k - 1]).abs();
        assert!(
            diff <= m * r.powi(k as i32) * (1.0 + 1e-12),
            "n = {k}: diff {diff:e}"
        );
    }
    println!(
        "[criterion 8] PASS M-test decay: measured M {m:.6} vs first term {first:.6}, \
         bound holds for n <= 40"
    );
}

#[test]
fn criterion_09_field_map_determinism_across_threads() {
    let bin = env!("CARGO_BIN_EXE_loopfield");
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (i, threads) in ["1", "8", "3"].iter().enumerate() {
        let path = dir.path().join(format!("map{i}.csv"));
        let status = Command::new(bin)
            .env("LOOPFIELD_THREADS", threads)
            .args([
                "map",
                "--radius",
                "1",
                "--current",
                "1",
                "--r-min",
                "0",
                "--r-max",
                "3",
                "--z-min",
                "-3",
                "--z-max",
                "3",
                "--nr",
                "100",
                "--nz",
                "100",
                "--output",
            ])
            .arg(&path)
            .status()
            .unwrap();
        assert!(status.success(), "map run {i} failed");
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1], "1 thread vs 8 threads");
    assert_eq!(outputs[0], outputs[2], "1 thread vs 3 threads");
    assert_eq!(outputs[0].len(), outputs[1].len());
    println!(
        "[criterion 9] PASS determinism: 100x100 maps byte-identical across thread counts \
         ({} bytes)",
        outputs[0].len()
    );
}

#[test]
fn criterion_10_verify_subcommand_passes_in_time() {
    let bin = env!("CARGO_BIN_EXE_loopfield");
    let start = Instant::now();
    let output = Command::new(bin).arg("verify").output().unwrap();
    let elapsed = start.elapsed();
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(
        output.status.success(),
        "verify exited {:?}; stdout:\n{stdout}",
        output.status.code()
    );
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    assert!(stdout.contains("pass"), "report:\n{stdout}");
    assert!(!stdout.contains("FAIL"), "report:\n{stdout}");
    println!("[criterion 10] PASS verify subcommand: exit 0 in {elapsed:?}");
}
