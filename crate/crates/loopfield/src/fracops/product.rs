//! Product integration against weakly singular power-law kernels, and the
//! finite-difference stencils used by the Caputo derivative.
//!
//! The quadrature integrates `s^mu * g(s)` over a graded mesh by
//! interpolating only the smooth factor `g` linearly on each cell and
//! integrating the kernel moments exactly. Polynomial rules sample the
//! kernel and lose their order at the singular endpoint; integrating the
//! moments sidesteps that entirely.

/// Grading exponent applied toward the far (non-kernel) end of the mesh.
///
/// The smooth factor handed to the outer operator is often itself the
/// output of a fractional integral, which has a branch-point at its base
/// point; mild clustering there keeps the interpolation error of such
/// factors at the same order as everywhere else.
pub(crate) const FAR_END_GRADING: f64 = 3.0;

/// Mesh over `[0, total]` with `n` cells: the lower half graded toward 0
/// with exponent `q_singular`, the upper half graded toward `total` with
/// exponent `q_far`. Node `0` is exactly `0.0` and node `n` exactly
/// `total`.
pub(crate) fn graded_mesh(total: f64, n: usize, q_singular: f64, q_far: f64) -> Vec<f64> {
    let mut s = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let x = j as f64 / n as f64;
        let node = if x < 0.5 {
            0.5 * total * (2.0 * x).powf(q_singular)
        } else {
            total - 0.5 * total * (2.0 * (1.0 - x)).powf(q_far)
        };
        s.push(node);
    }
    s
}

/// Integral of `s^mu * L(s)` over the mesh, where `L` interpolates `g`
/// linearly on each cell. Exact for the kernel; the only error is the
/// interpolation error of `g`.
///
/// On each cell `[s0, s1]` with `L(s) = A + B s`:
/// `integral = A (s1^(mu+1) - s0^(mu+1))/(mu+1) + B (s1^(mu+2) - s0^(mu+2))/(mu+2)`.
///
/// Callers guarantee `mu+1 != 0` and `mu+2 != 0`. If the kernel is not
/// integrable at `s = 0` (i.e. `mu <= -1`) the first-cell moment is
/// infinite; the products are skipped when the matching coefficient is
/// exactly zero, and otherwise the caller sees a non-finite result.
pub(crate) fn product_linear(s: &[f64], g: &[f64], mu: f64) -> f64 {
    debug_assert_eq!(s.len(), g.len());
    let e0 = mu + 1.0;
    let e1 = mu + 2.0;
    let mut acc = 0.0;
    let mut pow0_lo = s[0].powf(e0);
    let mut pow1_lo = s[0].powf(e1);
    for j in 0..s.len() - 1 {
        let (s0, s1) = (s[j], s[j + 1]);
        let pow0_hi = s1.powf(e0);
        let pow1_hi = s1.powf(e1);
        let m0 = (pow0_hi - pow0_lo) / e0;
        let m1 = (pow1_hi - pow1_lo) / e1;
        let h = s1 - s0;
        let slope = (g[j + 1] - g[j]) / h;
        let intercept = g[j] - slope * s0;
        if intercept != 0.0 {
            acc += intercept * m0;
        }
        if slope != 0.0 {
            acc += slope * m1;
        }
        pow0_lo = pow0_hi;
        pow1_lo = pow1_hi;
    }
    acc
}

/// n-th derivative of `f` at `t` by second-order finite differences with
/// step `h`, switching to one-sided stencils where the central stencil
/// would leave `[lo, hi]`.
///
/// Supports `n` in `1..=4`.
pub(crate) fn finite_difference<F: Fn(f64) -> f64>(
    f: &F,
    t: f64,
    n: u32,
    h: f64,
    lo: f64,
    hi: f64,
) -> f64 {
    let half_span = match n {
        1 | 2 => h,
        _ => 2.0 * h,
    };
    let fwd = t - half_span < lo;
    let bwd = t + half_span > hi;
    // Sample offsets in units of h, with matching weights and the power
    // of h dividing the combination.
    let (offsets, weights, hpow): (&[f64], &[f64], i32) = match (n, fwd, bwd) {
        (1, false, false) => (&[-1.0, 1.0], &[-0.5, 0.5], 1),
        (1, true, _) => (&[0.0, 1.0, 2.0], &[-1.5, 2.0, -0.5], 1),
        (1, _, true) => (&[0.0, -1.0, -2.0], &[1.5, -2.0, 0.5], 1),
        (2, false, false) => (&[-1.0, 0.0, 1.0], &[1.0, -2.0, 1.0], 2),
        (2, true, _) => (&[0.0, 1.0, 2.0, 3.0], &[2.0, -5.0, 4.0, -1.0], 2),
        (2, _, true) => (&[0.0, -1.0, -2.0, -3.0], &[2.0, -5.0, 4.0, -1.0], 2),
        (3, false, false) => (&[-2.0, -1.0, 1.0, 2.0], &[-0.5, 1.0, -1.0, 0.5], 3),
        (3, true, _) => (
            &[0.0, 1.0, 2.0, 3.0, 4.0],
            &[-2.5, 9.0, -12.0, 7.0, -1.5],
            3,
        ),
        (3, _, true) => (
            &[0.0, -1.0, -2.0, -3.0, -4.0],
            &[2.5, -9.0, 12.0, -7.0, 1.5],
            3,
        ),
        (4, false, false) => (
            &[-2.0, -1.0, 0.0, 1.0, 2.0],
            &[1.0, -4.0, 6.0, -4.0, 1.0],
            4,
        ),
        (4, true, _) => (
            &[0.0, 1.0, 2.0, 3.0, 4.0, 5.0],
            &[3.0, -14.0, 26.0, -24.0, 11.0, -2.0],
            4,
        ),
        (4, _, true) => (
            &[0.0, -1.0, -2.0, -3.0, -4.0, -5.0],
            &[3.0, -14.0, 26.0, -24.0, 11.0, -2.0],
            4,
        ),
        _ => unreachable!("derivative order validated by the caller"),
    };
    let mut acc = 0.0;
    for (&o, &w) in offsets.iter().zip(weights) {
        acc += w * f(t + o * h);
    }
    acc / h.powi(hpow)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mesh_spans_interval_and_is_monotone() {
        for &n in &[2, 3, 17, 256] {
            let s = graded_mesh(1.0, n, 4.0, 3.0);
            assert_eq!(s.len(), n + 1);
            assert_eq!(s[0], 0.0);
            assert_eq!(s[n], 1.0);
            for w in s.windows(2) {
                assert!(w[1] > w[0], "mesh not strictly increasing: {w:?}");
            }
        }
    }

    #[test]
    fn product_rule_is_exact_for_linear_factors() {
        // g(s) = 2 - 3s against s^(-1/2): exact value
        // 2*2*sqrt(Z) - 3*(2/3) Z^(3/2) at Z = 1 -> 4 - 2 = 2.
        let s = graded_mesh(1.0, 64, 4.0, 3.0);
        let g: Vec<f64> = s.iter().map(|&x| 2.0 - 3.0 * x).collect();
        let v = product_linear(&s, &g, -0.5);
        assert!((v - 2.0).abs() < 1e-13, "got {v}");
    }

    #[test]
    fn derivative_stencils_are_exact_on_quadratics() {
        let f = |x: f64| 3.0 * x * x - 2.0 * x + 1.0;
        let h = 1e-4;
        // Interior, and both ends where the one-sided stencils engage.
        for t in [0.5, 1e-5, 1.0 - 1e-5] {
            let d1 = finite_difference(&f, t, 1, h, 0.0, 1.0);
            assert!((d1 - (6.0 * t - 2.0)).abs() < 1e-8, "f' at {t}: {d1}");
            let d2 = finite_difference(&f, t, 2, h, 0.0, 1.0);
            assert!((d2 - 6.0).abs() < 1e-4, "f'' at {t}: {d2}");
        }
    }

    #[test]
    fn higher_order_stencils_match_monomials() {
        let f = |x: f64| x.powi(4);
        let h = 1e-3;
        let d3 = finite_difference(&f, 0.5, 3, h, 0.0, 1.0);
        assert!((d3 - 12.0).abs() < 1e-5, "f''' = {d3}");
        let d4 = finite_difference(&f, 0.5, 4, h, 0.0, 1.0);
        assert!((d4 - 24.0).abs() < 1e-2, "f'''' = {d4}");
        // One-sided variants near the interval ends.
        let d3 = finite_difference(&f, 1e-6, 3, h, 0.0, 1.0);
        assert!((d3 - 24.0 * 1e-6 - 0.0).abs() < 0.2, "forward f''' = {d3}");
    }
}
