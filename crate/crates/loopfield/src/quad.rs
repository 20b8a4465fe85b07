//! Adaptive quadrature: Gauss-Kronrod 7-15 with worst-interval refinement
//! for smooth integrands, and tanh-sinh (double-exponential) for
//! integrands with algebraic endpoint singularities.

use std::collections::BinaryHeap;

/// Errors reported by the quadrature routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuadError {
    #[error(
        "quadrature did not reach tolerance {tol:e} (error estimate {err:e} after {intervals} intervals)"
    )]
    NoConvergence {
        tol: f64,
        err: f64,
        intervals: usize,
    },
    #[error("invalid integration interval [{a}, {b}]")]
    BadInterval { a: f64, b: f64 },
}

// 15-point Kronrod abscissae (positive half), 7-point Gauss weights and
// 15-point Kronrod weights, from QUADPACK's dqk15, at the published
// 33-digit precision.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_33,
    0.949_107_912_342_758_524_526_189_684_047_85,
    0.864_864_423_359_769_072_789_712_788_640_93,
    0.741_531_185_599_394_439_863_864_773_280_79,
    0.586_087_235_467_691_130_294_144_838_258_73,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_08,
    0.279_705_391_489_276_667_901_467_771_423_78,
    0.381_830_050_505_118_944_950_369_775_488_97,
    0.417_959_183_673_469_387_755_102_040_816_33,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_2,
    0.104_790_010_322_250_183_839_876_322_541_52,
    0.140_653_259_715_525_918_745_189_590_510_24,
    0.169_004_726_639_267_902_826_583_426_598_55,
    0.190_350_578_064_785_409_913_256_402_421_01,
    0.204_432_940_075_298_892_414_161_999_234_65,
    0.209_482_141_084_727_828_012_999_174_891_71,
];

/// One Gauss-Kronrod 7-15 panel. Returns (integral, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut kronrod = f_center * WGK[7];
    // The center is also the middle node of the embedded 7-point Gauss
    // rule, with weight WG[3].
    let mut gauss = f_center * WG[3];
    let mut res_abs = kronrod.abs();
    let mut fv = [0.0_f64; 15];
    fv[7] = f_center;

    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[14 - j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let value = kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();

    // QUADPACK error rescaling.
    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * 1.0_f64.min((200.0 * err / res_asc).powf(1.5));
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err)
}

#[derive(Debug)]
struct Segment {
    err: f64,
    a: f64,
    b: f64,
    value: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Adaptive Gauss-Kronrod integration of `f` over `[a, b]`.
///
/// Bisects the interval with the largest error estimate until the summed
/// estimate satisfies `max(abs_tol, rel_tol * |integral|)` or the
/// interval budget is exhausted.
pub fn adaptive_gk<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_intervals: usize,
) -> Result<f64, QuadError> {
    if !a.is_finite() || !b.is_finite() || a > b {
        return Err(QuadError::BadInterval { a, b });
    }
    if a == b {
        return Ok(0.0);
    }

    let (value, err) = gk15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { err, a, b, value });
    let mut total_value = value;
    let mut total_err = err;

    while total_err > abs_tol.max(rel_tol * total_value.abs()) {
        if heap.len() >= max_intervals {
            return Err(QuadError::NoConvergence {
                tol: abs_tol.max(rel_tol * total_value.abs()),
                err: total_err,
                intervals: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap cannot be empty while refining");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval at floating-point resolution; no further
            // refinement is possible.
            return Ok(total_value);
        }
        let (lv, le) = gk15(&f, worst.a, mid);
        let (rv, re) = gk15(&f, mid, worst.b);
        total_value += lv + rv - worst.value;
        total_err += le + re - worst.err;
        heap.push(Segment {
            err: le,
            a: worst.a,
            b: mid,
            value: lv,
        });
        heap.push(Segment {
            err: re,
            a: mid,
            b: worst.b,
            value: rv,
        });
    }
    Ok(total_value)
}

/// Tanh-sinh (double-exponential) integration with endpoint offsets.
///
/// The integrand is called as `f(x, from_a, from_b)` where `from_a` and
/// `from_b` are the exact distances to the interval ends. Near an
/// endpoint the coordinate `x` itself saturates (rounds onto the end)
/// while the offset is still meaningful, so integrands with endpoint
/// singularities must form their singular factors from the offsets, not
/// from `x`. Offsets are built from the stable complement
/// `1 - tanh(q) = 2/(exp(2q) + 1)`.
pub fn tanh_sinh_with_offsets<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64, QuadError>
where
    F: Fn(f64, f64, f64) -> f64,
{
    if !a.is_finite() || !b.is_finite() || a >= b {
        return Err(QuadError::BadInterval { a, b });
    }
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let pi_2 = std::f64::consts::FRAC_PI_2;

    // Weighted sum over all points evaluated so far; h halves each level
    // and earlier points stay valid (they sit on even multiples of h).
    let mut sum = pi_2 * f(center, half, half);
    let mut previous = f64::NAN;
    let mut h = 1.0_f64;

    for level in 0..=12 {
        if level > 0 {
            h *= 0.5;
        }
        let mut j = 1_u64;
        let mut negligible = 0;
        loop {
            // At level 0 every multiple of h is new; afterwards only odd ones.
            let t = if level == 0 {
                h * j as f64
            } else {
                h * (2 * j - 1) as f64
            };
            let q = pi_2 * t.sinh();
            let one_minus_u = 2.0 / ((2.0 * q).exp() + 1.0);
            if one_minus_u == 0.0 {
                break;
            }
            // w = (pi/2) cosh(t) / cosh(q)^2
            let cosh_q = q.cosh();
            let w = pi_2 * t.cosh() / (cosh_q * cosh_q);
            if !w.is_finite() || w == 0.0 {
                break;
            }
            let d_near = half * one_minus_u;
            let d_far = half * (2.0 - one_minus_u);
            let x_hi = b - d_near;
            let x_lo = a + d_near;
            let term = w * (f(x_hi, d_far, d_near) + f(x_lo, d_near, d_far));
            sum += term;
            if term.abs() <= f64::EPSILON * sum.abs() {
                negligible += 1;
                if negligible >= 2 {
                    break;
                }
            } else {
                negligible = 0;
            }
            j += 1;
            if t > 6.5 {
                break;
            }
        }
        let estimate = sum * h * half;
        if level > 0 {
            let change = (estimate - previous).abs();
            if change <= rel_tol * estimate.abs().max(f64::MIN_POSITIVE) {
                return Ok(estimate);
            }
        }
        previous = estimate;
    }
    Err(QuadError::NoConvergence {
        tol: rel_tol,
        err: f64::NAN,
        intervals: 0,
    })
}

/// [`tanh_sinh_with_offsets`] for integrands written in terms of the
/// plain coordinate. Fine for smooth integrands and for singularities at
/// an endpoint equal to zero; a singular factor anchored at a nonzero
/// endpoint should use the offset form to avoid cancellation.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64, QuadError> {
    tanh_sinh_with_offsets(|x, _, _| f(x), a, b, rel_tol)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    #[test]
    fn gk_integrates_smooth_functions() {
        let v = adaptive_gk(|x: f64| x.sin(), 0.0, PI, 1e-13, 0.0, 1000).unwrap();
        assert!((v - 2.0).abs() < 1e-12, "got {v}");

        let v = adaptive_gk(|x: f64| 4.0 / (1.0 + x * x), 0.0, 1.0, 1e-13, 0.0, 1000).unwrap();
        assert!((v - PI).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn gk_handles_peaked_integrands() {
        // Narrow Lorentzian; exact integral is 2*atan(500).
        let v = adaptive_gk(
            |x: f64| 1.0 / (1e-6 + (x - 0.5) * (x - 0.5)),
            0.0,
            1.0,
            1e-12,
            0.0,
            10_000,
        )
        .unwrap();
        let exact = 2.0 * (500.0_f64).atan() / 1e-3;
        assert!(
            ((v - exact) / exact).abs() < 1e-11,
            "got {v}, exact {exact}"
        );
    }

    #[test]
    fn gk_reports_interval_exhaustion() {
        let r = adaptive_gk(|x: f64| (1e6 * x).sin(), 0.0, 1.0, 1e-15, 0.0, 8);
        assert!(matches!(r, Err(QuadError::NoConvergence { .. })));
    }

    #[test]
    fn gk_rejects_bad_intervals() {
        assert!(adaptive_gk(|x| x, 1.0, 0.0, 1e-10, 0.0, 100).is_err());
        assert!(adaptive_gk(|x| x, 0.0, f64::INFINITY, 1e-10, 0.0, 100).is_err());
        assert_eq!(adaptive_gk(|x| x, 2.0, 2.0, 1e-10, 0.0, 100).unwrap(), 0.0);
    }

    #[test]
    fn tanh_sinh_handles_endpoint_singularities() {
        // integral_0^1 t^(-1/2) dt = 2
        let v = tanh_sinh(|t: f64| t.powf(-0.5), 0.0, 1.0, 1e-13).unwrap();
        assert!(((v - 2.0) / 2.0).abs() < 1e-12, "got {v}");

        // integral_0^1 t^(-1/2) (1-t)^(-1/2) dt = pi; both endpoint
        // factors must come from the offsets.
        let v = tanh_sinh_with_offsets(
            |_, from_a, from_b| (from_a * from_b).powf(-0.5),
            0.0,
            1.0,
            1e-13,
        )
        .unwrap();
        assert!(((v - PI) / PI).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn tanh_sinh_matches_gk_on_smooth_integrands() {
        let a = tanh_sinh(|x: f64| x.exp(), -1.0, 2.0, 1e-13).unwrap();
        let b = adaptive_gk(|x: f64| x.exp(), -1.0, 2.0, 1e-13, 0.0, 1000).unwrap();
        assert!(((a - b) / b).abs() < 1e-12);
    }
}
