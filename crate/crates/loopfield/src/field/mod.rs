//! Magnetic field of a circular current loop and of thin solenoids built
//! from it by superposition.
//!
//! For a loop of radius `R` carrying current `I`, observed at cylindrical
//! `(r, z)` from the loop center, define `eta = r/R`, `Mz = z/R` and
//!
//! ```text
//! xi    = 2 eta / (1 + eta^2 + Mz^2)          (0 <= xi < 1 off the wire)
//! kappa = 2 / (1 + eta^2 + Mz^2)              (= xi/eta, cancelled analytically)
//! ```
//!
//! The components are
//!
//! ```text
//! Br = mu0 I Mz / (4 sqrt(2) pi R) * kappa^(3/2) * I2(xi)
//! Bz = mu0 I    / (4 sqrt(2) pi R) * kappa^(3/2) * (I1(xi) - eta I2(xi))
//! ```
//!
//! with the angular integrals over half a turn
//!
//! ```text
//! I1(xi) = integral_0^pi (1 - xi cos psi)^(-3/2) dpsi
//! I2(xi) = integral_0^pi cos(psi) (1 - xi cos psi)^(-3/2) dpsi
//! ```
//!
//! Both integrals have hypergeometric closed forms, evaluated here
//! through [`i1_closed`]/[`i2_closed`] and checked against adaptive
//! quadrature of the definitions ([`i1_quad`]/[`i2_quad`]). Carrying
//! `kappa` instead of the quotient `xi/eta` removes the on-axis 0/0
//! exactly instead of by thresholding: on the axis `xi = 0`, `I2 = 0`,
//! `I1 = pi` and the classical on-axis law drops out.
//!
//! An independent formulation of the same field through the complete
//! elliptic integrals K and E ([`field_elliptic_oracle`]) serves as
//! ground truth in the cross-check suite.
//!
//! Sign convention: positive current gives `Bz > 0` on the axis
//! (right-hand rule about +z). Units are SI throughout.

use std::f64::consts::{PI, SQRT_2};

use rayon::prelude::*;

use crate::quad::{self, QuadError};
use crate::specfun::{ellip_e, ellip_k, gauss_2f1, HypParams, SeriesControl, SpecFunError};

/// Vacuum permeability, fixed at the exact pre-2019 SI value
/// `4 pi x 1e-7` T*m/A.
pub const MU_0: f64 = 4.0e-7 * PI;

/// Points with `xi` above this are treated as lying on the wire; both
/// field formulations genuinely diverge there.
const ON_WIRE_XI_LIMIT: f64 = 1.0 - 1e-12;

/// Tolerances for the quadrature route of the angular integrals. The
/// absolute floor covers I2 near xi = 0, where the integral cancels to
/// ~1e-17 and the Gauss-Kronrod error estimate cannot drop below
/// ~50 eps * integral(|f|) by construction.
const QUAD_REL_TOL: f64 = 1e-12;
const QUAD_ABS_TOL: f64 = 1e-13;
const QUAD_MAX_INTERVALS: usize = 20_000;

/// Errors reported by field evaluation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FieldError {
    #[error("loop radius must be positive and finite, got {0} m")]
    NonPositiveRadius(f64),
    #[error("current must be finite, got {0} A")]
    NonFiniteCurrent(f64),
    #[error("radial coordinate must be non-negative and finite, got {0} m")]
    BadRadialCoordinate(f64),
    #[error("axial coordinate must be finite, got {0} m")]
    BadAxialCoordinate(f64),
    #[error("observation point lies on the wire (r = {r} m, z = {z} m)")]
    OnWire { r: f64, z: f64 },
    #[error("observation point lies on turn {turn} of the solenoid")]
    OnWireTurn { turn: usize },
    #[error("xi = {0} is outside [0, 1)")]
    XiRange(f64),
    #[error("field map grid must be at least 1 x 1, got {n_r} x {n_z}")]
    EmptyGrid { n_r: usize, n_z: usize },
    #[error("grid range [{lo}, {hi}] is invalid")]
    BadRange { lo: f64, hi: f64 },
    #[error("solenoid must have at least one turn")]
    NoTurns,
    #[error("solenoid length must be positive and finite, got {0} m")]
    NonPositiveLength(f64),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

/// A filamentary circular loop: radius in meters, current in amperes.
/// Negative current flips the field direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopGeometry {
    pub radius_m: f64,
    pub current_a: f64,
}

impl LoopGeometry {
    pub fn new(radius_m: f64, current_a: f64) -> Result<Self, FieldError> {
        if !radius_m.is_finite() || radius_m <= 0.0 {
            return Err(FieldError::NonPositiveRadius(radius_m));
        }
        if !current_a.is_finite() {
            return Err(FieldError::NonFiniteCurrent(current_a));
        }
        Ok(LoopGeometry {
            radius_m,
            current_a,
        })
    }
}

/// Cylindrical observation point relative to the loop center; the
/// azimuth is irrelevant by symmetry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldPoint {
    pub r_m: f64,
    pub z_m: f64,
}

impl FieldPoint {
    pub fn new(r_m: f64, z_m: f64) -> Result<Self, FieldError> {
        if !r_m.is_finite() || r_m < 0.0 {
            return Err(FieldError::BadRadialCoordinate(r_m));
        }
        if !z_m.is_finite() {
            return Err(FieldError::BadAxialCoordinate(z_m));
        }
        Ok(FieldPoint { r_m, z_m })
    }
}

/// The dimensionless bundle consumed by the field formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiParams {
    /// `r / R`.
    pub eta: f64,
    /// `z / R`.
    pub m_z: f64,
    /// `2 eta / (1 + eta^2 + Mz^2)`.
    pub xi: f64,
    /// `2 / (1 + eta^2 + Mz^2)`; equals `xi/eta` with the quotient
    /// cancelled analytically, so it stays finite on the axis.
    pub kappa: f64,
}

/// Field components in tesla.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldVector {
    pub b_r: f64,
    pub b_z: f64,
}

impl FieldVector {
    /// Marker stored in field maps for grid cells that fall on the wire.
    pub fn on_wire_marker() -> Self {
        FieldVector {
            b_r: f64::NAN,
            b_z: f64::NAN,
        }
    }

    pub fn is_on_wire_marker(&self) -> bool {
        self.b_r.is_nan() || self.b_z.is_nan()
    }
}

/// A thin solenoid: `n_turns` identical filamentary loops spread
/// uniformly over `[-length_m/2, +length_m/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolenoidGeometry {
    pub radius_m: f64,
    pub current_a: f64,
    pub n_turns: usize,
    pub length_m: f64,
}

impl SolenoidGeometry {
    pub fn new(
        radius_m: f64,
        current_a: f64,
        n_turns: usize,
        length_m: f64,
    ) -> Result<Self, FieldError> {
        if !radius_m.is_finite() || radius_m <= 0.0 {
            return Err(FieldError::NonPositiveRadius(radius_m));
        }
        if !current_a.is_finite() {
            return Err(FieldError::NonFiniteCurrent(current_a));
        }
        if n_turns == 0 {
            return Err(FieldError::NoTurns);
        }
        if !length_m.is_finite() || length_m <= 0.0 {
            return Err(FieldError::NonPositiveLength(length_m));
        }
        Ok(SolenoidGeometry {
            radius_m,
            current_a,
            n_turns,
            length_m,
        })
    }

    /// Axial turn positions. A single turn sits at the center; otherwise
    /// the positions are computed antisymmetrically, so that mirror turns
    /// are exact floating-point negations of each other and midplane
    /// cancellations are exact.
    pub fn turn_offsets(&self) -> Vec<f64> {
        if self.n_turns == 1 {
            return vec![0.0];
        }
        let n = self.n_turns;
        (0..n)
            .map(|k| (2.0 * k as f64 - (n - 1) as f64) * self.length_m / (2.0 * (n - 1) as f64))
            .collect()
    }
}

/// Dimensionless parameters of an observation point, with the on-wire
/// guard applied (`xi > 1 - 1e-12` is rejected).
pub fn xi_of_point(geom: &LoopGeometry, pt: &FieldPoint) -> Result<XiParams, FieldError> {
    let eta = pt.r_m / geom.radius_m;
    let m_z = pt.z_m / geom.radius_m;
    let denom = 1.0 + eta * eta + m_z * m_z;
    let xi = 2.0 * eta / denom;
    let kappa = 2.0 / denom;
    if xi > ON_WIRE_XI_LIMIT {
        return Err(FieldError::OnWire {
            r: pt.r_m,
            z: pt.z_m,
        });
    }
    Ok(XiParams {
        eta,
        m_z,
        xi,
        kappa,
    })
}

fn check_xi(xi: f64) -> Result<(), FieldError> {
    if !xi.is_finite() || !(0.0..1.0).contains(&xi) {
        return Err(FieldError::XiRange(xi));
    }
    Ok(())
}

/// `I1(xi)` through its closed form
/// `pi/(1+xi)^(3/2) * 2F1(1/2, 3/2; 1; 2 xi/(1+xi))`.
pub fn i1_closed(xi: f64) -> Result<f64, FieldError> {
    check_xi(xi)?;
    let w = 2.0 * xi / (1.0 + xi);
    let h = gauss_2f1(HypParams::new(0.5, 1.5, 1.0, w)?, SeriesControl::default())?;
    Ok(PI / (1.0 + xi).powf(1.5) * h)
}

/// `I2(xi)` through its closed form
/// `pi/(1+xi)^(3/2) * [2F1(3/2, 3/2; 2; w) - 2F1(1/2, 3/2; 1; w)]`,
/// `w = 2 xi/(1+xi)`.
pub fn i2_closed(xi: f64) -> Result<f64, FieldError> {
    check_xi(xi)?;
    let w = 2.0 * xi / (1.0 + xi);
    let ctl = SeriesControl::default();
    let h_a = gauss_2f1(HypParams::new(1.5, 1.5, 2.0, w)?, ctl)?;
    let h_b = gauss_2f1(HypParams::new(0.5, 1.5, 1.0, w)?, ctl)?;
    Ok(PI / (1.0 + xi).powf(1.5) * (h_a - h_b))
}

/// `I1(xi)` by adaptive quadrature of the defining integral. The
/// arbiter for the closed form.
pub fn i1_quad(xi: f64) -> Result<f64, FieldError> {
    check_xi(xi)?;
    let v = quad::adaptive_gk(
        |psi: f64| (1.0 - xi * psi.cos()).powf(-1.5),
        0.0,
        PI,
        QUAD_REL_TOL,
        QUAD_ABS_TOL,
        QUAD_MAX_INTERVALS,
    )?;
    Ok(v)
}

/// `I2(xi)` by adaptive quadrature of the defining integral.
pub fn i2_quad(xi: f64) -> Result<f64, FieldError> {
    check_xi(xi)?;
    let v = quad::adaptive_gk(
        |psi: f64| psi.cos() * (1.0 - xi * psi.cos()).powf(-1.5),
        0.0,
        PI,
        QUAD_REL_TOL,
        QUAD_ABS_TOL,
        QUAD_MAX_INTERVALS,
    )?;
    Ok(v)
}

/// Loop field at a point through the hypergeometric closed forms.
pub fn field_at_point(geom: &LoopGeometry, pt: &FieldPoint) -> Result<FieldVector, FieldError> {
    let params = xi_of_point(geom, pt)?;
    let i1 = i1_closed(params.xi)?;
    let i2 = i2_closed(params.xi)?;
    let prefactor = MU_0 * geom.current_a / (4.0 * SQRT_2 * PI * geom.radius_m);
    let kappa_32 = params.kappa * params.kappa.sqrt();
    Ok(FieldVector {
        b_r: prefactor * params.m_z * kappa_32 * i2,
        b_z: prefactor * kappa_32 * (i1 - params.eta * i2),
    })
}

/// Loop field through the classical complete-elliptic-integral
/// expressions; the independent ground truth for [`field_at_point`].
///
/// With `q = (R+r)^2 + z^2`, `d = (R-r)^2 + z^2`, `k^2 = 4 R r / q`:
///
/// ```text
/// Br = mu0 I/(2 pi) * z/(r sqrt(q)) * [ (R^2+r^2+z^2)/d * E(k^2) - K(k^2) ]
/// Bz = mu0 I/(2 pi) * 1/sqrt(q)     * [ (R^2-r^2-z^2)/d * E(k^2) + K(k^2) ]
/// ```
///
/// and `Br = 0` on the axis by symmetry. The expressions follow the
/// standard loop-field references (e.g. Simpson et al., NASA TM-2001,
/// "Simple Analytic Expressions for the Magnetic Field of a Circular
/// Current Loop"); the cross-check suite validates them against direct
/// quadrature of the Biot-Savart line integral.
pub fn field_elliptic_oracle(
    geom: &LoopGeometry,
    pt: &FieldPoint,
) -> Result<FieldVector, FieldError> {
    // Same wire guard as the closed-form route.
    xi_of_point(geom, pt)?;

    let rad = geom.radius_m;
    let (r, z) = (pt.r_m, pt.z_m);
    let q = (rad + r) * (rad + r) + z * z;
    let d = (rad - r) * (rad - r) + z * z;
    let k2 = 4.0 * rad * r / q;
    let big_k = ellip_k(k2)?;
    let big_e = ellip_e(k2)?;
    let scale = MU_0 * geom.current_a / (2.0 * PI * q.sqrt());

    let b_z = scale * (big_k + (rad * rad - r * r - z * z) / d * big_e);
    let b_r = if r == 0.0 {
        0.0
    } else {
        scale * z / r * ((rad * rad + r * r + z * z) / d * big_e - big_k)
    };
    Ok(FieldVector { b_r, b_z })
}

/// Superposition of [`field_at_point`] over every turn of a thin
/// solenoid. Reports the index of the offending turn if the point lies
/// on one of the windings.
pub fn solenoid_field(sol: &SolenoidGeometry, pt: &FieldPoint) -> Result<FieldVector, FieldError> {
    let loop_geom = LoopGeometry::new(sol.radius_m, sol.current_a)?;
    let mut b_r = 0.0;
    let mut b_z = 0.0;
    for (turn, offset) in sol.turn_offsets().into_iter().enumerate() {
        let shifted = FieldPoint::new(pt.r_m, pt.z_m - offset)?;
        match field_at_point(&loop_geom, &shifted) {
            Ok(b) => {
                b_r += b.b_r;
                b_z += b.b_z;
            }
            Err(FieldError::OnWire { .. }) => return Err(FieldError::OnWireTurn { turn }),
            Err(e) => return Err(e),
        }
    }
    Ok(FieldVector { b_r, b_z })
}

/// Either geometry a field map can be generated for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldSource {
    Loop(LoopGeometry),
    Solenoid(SolenoidGeometry),
}

impl FieldSource {
    pub fn field_at(&self, pt: &FieldPoint) -> Result<FieldVector, FieldError> {
        match self {
            FieldSource::Loop(geom) => field_at_point(geom, pt),
            FieldSource::Solenoid(sol) => solenoid_field(sol, pt),
        }
    }
}

/// Row-major grid of field values: `z` is the outer (row) index, `r`
/// the inner one. On-wire cells hold NaN markers rather than errors.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldMap {
    r_coords: Vec<f64>,
    z_coords: Vec<f64>,
    values: Vec<FieldVector>,
}

impl FieldMap {
    pub fn r_coords(&self) -> &[f64] {
        &self.r_coords
    }

    pub fn z_coords(&self) -> &[f64] {
        &self.z_coords
    }

    /// Row-major values, `z` outer, `r` inner.
    pub fn values(&self) -> &[FieldVector] {
        &self.values
    }

    pub fn get(&self, iz: usize, ir: usize) -> FieldVector {
        self.values[iz * self.r_coords.len() + ir]
    }

    /// Iterates `(r, z, field)` in output order (`z` outer, `r` inner).
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64, FieldVector)> + '_ {
        let n_r = self.r_coords.len();
        self.values.iter().enumerate().map(move |(idx, &v)| {
            let (iz, ir) = (idx / n_r, idx % n_r);
            (self.r_coords[ir], self.z_coords[iz], v)
        })
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|k| if k == n - 1 { hi } else { lo + k as f64 * step })
        .collect()
}

/// Evaluates the source on an inclusive `n_r x n_z` grid.
///
/// Cells that land on the wire are emitted as NaN markers. Evaluation
/// may run on multiple threads; each cell is a pure function of its
/// coordinates, so the output is identical to sequential evaluation no
/// matter the thread count.
pub fn field_map(
    source: &FieldSource,
    r_range: (f64, f64),
    z_range: (f64, f64),
    n_r: usize,
    n_z: usize,
) -> Result<FieldMap, FieldError> {
    if n_r == 0 || n_z == 0 {
        return Err(FieldError::EmptyGrid { n_r, n_z });
    }
    for (lo, hi) in [r_range, z_range] {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(FieldError::BadRange { lo, hi });
        }
    }
    if r_range.0 < 0.0 {
        return Err(FieldError::BadRadialCoordinate(r_range.0));
    }

    let r_coords = linspace(r_range.0, r_range.1, n_r);
    let z_coords = linspace(z_range.0, z_range.1, n_z);

    let values = (0..n_r * n_z)
        .into_par_iter()
        .map(|idx| {
            let (iz, ir) = (idx / n_r, idx % n_r);
            let pt = FieldPoint::new(r_coords[ir], z_coords[iz])?;
            match source.field_at(&pt) {
                Ok(b) => Ok(b),
                Err(FieldError::OnWire { .. }) | Err(FieldError::OnWireTurn { .. }) => {
                    Ok(FieldVector::on_wire_marker())
                }
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>, FieldError>>()?;

    Ok(FieldMap {
        r_coords,
        z_coords,
        values,
    })
}
