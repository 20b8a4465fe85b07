//! Off-axis magnetic field of a circular current loop, with the loop's
//! angular integrals evaluated through Gauss-hypergeometric closed forms
//! and cross-validated against independent numerical oracles.
//!
//! The field of a filamentary loop of radius `R` carrying current `I`,
//! observed at cylindrical coordinates `(r, z)` relative to the loop
//! center, reduces to two angular integrals over `[0, pi]` with kernel
//! `(1 - xi cos psi)^(-3/2)`, where `xi = 2*eta / (1 + eta^2 + Mz^2)`,
//! `eta = r/R` and `Mz = z/R`. Both integrals have closed forms in terms
//! of 2F1, which this crate evaluates and checks against adaptive
//! quadrature of the defining integrals and against the classical
//! complete-elliptic-integral expressions for the same field.
//!
//! # Modules
//!
//! - [`specfun`]: gamma, Gauss hypergeometric 2F1, complete elliptic
//!   integrals K and E (AGM). Elliptic functions use the parameter
//!   convention `m = k^2` throughout.
//! - [`quad`]: adaptive Gauss-Kronrod and tanh-sinh quadrature.
//! - [`fracops`]: Riemann-Liouville fractional integral, Caputo
//!   derivative, a branch-cut Cauchy-type fractional formula, and the
//!   exact monomial rules used as operator oracles.
//! - [`field`]: loop and solenoid field evaluation, quadrature and
//!   elliptic-integral oracles, field-map generation.
//! - [`verify`]: the cross-check suite behind the `verify` CLI
//!   subcommand.
//! - [`cli`]: the command-line front end (`point`, `map`, `verify`,
//!   `frac`).
//!
//! # Conventions
//!
//! - SI units: meters, amperes, tesla.
//! - `MU_0` is fixed at the exact pre-2019 value `4*pi*1e-7` T*m/A.
//! - Positive current gives `Bz > 0` on axis (right-hand rule about +z).
//!
//! # Example
//!
//! ```
//! use loopfield::field::{field_at_point, FieldPoint, LoopGeometry};
//!
//! let geom = LoopGeometry::new(1.0, 1.0).unwrap();
//! let pt = FieldPoint::new(0.5, 0.5).unwrap();
//! let b = field_at_point(&geom, &pt).unwrap();
//! assert!(b.b_z > 0.0);
//! ```

pub mod cli;
pub mod field;
pub mod fracops;
pub mod quad;
pub mod specfun;
pub mod verify;

pub use field::{
    field_at_point, field_elliptic_oracle, field_map, solenoid_field, xi_of_point, FieldError,
    FieldMap, FieldPoint, FieldSource, FieldVector, LoopGeometry, SolenoidGeometry, XiParams, MU_0,
};
pub use fracops::{
    branchcut_series_partial, caputo_derivative, cauchy_like_fracderiv, frac_monomial_rule,
    rl_integral, FracError, FracSpec, SampledFunction, Scheme,
};
pub use specfun::{ellip_e, ellip_k, gamma, gauss_2f1, HypParams, SeriesControl, SpecFunError};
