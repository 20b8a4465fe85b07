//! Command-line front end.
//!
//! ```text
//! loopfield point  --radius R --current I --r R --z Z [--turns N --length L]
//! loopfield map    --radius R --current I --r-min .. --r-max .. --z-min ..
//!                  --z-max .. --nr N --nz M --output PATH [--format csv|tsv]
//! loopfield verify [--tolerance T] [--xi-max X]
//! loopfield frac   --op rl|caputo|cauchy-like --alpha A --fn F --z Z
//!                  [--z0 Z0] [--nodes N] [--scheme S]
//! ```
//!
//! Exit codes are a stable contract: 0 success, 2 validation failure,
//! 3 observation point on the wire, 4 I/O failure, 5 verification
//! failure. Values print with 17 significant digits; `map` emits
//! `r,z,Br,Bz` rows (z outer, r inner, LF endings) with the literal
//! `nan` marking on-wire cells. `LOOPFIELD_THREADS` caps the thread
//! count used for map generation.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

pub use clap::Parser;
use clap::{Args, Subcommand, ValueEnum};

use crate::field::{
    field_map, FieldError, FieldPoint, FieldSource, LoopGeometry, SolenoidGeometry,
};
use crate::fracops::{
    caputo_derivative, cauchy_like_fracderiv_n, rl_integral, FracError, FracSpec, SampledFunction,
    Scheme,
};
use crate::specfun::gamma;
use crate::verify::{run_all, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_ON_WIRE: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "loopfield",
    version,
    about = "Magnetic field of circular current loops and thin solenoids",
    long_about = "Magnetic field of circular current loops and thin solenoids.\n\
                  Loop fields are evaluated through hypergeometric closed forms of the\n\
                  angular integrals and cross-checked against quadrature and the\n\
                  classical elliptic-integral formulation (`verify`). Elliptic\n\
                  integrals use the parameter convention m = k^2; mu0 is the exact\n\
                  value 4 pi x 1e-7 T m/A.\n\n\
                  Exit codes: 0 ok, 2 validation, 3 on-wire point, 4 I/O,\n\
                  5 verification failure."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print `r z Br Bz` for one observation point.
    Point(PointArgs),
    /// Write a field map over an (r, z) grid to a CSV file.
    Map(MapArgs),
    /// Run the cross-check suite and print the error table.
    Verify(VerifyArgs),
    /// Evaluate a fractional operator on a catalog function.
    Frac(FracArgs),
}

#[derive(Debug, Args)]
pub struct GeometryArgs {
    /// Loop (or solenoid) radius in meters.
    #[arg(long)]
    pub radius: f64,
    /// Current in amperes; sign sets the field direction.
    #[arg(long)]
    pub current: f64,
    /// Number of solenoid turns. Requires --length; omit both for a
    /// single loop.
    #[arg(long)]
    pub turns: Option<usize>,
    /// Solenoid length in meters. Requires --turns.
    #[arg(long)]
    pub length: Option<f64>,
}

impl GeometryArgs {
    fn source(&self) -> Result<FieldSource, String> {
        match (self.turns, self.length) {
            (None, None) => Ok(FieldSource::Loop(
                LoopGeometry::new(self.radius, self.current).map_err(|e| e.to_string())?,
            )),
            (Some(turns), Some(length)) => Ok(FieldSource::Solenoid(
                SolenoidGeometry::new(self.radius, self.current, turns, length)
                    .map_err(|e| e.to_string())?,
            )),
            (Some(_), None) => Err("--turns requires --length".to_string()),
            (None, Some(_)) => Err("--length requires --turns".to_string()),
        }
    }
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct PointArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    /// Radial coordinate of the observation point, meters.
    #[arg(long)]
    pub r: f64,
    /// Axial coordinate of the observation point, meters.
    #[arg(long)]
    pub z: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Tsv,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct MapArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[arg(long)]
    pub r_min: f64,
    #[arg(long)]
    pub r_max: f64,
    #[arg(long)]
    pub z_min: f64,
    #[arg(long)]
    pub z_max: f64,
    /// Number of radial grid points (inclusive of both ends).
    #[arg(long)]
    pub nr: usize,
    /// Number of axial grid points.
    #[arg(long)]
    pub nz: usize,
    /// Output file path.
    #[arg(long)]
    pub output: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Overrides the cross-check tolerances (closed form vs quadrature
    /// and field vs oracle).
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Near-wire sample point for the closed-form check.
    #[arg(long, default_value_t = 0.99)]
    pub xi_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FracOp {
    /// Riemann-Liouville fractional integral (alpha > 0).
    Rl,
    /// Caputo fractional derivative (n-1 < alpha < n).
    Caputo,
    /// Branch-cut Cauchy-type operator (non-integer alpha).
    CauchyLike,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    ProductTrapezoid,
    GaussJacobi,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct FracArgs {
    #[arg(long, value_enum)]
    pub op: FracOp,
    /// Fractional order.
    #[arg(long)]
    pub alpha: f64,
    /// Catalog function: const | linear | quadratic | sqrt | power:P
    /// (monomials t^P with P >= 0).
    #[arg(long = "fn")]
    pub function: String,
    /// Evaluation point.
    #[arg(long)]
    pub z: f64,
    /// Base point of the operator.
    #[arg(long, default_value_t = 0.0)]
    pub z0: f64,
    /// Quadrature cells (product-trapezoid) or rule points
    /// (gauss-jacobi). Defaults to 2048 cells or 64 points; the
    /// Gauss-Jacobi rule is spectrally accurate and its node
    /// construction cost grows cubically.
    #[arg(long)]
    pub nodes: Option<usize>,
    #[arg(long, value_enum, default_value_t = SchemeArg::ProductTrapezoid)]
    pub scheme: SchemeArg,
}

/// Parses the command line from the process environment and runs it.
/// Returns the exit code; clap itself exits with code 2 on usage errors.
pub fn run_from_env() -> i32 {
    let cli = Cli::parse();
    run(cli, &mut std::io::stdout())
}

pub fn run<W: Write>(cli: Cli, out: &mut W) -> i32 {
    match cli.command {
        Command::Point(args) => run_point(args, out),
        Command::Map(args) => run_map(args),
        Command::Verify(args) => run_verify(args, out),
        Command::Frac(args) => run_frac(args, out),
    }
}

fn field_error_code(e: &FieldError) -> i32 {
    match e {
        FieldError::OnWire { .. } | FieldError::OnWireTurn { .. } => EXIT_ON_WIRE,
        _ => EXIT_VALIDATION,
    }
}

/// 17 significant digits; on-wire markers print as a bare `nan`.
fn fmt_value(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

fn run_point<W: Write>(args: PointArgs, out: &mut W) -> i32 {
    let source = match args.geometry.source() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("loopfield point: {e}");
            return EXIT_VALIDATION;
        }
    };
    let pt = match FieldPoint::new(args.r, args.z) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("loopfield point: {e} (--r/--z)");
            return EXIT_VALIDATION;
        }
    };
    match source.field_at(&pt) {
        Ok(b) => {
            let line = format!(
                "{} {} {} {}",
                fmt_value(args.r),
                fmt_value(args.z),
                fmt_value(b.b_r),
                fmt_value(b.b_z)
            );
            if writeln!(out, "{line}").is_err() {
                return EXIT_IO;
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("loopfield point: {e}");
            field_error_code(&e)
        }
    }
}

/// Reads `LOOPFIELD_THREADS`; a positive integer caps map parallelism.
fn thread_pool() -> Result<Option<rayon::ThreadPool>, String> {
    let raw = match std::env::var("LOOPFIELD_THREADS") {
        Ok(v) => v,
        Err(_) => return Ok(None),
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("LOOPFIELD_THREADS must be a positive integer, got {raw:?}"))?;
    if n == 0 {
        return Err("LOOPFIELD_THREADS must be a positive integer".to_string());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map(Some)
        .map_err(|e| e.to_string())
}

fn run_map(args: MapArgs) -> i32 {
    let source = match args.geometry.source() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("loopfield map: {e}");
            return EXIT_VALIDATION;
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("loopfield map: {msg}");
            return EXIT_VALIDATION;
        }
    };
    let build = || {
        field_map(
            &source,
            (args.r_min, args.r_max),
            (args.z_min, args.z_max),
            args.nr,
            args.nz,
        )
    };
    let map = match pool.as_ref().map_or_else(build, |p| p.install(build)) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("loopfield map: {e}");
            return EXIT_VALIDATION;
        }
    };

    let sep = match args.format {
        OutputFormat::Csv => ',',
        OutputFormat::Tsv => '\t',
    };
    let file = match File::create(&args.output) {
        Ok(f) => f,
        Err(e) => {
            eprintln!(
                "loopfield map: cannot create {}: {e}",
                args.output.display()
            );
            return EXIT_IO;
        }
    };
    let mut w = BufWriter::new(file);
    let mut write_all = || -> std::io::Result<()> {
        writeln!(w, "r{sep}z{sep}Br{sep}Bz")?;
        for (r, z, b) in map.cells() {
            writeln!(
                w,
                "{}{sep}{}{sep}{}{sep}{}",
                fmt_value(r),
                fmt_value(z),
                fmt_value(b.b_r),
                fmt_value(b.b_z)
            )?;
        }
        w.flush()
    };
    if let Err(e) = write_all() {
        eprintln!("loopfield map: write failed: {e}");
        return EXIT_IO;
    }
    EXIT_OK
}

fn run_verify<W: Write>(args: VerifyArgs, out: &mut W) -> i32 {
    let opts = VerifyOptions {
        tolerance: args.tolerance,
        xi_max: args.xi_max,
    };
    let report = match run_all(&opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("loopfield verify: {e}");
            return EXIT_VALIDATION;
        }
    };
    if write!(out, "{report}").is_err() {
        return EXIT_IO;
    }
    if report.all_passed() {
        EXIT_OK
    } else {
        let names: Vec<&str> = report.failures().map(|r| r.name.as_str()).collect();
        eprintln!("loopfield verify: {} check(s) failed:", names.len());
        for name in names {
            eprintln!("  {name}");
        }
        EXIT_VERIFY
    }
}

/// Catalog function -> monomial exponent.
fn parse_function(name: &str) -> Result<f64, String> {
    match name {
        "const" => Ok(0.0),
        "linear" => Ok(1.0),
        "quadratic" => Ok(2.0),
        "sqrt" => Ok(0.5),
        _ => {
            if let Some(raw) = name.strip_prefix("power:") {
                let p: f64 = raw
                    .parse()
                    .map_err(|_| format!("bad exponent in {name:?}"))?;
                if !p.is_finite() || p < 0.0 {
                    return Err(format!("power exponent must be finite and >= 0, got {p}"));
                }
                Ok(p)
            } else {
                Err(format!(
                    "unknown function {name:?}; expected const, linear, quadratic, sqrt or power:P"
                ))
            }
        }
    }
}

/// Continuous derivatives of t^p on a closed interval touching 0:
/// unbounded for non-negative-integer exponents, floor(p) otherwise.
fn monomial_smoothness(p: f64) -> u32 {
    if p == p.floor() {
        u32::MAX
    } else {
        p.floor() as u32
    }
}

/// Exact value for a monomial input when the base point is 0, per
/// operator. `None` when no closed form applies.
fn monomial_oracle(op: FracOp, p: f64, alpha: f64, z: f64) -> Option<f64> {
    match op {
        FracOp::Rl => {
            let num = gamma(p + 1.0).ok()?;
            let den = gamma(p + alpha + 1.0).ok()?;
            Some(num / den * z.powf(p + alpha))
        }
        FracOp::Caputo => {
            let n = alpha.ceil();
            if p == p.floor() && p < n {
                // Polynomial killed by the n-th derivative.
                Some(0.0)
            } else if p > n - 1.0 {
                let num = gamma(p + 1.0).ok()?;
                let den = gamma(p - alpha + 1.0).ok()?;
                Some(num / den * z.powf(p - alpha))
            } else {
                None
            }
        }
        FracOp::CauchyLike => {
            if p - alpha <= 0.0 {
                return None;
            }
            let norm = gamma(alpha + 1.0).ok()?;
            Some(
                (std::f64::consts::PI * alpha).sin() * norm / std::f64::consts::PI
                    * z.powf(p - alpha)
                    / (p - alpha),
            )
        }
    }
}

fn run_frac<W: Write>(args: FracArgs, out: &mut W) -> i32 {
    let p = match parse_function(&args.function) {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("loopfield frac: {msg}");
            return EXIT_VALIDATION;
        }
    };
    let f = SampledFunction::new(move |t: f64| t.powf(p), monomial_smoothness(p));
    let scheme = match args.scheme {
        SchemeArg::ProductTrapezoid => Scheme::ProductTrapezoid,
        SchemeArg::GaussJacobi => Scheme::GaussJacobi,
    };
    let n_nodes = args.nodes.unwrap_or(match scheme {
        Scheme::ProductTrapezoid => 2048,
        Scheme::GaussJacobi => 64,
    });
    let spec = FracSpec {
        alpha: args.alpha,
        z0: args.z0,
        scheme,
        n_nodes,
    };
    let value: Result<f64, FracError> = match args.op {
        FracOp::Rl => rl_integral(&f, &spec, args.z),
        FracOp::Caputo => caputo_derivative(&f, &spec, args.z),
        FracOp::CauchyLike => cauchy_like_fracderiv_n(&f, args.alpha, args.z0, args.z, n_nodes),
    };
    let value = match value {
        Ok(v) => v,
        Err(e) => {
            eprintln!("loopfield frac: {e}");
            return EXIT_VALIDATION;
        }
    };

    let oracle = if args.z0 == 0.0 {
        monomial_oracle(args.op, p, args.alpha, args.z)
    } else {
        None
    };
    let line = match oracle {
        Some(o) => {
            let err = (value - o).abs() / o.abs().max(1e-15);
            format!(
                "{} oracle {} relerr {:.3e}",
                fmt_value(value),
                fmt_value(o),
                err
            )
        }
        None => fmt_value(value),
    };
    if writeln!(out, "{line}").is_err() {
        return EXIT_IO;
    }
    EXIT_OK
}
