//! Fibre operators of the magnetic Neumann Laplacian on the disk.
//!
//! Separating the angular mode `e^{imθ}` turns the 2D operator into the
//! radial family
//!
//! ```text
//! H⁽ᵐ⁾(b) = -d²/dr² - (1/r) d/dr + (m/r - b r/2)²
//! ```
//!
//! on `L²((1,∞); r dr)` (exterior, Neumann at `r = 1`) or
//! `L²((0,1); r dr)` (interior). The general solution of
//! `H⁽ᵐ⁾ u = λ u` is `u = (1/r) [c₁ M(Λ, m/2, b r²/2) + c₂ W(Λ, m/2, b r²/2)]`
//! with `Λ = (m b + λ)/(2b)`, so eigenvalues are exactly the roots of
//! scalar secular functions in the Whittaker functions:
//!
//! - exterior Neumann: `(λ/b + m + 1 - b/2) W(Λ, m/2, b/2) + 2 W(Λ+1, m/2, b/2)`,
//! - exterior Dirichlet: `W(Λ, m/2, b/2)`,
//! - interior Neumann: `(b² - 2b(m+1) - 2λ) M(Λ, m/2, b/2) + 2 (b + 2bm + λ) M(Λ+1, m/2, b/2)`.
//!
//! `W(Λ+1, ·, ·)` has Kummer parameter `a = -1/2 - λ/(2b) < 0`, outside the
//! integral representation; it is recovered from `W(Λ-1)` and `W(Λ)` through
//! the three-term recurrence, with the cancellation of the two recurrence
//! terms tracked per evaluation.
//!
//! Band functions `b ↦ λ₁⁽ᵐ⁾(b)` stay strictly below `b` for `0 < b < 2m`,
//! touch the Landau level exactly at `b = 2m`, and consecutive bands can
//! only cross above the threshold `2m + 1 - √(8m+1)`; at a crossing the
//! common value is pinned to `(b/2 - m)(b/2 - (m-1))`. All of this is
//! exposed below as computable, checkable operations.

use crate::quad;
use crate::roots::{self, RefineError, RootError};
use crate::specfun::{self, SpecFunError, WhittakerArgs};

/// Which side of the unit circle the fibre operator lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Interior,
    Exterior,
}

/// One radial eigenproblem: angular mode, field strength, side.
///
/// The gauge is fixed to `A(x) = ½(-x₂, x₁)`; the potential of the fibre
/// operator is `V_{m,b}(r) = (m/r - b r/2)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FibreProblem {
    pub m: i32,
    pub b: f64,
    pub side: Side,
}

impl FibreProblem {
    pub fn new(m: i32, b: f64, side: Side) -> Result<Self, FibreError> {
        if !(b > 0.0) || !b.is_finite() {
            return Err(FibreError::Domain(format!("field strength b = {b} must be > 0")));
        }
        Ok(FibreProblem { m, b, side })
    }

    pub fn exterior(m: i32, b: f64) -> Result<Self, FibreError> {
        FibreProblem::new(m, b, Side::Exterior)
    }

    /// `Λ = (m b + λ)/(2b) = m/2 + λ/(2b)`.
    pub fn big_lambda(&self, lambda: f64) -> f64 {
        0.5 * self.m as f64 + 0.5 * lambda / self.b
    }
}

/// A secular-function evaluation with its diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct SecularPoint {
    pub lambda: f64,
    pub big_lambda: f64,
    pub residual: f64,
    /// `max(|t₁|, |t₂|) / |t₁ + t₂|` of the `W(Λ+1)` recurrence terms
    /// (1.0 when no recurrence was involved). Values above 1e6 mean more
    /// than six digits cancelled.
    pub w_cancellation: f64,
}

impl SecularPoint {
    /// Six-digit cancellation flag on the `W(Λ+1)` recurrence.
    pub fn cancellation_flagged(&self) -> bool {
        self.w_cancellation > 1e6
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FibreError {
    Domain(String),
    /// No sign change of the exterior Neumann secular function below the
    /// Landau level (expected whenever `b ≥ 2m`).
    NoRootBelowLandau { m: i32, b: f64 },
    /// More than one sub-Landau bracket: contradicts the single-eigenvalue
    /// guarantee, so the scan refuses to pick one.
    BracketAmbiguous { m: i32, b: f64, brackets: usize },
    /// The band-difference kept one sign over the whole admissible window.
    NoCrossingInRange { m: i32 },
    /// The located crossing disagrees with `(b/2 - m)(b/2 - (m-1))`.
    CrossingMismatch { b_star: f64, lambda_star: f64, formula: f64 },
    SpecFun(SpecFunError),
    Root(RootError),
    Quadrature(quad::QuadError),
}

impl std::fmt::Display for FibreError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FibreError::Domain(msg) => write!(f, "domain error: {msg}"),
            FibreError::NoRootBelowLandau { m, b } => {
                write!(f, "no eigenvalue below the Landau level for m = {m}, b = {b}")
            }
            FibreError::BracketAmbiguous { m, b, brackets } => write!(
                f,
                "{brackets} sub-Landau brackets for m = {m}, b = {b}; expected exactly one"
            ),
            FibreError::NoCrossingInRange { m } => {
                write!(f, "band functions m-1 = {} and m = {m} do not cross in range", m - 1)
            }
            FibreError::CrossingMismatch { b_star, lambda_star, formula } => write!(
                f,
                "crossing at b = {b_star} gives λ = {lambda_star}, closed form {formula}"
            ),
            FibreError::SpecFun(e) => write!(f, "{e}"),
            FibreError::Root(e) => write!(f, "{e}"),
            FibreError::Quadrature(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FibreError {}

impl From<SpecFunError> for FibreError {
    fn from(e: SpecFunError) -> Self {
        FibreError::SpecFun(e)
    }
}

impl From<quad::QuadError> for FibreError {
    fn from(e: quad::QuadError) -> Self {
        FibreError::Quadrature(e)
    }
}

impl From<RefineError<FibreError>> for FibreError {
    fn from(e: RefineError<FibreError>) -> Self {
        match e {
            RefineError::Root(r) => FibreError::Root(r),
            RefineError::Function(f) => f,
        }
    }
}

/// Relative exclusion zone around λ = 0 and λ = b where the Kummer
/// parameters of the exterior problem degenerate.
pub const LAMBDA_MARGIN: f64 = 1e-8;

/// Exterior Neumann secular point with diagnostics. Zero exactly at the
/// eigenvalues of `H⁽ᵐ⁾(b)` below `b`.
pub fn secular_point(p: &FibreProblem, lambda: f64) -> Result<SecularPoint, FibreError> {
    if p.side != Side::Exterior {
        return Err(FibreError::Domain("secular_point is the exterior Neumann surface".into()));
    }
    if !(lambda > 0.0 && lambda < p.b) {
        return Err(FibreError::Domain(format!(
            "exterior secular function needs 0 < λ < b (λ = {lambda}, b = {b})",
            b = p.b
        )));
    }
    let m = p.m as f64;
    let mu = 0.5 * m;
    let z = 0.5 * p.b;
    let big_l = p.big_lambda(lambda);

    // W(Λ) and W(Λ-1) are inside the integral's domain (a = 1/2 - λ/(2b)
    // resp. 3/2 - λ/(2b)); W(Λ+1) comes from the three-term recurrence.
    let w0 = specfun::whittaker_w(&WhittakerArgs::new(big_l, mu, z))?;
    let w_minus = specfun::whittaker_w(&WhittakerArgs::new(big_l - 1.0, mu, z))?;
    let t1 = -(2.0 * big_l - z) * w0;
    let t2 = -((big_l - mu - 0.5) * (big_l + mu - 0.5)) * w_minus;
    let w_plus = t1 + t2;
    let w_cancellation = t1.abs().max(t2.abs()) / w_plus.abs().max(f64::MIN_POSITIVE);

    let residual = (lambda / p.b + m + 1.0 - 0.5 * p.b) * w0 + 2.0 * w_plus;
    Ok(SecularPoint { lambda, big_lambda: big_l, residual, w_cancellation })
}

/// Residual of the exterior Neumann condition `u'(1) = 0`.
pub fn secular_exterior_neumann(p: &FibreProblem, lambda: f64) -> Result<f64, FibreError> {
    secular_point(p, lambda).map(|s| s.residual)
}

/// Residual of the exterior Dirichlet condition `u(1) = 0`:
/// `W(Λ, m/2, b/2)`. Stays positive below `b`, confirming that no
/// Dirichlet eigenvalue interferes with the sub-Landau Neumann root.
pub fn secular_exterior_dirichlet(p: &FibreProblem, lambda: f64) -> Result<f64, FibreError> {
    if p.side != Side::Exterior {
        return Err(FibreError::Domain("Dirichlet secular function is exterior-only".into()));
    }
    if !(lambda > 0.0 && lambda < p.b) {
        return Err(FibreError::Domain(format!(
            "exterior secular function needs 0 < λ < b (λ = {lambda}, b = {b})",
            b = p.b
        )));
    }
    let mu = 0.5 * p.m as f64;
    Ok(specfun::whittaker_w(&WhittakerArgs::new(p.big_lambda(lambda), mu, 0.5 * p.b))?)
}

/// Residual of the interior Neumann condition, valid for any λ ≥ 0.
pub fn secular_interior_neumann(p: &FibreProblem, lambda: f64) -> Result<f64, FibreError> {
    if p.side != Side::Interior {
        return Err(FibreError::Domain("interior secular function needs side = Interior".into()));
    }
    if lambda < 0.0 {
        return Err(FibreError::Domain(format!("λ = {lambda} must be ≥ 0")));
    }
    let m = p.m as f64;
    let mu = 0.5 * m;
    let z = 0.5 * p.b;
    let big_l = p.big_lambda(lambda);
    let m0 = specfun::whittaker_m(&WhittakerArgs::new(big_l, mu, z))?;
    let m1 = specfun::whittaker_m(&WhittakerArgs::new(big_l + 1.0, mu, z))?;
    let b = p.b;
    Ok((b * b - 2.0 * b * (m + 1.0) - 2.0 * lambda) * m0 + 2.0 * (b + 2.0 * b * m + lambda) * m1)
}

/// Band sample with the bracket that certified it.
#[derive(Debug, Clone, Copy)]
pub struct BandSample {
    pub b: f64,
    pub lambda: f64,
    pub bracket: (f64, f64),
}

/// A swept band function `b ↦ λ₁⁽ᵐ⁾(b)` with per-sample brackets; failures
/// are recorded and the sweep continues.
#[derive(Debug)]
pub struct BandCurve {
    pub m: i32,
    pub samples: Vec<BandSample>,
    pub failures: Vec<(f64, FibreError)>,
}

const BRACKET_GRID: usize = 64;
const MAX_REFINE_ITER: usize = 200;

fn exterior_candidate_grid(b: f64) -> Vec<f64> {
    let lo = b * LAMBDA_MARGIN;
    let hi = b * (1.0 - LAMBDA_MARGIN);
    let ratio = (hi / lo).ln();
    (0..BRACKET_GRID)
        .map(|j| lo * (ratio * j as f64 / (BRACKET_GRID - 1) as f64).exp())
        .collect()
}

fn refine_secular_root(
    p: &FibreProblem,
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_hi: f64,
) -> Result<BandSample, FibreError> {
    let tol = 1e-10 * p.b;
    let root = roots::refine_bracket(
        |x| secular_exterior_neumann(p, x),
        lo,
        hi,
        f_lo,
        f_hi,
        tol,
        MAX_REFINE_ITER,
    )?;
    Ok(BandSample { b: p.b, lambda: root.root, bracket: root.bracket })
}

/// `λ₁⁽ᵐ⁾(b)` with the certifying bracket.
///
/// Exterior: unique sub-Landau root of the Neumann secular function for
/// `m ≥ 1`, `b < 2m`, located by sign-bracketing on a log-spaced grid and
/// refined to `|Δλ| ≤ 1e-10 b`. `b = 2m` returns the Landau value `λ = b`
/// itself. Interior: smallest root over a wide logarithmic window
/// (`m ≥ 0` is allowed there; the radial mode is the interior ground
/// state for weak fields).
pub fn solve_band_detailed(m: i32, b: f64, side: Side) -> Result<BandSample, FibreError> {
    let p = FibreProblem::new(m, b, side)?;
    match side {
        Side::Exterior => {
            if m < 1 {
                return Err(FibreError::Domain(format!(
                    "exterior sub-Landau bands need m ≥ 1 (got m = {m})"
                )));
            }
            let landau = 2.0 * m as f64;
            if (b - landau).abs() <= 1e-12 * landau {
                // the band meets the Landau level exactly here
                return Ok(BandSample { b, lambda: b, bracket: (b, b) });
            }
            if b > landau {
                return Err(FibreError::NoRootBelowLandau { m, b });
            }

            let grid = exterior_candidate_grid(b);
            let mut values = Vec::with_capacity(grid.len());
            for &lambda in &grid {
                values.push(secular_exterior_neumann(&p, lambda)?);
            }
            let mut brackets = Vec::new();
            for j in 0..grid.len() - 1 {
                if values[j] == 0.0 || values[j].signum() != values[j + 1].signum() {
                    brackets.push(j);
                }
            }
            match brackets.len() {
                0 => Err(FibreError::NoRootBelowLandau { m, b }),
                1 => {
                    let j = brackets[0];
                    refine_secular_root(&p, grid[j], grid[j + 1], values[j], values[j + 1])
                }
                n => Err(FibreError::BracketAmbiguous { m, b, brackets: n }),
            }
        }
        Side::Interior => {
            if m < 0 {
                return Err(FibreError::Domain(format!(
                    "interior bands computed for m ≥ 0 (got m = {m})"
                )));
            }
            // generous logarithmic window: covers the weak-field radial
            // level ~ b²/8 as well as the zero-field Neumann eigenvalues
            let lo = 1e-12;
            let hi = (m as f64 + 3.0).powi(2) + b * b;
            let n = 160;
            let ratio = (hi / lo).ln();
            let grid: Vec<f64> =
                (0..n).map(|j| lo * (ratio * j as f64 / (n - 1) as f64).exp()).collect();
            let mut prev = secular_interior_neumann(&p, grid[0])?;
            for j in 1..n {
                let cur = secular_interior_neumann(&p, grid[j])?;
                if prev == 0.0 || prev.signum() != cur.signum() {
                    let tol = 1e-10 * grid[j].max(b);
                    let root = roots::refine_bracket(
                        |x| secular_interior_neumann(&p, x),
                        grid[j - 1],
                        grid[j],
                        prev,
                        cur,
                        tol,
                        MAX_REFINE_ITER,
                    )?;
                    return Ok(BandSample { b, lambda: root.root, bracket: root.bracket });
                }
                prev = cur;
            }
            Err(FibreError::NoRootBelowLandau { m, b })
        }
    }
}

/// `λ₁⁽ᵐ⁾(b)`; see [`solve_band_detailed`].
pub fn solve_band(m: i32, b: f64, side: Side) -> Result<f64, FibreError> {
    solve_band_detailed(m, b, side).map(|s| s.lambda)
}

/// `λ_k(b, B_R^ext) = R⁻² λ₁⁽ᵏ⁾(b R²)`: eigenvalues of the exterior of the
/// disk of radius `R` by scaling from the unit disk.
pub fn disk_exterior_eigenvalue(k: i32, radius: f64, b: f64) -> Result<f64, FibreError> {
    if !(radius > 0.0) {
        return Err(FibreError::Domain(format!("radius = {radius} must be > 0")));
    }
    Ok(solve_band(k, b * radius * radius, Side::Exterior)? / (radius * radius))
}

/// Sweep `λ₁⁽ᵐ⁾` over an ascending `b` grid. The previous root seeds a
/// narrow bracket for the next sample (an optimization only — on a miss
/// the full scan runs); per-sample failures are recorded and the sweep
/// continues.
pub fn band_scan(m: i32, b_grid: &[f64], side: Side) -> BandCurve {
    let mut curve = BandCurve { m, samples: Vec::new(), failures: Vec::new() };
    let mut previous: Option<BandSample> = None;

    for &b in b_grid {
        let seeded = previous.and_then(|prev| try_seeded_bracket(m, b, side, &prev));
        let result = match seeded {
            Some(sample) => Ok(sample),
            None => solve_band_detailed(m, b, side),
        };
        match result {
            Ok(sample) => {
                previous = Some(sample);
                curve.samples.push(sample);
            }
            Err(e) => {
                previous = None;
                curve.failures.push((b, e));
            }
        }
    }
    curve
}

fn try_seeded_bracket(m: i32, b: f64, side: Side, prev: &BandSample) -> Option<BandSample> {
    if side != Side::Exterior || b <= prev.b || b >= 2.0 * m as f64 {
        return None;
    }
    let p = FibreProblem::new(m, b, side).ok()?;
    // the band slope is ≈ 1 well below the crossing
    let predicted = prev.lambda + (b - prev.b);
    let width = 0.3 * (b - prev.b) + 1e-3 * b;
    let lo = (predicted - width).max(b * LAMBDA_MARGIN);
    let hi = (predicted + width).min(b * (1.0 - LAMBDA_MARGIN));
    if !(lo < hi) {
        return None;
    }
    let f_lo = secular_exterior_neumann(&p, lo).ok()?;
    let f_hi = secular_exterior_neumann(&p, hi).ok()?;
    if f_lo.signum() == f_hi.signum() {
        return None;
    }
    refine_secular_root(&p, lo, hi, f_lo, f_hi).ok()
}

/// Below `2m + 1 - √(8m+1)` the bands `λ₁⁽ᵐ⁻¹⁾` and `λ₁⁽ᵐ⁾` cannot meet.
pub fn ordering_threshold(m: i32) -> Result<f64, FibreError> {
    if m < 2 {
        return Err(FibreError::Domain(format!("ordering threshold needs m ≥ 2 (got {m})")));
    }
    let mf = m as f64;
    Ok(2.0 * mf + 1.0 - (8.0 * mf + 1.0).sqrt())
}

/// The first crossing of consecutive band functions.
#[derive(Debug, Clone, Copy)]
pub struct CrossingReport {
    pub m: i32,
    pub b_star: f64,
    pub lambda_star: f64,
    /// Closed form `(b*/2 - m)(b*/2 - (m-1))` that any crossing below the
    /// Landau level must satisfy.
    pub formula_value: f64,
}

/// Locate the smallest `b` with `λ₁⁽ᵐ⁻¹⁾(b) = λ₁⁽ᵐ⁾(b)` for `m ≥ 2` by
/// bisecting the band difference on `(threshold, 2(m-1))`, and verify the
/// crossing value against its closed form to 1e-6.
pub fn find_crossing(m: i32) -> Result<CrossingReport, FibreError> {
    if m < 2 {
        return Err(FibreError::Domain(format!("crossings need m ≥ 2 (got m = {m})")));
    }
    let lo_edge = ordering_threshold(m)?;
    let hi_edge = 2.0 * (m - 1) as f64 * (1.0 - 1e-6);
    let diff = |b: f64| -> Result<f64, FibreError> {
        Ok(solve_band(m - 1, b, Side::Exterior)? - solve_band(m, b, Side::Exterior)?)
    };

    // coarse scan for the first sign change, then refine
    let n = 24;
    let mut prev_b = lo_edge;
    let mut prev_g = diff(prev_b)?;
    for j in 1..=n {
        let bj = lo_edge + (hi_edge - lo_edge) * j as f64 / n as f64;
        let gj = diff(bj)?;
        if prev_g == 0.0 || prev_g.signum() != gj.signum() {
            let root = roots::refine_bracket(diff, prev_b, bj, prev_g, gj, 1e-9, 120)?;
            let b_star = root.root;
            let lambda_star = solve_band(m, b_star, Side::Exterior)?;
            let formula_value = (0.5 * b_star - m as f64) * (0.5 * b_star - (m - 1) as f64);
            if (lambda_star - formula_value).abs() > 1e-6 {
                return Err(FibreError::CrossingMismatch {
                    b_star,
                    lambda_star,
                    formula: formula_value,
                });
            }
            return Ok(CrossingReport { m, b_star, lambda_star, formula_value });
        }
        prev_b = bj;
        prev_g = gj;
    }
    Err(FibreError::NoCrossingInRange { m })
}

/// Normalized positive radial eigenfunction
/// `f(r) = N (1/r) W(Λ, m/2, b r²/2)` of the exterior fibre operator, with
/// `∫_1^∞ f² r dr = 1`.
///
/// At `λ = b` (only reachable for `b = 2m`) the Whittaker profile reduces
/// to the explicit Landau state `N r^m e^{-b r²/4}`, which is used
/// directly.
pub struct RadialEigenfunction {
    pub m: i32,
    pub b: f64,
    pub lambda: f64,
    /// Quadrature cutoff: `b r_max²/2 = 45`.
    pub r_max: f64,
    /// Bound on the discarded tail `∫_{r_max}^∞ f² r dr`.
    pub tail_bound: f64,
    norm: f64,
    landau: bool,
}

impl RadialEigenfunction {
    pub fn new(m: i32, b: f64, lambda: f64) -> Result<Self, FibreError> {
        if !(b > 0.0) {
            return Err(FibreError::Domain(format!("b = {b} must be > 0")));
        }
        if !(lambda > 0.0 && lambda <= b) {
            return Err(FibreError::Domain(format!(
                "λ = {lambda} is not a sub-Landau eigenvalue candidate for b = {b}"
            )));
        }
        let landau = lambda >= b * (1.0 - 1e-12);
        let r_max = (90.0 / b).sqrt().max(3.0);
        let mut ef =
            RadialEigenfunction { m, b, lambda, r_max, tail_bound: 0.0, norm: 1.0, landau };

        let raw = quad::integrate(
            |r| {
                let v = ef.raw_value(r).unwrap_or(f64::NAN);
                v * v * r
            },
            1.0,
            r_max,
            1e-12,
            0.0,
        )?;
        ef.norm = 1.0 / raw.value.sqrt();

        let edge = ef.raw_value(r_max)? * ef.norm;
        let big_l = 0.5 * m as f64 + 0.5 * lambda / b;
        let denom = b * r_max - 4.0 * big_l.max(0.0) / r_max;
        ef.tail_bound = edge * edge * r_max / denom.max(1e-6);
        Ok(ef)
    }

    fn raw_value(&self, r: f64) -> Result<f64, FibreError> {
        if self.landau {
            return Ok(r.powi(self.m) * (-0.25 * self.b * r * r).exp());
        }
        let z = 0.5 * self.b * r * r;
        let big_l = 0.5 * self.m as f64 + 0.5 * self.lambda / self.b;
        let w = specfun::whittaker_w(&WhittakerArgs::new(big_l, 0.5 * self.m as f64, z))?;
        Ok(w / r)
    }

    /// `f(r)`.
    pub fn value(&self, r: f64) -> Result<f64, FibreError> {
        if !(r > 0.0) {
            return Err(FibreError::Domain(format!("r = {r} must be > 0")));
        }
        Ok(self.norm * self.raw_value(r)?)
    }

    /// `(f(r), f'(r))`.
    pub fn eval(&self, r: f64) -> Result<(f64, f64), FibreError> {
        if !(r > 0.0) {
            return Err(FibreError::Domain(format!("r = {r} must be > 0")));
        }
        if self.landau {
            let f = self.norm * r.powi(self.m) * (-0.25 * self.b * r * r).exp();
            let fp = (self.m as f64 / r - 0.5 * self.b * r) * f;
            return Ok((f, fp));
        }
        let z = 0.5 * self.b * r * r;
        let mu = 0.5 * self.m as f64;
        let big_l = 0.5 * self.m as f64 + 0.5 * self.lambda / self.b;
        let args = WhittakerArgs::new(big_l, mu, z);
        let w = specfun::whittaker_w(&args)?;
        let dw = specfun::whittaker_w_deriv(&args)?;
        // f = N W(z(r))/r, dz/dr = b r
        let f = self.norm * w / r;
        let fp = self.norm * (-w / (r * r) + dw * self.b);
        Ok((f, fp))
    }
}

/// Convenience one-shot evaluation of the normalized eigenfunction; builds
/// the profile (including its normalization integral) on every call, so
/// batch users should construct [`RadialEigenfunction`] once instead.
pub fn eigenfunction_radial(m: i32, b: f64, lambda: f64, r: f64) -> Result<(f64, f64), FibreError> {
    RadialEigenfunction::new(m, b, lambda)?.eval(r)
}

/// Band slope `(λ₁⁽ᵐ⁾)'(b) = -∫_1^∞ (m - b r²/2) f² r dr` through the
/// normalized eigenfunction (Feynman–Hellmann). Exceeds 1 at `b = 2m`,
/// which is what makes the Landau touching a transversal crossing.
pub fn feynman_hellmann_slope(m: i32, b: f64) -> Result<f64, FibreError> {
    let lambda = solve_band(m, b, Side::Exterior)?;
    let ef = RadialEigenfunction::new(m, b, lambda)?;
    let mf = m as f64;
    let integral = quad::integrate(
        |r| {
            let f = ef.value(r).unwrap_or(f64::NAN);
            (0.5 * b * r * r - mf) * f * f * r
        },
        1.0,
        ef.r_max,
        1e-11,
        1e-14,
    )?;
    Ok(integral.value)
}
