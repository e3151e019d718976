//! Star-shaped exterior domains: moments, boundary terms, eigenvalue
//! upper bounds, and the local-optimality machinery.
//!
//! A domain `Ω = {(r,θ): r < ρ(θ)}` is stored through the Fourier
//! coefficients of its radial profile. For `0 < b < 5 - √17` the ground
//! state of the exterior unit disk lives on the `m = 1` fibre; extending
//! its radial eigenfunction `f` across `r = 1` gives the trial state
//! `v = f(r) e^{iθ}`, and the min-max principle yields the computable
//! upper bound
//!
//! ```text
//! λ₁(b, Ω^ext) ≤ λ₁(b, B₁^ext) - ∫₀^{2π} F₁(ρ(θ)) dθ / ‖v‖²_{L²(Ω^ext)},
//! ```
//!
//! with `F₁(r) = r f'(r) f(r)` (the magnetic part of the boundary term
//! vanishes because `|v|` is radial). The local-optimality verdict runs
//! the Jensen-convexity chain: under the `p`-moment constraint, with
//! `α = 1/(2-p)` and `F_α(r) = r^α f'(r^α) f(r^α)` convex near 1, the
//! boundary term is nonnegative and the disk bound follows. The weak-field
//! functional `G(Ω) = |Ω|/(2π) + π/(2 I₄(Ω^ext))` governs the second-order
//! term of the small-`b` upper bound built from the explicit trial state
//! `(r + c/r) e^{-br²/4}`; its optimal parameter is `c = π/I₄`.
//!
//! All angular integrals run on one fixed 4096-node periodic trapezoid
//! grid (spectrally accurate for smooth profiles).

use crate::fibre::{self, FibreError, RadialEigenfunction, Side};
use crate::quad::{self, QuadError};

/// Number of nodes of the fixed periodic θ-grid.
pub const THETA_NODES: usize = 4096;

/// Threshold `5 - √17` below which the exterior-disk ground state is the
/// `m = 1` band.
pub fn m1_ground_state_threshold() -> f64 {
    5.0 - 17f64.sqrt()
}

/// Threshold `4 - 2√3` of the convexity window in the field strength.
pub fn convexity_field_threshold() -> f64 {
    4.0 - 2.0 * 3f64.sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeometryError {
    Domain(String),
    /// The radial profile dips to zero or below.
    NonPositiveRadius { theta: f64, rho: f64 },
    /// A stated hypothesis of the bound being evaluated fails.
    HypothesisViolated { hypothesis: String },
    /// `ρ^{1/α}` leaves the interval on which `F_α` was verified convex.
    ConvexityWindowExceeded { window: (f64, f64), range: (f64, f64) },
    Fibre(FibreError),
    Quadrature(QuadError),
}

impl std::fmt::Display for GeometryError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GeometryError::Domain(msg) => write!(f, "domain error: {msg}"),
            GeometryError::NonPositiveRadius { theta, rho } => {
                write!(f, "profile is not positive: ρ({theta}) = {rho}")
            }
            GeometryError::HypothesisViolated { hypothesis } => {
                write!(f, "hypothesis violated: {hypothesis}")
            }
            GeometryError::ConvexityWindowExceeded { window, range } => write!(
                f,
                "ρ^(1/α) range [{}, {}] exceeds the verified convexity window ({}, {})",
                range.0, range.1, window.0, window.1
            ),
            GeometryError::Fibre(e) => write!(f, "{e}"),
            GeometryError::Quadrature(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for GeometryError {}

impl From<FibreError> for GeometryError {
    fn from(e: FibreError) -> Self {
        GeometryError::Fibre(e)
    }
}

impl From<QuadError> for GeometryError {
    fn from(e: QuadError) -> Self {
        GeometryError::Quadrature(e)
    }
}

/// Bounded star-shaped domain `{r < ρ(θ)}` with
/// `ρ(θ) = a₀ + Σ_j (a_j cos jθ + b_j sin jθ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarShapedDomain {
    a0: f64,
    cos_coeffs: Vec<f64>,
    sin_coeffs: Vec<f64>,
}

impl StarShapedDomain {
    /// Build and validate: `min ρ > 0` on the 4096-node grid.
    pub fn new(
        a0: f64,
        cos_coeffs: Vec<f64>,
        sin_coeffs: Vec<f64>,
    ) -> Result<Self, GeometryError> {
        let d = StarShapedDomain { a0, cos_coeffs, sin_coeffs };
        for i in 0..THETA_NODES {
            let theta = d.theta(i);
            let rho = d.rho(theta);
            if !(rho > 0.0) || !rho.is_finite() {
                return Err(GeometryError::NonPositiveRadius { theta, rho });
            }
        }
        Ok(d)
    }

    pub fn disk(radius: f64) -> Result<Self, GeometryError> {
        StarShapedDomain::new(radius, Vec::new(), Vec::new())
    }

    /// Single cosine harmonic `ρ = a₀ + ε cos(jθ)`.
    pub fn cosine(a0: f64, j: usize, eps: f64) -> Result<Self, GeometryError> {
        if j == 0 {
            return StarShapedDomain::new(a0 + eps, Vec::new(), Vec::new());
        }
        let mut cos_coeffs = vec![0.0; j];
        cos_coeffs[j - 1] = eps;
        StarShapedDomain::new(a0, cos_coeffs, Vec::new())
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos_coeffs
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin_coeffs
    }

    /// Node `i` of the fixed periodic grid.
    pub fn theta(&self, i: usize) -> f64 {
        2.0 * std::f64::consts::PI * i as f64 / THETA_NODES as f64
    }

    pub fn rho(&self, theta: f64) -> f64 {
        let mut r = self.a0;
        for (j, &a) in self.cos_coeffs.iter().enumerate() {
            r += a * ((j + 1) as f64 * theta).cos();
        }
        for (j, &b) in self.sin_coeffs.iter().enumerate() {
            r += b * ((j + 1) as f64 * theta).sin();
        }
        r
    }

    /// `dρ/dθ`.
    pub fn rho_dot(&self, theta: f64) -> f64 {
        let mut r = 0.0;
        for (j, &a) in self.cos_coeffs.iter().enumerate() {
            let jf = (j + 1) as f64;
            r -= a * jf * (jf * theta).sin();
        }
        for (j, &b) in self.sin_coeffs.iter().enumerate() {
            let jf = (j + 1) as f64;
            r += b * jf * (jf * theta).cos();
        }
        r
    }

    /// Rescaled domain `c·ρ`.
    pub fn scaled(&self, c: f64) -> Result<Self, GeometryError> {
        if !(c > 0.0) {
            return Err(GeometryError::Domain(format!("scale factor {c} must be > 0")));
        }
        StarShapedDomain::new(
            c * self.a0,
            self.cos_coeffs.iter().map(|a| c * a).collect(),
            self.sin_coeffs.iter().map(|b| c * b).collect(),
        )
    }

    pub fn is_disk(&self) -> bool {
        self.cos_coeffs.iter().all(|&a| a == 0.0) && self.sin_coeffs.iter().all(|&b| b == 0.0)
    }

    pub fn rho_range(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..THETA_NODES {
            let r = self.rho(self.theta(i));
            lo = lo.min(r);
            hi = hi.max(r);
        }
        (lo, hi)
    }

    /// Mean of a function of θ over the periodic grid times 2π (the
    /// periodic trapezoid rule).
    fn angular_integral(&self, f: impl Fn(f64) -> f64) -> f64 {
        let mut sum = 0.0;
        for i in 0..THETA_NODES {
            sum += f(self.theta(i));
        }
        sum * 2.0 * std::f64::consts::PI / THETA_NODES as f64
    }
}

/// `p`-moment of the exterior: `I_p(Ω^ext) = (1/(p-2)) ∫ ρ(θ)^{2-p} dθ`
/// (finite for `p > 2` since the origin lies inside Ω).
pub fn moment_ip(d: &StarShapedDomain, p: f64) -> Result<f64, GeometryError> {
    if !(p > 2.0) {
        return Err(GeometryError::Domain(format!("moment exponent p = {p} must be > 2")));
    }
    Ok(d.angular_integral(|t| d.rho(t).powf(2.0 - p)) / (p - 2.0))
}

/// Area `|Ω| = ½ ∫ ρ² dθ`.
pub fn area(d: &StarShapedDomain) -> f64 {
    0.5 * d.angular_integral(|t| d.rho(t).powi(2))
}

/// The `m = 1` trial profile on the exterior of the unit disk: the band
/// eigenvalue `λ₁⁽¹⁾(b)` together with its normalized radial
/// eigenfunction, extended smoothly across `r = 1` by the same Whittaker
/// formula.
pub struct TrialProfile {
    pub b: f64,
    pub lambda: f64,
    pub eigenfunction: RadialEigenfunction,
}

impl TrialProfile {
    /// Requires `0 < b < 5 - √17` so that `λ₁(b, B₁^ext)` is the `m = 1`
    /// band.
    pub fn new(b: f64) -> Result<Self, GeometryError> {
        if !(b > 0.0 && b < m1_ground_state_threshold()) {
            return Err(GeometryError::HypothesisViolated {
                hypothesis: format!(
                    "b = {b} outside (0, 5-√17) where λ₁(b, B₁^ext) is the m = 1 band"
                ),
            });
        }
        let lambda = fibre::solve_band(1, b, Side::Exterior)?;
        let eigenfunction = RadialEigenfunction::new(1, b, lambda)?;
        Ok(TrialProfile { b, lambda, eigenfunction })
    }

    /// `F₁(r) = r f'(r) f(r)`.
    pub fn f1(&self, r: f64) -> Result<f64, GeometryError> {
        let (f, fp) = self.eigenfunction.eval(r)?;
        Ok(r * fp * f)
    }

    /// `F_α(r) = r^α f'(r^α) f(r^α)`.
    pub fn f_alpha(&self, alpha: f64, r: f64) -> Result<f64, GeometryError> {
        if alpha == 0.0 {
            return Err(GeometryError::Domain("α must be nonzero".into()));
        }
        self.f1(r.powf(alpha))
    }

    /// `∫_1^x f² r dr` (signed; negative for `x < 1`).
    fn radial_mass(&self, x: f64) -> Result<f64, GeometryError> {
        let ef = &self.eigenfunction;
        let failed: std::cell::Cell<Option<FibreError>> = std::cell::Cell::new(None);
        let v = quad::fixed_panels(
            |r| match ef.value(r) {
                Ok(f) => f * f * r,
                Err(e) => {
                    failed.set(Some(e));
                    f64::NAN
                }
            },
            1.0,
            x,
            0.25,
        );
        if let Some(e) = failed.take() {
            return Err(e.into());
        }
        Ok(v)
    }
}

/// Boundary term `∫_{∂Ω} (ν·∇v) v̄ dσ = ∫₀^{2π} F₁(ρ(θ)) dθ` of the
/// min-max bound; the tangential/magnetic contributions vanish
/// analytically and are not computed.
pub fn boundary_term(d: &StarShapedDomain, profile: &TrialProfile) -> Result<f64, GeometryError> {
    let mut sum = 0.0;
    for i in 0..THETA_NODES {
        sum += profile.f1(d.rho(d.theta(i)))?;
    }
    Ok(sum * 2.0 * std::f64::consts::PI / THETA_NODES as f64)
}

/// `‖v‖²_{L²(Ω^ext)} = ∫₀^{2π} ∫_{ρ(θ)}^∞ f² r dr dθ`, using
/// `∫_ρ^∞ = 1 - ∫_1^ρ` per ray.
pub fn exterior_norm_sq(
    d: &StarShapedDomain,
    profile: &TrialProfile,
) -> Result<f64, GeometryError> {
    let mut sum = 0.0;
    for i in 0..THETA_NODES {
        sum += 1.0 - profile.radial_mass(d.rho(d.theta(i)))?;
    }
    Ok(sum * 2.0 * std::f64::consts::PI / THETA_NODES as f64)
}

/// The magnetic boundary flux `∫_{∂Ω} (ν·A) |v|² dσ`; vanishes identically
/// because `A` is tangent to the level sets of the radial `|v|`. Computed
/// by direct quadrature as a testable gauge fact:
/// `(ν·A) dσ = -½ ρ ρ̇ dθ`.
pub fn magnetic_boundary_flux(
    d: &StarShapedDomain,
    profile: &TrialProfile,
) -> Result<f64, GeometryError> {
    let mut sum = 0.0;
    for i in 0..THETA_NODES {
        let t = d.theta(i);
        let rho = d.rho(t);
        let f = profile.eigenfunction.value(rho)?;
        sum += -0.5 * rho * d.rho_dot(t) * f * f;
    }
    Ok(sum * 2.0 * std::f64::consts::PI / THETA_NODES as f64)
}

/// Result of the min-max upper bound for `λ₁(b, Ω^ext)`.
#[derive(Debug, Clone, Copy)]
pub struct TrialBoundReport {
    pub b: f64,
    /// `λ₁(b, B₁^ext)`, the disk reference value.
    pub disk_eigenvalue: f64,
    pub boundary_term: f64,
    pub exterior_norm_sq: f64,
    /// `λ₁(b, B₁^ext) - boundary_term / exterior_norm_sq ≥ λ₁(b, Ω^ext)`.
    pub bound: f64,
}

/// Min-max upper bound `λ₁(b, Ω^ext) ≤ λ₁(b, B₁^ext) - ∫F₁(ρ)dθ / ‖v‖²`.
/// Requires `0 ∈ Ω` (positivity of ρ is enforced by the domain type) and
/// `b < 5 - √17`.
pub fn upper_bound_minmax(
    d: &StarShapedDomain,
    b: f64,
) -> Result<TrialBoundReport, GeometryError> {
    let profile = TrialProfile::new(b)?;
    upper_bound_with_profile(d, &profile)
}

fn upper_bound_with_profile(
    d: &StarShapedDomain,
    profile: &TrialProfile,
) -> Result<TrialBoundReport, GeometryError> {
    let bt = boundary_term(d, profile)?;
    let norm = exterior_norm_sq(d, profile)?;
    if !(norm > 0.0) {
        return Err(GeometryError::Domain(format!("exterior norm {norm} must be positive")));
    }
    Ok(TrialBoundReport {
        b: profile.b,
        disk_eigenvalue: profile.lambda,
        boundary_term: bt,
        exterior_norm_sq: norm,
        bound: profile.lambda - bt / norm,
    })
}

/// Closed form of `F_α''(1)`:
/// `|f(1)|² [(2α² - α)(1 - b + b²/4 - λ) - 2α²(1 - b²/4)]`.
pub fn f_alpha_second_derivative(b: f64, lambda: f64, f1_sq: f64, alpha: f64) -> f64 {
    f1_sq
        * ((2.0 * alpha * alpha - alpha) * (1.0 - b + 0.25 * b * b - lambda)
            - 2.0 * alpha * alpha * (1.0 - 0.25 * b * b))
}

/// Threshold exponent `p⋆(b) = 2 + (16b - 4b²)/(4 - 8b + b²)`, defined on
/// `b ∈ (0, 4 - 2√3)`.
pub fn p_star(b: f64) -> Result<f64, GeometryError> {
    if !(b > 0.0 && b < convexity_field_threshold()) {
        return Err(GeometryError::HypothesisViolated {
            hypothesis: format!("p⋆ needs b ∈ (0, 4-2√3) (got b = {b})"),
        });
    }
    Ok(2.0 + (16.0 * b - 4.0 * b * b) / (4.0 - 8.0 * b + b * b))
}

/// Largest interval around 1 on which `F_α'' > 0`, detected by scanning a
/// finite-difference second derivative on `[1/2, 3/2]`. Stands in for the
/// (non-explicit) admissible perturbation radius of the local-optimality
/// statement.
pub fn convexity_window(
    profile: &TrialProfile,
    alpha: f64,
) -> Result<(f64, f64), GeometryError> {
    let h = 1e-3;
    let fpp = |r: f64| -> Result<f64, GeometryError> {
        let a = profile.f_alpha(alpha, r - h)?;
        let b = profile.f_alpha(alpha, r)?;
        let c = profile.f_alpha(alpha, r + h)?;
        Ok((a - 2.0 * b + c) / (h * h))
    };
    if fpp(1.0)? <= 0.0 {
        return Err(GeometryError::HypothesisViolated {
            hypothesis: format!("F_α'' (α = {alpha}) is not positive at r = 1"),
        });
    }
    let steps = 128;
    let dr = 0.5 / steps as f64;
    let mut lo = 0.5;
    for k in 1..=steps {
        let r = 1.0 - k as f64 * dr;
        if fpp(r)? <= 0.0 {
            lo = r + dr;
            break;
        }
    }
    let mut hi = 1.5;
    for k in 1..=steps {
        let r = 1.0 + k as f64 * dr;
        if fpp(r)? <= 0.0 {
            hi = r - dr;
            break;
        }
    }
    Ok((lo, hi))
}

/// Verdict of the local-optimality experiment.
#[derive(Debug, Clone)]
pub struct OptimalityVerdict {
    pub p: f64,
    pub p_star: f64,
    pub alpha: f64,
    /// Scalar applied to ρ to enforce the moment constraint
    /// `I_p(Ω^ext) = I_p(B_R^ext)`.
    pub rescale: f64,
    /// `∫ F₁(ρ) dθ` after the rescale (at unit scale).
    pub jensen_lhs: f64,
    /// `2π F_α(((p-2)/2π) I_p)` — zero when the constraint holds.
    pub jensen_rhs: f64,
    pub jensen_margin: f64,
    /// Interval around 1 where `F_α''` was verified positive.
    pub window: (f64, f64),
    /// Range of `ρ^{1/α}` over the rescaled unit-scale profile.
    pub rho_pow_range: (f64, f64),
    /// Min-max bound for `λ₁(b, Ω^ext)` at the original scale.
    pub bound: f64,
    /// `λ₁(b, B_R^ext)` at the original scale.
    pub disk_eigenvalue: f64,
    pub holds: bool,
}

/// Local-optimality check: rescale the domain onto the moment constraint
/// `I_p(Ω^ext) = I_p(B_R^ext)`, verify the Jensen chain
/// `∫F₁(ρ)dθ ≥ 2π F_α(((p-2)/2π) I_p) = 0`, the convexity-window
/// containment of `ρ^{1/α}`, and the resulting inequality
/// `λ₁(b, Ω^ext) ≤ λ₁(b, B_R^ext)`.
///
/// Hypotheses: `bR² ∈ (0, 4-2√3)` and `p > p⋆(bR²)`.
pub fn local_optimality_check(
    d: &StarShapedDomain,
    b: f64,
    p: f64,
    radius: f64,
) -> Result<OptimalityVerdict, GeometryError> {
    if !(radius > 0.0) {
        return Err(GeometryError::Domain(format!("R = {radius} must be > 0")));
    }
    let b_eff = b * radius * radius;
    let p_threshold = p_star(b_eff)?; // also refuses b_eff ∉ (0, 4-2√3)
    if !(p > p_threshold) {
        return Err(GeometryError::HypothesisViolated {
            hypothesis: format!("p = {p} must exceed p⋆(bR²) = {p_threshold}"),
        });
    }

    // rescale onto the constraint, then reduce to the unit disk:
    // I_p scales as c^{2-p}, so one scalar is enough
    let ip = moment_ip(d, p)?;
    let ip_disk_r = 2.0 * std::f64::consts::PI * radius.powf(2.0 - p) / (p - 2.0);
    let rescale = (ip_disk_r / ip).powf(1.0 / (2.0 - p));
    let d_unit = d.scaled(rescale / radius)?;

    let profile = TrialProfile::new(b_eff)?;
    let alpha = 1.0 / (2.0 - p);

    let jensen_lhs = boundary_term(&d_unit, &profile)?;
    let ip_unit = moment_ip(&d_unit, p)?;
    let jensen_arg = (p - 2.0) / (2.0 * std::f64::consts::PI) * ip_unit;
    let jensen_rhs = 2.0 * std::f64::consts::PI * profile.f_alpha(alpha, jensen_arg)?;
    let jensen_margin = jensen_lhs - jensen_rhs;

    let window = convexity_window(&profile, alpha)?;
    let (rho_lo, rho_hi) = d_unit.rho_range();
    // 1/α = 2 - p < 0: the power map reverses order
    let rho_pow_range = (rho_hi.powf(2.0 - p), rho_lo.powf(2.0 - p));
    if !(rho_pow_range.0 > window.0 && rho_pow_range.1 < window.1) {
        return Err(GeometryError::ConvexityWindowExceeded { window, range: rho_pow_range });
    }

    let unit_report = upper_bound_with_profile(&d_unit, &profile)?;
    let bound = unit_report.bound / (radius * radius);
    let disk_eigenvalue = profile.lambda / (radius * radius);

    Ok(OptimalityVerdict {
        p,
        p_star: p_threshold,
        alpha,
        rescale,
        jensen_lhs,
        jensen_rhs,
        jensen_margin,
        window,
        rho_pow_range,
        bound,
        disk_eigenvalue,
        holds: jensen_margin >= -1e-10 && bound <= disk_eigenvalue + 1e-12,
    })
}

/// Weak-field coefficient `G(Ω) = |Ω|/(2π) + π/(2 I₄(Ω^ext))`; equals `R²`
/// for the disk of radius `R` and governs
/// `λ₁(b, Ω^ext) ≤ b - G(Ω) b² + O(b^{5/2})`.
pub fn weak_field_bound_g(d: &StarShapedDomain) -> Result<f64, GeometryError> {
    let i4 = moment_ip(d, 4.0)?;
    Ok(area(d) / (2.0 * std::f64::consts::PI) + std::f64::consts::PI / (2.0 * i4))
}

/// The `c`-parameterized weak-field upper bound
/// `b - (c + (|Ω| - c² I₄)/(2π)) b²` from the trial state
/// `(r + c/r) e^{-br²/4}`.
#[derive(Debug, Clone, Copy)]
pub struct WeakFieldBound {
    pub value: f64,
    /// The two-term expression is asymptotic; flagged false for `b > 0.1`.
    pub weak_field_regime: bool,
}

pub fn weak_field_trial_bound(
    d: &StarShapedDomain,
    b: f64,
    c: f64,
) -> Result<WeakFieldBound, GeometryError> {
    if !(b > 0.0) {
        return Err(GeometryError::Domain(format!("b = {b} must be > 0")));
    }
    let i4 = moment_ip(d, 4.0)?;
    let coefficient = c + (area(d) - c * c * i4) / (2.0 * std::f64::consts::PI);
    Ok(WeakFieldBound { value: b - coefficient * b * b, weak_field_regime: b <= 0.1 })
}

/// Optimal trial parameter `c = π / I₄(Ω^ext)` (closed form).
pub fn weak_field_optimal_c(d: &StarShapedDomain) -> Result<f64, GeometryError> {
    Ok(std::f64::consts::PI / moment_ip(d, 4.0)?)
}

/// Radius `R⋆ = √(π/I₄(Ω^ext))` of the disk with the same 4-moment.
pub fn r_star(d: &StarShapedDomain) -> Result<f64, GeometryError> {
    Ok((std::f64::consts::PI / moment_ip(d, 4.0)?).sqrt())
}
