//! Finite-difference oracle for the 1D eigenproblems.
//!
//! Every spectral quantity computed from the secular equations is
//! cross-checked against a plain second-order central-difference
//! discretization of `-d²/dr² + q(r)`: symmetric tridiagonal assembly,
//! eigenvalues by Sturm-sequence counting plus bisection, and a Richardson
//! pass over grids `(n, 2n)` that both sharpens the value and supplies an
//! honest per-eigenvalue error estimate.
//!
//! Three problem families are packaged here:
//!
//! - the exterior fibre operators, unitarily transformed onto
//!   `L²((1, R_max))` with potential `(m² - 1/4)/r² - m b + b² r²/4` and a
//!   Robin condition `v'(1) = v(1)/2` (the image of the Neumann condition
//!   under the half-power weight),
//! - the scaled half-line operators with potential
//!   `(4m² - 1)/(4(r+√(b/2))²) + (r+√(b/2))² - 2m` and Robin coefficient
//!   `√(1/(2b))` at the origin,
//! - their `b → 0` limit with the singular potential
//!   `(4m² - 1)/(4r²) + r² - 2m` and a Dirichlet condition at `0` (the
//!   grid is offset by one spacing, the regularization error is absorbed
//!   into the Richardson estimate).

/// Uniform grid on `[r_min, r_max]` with `n` nodes.
#[derive(Debug, Clone, Copy)]
pub struct Grid1D {
    pub r_min: f64,
    pub r_max: f64,
    pub n: usize,
}

impl Grid1D {
    pub fn new(r_min: f64, r_max: f64, n: usize) -> Result<Self, DiscretizeError> {
        if !(r_max > r_min) || n < 64 {
            return Err(DiscretizeError::Domain(format!(
                "grid needs r_max > r_min and n ≥ 64 (got [{r_min}, {r_max}], n = {n})"
            )));
        }
        Ok(Grid1D { r_min, r_max, n })
    }

    pub fn spacing(&self) -> f64 {
        (self.r_max - self.r_min) / (self.n - 1) as f64
    }

    /// Same spacing, domain extended by the given factor (used by the
    /// truncation-sensitivity checks: only the cutoff moves, not `h`).
    pub fn extended(&self, factor: f64) -> Grid1D {
        let h = self.spacing();
        let extra = ((self.r_max - self.r_min) * (factor - 1.0) / h).ceil() as usize;
        Grid1D {
            r_min: self.r_min,
            r_max: self.r_max + extra as f64 * h,
            n: self.n + extra,
        }
    }

    fn refined(&self) -> Grid1D {
        Grid1D {
            r_min: self.r_min,
            r_max: self.r_max,
            n: 2 * self.n - 1,
        }
    }
}

/// Boundary condition at the left endpoint; the right endpoint is always
/// Dirichlet (domain truncation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LeftBoundary {
    Dirichlet,
    Neumann,
    /// `u'(r_min) = γ u(r_min)`.
    Robin(f64),
}

/// A Sturm–Liouville eigenproblem `-u'' + q(r) u = λ u` on a grid.
pub struct SturmLiouvilleSpec {
    potential: Box<dyn Fn(f64) -> f64>,
    pub left: LeftBoundary,
}

impl SturmLiouvilleSpec {
    pub fn new(potential: impl Fn(f64) -> f64 + 'static, left: LeftBoundary) -> Self {
        SturmLiouvilleSpec { potential: Box::new(potential), left }
    }

    pub fn potential(&self, r: f64) -> f64 {
        (self.potential)(r)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DiscretizeError {
    /// The potential evaluated to a non-finite value at a grid node.
    IndefiniteAssembly { at: f64 },
    /// Bisection failed to shrink the eigenvalue bracket.
    BisectionStall { index: usize },
    Domain(String),
}

impl std::fmt::Display for DiscretizeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DiscretizeError::IndefiniteAssembly { at } => {
                write!(f, "potential is not finite at r = {at}")
            }
            DiscretizeError::BisectionStall { index } => {
                write!(f, "bisection stalled for eigenvalue #{index}")
            }
            DiscretizeError::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl std::error::Error for DiscretizeError {}

/// Symmetric tridiagonal matrix (main diagonal + one off-diagonal).
struct Tridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

/// Assemble the FD matrix. Robin/Neumann rows use ghost-node elimination;
/// the resulting first row `[2/h² + 2γ/h + q₀, -2/h²]` is symmetrized by
/// the diagonal similarity `diag(√½, 1, …)`, which rescales the first
/// off-diagonal entry to `-√2/h²` and leaves the spectrum unchanged.
fn assemble(spec: &SturmLiouvilleSpec, grid: &Grid1D) -> Result<Tridiagonal, DiscretizeError> {
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);

    // unknowns: interior nodes, plus the left endpoint for Neumann/Robin
    let first_node = match spec.left {
        LeftBoundary::Dirichlet => 1,
        _ => 0,
    };
    let count = grid.n - 1 - first_node; // right endpoint always excluded

    let mut diag = Vec::with_capacity(count);
    let mut off = Vec::with_capacity(count.saturating_sub(1));

    for idx in 0..count {
        let r = grid.r_min + (first_node + idx) as f64 * h;
        let q = spec.potential(r);
        if !q.is_finite() {
            return Err(DiscretizeError::IndefiniteAssembly { at: r });
        }
        let mut d = 2.0 * inv_h2 + q;
        if idx == 0 {
            if let LeftBoundary::Robin(gamma) = spec.left {
                d += 2.0 * gamma / h;
            }
        }
        diag.push(d);
        if idx + 1 < count {
            let boundary_row = idx == 0 && spec.left != LeftBoundary::Dirichlet;
            off.push(if boundary_row {
                -std::f64::consts::SQRT_2 * inv_h2
            } else {
                -inv_h2
            });
        }
    }
    Ok(Tridiagonal { diag, off })
}

/// Number of eigenvalues strictly below `x` (Sturm sequence via the LDLᵀ
/// pivot signs).
fn sturm_count(t: &Tridiagonal, x: f64) -> usize {
    const PIVMIN: f64 = 1e-280;
    let mut count = 0;
    let mut d = t.diag[0] - x;
    if d.abs() < PIVMIN {
        d = -PIVMIN;
    }
    if d < 0.0 {
        count += 1;
    }
    for i in 1..t.diag.len() {
        let e = t.off[i - 1];
        d = t.diag[i] - x - e * e / d;
        if d.abs() < PIVMIN {
            d = -PIVMIN;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

const BISECTION_TOL: f64 = 1e-10;

fn eigenvalues_by_bisection(t: &Tridiagonal, k: usize) -> Result<Vec<f64>, DiscretizeError> {
    // Gershgorin enclosure
    let n = t.diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut radius = 0.0;
        if i > 0 {
            radius += t.off[i - 1].abs();
        }
        if i < n - 1 {
            radius += t.off[i].abs();
        }
        lo = lo.min(t.diag[i] - radius);
        hi = hi.max(t.diag[i] + radius);
    }

    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        let mut a = lo;
        let mut b = hi;
        let mut iterations = 0usize;
        while b - a > BISECTION_TOL {
            iterations += 1;
            if iterations > 300 {
                return Err(DiscretizeError::BisectionStall { index: j });
            }
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break; // interval at floating-point resolution
            }
            if sturm_count(t, mid) > j {
                b = mid;
            } else {
                a = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

/// Eigenvalue with its Richardson error estimate.
#[derive(Debug, Clone, Copy)]
pub struct EigenEstimate {
    /// Richardson-extrapolated eigenvalue from the `(n, 2n)` pair.
    pub value: f64,
    /// Error estimate `|λ_{2n} - λ_n| / 3` plus bisection slack; bounds the
    /// discretization error of the fine-grid value, which makes it a
    /// conservative bound for the extrapolated one.
    pub error: f64,
}

/// The `k` smallest eigenvalues of the discretized problem with Richardson
/// error control.
pub fn lowest_eigenvalues(
    spec: &SturmLiouvilleSpec,
    grid: &Grid1D,
    k: usize,
) -> Result<Vec<EigenEstimate>, DiscretizeError> {
    if k == 0 || k > 10 {
        return Err(DiscretizeError::Domain(format!("k = {k} out of range 1..=10")));
    }
    let coarse = eigenvalues_single_grid(spec, grid, k)?;
    let fine = eigenvalues_single_grid(spec, &grid.refined(), k)?;
    Ok(coarse
        .iter()
        .zip(fine.iter())
        .map(|(&c, &f)| EigenEstimate {
            value: f + (f - c) / 3.0,
            error: (f - c).abs() / 3.0 + 2.0 * BISECTION_TOL,
        })
        .collect())
}

/// Single-grid solve (no extrapolation); exposed for the convergence-order
/// checks.
pub fn eigenvalues_single_grid(
    spec: &SturmLiouvilleSpec,
    grid: &Grid1D,
    k: usize,
) -> Result<Vec<f64>, DiscretizeError> {
    let t = assemble(spec, grid)?;
    eigenvalues_by_bisection(&t, k)
}

pub const DEFAULT_NODES: usize = 4096;

/// Truncation radius for the exterior problems: `b R² / 2 ≥ 40` pushes the
/// Gaussian factor of the eigenfunctions below 1e-17 at the cutoff.
pub fn exterior_r_max(b: f64) -> f64 {
    (80.0 / b).sqrt().max(4.0)
}

/// Exterior fibre operator after the unitary map `u ↦ r^{-1/2} u`:
/// potential `(m² - 1/4)/r² - m b + b² r²/4` on `[1, r_max]`, Robin
/// `v'(1) = v(1)/2` on the left, Dirichlet truncation on the right.
pub fn exterior_fibre_spec(m: i32, b: f64, r_max: f64) -> (SturmLiouvilleSpec, Grid1D) {
    let mf = m as f64;
    let spec = SturmLiouvilleSpec::new(
        move |r: f64| (mf * mf - 0.25) / (r * r) - mf * b + 0.25 * b * b * r * r,
        LeftBoundary::Robin(0.5),
    );
    let grid = Grid1D { r_min: 1.0, r_max, n: DEFAULT_NODES };
    (spec, grid)
}

/// Field parameter of the half-line comparison operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EffectiveField {
    /// The scaled operator at field strength `b > 0` (Robin condition
    /// `u'(0) = √(1/(2b)) u(0)`).
    Scaled(f64),
    /// The `b → 0` limit with Dirichlet condition at the origin.
    Star,
}

/// Half-line length for the effective operators; the oscillator-type
/// eigenfunctions have decayed below rounding at 8.
const EFFECTIVE_LENGTH: f64 = 8.0;

/// The scaled operator (potential `(4m²-1)/(4(r+√(b/2))²) + (r+√(b/2))² - 2m`)
/// or its limit (`(4m²-1)/(4r²) + r² - 2m`, Dirichlet at 0).
pub fn effective_operator_spec(m: i32, field: EffectiveField) -> (SturmLiouvilleSpec, Grid1D) {
    let mf = m as f64;
    let centrifugal = 4.0 * mf * mf - 1.0;
    let grid = Grid1D { r_min: 0.0, r_max: EFFECTIVE_LENGTH, n: DEFAULT_NODES };
    match field {
        EffectiveField::Scaled(b) => {
            let shift = (0.5 * b).sqrt();
            let spec = SturmLiouvilleSpec::new(
                move |r: f64| {
                    let s = r + shift;
                    centrifugal / (4.0 * s * s) + s * s - 2.0 * mf
                },
                LeftBoundary::Robin((0.5 / b).sqrt()),
            );
            (spec, grid)
        }
        EffectiveField::Star => {
            let spec = SturmLiouvilleSpec::new(
                move |r: f64| centrifugal / (4.0 * r * r) + r * r - 2.0 * mf,
                LeftBoundary::Dirichlet,
            );
            (spec, grid)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn half_line_oscillator_dirichlet() {
        // -u'' + r² u on [0, 12] with Dirichlet ends: odd harmonic
        // oscillator levels 3, 7, 11
        let spec = SturmLiouvilleSpec::new(|r: f64| r * r, LeftBoundary::Dirichlet);
        let grid = Grid1D { r_min: 0.0, r_max: 12.0, n: DEFAULT_NODES };
        let ev = lowest_eigenvalues(&spec, &grid, 3).unwrap();
        assert_abs_diff_eq!(ev[0].value, 3.0, epsilon = 1e-6);
        assert_abs_diff_eq!(ev[1].value, 7.0, epsilon = 1e-6);
        assert_abs_diff_eq!(ev[2].value, 11.0, epsilon = 1e-5);
        assert!(ev[0].error < 1e-6);
    }

    #[test]
    fn full_line_oscillator_neumann() {
        // Neumann at 0 selects the even levels: 1, 5, 9
        let spec = SturmLiouvilleSpec::new(|r: f64| r * r, LeftBoundary::Neumann);
        let grid = Grid1D { r_min: 0.0, r_max: 12.0, n: DEFAULT_NODES };
        let ev = lowest_eigenvalues(&spec, &grid, 2).unwrap();
        assert_abs_diff_eq!(ev[0].value, 1.0, epsilon = 1e-7);
        assert_abs_diff_eq!(ev[1].value, 5.0, epsilon = 1e-6);
    }

    #[test]
    fn robin_interpolates_between_neumann_and_dirichlet() {
        // γ → ∞ approaches Dirichlet from below; γ = 0 is Neumann
        let grid = Grid1D { r_min: 0.0, r_max: 12.0, n: 1024 };
        let ev_of = |gamma: f64| {
            let spec = SturmLiouvilleSpec::new(|r: f64| r * r, LeftBoundary::Robin(gamma));
            eigenvalues_single_grid(&spec, &grid, 1).unwrap()[0]
        };
        let neumann = ev_of(0.0);
        let mid = ev_of(5.0);
        let stiff = ev_of(500.0);
        assert!(neumann < mid && mid < stiff);
        assert_abs_diff_eq!(neumann, 1.0, epsilon = 1e-3);
        assert_abs_diff_eq!(stiff, 3.0, epsilon = 0.05);
    }

    #[test]
    fn effective_star_ground_state_is_two() {
        for m in 1..=3 {
            let (spec, grid) = effective_operator_spec(m, EffectiveField::Star);
            let ev = lowest_eigenvalues(&spec, &grid, 2).unwrap();
            assert_abs_diff_eq!(ev[0].value, 2.0, epsilon = 5e-4);
            assert!(ev[1].value >= 6.0 - 1e-3, "μ₂ = {}", ev[1].value);
        }
    }

    #[test]
    fn star_discrete_residual_of_explicit_ground_state() {
        // u(r) = r^{m+1/2} e^{-r²/2} satisfies the discrete equation with
        // eigenvalue 2 up to O(h²) away from the origin
        let m = 1;
        let u = |r: f64| r.powf(m as f64 + 0.5) * (-0.5 * r * r).exp();
        let residual = |n: usize| {
            let (spec, _) = effective_operator_spec(m, EffectiveField::Star);
            let h = 8.0 / (n - 1) as f64;
            let mut worst: f64 = 0.0;
            for i in 1..(n - 1) {
                let r = i as f64 * h;
                if !(0.5..=3.0).contains(&r) {
                    continue;
                }
                let lhs = (-u(r - h) + 2.0 * u(r) - u(r + h)) / (h * h) + spec.potential(r) * u(r);
                worst = worst.max((lhs - 2.0 * u(r)).abs());
            }
            worst
        };
        let r1 = residual(2001);
        let r2 = residual(4001);
        let ratio = r1 / r2;
        assert!(
            (3.2..=4.8).contains(&ratio),
            "discrete residual should shrink by ~4 per refinement, got {ratio} ({r1} → {r2})"
        );
    }

    #[test]
    fn exterior_fibre_band_location() {
        // m ≥ 1, b < 2m puts the lowest eigenvalue strictly inside (0, b)
        let b = 0.3;
        let (spec, grid) = exterior_fibre_spec(1, b, exterior_r_max(b));
        let ev = lowest_eigenvalues(&spec, &grid, 2).unwrap();
        assert!(ev[0].value > 0.0 && ev[0].value < b, "λ₁ = {}", ev[0].value);
        // second eigenvalue sits above the Landau level
        assert!(ev[1].value > b, "λ₂ = {}", ev[1].value);

        // m = 0: nothing below b
        let b = 0.5;
        let (spec, grid) = exterior_fibre_spec(0, b, exterior_r_max(b));
        let ev = lowest_eigenvalues(&spec, &grid, 1).unwrap();
        assert!(ev[0].value > b, "λ₁ = {}", ev[0].value);

        // m = -1: bounded below by 2b
        let (spec, grid) = exterior_fibre_spec(-1, b, exterior_r_max(b));
        let ev = lowest_eigenvalues(&spec, &grid, 1).unwrap();
        assert!(ev[0].value >= 2.0 * b - 1e-6, "λ₁ = {}", ev[0].value);
    }

    #[test]
    fn second_order_convergence() {
        // eigenvalue error shrinks by ~4 per grid halving for all three
        // spec families
        let cases: Vec<(SturmLiouvilleSpec, Grid1D)> = vec![
            exterior_fibre_spec(1, 0.3, exterior_r_max(0.3)),
            effective_operator_spec(1, EffectiveField::Scaled(0.2)),
            effective_operator_spec(2, EffectiveField::Star),
        ];
        for (spec, grid) in cases {
            let g1 = Grid1D { n: 1024, ..grid };
            let g2 = Grid1D { n: 2047, ..grid };
            let g4 = Grid1D { n: 4093, ..grid };
            let e1 = eigenvalues_single_grid(&spec, &g1, 1).unwrap()[0];
            let e2 = eigenvalues_single_grid(&spec, &g2, 1).unwrap()[0];
            let e4 = eigenvalues_single_grid(&spec, &g4, 1).unwrap()[0];
            let ratio = (e1 - e2) / (e2 - e4);
            assert!(
                (3.2..=4.8).contains(&ratio),
                "convergence ratio {ratio} outside second-order window"
            );
        }
    }

    #[test]
    fn truncation_radius_is_converged() {
        // extending R_max by 50% at fixed spacing moves eigenvalues < 1e-9
        let b = 0.3;
        let (spec, grid) = exterior_fibre_spec(1, b, exterior_r_max(b));
        let base = eigenvalues_single_grid(&spec, &grid, 1).unwrap()[0];
        let wide = eigenvalues_single_grid(&spec, &grid.extended(1.5), 1).unwrap()[0];
        assert!((base - wide).abs() < 1e-9, "truncation drift {}", (base - wide).abs());
    }

    #[test]
    fn effective_scaled_converges_to_star_limit() {
        // μ₁(S_b) → μ₁(S_*) = 2 monotonically as b ↓ 0
        let mut previous = f64::NEG_INFINITY;
        for &b in &[0.4, 0.2, 0.1, 0.05] {
            let (spec, grid) = effective_operator_spec(1, EffectiveField::Scaled(b));
            let mu1 = lowest_eigenvalues(&spec, &grid, 1).unwrap()[0].value;
            assert!(mu1 < 2.0, "μ₁(S_b) = {mu1} must stay below 2");
            assert!(mu1 > previous, "μ₁ not monotone: {mu1} after {previous}");
            previous = mu1;
        }
        assert!(previous > 1.9);
    }

    #[test]
    fn singular_potential_is_rejected() {
        let spec = SturmLiouvilleSpec::new(|r: f64| 1.0 / r, LeftBoundary::Neumann);
        let grid = Grid1D { r_min: 0.0, r_max: 1.0, n: 128 };
        assert!(matches!(
            lowest_eigenvalues(&spec, &grid, 1),
            Err(DiscretizeError::IndefiniteAssembly { .. })
        ));
    }
}
