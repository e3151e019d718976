//! Adaptive Gauss–Kronrod quadrature on finite intervals.
//!
//! A 7-point Gauss / 15-point Kronrod pair gives the per-panel value and an
//! error estimate; the adaptive driver repeatedly bisects the panel with the
//! largest estimated error until the global tolerance is met. Semi-infinite
//! integrals are handled by the callers, which know their own tails and
//! substitute or truncate accordingly.

/// Kronrod abscissae (positive half, 15-point rule), table values.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

/// Kronrod weights.
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Weights of the embedded 7-point Gauss rule (matching XGK[1], XGK[3], ...).
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuadError {
    /// The target tolerance was not reached within the panel budget.
    NoConvergence { best: f64, abs_error: f64 },
    /// The integrand returned a non-finite value.
    NonFiniteIntegrand { at: f64 },
}

impl std::fmt::Display for QuadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuadError::NoConvergence { best, abs_error } => write!(
                f,
                "quadrature did not converge (best {best:e}, error estimate {abs_error:e})"
            ),
            QuadError::NonFiniteIntegrand { at } => {
                write!(f, "integrand is not finite at {at:e}")
            }
        }
    }
}

impl std::error::Error for QuadError {}

/// One Gauss–Kronrod panel on `[a, b]`. Returns (value, error estimate).
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut res_abs = kronrod.abs();

    for (j, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        let sum = f1 + f2;
        kronrod += WGK[j] * sum;
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }

    let value = kronrod * half;
    let mut err = ((kronrod - gauss) * half).abs();
    // the usual QUADPACK rescaling keeps the estimate conservative but
    // avoids reporting pure roundoff as error
    let res_abs = res_abs * half.abs();
    if res_abs > 0.0 && err > 0.0 {
        let scale = (200.0 * err / res_abs).powf(1.5);
        err = if scale < 1.0 { res_abs * scale } else { res_abs };
    }
    let round_floor = 50.0 * f64::EPSILON * res_abs;
    if round_floor > err {
        err = round_floor;
    }
    (value, err)
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Adaptive integration of `f` over `[a, b]`.
///
/// Stops when the summed panel error estimates fall below
/// `max(abs_tol, rel_tol * |integral|)`. Fails after `max_panels`
/// bisections.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadResult, QuadError> {
    integrate_with_budget(f, a, b, rel_tol, abs_tol, 2_000)
}

pub fn integrate_with_budget<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Result<QuadResult, QuadError> {
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            abs_error: 0.0,
        });
    }
    let (v0, e0) = gk15(&f, a, b);
    if !v0.is_finite() {
        return Err(QuadError::NonFiniteIntegrand { at: 0.5 * (a + b) });
    }
    let mut panels = vec![Panel {
        a,
        b,
        value: v0,
        error: e0,
    }];

    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.error).sum();
        let target = abs_tol.max(rel_tol * total.abs());
        if err <= target {
            return Ok(QuadResult {
                value: total,
                abs_error: err,
            });
        }
        if panels.len() >= max_panels {
            return Err(QuadError::NoConvergence {
                best: total,
                abs_error: err,
            });
        }

        // split the worst panel; ties resolved by index for determinism
        let mut worst = 0;
        for (i, p) in panels.iter().enumerate() {
            if p.error > panels[worst].error {
                worst = i;
            }
        }
        let Panel { a: pa, b: pb, .. } = panels.swap_remove(worst);
        let mid = 0.5 * (pa + pb);
        for (lo, hi) in [(pa, mid), (mid, pb)] {
            let (v, e) = gk15(&f, lo, hi);
            if !v.is_finite() {
                return Err(QuadError::NonFiniteIntegrand { at: 0.5 * (lo + hi) });
            }
            panels.push(Panel {
                a: lo,
                b: hi,
                value: v,
                error: e,
            });
        }
    }
}

/// Fixed (non-adaptive) panel rule for short smooth intervals, split into
/// `ceil(|b-a| / max_len)` equal panels. Used where the integrand is known
/// analytic and the interval short, e.g. radial integrals between nearby
/// radii.
pub fn fixed_panels<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, max_len: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let n = ((b - a).abs() / max_len).ceil().max(1.0) as usize;
    let h = (b - a) / n as f64;
    let mut total = 0.0;
    for i in 0..n {
        let lo = a + i as f64 * h;
        let (v, _) = gk15(&f, lo, lo + h);
        total += v;
    }
    total
}
