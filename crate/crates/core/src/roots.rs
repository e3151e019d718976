//! Bracketing scalar root finder.
//!
//! Illinois false position with a periodic bisection safeguard: the secant
//! proposal through the (effective) bracket endpoints is taken whenever it
//! lands inside the bracket, and repeated one-sided updates halve the stale
//! endpoint's effective function value so both endpoints converge. Every
//! fourth step bisects, which caps the worst case near bisection speed.

#[derive(Debug, Clone, PartialEq)]
pub enum RootError {
    /// `f(lo)` and `f(hi)` do not have opposite signs.
    NotBracketed { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    /// The iteration cap was reached before the bracket shrank to tolerance.
    Stalled { best: f64, width: f64 },
}

impl std::fmt::Display for RootError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootError::NotBracketed { lo, hi, f_lo, f_hi } => write!(
                f,
                "root not bracketed on [{lo:e}, {hi:e}] (f = {f_lo:e}, {f_hi:e})"
            ),
            RootError::Stalled { best, width } => {
                write!(f, "root refinement stalled near {best:e} (bracket width {width:e})")
            }
        }
    }
}

impl std::error::Error for RootError {}

/// Refinement failure: either the bracketing logic gave up or the function
/// itself failed to evaluate.
#[derive(Debug, Clone, PartialEq)]
pub enum RefineError<E> {
    Root(RootError),
    Function(E),
}

impl<E: std::fmt::Display> std::fmt::Display for RefineError<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RefineError::Root(e) => write!(f, "{e}"),
            RefineError::Function(e) => write!(f, "{e}"),
        }
    }
}

impl<E: std::fmt::Debug + std::fmt::Display> std::error::Error for RefineError<E> {}

#[derive(Debug, Clone, Copy)]
pub struct BracketedRoot {
    pub root: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
}

/// Refine a sign change of `f` on `[lo, hi]` down to `|hi - lo| <= tol`.
///
/// `f_lo` and `f_hi` must already be known (they usually come from the
/// bracketing scan); this avoids re-evaluating an expensive function.
pub fn refine_bracket<F, E>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    mut f_lo: f64,
    mut f_hi: f64,
    tol: f64,
    max_iter: usize,
) -> Result<BracketedRoot, RefineError<E>>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    if f_lo == 0.0 {
        return Ok(BracketedRoot { root: lo, bracket: (lo, hi), iterations: 0 });
    }
    if f_hi == 0.0 {
        return Ok(BracketedRoot { root: hi, bracket: (lo, hi), iterations: 0 });
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(RefineError::Root(RootError::NotBracketed { lo, hi, f_lo, f_hi }));
    }

    let mut last_side = 0i8;
    for it in 0..max_iter {
        if hi - lo <= tol {
            return Ok(BracketedRoot {
                root: 0.5 * (lo + hi),
                bracket: (lo, hi),
                iterations: it,
            });
        }

        let x = if it % 4 == 3 {
            0.5 * (lo + hi)
        } else {
            let proposal = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
            if proposal > lo && proposal < hi {
                proposal
            } else {
                0.5 * (lo + hi)
            }
        };

        let fx = f(x).map_err(RefineError::Function)?;
        if fx == 0.0 {
            return Ok(BracketedRoot { root: x, bracket: (lo, hi), iterations: it + 1 });
        }
        if fx.signum() == f_lo.signum() {
            lo = x;
            f_lo = fx;
            if last_side == -1 {
                f_hi *= 0.5;
            }
            last_side = -1;
        } else {
            hi = x;
            f_hi = fx;
            if last_side == 1 {
                f_lo *= 0.5;
            }
            last_side = 1;
        }
    }

    if hi - lo <= tol {
        Ok(BracketedRoot {
            root: 0.5 * (lo + hi),
            bracket: (lo, hi),
            iterations: max_iter,
        })
    } else {
        Err(RefineError::Root(RootError::Stalled { best: 0.5 * (lo + hi), width: hi - lo }))
    }
}

/// Convenience wrapper for infallible functions.
pub fn refine<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol: f64,
    max_iter: usize,
) -> Result<BracketedRoot, RootError> {
    let f_lo = f(lo);
    let f_hi = f(hi);
    refine_bracket(
        |x| Ok::<f64, std::convert::Infallible>(f(x)),
        lo,
        hi,
        f_lo,
        f_hi,
        tol,
        max_iter,
    )
    .map_err(|e| match e {
        RefineError::Root(r) => r,
        RefineError::Function(x) => match x {},
    })
}
