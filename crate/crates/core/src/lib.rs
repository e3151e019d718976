//! Spectral laboratory for the magnetic Neumann Laplacian on the exterior
//! of a disk.
//!
//! The operator under study is `(-i∇ - bA)²` on `Ω^ext = ℝ² \ Ω̄` with the
//! symmetric gauge `A(x) = ½(-x₂, x₁)` and a magnetic Neumann boundary
//! condition. For the exterior of the unit disk the operator splits into
//! radial fibre operators indexed by the angular mode `m`, and the
//! eigenvalues below the lowest Landau level `b` are roots of secular
//! equations built from Whittaker functions. This crate computes those
//! roots exactly (to root-finder tolerance), cross-validates them against
//! an independent finite-difference discretization, reproduces the weak
//! field asymptotics with rigorous Temple bounds, and evaluates eigenvalue
//! upper bounds and local-optimality certificates for star-shaped
//! deformations of the disk under moment constraints.
//!
//! Module map:
//!
//! - [`specfun`]: Kummer `M`, Tricomi `U`, Whittaker `M`/`W`, their
//!   derivatives and contiguous recurrences, incomplete gamma.
//! - [`fibre`]: secular equations of the fibre operators, band functions
//!   `b ↦ λ₁⁽ᵐ⁾(b)`, band crossings, Feynman–Hellmann slopes, radial
//!   eigenfunctions.
//! - [`discretize`]: finite-difference oracle (symmetric tridiagonal
//!   matrices + Sturm bisection) for every 1D eigenproblem used here.
//! - [`quasimode`]: explicit quasimodes and Temple two-sided bounds for
//!   `λ₁⁽ᵐ⁾(b) - b`.
//! - [`geometry`]: star-shaped domains, `p`-moments, boundary terms,
//!   min-max upper bounds and local-optimality verdicts.
//! - [`cli`]: batch front-end emitting CSV/JSON reports.
//!
//! Each runnable capability also ships as an example under `examples/`;
//! see the README for the tour.

// Guards like `!(b > 0.0)` are written with negated comparisons on
// purpose: they reject NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod discretize;
pub mod fibre;
pub mod geometry;
pub mod quad;
pub mod quasimode;
pub mod roots;
pub mod specfun;

