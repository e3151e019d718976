//! The normalized radial eigenfunction of the m = 1 exterior band: Neumann
//! condition, ODE residual, positivity, and the Feynman–Hellmann slope.
//!
//! Run with: cargo run --example eigenfunction

use exdisk::fibre::{feynman_hellmann_slope, solve_band, RadialEigenfunction, Side};

fn main() {
    let (m, b) = (1, 0.3);
    let lambda = solve_band(m, b, Side::Exterior).unwrap();
    let ef = RadialEigenfunction::new(m, b, lambda).unwrap();
    println!("m = {m}, b = {b}: λ₁ = {lambda:.12}");
    let (f1, fp1) = ef.eval(1.0).unwrap();
    println!("f(1) = {f1:.10}, f'(1) = {fp1:.2e}   (Neumann boundary condition)");
    println!("tail beyond r_max = {:.2}: ≤ {:.2e}", ef.r_max, ef.tail_bound);

    println!("\n{:>5} {:>16} {:>16} {:>14}", "r", "f(r)", "f'(r)", "ODE residual");
    for &r in &[0.5, 1.0, 1.5, 2.0, 3.0, 5.0] {
        let (f, fp) = ef.eval(r).unwrap();
        let h = 1e-5;
        let (_, fp_up) = ef.eval(r + h).unwrap();
        let (_, fp_dn) = ef.eval(r - h).unwrap();
        let fpp = (fp_up - fp_dn) / (2.0 * h);
        let v = (m as f64 / r - 0.5 * b * r).powi(2);
        let residual = -fpp - fp / r + (v - lambda) * f;
        println!("{r:>5.2} {f:>16.10} {fp:>16.10} {residual:>14.2e}");
    }

    println!("\nFeynman–Hellmann band slopes:");
    for (m, b) in [(1, 0.3), (1, 2.0), (2, 4.0)] {
        let slope = feynman_hellmann_slope(m, b).unwrap();
        println!("  (λ₁⁽{m}⁾)'({b}) = {slope:.8}");
    }
    println!("slopes at b = 2m exceed 1: the band crosses the Landau level transversally.");
}
