//! Tour of the special-function layer: closed-form anchors, contiguous
//! recurrence residuals, and derivative checks for the Whittaker pair.
//!
//! Run with: cargo run --example specfun_tour

use exdisk::specfun::{
    contiguous_m, contiguous_w, kummer_m, kummer_u, upper_incomplete_gamma, whittaker_m,
    whittaker_w, whittaker_w_deriv, KummerArgs, WhittakerArgs,
};

fn main() {
    println!("closed-form anchors:");
    let e = kummer_m(&KummerArgs { a: 2.5, c: 2.5, z: 1.0 }).unwrap();
    println!("  M(a, a, 1)        = {e:.15}   (= e)");
    let u = kummer_u(&KummerArgs { a: 0.5, c: 1.5, z: 2.0 }).unwrap();
    println!("  U(1/2, 3/2, 2)    = {u:.15}   (= 2^(-1/2))");
    let g = upper_incomplete_gamma(3, 0.0);
    println!("  Γ(3, 0)           = {g:.15}   (= 2!)");
    let w = whittaker_w(&WhittakerArgs::new(-0.5, 1.0, 2.0)).unwrap();
    println!("  W(-1/2, 1, 2)     = {w:.15}   (= e^(-1) 2^(-1/2))");
    let m = whittaker_m(&WhittakerArgs::new(0.3, 0.5, 1e-8)).unwrap();
    println!("  M(κ, 1/2, z)/z    = {:.12}   (→ 1 as z → 0)", m / 1e-8);

    println!("\ncontiguous-relation residuals (relative):");
    println!("{:>8} {:>5} {:>5} {:>13} {:>13} {:>13} {:>13}", "κ", "μ", "z", "M half", "M rec", "W half", "W rec");
    for &(kappa, mu, z) in &[(0.4, 1.0, 0.6), (1.1, 0.5, 0.9), (-1.3, 1.5, 4.0), (0.7, 0.5, 8.0)] {
        let rm = contiguous_m(&WhittakerArgs::new(kappa, mu, z)).unwrap();
        let rw = contiguous_w(&WhittakerArgs::new(kappa, mu, z)).unwrap();
        println!(
            "{kappa:>8.2} {mu:>5.1} {z:>5.1} {:>13.2e} {:>13.2e} {:>13.2e} {:>13.2e}",
            rm.half_step, rm.recurrence, rw.half_step, rw.recurrence
        );
    }

    println!("\nderivative formula vs central differences:");
    for &(kappa, mu, z) in &[(0.2, 0.5, 0.8), (-0.9, 1.0, 3.0)] {
        let args = WhittakerArgs::new(kappa, mu, z);
        let d = whittaker_w_deriv(&args).unwrap();
        let h = 1e-5;
        let fd = (whittaker_w(&WhittakerArgs::new(kappa, mu, z + h)).unwrap()
            - whittaker_w(&WhittakerArgs::new(kappa, mu, z - h)).unwrap())
            / (2.0 * h);
        println!("  W'({kappa}, {mu}, {z}) = {d:.12}  (FD {fd:.12})");
    }
}
