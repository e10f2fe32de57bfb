//! Modified Gaussian Skew coordinates on the lightlike shock and the full
//! jump report, for the exact solution and a γ-perturbed one.
//!
//! `cargo run --example null_junction`

use nullshock::matching::{full_jump_report, Anchors, MatchedSolution};
use nullshock::surface::DerivativeMethod;

fn main() -> nullshock::Result<()> {
    let exact = MatchedSolution::lightlike(1.0, Anchors::default())?;
    for (label, ms) in [
        ("exact", exact),
        ("gamma +1%", exact.with_perturbed_gamma(0.01)),
    ] {
        let t = 0.5;
        let chart = ms.build_chart(t, false, DerivativeMethod::AnalyticJet)?;
        println!(
            "{label}: patch {:e}, form residual {:e}, condition {:.3}",
            chart.patch_size, chart.form_residual, chart.condition
        );
        let r = full_jump_report(&ms, t, &chart)?;
        println!("  [K] = {:?}", r.k_jump.components);
        println!("  [G22,00], [G33,00] = {:?}", r.c2_jumps);
        println!(
            "  [T(N,N)] / scale = {:e}, [G(N,N)] / scale = {:e}",
            r.conservation_residual, r.einstein_nn_jump
        );
        println!("  N(c) = {:?}", r.area_derivative);
    }
    let chart = exact.build_chart(0.5, false, DerivativeMethod::AnalyticJet)?;
    let w = [0.3 * chart.patch_size, 0.1 * chart.patch_size, 0.0, 0.0];
    let (side, x) = chart.from_mgs(&w)?;
    let back = chart.to_mgs(&x, side)?;
    println!("w {w:?} -> {side:?} {:?} -> {back:?}", x.coords);
    Ok(())
}
