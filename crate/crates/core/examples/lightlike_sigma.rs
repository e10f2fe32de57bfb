//! Solve `s(σ) = 1` for the lightlike equation of state, then report the
//! characteristic speeds, the Lax classification and the comparison with
//! the subluminal limit `0.745`.
//!
//! `cargo run --example lightlike_sigma`

use nullshock::lightlike::{
    characteristics, eos_h, lax_classify, shock_speed, solve_lightlike, subluminal_comparison,
};

fn main() -> nullshock::Result<()> {
    let root = solve_lightlike()?;
    println!(
        "sigma2 = {:?} (bisection {} + secant {} steps)",
        root.sigma, root.bisection_steps, root.secant_steps
    );
    println!(
        "sigma_bar2 = H(sigma2) = {:?}, |s - 1| = {:e}",
        root.sigma_bar, root.residual
    );
    for s in [0.0, 0.25, 0.5, 0.75, 1.0] {
        println!("  H({s}) = {:.6}, s = {:.6}", eos_h(s)?, shock_speed(s)?);
    }
    let k = characteristics(root.sigma)?;
    println!("lambda_frw = +-{:?}", k.lambda_frw_plus);
    println!(
        "lambda_tov_plus: evaluated {:?}, quoted {:?}",
        k.lambda_tov_plus, k.lambda_tov_plus_quoted
    );
    let lax = lax_classify(root.sigma)?;
    println!("classification {:?}", lax.classification);
    let cmp = subluminal_comparison()?;
    println!(
        "sigma2 {:?} vs subluminal limit {:?}: difference {:?}",
        cmp.sigma2_here, cmp.sigma2_smoller_temple, cmp.difference
    );
    Ok(())
}
