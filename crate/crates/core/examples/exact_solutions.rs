//! Closed-form FRW and TOV solutions: parameters, field-equation residuals
//! on a grid, and the quadrature oracle for the FRW time/density relation.
//!
//! `cargo run --example exact_solutions`

use nullshock::lightlike::solve_lightlike;
use nullshock::solutions::quadrature::frw_elapsed_time;
use nullshock::solutions::{
    frw_density, frw_metric, frw_time_of_density, grid_2d, tov_gamma, tov_metric, tov_solve,
    validate_field_equations, FrwParameters,
};
use nullshock::tensor::Chart;

fn main() -> nullshock::Result<()> {
    let root = solve_lightlike()?;
    let tov = tov_solve(root.sigma_bar, 1.0, 1.0, 1.0)?;
    let frw = FrwParameters::new(root.sigma, tov_gamma(root.sigma_bar, 1.0));
    println!("sigma = {:?}, sigma_bar = {:?}", frw.sigma, tov.sigma_bar);
    println!(
        "gamma = {:?}, A = {:?}, B exponent = {:?}",
        tov.gamma,
        tov.a,
        tov.b_exponent()
    );

    let fm = frw_metric(frw)?;
    let grid = grid_2d(Chart::Comoving, (0.0, 1.0), (0.1, 1.0), 10, 1.2, 0.3);
    let r_frw = validate_field_equations(&fm, &|x| fm.fluid(x), &grid, 1.0)?;
    let tm = tov_metric(tov)?;
    let grid = grid_2d(Chart::Static, (0.0, 1.0), (0.5, 2.0), 10, 1.2, 0.3);
    let r_tov = validate_field_equations(&tm, &|x| tm.fluid(x), &grid, 1.0)?;
    println!("max |G - 8 pi T| (relative): frw {r_frw:e}, tov {r_tov:e}");
    println!(
        "TOV equilibrium residual at rbar=2: {:e}",
        tov.ove_residual(2.0)?
    );

    let rho0 = frw_density(&frw, 0.0)?;
    let rho = 0.25 * rho0;
    let closed = frw_time_of_density(&frw, rho)?;
    let sigma = frw.sigma;
    let quad = frw_elapsed_time(&|r| sigma * r, rho0, rho, 1.0, 1.0);
    println!("time to reach rho0/4: closed form {closed:?}, quadrature {quad:?}");
    Ok(())
}
