//! Match FRW to TOV across the shock and check the surface identities,
//! the transverse vector in both charts and the conservation jump.
//!
//! `cargo run --example shock_matching`

use nullshock::matching::{Anchors, MatchedSolution};

fn main() -> nullshock::Result<()> {
    let ms = MatchedSolution::lightlike(1.0, Anchors::default())?;
    for t in [0.0, 0.5, 2.0] {
        let s = ms.state(t)?;
        println!(
            "t = {t}: rbar = {:.6}, r = {:.6}, R = {:.6}, rho/rho_bar = {:?}",
            s.rbar,
            s.r,
            s.scale,
            s.rho / s.rho_bar
        );
        println!("  surface identities {:?}", ms.surface_identities(t)?);
        println!(
            "  jacobian round trip {:e}",
            ms.chart_partials(t)?.round_trip
        );
        let tr = ms.transverse_on_surface(t)?;
        println!("  N (frw) = {:?}", tr.frw_contravariant);
        println!("  N (tov) = {:?}", tr.tov_contravariant);
        println!("  transverse jumps {:?}", ms.transverse_jumps(t)?);
        println!(
            "  conservation jump / scale = {:e}, lightlike residual = {:e}",
            ms.conservation_jump(t)? / ms.conservation_scale(t)?,
            ms.lightlike_residual(t)?
        );
    }
    let off = ms.with_perturbed_gamma(0.01);
    println!(
        "gamma +1%: mass residual {:e}, conservation jump / scale {:e}",
        off.shock_mass_residual(0.0)?,
        off.conservation_jump(0.0)? / off.conservation_scale(0.0)?
    );
    Ok(())
}
