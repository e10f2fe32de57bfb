//! RK4 geodesics: a radial null ray in the static star, its residual
//! against the geodesic equation, and a ray that runs into `r̄ = 0`.
//!
//! `cargo run --example geodesics`

use nullshock::matching::{Anchors, MatchedSolution};
use nullshock::tensor::{geodesic_integrate, Chart, MetricSpec, SpacetimePoint};
use nullshock::Error;

fn main() -> nullshock::Result<()> {
    let ms = MatchedSolution::lightlike(1.0, Anchors::default())?;
    let tov = ms.tov_metric();
    let x0 = SpacetimePoint::new(Chart::Static, [0.0, 1.0, std::f64::consts::FRAC_PI_2, 0.0]);
    let g = tov.value(&x0.coords)?;
    // outgoing null: -B ṫ² + ṙ²/A = 0 with ṙ = 1
    let v0 = [(1.0 / (-g[0][0] * g[1][1])).sqrt(), 1.0, 0.0, 0.0];
    let ray = geodesic_integrate(&tov, &x0, v0, (0.0, 2.0), 400)?;
    let end = ray.x.last().unwrap();
    println!("outgoing ray ends at tbar={:.6} rbar={:.6}", end[0], end[1]);
    println!(
        "geodesic residual {:e}, null-norm drift {:e}",
        ray.residual(&tov)?,
        ray.norm_drift(&tov)?
    );

    let inward = [v0[0], -1.0, 0.0, 0.0];
    match geodesic_integrate(&tov, &x0, inward, (0.0, 3.0), 600) {
        Err(Error::ChartExit { s }) => {
            println!("ingoing ray leaves the chart at affine parameter {s:.4}")
        }
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
