//! Christoffel symbols, curvature and the Einstein tensor of the built-in
//! metrics, plus the index-pair cross-check of `G^α_β`.
//!
//! `cargo run --example curvature`

use nullshock::matching::{Anchors, MatchedSolution};
use nullshock::tensor::checks::{einstein_cross_check, riemann_symmetry_residual};
use nullshock::tensor::{
    christoffel, ricci_scalar, Chart, Curvature, MetricSpec, Minkowski, SpacetimePoint,
};

fn main() -> nullshock::Result<()> {
    let ms = MatchedSolution::lightlike(1.0, Anchors::default())?;
    let frw = ms.frw_metric();
    let tov = ms.tov_metric();
    let mink = Minkowski::spherical();
    let cases: [(&str, &dyn MetricSpec, SpacetimePoint); 3] = [
        (
            "minkowski (spherical)",
            &mink,
            SpacetimePoint::new(Chart::Spherical, [0.0, 2.0, 1.0, 0.5]),
        ),
        (
            "frw",
            &frw,
            SpacetimePoint::new(Chart::Comoving, [0.5, 0.8, 1.2, 0.0]),
        ),
        (
            "tov",
            &tov,
            SpacetimePoint::new(Chart::Static, [0.0, 1.5, 1.2, 0.0]),
        ),
    ];
    for (name, m, x) in cases {
        let gamma = christoffel(m, &x)?;
        let c = Curvature::at(m, &x)?;
        println!("{name} at {:?}", x.coords);
        println!("  Gamma^1_22 = {:?}", gamma.get(&[1, 2, 2]));
        println!("  R = {:?}", ricci_scalar(m, &x)?);
        println!(
            "  G_00 = {:?}, G_11 = {:?}",
            c.einstein[0][0], c.einstein[1][1]
        );
        println!(
            "  Riemann symmetry residual {:e}",
            riemann_symmetry_residual(&c)
        );
        println!(
            "  G^a_b vs index-pair sums   {:e}",
            einstein_cross_check(&c)
        );
    }
    Ok(())
}
