//! Level-set surfaces: normals, the null test, the adjusted transverse
//! vector and the Lorentz frame built from it, on the flat null plane.
//!
//! `cargo run --example surface_geometry`

use nullshock::surface::{
    choose_transverse, is_lightlike, lorentz_frame, surface_normal, LevelSurface, Normalization,
};
use nullshock::tensor::{Chart, MetricSpec, Minkowski, SpacetimePoint};

fn main() -> nullshock::Result<()> {
    let m = Minkowski::cartesian();
    let plane = LevelSurface::new(Chart::Cartesian, |x| (x[1] - x[0], [-1.0, 1.0, 0.0, 0.0]));
    let x = SpacetimePoint::new(Chart::Cartesian, [0.0; 4]);
    let n = surface_normal(&plane, &m, &x)?;
    println!("n_a = {:?}, n^a = {:?}", n.covariant, n.contravariant);
    println!("lightlike: {:?}", is_lightlike(&plane, &m, &x)?);
    let tangents = [[0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]];
    let big_n = choose_transverse(
        &m,
        &x,
        &n,
        1.0,
        [-0.5, 0.5, 0.0, 0.0],
        &tangents,
        Normalization::Unit,
    )?;
    println!("adjusted transverse N = {:?}", big_n.components);
    let (frame, gram) = lorentz_frame(
        &m.value(&x.coords)?,
        &n.contravariant,
        &big_n.components,
        1.0,
        tangents,
    );
    println!("frame {frame:?}");
    println!("g(e_i, e_j) = {gram:?}");
    Ok(())
}
