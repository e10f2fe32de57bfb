use super::{dot, Connection, MetricSpec, SpacetimePoint, TensorComponents, Vec4};
use crate::error::{Error, Result};
use crate::fd;

const NORMALIZATION_TOL: f64 = 1e-8;

/// Perfect fluid: energy density, pressure and contravariant four-velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidState {
    pub rho: f64,
    pub p: f64,
    pub u: Vec4,
}

/// Unit four-velocity at rest in the chart, `u⁰ = 1/√(-g₀₀)`.
pub fn comoving_velocity(m: &dyn MetricSpec, x: &SpacetimePoint) -> Result<Vec4> {
    let g00 = m.jet_at(x)?.g[0][0];
    if !(g00 < 0.0) {
        return Err(Error::OutOfDomain(format!("g00 = {g00} is not timelike")));
    }
    Ok([1.0 / (-g00).sqrt(), 0.0, 0.0, 0.0])
}

/// `T^{αβ} = p g^{αβ} + (p + ρ) u^α u^β`.
pub fn stress_energy(
    f: &FluidState,
    m: &dyn MetricSpec,
    x: &SpacetimePoint,
) -> Result<TensorComponents> {
    if f.rho < 0.0 {
        return Err(Error::OutOfDomain(format!(
            "negative energy density {}",
            f.rho
        )));
    }
    let jet = m.jet_at(x)?;
    let norm = dot(&jet.g, &f.u, &f.u);
    if (norm + 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::UnnormalizedVelocity { norm });
    }
    let ginv = super::curvature::invert_metric(&jet.g, m.scale())?;
    let mut t = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            t[a][b] = f.p * ginv[a][b] + (f.p + f.rho) * f.u[a] * f.u[b];
        }
    }
    Ok(TensorComponents::from_mat(2, &t, x.clone()))
}

/// `∇_β T^{αβ}` for a sampled (2,0) field: partials by Richardson central
/// differences, connection terms analytic.
pub fn covariant_divergence(
    field: &dyn Fn(&SpacetimePoint) -> Result<TensorComponents>,
    m: &dyn MetricSpec,
    x: &SpacetimePoint,
) -> Result<Vec4> {
    let conn = Connection::at(m, x)?;
    let t0 = field(x)?;
    assert_eq!((t0.contravariant_rank, t0.covariant_rank), (2, 0));
    let t = t0.as_mat();

    let mut div = [0.0; 4];
    for b in 0..4 {
        let h = fd::default_step(x.coords[b].abs().max(1.0));
        let mut err = None;
        let col = fd::central_derivative_vec(
            |s| {
                let mut p = x.clone();
                p.coords[b] = s;
                match field(&p) {
                    Ok(tc) => {
                        let mut out = [0.0; 4];
                        for (a, o) in out.iter_mut().enumerate() {
                            *o = tc.get(&[a, b]);
                        }
                        out
                    }
                    Err(e) => {
                        err = Some(e);
                        [f64::NAN; 4]
                    }
                }
            },
            x.coords[b],
            h,
        );
        if let Some(e) = err {
            return Err(e);
        }
        for a in 0..4 {
            div[a] += col[a];
        }
    }
    let gm = &conn.gamma;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                div[a] += gm[a][b][c] * t[c][b] + gm[b][b][c] * t[a][c];
            }
        }
    }
    Ok(div)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{Chart, Minkowski};

    fn origin() -> SpacetimePoint {
        SpacetimePoint::new(Chart::Cartesian, [0.0; 4])
    }

    #[test]
    fn dust_and_rest_frame_fluid() {
        let m = Minkowski::cartesian();
        let dust = FluidState {
            rho: 2.0,
            p: 0.0,
            u: [1.0, 0.0, 0.0, 0.0],
        };
        let t = stress_energy(&dust, &m, &origin()).unwrap().as_mat();
        assert_eq!(t[0][0], 2.0);
        assert_eq!(t.iter().flatten().filter(|v| **v != 0.0).count(), 1);

        let f = FluidState {
            rho: 3.0,
            p: 1.0,
            u: [1.0, 0.0, 0.0, 0.0],
        };
        let t = stress_energy(&f, &m, &origin()).unwrap().as_mat();
        for (i, want) in [3.0, 1.0, 1.0, 1.0].iter().enumerate() {
            assert_eq!(t[i][i], *want);
        }
    }

    #[test]
    fn null_velocity_is_rejected() {
        let m = Minkowski::cartesian();
        let f = FluidState {
            rho: 1.0,
            p: 0.0,
            u: [1.0, 1.0, 0.0, 0.0],
        };
        assert!(matches!(
            stress_energy(&f, &m, &origin()),
            Err(Error::UnnormalizedVelocity { .. })
        ));
    }

    #[test]
    fn constant_field_is_divergence_free() {
        let m = Minkowski::cartesian();
        let field = |p: &SpacetimePoint| {
            let f = FluidState {
                rho: 3.0,
                p: 1.0,
                u: [1.0, 0.0, 0.0, 0.0],
            };
            stress_energy(&f, &Minkowski::cartesian(), p)
        };
        let x = SpacetimePoint::new(Chart::Cartesian, [0.5, 1.0, 2.0, -1.0]);
        let d = covariant_divergence(&field, &m, &x).unwrap();
        assert!(d.iter().all(|v| v.abs() < 1e-12));
    }
}
