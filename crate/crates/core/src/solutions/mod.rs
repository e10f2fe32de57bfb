//! Closed-form FRW and TOV solutions and field-equation residual checks.

pub mod frw;
pub mod quadrature;
pub mod tov;

pub use frw::{
    frw_density, frw_metric, frw_scale, frw_time_of_density, FrwMetric, FrwParameters, ScaleFactor,
};
pub use tov::{tov_gamma, tov_metric, tov_solve, TovMetric, TovParameters};

use std::f64::consts::PI;

use crate::error::Result;
use crate::tensor::{stress_energy, Chart, Curvature, FluidState, MetricSpec, SpacetimePoint};

/// Keeps grids clear of `r = 0` and `sin θ = 0`.
pub const GUARD_BAND: f64 = 1e-6;

/// `n × n` grid over `(x⁰, x¹)` at fixed angles, clipped to the guard band.
pub fn grid_2d(
    chart: Chart,
    t_range: (f64, f64),
    r_range: (f64, f64),
    n: usize,
    theta: f64,
    phi: f64,
) -> Vec<SpacetimePoint> {
    let theta = theta.clamp(GUARD_BAND, std::f64::consts::PI - GUARD_BAND);
    let r_lo = r_range.0.max(GUARD_BAND);
    let lerp = |(a, b): (f64, f64), i: usize| {
        if n == 1 {
            a
        } else {
            a + (b - a) * i as f64 / (n - 1) as f64
        }
    };
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(SpacetimePoint::new(
                chart.clone(),
                [lerp(t_range, i), lerp((r_lo, r_range.1), j), theta, phi],
            ));
        }
    }
    out
}

/// Max over `grid` of `max_{αβ}|G^{αβ} - 8π𝒢T^{αβ}| / max(|G|, |T|, 1)`.
pub fn validate_field_equations(
    m: &dyn MetricSpec,
    fluid: &dyn Fn(&SpacetimePoint) -> Result<FluidState>,
    grid: &[SpacetimePoint],
    g_newton: f64,
) -> Result<f64> {
    let kappa = 8.0 * PI * g_newton;
    let mut worst: f64 = 0.0;
    for x in grid {
        let c = Curvature::at(m, x)?;
        let gi = &c.connection.ginv;
        let t = stress_energy(&fluid(x)?, m, x)?.as_mat();
        let mut g_up = [[0.0; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                let mut s = 0.0;
                for c1 in 0..4 {
                    for d in 0..4 {
                        s += gi[a][c1] * gi[b][d] * c.einstein[c1][d];
                    }
                }
                g_up[a][b] = s;
            }
        }
        let mut diff: f64 = 0.0;
        let mut scale: f64 = 1.0;
        for a in 0..4 {
            for b in 0..4 {
                diff = diff.max((g_up[a][b] - kappa * t[a][b]).abs());
                scale = scale.max(g_up[a][b].abs()).max(t[a][b].abs());
            }
        }
        worst = worst.max(diff / scale);
    }
    Ok(worst)
}
