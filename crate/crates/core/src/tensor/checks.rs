//! Self-consistency residuals used by the verification suites.

use crate::error::Result;
use crate::fd;
use crate::tensor::{
    covariant_divergence, Curvature, MetricSpec, SpacetimePoint, TensorComponents,
};

/// Largest violation of the algebraic symmetries of `R_{αβμν}`, relative
/// to `max(|R|, 1)`: both antisymmetries, pair symmetry, first Bianchi.
pub fn riemann_symmetry_residual(c: &Curvature) -> f64 {
    let g = &c.connection.g;
    let mut low = [[[[0.0; 4]; 4]; 4]; 4];
    let mut scale: f64 = 1.0;
    for a in 0..4 {
        for b in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    let v: f64 = (0..4).map(|s| g[a][s] * c.riemann[s][b][m][n]).sum();
                    low[a][b][m][n] = v;
                    scale = scale.max(v.abs());
                }
            }
        }
    }
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    let r = low[a][b][m][n];
                    worst = worst
                        .max((r + low[b][a][m][n]).abs())
                        .max((r + low[a][b][n][m]).abs())
                        .max((r - low[m][n][a][b]).abs())
                        .max((r + low[a][m][n][b] + low[a][n][b][m]).abs());
                }
            }
        }
    }
    worst / scale
}

/// `max |G^α_β − (sectional-sum G^α_β)|` relative to `max(|G|, 1)`.
pub fn einstein_cross_check(c: &Curvature) -> f64 {
    let gi = &c.connection.ginv;
    let sums = c.einstein_mixed_from_sectional_sums();
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for a in 0..4 {
        for b in 0..4 {
            let mixed: f64 = (0..4).map(|s| gi[a][s] * c.einstein[s][b]).sum();
            worst = worst.max((mixed - sums[a][b]).abs());
            scale = scale.max(mixed.abs());
        }
    }
    worst / scale
}

/// `max_α |∇_β G^{αβ}|` relative to `max(|G^{αβ}|, 1)`.
pub fn einstein_divergence(m: &dyn MetricSpec, x: &SpacetimePoint) -> Result<f64> {
    let field = |p: &SpacetimePoint| -> Result<TensorComponents> {
        let c = Curvature::at(m, p)?;
        let gi = &c.connection.ginv;
        let mut up = [[0.0; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                for s in 0..4 {
                    for t in 0..4 {
                        up[a][b] += gi[a][s] * gi[b][t] * c.einstein[s][t];
                    }
                }
            }
        }
        Ok(TensorComponents::from_mat(2, &up, p.clone()))
    };
    let scale = field(x)?.max_abs().max(1.0);
    let div = covariant_divergence(&field, m, x)?;
    Ok(div.iter().fold(0.0f64, |w, v| w.max(v.abs())) / scale)
}

/// Analytic first and second metric derivatives against central
/// differences of the metric values, relative to `max(|∂g|, 1)`.
pub fn jet_fd_residual(m: &dyn MetricSpec, x: &SpacetimePoint) -> Result<f64> {
    let jet = m.jet_at(x)?;
    let mut worst: f64 = 0.0;
    for c in 0..4 {
        let h = fd::default_step(x.coords[c].abs().max(1.0));
        let mut err = None;
        let mut sample = |s: f64| -> [f64; 16] {
            let mut p = x.clone();
            p.coords[c] = s;
            match m.jet_at(&p) {
                Ok(j) => std::array::from_fn(|k| j.g[k / 4][k % 4]),
                Err(e) => {
                    err = Some(e);
                    [f64::NAN; 16]
                }
            }
        };
        let d1 = fd::central_derivative_vec(&mut sample, x.coords[c], h);
        let mut sample_d = |s: f64| -> [f64; 64] {
            let mut p = x.clone();
            p.coords[c] = s;
            match m.jet_at(&p) {
                Ok(j) => std::array::from_fn(|k| j.d1[k / 16][(k / 4) % 4][k % 4]),
                Err(e) => {
                    err = Some(e);
                    [f64::NAN; 64]
                }
            }
        };
        let d2 = fd::central_derivative_vec(&mut sample_d, x.coords[c], h);
        if let Some(e) = err {
            return Err(e);
        }
        for k in 0..16 {
            let (a, b) = (k / 4, k % 4);
            let e1 = (d1[k] - jet.d1[a][b][c]).abs() / jet.d1[a][b][c].abs().max(1.0);
            worst = worst.max(e1);
            for d in 0..4 {
                let exact = jet.d2[a][b][d][c];
                worst = worst.max((d2[k * 4 + d] - exact).abs() / exact.abs().max(1.0));
            }
        }
    }
    Ok(worst)
}
