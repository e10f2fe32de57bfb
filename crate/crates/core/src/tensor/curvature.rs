use nalgebra::Matrix4;

use super::{
    Mat4, MetricJet, MetricSpec, Rank3, Rank4, SpacetimePoint, TensorComponents, ZERO3, ZERO4,
};
use crate::error::{Error, Result};

/// `|det g|` below `DEGENERACY_TOL * scale⁴` is treated as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Inverse of a 4×4 metric matrix, rejecting near-singular input.
pub fn invert_metric(g: &Mat4, scale: f64) -> Result<Mat4> {
    let m = Matrix4::from_fn(|i, j| g[i][j]);
    let det = m.determinant();
    if !det.is_finite() || det.abs() <= DEGENERACY_TOL * scale.powi(4) {
        return Err(Error::DegenerateMetric { det });
    }
    let inv = m.try_inverse().ok_or(Error::DegenerateMetric { det })?;
    let mut out = [[0.0; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            // symmetrise away LU round-off
            *v = 0.5 * (inv[(i, j)] + inv[(j, i)]);
        }
    }
    Ok(out)
}

/// Levi-Civita connection and its first derivatives at a point.
#[derive(Debug, Clone)]
pub struct Connection {
    pub g: Mat4,
    pub ginv: Mat4,
    /// `gamma[s][a][b] = Γ^s_{ab}`.
    pub gamma: Rank3,
    /// `dgamma[s][a][b][c] = ∂_c Γ^s_{ab}`.
    pub dgamma: Rank4,
}

impl Connection {
    pub fn from_jet(jet: &MetricJet, scale: f64) -> Result<Self> {
        let ginv = invert_metric(&jet.g, scale)?;
        let d1 = &jet.d1;
        let d2 = &jet.d2;

        // lowered symbols L_{kab} = ½(g_{ka,b} + g_{kb,a} - g_{ab,k})
        let mut lower = ZERO3;
        for k in 0..4 {
            for a in 0..4 {
                for b in a..4 {
                    let v = 0.5 * (d1[k][a][b] + d1[k][b][a] - d1[a][b][k]);
                    lower[k][a][b] = v;
                    lower[k][b][a] = v;
                }
            }
        }

        let mut gamma = ZERO3;
        for s in 0..4 {
            for a in 0..4 {
                for b in a..4 {
                    let v: f64 = (0..4).map(|k| ginv[s][k] * lower[k][a][b]).sum();
                    gamma[s][a][b] = v;
                    gamma[s][b][a] = v;
                }
            }
        }

        // ∂_c Γ^s_{ab} = -g^{sm} g_{mn,c} Γ^n_{ab} + g^{sk} ∂_c L_{kab}
        let mut dgamma = ZERO4;
        for s in 0..4 {
            for a in 0..4 {
                for b in a..4 {
                    for c in 0..4 {
                        let mut v = 0.0;
                        for m in 0..4 {
                            if ginv[s][m] == 0.0 {
                                continue;
                            }
                            let mut inner = 0.0;
                            for n in 0..4 {
                                inner += d1[m][n][c] * gamma[n][a][b];
                            }
                            let dl = 0.5 * (d2[m][a][b][c] + d2[m][b][a][c] - d2[a][b][m][c]);
                            v += ginv[s][m] * (dl - inner);
                        }
                        dgamma[s][a][b][c] = v;
                        dgamma[s][b][a][c] = v;
                    }
                }
            }
        }

        Ok(Self {
            g: jet.g,
            ginv,
            gamma,
            dgamma,
        })
    }

    pub fn at(m: &dyn MetricSpec, x: &SpacetimePoint) -> Result<Self> {
        Self::from_jet(&m.jet_at(x)?, m.scale())
    }

    /// `Γ^m_{ab} u^a v^b`.
    pub fn contract(&self, u: &[f64; 4], v: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (m, o) in out.iter_mut().enumerate() {
            for a in 0..4 {
                if u[a] == 0.0 {
                    continue;
                }
                for b in 0..4 {
                    *o += self.gamma[m][a][b] * u[a] * v[b];
                }
            }
        }
        out
    }

    /// `∂_l Γ^m_{ab} w^l u^a v^b`.
    pub fn contract_derivative(&self, w: &[f64; 4], u: &[f64; 4], v: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (m, o) in out.iter_mut().enumerate() {
            for a in 0..4 {
                for b in 0..4 {
                    let uv = u[a] * v[b];
                    if uv == 0.0 {
                        continue;
                    }
                    for l in 0..4 {
                        *o += self.dgamma[m][a][b][l] * w[l] * uv;
                    }
                }
            }
        }
        out
    }

    /// `R^μ_{ανβ}` indexed `[μ][α][ν][β]`.
    pub fn riemann(&self) -> Rank4 {
        let gm = &self.gamma;
        let dg = &self.dgamma;
        let mut r = ZERO4;
        for mu in 0..4 {
            for al in 0..4 {
                for nu in 0..4 {
                    for be in 0..4 {
                        let mut v = dg[mu][al][be][nu] - dg[mu][al][nu][be];
                        for s in 0..4 {
                            v += gm[mu][s][nu] * gm[s][al][be] - gm[mu][s][be] * gm[s][al][nu];
                        }
                        r[mu][al][nu][be] = v;
                    }
                }
            }
        }
        r
    }
}

/// Everything downstream of the connection, evaluated once.
#[derive(Debug, Clone)]
pub struct Curvature {
    pub connection: Connection,
    pub riemann: Rank4,
    pub ricci: Mat4,
    pub ricci_scalar: f64,
    pub einstein: Mat4,
}

impl Curvature {
    pub fn from_jet(jet: &MetricJet, scale: f64) -> Result<Self> {
        let connection = Connection::from_jet(jet, scale)?;
        let riemann = connection.riemann();
        let mut ricci = [[0.0; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                ricci[a][b] = (0..4).map(|n| riemann[n][a][n][b]).sum();
            }
        }
        let mut scalar = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                scalar += connection.ginv[a][b] * ricci[a][b];
            }
        }
        let mut einstein = [[0.0; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                einstein[a][b] = ricci[a][b] - 0.5 * connection.g[a][b] * scalar;
            }
        }
        Ok(Self {
            connection,
            riemann,
            ricci,
            ricci_scalar: scalar,
            einstein,
        })
    }

    pub fn at(m: &dyn MetricSpec, x: &SpacetimePoint) -> Result<Self> {
        Self::from_jet(&m.jet_at(x)?, m.scale())
    }

    /// `R^{στ}_{μν} = g^{τλ} R^σ_{λμν}`.
    pub fn riemann_up_up(&self) -> Rank4 {
        let gi = &self.connection.ginv;
        let mut out = ZERO4;
        for s in 0..4 {
            for t in 0..4 {
                for m in 0..4 {
                    for n in 0..4 {
                        out[s][t][m][n] = (0..4).map(|l| gi[t][l] * self.riemann[s][l][m][n]).sum();
                    }
                }
            }
        }
        out
    }

    /// Mixed `G^α_β` assembled from the double-index sums
    /// `G^α_α = -Σ_{σ<τ; σ,τ≠α} R^{στ}_{στ}` and
    /// `G^α_β = Σ_{τ≠α,β} R^{ατ}_{βτ}`.
    pub fn einstein_mixed_from_sectional_sums(&self) -> Mat4 {
        let r = self.riemann_up_up();
        let mut out = [[0.0; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                out[a][b] = if a == b {
                    let mut s = 0.0;
                    for sg in 0..4 {
                        for tu in (sg + 1)..4 {
                            if sg != a && tu != a {
                                s -= r[sg][tu][sg][tu];
                            }
                        }
                    }
                    s
                } else {
                    (0..4)
                        .filter(|&t| t != a && t != b)
                        .map(|t| r[a][t][b][t])
                        .sum()
                };
            }
        }
        out
    }
}

pub fn inverse_metric(m: &dyn MetricSpec, x: &SpacetimePoint) -> Result<TensorComponents> {
    let jet = m.jet_at(x)?;
    let inv = invert_metric(&jet.g, m.scale())?;
    Ok(TensorComponents::from_mat(2, &inv, x.clone()))
}

/// `Γ^σ_{αβ}` as a (1,2) tensor-shaped array.
pub fn christoffel(m: &dyn MetricSpec, x: &SpacetimePoint) -> Result<TensorComponents> {
    let c = Connection::at(m, x)?;
    Ok(TensorComponents::from_rank3(1, &c.gamma, x.clone()))
}

pub fn riemann(m: &dyn MetricSpec, x: &SpacetimePoint) -> Result<TensorComponents> {
    let c = Connection::at(m, x)?;
    Ok(TensorComponents::from_rank4(1, &c.riemann(), x.clone()))
}

pub fn ricci(m: &dyn MetricSpec, x: &SpacetimePoint) -> Result<TensorComponents> {
    let c = Curvature::at(m, x)?;
    Ok(TensorComponents::from_mat(0, &c.ricci, x.clone()))
}

pub fn ricci_scalar(m: &dyn MetricSpec, x: &SpacetimePoint) -> Result<f64> {
    Ok(Curvature::at(m, x)?.ricci_scalar)
}

pub fn einstein(m: &dyn MetricSpec, x: &SpacetimePoint) -> Result<TensorComponents> {
    let c = Curvature::at(m, x)?;
    Ok(TensorComponents::from_mat(0, &c.einstein, x.clone()))
}

/// `G_{αβ}` obtained by lowering the sectional-sum form of `G^α_β`.
pub fn einstein_from_sectional_sums(
    m: &dyn MetricSpec,
    x: &SpacetimePoint,
) -> Result<TensorComponents> {
    let c = Curvature::at(m, x)?;
    let mixed = c.einstein_mixed_from_sectional_sums();
    let g = &c.connection.g;
    let mut out = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            out[a][b] = (0..4).map(|s| g[a][s] * mixed[s][b]).sum();
        }
    }
    Ok(TensorComponents::from_mat(0, &out, x.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{Chart, CustomMetric, Minkowski};

    #[test]
    fn minkowski_inverse_is_itself() {
        let m = Minkowski::cartesian();
        let x = SpacetimePoint::new(Chart::Cartesian, [0.3, 1.0, -2.0, 4.0]);
        let inv = inverse_metric(&m, &x).unwrap().as_mat();
        assert_eq!(inv, m.value(&x.coords).unwrap());
    }

    #[test]
    fn singular_matrix_is_degenerate() {
        let mut g = [[0.0; 4]; 4];
        g[0][0] = -1.0;
        g[1][1] = 1.0;
        g[2][2] = 1.0;
        let m = CustomMetric::constant("singular", g);
        let x = SpacetimePoint::new(m.chart(), [0.0; 4]);
        assert!(matches!(
            inverse_metric(&m, &x),
            Err(Error::DegenerateMetric { .. })
        ));
        assert!(matches!(
            riemann(&m, &x),
            Err(Error::DegenerateMetric { .. })
        ));
    }

    #[test]
    fn flat_curvature_is_exactly_zero() {
        let m = Minkowski::cartesian();
        let x = SpacetimePoint::new(Chart::Cartesian, [1.0, 2.0, 3.0, 4.0]);
        assert!(christoffel(&m, &x).unwrap().is_zero());
        assert!(riemann(&m, &x).unwrap().is_zero());
        assert!(ricci(&m, &x).unwrap().is_zero());
        assert_eq!(ricci_scalar(&m, &x).unwrap(), 0.0);
        assert!(einstein(&m, &x).unwrap().is_zero());
    }

    #[test]
    fn spherical_minkowski_is_flat() {
        let m = Minkowski::spherical();
        let x = SpacetimePoint::new(Chart::Spherical, [0.0, 1.7, 0.9, 0.2]);
        assert!(riemann(&m, &x).unwrap().max_abs() < 1e-14);
    }
}
