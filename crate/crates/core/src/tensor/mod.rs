//! Pointwise Lorentzian tensor calculus on four-dimensional charts.
//!
//! Every metric carries hand-coded first and second coordinate derivatives
//! through [`MetricJet`]; curvature is assembled from those jets without any
//! numerical differentiation. Conventions, used consistently downstream:
//!
//! * signature `(-,+,+,+)`, `c = 1`;
//! * `Γ^σ_{αβ} = ½ g^{σγ}(g_{γα,β} + g_{γβ,α} - g_{αβ,γ})`;
//! * `R^μ_{ανβ} = Γ^μ_{αβ,ν} - Γ^μ_{αν,β} + Γ^μ_{σν}Γ^σ_{αβ} - Γ^μ_{σβ}Γ^σ_{αν}`;
//! * `R_{αβ} = R^ν_{ανβ}`, `G_{αβ} = R_{αβ} - ½ g_{αβ} R`.

pub mod checks;
mod components;
pub mod curvature;
pub mod fluid;
pub mod geodesic;
pub mod metrics;
pub mod transform;

pub use components::{multi_indices, TensorComponents};
pub use curvature::{
    christoffel, einstein, einstein_from_sectional_sums, inverse_metric, ricci, ricci_scalar,
    riemann, Connection, Curvature,
};
pub use fluid::{comoving_velocity, covariant_divergence, stress_energy, FluidState};
pub use geodesic::{geodesic_integrate, GeodesicCurve};
pub use metrics::{CustomMetric, Minkowski};
pub use transform::{lower_index, raise_index, transform_tensor};

use crate::error::{Error, Result};

pub type Vec4 = [f64; 4];
pub type Mat4 = [[f64; 4]; 4];
/// `d1[a][b][c] = ∂_c g_{ab}`.
pub type Rank3 = [[[f64; 4]; 4]; 4];
/// `d2[a][b][c][d] = ∂_c ∂_d g_{ab}`.
pub type Rank4 = [[[[f64; 4]; 4]; 4]; 4];

pub const ZERO3: Rank3 = [[[0.0; 4]; 4]; 4];
pub const ZERO4: Rank4 = [[[[0.0; 4]; 4]; 4]; 4];

/// Coordinate systems the built-in metrics live on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Chart {
    /// `(t, x, y, z)`.
    Cartesian,
    /// `(t, r, θ, φ)`.
    Spherical,
    /// FRW comoving `(t, r, θ, φ)`.
    Comoving,
    /// TOV static `(t̄, r̄, θ, φ)`.
    Static,
    Named(String),
}

impl std::fmt::Display for Chart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Chart::Cartesian => f.write_str("cartesian"),
            Chart::Spherical => f.write_str("spherical"),
            Chart::Comoving => f.write_str("comoving"),
            Chart::Static => f.write_str("static"),
            Chart::Named(n) => f.write_str(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpacetimePoint {
    pub chart: Chart,
    pub coords: Vec4,
}

impl SpacetimePoint {
    pub fn new(chart: Chart, coords: Vec4) -> Self {
        Self { chart, coords }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricFamily {
    Minkowski,
    Frw,
    Tov,
    Custom,
}

/// Metric components with their first and second partial derivatives at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricJet {
    pub g: Mat4,
    pub d1: Rank3,
    pub d2: Rank4,
}

impl MetricJet {
    pub fn constant(g: Mat4) -> Self {
        Self {
            g,
            d1: ZERO3,
            d2: ZERO4,
        }
    }

    /// `g(u, v)`.
    pub fn dot(&self, u: &Vec4, v: &Vec4) -> f64 {
        dot(&self.g, u, v)
    }
}

/// A metric family evaluated pointwise with analytic derivatives.
pub trait MetricSpec: Send + Sync {
    fn family(&self) -> MetricFamily;

    fn chart(&self) -> Chart;

    /// Components, `g_{αβ,γ}` and `g_{αβ,γδ}` at `x`.
    fn jet(&self, x: &Vec4) -> Result<MetricJet>;

    /// Typical coordinate length, used to scale tolerances.
    fn scale(&self) -> f64 {
        1.0
    }

    fn value(&self, x: &Vec4) -> Result<Mat4> {
        Ok(self.jet(x)?.g)
    }

    /// Jet at a point, after checking the point lives on this metric's chart.
    fn jet_at(&self, p: &SpacetimePoint) -> Result<MetricJet> {
        if p.chart != self.chart() {
            return Err(Error::ChartMismatch {
                expected: self.chart().to_string(),
                found: p.chart.to_string(),
            });
        }
        if p.coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::OutOfDomain("non-finite coordinate".into()));
        }
        self.jet(&p.coords)
    }
}

pub fn dot(g: &Mat4, u: &Vec4, v: &Vec4) -> f64 {
    let mut s = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            s += g[a][b] * u[a] * v[b];
        }
    }
    s
}

pub fn mat_vec(m: &Mat4, v: &Vec4) -> Vec4 {
    let mut out = [0.0; 4];
    for a in 0..4 {
        for b in 0..4 {
            out[a] += m[a][b] * v[b];
        }
    }
    out
}

pub fn euclidean_norm(v: &Vec4) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn axpy(a: f64, x: &Vec4, y: &Vec4) -> Vec4 {
    [
        a * x[0] + y[0],
        a * x[1] + y[1],
        a * x[2] + y[2],
        a * x[3] + y[3],
    ]
}

/// Causal character of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum CausalType {
    Spacelike,
    Lightlike,
    Timelike,
}

/// Sign of `g(v,v)`, with `|g(v,v)| ≤ 1e-10 ‖v‖²` counted as lightlike.
pub fn classify_vector(m: &dyn MetricSpec, x: &SpacetimePoint, v: &Vec4) -> Result<CausalType> {
    let jet = m.jet_at(x)?;
    let norm = jet.dot(v, v);
    let band = 1e-10 * v.iter().map(|c| c * c).sum::<f64>();
    Ok(if norm.abs() <= band {
        CausalType::Lightlike
    } else if norm < 0.0 {
        CausalType::Timelike
    } else {
        CausalType::Spacelike
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat() -> (Minkowski, SpacetimePoint) {
        (
            Minkowski::cartesian(),
            SpacetimePoint::new(Chart::Cartesian, [0.0; 4]),
        )
    }

    #[test]
    fn classify_minkowski_examples() {
        let (m, x) = flat();
        assert_eq!(
            classify_vector(&m, &x, &[1.0, 1.0, 0.0, 0.0]).unwrap(),
            CausalType::Lightlike
        );
        assert_eq!(
            classify_vector(&m, &x, &[1.0, 0.0, 0.0, 0.0]).unwrap(),
            CausalType::Timelike
        );
        assert_eq!(
            classify_vector(&m, &x, &[0.0, 1.0, 0.0, 0.0]).unwrap(),
            CausalType::Spacelike
        );
    }

    #[test]
    fn chart_mismatch_is_reported() {
        let m = Minkowski::cartesian();
        let p = SpacetimePoint::new(Chart::Static, [0.0; 4]);
        assert!(matches!(m.jet_at(&p), Err(Error::ChartMismatch { .. })));
    }
}
