//! Hypersurfaces: normals, transverse vectors, Lorentz frames, and the
//! Modified Gaussian Skew (MGS) chart with its one-sided jets.

pub mod mgs;

pub use mgs::{
    extra_c2_condition, generalized_second_form, jump_second_form, DerivativeMethod, GeneralSide,
    KJump, MgsChart, ShiftedSide, SideJet, SurfaceSide, TwoSidedMetric,
};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::tensor::curvature::invert_metric;
use crate::tensor::{dot, euclidean_norm, mat_vec, Chart, Mat4, MetricSpec, SpacetimePoint, Vec4};

/// Which side of `Σ` a quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Side {
    /// `φ < 0`: behind the shock (FRW).
    Left,
    /// `φ > 0`: ahead of the shock (TOV).
    Right,
}

type LevelFn = dyn Fn(&Vec4) -> (f64, Vec4) + Send + Sync;

/// `Σ = {φ = 0}` with `φ` returning its value and gradient `φ_{,μ}`.
#[derive(Clone)]
pub struct LevelSurface {
    pub chart: Chart,
    phi: Arc<LevelFn>,
}

impl std::fmt::Debug for LevelSurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LevelSurface")
            .field("chart", &self.chart)
            .finish()
    }
}

impl LevelSurface {
    pub fn new<F>(chart: Chart, phi: F) -> Self
    where
        F: Fn(&Vec4) -> (f64, Vec4) + Send + Sync + 'static,
    {
        Self {
            chart,
            phi: Arc::new(phi),
        }
    }

    pub fn value(&self, x: &Vec4) -> f64 {
        (self.phi)(x).0
    }

    pub fn gradient(&self, x: &Vec4) -> Vec4 {
        (self.phi)(x).1
    }

    /// `None` on the surface itself.
    pub fn side(&self, x: &Vec4) -> Option<Side> {
        let v = self.value(x);
        if v < 0.0 {
            Some(Side::Left)
        } else if v > 0.0 {
            Some(Side::Right)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normal {
    /// `n_μ = φ_{,μ}`.
    pub covariant: Vec4,
    /// `n^μ = g^{μν} n_ν`.
    pub contravariant: Vec4,
}

pub fn surface_normal(s: &LevelSurface, m: &dyn MetricSpec, x: &SpacetimePoint) -> Result<Normal> {
    let covariant = s.gradient(&x.coords);
    if !(euclidean_norm(&covariant) > 0.0) {
        return Err(Error::ZeroGradient);
    }
    let g = m.jet_at(x)?.g;
    let ginv = invert_metric(&g, m.scale())?;
    Ok(Normal {
        covariant,
        contravariant: mat_vec(&ginv, &covariant),
    })
}

/// `(|g^{αβ}n_αn_β| < 1e-8‖n‖², g^{αβ}n_αn_β)`.
pub fn is_lightlike(
    s: &LevelSurface,
    m: &dyn MetricSpec,
    x: &SpacetimePoint,
) -> Result<(bool, f64)> {
    let n = surface_normal(s, m, x)?;
    let residual: f64 = (0..4).map(|a| n.covariant[a] * n.contravariant[a]).sum();
    let band = 1e-8 * euclidean_norm(&n.covariant).powi(2);
    Ok((residual.abs() < band, residual))
}

/// How `choose_transverse` fixes the remaining null-direction freedom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Keep `N` after the `⟨N,n⟩ = η` scaling and tangent projection.
    None,
    /// Add a multiple of `n` so that `g(N,N) = 1`.
    Unit,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransverseVector {
    pub components: Vec4,
    pub eta: f64,
}

/// Build `N` from a seed: scale so `⟨N,n⟩ = η`, remove components along the
/// given spacelike tangents, then optionally shift along `n` so `g(N,N) = 1`.
///
/// Shifting by `λn` with `λ = (1 − g(N,N))/(2η)` keeps `⟨N,n⟩` and the
/// tangent projections because `n` is null and normal to `Σ`.
pub fn choose_transverse(
    m: &dyn MetricSpec,
    x: &SpacetimePoint,
    n: &Normal,
    eta: f64,
    seed: Vec4,
    spatial_tangents: &[Vec4],
    normalization: Normalization,
) -> Result<TransverseVector> {
    if eta == 0.0 || !eta.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "eta must be a nonzero real, got {eta}"
        )));
    }
    let g = m.jet_at(x)?.g;
    let pairing: f64 = (0..4).map(|a| seed[a] * n.covariant[a]).sum();
    let tol = 1e-12 * euclidean_norm(&seed) * euclidean_norm(&n.covariant);
    if !(pairing.abs() > tol) {
        return Err(Error::NoTransverse);
    }
    let mut v = seed.map(|c| c * eta / pairing);

    if !spatial_tangents.is_empty() {
        let k = spatial_tangents.len();
        let gram = nalgebra::DMatrix::from_fn(k, k, |i, j| {
            dot(&g, &spatial_tangents[i], &spatial_tangents[j])
        });
        let rhs = nalgebra::DVector::from_fn(k, |i, _| dot(&g, &v, &spatial_tangents[i]));
        let coef = gram.lu().solve(&rhs).ok_or(Error::NoTransverse)?;
        for (i, y) in spatial_tangents.iter().enumerate() {
            for a in 0..4 {
                v[a] -= coef[i] * y[a];
            }
        }
    }

    if normalization == Normalization::Unit {
        let lambda = (1.0 - dot(&g, &v, &v)) / (2.0 * eta);
        for a in 0..4 {
            v[a] += lambda * n.contravariant[a];
        }
    }
    Ok(TransverseVector { components: v, eta })
}

/// Frame `(u₀, N, e₂, e₃)` with `u₀ = (n − ηN)/η` and `e₂, e₃` the spatial
/// tangents orthonormalised by Gram–Schmidt. When `g(N,N) = 1`, `N ⊥ eᵢ`
/// and `⟨N,n⟩ = η`, the frame metric is `diag(−1, 1, 1, 1)`.
pub fn lorentz_frame(
    g: &Mat4,
    n: &Vec4,
    transverse: &Vec4,
    eta: f64,
    spatial: [Vec4; 2],
) -> ([Vec4; 4], Mat4) {
    let u0 = std::array::from_fn(|a| (n[a] - eta * transverse[a]) / eta);
    let mut e2 = spatial[0];
    let s2 = dot(g, &e2, &e2).sqrt();
    e2 = e2.map(|c| c / s2);
    let mut e3 = spatial[1];
    let p = dot(g, &e3, &e2);
    for a in 0..4 {
        e3[a] -= p * e2[a];
    }
    let s3 = dot(g, &e3, &e3).sqrt();
    e3 = e3.map(|c| c / s3);
    let frame = [u0, *transverse, e2, e3];
    let mut eta_m = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            eta_m[i][j] = dot(g, &frame[i], &frame[j]);
        }
    }
    (frame, eta_m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Minkowski;

    fn null_plane() -> LevelSurface {
        LevelSurface::new(Chart::Cartesian, |x| (x[1] - x[0], [-1.0, 1.0, 0.0, 0.0]))
    }

    fn origin() -> SpacetimePoint {
        SpacetimePoint::new(Chart::Cartesian, [0.0; 4])
    }

    #[test]
    fn flat_null_plane_normal() {
        let m = Minkowski::cartesian();
        let n = surface_normal(&null_plane(), &m, &origin()).unwrap();
        assert_eq!(n.covariant, [-1.0, 1.0, 0.0, 0.0]);
        assert_eq!(n.contravariant, [1.0, 1.0, 0.0, 0.0]);
        assert_eq!(
            is_lightlike(&null_plane(), &m, &origin()).unwrap(),
            (true, 0.0)
        );
    }

    #[test]
    fn constant_level_function_has_no_normal() {
        let s = LevelSurface::new(Chart::Cartesian, |_| (1.0, [0.0; 4]));
        assert!(matches!(
            surface_normal(&s, &Minkowski::cartesian(), &origin()),
            Err(Error::ZeroGradient)
        ));
    }

    #[test]
    fn transverse_adjustment_on_null_plane() {
        let m = Minkowski::cartesian();
        let n = surface_normal(&null_plane(), &m, &origin()).unwrap();
        let tangents = [[0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]];
        let t = choose_transverse(
            &m,
            &origin(),
            &n,
            1.0,
            [-0.5, 0.5, 0.0, 0.0],
            &tangents,
            Normalization::Unit,
        )
        .unwrap();
        assert_eq!(t.components, [0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(
            choose_transverse(
                &m,
                &origin(),
                &n,
                1.0,
                n.contravariant,
                &tangents,
                Normalization::Unit
            ),
            Err(Error::NoTransverse)
        ));
    }

    #[test]
    fn frame_is_orthonormal() {
        let g = Minkowski::cartesian().value(&[0.0; 4]).unwrap();
        let (_, e) = lorentz_frame(
            &g,
            &[1.0, 1.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            1.0,
            [[0.0, 0.0, 2.0, 0.0], [0.0, 0.0, 1.0, 3.0]],
        );
        for i in 0..4 {
            for j in 0..4 {
                let want = if i != j {
                    0.0
                } else if i == 0 {
                    -1.0
                } else {
                    1.0
                };
                assert!((e[i][j] - want).abs() < 1e-14);
            }
        }
    }
}
