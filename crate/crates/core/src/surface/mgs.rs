//! Modified Gaussian Skew coordinates `w = (w⁰, y¹, y², y³)`.
//!
//! Each side of `Σ` supplies a parametrisation `y ↦ x(y)` of the surface
//! (with `∂x/∂y¹ = n`) and a transverse field `N(y)`. The chart sends
//! `(w⁰, y)` to the point reached after affine time `w⁰` along the geodesic
//! leaving `x(y)` with velocity `N(y)`; `w⁰ > 0` lies on the right side.
//! The pulled-back metric is `G_ab = g(X_a, X_b)` with `X₀ = ẋ` and
//! `Xᵢ = Jᵢ` the Jacobi fields `∂x/∂yⁱ`.
//!
//! One-sided `w⁰` derivatives of `G` at `Σ` come from exact jets: they only
//! need `g`, `∂g`, `∂²g` at the surface point together with
//! `v̇ = −Γ(v,v)`, `v̈ = −∂Γ(v;v,v) − 2Γ(v̇,v)` and the Jacobi equation
//! `J̈ = −∂Γ(J;v,v) − 2Γ(v,J̇)`.

use std::sync::Arc;

use nalgebra::{Matrix4, Vector4};

use super::{LevelSurface, Side};
use crate::error::{Error, Result};
use crate::fd;
use crate::tensor::geodesic::rk4_step;
use crate::tensor::{dot, Connection, Mat4, MetricSpec, SpacetimePoint, Vec4};

/// Point on `Σ` in surface coordinates.
pub type SurfaceCoords = [f64; 3];

type VecField = dyn Fn(&SurfaceCoords) -> Result<Vec4> + Send + Sync;

fn fd_field(
    f: &dyn Fn(&SurfaceCoords) -> Result<Vec4>,
    y: &SurfaceCoords,
    h: f64,
) -> Result<[Vec4; 3]> {
    let mut out = [[0.0; 4]; 3];
    for (i, o) in out.iter_mut().enumerate() {
        let mut err = None;
        *o = fd::central_derivative_vec(
            |s| {
                let mut yy = *y;
                yy[i] = s;
                f(&yy).unwrap_or_else(|e| {
                    err = Some(e);
                    [f64::NAN; 4]
                })
            },
            y[i],
            h,
        );
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(out)
}

/// One side of a two-sided spacetime, seen from the surface.
pub trait SurfaceSide: Send + Sync {
    fn metric(&self) -> &dyn MetricSpec;

    /// Coordinates of the surface point `y` in this side's chart.
    fn position(&self, y: &SurfaceCoords) -> Result<Vec4>;

    /// Transverse vector `N(y)`, contravariant, in this side's chart.
    fn transverse(&self, y: &SurfaceCoords) -> Result<Vec4>;

    /// `∂x/∂yᵃ`; central differences unless overridden.
    fn tangents(&self, y: &SurfaceCoords) -> Result<[Vec4; 3]> {
        fd_field(&|y| self.position(y), y, self.fd_step())
    }

    /// `∂N/∂yᵃ`; central differences unless overridden.
    fn transverse_derivatives(&self, y: &SurfaceCoords) -> Result<[Vec4; 3]> {
        fd_field(&|y| self.transverse(y), y, self.fd_step())
    }

    /// Step for the surface-direction differences above.
    fn fd_step(&self) -> f64 {
        1e-3
    }

    fn point(&self, y: &SurfaceCoords) -> Result<SpacetimePoint> {
        Ok(SpacetimePoint::new(
            self.metric().chart(),
            self.position(y)?,
        ))
    }
}

/// A side assembled from closures.
#[derive(Clone)]
pub struct GeneralSide {
    metric: Arc<dyn MetricSpec>,
    position: Arc<VecField>,
    transverse: Arc<VecField>,
}

impl GeneralSide {
    pub fn new<P, N>(metric: Arc<dyn MetricSpec>, position: P, transverse: N) -> Self
    where
        P: Fn(&SurfaceCoords) -> Result<Vec4> + Send + Sync + 'static,
        N: Fn(&SurfaceCoords) -> Result<Vec4> + Send + Sync + 'static,
    {
        Self {
            metric,
            position: Arc::new(position),
            transverse: Arc::new(transverse),
        }
    }
}

impl SurfaceSide for GeneralSide {
    fn metric(&self) -> &dyn MetricSpec {
        self.metric.as_ref()
    }

    fn position(&self, y: &SurfaceCoords) -> Result<Vec4> {
        (self.position)(y)
    }

    fn transverse(&self, y: &SurfaceCoords) -> Result<Vec4> {
        (self.transverse)(y)
    }
}

type ShiftFn = dyn Fn(&SurfaceCoords) -> [f64; 3] + Send + Sync;

/// `N' = N + λᵃ Xₐ` for a tangential shift field `λ(y)`.
#[derive(Clone)]
pub struct ShiftedSide {
    inner: Arc<dyn SurfaceSide>,
    lambda: Arc<ShiftFn>,
}

impl ShiftedSide {
    pub fn new<F>(inner: Arc<dyn SurfaceSide>, lambda: F) -> Self
    where
        F: Fn(&SurfaceCoords) -> [f64; 3] + Send + Sync + 'static,
    {
        Self {
            inner,
            lambda: Arc::new(lambda),
        }
    }
}

impl SurfaceSide for ShiftedSide {
    fn metric(&self) -> &dyn MetricSpec {
        self.inner.metric()
    }

    fn position(&self, y: &SurfaceCoords) -> Result<Vec4> {
        self.inner.position(y)
    }

    fn tangents(&self, y: &SurfaceCoords) -> Result<[Vec4; 3]> {
        self.inner.tangents(y)
    }

    fn transverse(&self, y: &SurfaceCoords) -> Result<Vec4> {
        let mut n = self.inner.transverse(y)?;
        let x = self.inner.tangents(y)?;
        let l = (self.lambda)(y);
        for a in 0..3 {
            for mu in 0..4 {
                n[mu] += l[a] * x[a][mu];
            }
        }
        Ok(n)
    }

    fn fd_step(&self) -> f64 {
        self.inner.fd_step()
    }
}

/// `g = g^L ∪ g^R` glued along `Σ` through the surface coordinates.
#[derive(Clone)]
pub struct TwoSidedMetric {
    pub left: Arc<dyn SurfaceSide>,
    pub right: Arc<dyn SurfaceSide>,
    /// `⟨N, n⟩`.
    pub eta: f64,
    /// Level function in the left chart, when one is available.
    pub surface: Option<LevelSurface>,
}

impl TwoSidedMetric {
    pub fn new(left: Arc<dyn SurfaceSide>, right: Arc<dyn SurfaceSide>, eta: f64) -> Self {
        Self {
            left,
            right,
            eta,
            surface: None,
        }
    }

    pub fn side(&self, side: Side) -> &dyn SurfaceSide {
        match side {
            Side::Left => self.left.as_ref(),
            Side::Right => self.right.as_ref(),
        }
    }

    /// `max |G^L_ab − G^R_ab|` at `w⁰ = 0`.
    pub fn metric_jump_on_surface(&self, y: &SurfaceCoords) -> Result<f64> {
        let l = surface_metric(self.left.as_ref(), y)?;
        let r = surface_metric(self.right.as_ref(), y)?;
        Ok(max_abs_diff(&l, &r))
    }
}

fn max_abs_diff(a: &Mat4, b: &Mat4) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            m = m.max((a[i][j] - b[i][j]).abs());
        }
    }
    m
}

fn gram(g: &Mat4, x: &[Vec4; 4]) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in a..4 {
            let v = dot(g, &x[a], &x[b]);
            out[a][b] = v;
            out[b][a] = v;
        }
    }
    out
}

fn surface_frame(side: &dyn SurfaceSide, y: &SurfaceCoords) -> Result<[Vec4; 4]> {
    let t = side.tangents(y)?;
    Ok([side.transverse(y)?, t[0], t[1], t[2]])
}

/// `G_ab` at `w⁰ = 0`.
pub fn surface_metric(side: &dyn SurfaceSide, y: &SurfaceCoords) -> Result<Mat4> {
    let g = side.metric().jet_at(&side.point(y)?)?.g;
    Ok(gram(&g, &surface_frame(side, y)?))
}

/// `G`, `∂₀G`, `∂₀²G` on one side at `w⁰ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideJet {
    pub g: Mat4,
    pub d0: Mat4,
    pub d00: Mat4,
}

/// Exact one-sided jet from the metric's analytic derivatives.
pub fn analytic_jet(side: &dyn SurfaceSide, y: &SurfaceCoords) -> Result<SideJet> {
    let m = side.metric();
    let jet = m.jet_at(&side.point(y)?)?;
    let conn = Connection::from_jet(&jet, m.scale())?;
    let v = side.transverse(y)?;
    let t = side.tangents(y)?;
    let td = side.transverse_derivatives(y)?;

    let neg = |a: Vec4| a.map(|c| -c);
    let sub = |a: Vec4, b: Vec4| std::array::from_fn::<f64, 4, _>(|i| a[i] - b[i]);
    let vd = neg(conn.contract(&v, &v));
    let vdd = sub(
        neg(conn.contract_derivative(&v, &v, &v)),
        conn.contract(&vd, &v).map(|c| 2.0 * c),
    );

    let x: [Vec4; 4] = [v, t[0], t[1], t[2]];
    let xd: [Vec4; 4] = [vd, td[0], td[1], td[2]];
    let mut xdd = [vdd; 4];
    for i in 1..4 {
        xdd[i] = sub(
            neg(conn.contract_derivative(&x[i], &v, &v)),
            conn.contract(&v, &xd[i]).map(|c| 2.0 * c),
        );
    }

    // D1(w)_{μν} = ∂_λ g_{μν} w^λ, D2_{μν} = ∂_λ∂_κ g_{μν} v^λ v^κ
    let d1 = |w: &Vec4| -> Mat4 {
        std::array::from_fn(|mu| {
            std::array::from_fn(|nu| (0..4).map(|l| jet.d1[mu][nu][l] * w[l]).sum())
        })
    };
    let dv = d1(&v);
    let dvd = d1(&vd);
    let d2: Mat4 = std::array::from_fn(|mu| {
        std::array::from_fn(|nu| {
            let mut s = 0.0;
            for l in 0..4 {
                for k in 0..4 {
                    s += jet.d2[mu][nu][l][k] * v[l] * v[k];
                }
            }
            s
        })
    });

    let g = gram(&jet.g, &x);
    let mut d0 = [[0.0; 4]; 4];
    let mut d00 = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            d0[a][b] =
                dot(&dv, &x[a], &x[b]) + dot(&jet.g, &xd[a], &x[b]) + dot(&jet.g, &x[a], &xd[b]);
            d00[a][b] = dot(&d2, &x[a], &x[b])
                + dot(&dvd, &x[a], &x[b])
                + 2.0 * (dot(&dv, &xd[a], &x[b]) + dot(&dv, &x[a], &xd[b]))
                + dot(&jet.g, &xdd[a], &x[b])
                + 2.0 * dot(&jet.g, &xd[a], &xd[b])
                + dot(&jet.g, &x[a], &xdd[b]);
        }
    }
    Ok(SideJet { g, d0, d00 })
}

/// Geodesic + Jacobi-field state: `x, v, J₁..₃, K₁..₃`.
type FanState = [f64; 32];

fn fan_initial(side: &dyn SurfaceSide, y: &SurfaceCoords) -> Result<FanState> {
    let x = side.position(y)?;
    let v = side.transverse(y)?;
    let t = side.tangents(y)?;
    let k = side.transverse_derivatives(y)?;
    let mut s = [0.0; 32];
    s[..4].copy_from_slice(&x);
    s[4..8].copy_from_slice(&v);
    for i in 0..3 {
        s[8 + 4 * i..12 + 4 * i].copy_from_slice(&t[i]);
        s[20 + 4 * i..24 + 4 * i].copy_from_slice(&k[i]);
    }
    Ok(s)
}

fn quad(s: &FanState, at: usize) -> Vec4 {
    [s[at], s[at + 1], s[at + 2], s[at + 3]]
}

/// Integrate the fan from `w⁰ = 0` to `w0` with `steps` RK4 steps.
fn integrate_fan(
    side: &dyn SurfaceSide,
    y: &SurfaceCoords,
    w0: f64,
    steps: usize,
) -> Result<FanState> {
    let m = side.metric();
    let chart = m.chart();
    let rhs = |s: f64, st: &FanState| -> Result<FanState> {
        let p = SpacetimePoint::new(chart.clone(), quad(st, 0));
        let conn = Connection::at(m, &p).map_err(|_| Error::ChartExit { s })?;
        let v = quad(st, 4);
        let a = conn.contract(&v, &v);
        let mut out = [0.0; 32];
        for mu in 0..4 {
            out[mu] = v[mu];
            out[4 + mu] = -a[mu];
        }
        for i in 0..3 {
            let j = quad(st, 8 + 4 * i);
            let k = quad(st, 20 + 4 * i);
            let dj = conn.contract_derivative(&j, &v, &v);
            let vk = conn.contract(&v, &k);
            for mu in 0..4 {
                out[8 + 4 * i + mu] = k[mu];
                out[20 + 4 * i + mu] = -dj[mu] - 2.0 * vk[mu];
            }
        }
        Ok(out)
    };
    let mut st = fan_initial(side, y)?;
    if w0 == 0.0 {
        return Ok(st);
    }
    let h = w0 / steps as f64;
    for i in 0..steps {
        st = rk4_step(&rhs, i as f64 * h, &st, h)?;
        if st.iter().any(|c| !c.is_finite()) {
            return Err(Error::ChartExit {
                s: (i + 1) as f64 * h,
            });
        }
    }
    Ok(st)
}

fn fan_frame(st: &FanState) -> [Vec4; 4] {
    [quad(st, 4), quad(st, 8), quad(st, 12), quad(st, 16)]
}

/// How one-sided `w⁰` derivatives at `Σ` are obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivativeMethod {
    /// Exact jets from the analytic metric derivatives.
    AnalyticJet,
    /// Five-point one-sided stencils over the integrated fan at
    /// `w⁰ = 0, ±h, …, ±4h`.
    Stencil { h: f64 },
}

const FORM_TOL: f64 = 1e-6;
const CONDITION_LIMIT: f64 = 1e6;

/// A built MGS patch around a surface point.
#[derive(Clone)]
pub struct MgsChart {
    pub base: SurfaceCoords,
    pub eta: f64,
    pub patch_size: f64,
    pub method: DerivativeMethod,
    pub left: SideJet,
    pub right: SideJet,
    /// Worst of `|G₀₁ − η|`, `|G₁₁|`, `|G₀ᵢ|` (i ≥ 2) on either side at the base.
    pub form_residual: f64,
    /// Smallest of `G₂₂`, `G₃₃` on either side at the base.
    pub min_angular: f64,
    /// Largest condition estimate of `∂x/∂w` over the patch corners.
    pub condition: f64,
    sides: TwoSidedMetric,
}

impl std::fmt::Debug for MgsChart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MgsChart")
            .field("base", &self.base)
            .field("eta", &self.eta)
            .field("patch_size", &self.patch_size)
            .field("left", &self.left)
            .field("right", &self.right)
            .finish()
    }
}

fn curvature_radius(side: &dyn SurfaceSide, y: &SurfaceCoords) -> Result<f64> {
    let riem = Connection::at(side.metric(), &side.point(y)?)?.riemann();
    let worst = riem
        .iter()
        .flatten()
        .flatten()
        .flatten()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(if worst > 0.0 {
        1.0 / worst.sqrt()
    } else {
        f64::INFINITY
    })
}

fn condition_estimate(frame: &[Vec4; 4]) -> f64 {
    let m = Matrix4::from_fn(|i, j| frame[j][i]);
    match m.try_inverse() {
        Some(inv) => m.norm() * inv.norm(),
        None => f64::INFINITY,
    }
}

impl MgsChart {
    /// Build the patch at surface point `base`. `patch_size` defaults to
    /// `1e-2` times the smaller local curvature radius (capped at the
    /// metric's coordinate scale).
    pub fn build(
        tm: &TwoSidedMetric,
        base: SurfaceCoords,
        patch_size: Option<f64>,
        method: DerivativeMethod,
    ) -> Result<Self> {
        let patch = match patch_size {
            Some(p) if p > 0.0 => p,
            Some(p) => {
                return Err(Error::InvalidConfig(format!(
                    "patch size {p} must be positive"
                )))
            }
            None => {
                let mut r = tm.left.metric().scale().min(tm.right.metric().scale());
                for s in [tm.left.as_ref(), tm.right.as_ref()] {
                    r = r.min(curvature_radius(s, &base)?);
                }
                1e-2 * r
            }
        };

        let jet = |side: &dyn SurfaceSide, sign: f64| -> Result<SideJet> {
            match method {
                DerivativeMethod::AnalyticJet => analytic_jet(side, &base),
                DerivativeMethod::Stencil { h } => stencil_jet(side, &base, sign * h, patch),
            }
        };
        let left = jet(tm.left.as_ref(), -1.0)?;
        let right = jet(tm.right.as_ref(), 1.0)?;

        let mut form_residual: f64 = 0.0;
        let mut min_angular = f64::INFINITY;
        for j in [&left, &right] {
            let g = &j.g;
            form_residual = form_residual
                .max((g[0][1] - tm.eta).abs())
                .max(g[1][1].abs())
                .max(g[0][2].abs())
                .max(g[0][3].abs());
            min_angular = min_angular.min(g[2][2]).min(g[3][3]);
        }

        let mut condition: f64 = 0.0;
        for (side, sign) in [(tm.left.as_ref(), -1.0), (tm.right.as_ref(), 1.0)] {
            for corner in 0..8 {
                let mut y = base;
                for (i, yi) in y.iter_mut().enumerate() {
                    *yi += if corner >> i & 1 == 1 { patch } else { -patch };
                }
                let st = integrate_fan(side, &y, sign * patch, 16)?;
                condition = condition.max(condition_estimate(&fan_frame(&st)));
            }
        }
        if !(condition <= CONDITION_LIMIT) {
            return Err(Error::PatchTooLarge { condition });
        }

        Ok(Self {
            base,
            eta: tm.eta,
            patch_size: patch,
            method,
            left,
            right,
            form_residual,
            min_angular,
            condition,
            sides: tm.clone(),
        })
    }

    pub fn jet(&self, side: Side) -> &SideJet {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    /// Whether the surface-metric form holds to `1e-6` with positive angular components.
    pub fn satisfies_form(&self) -> bool {
        self.form_residual < FORM_TOL && self.min_angular > 0.0
    }

    fn steps_for(&self, w0: f64) -> usize {
        ((w0.abs() / self.patch_size * 64.0).ceil() as usize).max(8)
    }

    fn side_of(w0: f64) -> Side {
        if w0 < 0.0 {
            Side::Left
        } else {
            Side::Right
        }
    }

    /// Spacetime point with MGS coordinates `w`, in the chart of the side
    /// selected by the sign of `w⁰`.
    pub fn from_mgs(&self, w: &[f64; 4]) -> Result<(Side, SpacetimePoint)> {
        let side = Self::side_of(w[0]);
        let s = self.sides.side(side);
        let st = integrate_fan(s, &[w[1], w[2], w[3]], w[0], self.steps_for(w[0]))?;
        Ok((side, SpacetimePoint::new(s.metric().chart(), quad(&st, 0))))
    }

    /// Newton inversion of [`MgsChart::from_mgs`] on the given side.
    pub fn to_mgs(&self, x: &SpacetimePoint, side: Side) -> Result<[f64; 4]> {
        let s = self.sides.side(side);
        if x.chart != s.metric().chart() {
            return Err(Error::ChartMismatch {
                expected: s.metric().chart().to_string(),
                found: x.chart.to_string(),
            });
        }
        let mut w = [0.0, self.base[0], self.base[1], self.base[2]];
        for _ in 0..60 {
            let st = integrate_fan(s, &[w[1], w[2], w[3]], w[0], self.steps_for(w[0]))?;
            let f = quad(&st, 0);
            let frame = fan_frame(&st);
            let jac = Matrix4::from_fn(|i, j| frame[j][i]);
            let rhs = Vector4::from_fn(|i, _| f[i] - x.coords[i]);
            let delta = jac.lu().solve(&rhs).ok_or(Error::PatchTooLarge {
                condition: f64::INFINITY,
            })?;
            let mut size: f64 = 0.0;
            for i in 0..4 {
                w[i] -= delta[i];
                size = size.max(delta[i].abs());
            }
            if size < 1e-14 * (1.0 + w.iter().fold(0.0f64, |m, v| m.max(v.abs()))) {
                return Ok(w);
            }
        }
        Err(Error::PatchTooLarge {
            condition: f64::INFINITY,
        })
    }

    /// Pulled-back metric `G_ab(w)` from the integrated fan.
    pub fn metric_at(&self, w: &[f64; 4]) -> Result<Mat4> {
        let side = Self::side_of(w[0]);
        let s = self.sides.side(side);
        let st = integrate_fan(s, &[w[1], w[2], w[3]], w[0], self.steps_for(w[0]))?;
        let g = s.metric().value(&quad(&st, 0))?;
        Ok(gram(&g, &fan_frame(&st)))
    }

    pub fn sides(&self) -> &TwoSidedMetric {
        &self.sides
    }
}

fn stencil_jet(side: &dyn SurfaceSide, y: &SurfaceCoords, h: f64, patch: f64) -> Result<SideJet> {
    let m = side.metric();
    let mut samples = [[[0.0; 4]; 4]; 5];
    for (k, s) in samples.iter_mut().enumerate() {
        let w0 = k as f64 * h;
        let steps = ((w0.abs() / patch * 64.0).ceil() as usize).max(4);
        let st = integrate_fan(side, y, w0, steps)?;
        let g = m.value(&quad(&st, 0))?;
        *s = gram(&g, &fan_frame(&st));
    }
    let mut d0 = [[0.0; 4]; 4];
    let mut d00 = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            let f: [f64; 5] = std::array::from_fn(|k| samples[k][a][b]);
            d0[a][b] = fd::one_sided_first(&f, h);
            d00[a][b] = fd::one_sided_second(&f, h);
        }
    }
    Ok(SideJet {
        g: samples[0],
        d0,
        d00,
    })
}

/// `𝒦_ab = −½ ∂₀G_ab` for `a, b ∈ {1, 2, 3}` on the given side.
pub fn generalized_second_form(chart: &MgsChart, side: Side) -> [[f64; 3]; 3] {
    let d0 = &chart.jet(side).d0;
    std::array::from_fn(|a| std::array::from_fn(|b| -0.5 * d0[a + 1][b + 1]))
}

/// `[𝒦] = 𝒦^L − 𝒦^R` and its max-norm.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct KJump {
    pub components: [[f64; 3]; 3],
    pub norm: f64,
}

pub fn jump_second_form(chart: &MgsChart) -> KJump {
    let l = generalized_second_form(chart, Side::Left);
    let r = generalized_second_form(chart, Side::Right);
    let components: [[f64; 3]; 3] =
        std::array::from_fn(|a| std::array::from_fn(|b| l[a][b] - r[a][b]));
    let norm = components
        .iter()
        .flatten()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    KJump { components, norm }
}

/// `[G_{tt,00}]` for `t = 2, 3`.
pub fn extra_c2_condition(chart: &MgsChart) -> [f64; 2] {
    [
        chart.left.d00[2][2] - chart.right.d00[2][2],
        chart.left.d00[3][3] - chart.right.d00[3][3],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{Chart, Minkowski};

    /// `{t = x}` in flat space with `y¹` along `n = (1, 1, 0, 0)`.
    fn flat_plane(transverse: Vec4) -> TwoSidedMetric {
        let side = || -> Arc<dyn SurfaceSide> {
            Arc::new(GeneralSide::new(
                Arc::new(Minkowski::cartesian()),
                |y: &SurfaceCoords| Ok([y[0], y[0], y[1], y[2]]),
                move |_: &SurfaceCoords| Ok(transverse),
            ))
        };
        TwoSidedMetric::new(side(), side(), 1.0)
    }

    #[test]
    fn flat_null_plane_has_the_skew_form() {
        let chart = MgsChart::build(
            &flat_plane([0.0, 1.0, 0.0, 0.0]),
            [0.0; 3],
            Some(0.1),
            DerivativeMethod::AnalyticJet,
        )
        .unwrap();
        let expected = [
            [1.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ];
        assert_eq!(chart.left.g, expected);
        assert_eq!(chart.right.g, expected);
        assert!(chart.satisfies_form());
        assert_eq!(jump_second_form(&chart).norm, 0.0);
        assert_eq!(extra_c2_condition(&chart), [0.0, 0.0]);
        let g = chart.metric_at(&[0.05, 0.01, 0.02, -0.03]).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((g[i][j] - expected[i][j]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn flat_chart_round_trip() {
        let chart = MgsChart::build(
            &flat_plane([0.0, 1.0, 0.0, 0.0]),
            [0.0; 3],
            Some(0.1),
            DerivativeMethod::AnalyticJet,
        )
        .unwrap();
        for w in [[0.03, 0.01, -0.02, 0.04], [-0.05, 0.02, 0.0, -0.01]] {
            let (side, x) = chart.from_mgs(&w).unwrap();
            assert_eq!(x.chart, Chart::Cartesian);
            let exact = [w[1], w[1] + w[0], w[2], w[3]];
            assert!((0..4).all(|i| (x.coords[i] - exact[i]).abs() < 1e-15));
            let back = chart.to_mgs(&x, side).unwrap();
            for i in 0..4 {
                assert!((back[i] - w[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn non_orthogonal_transverse_breaks_the_form() {
        let chart = MgsChart::build(
            &flat_plane([0.0, 1.0, 0.5, 0.0]),
            [0.0; 3],
            Some(0.1),
            DerivativeMethod::AnalyticJet,
        )
        .unwrap();
        assert!(!chart.satisfies_form());
        assert!((chart.form_residual - 0.5).abs() < 1e-15);
    }

    #[test]
    fn stencil_matches_jets_in_flat_space() {
        let tm = flat_plane([0.0, 1.0, 0.0, 0.0]);
        let chart = MgsChart::build(
            &tm,
            [0.0; 3],
            Some(0.1),
            DerivativeMethod::Stencil { h: 1e-3 },
        )
        .unwrap();
        assert!(chart.left.d0.iter().flatten().all(|v| v.abs() < 1e-12));
        assert!(chart.right.d00.iter().flatten().all(|v| v.abs() < 1e-8));
    }

    #[test]
    fn non_positive_patch_is_rejected() {
        let r = MgsChart::build(
            &flat_plane([0.0, 1.0, 0.0, 0.0]),
            [0.0; 3],
            Some(0.0),
            DerivativeMethod::AnalyticJet,
        );
        assert!(matches!(r, Err(Error::InvalidConfig(_))));
    }
}
