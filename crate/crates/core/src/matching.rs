//! FRW (behind) joined to TOV (ahead) across `M(r̄) = (4π/3)ρr̄³`, with
//! `k = 0` throughout. Jump brackets are `[q] = q^L − q^R`, left = FRW.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lightlike::{sigma_from_sigma_bar, solve_lightlike};
use crate::solutions::{
    frw_density, tov_solve, FrwMetric, FrwParameters, TovMetric, TovParameters,
};
use crate::surface::mgs::SurfaceCoords;
use crate::surface::{
    extra_c2_condition, jump_second_form, DerivativeMethod, KJump, MgsChart, Side, SurfaceSide,
    TwoSidedMetric,
};
use crate::tensor::{
    dot, stress_energy, transform_tensor, Chart, Curvature, FluidState, Mat4, MetricSpec,
    SpacetimePoint, TensorComponents, Vec4,
};

/// Free constants of the matched pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Anchors {
    pub t0: f64,
    pub rbar0: f64,
    #[serde(rename = "R0")]
    pub r0: f64,
    #[serde(rename = "B0")]
    pub b0: f64,
    #[serde(rename = "G")]
    pub g_newton: f64,
}

impl Default for Anchors {
    fn default() -> Self {
        Self {
            t0: 0.0,
            rbar0: 1.0,
            r0: 1.0,
            b0: 1.0,
            g_newton: 1.0,
        }
    }
}

const NONCHAR_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchedSolution {
    pub frw: FrwParameters,
    pub tov: TovParameters,
    pub eta: f64,
    pub sigma: f64,
    pub sigma_bar: f64,
}

/// Join the TOV star with `σ̄` to the FRW solution with
/// `σ = σ̄(σ̄ + 5)/(3(σ̄ + 1))` and the same `γ`.
pub fn match_solution(sigma_bar: f64, eta: f64, anchors: Anchors) -> Result<MatchedSolution> {
    if !(sigma_bar > 0.0 && sigma_bar <= 1.0) {
        return Err(Error::BadSigma(sigma_bar));
    }
    if eta == 0.0 || !eta.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "eta must be a nonzero real, got {eta}"
        )));
    }
    let tov = tov_solve(sigma_bar, anchors.b0, anchors.rbar0, anchors.g_newton)?;
    let sigma = sigma_from_sigma_bar(sigma_bar)?;
    let frw = FrwParameters {
        sigma,
        k: 0.0,
        gamma: tov.gamma,
        r0: anchors.r0,
        t0: anchors.t0,
        rbar0: anchors.rbar0,
        sign: 1.0,
        g_newton: anchors.g_newton,
    };
    frw.validate()?;
    if tov.a == 0.0 {
        return Err(Error::InvalidConfig("A vanishes".into()));
    }
    let ms = MatchedSolution {
        frw,
        tov,
        eta,
        sigma,
        sigma_bar,
    };
    let margin = ms.noncharacteristic_margin(anchors.t0)?;
    if !(margin >= NONCHAR_TOL) {
        return Err(Error::CharacteristicSurface { margin });
    }
    Ok(ms)
}

/// Every quantity of the pair evaluated on `Σ` at FRW time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceState {
    pub t: f64,
    pub tbar: f64,
    pub rbar: f64,
    pub r: f64,
    #[serde(rename = "R")]
    pub scale: f64,
    #[serde(rename = "R_dot")]
    pub scale_dot: f64,
    pub rbar_dot: f64,
    pub r_dot: f64,
    pub rho: f64,
    pub p: f64,
    pub rho_bar: f64,
    pub p_bar: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    /// `C = R²(1 − (8π𝒢/3)ρR²r²)`.
    #[serde(rename = "C")]
    pub c: f64,
    /// `E = −RṘr̄`.
    #[serde(rename = "E")]
    pub e: f64,
    /// `ψC = √(A/(B(1 − kr²)))`.
    pub psi_c: f64,
}

/// `∂(t, r)/∂(t̄, r̄)` on `Σ` and its independently derived inverse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChartPartials {
    /// `[[∂t/∂t̄, ∂t/∂r̄], [∂r/∂t̄, ∂r/∂r̄]]`.
    pub jacobian: [[f64; 2]; 2],
    /// `[[∂t̄/∂t, ∂t̄/∂r], [∂r̄/∂t, ∂r̄/∂r]]` from `dt̄ = ψ(C dt − E dr̄)` and `r̄ = Rr`.
    pub inverse: [[f64; 2]; 2],
    /// `max |J·K − I|`.
    pub round_trip: f64,
}

/// The transverse vector in both charts, with its invariants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransverseOnSurface {
    pub frw_contravariant: Vec4,
    pub frw_covariant: Vec4,
    pub tov_contravariant: Vec4,
    pub tov_covariant: Vec4,
    pub n_dot_normal_frw: f64,
    pub n_dot_normal_tov: f64,
    pub norm_frw: f64,
    pub norm_tov: f64,
}

impl MatchedSolution {
    /// The exact lightlike solution `σ̄ = H(σ₂)`.
    pub fn lightlike(eta: f64, anchors: Anchors) -> Result<Self> {
        match_solution(solve_lightlike()?.sigma_bar, eta, anchors)
    }

    /// Same FRW side, TOV `γ` scaled by `1 + eps`; `Σ` is still the FRW
    /// shock curve but the mass relation no longer holds on it.
    pub fn with_perturbed_gamma(mut self, eps: f64) -> Self {
        self.tov = self.tov.with_gamma(self.tov.gamma * (1.0 + eps));
        self
    }

    /// FRW equation of state shifted by `d` (`σ ↦ σ + d`).
    pub fn with_perturbed_sigma(mut self, d: f64) -> Self {
        self.frw.sigma += d;
        self.sigma += d;
        self
    }

    pub fn rbar_dot(&self) -> f64 {
        self.frw.rbar_speed()
    }

    pub fn frw_metric(&self) -> FrwMetric {
        FrwMetric {
            params: self.frw,
            scale: crate::solutions::ScaleFactor::Solution,
        }
    }

    pub fn tov_metric(&self) -> TovMetric {
        TovMetric { params: self.tov }
    }

    /// `t̄` along `Σ` from `dt̄/dt = ṙ̄/√(AB)`, with `t̄(t₀) = 0`; this keeps
    /// the surface null in the static chart.
    pub fn tbar(&self, t: f64) -> Result<f64> {
        let rb = self.frw.rbar(t)?;
        let tv = &self.tov;
        let c = tv.rbar0 / (tv.a * tv.b0).sqrt();
        let e = 1.0 - 0.5 * tv.b_exponent();
        let x = rb / tv.rbar0;
        Ok(if e.abs() < 1e-12 {
            c * x.ln()
        } else {
            c * (x.powf(e) - 1.0) / e
        })
    }

    pub fn state(&self, t: f64) -> Result<SurfaceState> {
        let rbar = self.frw.rbar(t)?;
        let [big_r, rd, _] = self.frw.scale_jet(t)?;
        let v = self.rbar_dot();
        let r = rbar / big_r;
        let rho = frw_density(&self.frw, t)?;
        let k = self.frw.k;
        let b = self.tov.b_jet(rbar)?[0];
        let a = self.tov.a;
        Ok(SurfaceState {
            t,
            tbar: self.tbar(t)?,
            rbar,
            r,
            scale: big_r,
            scale_dot: rd,
            rbar_dot: v,
            r_dot: v / big_r - rbar * rd / (big_r * big_r),
            rho,
            p: self.frw.sigma * rho,
            rho_bar: self.tov.rho_bar(rbar),
            p_bar: self.tov.p_bar(rbar),
            a,
            b,
            c: big_r
                * big_r
                * (1.0 - 8.0 * PI * self.frw.g_newton / 3.0 * rho * big_r * big_r * r * r),
            e: -big_r * rd * rbar,
            psi_c: (a / (b * (1.0 - k * r * r))).sqrt(),
        })
    }

    /// `|(4π/3)ρr̄³ − M(r̄)| / M(r̄)`.
    pub fn shock_mass_residual(&self, t: f64) -> Result<f64> {
        let s = self.state(t)?;
        let m = self.tov.mass(s.rbar);
        Ok((4.0 * PI / 3.0 * s.rho * s.rbar.powi(3) - m).abs() / m)
    }

    /// Relative residuals of the five surface identities: the `ψ` relation,
    /// `C = R²A`, `E/C = −Ṙr/A`, `E²/C² = (1 − kr² − A)/A²`, and
    /// `Ṙ²r² = 1 − kr² − A`.
    pub fn surface_identities(&self, t: f64) -> Result<[f64; 5]> {
        let s = self.state(t)?;
        let k = self.frw.k;
        let w = 1.0 - k * s.r * s.r;
        let ec = s.e / s.c;
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
        Ok([
            rel(s.b * (1.0 + s.a * ec * ec), s.b / s.a * w),
            rel(s.c, s.scale * s.scale * s.a),
            rel(ec, -s.scale_dot * s.r / s.a),
            rel(ec * ec, (w - s.a) / (s.a * s.a)),
            rel(s.scale_dot * s.scale_dot * s.r * s.r, w - s.a),
        ])
    }

    pub fn chart_partials(&self, t: f64) -> Result<ChartPartials> {
        let s = self.state(t)?;
        let w = 1.0 - self.frw.k * s.r * s.r;
        let ec = s.e / s.c;
        let jacobian = [
            [1.0 / s.psi_c, ec],
            [s.a / s.scale * ec / s.psi_c, w / (s.scale * s.a)],
        ];
        let psi_e = s.psi_c * ec;
        let inverse = [
            [s.psi_c - psi_e * s.scale_dot * s.r, -psi_e * s.scale],
            [s.scale_dot * s.r, s.scale],
        ];
        let mut round_trip: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let p: f64 = (0..2).map(|k| jacobian[i][k] * inverse[k][j]).sum();
                round_trip = round_trip.max((p - if i == j { 1.0 } else { 0.0 }).abs());
            }
        }
        Ok(ChartPartials {
            jacobian,
            inverse,
            round_trip,
        })
    }

    /// FRW surface point at `t` with the given angles.
    pub fn frw_point(&self, t: f64, theta: f64, phi: f64) -> Result<SpacetimePoint> {
        let s = self.state(t)?;
        Ok(SpacetimePoint::new(Chart::Comoving, [t, s.r, theta, phi]))
    }

    pub fn tov_point(&self, t: f64, theta: f64, phi: f64) -> Result<SpacetimePoint> {
        let s = self.state(t)?;
        Ok(SpacetimePoint::new(
            Chart::Static,
            [s.tbar, s.rbar, theta, phi],
        ))
    }

    /// 4×4 `(∂ȳ/∂x, ∂x/∂ȳ)` for `x = (t, r, θ, φ) ↦ ȳ = (t̄, r̄, θ, φ)` on `Σ`.
    /// The forward map comes from the differentials; its inverse is taken
    /// numerically so the pair stays consistent off the exact solution.
    pub fn jacobians(&self, t: f64) -> Result<(Mat4, Mat4)> {
        let k = self.chart_partials(t)?.inverse;
        let det = k[0][0] * k[1][1] - k[0][1] * k[1][0];
        if det.abs() < 1e-14 {
            return Err(Error::BadJacobian { residual: det });
        }
        let j = [
            [k[1][1] / det, -k[0][1] / det],
            [-k[1][0] / det, k[0][0] / det],
        ];
        let embed = |m: [[f64; 2]; 2]| {
            let mut out = [[0.0; 4]; 4];
            out[0][0] = m[0][0];
            out[0][1] = m[0][1];
            out[1][0] = m[1][0];
            out[1][1] = m[1][1];
            out[2][2] = 1.0;
            out[3][3] = 1.0;
            out
        };
        Ok((embed(k), embed(j)))
    }

    fn transport_to_tov(&self, t: f64, tc: &TensorComponents) -> Result<TensorComponents> {
        let (fwd, inv) = self.jacobians(t)?;
        let target = self.tov_point(t, tc.point.coords[2], tc.point.coords[3])?;
        transform_tensor(tc, &fwd, &inv, target)
    }

    /// `n_μ = (−ṙ, 1, 0, 0)` from `φ = r − r(t)`.
    pub fn frw_normal(&self, t: f64) -> Result<Vec4> {
        Ok([-self.state(t)?.r_dot, 1.0, 0.0, 0.0])
    }

    /// `N = (0, η, 0, 0)` in FRW, carried to the static chart by the
    /// surface jacobian.
    pub fn transverse_on_surface(&self, t: f64) -> Result<TransverseOnSurface> {
        let x = self.frw_point(t, FRAC_PI_2, 0.0)?;
        let n_up = TensorComponents::from_data(1, 0, vec![0.0, self.eta, 0.0, 0.0], x.clone());
        let normal = TensorComponents::from_data(0, 1, self.frw_normal(t)?.to_vec(), x.clone());
        let nb_up = self.transport_to_tov(t, &n_up)?;
        let normal_bar = self.transport_to_tov(t, &normal)?;

        let g = self.frw_metric().jet_at(&x)?.g;
        let gb = self.tov_metric().jet_at(&nb_up.point)?.g;
        let v4 = |d: &[f64]| [d[0], d[1], d[2], d[3]];
        let (n, nb) = (v4(&n_up.data), v4(&nb_up.data));
        let lower = |g: &Mat4, v: &Vec4| crate::tensor::mat_vec(g, v);
        let pair = |a: &Vec4, b: &[f64]| (0..4).map(|i| a[i] * b[i]).sum::<f64>();
        Ok(TransverseOnSurface {
            frw_contravariant: n,
            frw_covariant: lower(&g, &n),
            tov_contravariant: nb,
            tov_covariant: lower(&gb, &nb),
            n_dot_normal_frw: pair(&n, &normal.data),
            n_dot_normal_tov: pair(&nb, &normal_bar.data),
            norm_frw: dot(&g, &n, &n),
            norm_tov: dot(&gb, &nb, &nb),
        })
    }

    /// The three transverse-vector conditions, normalised:
    /// `(max |⟨N,n⟩ − η|/η over both sides, max |[⟨N,Xₐ⟩]|/(η R), |[⟨N,N⟩]|/(η²R²))`.
    pub fn transverse_jumps(&self, t: f64) -> Result<[f64; 3]> {
        let s = self.state(t)?;
        let tr = self.transverse_on_surface(t)?;
        let x = self.frw_point(t, FRAC_PI_2, 0.0)?;
        let g = self.frw_metric().jet_at(&x)?.g;
        let xb = self.tov_point(t, FRAC_PI_2, 0.0)?;
        let gb = self.tov_metric().jet_at(&xb)?.g;
        let tangents = [
            [1.0, s.r_dot, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ];
        let mut tangential: f64 = 0.0;
        for xa in tangents {
            let xa_bar = self.transport_to_tov(
                t,
                &TensorComponents::from_data(1, 0, xa.to_vec(), x.clone()),
            )?;
            let xb4 = [
                xa_bar.data[0],
                xa_bar.data[1],
                xa_bar.data[2],
                xa_bar.data[3],
            ];
            let jump = dot(&g, &tr.frw_contravariant, &xa) - dot(&gb, &tr.tov_contravariant, &xb4);
            tangential = tangential.max(jump.abs() / (self.eta.abs() * s.scale));
        }
        let eta = self.eta;
        Ok([
            ((tr.n_dot_normal_frw - eta)
                .abs()
                .max((tr.n_dot_normal_tov - eta).abs()))
                / eta.abs(),
            tangential,
            (tr.norm_frw - tr.norm_tov).abs() / (eta * eta * s.scale * s.scale),
        ])
    }

    /// `max |ḡ − J*g|` on `Σ`: the FRW metric carried to the static chart
    /// against the TOV metric there.
    pub fn metric_jump(&self, t: f64) -> Result<f64> {
        let x = self.frw_point(t, FRAC_PI_2, 0.0)?;
        let g = self.frw_metric().jet_at(&x)?.g;
        let carried = self.transport_to_tov(t, &TensorComponents::from_mat(0, &g, x))?;
        let gb = self.tov_metric().jet_at(&carried.point)?.g;
        let c = carried.as_mat();
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((c[i][j] - gb[i][j]).abs());
            }
        }
        Ok(worst)
    }

    /// `ṙ² − (1 − kr²)/R²`.
    pub fn lightlike_residual(&self, t: f64) -> Result<f64> {
        let s = self.state(t)?;
        Ok(s.r_dot * s.r_dot - (1.0 - self.frw.k * s.r * s.r) / (s.scale * s.scale))
    }

    /// `η²R²((p + ρ̄)/(1 − kr²) − (p̄ + ρ̄)/A)`.
    pub fn conservation_jump(&self, t: f64) -> Result<f64> {
        let s = self.state(t)?;
        let w = 1.0 - self.frw.k * s.r * s.r;
        Ok(self.eta
            * self.eta
            * s.scale
            * s.scale
            * ((s.p + s.rho_bar) / w - (s.p_bar + s.rho_bar) / s.a))
    }

    /// Natural scale `η²R²ρ̄` of the conservation bracket.
    pub fn conservation_scale(&self, t: f64) -> Result<f64> {
        let s = self.state(t)?;
        Ok(self.eta * self.eta * s.scale * s.scale * s.rho_bar)
    }

    /// `[T^{αβ}N_αN_β]` with each side's comoving perfect fluid.
    pub fn conservation_jump_tensorial(&self, t: f64) -> Result<f64> {
        let tr = self.transverse_on_surface(t)?;
        let x = self.frw_point(t, FRAC_PI_2, 0.0)?;
        let xb = self.tov_point(t, FRAC_PI_2, 0.0)?;
        let frw = self.frw_metric();
        let tov = self.tov_metric();
        let tl = stress_energy(&frw.fluid(&x)?, &frw, &x)?.as_mat();
        let tr_m = stress_energy(&tov.fluid(&xb)?, &tov, &xb)?.as_mat();
        Ok(dot(&tl, &tr.frw_covariant, &tr.frw_covariant)
            - dot(&tr_m, &tr.tov_covariant, &tr.tov_covariant))
    }

    /// `|ṙ̄ − C/E|` with `C/E = −A/(Ṙr)`.
    pub fn noncharacteristic_margin(&self, t: f64) -> Result<f64> {
        let s = self.state(t)?;
        let rr = s.scale_dot * s.r;
        if rr == 0.0 {
            return Ok(f64::INFINITY);
        }
        Ok((s.rbar_dot + s.a / rr).abs())
    }

    /// FRW/TOV sides glued at the surface point with FRW time `t`.
    /// With `unit_transverse` the common `N` is shifted along `n` so that
    /// `g(N, N) = 1`; otherwise `N = (0, η, 0, 0)` in FRW.
    pub fn two_sided(&self, t: f64, unit_transverse: bool) -> Result<TwoSidedMetric> {
        let frw = FrwSide::new(*self, t, FRAC_PI_2, 0.0, unit_transverse)?;
        let tov = TovSide {
            frw: frw.clone(),
            metric: self.tov_metric(),
        };
        Ok(TwoSidedMetric::new(Arc::new(frw), Arc::new(tov), self.eta))
    }

    pub fn build_chart(
        &self,
        t: f64,
        unit_transverse: bool,
        method: DerivativeMethod,
    ) -> Result<MgsChart> {
        MgsChart::build(&self.two_sided(t, unit_transverse)?, [0.0; 3], None, method)
    }
}

/// FRW side: `y¹` is the affine parameter of `n = (1/R, 1/R²)` along the
/// generator, `y² = r̄_b (θ − θ_b)`, `y³ = r̄_b sin θ_b (φ − φ_b)`.
#[derive(Debug, Clone)]
pub struct FrwSide {
    ms: MatchedSolution,
    metric: FrwMetric,
    rbar_b: f64,
    theta_b: f64,
    phi_b: f64,
    unit: bool,
}

impl FrwSide {
    pub fn new(ms: MatchedSolution, tb: f64, theta_b: f64, phi_b: f64, unit: bool) -> Result<Self> {
        let res = ms.lightlike_residual(tb)?;
        let s = ms.state(tb)?;
        if res.abs() * s.scale * s.scale > 1e-8 {
            return Err(Error::OutOfDomain(format!(
                "surface is not lightlike (residual {res:e}); MGS sides need a null surface"
            )));
        }
        Ok(Self {
            ms,
            metric: ms.frw_metric(),
            rbar_b: s.rbar,
            theta_b,
            phi_b,
            unit,
        })
    }

    /// FRW time at surface coordinate `y¹`, from `dy¹ = R dt`.
    pub fn time(&self, y1: f64) -> Result<f64> {
        let p = &self.ms.frw;
        let q = p.exponent();
        let v = p.rbar_speed();
        let base = self.rbar_b.powf(q + 1.0) + y1 * (q + 1.0) * v * p.rbar0.powf(q) / p.r0;
        if !(base > 0.0) {
            return Err(Error::ShockAtOrigin { t: f64::NAN });
        }
        Ok(p.t0 + (base.powf(1.0 / (q + 1.0)) - p.rbar0) / v)
    }

    fn angular_tangents(&self) -> [Vec4; 2] {
        [
            [0.0, 0.0, 1.0 / self.rbar_b, 0.0],
            [0.0, 0.0, 0.0, 1.0 / (self.rbar_b * self.theta_b.sin())],
        ]
    }

    fn angles(&self, y: &SurfaceCoords) -> (f64, f64) {
        (
            self.theta_b + y[1] / self.rbar_b,
            self.phi_b + y[2] / (self.rbar_b * self.theta_b.sin()),
        )
    }

    /// `⟨N, N⟩` of the FRW transverse vector at `y`.
    pub fn transverse_norm(&self, y: &SurfaceCoords) -> Result<f64> {
        if self.unit {
            return Ok(1.0);
        }
        let r = self.ms.frw.scale_jet(self.time(y[0])?)?[0];
        Ok(self.ms.eta * self.ms.eta * r * r)
    }
}

impl SurfaceSide for FrwSide {
    fn metric(&self) -> &dyn MetricSpec {
        &self.metric
    }

    fn position(&self, y: &SurfaceCoords) -> Result<Vec4> {
        let t = self.time(y[0])?;
        let s = self.ms.state(t)?;
        let (th, ph) = self.angles(y);
        Ok([t, s.r, th, ph])
    }

    fn tangents(&self, y: &SurfaceCoords) -> Result<[Vec4; 3]> {
        let s = self.ms.state(self.time(y[0])?)?;
        let [a2, a3] = self.angular_tangents();
        Ok([[1.0 / s.scale, s.r_dot / s.scale, 0.0, 0.0], a2, a3])
    }

    fn transverse(&self, y: &SurfaceCoords) -> Result<Vec4> {
        let eta = self.ms.eta;
        let mut n = [0.0, eta, 0.0, 0.0];
        if self.unit {
            let s = self.ms.state(self.time(y[0])?)?;
            let lambda = (1.0 - eta * eta * s.scale * s.scale) / (2.0 * eta);
            n[0] += lambda / s.scale;
            n[1] += lambda * s.r_dot / s.scale;
        }
        Ok(n)
    }
}

/// TOV side: same surface coordinates; `X̄₁` null, `N̄` radial with
/// `⟨N̄, X̄₁⟩ = η` and `⟨N̄, N̄⟩` equal to the FRW value.
#[derive(Debug, Clone)]
pub struct TovSide {
    frw: FrwSide,
    metric: TovMetric,
}

impl TovSide {
    /// `(X̄₁, Y)`: outgoing and ingoing radial null vectors with `dr̄/dy¹ = ±ṙ̄/R`.
    fn null_pair(&self, y: &SurfaceCoords) -> Result<(Vec4, Vec4)> {
        let ms = &self.frw.ms;
        let s = ms.state(self.frw.time(y[0])?)?;
        let v = s.rbar_dot;
        let tdot = v / (s.a * s.b).sqrt();
        Ok((
            [tdot / s.scale, v / s.scale, 0.0, 0.0],
            [tdot / s.scale, -v / s.scale, 0.0, 0.0],
        ))
    }
}

impl SurfaceSide for TovSide {
    fn metric(&self) -> &dyn MetricSpec {
        &self.metric
    }

    fn position(&self, y: &SurfaceCoords) -> Result<Vec4> {
        let t = self.frw.time(y[0])?;
        let s = self.frw.ms.state(t)?;
        let (th, ph) = self.frw.angles(y);
        Ok([s.tbar, s.rbar, th, ph])
    }

    fn tangents(&self, y: &SurfaceCoords) -> Result<[Vec4; 3]> {
        let (x1, _) = self.null_pair(y)?;
        let [a2, a3] = self.frw.angular_tangents();
        Ok([x1, a2, a3])
    }

    fn transverse(&self, y: &SurfaceCoords) -> Result<Vec4> {
        let (x1, ybar) = self.null_pair(y)?;
        let g = self.metric.value(&self.position(y)?)?;
        let m = dot(&g, &x1, &ybar);
        let eta = self.frw.ms.eta;
        let beta = eta / m;
        let alpha = self.frw.transverse_norm(y)? / (2.0 * eta);
        Ok(std::array::from_fn(|i| alpha * x1[i] + beta * ybar[i]))
    }
}

/// Every jump on `Σ` at one surface point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JumpReport {
    pub t: f64,
    pub k_jump: KJump,
    pub k_jump_norm: f64,
    /// `[G_{22,00}]`, `[G_{33,00}]` in MGS coordinates.
    pub c2_jumps: [f64; 2],
    /// Conservation bracket divided by `η²R²ρ̄`.
    pub conservation_residual: f64,
    /// `[T(N, N)]` from the stress tensors, divided by `η²R²ρ̄`.
    pub conservation_residual_tensorial: f64,
    /// `[G_{αβ}NᵅNᵝ]` divided by `8π𝒢η²R²ρ̄`.
    pub einstein_nn_jump: f64,
    pub lightlike_residual: f64,
    /// Transverse-vector conditions, see [`MatchedSolution::transverse_jumps`].
    pub transverse_jumps: [f64; 3],
    pub noncharacteristic_margin: f64,
    /// `N(c)` with `c = r̄²`.
    pub area_derivative: f64,
    pub notes: Vec<String>,
}

/// `G_{αβ}NᵅNᵝ` on one side at the chart base.
fn einstein_nn(chart: &MgsChart, side: Side) -> Result<f64> {
    let s = chart.sides().side(side);
    let n = s.transverse(&chart.base)?;
    let c = Curvature::at(s.metric(), &s.point(&chart.base)?)?;
    Ok(dot(&c.einstein, &n, &n))
}

pub fn full_jump_report(ms: &MatchedSolution, t: f64, chart: &MgsChart) -> Result<JumpReport> {
    let s = ms.state(t)?;
    // G₂₂ = c / r̄_b² in the chart's scaled angles
    let area_derivative = chart.left.d0[2][2] * s.rbar * s.rbar;
    if !(area_derivative.abs() >= 1e-10) {
        return Err(Error::AreaDerivativeZero {
            value: area_derivative,
        });
    }
    let scale = ms.conservation_scale(t)?;
    let k_jump = jump_second_form(chart);
    let kappa = 8.0 * PI * ms.frw.g_newton;
    let gnn = einstein_nn(chart, Side::Left)? - einstein_nn(chart, Side::Right)?;
    Ok(JumpReport {
        t,
        k_jump,
        k_jump_norm: k_jump.norm,
        c2_jumps: extra_c2_condition(chart),
        conservation_residual: ms.conservation_jump(t)? / scale,
        conservation_residual_tensorial: ms.conservation_jump_tensorial(t)? / scale,
        einstein_nn_jump: gnn / (kappa * scale),
        lightlike_residual: ms.lightlike_residual(t)?,
        transverse_jumps: ms.transverse_jumps(t)?,
        noncharacteristic_margin: ms.noncharacteristic_margin(t)?,
        area_derivative,
        notes: vec![
            "non-characteristic margin uses E/C = -R_dot r / A; the reciprocal C/E = -A/(R_dot r) is compared with rbar_dot".into(),
        ],
    })
}

/// Perfect fluid of either side at a surface point.
pub fn side_fluid(ms: &MatchedSolution, side: Side, x: &SpacetimePoint) -> Result<FluidState> {
    match side {
        Side::Left => ms.frw_metric().fluid(x),
        Side::Right => ms.tov_metric().fluid(x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fd;
    use crate::lightlike::eos_h;
    use crate::surface::ShiftedSide;
    use proptest::prelude::*;

    fn exact() -> MatchedSolution {
        MatchedSolution::lightlike(1.0, Anchors::default()).unwrap()
    }

    #[test]
    fn sigma_pairing_and_density_ratio() {
        let ms = exact();
        assert!((eos_h(ms.sigma).unwrap() - ms.sigma_bar).abs() < 1e-12);
        for t in [0.0, 0.7, 3.0] {
            let s = ms.state(t).unwrap();
            assert!((s.rho / s.rho_bar - 3.0).abs() < 1e-12);
            assert!(ms.shock_mass_residual(t).unwrap() < 1e-12);
        }
        assert!(matches!(
            match_solution(0.0, 1.0, Anchors::default()),
            Err(Error::BadSigma(_))
        ));
        assert!(matches!(
            match_solution(1.5, 1.0, Anchors::default()),
            Err(Error::BadSigma(_))
        ));
        assert!(match_solution(0.5, 0.0, Anchors::default()).is_err());
    }

    #[test]
    fn chart_partial_entries_match_closed_forms() {
        let ms = exact();
        let t = 0.4;
        let s = ms.state(t).unwrap();
        let q = 2.0 / (3.0 * (1.0 + ms.sigma));
        // Ṙr = q ṙ̄ on the surface
        let rr = q * ms.rbar_dot();
        let p2 = ms.chart_partials(t).unwrap();
        assert!((p2.jacobian[1][1] - 1.0 / (s.scale * s.a)).abs() < 1e-14);
        assert!((p2.jacobian[0][1] + rr / s.a).abs() < 1e-14);
        assert!(p2.round_trip < 1e-14);
    }

    #[test]
    fn transverse_components_in_both_charts() {
        let ms = match_solution(0.4, 2.0, Anchors::default()).unwrap();
        let t = 0.3;
        let s = ms.state(t).unwrap();
        let tr = ms.transverse_on_surface(t).unwrap();
        assert!((tr.frw_covariant[1] - 2.0 * s.scale * s.scale).abs() < 1e-13);
        assert!((tr.tov_covariant[1] - 2.0 * s.scale / s.a).abs() < 1e-13);
        let nn = 4.0 * s.scale * s.scale;
        assert!((tr.norm_frw - nn).abs() < 1e-13 && (tr.norm_tov - nn).abs() < 1e-12);
        assert!(ms.transverse_jumps(t).unwrap().iter().all(|v| *v < 1e-13));
        assert!(ms.metric_jump(t).unwrap() < 1e-13);
    }

    #[test]
    fn conservation_and_its_sensitivity() {
        let ms = exact();
        for t in [0.0, 1.0] {
            let scale = ms.conservation_scale(t).unwrap();
            assert!(ms.conservation_jump(t).unwrap().abs() < 1e-12 * scale);
            assert!(ms.conservation_jump_tensorial(t).unwrap().abs() < 1e-12 * scale);
            let off = ms.with_perturbed_sigma(0.01);
            assert!(
                off.conservation_jump(t).unwrap().abs() > 1e-3 * off.conservation_scale(t).unwrap()
            );
        }
    }

    #[test]
    fn invariant_transverse_equals_the_jacobian_image() {
        let ms = match_solution(exact().sigma_bar, 1.7, Anchors::default()).unwrap();
        let t = 0.9;
        let frw = FrwSide::new(ms, t, FRAC_PI_2, 0.0, false).unwrap();
        let tov = TovSide {
            frw: frw.clone(),
            metric: ms.tov_metric(),
        };
        let from_invariants = tov.transverse(&[0.0; 3]).unwrap();
        let from_jacobian = ms.transverse_on_surface(t).unwrap().tov_contravariant;
        for i in 0..4 {
            assert!((from_invariants[i] - from_jacobian[i]).abs() < 1e-12);
        }
        let x = ms.frw_point(t, FRAC_PI_2, 0.0).unwrap();
        let xb = tov.point(&[0.0; 3]).unwrap();
        assert!((x.coords[1] - frw.position(&[0.0; 3]).unwrap()[1]).abs() < 1e-15);
        assert!((xb.coords[0] - ms.state(t).unwrap().tbar).abs() < 1e-15);
    }

    #[test]
    fn lightlike_residual_sign() {
        assert!(exact().lightlike_residual(0.2).unwrap().abs() < 1e-12);
        let slow = match_solution(eos_h(0.3).unwrap(), 1.0, Anchors::default()).unwrap();
        assert!(slow.lightlike_residual(0.2).unwrap() < 0.0);
        assert!(FrwSide::new(slow, 0.2, FRAC_PI_2, 0.0, false).is_err());
    }

    #[test]
    fn tbar_keeps_the_surface_null() {
        let ms = exact();
        let t = 0.6;
        let s = ms.state(t).unwrap();
        let d = fd::central_derivative(|u| ms.tbar(u).unwrap(), t, 1e-4);
        assert!((d - s.rbar_dot / (s.a * s.b).sqrt()).abs() < 1e-9);
        assert!((-s.b * d * d + s.rbar_dot * s.rbar_dot / s.a).abs() < 1e-8);
    }

    #[test]
    fn area_component_of_the_second_form() {
        let ms = match_solution(ms_sigma_bar(), 1.5, Anchors::default()).unwrap();
        let t = 0.8;
        let s = ms.state(t).unwrap();
        let chart = ms
            .build_chart(t, false, DerivativeMethod::AnalyticJet)
            .unwrap();
        // N(r̄²) = 2 r̄ (N^t Ṙ r + N^r R) with N = (0, η)
        let n_c = 2.0 * s.rbar * 1.5 * s.scale;
        let k = crate::surface::generalized_second_form(&chart, Side::Left);
        assert!((k[1][1] + 0.5 * n_c / (s.rbar * s.rbar)).abs() < 1e-12);
    }

    fn ms_sigma_bar() -> f64 {
        exact().sigma_bar
    }

    #[test]
    fn identical_sides_give_zero_jumps() {
        let ms = exact();
        let frw = Arc::new(FrwSide::new(ms, 0.5, FRAC_PI_2, 0.0, false).unwrap());
        let tm = TwoSidedMetric::new(frw.clone(), frw, 1.0);
        let chart = MgsChart::build(&tm, [0.0; 3], None, DerivativeMethod::AnalyticJet).unwrap();
        assert_eq!(jump_second_form(&chart).norm, 0.0);
        assert_eq!(extra_c2_condition(&chart), [0.0, 0.0]);
    }

    #[test]
    fn exact_solution_chart_shape() {
        let chart = exact()
            .build_chart(0.5, false, DerivativeMethod::AnalyticJet)
            .unwrap();
        assert!(chart.satisfies_form());
        assert!(chart.form_residual < 1e-12);
        let tm = chart.sides();
        assert!(tm.metric_jump_on_surface(&[0.0; 3]).unwrap() < 1e-12);
    }

    #[test]
    fn stencils_agree_with_jets_on_the_matched_solution() {
        let ms = exact();
        let a = ms
            .build_chart(0.5, false, DerivativeMethod::AnalyticJet)
            .unwrap();
        let s = ms
            .build_chart(
                0.5,
                false,
                DerivativeMethod::Stencil {
                    h: 0.1 * a.patch_size,
                },
            )
            .unwrap();
        let (ka, ks) = (jump_second_form(&a), jump_second_form(&s));
        for i in 0..3 {
            for j in 0..3 {
                assert!((ka.components[i][j] - ks.components[i][j]).abs() < 1e-8);
            }
        }
        let (ca, cs) = (extra_c2_condition(&a), extra_c2_condition(&s));
        assert!((ca[0] - cs[0]).abs() < 1e-6);
    }

    #[test]
    fn round_trip_on_both_sides() {
        let chart = exact()
            .build_chart(0.5, false, DerivativeMethod::AnalyticJet)
            .unwrap();
        let p = chart.patch_size;
        for w in [
            [0.3 * p, 0.2 * p, -0.1 * p, 0.05 * p],
            [-0.4 * p, -0.1 * p, 0.3 * p, 0.0],
        ] {
            let (side, x) = chart.from_mgs(&w).unwrap();
            let back = chart.to_mgs(&x, side).unwrap();
            assert!((0..4).all(|i| (back[i] - w[i]).abs() < 1e-8));
        }
    }

    /// On the exact solution the jumps that survive are the inaffinity of
    /// the static-side generator, `κ = (ṙ̄/(R r̄))(2σ̄/(1+σ̄) − 2/(3(1+σ)))`,
    /// and the second transverse derivative of the area.
    #[test]
    fn surviving_jumps_match_closed_forms() {
        for eta in [1.0, 0.6] {
            let ms = MatchedSolution::lightlike(eta, Anchors::default()).unwrap();
            let (sg, sb) = (ms.sigma, ms.sigma_bar);
            for t in [0.0, 0.5, 2.0] {
                let s = ms.state(t).unwrap();
                let chart = ms
                    .build_chart(t, false, DerivativeMethod::AnalyticJet)
                    .unwrap();
                let k = jump_second_form(&chart);
                let kappa = s.rbar_dot / (s.scale * s.rbar)
                    * (2.0 * sb / (1.0 + sb) - 2.0 / (3.0 * (1.0 + sg)));
                assert!(
                    (k.components[0][0] + eta * kappa).abs() < 1e-10,
                    "{} vs {}",
                    k.components[0][0],
                    -eta * kappa
                );
                assert!(k.components[1][1].abs() < 1e-12 && k.components[2][2].abs() < 1e-12);
                let e2r2 = eta * eta * s.scale * s.scale;
                let frw = 2.0 * e2r2 * s.a;
                let tov = e2r2 * (2.0 - (1.0 - s.a) * 4.0 * sb / (1.0 + sb));
                let c2 = extra_c2_condition(&chart);
                let expected = (frw - tov) / (s.rbar * s.rbar);
                assert!((c2[0] - expected).abs() < 1e-10 && (c2[1] - expected).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn perturbed_gamma_is_detected() {
        let ms = exact().with_perturbed_gamma(0.01);
        let chart = ms
            .build_chart(0.0, false, DerivativeMethod::AnalyticJet)
            .unwrap();
        let r = full_jump_report(&ms, 0.0, &chart).unwrap();
        assert!(r.k_jump.components[1][1].abs() > 1e-3);
        assert!(r.conservation_residual.abs() > 1e-3);
        assert!(r.einstein_nn_jump.abs() > 1e-3);
    }

    #[test]
    fn flat_area_triggers_the_guard() {
        use crate::surface::GeneralSide;
        use crate::tensor::Minkowski;
        let side = || -> Arc<dyn SurfaceSide> {
            Arc::new(GeneralSide::new(
                Arc::new(Minkowski::cartesian()),
                |y: &SurfaceCoords| Ok([y[0], y[0], y[1], y[2]]),
                |_: &SurfaceCoords| Ok([0.0, 1.0, 0.0, 0.0]),
            ))
        };
        let tm = TwoSidedMetric::new(side(), side(), 1.0);
        let chart =
            MgsChart::build(&tm, [0.0; 3], Some(0.1), DerivativeMethod::AnalyticJet).unwrap();
        assert!(matches!(
            full_jump_report(&exact(), 0.0, &chart),
            Err(Error::AreaDerivativeZero { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10))]
        #[test]
        fn k_jump_is_gauge_invariant(c in prop::array::uniform3(-0.5f64..0.5), d in prop::array::uniform3(-0.5f64..0.5)) {
            let ms = exact();
            let base = ms.two_sided(0.5, false).unwrap();
            let shift = move |y: &SurfaceCoords| -> [f64; 3] { std::array::from_fn(|a| c[a] + d[a] * y[0]) };
            let shifted = TwoSidedMetric::new(
                Arc::new(ShiftedSide::new(base.left.clone(), shift)),
                Arc::new(ShiftedSide::new(base.right.clone(), shift)),
                1.0,
            );
            let k0 = jump_second_form(&MgsChart::build(&base, [0.0; 3], Some(1e-3), DerivativeMethod::AnalyticJet).unwrap());
            let k1 = jump_second_form(&MgsChart::build(&shifted, [0.0; 3], Some(1e-3), DerivativeMethod::AnalyticJet).unwrap());
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert!((k0.components[i][j] - k1.components[i][j]).abs() < 1e-8,
                        "{i}{j}: {} vs {}", k0.components[i][j], k1.components[i][j]);
                }
            }
        }
    }
}
