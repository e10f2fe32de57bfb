//! Spatially flat FRW cosmology with `p = σρ`.
//!
//! With `ρ = 3γ/r̄²` along the matching surface the Friedmann system has the
//! closed form
//! `r̄(t) = ±√(18π𝒢γ)(1+σ)(t−t₀) + r̄₀`, `R = R₀ (r̄/r̄₀)^q`, `q = 2/(3(1+σ))`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::tensor::metrics::{spherical_diagonal_jet, RadialJet};
use crate::tensor::{
    comoving_velocity, Chart, FluidState, MetricFamily, MetricJet, MetricSpec, SpacetimePoint, Vec4,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrwParameters {
    /// Equation of state `p = σρ`.
    pub sigma: f64,
    /// Spatial curvature; only `0` has a closed-form solution.
    pub k: f64,
    /// Density constant in `ρ = 3γ/r̄²`.
    pub gamma: f64,
    pub r0: f64,
    pub t0: f64,
    pub rbar0: f64,
    /// `+1` expanding, `-1` collapsing.
    pub sign: f64,
    pub g_newton: f64,
}

impl FrwParameters {
    pub fn new(sigma: f64, gamma: f64) -> Self {
        Self {
            sigma,
            k: 0.0,
            gamma,
            r0: 1.0,
            t0: 0.0,
            rbar0: 1.0,
            sign: 1.0,
            g_newton: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.sigma) {
            return Err(Error::BadSigma(self.sigma));
        }
        let positive = |v: f64, name: &str| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!(
                    "{name} must be positive, got {v}"
                )))
            }
        };
        positive(self.r0, "R0")?;
        positive(self.rbar0, "rbar0")?;
        positive(self.g_newton, "G")?;
        if !(self.gamma >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "gamma must be non-negative, got {}",
                self.gamma
            )));
        }
        if self.sign != 1.0 && self.sign != -1.0 {
            return Err(Error::InvalidConfig(format!(
                "sign must be +1 or -1, got {}",
                self.sign
            )));
        }
        if !self.t0.is_finite() || !self.k.is_finite() {
            return Err(Error::InvalidConfig("t0 and k must be finite".into()));
        }
        Ok(())
    }

    /// Exponent `q = 2/(3(1+σ))` of `R ∝ r̄^q`.
    pub fn exponent(&self) -> f64 {
        2.0 / (3.0 * (1.0 + self.sigma))
    }

    /// `dr̄/dt = ±√(18π𝒢γ)(1+σ)`.
    pub fn rbar_speed(&self) -> f64 {
        self.sign * (18.0 * PI * self.g_newton * self.gamma).sqrt() * (1.0 + self.sigma)
    }

    pub fn rbar(&self, t: f64) -> Result<f64> {
        let r = self.rbar_speed() * (t - self.t0) + self.rbar0;
        if !(r > 0.0) {
            return Err(Error::ShockAtOrigin { t });
        }
        Ok(r)
    }

    /// `(R, Ṙ, R̈)` at `t`.
    pub fn scale_jet(&self, t: f64) -> Result<[f64; 3]> {
        let rb = self.rbar(t)?;
        let v = self.rbar_speed();
        let q = self.exponent();
        let r = self.r0 * (rb / self.rbar0).powf(q);
        Ok([r, q * v * r / rb, q * (q - 1.0) * v * v * r / (rb * rb)])
    }

    /// `ρ̇ = -2ρ ṙ̄/r̄`.
    pub fn density_rate(&self, t: f64) -> Result<f64> {
        Ok(-2.0 * frw_density(self, t)? * self.rbar_speed() / self.rbar(t)?)
    }

    /// `p + ρ + Rρ̇/(3Ṙ)` scaled by `3Ṙ` and normalised by `3|Ṙ|ρ`.
    pub fn ode1_residual(&self, t: f64) -> Result<f64> {
        let [r, rd, _] = self.scale_jet(t)?;
        let rho = frw_density(self, t)?;
        let lhs = 3.0 * rd * (self.sigma * rho + rho) + r * self.density_rate(t)?;
        Ok(relative(lhs, 3.0 * rd.abs() * rho))
    }

    /// `Ṙ² + k - (8π𝒢/3)ρR²`, relative.
    pub fn ode2_residual(&self, t: f64) -> Result<f64> {
        let [r, rd, _] = self.scale_jet(t)?;
        let rhs = 8.0 * PI * self.g_newton / 3.0 * frw_density(self, t)? * r * r;
        Ok(relative(rd * rd + self.k - rhs, rhs))
    }

    /// `dR/R + dρ/(3(ρ+p))` per unit `t`, relative to `|Ṙ/R|`.
    pub fn drr_residual(&self, t: f64) -> Result<f64> {
        let [r, rd, _] = self.scale_jet(t)?;
        let rho = frw_density(self, t)?;
        let lhs = rd / r + self.density_rate(t)? / (3.0 * (1.0 + self.sigma) * rho);
        Ok(relative(lhs, (rd / r).abs()))
    }
}

pub(crate) fn relative(value: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        value.abs() / scale
    } else {
        value.abs()
    }
}

/// `ρ(t) = 3γ/r̄(t)²`.
pub fn frw_density(p: &FrwParameters, t: f64) -> Result<f64> {
    let rb = p.rbar(t)?;
    Ok(3.0 * p.gamma / (rb * rb))
}

/// `R(t) = R₀ (r̄(t)/r̄₀)^{2/(3(1+σ))}`.
pub fn frw_scale(p: &FrwParameters, t: f64) -> Result<f64> {
    Ok(p.scale_jet(t)?[0])
}

/// Inverse of [`frw_density`] on the branch selected by `sign`.
pub fn frw_time_of_density(p: &FrwParameters, rho: f64) -> Result<f64> {
    let v = p.rbar_speed();
    if !(rho > 0.0) || !rho.is_finite() || v == 0.0 {
        return Err(Error::BranchError(format!(
            "density {rho} is not attained on this branch"
        )));
    }
    let rb = (3.0 * p.gamma / rho).sqrt();
    Ok(p.t0 + (rb - p.rbar0) / v)
}

/// How the scale factor is supplied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScaleFactor {
    /// Closed-form solution from the parameters.
    Solution,
    /// `R ≡ const`.
    Constant(f64),
}

/// `ds² = -dt² + R²(t)/(1-kr²) dr² + R²(t) r² dΩ²` in comoving coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrwMetric {
    pub params: FrwParameters,
    pub scale: ScaleFactor,
}

pub fn frw_metric(p: FrwParameters) -> Result<FrwMetric> {
    p.validate()?;
    Ok(FrwMetric {
        params: p,
        scale: ScaleFactor::Solution,
    })
}

impl FrwMetric {
    pub fn with_constant_scale(r: f64, k: f64) -> Self {
        let mut params = FrwParameters::new(0.0, 0.0);
        params.k = k;
        Self {
            params,
            scale: ScaleFactor::Constant(r),
        }
    }

    pub fn scale_jet(&self, t: f64) -> Result<[f64; 3]> {
        match self.scale {
            ScaleFactor::Solution => self.params.scale_jet(t),
            ScaleFactor::Constant(r) => Ok([r, 0.0, 0.0]),
        }
    }

    /// Comoving perfect fluid of the solution at `x`.
    pub fn fluid(&self, x: &SpacetimePoint) -> Result<FluidState> {
        let rho = match self.scale {
            ScaleFactor::Solution => frw_density(&self.params, x.coords[0])?,
            ScaleFactor::Constant(_) => 0.0,
        };
        Ok(FluidState {
            rho,
            p: self.params.sigma * rho,
            u: comoving_velocity(self, x)?,
        })
    }
}

impl MetricSpec for FrwMetric {
    fn family(&self) -> MetricFamily {
        MetricFamily::Frw
    }

    fn chart(&self) -> Chart {
        Chart::Comoving
    }

    fn jet(&self, x: &Vec4) -> Result<MetricJet> {
        let (t, r) = (x[0], x[1]);
        let k = self.params.k;
        let w = 1.0 - k * r * r;
        if !(w > 0.0) {
            return Err(Error::OutOfDomain(format!("1 - k r^2 = {w} at r = {r}")));
        }
        let [rr, rd, rdd] = self.scale_jet(t)?;
        let r2 = RadialJet {
            v: rr * rr,
            t: 2.0 * rr * rd,
            tt: 2.0 * (rd * rd + rr * rdd),
            ..Default::default()
        };
        let curv = RadialJet {
            v: 1.0 / w,
            r: 2.0 * k * r / (w * w),
            rr: 2.0 * k / (w * w) + 8.0 * k * k * r * r / (w * w * w),
            ..Default::default()
        };
        let area = RadialJet {
            v: r * r,
            r: 2.0 * r,
            rr: 2.0,
            ..Default::default()
        };
        Ok(spherical_diagonal_jet(
            RadialJet::constant(1.0),
            r2.product(curv),
            r2.product(area),
            x[2],
        ))
    }
}
