//! Static singular isothermal sphere: `p̄ = σ̄ρ̄`, `ρ̄ = γ/r̄²`.

use std::f64::consts::PI;

use super::frw::relative;
use crate::error::{Error, Result};
use crate::tensor::metrics::{spherical_diagonal_jet, RadialJet};
use crate::tensor::{
    comoving_velocity, Chart, FluidState, MetricFamily, MetricJet, MetricSpec, SpacetimePoint, Vec4,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TovParameters {
    pub sigma_bar: f64,
    pub gamma: f64,
    /// `A = 1 - 8π𝒢γ`, constant in `r̄`.
    pub a: f64,
    pub b0: f64,
    pub rbar0: f64,
    pub g_newton: f64,
}

/// `γ = σ̄ / (2π𝒢(1 + 6σ̄ + σ̄²))`.
pub fn tov_gamma(sigma_bar: f64, g_newton: f64) -> f64 {
    sigma_bar / (2.0 * PI * g_newton * (1.0 + 6.0 * sigma_bar + sigma_bar * sigma_bar))
}

pub fn tov_solve(sigma_bar: f64, b0: f64, rbar0: f64, g_newton: f64) -> Result<TovParameters> {
    if !(0.0..=1.0).contains(&sigma_bar) {
        return Err(Error::BadSigma(sigma_bar));
    }
    for (v, name) in [(b0, "B0"), (rbar0, "rbar0"), (g_newton, "G")] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "{name} must be positive, got {v}"
            )));
        }
    }
    let gamma = tov_gamma(sigma_bar, g_newton);
    Ok(TovParameters {
        sigma_bar,
        gamma,
        a: 1.0 - 8.0 * PI * g_newton * gamma,
        b0,
        rbar0,
        g_newton,
    })
}

impl TovParameters {
    /// Same star with `γ` replaced (and `A` recomputed); breaks the
    /// equilibrium relation unless `gamma` is the solved value.
    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self.a = 1.0 - 8.0 * PI * self.g_newton * gamma;
        self
    }

    /// `B ∝ r̄^β`, `β = 4σ̄/(1+σ̄)`.
    pub fn b_exponent(&self) -> f64 {
        4.0 * self.sigma_bar / (1.0 + self.sigma_bar)
    }

    /// `(B, B', B'')`.
    pub fn b_jet(&self, rbar: f64) -> Result<[f64; 3]> {
        check_radius(rbar)?;
        let be = self.b_exponent();
        let b = self.b0 * (rbar / self.rbar0).powf(be);
        Ok([b, be * b / rbar, be * (be - 1.0) * b / (rbar * rbar)])
    }

    pub fn mass(&self, rbar: f64) -> f64 {
        4.0 * PI * self.gamma * rbar
    }

    pub fn rho_bar(&self, rbar: f64) -> f64 {
        self.gamma / (rbar * rbar)
    }

    pub fn p_bar(&self, rbar: f64) -> f64 {
        self.sigma_bar * self.rho_bar(rbar)
    }

    /// `A - (1 - 2𝒢M/r̄)`.
    pub fn a_residual(&self, rbar: f64) -> f64 {
        (self.a - (1.0 - 2.0 * self.g_newton * self.mass(rbar) / rbar)).abs()
    }

    /// `dM/dr̄ - 4πr̄²ρ̄` with the closed-form derivative `4πγ`.
    pub fn dmdr_residual(&self, rbar: f64) -> f64 {
        (4.0 * PI * self.gamma - 4.0 * PI * rbar * rbar * self.rho_bar(rbar)).abs()
    }

    /// Oppenheimer–Volkoff equilibrium, relative.
    pub fn ove_residual(&self, rbar: f64) -> Result<f64> {
        check_radius(rbar)?;
        let dp = -2.0 * self.sigma_bar * self.gamma / rbar.powi(3);
        let lhs = -rbar * rbar * dp;
        let (m, rho, p) = (self.mass(rbar), self.rho_bar(rbar), self.p_bar(rbar));
        if m == 0.0 {
            return Ok(lhs.abs());
        }
        let a = 1.0 - 2.0 * self.g_newton * m / rbar;
        let rhs =
            self.g_newton * m * rho * (1.0 + p / rho) * (1.0 + 4.0 * PI * rbar.powi(3) * p / m) / a;
        Ok(relative(lhs - rhs, lhs.abs().max(rhs.abs())))
    }

    /// `B'/B + 2p̄'/(p̄ + ρ̄)`, relative to `|B'/B|`.
    pub fn dbb_residual(&self, rbar: f64) -> Result<f64> {
        let [b, db, _] = self.b_jet(rbar)?;
        let dp = -2.0 * self.sigma_bar * self.gamma / rbar.powi(3);
        let lhs = db / b + 2.0 * dp / (self.p_bar(rbar) + self.rho_bar(rbar));
        Ok(relative(lhs, (db / b).abs()))
    }
}

fn check_radius(rbar: f64) -> Result<()> {
    if rbar > 0.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!(
            "rbar = {rbar} must be positive"
        )))
    }
}

/// `ds̄² = -B(r̄)dt̄² + A⁻¹dr̄² + r̄²dΩ²` in static coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TovMetric {
    pub params: TovParameters,
}

pub fn tov_metric(p: TovParameters) -> Result<TovMetric> {
    if p.a == 0.0 || !p.a.is_finite() {
        return Err(Error::InvalidConfig(format!("A = {} must be nonzero", p.a)));
    }
    Ok(TovMetric { params: p })
}

impl TovMetric {
    pub fn fluid(&self, x: &SpacetimePoint) -> Result<FluidState> {
        let rho = self.params.rho_bar(x.coords[1]);
        Ok(FluidState {
            rho,
            p: self.params.sigma_bar * rho,
            u: comoving_velocity(self, x)?,
        })
    }
}

impl MetricSpec for TovMetric {
    fn family(&self) -> MetricFamily {
        MetricFamily::Tov
    }

    fn chart(&self) -> Chart {
        Chart::Static
    }

    fn jet(&self, x: &Vec4) -> Result<MetricJet> {
        let rbar = x[1];
        let [b, db, ddb] = self.params.b_jet(rbar)?;
        Ok(spherical_diagonal_jet(
            RadialJet {
                v: b,
                r: db,
                rr: ddb,
                ..Default::default()
            },
            RadialJet::constant(1.0 / self.params.a),
            RadialJet {
                v: rbar * rbar,
                r: 2.0 * rbar,
                rr: 2.0,
                ..Default::default()
            },
            x[2],
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_limit() {
        let p = tov_solve(0.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!((p.gamma, p.a), (0.0, 1.0));
        assert_eq!(p.b_jet(3.7).unwrap(), [1.0, 0.0, 0.0]);
    }

    #[test]
    fn stiff_unit_case() {
        let p = tov_solve(1.0, 1.0, 1.0, 1.0).unwrap();
        assert!((p.gamma - 1.0 / (16.0 * PI)).abs() < 1e-15);
        assert!((p.a - 0.5).abs() < 1e-15);
    }

    #[test]
    fn a_closed_form_identity() {
        for i in 0..=100 {
            let s = i as f64 / 100.0;
            let p = tov_solve(s, 1.0, 1.0, 1.0).unwrap();
            let want = (1.0 + s) * (1.0 + s) / (1.0 + 6.0 * s + s * s);
            assert!((p.a - want).abs() < 1e-12);
        }
    }

    #[test]
    fn origin_is_outside_the_domain() {
        let m = tov_metric(tov_solve(0.5, 1.0, 1.0, 1.0).unwrap()).unwrap();
        assert!(matches!(
            m.jet(&[0.0, 0.0, 1.0, 0.0]),
            Err(Error::OutOfDomain(_))
        ));
        assert_eq!(
            m.jet(&[0.0, 2.0, 1.0, 0.0]).unwrap().g[1][1],
            1.0 / m.params.a
        );
        assert!(matches!(
            tov_solve(1.5, 1.0, 1.0, 1.0),
            Err(Error::BadSigma(_))
        ));
    }
}
