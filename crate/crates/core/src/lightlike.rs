//! The lightlike shock: `s(σ) = 1`, its kinematics and characteristic speeds.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matching::MatchedSolution;

/// Quoted value of the lightlike root.
pub const QUOTED_SIGMA2: f64 = 0.63442;
/// Quoted `√σ₂`.
pub const QUOTED_SQRT_SIGMA2: f64 = 0.79650;
/// Quoted `λ⁺_TOV(σ₂)`.
pub const QUOTED_LAMBDA_TOV_PLUS: f64 = -0.45040;
/// Limit of the Smoller–Temple subluminal family.
pub const SMOLLER_TEMPLE_SIGMA2: f64 = 0.745;

fn check_sigma(s: f64) -> Result<()> {
    if (0.0..=1.0).contains(&s) {
        Ok(())
    } else {
        Err(Error::BadSigma(s))
    }
}

/// `σ̄ = H(σ) = ½√(9σ² − 18σ + 25) + 3σ/2 − 5/2`.
pub fn eos_h(sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    Ok(0.5 * (9.0 * sigma * sigma - 18.0 * sigma + 25.0).sqrt() + 1.5 * sigma - 2.5)
}

/// Inverse of [`eos_h`]: `σ = σ̄(σ̄ + 5) / (3(σ̄ + 1))`.
pub fn sigma_from_sigma_bar(sigma_bar: f64) -> Result<f64> {
    check_sigma(sigma_bar)?;
    Ok(sigma_bar * (sigma_bar + 5.0) / (3.0 * (sigma_bar + 1.0)))
}

/// `√(σ̄ / (1 + 6σ̄ + σ̄²))`, common factor of all shock speeds.
pub fn speed_factor(sigma_bar: f64) -> f64 {
    (sigma_bar / (1.0 + 6.0 * sigma_bar + sigma_bar * sigma_bar)).sqrt()
}

/// Shock speed relative to the FRW fluid, `s = (1 + 3σ)√(σ̄/(1 + 6σ̄ + σ̄²))`.
pub fn shock_speed(sigma: f64) -> Result<f64> {
    Ok((1.0 + 3.0 * sigma) * speed_factor(eos_h(sigma)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LightlikeRoot {
    pub sigma: f64,
    pub sigma_bar: f64,
    /// `s(σ₂) − 1`.
    pub residual: f64,
    pub bisection_steps: u32,
    pub secant_steps: u32,
}

/// Unique root of `s(σ) = 1` on `[1e-6, 1 − 1e-6]`: bisection to width
/// `1e-10`, then secant polish until `|s − 1| < 1e-12`.
pub fn solve_lightlike() -> Result<LightlikeRoot> {
    let f = |s: f64| shock_speed(s).map(|v| v - 1.0);
    let (mut a, mut b) = (1e-6, 1.0 - 1e-6);
    let (mut fa, fb) = (f(a)?, f(b)?);
    if fa.signum() == fb.signum() {
        return Err(Error::NoRoot);
    }
    let mut bisection_steps = 0;
    while b - a > 1e-10 {
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        bisection_steps += 1;
    }

    let (mut x0, mut x1) = (a, b);
    let (mut f0, mut f1) = (fa, f(b)?);
    let mut secant_steps = 0;
    while f1.abs() >= 1e-12 && secant_steps < 8 && f1 != f0 {
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f(x1)?;
        secant_steps += 1;
    }
    if f0.abs() < f1.abs() {
        x1 = x0;
        f1 = f0;
    }
    Ok(LightlikeRoot {
        sigma: x1,
        sigma_bar: eos_h(x1)?,
        residual: f1,
        bisection_steps,
        secant_steps,
    })
}

/// Speeds of the shock and of the sound characteristics on each side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShockKinematics {
    pub sigma: f64,
    pub sigma_bar: f64,
    /// Speed in the local Minkowski frame of the FRW fluid.
    pub s: f64,
    /// `dr̄/dt`, independent of `t`.
    pub rbar_dot: f64,
    pub lambda_frw_plus: f64,
    pub lambda_frw_minus: f64,
    /// `λ⁺_TOV` evaluated from the closed formula.
    pub lambda_tov_plus: f64,
    /// The figure value quoted for `λ⁺_TOV(σ₂)`, for side-by-side reporting.
    pub lambda_tov_plus_quoted: f64,
}

impl ShockKinematics {
    /// Comoving speed `ṙ = s/R`.
    pub fn r_dot(&self, scale_factor: f64) -> f64 {
        self.s / scale_factor
    }
}

/// `λ⁺_TOV = −(2 − √Q)/(√Q − 2σ̄) · √σ̄`, `Q = σ̄² + 6σ̄ + 1`.
pub fn lambda_tov_plus(sigma_bar: f64) -> f64 {
    let q = (sigma_bar * sigma_bar + 6.0 * sigma_bar + 1.0).sqrt();
    -(2.0 - q) / (q - 2.0 * sigma_bar) * sigma_bar.sqrt()
}

pub fn characteristics(sigma: f64) -> Result<ShockKinematics> {
    if !(sigma > 0.0 && sigma <= 1.0) {
        return Err(Error::BadSigma(sigma));
    }
    let sigma_bar = eos_h(sigma)?;
    let root = sigma.sqrt();
    Ok(ShockKinematics {
        sigma,
        sigma_bar,
        s: shock_speed(sigma)?,
        rbar_dot: 3.0 * (1.0 + sigma) * speed_factor(sigma_bar),
        lambda_frw_plus: root,
        lambda_frw_minus: -root,
        lambda_tov_plus: lambda_tov_plus(sigma_bar),
        lambda_tov_plus_quoted: QUOTED_LAMBDA_TOV_PLUS,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LaxClass {
    LaxSatisfied,
    CrossingShock,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaxReport {
    pub classification: LaxClass,
    pub s: f64,
    pub lambda_frw_plus: f64,
    pub lambda_frw_minus: f64,
    pub lambda_tov_plus: f64,
    /// `λ⁻_FRW < λ⁺_FRW < s`.
    pub frw_characteristics_cross: bool,
    /// `λ⁺_TOV < s`.
    pub tov_characteristics_cross: bool,
}

/// Lax condition `λ⁺_TOV < s < λ⁺_FRW`; otherwise a crossing shock.
pub fn lax_classify(sigma: f64) -> Result<LaxReport> {
    let k = characteristics(sigma)?;
    let lax = k.lambda_tov_plus < k.s && k.s < k.lambda_frw_plus;
    Ok(LaxReport {
        classification: if lax {
            LaxClass::LaxSatisfied
        } else {
            LaxClass::CrossingShock
        },
        s: k.s,
        lambda_frw_plus: k.lambda_frw_plus,
        lambda_frw_minus: k.lambda_frw_minus,
        lambda_tov_plus: k.lambda_tov_plus,
        frw_characteristics_cross: k.lambda_frw_minus < k.lambda_frw_plus
            && k.lambda_frw_plus < k.s,
        tov_characteristics_cross: k.lambda_tov_plus < k.s,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubluminalComparison {
    pub sigma2_here: f64,
    pub sigma2_quoted: f64,
    pub sigma2_smoller_temple: f64,
    pub difference: f64,
    pub distinct: bool,
}

pub fn subluminal_comparison() -> Result<SubluminalComparison> {
    let here = solve_lightlike()?.sigma;
    let difference = SMOLLER_TEMPLE_SIGMA2 - here;
    Ok(SubluminalComparison {
        sigma2_here: here,
        sigma2_quoted: QUOTED_SIGMA2,
        sigma2_smoller_temple: SMOLLER_TEMPLE_SIGMA2,
        difference,
        distinct: difference.abs() > 1e-3,
    })
}

/// Which sign of `dr̄/dt` a shock position refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Outgoing,
    Incoming,
}

/// `r̄(t)` on the requested branch; only the outgoing one is supported.
pub fn shock_radius(ms: &MatchedSolution, t: f64, branch: Branch) -> Result<f64> {
    match branch {
        Branch::Outgoing => ms.frw.rbar(t),
        Branch::Incoming => Err(Error::BranchError(
            "only the outgoing (+) branch of the shock position is exposed".into(),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryRow {
    pub t: f64,
    pub rbar: f64,
    pub r: f64,
    pub rho: f64,
    #[serde(rename = "R")]
    pub scale_factor: f64,
    pub rbar_dot: f64,
    pub r_dot: f64,
}

/// `steps` equally spaced samples of the shock on `[t_min, t_max]`.
pub fn trajectory(
    ms: &MatchedSolution,
    t_range: (f64, f64),
    steps: usize,
) -> Result<Vec<TrajectoryRow>> {
    if ms.frw.sign != 1.0 {
        return Err(Error::BranchError(
            "only the outgoing (+) branch of the shock position is exposed".into(),
        ));
    }
    if steps == 0 || !(t_range.0.is_finite() && t_range.1.is_finite()) {
        return Err(Error::InvalidConfig(
            "trajectory needs a finite range and steps >= 1".into(),
        ));
    }
    let speed = ms.rbar_dot();
    (0..steps)
        .map(|i| {
            let t = if steps == 1 {
                t_range.0
            } else {
                t_range.0 + (t_range.1 - t_range.0) * i as f64 / (steps - 1) as f64
            };
            let rbar = shock_radius(ms, t, Branch::Outgoing)?;
            let [big_r, big_rd, _] = ms.frw.scale_jet(t)?;
            Ok(TrajectoryRow {
                t,
                rbar,
                r: rbar / big_r,
                rho: crate::solutions::frw_density(&ms.frw, t)?,
                scale_factor: big_r,
                rbar_dot: speed,
                r_dot: speed / big_r - rbar * big_rd / (big_r * big_r),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_endpoints_are_exact() {
        assert_eq!(eos_h(0.0).unwrap(), 0.0);
        assert_eq!(eos_h(1.0).unwrap(), 1.0);
        assert!(matches!(eos_h(1.2), Err(Error::BadSigma(_))));
    }

    #[test]
    fn speed_vanishes_at_dust() {
        assert_eq!(shock_speed(0.0).unwrap(), 0.0);
    }

    #[test]
    fn lambda_frw_is_symmetric() {
        let k = characteristics(0.4).unwrap();
        assert_eq!(k.lambda_frw_minus, -k.lambda_frw_plus);
    }

    #[test]
    fn tov_characteristic_is_luminal_at_stiff_limit() {
        assert!((lambda_tov_plus(1.0) - 1.0).abs() < 1e-15);
    }
}
