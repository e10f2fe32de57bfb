//! Run configuration: a flat JSON object; command-line flags override it.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::Anchors;

pub const TOL_SCALE_ENV: &str = "NULLSHOCK_TOL_SCALE";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(rename = "G")]
    pub g_newton: f64,
    pub eta: f64,
    /// FRW equation of state; when set, `σ̄ = H(σ)`.
    pub sigma: Option<f64>,
    pub sigma_bar: Option<f64>,
    /// Use the lightlike solution; wins over `sigma` and `sigma_bar`.
    pub lightlike: bool,
    pub perturb_gamma: f64,
    pub t0: f64,
    pub rbar0: f64,
    #[serde(rename = "R0")]
    pub r0: f64,
    #[serde(rename = "B0")]
    pub b0: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub steps: usize,
    /// Multiplies every tolerance, on top of the environment factor.
    pub tol_scale: f64,
    pub out: Option<PathBuf>,
    pub json: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            g_newton: 1.0,
            eta: 1.0,
            sigma: None,
            sigma_bar: None,
            lightlike: false,
            perturb_gamma: 0.0,
            t0: 0.0,
            rbar0: 1.0,
            r0: 1.0,
            b0: 1.0,
            t_min: 0.0,
            t_max: 1.0,
            steps: 100,
            tol_scale: 1.0,
            out: None,
            json: false,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        let positive = [
            ("G", self.g_newton),
            ("rbar0", self.rbar0),
            ("R0", self.r0),
            ("B0", self.b0),
            ("tol_scale", self.tol_scale),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} must be positive and finite, got {v}"));
            }
        }
        if self.eta == 0.0 || !self.eta.is_finite() {
            return bad(format!("eta must be a nonzero real, got {}", self.eta));
        }
        if let Some(s) = self.sigma {
            if !(0.0..=1.0).contains(&s) {
                return Err(Error::BadSigma(s));
            }
        }
        if let Some(s) = self.sigma_bar {
            if !(0.0..=1.0).contains(&s) {
                return Err(Error::BadSigma(s));
            }
        }
        if !(self.t_min.is_finite() && self.t_max.is_finite() && self.t_min <= self.t_max) {
            return bad(format!(
                "grid range [{}, {}] is invalid",
                self.t_min, self.t_max
            ));
        }
        if self.steps == 0 {
            return bad("grid steps must be at least 1".into());
        }
        if !self.perturb_gamma.is_finite() || self.perturb_gamma <= -1.0 {
            return bad(format!(
                "perturb_gamma must exceed -1, got {}",
                self.perturb_gamma
            ));
        }
        Ok(())
    }

    pub fn anchors(&self) -> Anchors {
        Anchors {
            t0: self.t0,
            rbar0: self.rbar0,
            r0: self.r0,
            b0: self.b0,
            g_newton: self.g_newton,
        }
    }

    /// Product of the configured scale and `NULLSHOCK_TOL_SCALE`.
    pub fn tolerance_scale(&self) -> Result<f64> {
        Ok(self.tol_scale * env_tol_scale()?)
    }
}

/// `NULLSHOCK_TOL_SCALE`, default 1.
pub fn env_tol_scale() -> Result<f64> {
    match std::env::var(TOL_SCALE_ENV) {
        Err(_) => Ok(1.0),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
            _ => Err(Error::InvalidConfig(format!(
                "{TOL_SCALE_ENV} must be a positive number, got {s:?}"
            ))),
        },
    }
}

/// `"min,max,steps"`.
pub fn parse_grid(s: &str) -> Result<(f64, f64, usize)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let err = || Error::InvalidConfig(format!("grid must be min,max,steps, got {s:?}"));
    if parts.len() != 3 {
        return Err(err());
    }
    let lo = parts[0].parse().map_err(|_| err())?;
    let hi = parts[1].parse().map_err(|_| err())?;
    let n = parts[2].parse().map_err(|_| err())?;
    Ok((lo, hi, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_keys_parse_and_unknown_keys_fail() {
        let c: RunConfig = serde_json::from_str(r#"{"G":2,"sigma_bar":0.5,"R0":3}"#).unwrap();
        assert_eq!(
            (c.g_newton, c.sigma_bar, c.r0, c.eta),
            (2.0, Some(0.5), 3.0, 1.0)
        );
        assert!(serde_json::from_str::<RunConfig>(r#"{"bogus":1}"#).is_err());
    }

    #[test]
    fn validation_rejects_bad_ranges() {
        let mut c = RunConfig::default();
        assert!(c.validate().is_ok());
        c.sigma_bar = Some(1.5);
        assert!(matches!(c.validate(), Err(Error::BadSigma(_))));
        c = RunConfig {
            eta: 0.0,
            ..RunConfig::default()
        };
        assert!(c.validate().is_err());
        c = RunConfig {
            t_min: 2.0,
            t_max: 1.0,
            ..RunConfig::default()
        };
        assert!(c.validate().is_err());
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("0, 2.5,10").unwrap(), (0.0, 2.5, 10));
        assert!(parse_grid("0,1").is_err());
        assert!(parse_grid("a,1,2").is_err());
    }
}
