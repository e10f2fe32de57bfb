use std::sync::Arc;

use super::{Chart, Mat4, MetricFamily, MetricJet, MetricSpec, Vec4, ZERO3, ZERO4};
use crate::error::Result;

/// A scalar function of `(t, r)` with its first and second partials.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RadialJet {
    pub v: f64,
    pub t: f64,
    pub r: f64,
    pub tt: f64,
    pub tr: f64,
    pub rr: f64,
}

impl RadialJet {
    pub fn constant(v: f64) -> Self {
        Self {
            v,
            ..Default::default()
        }
    }

    pub fn negated(self) -> Self {
        Self {
            v: -self.v,
            t: -self.t,
            r: -self.r,
            tt: -self.tt,
            tr: -self.tr,
            rr: -self.rr,
        }
    }

    pub fn product(self, o: Self) -> Self {
        Self {
            v: self.v * o.v,
            t: self.t * o.v + self.v * o.t,
            r: self.r * o.v + self.v * o.r,
            tt: self.tt * o.v + 2.0 * self.t * o.t + self.v * o.tt,
            tr: self.tr * o.v + self.t * o.r + self.r * o.t + self.v * o.tr,
            rr: self.rr * o.v + 2.0 * self.r * o.r + self.v * o.rr,
        }
    }
}

/// Jet of `ds² = -a dt² + b dr² + c (dθ² + sin²θ dφ²)`.
pub fn spherical_diagonal_jet(a: RadialJet, b: RadialJet, c: RadialJet, theta: f64) -> MetricJet {
    let mut g: Mat4 = [[0.0; 4]; 4];
    let mut d1 = ZERO3;
    let mut d2 = ZERO4;

    let (s, co) = theta.sin_cos();
    let sin2 = s * s;
    let sin2_th = 2.0 * s * co;
    let sin2_thth = 2.0 * (co * co - s * s);

    let radial = [(0usize, a.negated()), (1, b), (2, c)];
    for (i, f) in radial {
        g[i][i] = f.v;
        d1[i][i][0] = f.t;
        d1[i][i][1] = f.r;
        d2[i][i][0][0] = f.tt;
        d2[i][i][0][1] = f.tr;
        d2[i][i][1][0] = f.tr;
        d2[i][i][1][1] = f.rr;
    }

    g[3][3] = c.v * sin2;
    d1[3][3][0] = c.t * sin2;
    d1[3][3][1] = c.r * sin2;
    d1[3][3][2] = c.v * sin2_th;
    let dd = &mut d2[3][3];
    dd[0][0] = c.tt * sin2;
    dd[0][1] = c.tr * sin2;
    dd[1][0] = c.tr * sin2;
    dd[1][1] = c.rr * sin2;
    dd[0][2] = c.t * sin2_th;
    dd[2][0] = c.t * sin2_th;
    dd[1][2] = c.r * sin2_th;
    dd[2][1] = c.r * sin2_th;
    dd[2][2] = c.v * sin2_thth;

    MetricJet { g, d1, d2 }
}

/// Flat spacetime in Cartesian or spherical coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minkowski {
    spherical: bool,
}

impl Minkowski {
    pub fn cartesian() -> Self {
        Self { spherical: false }
    }

    pub fn spherical() -> Self {
        Self { spherical: true }
    }
}

impl MetricSpec for Minkowski {
    fn family(&self) -> MetricFamily {
        MetricFamily::Minkowski
    }

    fn chart(&self) -> Chart {
        if self.spherical {
            Chart::Spherical
        } else {
            Chart::Cartesian
        }
    }

    fn jet(&self, x: &Vec4) -> Result<MetricJet> {
        if !self.spherical {
            let mut g = [[0.0; 4]; 4];
            g[0][0] = -1.0;
            g[1][1] = 1.0;
            g[2][2] = 1.0;
            g[3][3] = 1.0;
            return Ok(MetricJet::constant(g));
        }
        let r = x[1];
        let c = RadialJet {
            v: r * r,
            r: 2.0 * r,
            rr: 2.0,
            ..Default::default()
        };
        Ok(spherical_diagonal_jet(
            RadialJet::constant(1.0),
            RadialJet::constant(1.0),
            c,
            x[2],
        ))
    }
}

type JetFn = dyn Fn(&Vec4) -> Result<MetricJet> + Send + Sync;

/// A metric supplied as a closure returning its jet.
#[derive(Clone)]
pub struct CustomMetric {
    name: String,
    jet: Arc<JetFn>,
}

impl CustomMetric {
    pub fn new<F>(name: impl Into<String>, jet: F) -> Self
    where
        F: Fn(&Vec4) -> Result<MetricJet> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            jet: Arc::new(jet),
        }
    }

    /// Constant component matrix (all derivatives zero).
    pub fn constant(name: impl Into<String>, g: Mat4) -> Self {
        Self::new(name, move |_| Ok(MetricJet::constant(g)))
    }
}

impl std::fmt::Debug for CustomMetric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CustomMetric")
            .field("name", &self.name)
            .finish()
    }
}

impl MetricSpec for CustomMetric {
    fn family(&self) -> MetricFamily {
        MetricFamily::Custom
    }

    fn chart(&self) -> Chart {
        Chart::Named(self.name.clone())
    }

    fn jet(&self, x: &Vec4) -> Result<MetricJet> {
        (self.jet)(x)
    }
}
