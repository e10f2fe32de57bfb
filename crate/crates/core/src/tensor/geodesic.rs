use super::{dot, Chart, Connection, MetricSpec, SpacetimePoint, Vec4};
use crate::error::{Error, Result};

/// Classical RK4 step for `y' = f(s, y)`.
pub fn rk4_step<const N: usize, F>(f: &F, s: f64, y: &[f64; N], h: f64) -> Result<[f64; N]>
where
    F: Fn(f64, &[f64; N]) -> Result<[f64; N]>,
{
    let add = |y: &[f64; N], k: &[f64; N], c: f64| {
        let mut o = *y;
        for i in 0..N {
            o[i] += c * k[i];
        }
        o
    };
    let k1 = f(s, y)?;
    let k2 = f(s + 0.5 * h, &add(y, &k1, 0.5 * h))?;
    let k3 = f(s + 0.5 * h, &add(y, &k2, 0.5 * h))?;
    let k4 = f(s + h, &add(y, &k3, h))?;
    let mut out = *y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    Ok(out)
}

/// Geodesic sampled at equally spaced affine parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicCurve {
    pub chart: Chart,
    pub s: Vec<f64>,
    pub x: Vec<Vec4>,
    pub v: Vec<Vec4>,
}

impl GeodesicCurve {
    /// Max over interior nodes of `|ẍ^α + Γ^α_{βγ}ẋ^βẋ^γ|`, with `ẍ` from a
    /// fourth-order central difference of the sampled tangents.
    pub fn residual(&self, m: &dyn MetricSpec) -> Result<f64> {
        let n = self.s.len();
        if n < 5 {
            return Ok(0.0);
        }
        let h = self.s[1] - self.s[0];
        let mut worst: f64 = 0.0;
        for i in 2..n - 2 {
            let p = SpacetimePoint::new(self.chart.clone(), self.x[i]);
            let gv = Connection::at(m, &p)?.contract(&self.v[i], &self.v[i]);
            for a in 0..4 {
                let acc = (-self.v[i + 2][a] + 8.0 * self.v[i + 1][a] - 8.0 * self.v[i - 1][a]
                    + self.v[i - 2][a])
                    / (12.0 * h);
                worst = worst.max((acc + gv[a]).abs());
            }
        }
        Ok(worst)
    }

    /// Largest deviation of `g(ẋ, ẋ)` from its initial value.
    pub fn norm_drift(&self, m: &dyn MetricSpec) -> Result<f64> {
        let norm = |i: usize| -> Result<f64> {
            let g = m.value(&self.x[i])?;
            Ok(dot(&g, &self.v[i], &self.v[i]))
        };
        let n0 = norm(0)?;
        let mut worst: f64 = 0.0;
        for i in 1..self.s.len() {
            worst = worst.max((norm(i)? - n0).abs());
        }
        Ok(worst)
    }
}

/// Integrate `ẍ^α = -Γ^α_{βγ}ẋ^βẋ^γ` with fixed-step RK4.
pub fn geodesic_integrate(
    m: &dyn MetricSpec,
    x0: &SpacetimePoint,
    v0: Vec4,
    s_span: (f64, f64),
    steps: usize,
) -> Result<GeodesicCurve> {
    assert!(steps > 0, "at least one step");
    m.jet_at(x0)?;
    if v0.iter().any(|c| !c.is_finite()) {
        return Err(Error::OutOfDomain("non-finite initial velocity".into()));
    }
    let chart = x0.chart.clone();
    let rhs = |s: f64, y: &[f64; 8]| -> Result<[f64; 8]> {
        let x = [y[0], y[1], y[2], y[3]];
        let v = [y[4], y[5], y[6], y[7]];
        let p = SpacetimePoint::new(chart.clone(), x);
        let a = Connection::at(m, &p)
            .map_err(|_| Error::ChartExit { s })?
            .contract(&v, &v);
        Ok([v[0], v[1], v[2], v[3], -a[0], -a[1], -a[2], -a[3]])
    };

    let h = (s_span.1 - s_span.0) / steps as f64;
    let mut y = [0.0; 8];
    y[..4].copy_from_slice(&x0.coords);
    y[4..].copy_from_slice(&v0);
    let mut curve = GeodesicCurve {
        chart: chart.clone(),
        s: vec![s_span.0],
        x: vec![x0.coords],
        v: vec![v0],
    };
    for i in 0..steps {
        let s = s_span.0 + i as f64 * h;
        y = rk4_step(&rhs, s, &y, h)?;
        if y.iter().any(|c| !c.is_finite()) {
            return Err(Error::ChartExit { s: s + h });
        }
        curve.s.push(s_span.0 + (i + 1) as f64 * h);
        curve.x.push([y[0], y[1], y[2], y[3]]);
        curve.v.push([y[4], y[5], y[6], y[7]]);
    }
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Minkowski;

    #[test]
    fn flat_geodesic_is_a_line() {
        let m = Minkowski::cartesian();
        let v0 = [1.0, 0.5, 0.0, 0.0];
        let c = geodesic_integrate(
            &m,
            &SpacetimePoint::new(Chart::Cartesian, [0.0; 4]),
            v0,
            (0.0, 1.0),
            10,
        )
        .unwrap();
        for (s, x) in c.s.iter().zip(&c.x) {
            for a in 0..4 {
                assert!((x[a] - s * v0[a]).abs() < 1e-15);
            }
        }
        assert_eq!(c.residual(&m).unwrap(), 0.0);
    }

    #[test]
    fn leaving_the_chart_is_reported() {
        let m = Minkowski::spherical();
        let x0 = SpacetimePoint::new(Chart::Spherical, [0.0, 0.5, 1.0, 0.0]);
        let r = geodesic_integrate(&m, &x0, [1.0, -1.0, 0.0, 0.0], (0.0, 1.0), 20);
        assert!(matches!(r, Err(Error::ChartExit { .. })));
    }
}
