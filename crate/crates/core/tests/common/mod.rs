//! Oracles shared by the integration tests. Everything here is written out
//! from the closed forms directly and does not call into the library's
//! solution code.
#![allow(dead_code)]

use std::f64::consts::PI;

use nullshock::tensor::{MetricSpec, SpacetimePoint};

/// `σ̄ = ½√(9σ² − 18σ + 25) + 3σ/2 − 5/2`.
pub fn h(sigma: f64) -> f64 {
    0.5 * (9.0 * sigma * sigma - 18.0 * sigma + 25.0).sqrt() + 1.5 * sigma - 2.5
}

pub fn q_poly(sb: f64) -> f64 {
    1.0 + 6.0 * sb + sb * sb
}

/// Shock speed relative to the FRW fluid.
pub fn shock_speed(sigma: f64) -> f64 {
    let sb = h(sigma);
    (1.0 + 3.0 * sigma) * (sb / q_poly(sb)).sqrt()
}

/// Plain bisection for `s(σ) = 1`, independent of the library solver.
pub fn sigma2() -> f64 {
    let (mut lo, mut hi) = (0.1, 0.9);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if shock_speed(mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn gamma(sb: f64, g: f64) -> f64 {
    sb / (2.0 * PI * g * q_poly(sb))
}

/// FRW closed form along the shock with default anchors
/// (`t₀ = 0`, `r̄₀ = R₀ = 1`): `(r̄, R, Ṙ, ρ)`.
pub fn frw_closed(sigma: f64, gam: f64, g: f64, t: f64) -> (f64, f64, f64, f64) {
    let v = (18.0 * PI * g * gam).sqrt() * (1.0 + sigma);
    let rbar = v * t + 1.0;
    let q = 2.0 / (3.0 * (1.0 + sigma));
    let r = rbar.powf(q);
    (rbar, r, q * v * r / rbar, 3.0 * gam / (rbar * rbar))
}

/// Largest relative mismatch between the analytic jet and Richardson
/// central differences of the metric values (first and mixed second).
pub fn jet_vs_fd(m: &dyn MetricSpec, x: &SpacetimePoint) -> f64 {
    let jet = m.jet_at(x).unwrap();
    let h = 1e-4;
    let g_at = |c: usize, s: f64| {
        let mut p = x.clone();
        p.coords[c] += s;
        m.jet_at(&p).unwrap()
    };
    let mut worst: f64 = 0.0;
    for c in 0..4 {
        let (p1, m1, p2, m2) = (g_at(c, h), g_at(c, -h), g_at(c, 2.0 * h), g_at(c, -2.0 * h));
        for a in 0..4 {
            for b in 0..4 {
                let d = (8.0 * (p1.g[a][b] - m1.g[a][b]) - (p2.g[a][b] - m2.g[a][b])) / (12.0 * h);
                let e = jet.d1[a][b][c];
                worst = worst.max((d - e).abs() / e.abs().max(1.0));
                for k in 0..4 {
                    let d2 = (8.0 * (p1.d1[a][b][k] - m1.d1[a][b][k])
                        - (p2.d1[a][b][k] - m2.d1[a][b][k]))
                        / (12.0 * h);
                    let e2 = jet.d2[a][b][k][c];
                    worst = worst.max((d2 - e2).abs() / e2.abs().max(1.0));
                }
            }
        }
    }
    worst
}

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_nullshock")
}
