//! Adaptive Gauss–Kronrod (7/15) quadrature, used as an oracle for the
//! closed-form FRW solution under a general equation of state.

#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
/// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let s = f(c - h * XGK[i]) + f(c + h * XGK[i]);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// `∫_a^b f` to absolute tolerance `tol` by bisection of the worst interval.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let mut stack = vec![(a, b, tol, 0u32)];
    let mut total = 0.0;
    while let Some((lo, hi, tol, depth)) = stack.pop() {
        let (v, err) = gk15(f, lo, hi);
        if err <= tol || depth >= 50 {
            total += v;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, 0.5 * tol, depth + 1));
            stack.push((mid, hi, 0.5 * tol, depth + 1));
        }
    }
    total
}

/// `t - t₀ = ∓∫_{ρ₀}^{ρ} dξ / ((ξ + p(ξ))√(24π𝒢ξ))` for the branch `sign`.
pub fn frw_elapsed_time(
    eos: &dyn Fn(f64) -> f64,
    rho0: f64,
    rho: f64,
    g_newton: f64,
    sign: f64,
) -> f64 {
    let f = |xi: f64| 1.0 / ((xi + eos(xi)) * (24.0 * PI * g_newton * xi).sqrt());
    -sign * integrate(&f, rho0, rho, 1e-10)
}

/// `R = R₀ exp(-∫_{ρ₀}^{ρ} dξ / (3(ξ + p(ξ))))`.
pub fn frw_scale_of_density(eos: &dyn Fn(f64) -> f64, rho0: f64, rho: f64, r0: f64) -> f64 {
    let f = |xi: f64| -1.0 / (3.0 * (xi + eos(xi)));
    r0 * integrate(&f, rho0, rho, 1e-10).exp()
}
