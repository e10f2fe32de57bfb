//! Finite-difference helpers: Richardson-extrapolated central differences
//! for validation, and one-sided stencils for fields that are only
//! Lipschitz across a surface.

/// Step `cbrt(ε)·scale`.
pub fn default_step(scale: f64) -> f64 {
    f64::EPSILON.cbrt() * scale.abs().max(f64::MIN_POSITIVE)
}

/// Central first derivative of a vector-valued function, Richardson
/// extrapolated from steps `h` and `h/2` (error `O(h⁴)`).
pub fn central_derivative_vec<const N: usize>(
    mut f: impl FnMut(f64) -> [f64; N],
    x: f64,
    h: f64,
) -> [f64; N] {
    let mut d = |h: f64| {
        let (p, m) = (f(x + h), f(x - h));
        let mut out = [0.0; N];
        for i in 0..N {
            out[i] = (p[i] - m[i]) / (2.0 * h);
        }
        out
    };
    let coarse = d(h);
    let fine = d(0.5 * h);
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    }
    out
}

pub fn central_derivative(mut f: impl FnMut(f64) -> f64, x: f64, h: f64) -> f64 {
    central_derivative_vec(|s| [f(s)], x, h)[0]
}

/// Central second derivative, Richardson extrapolated.
pub fn central_second_derivative(mut f: impl FnMut(f64) -> f64, x: f64, h: f64) -> f64 {
    let f0 = f(x);
    let mut d = |h: f64| (f(x + h) - 2.0 * f0 + f(x - h)) / (h * h);
    let coarse = d(h);
    let fine = d(0.5 * h);
    (4.0 * fine - coarse) / 3.0
}

/// One-sided first derivative at 0 from samples `f(0), f(h), …, f(4h)`.
/// A negative `h` differentiates toward the other side.
pub fn one_sided_first(samples: &[f64; 5], h: f64) -> f64 {
    const W: [f64; 5] = [-25.0, 48.0, -36.0, 16.0, -3.0];
    W.iter().zip(samples).map(|(w, f)| w * f).sum::<f64>() / (12.0 * h)
}

/// One-sided second derivative at 0 from samples `f(0), …, f(4h)`.
pub fn one_sided_second(samples: &[f64; 5], h: f64) -> f64 {
    const W: [f64; 5] = [35.0, -104.0, 114.0, -56.0, 11.0];
    W.iter().zip(samples).map(|(w, f)| w * f).sum::<f64>() / (12.0 * h * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn richardson_on_exponential() {
        let h = default_step(1.0) * 100.0;
        assert!((central_derivative(f64::exp, 0.3, h) - 0.3f64.exp()).abs() < 1e-10);
        assert!((central_second_derivative(f64::sin, 0.4, 1e-3) + 0.4f64.sin()).abs() < 1e-8);
    }

    #[test]
    fn one_sided_stencils_are_exact_on_quartics() {
        let f = |x: f64| 1.0 - 2.0 * x + 3.0 * x * x - 0.5 * x.powi(3) + 0.25 * x.powi(4);
        for h in [0.1, -0.1] {
            let s = [f(0.0), f(h), f(2.0 * h), f(3.0 * h), f(4.0 * h)];
            assert!((one_sided_first(&s, h) + 2.0).abs() < 1e-12);
            assert!((one_sided_second(&s, h) - 6.0).abs() < 1e-10);
        }
    }
}
