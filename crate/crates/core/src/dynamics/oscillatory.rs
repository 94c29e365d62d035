//! Closed-form oscillatory integrals over the unit-length window `[-1/2, 1/2]`.

use nalgebra::Complex;

pub type C64 = Complex<f64>;

const SERIES_LIMIT: f64 = 8.0;

/// `sin(x) / x` with the removable singularity filled in.
pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Moments `μ_p(x) = ∫ u^p e^{ixu} du` over `[-1/2, 1/2]` for `p = 0..=pmax`.
///
/// The power series is used for `|x| <= 8`; above that the upward recurrence
/// is stable because each step divides by `|x| > p`.
pub(crate) fn moments(x: f64, pmax: usize, out: &mut [C64]) {
    debug_assert!(out.len() > pmax);
    if x.abs() <= SERIES_LIMIT {
        for (p, slot) in out.iter_mut().enumerate().take(pmax + 1) {
            *slot = series_moment(x, p, SERIES_TERMS);
        }
    } else {
        let ix = C64::new(0.0, x);
        let (s, c) = (0.5 * x).sin_cos();
        let plus = C64::new(c, s);
        let minus = C64::new(c, -s);
        out[0] = C64::new(2.0 * s / x, 0.0);
        let mut half_pow = 1.0;
        for p in 1..=pmax {
            half_pow *= 0.5;
            let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
            let boundary = plus * half_pow - minus * (sign * half_pow);
            out[p] = (boundary - out[p - 1] * p as f64) / ix;
        }
    }
}

/// Terms of `(ix)^j / j!` needed for `|x| <= 8` to reach rounding level.
const SERIES_TERMS: usize = 44;

/// `Σ_j (ix)^j / j! ∫ u^{p+j} du`, keeping only the non-vanishing even powers.
fn series_moment(x: f64, p: usize, terms: usize) -> C64 {
    let mut re = 0.0;
    let mut im = 0.0;
    // coef = x^j / j!, quarter = (1/2)^(p+j) / (p+j+1)
    let mut coef = 1.0;
    let mut half = 0.5f64.powi(p as i32);
    for j in 0..terms {
        let q = p + j;
        if q % 2 == 0 {
            let t = coef * half / (q as f64 + 1.0);
            // i^j
            match j % 4 {
                0 => re += t,
                1 => im += t,
                2 => re -= t,
                _ => im -= t,
            }
        }
        coef *= x / (j as f64 + 1.0);
        half *= 0.5;
    }
    C64::new(re, im)
}

/// `(m1, μ2)` with `μ1 = i m1`, given `(sin, cos)` of `x/2`.
pub(crate) fn low_moments(x: f64, half_sin: f64, half_cos: f64) -> (f64, f64) {
    if x.abs() < 2.0 {
        (series_moment(x, 1, 24).im, series_moment(x, 2, 24).re)
    } else {
        let (s, c) = (half_sin, half_cos);
        let r = 1.0 / x;
        (2.0 * s * r * r - c * r, 0.5 * s * r + 2.0 * c * r * r - 4.0 * s * r * r * r)
    }
}

/// `sinc(y + d)` reusing `sin y, cos y, sin d, cos d`.
pub(crate) fn sinc_shifted(y: f64, sy: f64, cy: f64, d: f64, sd: f64, cd: f64) -> f64 {
    let z = y + d;
    if z.abs() < 0.5 {
        sinc(z)
    } else {
        (sy * cd + cy * sd) / z
    }
}

/// Ordered double integral
/// `ℓ(α, β) = ∫_{-1/2}^{1/2} u e^{iαu} ∫_{-1/2}^{u} v e^{iβv} dv du`
/// expanded in powers of `β`; accurate for `|β| <= 1e-2`.
pub(crate) fn nested_small_beta(alpha: f64, beta: f64) -> C64 {
    let mut mu = [C64::new(0.0, 0.0); 7];
    let terms = if beta == 0.0 { 1 } else { 4 };
    moments(alpha, 2 + terms, &mut mu);
    let mut sum = C64::new(0.0, 0.0);
    let mut coef = C64::new(1.0, 0.0); // (iβ)^j / j!
    for j in 0..terms {
        let edge = (-0.5f64).powi(j as i32 + 2);
        sum += coef * (mu[j + 3] - mu[1] * edge) / (j as f64 + 2.0);
        coef *= C64::new(0.0, beta) / (j as f64 + 1.0);
    }
    sum
}

/// Same integral through the closed form valid away from `β = 0`.
#[cfg(test)]
pub(crate) fn nested_regular(alpha: f64, beta: f64) -> C64 {
    let mut mg = [C64::new(0.0, 0.0); 3];
    let mut ma = [C64::new(0.0, 0.0); 3];
    moments(alpha + beta, 2, &mut mg);
    moments(alpha, 1, &mut ma);
    let r1 = C64::new(0.0, -1.0 / beta);
    let r2 = 1.0 / (beta * beta);
    let w = C64::from_polar(1.0, -0.5 * beta) * (r1 * -0.5 + r2);
    mg[2] * r1 + mg[1] * r2 - w * ma[1]
}
