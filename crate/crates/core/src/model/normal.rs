//! Standard-normal helpers and truncated-distribution moments.

use libm::erfc;
use statrs::function::erf::erfc_inv;
use std::f64::consts::{PI, SQRT_2};

pub(crate) fn std_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

pub(crate) fn std_pdf(x: f64) -> f64 {
    if x.is_infinite() {
        0.0
    } else {
        (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
    }
}

/// Inverse of the standard-normal CDF: statrs' `erfc_inv` as a starting
/// point, polished with one Halley step against the libm CDF.
pub(crate) fn std_quantile(p: f64) -> f64 {
    let x = -SQRT_2 * erfc_inv(2.0 * p);
    if !x.is_finite() {
        return x;
    }
    let density = std_pdf(x);
    if density <= 0.0 {
        return x;
    }
    let err = std_cdf(x) - p;
    let step = err / density;
    x - step / (1.0 + 0.5 * x * step)
}

/// Mass of the standard normal on `[alpha, beta]`, computed on whichever side
/// of zero avoids cancellation. Requires `alpha <= 0`.
fn mass_left_of_zero(alpha: f64, beta: f64) -> f64 {
    if beta <= 0.0 {
        std_cdf(beta) - std_cdf(alpha)
    } else {
        1.0 - std_cdf(alpha) - std_cdf(-beta)
    }
}

/// Mean and variance of the standard normal truncated to `[alpha, beta]`.
/// Returns `None` when the interval carries no representable mass.
pub(crate) fn truncated_std_normal(alpha: f64, beta: f64) -> Option<(f64, f64)> {
    if alpha > 0.0 {
        return truncated_std_normal(-beta, -alpha).map(|(m, v)| (-m, v));
    }
    let z = mass_left_of_zero(alpha, beta);
    if !(z > 0.0) {
        return None;
    }
    let (pa, pb) = (std_pdf(alpha), std_pdf(beta));
    let apa = if alpha.is_finite() { alpha * pa } else { 0.0 };
    let bpb = if beta.is_finite() { beta * pb } else { 0.0 };
    let mean = ((pa - pb) / z).clamp(alpha, beta);
    let var = 1.0 + (apa - bpb) / z - mean * mean;
    // Popoviciu: a distribution on an interval of width w has variance <= w²/4.
    let width = beta - alpha;
    Some((mean, var.clamp(0.0, width * width / 4.0)))
}

/// Mean and variance of `t`, where `t` has density ∝ exp(−rate·t) on `[0, len]`.
pub(crate) fn truncated_exponential(rate: f64, len: f64) -> (f64, f64) {
    if len == 0.0 {
        return (0.0, 0.0);
    }
    if len.is_infinite() {
        return (1.0 / rate, 1.0 / (rate * rate));
    }
    let x = rate * len;
    if x < 1e-2 {
        // Series in x = rate·len; the closed form cancels catastrophically here.
        let x2 = x * x;
        let mean = len * (0.5 - x / 12.0 + x * x2 / 720.0);
        let var = len * len * (1.0 / 12.0 - x2 / 240.0 + x2 * x2 / 6048.0);
        return (mean, var);
    }
    let q = (-x).exp();
    let one_minus_q = -(-x).exp_m1();
    let mean = 1.0 / rate - len * q / one_minus_q;
    let var = 1.0 / (rate * rate) - len * len * q / (one_minus_q * one_minus_q);
    (mean.clamp(0.0, len), var.clamp(0.0, len * len / 4.0))
}
