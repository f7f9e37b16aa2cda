//! Special functions needed by the closed-form memory kernels.

use std::f64::consts::PI;

pub use statrs::function::gamma::gamma;

/// Bessel function of the first kind, order zero.
///
/// Evaluated from `J₀(x) = (1/2π) ∫₀^{2π} cos(x cos θ) dθ` with the periodic
/// trapezoidal rule. The aliasing error of an `m`-point rule is bounded by
/// `2|J_m(x)|`, which is below machine precision once `m` clears the turning
/// point `|x|` by a few Airy widths.
pub fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    let m = (ax + 20.0 * ax.cbrt() + 40.0).ceil() as usize;
    let m = m + (m % 2);
    // symmetry cos θ ↔ cos(2π − θ) halves the work
    let step = 2.0 * PI / m as f64;
    let mut sum = 2.0 * x.cos();
    for j in 1..m / 2 {
        sum += 2.0 * (x * (j as f64 * step).cos()).cos();
    }
    sum / m as f64
}
