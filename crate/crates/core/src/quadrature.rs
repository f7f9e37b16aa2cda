//! Adaptive Gauss–Kronrod quadrature on finite and semi-infinite intervals.
//!
//! The 7-point Gauss–Legendre rule is embedded in the 15-point Kronrod
//! extension; their difference drives global bisection of the worst
//! subinterval until the requested tolerance is met.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for the odd Kronrod nodes XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

/// Tolerances and subdivision budget for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct QuadratureOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-13,
            max_intervals: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error: f64,
    pub converged: bool,
}

struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += pair * w;
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).norm();
    (value, error)
}

/// Integrates a complex-valued `f` over the finite interval `[a, b]`.
pub fn integrate<F>(f: F, a: f64, b: f64, opts: QuadratureOptions) -> QuadratureResult
where
    F: Fn(f64) -> Complex64,
{
    if a == b {
        return QuadratureResult {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            converged: true,
        };
    }
    let (value, error) = kronrod15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value, error });
    let mut total = value;
    let mut total_err = error;

    loop {
        let target = opts.abs_tol.max(opts.rel_tol * total.norm());
        if total_err <= target {
            return QuadratureResult {
                value: total,
                error: total_err,
                converged: true,
            };
        }
        if heap.len() >= opts.max_intervals {
            break;
        }
        let worst = heap.pop().expect("heap never empties");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval exhausted at machine precision
            heap.push(worst);
            break;
        }
        let (lv, le) = kronrod15(&f, worst.a, mid);
        let (rv, re) = kronrod15(&f, mid, worst.b);
        total += lv + rv - worst.value;
        total_err += le + re - worst.error;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: lv,
            error: le,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: rv,
            error: re,
        });
    }

    // recompute sums from scratch to shed accumulated cancellation error
    let (value, error) = heap
        .iter()
        .fold((Complex64::new(0.0, 0.0), 0.0), |(v, e), s| (v + s.value, e + s.error));
    QuadratureResult {
        value,
        error,
        converged: false,
    }
}

/// Integrates `f` over `[0, ∞)` through the map `ω = scale·s/(1−s)`, `s ∈ [0, 1)`.
pub fn integrate_semi_infinite<F>(f: F, scale: f64, opts: QuadratureOptions) -> QuadratureResult
where
    F: Fn(f64) -> Complex64,
{
    let mapped = |s: f64| {
        let one_minus = 1.0 - s;
        if one_minus <= 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let omega = scale * s / one_minus;
        let jac = scale / (one_minus * one_minus);
        let v = f(omega) * jac;
        if v.re.is_finite() && v.im.is_finite() {
            v
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    integrate(mapped, 0.0, 1.0, opts)
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<F>(f: F, a: f64, b: f64, opts: QuadratureOptions) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let r = integrate(|x| Complex64::new(f(x), 0.0), a, b, opts);
    (r.value.re, r.error)
}
