//! Reservoir spectral densities, their memory kernels and level-shift integrals.
//!
//! Two reservoir families are supported:
//!
//! * the Ohmic family `J(ω) = η ω (ω/ω_ref)^(n−1) e^(−ω/ω_c)` on `[0, ∞)`;
//! * a coupled-cavity array with dispersion `ε_k = ω_C + 2ξ cos k`, either as a
//!   finite ring of `N` sites or in the continuum limit.
//!
//! Every model exposes the density itself, the kernel
//! `f(t) = ∫ J(ω) e^(−iωt) dω` (closed form plus an independent quadrature
//! route) and the integrals `∫ J(ω)/(ω − E)^k dω` for `E` outside the support.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_semi_infinite, QuadratureOptions};
use crate::special::{bessel_j0, gamma};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OhmicFamilySpectrum {
    pub eta: f64,
    pub n: f64,
    pub omega_c: f64,
    pub omega_ref: f64,
}

impl OhmicFamilySpectrum {
    pub fn new(eta: f64, n: f64, omega_c: f64, omega_ref: f64) -> Result<Self> {
        check_nonneg("eta", eta)?;
        check_positive("n", n)?;
        check_positive("omega_c", omega_c)?;
        check_positive("omega_ref", omega_ref)?;
        Ok(Self {
            eta,
            n,
            omega_c,
            omega_ref,
        })
    }

    fn density(&self, omega: f64) -> f64 {
        if omega <= 0.0 || self.eta == 0.0 {
            return 0.0;
        }
        self.eta * omega * (omega / self.omega_ref).powf(self.n - 1.0) * (-omega / self.omega_c).exp()
    }

    /// `η Γ(n+1) ω_c² (ω_c/ω_ref)^(n−1) / (1 + iω_c t)^(n+1)`
    fn kernel(&self, t: f64) -> Complex64 {
        let prefactor = self.eta
            * gamma(self.n + 1.0)
            * self.omega_c
            * self.omega_c
            * (self.omega_c / self.omega_ref).powf(self.n - 1.0);
        Complex64::new(prefactor, 0.0) / Complex64::new(1.0, self.omega_c * t).powf(self.n + 1.0)
    }
}

/// Number of cavities in the array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sites {
    Finite(usize),
    Continuum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CavityArraySpectrum {
    pub g: f64,
    pub xi: f64,
    pub omega_cavity: f64,
    pub sites: Sites,
    // ring momenta k_m = 2πm/N, cached for the finite-N sums
    dispersion: Vec<f64>,
}

impl CavityArraySpectrum {
    pub fn new(g: f64, xi: f64, omega_cavity: f64, sites: Sites) -> Result<Self> {
        check_nonneg("g", g)?;
        check_positive("xi", xi)?;
        check_positive("omega_C", omega_cavity)?;
        if omega_cavity <= 2.0 * xi {
            return Err(Error::InvalidParameter {
                name: "omega_C",
                value: omega_cavity,
                reason: "band bottom omega_C - 2 xi must stay positive",
            });
        }
        let dispersion = match sites {
            Sites::Finite(0) => {
                return Err(Error::InvalidParameter {
                    name: "N",
                    value: 0.0,
                    reason: "array needs at least one site",
                })
            }
            Sites::Finite(n) => (0..n)
                .map(|m| omega_cavity + 2.0 * xi * (2.0 * PI * m as f64 / n as f64).cos())
                .collect(),
            Sites::Continuum => Vec::new(),
        };
        Ok(Self {
            g,
            xi,
            omega_cavity,
            sites,
            dispersion,
        })
    }

    /// Mode energies `ε_k` of the ring (empty in the continuum limit).
    pub fn dispersion(&self) -> &[f64] {
        &self.dispersion
    }

    pub fn band_edges(&self) -> (f64, f64) {
        (self.omega_cavity - 2.0 * self.xi, self.omega_cavity + 2.0 * self.xi)
    }

    fn continuum_density(&self, omega: f64) -> f64 {
        let x = omega - self.omega_cavity;
        let w2 = 4.0 * self.xi * self.xi - x * x;
        if w2 <= 0.0 {
            return 0.0;
        }
        self.g * self.g / (PI * w2.sqrt())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpectralModel {
    OhmicFamily(OhmicFamilySpectrum),
    CavityArray(CavityArraySpectrum),
}

/// Closed interval carrying the spectral weight; `upper` is infinite for the Ohmic family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub lower: f64,
    pub upper: f64,
}

impl SpectralModel {
    pub fn ohmic(eta: f64, n: f64, omega_c: f64, omega_ref: f64) -> Result<Self> {
        OhmicFamilySpectrum::new(eta, n, omega_c, omega_ref).map(Self::OhmicFamily)
    }

    pub fn cavity_array(g: f64, xi: f64, omega_cavity: f64, sites: Sites) -> Result<Self> {
        CavityArraySpectrum::new(g, xi, omega_cavity, sites).map(Self::CavityArray)
    }

    pub fn support(&self) -> Support {
        match self {
            Self::OhmicFamily(_) => Support {
                lower: 0.0,
                upper: f64::INFINITY,
            },
            Self::CavityArray(a) => match a.sites {
                Sites::Continuum => {
                    let (lower, upper) = a.band_edges();
                    Support { lower, upper }
                }
                Sites::Finite(_) => {
                    let lower = a.dispersion.iter().copied().fold(f64::INFINITY, f64::min);
                    let upper = a.dispersion.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    Support { lower, upper }
                }
            },
        }
    }

    /// Spectral weight `J(ω)`; zero outside the support.
    ///
    /// The finite-N array reports the continuum density: its discrete
    /// structure only enters through [`memory_kernel`](Self::memory_kernel)
    /// and [`level_shift_integral`](Self::level_shift_integral).
    pub fn density(&self, omega: f64) -> f64 {
        match self {
            Self::OhmicFamily(o) => o.density(omega),
            Self::CavityArray(a) => a.continuum_density(omega),
        }
    }

    /// Total weight `∫ J(ω) dω`, equal to `f(0)`.
    pub fn total_weight(&self) -> f64 {
        match self {
            Self::OhmicFamily(o) => {
                o.eta * gamma(o.n + 1.0) * o.omega_c * o.omega_c * (o.omega_c / o.omega_ref).powf(o.n - 1.0)
            }
            Self::CavityArray(a) => a.g * a.g,
        }
    }

    /// Memory kernel `f(t) = ∫ J(ω) e^(−iωt) dω` from its closed form.
    pub fn memory_kernel(&self, t: f64) -> Complex64 {
        match self {
            Self::OhmicFamily(o) => o.kernel(t),
            Self::CavityArray(a) => match a.sites {
                Sites::Continuum => Complex64::from_polar(a.g * a.g * bessel_j0(2.0 * a.xi * t), -a.omega_cavity * t),
                Sites::Finite(n) => {
                    let sum: Complex64 = a.dispersion.iter().map(|&e| Complex64::from_polar(1.0, -e * t)).sum();
                    sum * (a.g * a.g / n as f64)
                }
            },
        }
    }

    /// Memory kernel by direct numerical integration of the density.
    ///
    /// Ohmic family: semi-infinite map `ω = ω_c s/(1−s)`. Continuum array:
    /// the band is parametrised as `ω = ω_C + 2ξ cos θ`, which absorbs the
    /// inverse-square-root edge singularities. For a finite ring the
    /// spectral measure is a sum of delta peaks, so its integral is the sum.
    pub fn memory_kernel_quadrature(&self, t: f64) -> Complex64 {
        let opts = QuadratureOptions {
            abs_tol: 1e-14,
            rel_tol: 1e-14,
            max_intervals: 50_000,
        };
        match self {
            Self::OhmicFamily(o) => {
                integrate_semi_infinite(|w| Complex64::from_polar(o.density(w), -w * t), o.omega_c, opts).value
            }
            Self::CavityArray(a) => match a.sites {
                Sites::Continuum => {
                    let weight = a.g * a.g / PI;
                    integrate(
                        |theta| {
                            let w = a.omega_cavity + 2.0 * a.xi * theta.cos();
                            Complex64::from_polar(weight, -w * t)
                        },
                        0.0,
                        PI,
                        opts,
                    )
                    .value
                }
                Sites::Finite(_) => self.memory_kernel(t),
            },
        }
    }

    /// `∫ J(ω) / (ω − E)^order dω` for `E` outside the spectral support.
    ///
    /// For the Ohmic family `E = 0` is accepted whenever the integral
    /// converges there (`n > order − 1`).
    pub fn level_shift_integral(&self, energy: f64, order: u32) -> Result<f64> {
        assert!(order == 1 || order == 2, "level shift order must be 1 or 2");
        self.check_outside_support(energy, order)?;
        if energy == f64::NEG_INFINITY {
            return Ok(0.0);
        }
        match self {
            Self::OhmicFamily(o) => {
                if o.eta == 0.0 {
                    return Ok(0.0);
                }
                let opts = QuadratureOptions {
                    abs_tol: 1e-14,
                    rel_tol: 1e-14,
                    max_intervals: 20_000,
                };
                let k = order as i32;
                let scale = o.omega_c.max(-energy).max(1e-3 * o.omega_c);
                let r = integrate_semi_infinite(
                    |w| Complex64::new(o.density(w) / (w - energy).powi(k), 0.0),
                    scale,
                    opts,
                );
                Ok(r.value.re)
            }
            Self::CavityArray(a) => match a.sites {
                Sites::Continuum => {
                    let detuning = a.omega_cavity - energy;
                    let gap = detuning * detuning - 4.0 * a.xi * a.xi;
                    let g2 = a.g * a.g;
                    Ok(match order {
                        1 => detuning.signum() * g2 / gap.sqrt(),
                        _ => g2 * detuning.abs() / gap.powf(1.5),
                    })
                }
                Sites::Finite(n) => {
                    let k = order as i32;
                    let sum: f64 = a.dispersion.iter().map(|&e| (e - energy).powi(-k)).sum();
                    Ok(a.g * a.g * sum / n as f64)
                }
            },
        }
    }

    fn check_outside_support(&self, energy: f64, order: u32) -> Result<()> {
        let Support { lower, upper } = self.support();
        let outside = match self {
            Self::OhmicFamily(o) => energy < 0.0 || (energy == 0.0 && o.n > order as f64 - 1.0),
            Self::CavityArray(_) => energy < lower || energy > upper,
        };
        if outside && !energy.is_nan() {
            Ok(())
        } else {
            Err(Error::InsideSupport { energy, lower, upper })
        }
    }
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be positive and finite",
        })
    }
}

fn check_nonneg(name: &'static str, value: f64) -> Result<()> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be non-negative and finite",
        })
    }
}
