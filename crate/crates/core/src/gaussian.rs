//! Two-mode Gaussian state evolved from a two-mode squeezed vacuum, and its
//! correlation measures.
//!
//! Covariance matrices use the quadrature order `(x₁, p₁, x₂, p₂)` with
//! `σ_ij = ⟨ΔX_iΔX_j + ΔX_jΔX_i⟩`, so the vacuum is the identity. All
//! entropic quantities are in nats.

use std::fmt;

use nalgebra::{Matrix2, Matrix4, SymmetricEigen, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Slack accepted on `|u| ≤ 1`.
pub const AMPLITUDE_SLACK: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SqueezingParameter(f64);

impl SqueezingParameter {
    pub fn new(r: f64) -> Result<Self> {
        if r >= 0.0 && r.is_finite() {
            Ok(Self(r))
        } else {
            Err(Error::InvalidParameter {
                name: "r",
                value: r,
                reason: "squeezing must be non-negative and finite",
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Coefficients `a`, `b`, `c` of the evolved state in the coherent-state
/// representation, `ρ ∝ a·exp[Σ_{k≠k'} (b/2 ᾱ_k ᾱ_k' + c ᾱ_k α'_k + b*/2 α'_k α'_k')]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolvedStateCoefficients {
    pub a: f64,
    pub b: Complex64,
    pub c: f64,
}

pub fn evolved_coefficients(u: Complex64, r: SqueezingParameter) -> Result<EvolvedStateCoefficients> {
    let modulus = u.norm();
    if !(modulus <= 1.0 + AMPLITUDE_SLACK) {
        return Err(Error::Unphysical {
            quantity: "|u| (exceeds 1)",
            value: modulus,
        });
    }
    let p = u.norm_sqr();
    let th = r.0.tanh();
    let ch = r.0.cosh();
    let loss = 1.0 - p;
    let denom = 1.0 - th * th * loss * loss;
    Ok(EvolvedStateCoefficients {
        a: 1.0 / (ch * ch * denom),
        b: -(u * u) * (th / denom),
        c: th * th * loss * p / denom,
    })
}

/// 4×4 covariance matrix of the two-mode state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix4 {
    sigma: Matrix4<f64>,
}

impl CovarianceMatrix4 {
    /// Wraps an arbitrary symmetric matrix. Physicality is checked by the
    /// consumers ([`symplectic_invariants`] and friends).
    pub fn from_matrix(sigma: Matrix4<f64>) -> Result<Self> {
        let asym = (sigma - sigma.transpose()).amax();
        if asym > 1e-12 * sigma.amax().max(1.0) {
            return Err(Error::Unphysical {
                quantity: "covariance asymmetry",
                value: asym,
            });
        }
        Ok(Self { sigma })
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.sigma
    }

    pub fn local_block(&self, mode: usize) -> Matrix2<f64> {
        let o = 2 * mode;
        self.sigma.fixed_view::<2, 2>(o, o).into_owned()
    }

    pub fn correlation_block(&self) -> Matrix2<f64> {
        self.sigma.fixed_view::<2, 2>(0, 2).into_owned()
    }

    /// Swaps the mode labels 1 ↔ 2.
    pub fn swapped(&self) -> Self {
        let perm = [2usize, 3, 0, 1];
        Self {
            sigma: Matrix4::from_fn(|i, j| self.sigma[(perm[i], perm[j])]),
        }
    }
}

impl fmt::Display for CovarianceMatrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sigma)
    }
}

/// Builds σ from the evolved-state coefficients via
/// `x = [(1−c)² − |b|²]²`, `y = a/(1−c)`, `d = c + |b|²/(1−c)`.
pub fn covariance_from_amplitude(u: Complex64, r: SqueezingParameter) -> Result<CovarianceMatrix4> {
    let EvolvedStateCoefficients { a, b, c } = evolved_coefficients(u, r)?;
    let b2 = b.norm_sqr();
    let x = {
        let q = (1.0 - c) * (1.0 - c) - b2;
        q * q
    };
    let y = a / (1.0 - c);
    let d = c + b2 / (1.0 - c);
    let diag = y * (1.0 + d) / ((1.0 - d) * (1.0 - d));
    let re = 2.0 * a * b.re / x;
    let im = 2.0 * a * b.im / x;
    #[rustfmt::skip]
    let sigma = Matrix4::new(
        diag, 0.0,  re,   im,
        0.0,  diag, im,   -re,
        re,   im,   diag, 0.0,
        im,   -re,  0.0,  diag,
    );
    let cov = CovarianceMatrix4 { sigma };
    let data = symplectic_invariants(&cov)?;
    if data.nu_minus < 1.0 - 1e-6 {
        return Err(Error::Unphysical {
            quantity: "symplectic eigenvalue nu_minus",
            value: data.nu_minus,
        });
    }
    Ok(cov)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticData {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
    pub delta: f64,
    pub nu_minus: f64,
    pub nu_plus: f64,
}

pub fn symplectic_invariants(sigma: &CovarianceMatrix4) -> Result<SymplecticData> {
    let i1 = sigma.local_block(0).determinant();
    let i2 = sigma.local_block(1).determinant();
    let i3 = sigma.correlation_block().determinant();
    let i4 = sigma.matrix().determinant();
    let delta = i1 + i2 + 2.0 * i3;
    check_discriminant(delta, i4, "delta^2 - 4 I4")?;
    let (minus2, plus2) = symplectic_spectrum(sigma.matrix())?;
    Ok(SymplecticData {
        i1,
        i2,
        i3,
        i4,
        delta,
        nu_minus: minus2.sqrt(),
        nu_plus: plus2.sqrt(),
    })
}

fn check_discriminant(sum: f64, i4: f64, label: &'static str) -> Result<()> {
    let disc = sum * sum - 4.0 * i4;
    if disc < -1e-9 {
        return Err(Error::Unphysical {
            quantity: label,
            value: disc,
        });
    }
    Ok(())
}

/// Squared symplectic eigenvalues `(ν₋², ν₊²)`.
///
/// They are the doubly degenerate eigenvalues of the symmetric matrix
/// `σ^½ Ωᵀ σ Ω σ^½`. The closed form `(δ ± √(δ² − 4I₄))/2` loses half the
/// significant digits when `ν₋ ≈ ν₊`, which is the case for every symmetric
/// state reached from the squeezed vacuum; the eigenvalue route does not.
fn symplectic_spectrum(sigma: &Matrix4<f64>) -> Result<(f64, f64)> {
    let eig = SymmetricEigen::new(*sigma);
    let smallest = eig.eigenvalues.min();
    if !(smallest > 0.0) {
        return Err(Error::Unphysical {
            quantity: "covariance eigenvalue",
            value: smallest,
        });
    }
    let root =
        eig.eigenvectors * Matrix4::from_diagonal(&eig.eigenvalues.map(f64::sqrt)) * eig.eigenvectors.transpose();
    #[rustfmt::skip]
    let omega = Matrix4::new(
        0.0, 1.0, 0.0, 0.0,
        -1.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
        0.0, 0.0, -1.0, 0.0,
    );
    let m = root * omega.transpose() * sigma * omega * root;
    let m = (m + m.transpose()) * 0.5;
    let mut nu2: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    nu2.sort_by(f64::total_cmp);
    Ok((0.5 * (nu2[0] + nu2[1]), 0.5 * (nu2[2] + nu2[3])))
}

/// `f(x) = ((x+1)/2) ln((x+1)/2) − ((x−1)/2) ln((x−1)/2)`: von Neumann entropy
/// of a single-mode thermal state with symplectic eigenvalue `x`.
pub fn entropy_function(x: f64) -> Result<f64> {
    if !(x >= 1.0 - 1e-6) {
        return Err(Error::Unphysical {
            quantity: "entropy argument below 1",
            value: x,
        });
    }
    if x <= 1.0 + 1e-12 {
        return Ok(0.0);
    }
    let p = 0.5 * (x + 1.0);
    let q = 0.5 * (x - 1.0);
    Ok(p * p.ln() - q * q.ln())
}

/// Which expression for the optimal conditional determinant applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Top,
    Bottom,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Top => "top",
            Branch::Bottom => "bottom",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Branch selection and the minimal conditional determinant `m` of mode 1
/// after an optimal Gaussian measurement on mode 2.
pub fn optimal_conditional_determinant(s: &SymplecticData) -> (f64, Branch) {
    let SymplecticData { i1, i2, i3, i4, .. } = *s;
    let lhs = (i4 - i1 * i2).powi(2);
    let rhs = i3 * i3 * (i2 + 1.0) * (i1 + i4);
    // both expressions coincide on the boundary; the slack keeps exact-boundary
    // states such as the pure two-mode squeezed vacuum on the top branch
    if lhs <= rhs + 1e-10 * lhs.max(rhs) {
        let excess = i2 - 1.0;
        if excess <= 1e-12 {
            // measured mode is pure: the state is a product, nothing is learned
            return (i1, Branch::Top);
        }
        let inner = (i3 * i3 + excess * (i4 - i1)).max(0.0);
        let m = (2.0 * i3 * i3 + excess * (i4 - i1) + 2.0 * i3.abs() * inner.sqrt()) / (excess * excess);
        (m, Branch::Top)
    } else {
        let inner = (i3.powi(4) + lhs - 2.0 * i3 * i3 * (i4 + i1 * i2)).max(0.0);
        let m = (i1 * i2 - i3 * i3 + i4 - inner.sqrt()) / (2.0 * i2);
        (m, Branch::Bottom)
    }
}

/// Gaussian discord with the measurement on mode 2,
/// `D = f(√I₂) − f(ν₋) − f(ν₊) + f(√m)`.
pub fn gaussian_discord(sigma: &CovarianceMatrix4) -> Result<(f64, Branch)> {
    let s = symplectic_invariants(sigma)?;
    discord_from_invariants(&s)
}

fn discord_from_invariants(s: &SymplecticData) -> Result<(f64, Branch)> {
    let (m, branch) = optimal_conditional_determinant(s);
    let d = entropy_function(s.i2.sqrt())? - entropy_function(s.nu_minus)? - entropy_function(s.nu_plus)?
        + entropy_function(m.max(0.0).sqrt())?;
    let d = if (-1e-9..0.0).contains(&d) { 0.0 } else { d };
    Ok((d, branch))
}

/// `I = f(√I₁) + f(√I₂) − f(ν₋) − f(ν₊)`.
pub fn mutual_information(sigma: &CovarianceMatrix4) -> Result<f64> {
    let s = symplectic_invariants(sigma)?;
    mutual_from_invariants(&s)
}

fn mutual_from_invariants(s: &SymplecticData) -> Result<f64> {
    Ok(entropy_function(s.i1.sqrt())? + entropy_function(s.i2.sqrt())?
        - entropy_function(s.nu_minus)?
        - entropy_function(s.nu_plus)?)
}

/// Mutual information and the classical correlation `C = I − D`.
pub fn mutual_and_classical(sigma: &CovarianceMatrix4) -> Result<(f64, f64)> {
    let s = symplectic_invariants(sigma)?;
    let mutual = mutual_from_invariants(&s)?;
    let (discord, _) = discord_from_invariants(&s)?;
    Ok((mutual, mutual - discord))
}

/// Logarithmic negativity `max(0, −ln ν̃₋)` from the partially transposed
/// symplectic spectrum, `δ̃ = I₁ + I₂ − 2I₃`.
pub fn log_negativity(sigma: &CovarianceMatrix4) -> Result<f64> {
    let s = symplectic_invariants(sigma)?;
    log_negativity_from_invariants(sigma, &s)
}

fn log_negativity_from_invariants(sigma: &CovarianceMatrix4, s: &SymplecticData) -> Result<f64> {
    check_discriminant(s.i1 + s.i2 - 2.0 * s.i3, s.i4, "transposed delta^2 - 4 I4")?;
    // partial transposition flips p₂
    let flip = Matrix4::from_diagonal(&Vector4::new(1.0, 1.0, 1.0, -1.0));
    let (minus2, _) = symplectic_spectrum(&(flip * sigma.matrix() * flip))?;
    Ok((-0.5 * minus2.ln()).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationMeasures {
    pub discord: f64,
    pub mutual_info: f64,
    pub classical: f64,
    pub log_neg: f64,
    pub branch: Branch,
}

/// All measures at once, sharing one set of invariants.
pub fn correlation_measures(sigma: &CovarianceMatrix4) -> Result<(SymplecticData, CorrelationMeasures)> {
    let s = symplectic_invariants(sigma)?;
    let (discord, branch) = discord_from_invariants(&s)?;
    let mutual_info = mutual_from_invariants(&s)?;
    let log_neg = log_negativity_from_invariants(sigma, &s)?;
    Ok((
        s,
        CorrelationMeasures {
            discord,
            mutual_info,
            classical: mutual_info - discord,
            log_neg,
            branch,
        },
    ))
}
