//! Localized (bound) modes: roots of `y(E) = E` outside the spectral support,
//! with `y(E) = ω₀ − ∫ J(ω)/(ω − E) dω`.
//!
//! A root `E_b` is a stationary state of the joint system–reservoir problem.
//! Its pole residue `Z = [1 + ∫ J/(ω − E_b)² dω]⁻¹` fixes the frozen
//! population `|u(∞)|² = Z²` (the continuum part of `u` decays).

use crate::dynamics::SystemMode;
use crate::error::{Error, Result};
use crate::spectral::SpectralModel;

/// Furthest distance from the support searched for a sign change.
const BRACKET_LIMIT: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundMode {
    pub energy: f64,
    pub residue: f64,
}

impl BoundMode {
    pub fn population(&self) -> f64 {
        self.residue * self.residue
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundModeReport {
    /// Largest-residue root, if any.
    pub primary: Option<BoundMode>,
    /// All roots, ordered by energy.
    pub roots: Vec<BoundMode>,
}

impl BoundModeReport {
    pub fn exists(&self) -> bool {
        self.primary.is_some()
    }
}

/// `y(E) = ω₀ − ∫ J(ω)/(ω − E) dω`.
pub fn spectral_function_y(model: &SpectralModel, mode: SystemMode, energy: f64) -> Result<f64> {
    Ok(mode.omega0 - model.level_shift_integral(energy, 1)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Below,
    Above,
}

impl Side {
    fn label(self) -> &'static str {
        match self {
            Side::Below => "below",
            Side::Above => "above",
        }
    }

    /// Direction pointing away from the support.
    fn outward(self) -> f64 {
        match self {
            Side::Below => -1.0,
            Side::Above => 1.0,
        }
    }
}

/// Locates every root of `y(E) = E` outside the support.
///
/// `y(E) − E` is strictly decreasing on each side of the support, so each
/// side holds at most one root. Ohmic family: only `E < 0`, with the root
/// present iff `y(0) < 0`. Cavity array: both sides of the band.
pub fn find_bound_mode(model: &SpectralModel, mode: SystemMode) -> Result<BoundModeReport> {
    let sides: &[Side] = match model {
        SpectralModel::OhmicFamily(_) => &[Side::Below],
        SpectralModel::CavityArray(_) => &[Side::Below, Side::Above],
    };
    let mut roots = Vec::new();
    for &side in sides {
        if let Some(energy) = root_on_side(model, mode, side)? {
            let residue = 1.0 / (1.0 + model.level_shift_integral(energy, 2)?);
            roots.push(BoundMode { energy, residue });
        }
    }
    roots.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    let primary = roots.iter().copied().max_by(|a, b| a.residue.total_cmp(&b.residue));
    Ok(BoundModeReport { primary, roots })
}

fn root_on_side(model: &SpectralModel, mode: SystemMode, side: Side) -> Result<Option<f64>> {
    let gap = |e: f64| spectral_function_y(model, mode, e).map(|y| y - e);
    let support = model.support();
    let edge = match side {
        Side::Below => support.lower,
        Side::Above => support.upper,
    };
    // inner end of the bracket: the sign there must be "past the root"
    let past_root = |v: f64| match side {
        Side::Below => v < 0.0,
        Side::Above => v > 0.0,
    };
    let inner = match model {
        SpectralModel::OhmicFamily(_) => {
            let v = gap(0.0)?;
            if past_root(v) {
                Some(0.0)
            } else {
                None
            }
        }
        SpectralModel::CavityArray(a) => {
            // the level shift diverges at the band edges whenever g > 0;
            // creep towards the edge until it dominates
            let width = 2.0 * a.xi;
            let mut found = None;
            for k in 1..=15 {
                let e = edge + side.outward() * width * 10f64.powi(-k);
                if e == edge {
                    break;
                }
                if past_root(gap(e)?) {
                    found = Some(e);
                    break;
                }
            }
            found
        }
    };
    let Some(inner) = inner else {
        return Ok(None);
    };

    let mut span = mode.omega0.abs().max(1.0);
    let outer = loop {
        let e = edge + side.outward() * span;
        if !past_root(gap(e)?) {
            break e;
        }
        span *= 2.0;
        if span > BRACKET_LIMIT {
            return Err(Error::NoRootFound { side: side.label() });
        }
    };

    let (mut past, mut before) = (inner, outer);
    for _ in 0..400 {
        let mid = 0.5 * (past + before);
        // run to adjacent floats: near a discrete pole the slope of y(E) − E
        // is large enough that 1e-12 relative in E is not enough for the residual
        if mid == past || mid == before {
            break;
        }
        if past_root(gap(mid)?) {
            past = mid;
        } else {
            before = mid;
        }
    }
    let root = 0.5 * (past + before);
    // Ohmic: an exact zero at E = 0 is on the support boundary, not a bound state
    if root >= 0.0 && matches!(model, SpectralModel::OhmicFamily(_)) {
        return Ok(None);
    }
    Ok(Some(root))
}

/// Existence criterion for `n = 3`, `ω_ref = ω₀`: `ω₀ − 2ηω_c³/ω₀² < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperOhmicCriterion {
    pub exists: bool,
    pub margin: f64,
}

pub fn superohmic_criterion(eta: f64, omega_c: f64, omega0: f64) -> Result<SuperOhmicCriterion> {
    for (name, v) in [("eta", eta), ("omega_c", omega_c), ("omega0", omega0)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter {
                name,
                value: v,
                reason: "must be positive and finite",
            });
        }
    }
    let margin = omega0 - 2.0 * eta * omega_c.powi(3) / (omega0 * omega0);
    Ok(SuperOhmicCriterion {
        exists: margin < 0.0,
        margin,
    })
}

/// Predicted late-time population `|u(∞)|²`: `Z²` of the primary root, else 0.
pub fn steady_state_population(model: &SpectralModel, mode: SystemMode) -> Result<f64> {
    Ok(find_bound_mode(model, mode)?.primary.map_or(0.0, |b| b.population()))
}
