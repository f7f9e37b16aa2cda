//! Exact non-Markovian decoherence of two independent bosonic modes, the
//! localized modes of their structured reservoirs, and the resulting
//! dynamics of Gaussian quantum discord for an initially two-mode squeezed
//! vacuum.

pub mod bound_mode;
pub mod dynamics;
pub mod error;
pub mod gaussian;
pub mod lattice;
pub mod quadrature;
pub mod scenario;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};
pub use spectral::{CavityArraySpectrum, OhmicFamilySpectrum, Sites, SpectralModel, Support};
