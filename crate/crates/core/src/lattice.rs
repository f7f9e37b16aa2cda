//! Exact single-excitation dynamics of one system cavity side-coupled to a
//! finite cavity array, by full diagonalization of the `(N+1)×(N+1)` hopping
//! matrix. Serves as an independent check of the memory-kernel solver and the
//! bound-mode root search.
//!
//! Site 0 is the system cavity (frequency ω₀); sites `1..=N` are the array
//! cavities `b_0 … b_{N−1}` (frequency ω_C, nearest-neighbour hopping ξ). The
//! system couples to `b_0` with strength `g`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::dynamics::{AmplitudeTrajectory, SystemMode, TimeGrid};
use crate::error::{Error, Result};
use crate::spectral::{CavityArraySpectrum, Sites};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    /// Periodic array; its Bloch modes couple uniformly (`g/√N`) to the system.
    Ring,
    /// Open chain as written in real space.
    Open,
}

impl std::str::FromStr for Topology {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "ring" => Ok(Topology::Ring),
            "open" => Ok(Topology::Open),
            other => Err(format!("unknown topology '{other}' (expected ring or open)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SingleExcitationChain {
    pub hamiltonian: DMatrix<f64>,
    pub topology: Topology,
    pub omega0: f64,
    band: (f64, f64),
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
}

impl SingleExcitationChain {
    pub fn dim(&self) -> usize {
        self.hamiltonian.nrows()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Squared overlap of each eigenvector with the system site.
    pub fn system_weights(&self) -> Vec<f64> {
        (0..self.dim()).map(|m| self.eigenvectors[(0, m)].powi(2)).collect()
    }

    /// Amplitudes `⟨j| e^(−iHt) |0⟩` on every site.
    pub fn propagate_from_system(&self, t: f64) -> Vec<Complex64> {
        let phases: Vec<Complex64> = self
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(m, &lam)| Complex64::from_polar(self.eigenvectors[(0, m)], -lam * t))
            .collect();
        (0..self.dim())
            .map(|j| {
                phases
                    .iter()
                    .enumerate()
                    .map(|(m, p)| p * self.eigenvectors[(j, m)])
                    .sum()
            })
            .collect()
    }
}

pub fn build_chain(spec: &CavityArraySpectrum, mode: SystemMode, topology: Topology) -> Result<SingleExcitationChain> {
    let n = match spec.sites {
        Sites::Finite(n) if n >= 1 => n,
        _ => {
            return Err(Error::InvalidParameter {
                name: "N",
                value: f64::INFINITY,
                reason: "the lattice oracle needs a finite number of sites",
            })
        }
    };
    let dim = n + 1;
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    h[(0, 0)] = mode.omega0;
    h[(0, 1)] = spec.g;
    h[(1, 0)] = spec.g;
    for j in 1..dim {
        h[(j, j)] = spec.omega_cavity;
    }
    for j in 1..n {
        h[(j, j + 1)] += spec.xi;
        h[(j + 1, j)] += spec.xi;
    }
    if topology == Topology::Ring {
        // closing bond b_{N−1} ↔ b_0; for N = 1 it is a self-bond (2ξ on the diagonal)
        h[(n, 1)] += spec.xi;
        h[(1, n)] += spec.xi;
    }

    let eig = SymmetricEigen::try_new(h.clone(), 1e-15, 0)
        .ok_or_else(|| Error::Eigen(format!("symmetric QR did not converge for dimension {dim}")))?;
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&m| eig.eigenvalues[m]).collect();
    let eigenvectors = DMatrix::from_fn(dim, dim, |i, k| eig.eigenvectors[(i, order[k])]);

    Ok(SingleExcitationChain {
        hamiltonian: h,
        topology,
        omega0: mode.omega0,
        band: spec.band_edges(),
        eigenvalues,
        eigenvectors,
    })
}

/// `u(t) = Σ_m V₀ₘ² e^(−iλ_m t)` on the grid.
pub fn exact_amplitude(chain: &SingleExcitationChain, grid: TimeGrid) -> AmplitudeTrajectory {
    let weights = chain.system_weights();
    let u = grid
        .times()
        .map(|t| {
            chain
                .eigenvalues
                .iter()
                .zip(&weights)
                .map(|(&lam, &w)| Complex64::from_polar(w, -lam * t))
                .sum()
        })
        .collect();
    AmplitudeTrajectory {
        grid,
        u,
        carrier: chain.omega0,
        dt_used: grid.dt(),
        error_estimate: 0.0,
    }
}

/// Eigenpairs lying outside `[ω_C − 2ξ, ω_C + 2ξ]` by more than 1e-9, as
/// `(eigenvalue, weight on the system site)`.
pub fn discrete_bound_modes(chain: &SingleExcitationChain) -> Vec<(f64, f64)> {
    let (lower, upper) = chain.band;
    let weights = chain.system_weights();
    chain
        .eigenvalues
        .iter()
        .zip(weights)
        .filter(|(&lam, _)| lam < lower - 1e-9 || lam > upper + 1e-9)
        .map(|(&lam, w)| (lam, w))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(g: f64, n: usize) -> CavityArraySpectrum {
        CavityArraySpectrum::new(g, 0.05, 1.0, Sites::Finite(n)).unwrap()
    }

    fn w0(x: f64) -> SystemMode {
        SystemMode::new(x).unwrap()
    }

    #[test]
    fn single_site_matrix() {
        let chain = build_chain(&spec(0.02, 1), w0(0.8), Topology::Open).unwrap();
        assert_eq!(
            chain.hamiltonian,
            DMatrix::from_row_slice(2, 2, &[0.8, 0.02, 0.02, 1.0])
        );
        let ring = build_chain(&spec(0.02, 1), w0(0.8), Topology::Ring).unwrap();
        assert!((ring.hamiltonian[(1, 1)] - 1.1).abs() < 1e-15);
    }

    #[test]
    fn decoupled_system() {
        let chain = build_chain(&spec(0.0, 30), w0(0.8), Topology::Ring).unwrap();
        assert!(chain.hamiltonian.row(0).iter().skip(1).all(|&x| x == 0.0));
        let traj = exact_amplitude(&chain, TimeGrid::new(100.0, 100).unwrap());
        for (t, z) in traj.grid.times().zip(&traj.u) {
            assert!((z - Complex64::from_polar(1.0, -0.8 * t)).norm() < 1e-12);
        }
        let modes = discrete_bound_modes(&chain);
        assert_eq!(modes.len(), 1);
        assert!((modes[0].0 - 0.8).abs() < 1e-12 && (modes[0].1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn array_block_inside_band() {
        for topology in [Topology::Ring, Topology::Open] {
            let chain = build_chain(&spec(0.0, 200), w0(0.8), topology).unwrap();
            let array: Vec<f64> = chain
                .eigenvalues()
                .iter()
                .copied()
                .filter(|&l| (l - 0.8).abs() > 1e-9)
                .collect();
            assert_eq!(array.len(), 200);
            assert!(array.iter().all(|&l| (0.9 - 1e-12..=1.1 + 1e-12).contains(&l)));
        }
    }

    #[test]
    fn resonant_rabi_oscillation() {
        let chain = build_chain(&spec(0.02, 1), w0(1.0), Topology::Open).unwrap();
        let traj = exact_amplitude(&chain, TimeGrid::new(400.0, 400).unwrap());
        for (t, z) in traj.grid.times().zip(&traj.u) {
            assert!((z.norm_sqr() - (0.02 * t).cos().powi(2)).abs() < 1e-12);
        }
    }

    #[test]
    fn completeness_and_probability_conservation() {
        let chain = build_chain(&spec(0.02, 200), w0(0.8), Topology::Ring).unwrap();
        let total: f64 = chain.system_weights().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        for t in [0.0, 13.7, 250.0, 499.0] {
            let p: f64 = chain.propagate_from_system(t).iter().map(|z| z.norm_sqr()).sum();
            assert!((p - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn below_band_mode_at_detuned_frequency() {
        let chain = build_chain(&spec(0.02, 200), w0(0.8), Topology::Ring).unwrap();
        let modes = discrete_bound_modes(&chain);
        let (e, w) = modes.iter().copied().find(|m| m.0 < 0.9).unwrap();
        assert!((e - 0.7977).abs() < 1e-4);
        assert!((w - 0.985).abs() < 1e-3);
    }

    #[test]
    fn mid_band_level_hybridizes() {
        let chain = build_chain(&spec(0.02, 200), w0(1.0), Topology::Ring).unwrap();
        assert!(discrete_bound_modes(&chain).iter().all(|&(_, w)| w <= 0.5));
    }

    #[test]
    fn continuum_array_is_rejected() {
        let c = CavityArraySpectrum::new(0.02, 0.05, 1.0, Sites::Continuum).unwrap();
        assert!(build_chain(&c, w0(0.8), Topology::Ring).is_err());
    }

    #[test]
    fn topology_parsing() {
        assert_eq!("ring".parse::<Topology>().unwrap(), Topology::Ring);
        assert_eq!("open".parse::<Topology>().unwrap(), Topology::Open);
        assert!("mobius".parse::<Topology>().is_err());
    }
}
