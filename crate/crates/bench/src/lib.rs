//! Fixed workloads shared by the benchmarks.

use coherence_core::atoms::{AtomPairConfig, DrivenConfig};
use coherence_core::pulse::gaussian_schell_correlation;
use coherence_core::{
    CrystalVolume, DispersionConfig, InputCorrelation, PumpCoherence, TimeGrid, UniformGrid,
};

/// Detuned longitudinal pair scanned across both single-photon lines.
pub fn driven_pair(scan_points: usize) -> DrivenConfig {
    let pair = AtomPairConfig::parallel_pair(7.0e-4, 0.0, 1010.0, 990.0, 1.0).expect("valid pair");
    let grid = UniformGrid::new(980.0, 1020.0, scan_points).expect("valid grid");
    DrivenConfig::new(pair, 0.5, grid).expect("valid drive")
}

pub fn unit_crystal() -> CrystalVolume {
    CrystalVolume::cube(1.0).expect("valid crystal")
}

pub fn partially_coherent_pump() -> PumpCoherence {
    PumpCoherence::GaussianSchell { intensity: 1.0, coherence_length: 0.2 }
}

/// Gaussian-Schell pulse with `n` samples and the dispersion that widens it threefold.
pub fn partially_coherent_pulse(n: usize) -> (InputCorrelation, DispersionConfig) {
    let grid = TimeGrid::symmetric(8.0, n).expect("valid grid");
    let corr = gaussian_schell_correlation(1.0, 2.0, grid).expect("valid correlation");
    (corr, DispersionConfig::new(2.0, 1.0).expect("valid dispersion"))
}
