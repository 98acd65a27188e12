//! Correlation-induced spectral effects computed from microscopic source models.
//!
//! Units throughout are natural: `c = 1` and `hbar = 1`, so frequencies,
//! wavenumbers and inverse lengths share one scale.
//!
//! * [`spectral`]: grids, line shapes, quadrature and peak/centroid estimators.
//! * [`wolf`]: far-zone spectrum of two correlated point sources.
//! * [`green`]: free-space dyadic Green tensor and vacuum cross-spectral density.
//! * [`atoms`]: two-atom collective emission, driven steady states and mirror rates.
//! * [`shg`]: second-harmonic phase matching under partially coherent pumping.
//! * [`pulse`]: fluctuating pulses in a group-velocity-dispersive medium.

pub mod atoms;
pub mod error;
pub mod green;
pub mod pulse;
pub mod shg;
pub mod spectral;
pub mod wolf;

pub use num_complex::Complex64;

pub use atoms::{
    AtomPairConfig, CollectiveParams, CollectiveRates, DensityMatrix4, DipoleOrientation,
    DrivenConfig, MirrorRates, ScanPoint,
};
pub use error::{CoherenceError, Result};
pub use green::{GreenTensor, Position3};
pub use pulse::{DispersionConfig, InputCorrelation, IntensityProfile, PulseEnvelope, TimeGrid};
pub use shg::{CrystalVolume, MismatchVector, PumpCoherence};
pub use spectral::{ComplexSamples, FrequencyGrid, Spectrum, UniformGrid};
pub use wolf::{CoherenceModel, ShiftRecord, SourcePairConfig};
