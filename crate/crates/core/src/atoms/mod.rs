//! Two two-level atoms coupled through the shared vacuum field.
//!
//! The cross-damping `Gamma_AB` and dipole-dipole shift `Omega_AB` are read off
//! the Green tensor at the mean transition frequency `w = (w_A + w_B)/2`:
//!
//! ```text
//! Gamma_AB = gamma * Im(d_A . chi . d_B) / ((2/3) w^3)
//! Omega_AB = gamma * Re(d_A . chi . d_B) / ((4/3) w^3)
//! ```
//!
//! `gamma` is half the Einstein A coefficient, so `Gamma_AB -> gamma` for
//! parallel dipoles at vanishing separation.

mod master;
mod mirror;

pub use master::{excitation_scan, steady_state, DensityMatrix4, DrivenConfig, ScanPoint};
pub use mirror::{mirror_modified_rates, DipoleOrientation, MirrorRates};

use crate::error::{CoherenceError, Result};
use crate::green::{chi_tensor, norm, Position3};
use crate::spectral::{lorentzian, FrequencyGrid, Spectrum};

const UNIT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomPairConfig {
    pos_a: Position3,
    pos_b: Position3,
    dipole_a: [f64; 3],
    dipole_b: [f64; 3],
    omega_a: f64,
    omega_b: f64,
    gamma: f64,
}

impl AtomPairConfig {
    pub fn new(
        pos_a: Position3,
        pos_b: Position3,
        dipole_a: [f64; 3],
        dipole_b: [f64; 3],
        omega_a: f64,
        omega_b: f64,
        gamma: f64,
    ) -> Result<Self> {
        for (name, d) in [("dipole_A", dipole_a), ("dipole_B", dipole_b)] {
            if (norm(d) - 1.0).abs() > UNIT_TOLERANCE {
                return Err(CoherenceError::invalid(name, "dipole must be a unit vector"));
            }
        }
        for (name, v) in [("omega_A", omega_a), ("omega_B", omega_b), ("gamma", gamma)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(CoherenceError::invalid(name, "must be positive"));
            }
        }
        if !pos_a.is_finite() || !pos_b.is_finite() {
            return Err(CoherenceError::invalid("position", "components must be finite"));
        }
        Ok(AtomPairConfig {
            pos_a,
            pos_b,
            dipole_a,
            dipole_b,
            omega_a,
            omega_b,
            gamma,
        })
    }

    /// Atom A at the origin, atom B at `separation` along x, both dipoles in
    /// the x-z plane at `dipole_angle` (radians) from the separation axis.
    pub fn parallel_pair(
        separation: f64,
        dipole_angle: f64,
        omega_a: f64,
        omega_b: f64,
        gamma: f64,
    ) -> Result<Self> {
        let d = [dipole_angle.cos(), 0.0, dipole_angle.sin()];
        Self::new(
            Position3::ORIGIN,
            Position3::new(separation, 0.0, 0.0),
            d,
            d,
            omega_a,
            omega_b,
            gamma,
        )
    }

    pub fn pos_a(&self) -> Position3 {
        self.pos_a
    }

    pub fn pos_b(&self) -> Position3 {
        self.pos_b
    }

    pub fn dipole_a(&self) -> [f64; 3] {
        self.dipole_a
    }

    pub fn dipole_b(&self) -> [f64; 3] {
        self.dipole_b
    }

    pub fn omega_a(&self) -> f64 {
        self.omega_a
    }

    pub fn omega_b(&self) -> f64 {
        self.omega_b
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn mean_frequency(&self) -> f64 {
        0.5 * (self.omega_a + self.omega_b)
    }

    pub fn separation(&self) -> f64 {
        self.pos_a.distance(self.pos_b)
    }

    fn is_identical(&self) -> bool {
        (self.omega_a - self.omega_b).abs() <= 1e-12 * self.omega_a.max(self.omega_b)
    }
}

/// Vacuum-mediated coupling between the two atoms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollectiveParams {
    /// Cross-damping rate `Gamma_AB`.
    pub gamma_cross: f64,
    /// Dipole-dipole shift `Omega_AB`.
    pub omega_dd: f64,
}

impl CollectiveParams {
    pub const NONE: CollectiveParams = CollectiveParams {
        gamma_cross: 0.0,
        omega_dd: 0.0,
    };
}

pub fn collective_params(pair: &AtomPairConfig) -> Result<CollectiveParams> {
    let w = pair.mean_frequency();
    let chi = chi_tensor(pair.pos_a, pair.pos_b, w)?;
    let p = chi.project(pair.dipole_a, pair.dipole_b);
    let w3 = w.powi(3);
    Ok(CollectiveParams {
        gamma_cross: pair.gamma * p.im / (2.0 / 3.0 * w3),
        omega_dd: pair.gamma * p.re / (4.0 / 3.0 * w3),
    })
}

/// Decay rates of the symmetric and antisymmetric single-excitation states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollectiveRates {
    pub gamma_plus: f64,
    pub gamma_minus: f64,
}

pub fn collective_rates(pair: &AtomPairConfig) -> Result<CollectiveRates> {
    if !pair.is_identical() {
        return Err(CoherenceError::NotApplicable(
            "symmetric/antisymmetric channels need identical transition frequencies".into(),
        ));
    }
    let c = collective_params(pair)?;
    Ok(CollectiveRates {
        gamma_plus: pair.gamma + c.gamma_cross,
        gamma_minus: pair.gamma - c.gamma_cross,
    })
}

/// Marginal emission spectrum of two identical excited atoms: equal-weight
/// Lorentzians for the symmetric and antisymmetric channels.
pub fn emission_spectrum_pair(pair: &AtomPairConfig, grid: FrequencyGrid) -> Result<Spectrum> {
    let rates = collective_rates(pair)?;
    let c = collective_params(pair)?;
    let (w0, g) = (pair.omega_a, pair.gamma);
    if grid.min() > w0 - 10.0 * g || grid.max() < w0 + 10.0 * g {
        return Err(CoherenceError::invalid(
            "grid",
            "must span at least omega0 +/- 10 gamma",
        ));
    }
    for width in [rates.gamma_plus, rates.gamma_minus] {
        if !(width > 0.0) {
            return Err(CoherenceError::DegenerateLinewidth { width });
        }
    }
    Spectrum::from_fn(grid, |w| {
        0.5 * lorentzian(w, w0 + c.omega_dd, rates.gamma_plus)
            + 0.5 * lorentzian(w, w0 - c.omega_dd, rates.gamma_minus)
    })
}
