//! Single atom at distance `b` in front of a perfectly conducting plane.
//!
//! The mirror is replaced by an image dipole at `-b`: components parallel to
//! the mirror flip sign, the normal component is kept. Width and shift follow
//! from the Green tensor between the atom and its image, `chi(b, -b, w)`.

use crate::error::{CoherenceError, Result};
use crate::green::{chi_tensor, Position3};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DipoleOrientation {
    /// Dipole parallel to the mirror plane.
    Parallel,
    /// Dipole along the mirror normal.
    Perpendicular,
}

impl DipoleOrientation {
    /// `+1` for parallel, `-1` for perpendicular: minus the sign the image
    /// construction attaches to the image dipole.
    pub fn image_sign(self) -> f64 {
        match self {
            DipoleOrientation::Parallel => 1.0,
            DipoleOrientation::Perpendicular => -1.0,
        }
    }

    /// Unit dipole of the atom; the mirror is the plane `z = 0`.
    pub fn dipole(self) -> [f64; 3] {
        match self {
            DipoleOrientation::Parallel => [1.0, 0.0, 0.0],
            DipoleOrientation::Perpendicular => [0.0, 0.0, 1.0],
        }
    }

    /// Image dipole under the perfect-conductor boundary condition.
    pub fn image_dipole(self) -> [f64; 3] {
        let d = self.dipole();
        [-d[0], -d[1], d[2]]
    }
}

/// Mirror-modified decay rate and line shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirrorRates {
    pub rate: f64,
    pub shift: f64,
}

pub fn mirror_modified_rates(
    b: f64,
    orientation: DipoleOrientation,
    omega: f64,
    gamma: f64,
) -> Result<MirrorRates> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(CoherenceError::invalid("b", "mirror distance must be positive"));
    }
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(CoherenceError::invalid("gamma", "must be positive"));
    }
    let atom = Position3::new(0.0, 0.0, b);
    let image = Position3::new(0.0, 0.0, -b);
    let chi = chi_tensor(atom, image, omega)?;
    let d = orientation.dipole();
    let s = orientation.image_sign();
    let w3 = omega.powi(3);
    let p = chi.project(d, d);
    // d . chi . d_image = -s * d . chi . d
    Ok(MirrorRates {
        rate: gamma * (1.0 - s * p.im / (2.0 / 3.0 * w3)),
        shift: 0.5 * gamma * s * p.re / (4.0 / 3.0 * w3),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn far_mirror_is_invisible() {
        for o in [DipoleOrientation::Parallel, DipoleOrientation::Perpendicular] {
            let r = mirror_modified_rates(100.0, o, 1.0, 0.1).unwrap();
            assert!((r.rate - 0.1).abs() < 0.02 * 0.1);
            assert!(r.shift.abs() < 0.02 * 0.1);
        }
    }

    #[test]
    fn close_mirror_limits() {
        let par = mirror_modified_rates(1e-3, DipoleOrientation::Parallel, 1.0, 1.0).unwrap();
        assert!(par.rate.abs() < 1e-2);
        let perp = mirror_modified_rates(1e-3, DipoleOrientation::Perpendicular, 1.0, 1.0).unwrap();
        assert!((perp.rate - 2.0).abs() < 1e-2);
    }

    #[test]
    fn image_dipoles() {
        assert_eq!(DipoleOrientation::Parallel.image_dipole(), [-1.0, 0.0, 0.0]);
        assert_eq!(DipoleOrientation::Perpendicular.image_dipole(), [0.0, 0.0, 1.0]);
    }

    #[test]
    fn rejects_bad_distance() {
        assert!(mirror_modified_rates(0.0, DipoleOrientation::Parallel, 1.0, 1.0).is_err());
        assert!(mirror_modified_rates(-1.0, DipoleOrientation::Parallel, 1.0, 1.0).is_err());
    }

    #[test]
    fn rate_oscillates_with_half_wavelength_period() {
        let omega = 2.0;
        let n = 20_001;
        let (lo, hi) = (10.0 / omega, 40.0 / omega);
        let mut crossings = Vec::new();
        let mut prev: Option<(f64, f64)> = None;
        for i in 0..n {
            let b = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            let v = mirror_modified_rates(b, DipoleOrientation::Parallel, omega, 1.0)
                .unwrap()
                .rate
                - 1.0;
            if let Some((pb, pv)) = prev {
                if pv.signum() != v.signum() {
                    crossings.push(pb + (b - pb) * pv / (pv - v));
                }
            }
            prev = Some((b, v));
        }
        assert!(crossings.len() > 10);
        // exp(2 i w b) has period pi/w in b, so rate - gamma changes sign every pi/(2w).
        let expected = std::f64::consts::PI / (2.0 * omega);
        for pair in crossings.windows(2) {
            let spacing = pair[1] - pair[0];
            assert!((spacing - expected).abs() < 0.05 * expected, "{spacing}");
        }
    }
}
