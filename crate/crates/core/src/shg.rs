//! Second-harmonic generation from a box-shaped crystal pumped by coherent,
//! incoherent or Gaussian-correlated light.
//!
//! For a statistically homogeneous polarization correlation `W(r' - r'')` the
//! double volume integral
//!
//! ```text
//! |f(Q)|^2 = int_V int_V W(r' - r'') exp(i Q . (r' - r'')) d^3r' d^3r''
//! ```
//!
//! collapses onto the difference coordinate `s = r' - r''` weighted by the box
//! autocorrelation `prod_d (L_d - |s_d|)_+`. Every supported `W` factorizes over
//! the three axes, so the integral is a product of 1-D integrals.

use rayon::prelude::*;

use crate::error::{CoherenceError, Result};
use crate::Complex64;

/// Convergence target for the per-axis grid doubling.
const QUADRATURE_TARGET: f64 = 1e-10;
/// Disagreement above which the quadrature is reported as failed.
const QUADRATURE_LIMIT: f64 = 1e-3;
const MAX_DOUBLINGS: u32 = 22;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrystalVolume {
    sides: [f64; 3],
}

impl CrystalVolume {
    pub fn new(lx: f64, ly: f64, lz: f64) -> Result<Self> {
        for v in [lx, ly, lz] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(CoherenceError::invalid("L", "box sides must be positive"));
            }
        }
        Ok(CrystalVolume { sides: [lx, ly, lz] })
    }

    pub fn cube(side: f64) -> Result<Self> {
        Self::new(side, side, side)
    }

    pub fn sides(&self) -> [f64; 3] {
        self.sides
    }

    pub fn volume(&self) -> f64 {
        self.sides.iter().product()
    }

    /// Same box with every side multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let [x, y, z] = self.sides;
        Self::new(x * factor, y * factor, z * factor)
    }
}

/// Statistics of the pump field as seen by the second-order polarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PumpCoherence {
    /// Deterministic plane-wave pump; the correlation has unit modulus.
    Coherent,
    /// Delta-correlated polarization with weight `|phi|^2`.
    Incoherent { strength: f64 },
    /// Gaussian field with intensity `I` and Gaussian degree of coherence of
    /// width `coherence_length`: `W(s) = 2 I^2 exp(-|s|^2 / l_c^2)`.
    GaussianSchell {
        intensity: f64,
        coherence_length: f64,
    },
}

impl PumpCoherence {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PumpCoherence::Coherent => Ok(()),
            PumpCoherence::Incoherent { strength } => {
                if strength > 0.0 && strength.is_finite() {
                    Ok(())
                } else {
                    Err(CoherenceError::invalid("incoherent_strength", "must be positive"))
                }
            }
            PumpCoherence::GaussianSchell {
                intensity,
                coherence_length,
            } => {
                if !(intensity > 0.0) || !intensity.is_finite() {
                    return Err(CoherenceError::invalid("intensity", "must be positive"));
                }
                if !(coherence_length > 0.0) || !coherence_length.is_finite() {
                    return Err(CoherenceError::invalid("coherence_length", "must be positive"));
                }
                Ok(())
            }
        }
    }
}

/// Phase mismatch `Q = 2k - q` between the pump and harmonic wavevectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MismatchVector(pub [f64; 3]);

impl MismatchVector {
    pub const ZERO: MismatchVector = MismatchVector([0.0; 3]);

    pub fn from_wavevectors(k: [f64; 3], q: [f64; 3]) -> Self {
        MismatchVector([2.0 * k[0] - q[0], 2.0 * k[1] - q[1], 2.0 * k[2] - q[2]])
    }

    pub fn negated(self) -> Self {
        MismatchVector(self.0.map(|v| -v))
    }
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// Normalized coherent phase-matching factor `(1/V) int_V exp(i Q.r) d^3r`
/// for a box centred on the origin. Real for this geometry.
pub fn phase_matching_coherent(vol: &CrystalVolume, q: MismatchVector) -> Complex64 {
    let f: f64 = vol
        .sides
        .iter()
        .zip(q.0)
        .map(|(l, qd)| sinc(0.5 * qd * l))
        .product();
    Complex64::new(f, 0.0)
}

/// Correlation weight `W(dr)` entering the phase-matching integral.
pub fn pump_correlation(pc: &PumpCoherence, dr: [f64; 3]) -> Result<f64> {
    pc.validate()?;
    match *pc {
        PumpCoherence::Coherent => Ok(1.0),
        PumpCoherence::Incoherent { .. } => Err(CoherenceError::UnsupportedQuery(
            "the incoherent correlation is a delta distribution and is integrated analytically"
                .into(),
        )),
        PumpCoherence::GaussianSchell {
            intensity,
            coherence_length,
        } => {
            let r2 = dr.iter().map(|v| v * v).sum::<f64>();
            Ok(2.0 * intensity * intensity * (-r2 / (coherence_length * coherence_length)).exp())
        }
    }
}

/// `int_{-L}^{L} (L - |s|) exp(-s^2/l^2) cos(Q s) ds` by trapezoid with
/// repeated interval doubling, accelerated by Richardson extrapolation of the
/// doubling sequence (the integrand is smooth on `[0, L]`).
fn gaussian_axis_integral(side: f64, coherence_length: f64, q: f64) -> Result<f64> {
    let f = |s: f64| {
        (side - s) * (-(s * s) / (coherence_length * coherence_length)).exp() * (q * s).cos()
    };
    let mut intervals = 64usize;
    let mut h = side / intervals as f64;
    let mut sum_interior: f64 = (1..intervals).map(|i| f(i as f64 * h)).sum();
    let mut abs_interior: f64 = (1..intervals).map(|i| f(i as f64 * h).abs()).sum();
    let ends = 0.5 * (f(0.0) + f(side));
    let abs_ends = 0.5 * (f(0.0).abs() + f(side).abs());
    let mut table = vec![h * (ends + sum_interior)];
    let mut disagreement = f64::INFINITY;
    for _ in 0..MAX_DOUBLINGS {
        let h_new = 0.5 * h;
        let (mids, abs_mids) = (0..intervals)
            .map(|i| f((2 * i + 1) as f64 * h_new))
            .fold((0.0, 0.0), |acc, v| (acc.0 + v, acc.1 + v.abs()));
        sum_interior += mids;
        abs_interior += abs_mids;
        intervals *= 2;
        h = h_new;
        let mut row = vec![h * (ends + sum_interior)];
        let mut factor = 1.0;
        for prev in &table {
            factor *= 4.0;
            let last = *row.last().unwrap();
            row.push(last + (last - prev) / (factor - 1.0));
        }
        let scale = (h * (abs_ends + abs_interior)).max(f64::MIN_POSITIVE);
        let best = *row.last().unwrap();
        disagreement = (best - table.last().unwrap()).abs() / scale;
        table = row;
        // Only trust agreement once the cosine is resolved on the grid.
        let resolved = h * q.abs() < 1.0 && intervals >= 256;
        if resolved && disagreement < QUADRATURE_TARGET {
            return Ok(2.0 * best);
        }
    }
    if disagreement > QUADRATURE_LIMIT {
        return Err(CoherenceError::Convergence { disagreement });
    }
    Ok(2.0 * table.last().unwrap())
}

/// Unnormalized second-harmonic intensity `|f(Q)|^2`.
pub fn shg_intensity(vol: &CrystalVolume, pc: &PumpCoherence, q: MismatchVector) -> Result<f64> {
    pc.validate()?;
    match *pc {
        PumpCoherence::Coherent => {
            let v = vol.volume();
            Ok(v * v * phase_matching_coherent(vol, q).norm_sqr())
        }
        PumpCoherence::Incoherent { strength } => Ok(strength * vol.volume()),
        PumpCoherence::GaussianSchell {
            intensity,
            coherence_length,
        } => {
            let mut product = 2.0 * intensity * intensity;
            for (side, qd) in vol.sides.iter().zip(q.0) {
                product *= gaussian_axis_integral(*side, coherence_length, qd)?;
            }
            Ok(product)
        }
    }
}

/// Log-log slope of the on-axis intensity between `base_vol` and the box with
/// all sides doubled.
pub fn scaling_exponent(pc: &PumpCoherence, base_vol: &CrystalVolume) -> Result<f64> {
    let small = shg_intensity(base_vol, pc, MismatchVector::ZERO)?;
    let big = shg_intensity(&base_vol.scaled(2.0)?, pc, MismatchVector::ZERO)?;
    Ok((big / small).ln() / 8f64.ln())
}

/// Intensity over a set of mismatch vectors, normalized to the phase-matched value.
pub fn emission_pattern(
    vol: &CrystalVolume,
    pc: &PumpCoherence,
    q_grid: &[MismatchVector],
) -> Result<Vec<(MismatchVector, f64)>> {
    if q_grid.is_empty() {
        return Err(CoherenceError::invalid("Q_grid", "must not be empty"));
    }
    let reference = shg_intensity(vol, pc, MismatchVector::ZERO)?;
    q_grid
        .par_iter()
        .map(|q| Ok((*q, shg_intensity(vol, pc, *q)? / reference)))
        .collect()
}
