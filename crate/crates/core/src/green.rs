//! Free-space dyadic Green tensor and the vacuum cross-spectral density.
//!
//! The tensor is the field at `r_A` radiated by a unit dipole at `r_B`,
//! `(w^2 delta_ij + d_i d_j) exp(i w r) / r`, where `d` differentiates with
//! respect to the separation `u = r_A - r_B`. Expanding the derivatives gives
//!
//! ```text
//! chi_ij = exp(i w r)/r [ w^2 (delta_ij - n_i n_j) + (delta_ij - 3 n_i n_j)(i w / r - 1 / r^2) ]
//! ```
//!
//! with `n = u / r`. The real part diverges like `1/r^3` at coincidence while
//! the imaginary part tends to `(2/3) w^3 delta_ij`.

use num_complex::Complex64;

use crate::error::{CoherenceError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Position3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Position3 {
    pub const ORIGIN: Position3 = Position3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Position3 { x, y, z }
    }

    pub fn from_array(v: [f64; 3]) -> Self {
        Position3::new(v[0], v[1], v[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn sub(self, other: Position3) -> [f64; 3] {
        [self.x - other.x, self.y - other.y, self.z - other.z]
    }

    pub fn distance(self, other: Position3) -> f64 {
        norm(self.sub(other))
    }
}

pub(crate) fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Value of the dyadic Green tensor for one source/field pair and frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenTensor {
    pub entries: [[Complex64; 3]; 3],
    pub separation: f64,
    pub omega: f64,
}

impl GreenTensor {
    /// Bilinear projection `a . chi . b`.
    pub fn project(&self, a: [f64; 3], b: [f64; 3]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                acc += self.entries[i][j] * (a[i] * b[j]);
            }
        }
        acc
    }

    pub fn imag(&self) -> [[f64; 3]; 3] {
        self.entries.map(|row| row.map(|c| c.im))
    }

    pub fn real(&self) -> [[f64; 3]; 3] {
        self.entries.map(|row| row.map(|c| c.re))
    }

    pub fn transpose(&self) -> GreenTensor {
        let mut t = *self;
        for i in 0..3 {
            for j in 0..3 {
                t.entries[i][j] = self.entries[j][i];
            }
        }
        t
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(CoherenceError::invalid("omega", "frequency must be positive"));
    }
    Ok(())
}

/// Closed-form Green tensor between two distinct points.
pub fn chi_tensor(r_a: Position3, r_b: Position3, omega: f64) -> Result<GreenTensor> {
    check_omega(omega)?;
    if !r_a.is_finite() || !r_b.is_finite() {
        return Err(CoherenceError::invalid("position", "components must be finite"));
    }
    let u = r_a.sub(r_b);
    let r = norm(u);
    if r == 0.0 {
        return Err(CoherenceError::Coincidence);
    }
    let n = [u[0] / r, u[1] / r, u[2] / r];
    let x = omega * r;
    let w3 = omega.powi(3);
    let (transverse, longitudinal) = radial_factors(x);
    let mut entries = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            let nn = n[i] * n[j];
            entries[i][j] = w3 * (transverse * (delta - nn) + longitudinal * (delta - 3.0 * nn));
        }
    }
    Ok(GreenTensor {
        entries,
        separation: r,
        omega,
    })
}

/// Dimensionless radial factors of the tensor at `x = omega r`:
/// `exp(ix)/x` multiplying the transverse projector and `exp(ix)(i/x^2 - 1/x^3)`
/// multiplying `delta - 3 n n`.
fn radial_factors(x: f64) -> (Complex64, Complex64) {
    let (s, c) = x.sin_cos();
    let transverse = Complex64::new(c / x, s / x);
    let long_re = -s / (x * x) - c / (x * x * x);
    let long_im = if x < 0.5 {
        // (x cos x - sin x)/x^3 cancels catastrophically near zero; sum its series instead.
        let mut acc = 0.0;
        let mut power = 1.0;
        let mut fact = 6.0; // (2k+1)! at k = 1
        let mut k = 1u32;
        loop {
            let term = 2.0 * k as f64 * power / fact;
            acc += if k % 2 == 1 { -term } else { term };
            if term < 1e-18 {
                break;
            }
            k += 1;
            power *= x * x;
            fact *= (2 * k) as f64 * (2 * k + 1) as f64;
        }
        acc
    } else {
        c / (x * x) - s / (x * x * x)
    };
    (transverse, Complex64::new(long_re, long_im))
}

/// Coincidence value of the imaginary part, `(2/3) omega^3` times the identity.
pub fn coincidence_imag(omega: f64) -> Result<[[f64; 3]; 3]> {
    check_omega(omega)?;
    let d = coincidence_diagonal(omega);
    Ok(diagonal(d))
}

fn coincidence_diagonal(omega: f64) -> f64 {
    2.0 / 3.0 * omega.powi(3)
}

fn diagonal(d: f64) -> [[f64; 3]; 3] {
    [[d, 0.0, 0.0], [0.0, d, 0.0], [0.0, 0.0, d]]
}

fn imag_part(r1: Position3, r2: Position3, omega: f64) -> Result<[[f64; 3]; 3]> {
    if r1 == r2 {
        coincidence_imag(omega)
    } else {
        Ok(chi_tensor(r1, r2, omega)?.imag())
    }
}

/// Spectral density of the vacuum field correlation, `2 Im chi` for positive
/// frequencies and identically zero otherwise.
pub fn vacuum_csd(r1: Position3, r2: Position3, omega: f64) -> Result<[[f64; 3]; 3]> {
    if !r1.is_finite() || !r2.is_finite() || omega.is_nan() {
        return Err(CoherenceError::invalid("vacuum_csd", "inputs must be finite"));
    }
    if omega <= 0.0 {
        return Ok([[0.0; 3]; 3]);
    }
    Ok(imag_part(r1, r2, omega)?.map(|row| row.map(|v| 2.0 * v)))
}

/// Imaginary part of the Green tensor relative to its coincidence value; the
/// identity at `r1 == r2`.
pub fn normalized_vacuum_coherence(
    r1: Position3,
    r2: Position3,
    omega: f64,
) -> Result<[[f64; 3]; 3]> {
    check_omega(omega)?;
    let scale = coincidence_diagonal(omega);
    Ok(imag_part(r1, r2, omega)?.map(|row| row.map(|v| v / scale)))
}
