//! Coherent and partially coherent pulses in a medium with group-velocity
//! dispersion.
//!
//! The slowly varying envelope obeys a Schrodinger-type equation whose Green
//! function is the unitary chirp kernel
//!
//! ```text
//! G(z, t; 0, t') = sqrt(i / (2 pi a)) exp(-i (t - t')^2 / (2 a)),   a = k2 z.
//! ```
//!
//! Fields propagate by one quadrature over `t'`, mean intensities of
//! fluctuating pulses by a double quadrature against the two-time input
//! correlation `<E(t') E*(t'')>`.

use std::f64::consts::PI;
use std::io::Read;
use std::path::Path;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{CoherenceError, Result};
use crate::spectral::{trapezoid, UniformGrid};
use crate::Complex64;

/// Largest correlation matrix accepted (dense storage).
pub const MAX_CORRELATION_SIZE: usize = 2048;
/// Fraction of the grid at each end that must be essentially empty.
const EDGE_FRACTION: f64 = 0.02;
const EDGE_LEVEL: f64 = 1e-6;
const PSD_JITTER: f64 = 1e-9;
const HERMITIAN_TOL: f64 = 1e-12;
const IMAG_RESIDUE_TOL: f64 = 1e-9;

/// Uniform time sampling with at least 16 points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid(UniformGrid);

impl TimeGrid {
    pub fn new(t_min: f64, t_max: f64, n: usize) -> Result<Self> {
        if n < 16 {
            return Err(CoherenceError::invalid(
                "grid_n",
                format!("time grids need at least 16 points, got {n}"),
            ));
        }
        Ok(TimeGrid(UniformGrid::new(t_min, t_max, n)?))
    }

    /// `n` points symmetric about zero spanning `[-half_span, half_span]`.
    pub fn symmetric(half_span: f64, n: usize) -> Result<Self> {
        Self::new(-half_span, half_span, n)
    }

    pub fn t_min(&self) -> f64 {
        self.0.min()
    }

    pub fn t_max(&self) -> f64 {
        self.0.max()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        self.0.step()
    }

    pub fn point(&self, i: usize) -> f64 {
        self.0.point(i)
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        self.0.points()
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.t_min() + self.t_max())
    }

    pub fn half_span(&self) -> f64 {
        0.5 * (self.t_max() - self.t_min())
    }

    pub fn as_uniform(&self) -> &UniformGrid {
        &self.0
    }

    /// Trapezoid weight of sample `i`.
    pub fn weight(&self, i: usize) -> f64 {
        if i == 0 || i + 1 == self.len() {
            0.5 * self.step()
        } else {
            self.step()
        }
    }
}

fn edge_count(n: usize) -> usize {
    ((EDGE_FRACTION * n as f64).ceil() as usize).max(1)
}

/// Largest magnitude within the edge bands relative to the overall maximum,
/// or `None` when the profile satisfies the edge rule.
fn edge_violation(magnitudes: &[f64]) -> Option<f64> {
    let max = magnitudes.iter().cloned().fold(0.0, f64::max);
    let m = edge_count(magnitudes.len());
    let n = magnitudes.len();
    let edge = magnitudes[..m]
        .iter()
        .chain(&magnitudes[n - m..])
        .cloned()
        .fold(0.0, f64::max);
    if edge > EDGE_LEVEL * max {
        Some(edge / max)
    } else {
        None
    }
}

/// Complex envelope `E(0, t)` with negligible amplitude near the grid edges.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseEnvelope {
    grid: TimeGrid,
    values: Vec<Complex64>,
}

impl PulseEnvelope {
    pub fn new(grid: TimeGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(CoherenceError::GridMismatch(format!(
                "envelope has {} samples, time grid has {}",
                values.len(),
                grid.len()
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(CoherenceError::invalid("envelope", "values must be finite"));
        }
        let mags: Vec<f64> = values.iter().map(|v| v.norm()).collect();
        if let Some(ratio) = edge_violation(&mags) {
            return Err(CoherenceError::invalid(
                "envelope",
                format!("edge amplitude is {ratio:.3e} of the peak; widen the grid"),
            ));
        }
        Ok(PulseEnvelope { grid, values })
    }

    pub fn from_fn(grid: TimeGrid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = grid.points().map(f).collect();
        Self::new(grid, values)
    }

    /// Transform-limited Gaussian `exp(-t^2 / (2 T0^2))`.
    pub fn gaussian(grid: TimeGrid, t0: f64) -> Result<Self> {
        if !(t0 > 0.0) || !t0.is_finite() {
            return Err(CoherenceError::invalid("T0", "must be positive"));
        }
        Self::from_fn(grid, |t| Complex64::new((-t * t / (2.0 * t0 * t0)).exp(), 0.0))
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn intensity(&self) -> IntensityProfile {
        IntensityProfile {
            grid: self.grid,
            values: self.values.iter().map(|v| v.norm_sqr()).collect(),
        }
    }

    pub fn energy(&self) -> f64 {
        self.intensity().energy()
    }
}

/// Dense two-time correlation `C[i][j] = <E(t_i) E*(t_j)>`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct InputCorrelation {
    grid: TimeGrid,
    matrix: Vec<Complex64>,
}

impl InputCorrelation {
    /// Validates Hermiticity, a real nonnegative diagonal and positive
    /// semidefiniteness (Cholesky factorization after a tiny diagonal shift).
    pub fn new(grid: TimeGrid, matrix: Vec<Complex64>) -> Result<Self> {
        let n = grid.len();
        if n > MAX_CORRELATION_SIZE {
            return Err(CoherenceError::InvalidCorrelation(format!(
                "{n} points exceeds the dense limit of {MAX_CORRELATION_SIZE}"
            )));
        }
        if matrix.len() != n * n {
            return Err(CoherenceError::GridMismatch(format!(
                "correlation has {} entries, expected {n}x{n}",
                matrix.len()
            )));
        }
        if matrix.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(CoherenceError::InvalidCorrelation("entries must be finite".into()));
        }
        let scale = matrix.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let tol = HERMITIAN_TOL * scale;
        for i in 0..n {
            let d = matrix[i * n + i];
            if d.im.abs() > tol || d.re < 0.0 {
                return Err(CoherenceError::InvalidCorrelation(format!(
                    "diagonal entry {i} is {d}, must be real and nonnegative"
                )));
            }
            for j in i + 1..n {
                if (matrix[i * n + j] - matrix[j * n + i].conj()).norm() > tol {
                    return Err(CoherenceError::InvalidCorrelation(format!(
                        "not Hermitian at ({i}, {j})"
                    )));
                }
            }
        }
        let max_diag = (0..n).map(|i| matrix[i * n + i].re).fold(0.0, f64::max);
        let jitter = PSD_JITTER * max_diag.max(f64::MIN_POSITIVE);
        let shifted = DMatrix::from_fn(n, n, |i, j| {
            let v = matrix[i * n + j];
            if i == j {
                v + jitter
            } else {
                v
            }
        });
        // The complex factorization never fails outright (every complex number
        // has a square root); a negative pivot shows up as an imaginary diagonal.
        let definite = nalgebra::Cholesky::new(shifted).is_some_and(|c| {
            let l = c.l_dirty();
            (0..n).all(|i| {
                let d = l[(i, i)];
                d.re > 0.0 && d.im.abs() <= 1e-8 * d.re
            })
        });
        if !definite {
            return Err(CoherenceError::InvalidCorrelation(
                "matrix is not positive semidefinite".into(),
            ));
        }
        Ok(InputCorrelation { grid, matrix })
    }

    /// Fully coherent correlation `E_i E_j*` of a deterministic envelope.
    pub fn factorized(envelope: &PulseEnvelope) -> Self {
        let e = envelope.values();
        let n = e.len();
        let mut matrix = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                matrix.push(e[i] * e[j].conj());
            }
        }
        InputCorrelation {
            grid: *envelope.grid(),
            matrix,
        }
    }

    /// Reads `n` rows of `2n` interleaved real/imaginary columns.
    pub fn read_csv<R: Read>(grid: TimeGrid, reader: R) -> Result<Self> {
        let n = grid.len();
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut matrix = Vec::with_capacity(n * n);
        let mut rows = 0;
        for (row, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| CoherenceError::Table(e.to_string()))?;
            if record.len() != 2 * n {
                return Err(CoherenceError::Table(format!(
                    "row {}: expected {} columns, found {}",
                    row + 1,
                    2 * n,
                    record.len()
                )));
            }
            let mut parsed = Vec::with_capacity(2 * n);
            for field in record.iter() {
                parsed.push(field.parse::<f64>().map_err(|_| {
                    CoherenceError::Table(format!("row {}: `{field}` is not a number", row + 1))
                })?);
            }
            matrix.extend(parsed.chunks(2).map(|p| Complex64::new(p[0], p[1])));
            rows += 1;
        }
        if rows != n {
            return Err(CoherenceError::Table(format!(
                "expected {n} rows to match the time grid, found {rows}"
            )));
        }
        Self::new(grid, matrix)
    }

    pub fn load_csv(grid: TimeGrid, path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)
            .map_err(|e| CoherenceError::Table(format!("{}: {e}", path.display())))?;
        Self::read_csv(grid, file)
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[i * self.grid.len() + j]
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        let n = self.grid.len();
        &self.matrix[i * n..(i + 1) * n]
    }

    /// Mean input intensity `C[i][i]`.
    pub fn diagonal(&self) -> IntensityProfile {
        IntensityProfile {
            grid: self.grid,
            values: (0..self.grid.len()).map(|i| self.entry(i, i).re).collect(),
        }
    }
}

/// Gaussian Schell-model pulse with intensity RMS width `T0` and Gaussian
/// degree of coherence of width `tc`.
pub fn gaussian_schell_correlation(t0: f64, tc: f64, grid: TimeGrid) -> Result<InputCorrelation> {
    if !(t0 > 0.0) || !t0.is_finite() {
        return Err(CoherenceError::invalid("T0", "must be positive"));
    }
    if !(tc > 0.0) || !tc.is_finite() {
        return Err(CoherenceError::invalid("tc", "must be positive"));
    }
    let n = grid.len();
    if n > MAX_CORRELATION_SIZE {
        return Err(CoherenceError::InvalidCorrelation(format!(
            "{n} points exceeds the dense limit of {MAX_CORRELATION_SIZE}"
        )));
    }
    let t: Vec<f64> = grid.points().collect();
    let mut matrix = Vec::with_capacity(n * n);
    for &ti in &t {
        for &tj in &t {
            let envelope = (-(ti * ti + tj * tj) / (4.0 * t0 * t0)).exp();
            let dt = ti - tj;
            matrix.push(Complex64::new(envelope * (-dt * dt / (2.0 * tc * tc)).exp(), 0.0));
        }
    }
    Ok(InputCorrelation { grid, matrix })
}

/// Group-velocity dispersion `k2` and propagation distance `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionConfig {
    pub k2: f64,
    pub z: f64,
}

impl DispersionConfig {
    pub fn new(k2: f64, z: f64) -> Result<Self> {
        if !k2.is_finite() {
            return Err(CoherenceError::invalid("k2", "must be finite"));
        }
        if !z.is_finite() || z < 0.0 {
            return Err(CoherenceError::invalid("z", "must be finite and nonnegative"));
        }
        Ok(DispersionConfig { k2, z })
    }

    /// Accumulated dispersion `k2 z`.
    pub fn dispersion(&self) -> f64 {
        self.k2 * self.z
    }

    /// No propagation or no dispersion: the kernel is the identity.
    pub fn is_identity(&self) -> bool {
        self.dispersion() == 0.0
    }
}

fn kernel_prefactor(a: f64) -> Complex64 {
    (Complex64::i() / (2.0 * PI * a)).sqrt()
}

fn kernel(prefactor: Complex64, a: f64, t: f64, tp: f64) -> Complex64 {
    let d = t - tp;
    prefactor * Complex64::from_polar(1.0, -d * d / (2.0 * a))
}

/// Dispersion kernel `G(z, t; 0, t')`.
pub fn greens_function(cfg: &DispersionConfig, t: f64, tp: f64) -> Result<Complex64> {
    if cfg.is_identity() {
        return Err(CoherenceError::invalid(
            "z",
            "zero accumulated dispersion gives a delta kernel; propagate directly instead",
        ));
    }
    let a = cfg.dispersion();
    Ok(kernel(kernel_prefactor(a), a, t, tp))
}

/// Intensity RMS width and RMS angular bandwidth of a pulse, from its mean
/// intensity and nearest-neighbour correlations `C[i+1][i]`.
fn duration_and_bandwidth(
    grid: &TimeGrid,
    diag: impl Fn(usize) -> f64,
    sub: impl Fn(usize) -> Complex64,
) -> Option<(f64, f64)> {
    let n = grid.len();
    let dt = grid.step();
    let intensity: Vec<f64> = (0..n).map(&diag).collect();
    let profile = IntensityProfile {
        grid: *grid,
        values: intensity,
    };
    let sigma = profile.rms_width().ok()?;
    let total: f64 = profile.values.iter().sum();
    // sum |E_{i+1} - E_i|^2 / dt^2 relative to sum |E_i|^2
    let derivative: f64 = (0..n - 1)
        .map(|i| profile.values[i + 1] - 2.0 * sub(i).re + profile.values[i])
        .sum::<f64>()
        / (dt * dt);
    Some((sigma, (derivative / total).max(0.0).sqrt()))
}

/// Output sampling wide enough to contain the dispersed pulse: the input span
/// scaled by `1 + |a| w_rms / sigma_t`, capped where the sampled kernel would alias.
fn output_grid(input: &TimeGrid, a: f64, spread: Option<(f64, f64)>) -> Result<TimeGrid> {
    let factor = match spread {
        Some((sigma, bandwidth)) if sigma > 0.0 => 1.0 + a.abs() * bandwidth / sigma,
        Some(_) => f64::INFINITY,
        None => 1.0,
    };
    let cap = PI * a.abs() / input.step();
    let half = (factor * input.half_span()).min(cap);
    let c = input.center();
    TimeGrid::new(c - half, c + half, input.len())
}

/// Propagated field on an automatically widened output grid.
pub fn propagate_coherent(e0: &PulseEnvelope, cfg: &DispersionConfig) -> Result<PulseEnvelope> {
    if cfg.is_identity() {
        return Ok(e0.clone());
    }
    let a = cfg.dispersion();
    let grid = e0.grid();
    let e = e0.values();
    let spread = duration_and_bandwidth(grid, |i| e[i].norm_sqr(), |i| e[i + 1] * e[i].conj());
    let out = output_grid(grid, a, spread)?;
    let pre = kernel_prefactor(a);
    let inputs: Vec<(f64, Complex64)> = (0..grid.len())
        .map(|k| (grid.point(k), e[k] * grid.weight(k)))
        .collect();
    let values: Vec<Complex64> = (0..out.len())
        .into_par_iter()
        .map(|i| {
            let t = out.point(i);
            inputs
                .iter()
                .map(|&(tk, wk)| kernel(pre, a, t, tk) * wk)
                .sum()
        })
        .collect();
    let mags: Vec<f64> = values.iter().map(|v| v.norm()).collect();
    if let Some(ratio) = edge_violation(&mags) {
        return Err(CoherenceError::GridTooNarrow(format!(
            "propagated edge amplitude is {ratio:.3e} of the peak"
        )));
    }
    Ok(PulseEnvelope { grid: out, values })
}

/// Mean intensity sampled on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityProfile {
    grid: TimeGrid,
    values: Vec<f64>,
}

impl IntensityProfile {
    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn energy(&self) -> f64 {
        trapezoid(&self.values, self.grid.step())
    }

    pub fn centroid(&self) -> Result<f64> {
        let e = self.energy();
        if !(e > 0.0) {
            return Err(CoherenceError::DegenerateSpectrum("zero total intensity".into()));
        }
        let m: Vec<f64> = self.grid.points().zip(&self.values).map(|(t, v)| t * v).collect();
        Ok(trapezoid(&m, self.grid.step()) / e)
    }

    /// RMS width about the centroid.
    pub fn rms_width(&self) -> Result<f64> {
        let c = self.centroid()?;
        let m: Vec<f64> = self
            .grid
            .points()
            .zip(&self.values)
            .map(|(t, v)| (t - c) * (t - c) * v)
            .collect();
        Ok((trapezoid(&m, self.grid.step()) / self.energy()).max(0.0).sqrt())
    }
}

/// Mean output intensity of a fluctuating pulse.
pub fn propagate_intensity(
    corr: &InputCorrelation,
    cfg: &DispersionConfig,
) -> Result<IntensityProfile> {
    if cfg.is_identity() {
        return Ok(corr.diagonal());
    }
    let a = cfg.dispersion();
    let grid = corr.grid();
    let n = grid.len();
    let spread = duration_and_bandwidth(grid, |i| corr.entry(i, i).re, |i| corr.entry(i + 1, i));
    let out = output_grid(grid, a, spread)?;
    let pre = kernel_prefactor(a);
    let input_times: Vec<f64> = grid.points().collect();
    let sums: Vec<Complex64> = (0..out.len())
        .into_par_iter()
        .map(|i| {
            let t = out.point(i);
            let g: Vec<Complex64> = (0..n)
                .map(|k| kernel(pre, a, t, input_times[k]) * grid.weight(k))
                .collect();
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, gk) in g.iter().enumerate() {
                let row = corr.row(k);
                let s: Complex64 = row.iter().zip(&g).map(|(c, gj)| c * gj.conj()).sum();
                acc += gk * s;
            }
            acc
        })
        .collect();
    let max = sums.iter().map(|v| v.re.abs()).fold(0.0, f64::max);
    let residue = sums.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    if residue > IMAG_RESIDUE_TOL * max {
        return Err(CoherenceError::NumericalDegeneracy(format!(
            "imaginary residue {residue:.3e} relative to peak {max:.3e}"
        )));
    }
    Ok(IntensityProfile {
        grid: out,
        values: sums.iter().map(|v| v.re).collect(),
    })
}

/// RMS width of the propagated mean intensity.
pub fn output_width(corr: &InputCorrelation, cfg: &DispersionConfig) -> Result<f64> {
    propagate_intensity(corr, cfg)?.rms_width()
}
