//! Far-zone spectrum of two correlated point sources and the
//! correlation-induced shift of its spectral line.
//!
//! With source spectrum `S_Q(w)`, spectral degree of coherence `mu(w)` and
//! distances `R1`, `R2` to the observation point, the observed spectrum is
//!
//! ```text
//! S_U(w) = S_Q(w) [ 1/R1^2 + 1/R2^2 + (2/(R1 R2)) Re( mu(w) exp(i w (R2 - R1)) ) ]
//! ```
//!
//! in units with `c = 1`. All overall prefactors are dropped; spectra are in
//! arbitrary units.

use std::io::Read;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{CoherenceError, Result};
use crate::spectral::{
    centroid_frequency, gaussian_profile, peak_frequency, ComplexSamples, FrequencyGrid, Spectrum,
};

/// Slack allowed on `|mu| <= 1` for values reconstructed by division.
pub const COHERENCE_BOUND_SLACK: f64 = 1e-12;

/// Two point sources with identical spectra seen from one observation point.
#[derive(Debug, Clone)]
pub struct SourcePairConfig {
    r1: f64,
    r2: f64,
    source_spectrum: Spectrum,
    mu: ComplexSamples,
}

impl SourcePairConfig {
    pub fn new(r1: f64, r2: f64, source_spectrum: Spectrum, mu: ComplexSamples) -> Result<Self> {
        if !(r1 > 0.0) || !r1.is_finite() {
            return Err(CoherenceError::invalid("R1", "distance must be positive"));
        }
        if !(r2 > 0.0) || !r2.is_finite() {
            return Err(CoherenceError::invalid("R2", "distance must be positive"));
        }
        if !source_spectrum.grid().same_as(mu.grid()) {
            return Err(CoherenceError::GridMismatch(
                "source spectrum and degree of coherence use different grids".into(),
            ));
        }
        check_coherence_bound(mu.values(), 0.0)?;
        Ok(SourcePairConfig {
            r1,
            r2,
            source_spectrum,
            mu,
        })
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    pub fn source_spectrum(&self) -> &Spectrum {
        &self.source_spectrum
    }

    pub fn mu(&self) -> &ComplexSamples {
        &self.mu
    }

    pub fn grid(&self) -> &FrequencyGrid {
        self.source_spectrum.grid()
    }
}

fn check_coherence_bound(values: &[Complex64], slack: f64) -> Result<()> {
    for (index, m) in values.iter().enumerate() {
        let magnitude = m.norm();
        if !(magnitude <= 1.0 + slack) {
            return Err(CoherenceError::CoherenceBound { index, magnitude });
        }
    }
    Ok(())
}

/// Phenomenological models for the spectral degree of coherence.
#[derive(Debug, Clone, PartialEq)]
pub enum CoherenceModel {
    /// Frequency-independent real value.
    Constant(f64),
    /// Frequency-independent complex value.
    ComplexConstant(Complex64),
    /// Real Gaussian in frequency with unit peak.
    Gaussian { center: f64, sigma: f64 },
    /// Samples read from a two-column `real,imag` table, one row per grid point.
    Tabulated(Vec<Complex64>),
}

impl CoherenceModel {
    /// Evaluates the model on `grid`.
    pub fn sample(&self, grid: FrequencyGrid) -> Result<ComplexSamples> {
        let samples = match self {
            CoherenceModel::Constant(v) => ComplexSamples::constant(grid, Complex64::new(*v, 0.0)),
            CoherenceModel::ComplexConstant(v) => ComplexSamples::constant(grid, *v),
            CoherenceModel::Gaussian { center, sigma } => gaussian_profile(*center, *sigma, grid)?,
            CoherenceModel::Tabulated(values) => ComplexSamples::new(grid, values.clone())?,
        };
        check_coherence_bound(samples.values(), 0.0)?;
        Ok(samples)
    }

    /// Reads a tabulated model. Rows are `real,imag`; `#` starts a comment line.
    pub fn read_table<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut values = Vec::new();
        for (row, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| CoherenceError::Table(e.to_string()))?;
            if record.len() != 2 {
                return Err(CoherenceError::Table(format!(
                    "row {}: expected 2 columns (real, imag), found {}",
                    row + 1,
                    record.len()
                )));
            }
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| {
                    CoherenceError::Table(format!("row {}: `{s}` is not a number", row + 1))
                })
            };
            values.push(Complex64::new(parse(&record[0])?, parse(&record[1])?));
        }
        Ok(CoherenceModel::Tabulated(values))
    }

    pub fn load_table(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)
            .map_err(|e| CoherenceError::Table(format!("{}: {e}", path.display())))?;
        Self::read_table(file)
    }
}

/// Observed far-zone spectrum of the source pair.
pub fn field_spectrum(cfg: &SourcePairConfig) -> Result<Spectrum> {
    let (r1, r2) = (cfg.r1, cfg.r2);
    let incoherent = 1.0 / (r1 * r1) + 1.0 / (r2 * r2);
    let cross = 2.0 / (r1 * r2);
    let path = r2 - r1;
    let grid = *cfg.grid();
    let values = grid
        .points()
        .zip(cfg.source_spectrum.values())
        .zip(cfg.mu.values())
        .map(|((w, &sq), &mu)| {
            let phase = Complex64::from_polar(1.0, w * path);
            let v = sq * (incoherent + cross * (mu * phase).re);
            // Cauchy-Schwarz keeps the bracket >= (1/R1 - 1/R2)^2; clamp rounding below zero.
            v.max(0.0)
        })
        .collect();
    Spectrum::new(grid, values)
}

/// Displacement of the observed line relative to the source line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftRecord {
    pub peak_shift: f64,
    pub centroid_shift: f64,
}

/// Correlation-induced shift of peak and centroid, both measured on the
/// configuration's own grid.
pub fn wolf_shift(cfg: &SourcePairConfig) -> Result<ShiftRecord> {
    let observed = field_spectrum(cfg)?;
    let source = cfg.source_spectrum();
    Ok(ShiftRecord {
        peak_shift: peak_frequency(&observed)? - peak_frequency(source)?,
        centroid_shift: centroid_frequency(&observed)? - centroid_frequency(source)?,
    })
}

/// Spectral degree of coherence from the source cross-spectral density.
pub fn coherence_from_sources(sq: &Spectrum, cross: &ComplexSamples) -> Result<ComplexSamples> {
    if !sq.grid().same_as(cross.grid()) {
        return Err(CoherenceError::GridMismatch(
            "source spectrum and cross-spectral density use different grids".into(),
        ));
    }
    let mut values = Vec::with_capacity(sq.values().len());
    for (index, (&s, &c)) in sq.values().iter().zip(cross.values()).enumerate() {
        if c == Complex64::new(0.0, 0.0) {
            values.push(c);
        } else if s > 0.0 {
            values.push(c / s);
        } else {
            return Err(CoherenceError::UndefinedCoherence { index });
        }
    }
    check_coherence_bound(&values, COHERENCE_BOUND_SLACK)?;
    ComplexSamples::new(*sq.grid(), values)
}
