//! Shared numeric substrate: uniform grids, canonical line shapes, trapezoid
//! quadrature and spectral-feature extraction.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{CoherenceError, Result};

/// Uniformly spaced samples `min + i * step`, `i = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    min: f64,
    max: f64,
    n: usize,
}

/// Angular-frequency sampling domain.
pub type FrequencyGrid = UniformGrid;

impl UniformGrid {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() {
            return Err(CoherenceError::invalid("grid", "bounds must be finite"));
        }
        if max <= min {
            return Err(CoherenceError::invalid(
                "grid",
                format!("max ({max}) must exceed min ({min})"),
            ));
        }
        if n < 3 {
            return Err(CoherenceError::invalid(
                "grid",
                format!("need at least 3 points, got {n}"),
            ));
        }
        Ok(UniformGrid { min, max, n })
    }

    /// Grid of `n` points centred on `center` with total span `span`.
    pub fn centered(center: f64, span: f64, n: usize) -> Result<Self> {
        Self::new(center - 0.5 * span, center + 0.5 * span, n)
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.n - 1) as f64
    }

    /// Sample `i`. The last point is returned as `max` exactly.
    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.max
        } else {
            self.min + i as f64 * self.step()
        }
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.point(i))
    }

    /// Index of the sample closest to `x`, if `x` lies within the grid.
    pub fn nearest_index(&self, x: f64) -> Option<usize> {
        if x < self.min || x > self.max {
            return None;
        }
        let i = ((x - self.min) / self.step()).round() as usize;
        Some(i.min(self.n - 1))
    }

    pub fn same_as(&self, other: &UniformGrid) -> bool {
        self.n == other.n && self.min == other.min && self.max == other.max
    }
}

/// Nonnegative real power density sampled on a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    grid: FrequencyGrid,
    values: Vec<f64>,
}

impl Spectrum {
    pub fn new(grid: FrequencyGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(CoherenceError::GridMismatch(format!(
                "{} values for a {}-point grid",
                values.len(),
                grid.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(CoherenceError::invalid(
                "spectrum",
                format!("value {} at index {i} is negative or not finite", values[i]),
            ));
        }
        Ok(Spectrum { grid, values })
    }

    /// Builds a spectrum by sampling `f` on every grid point.
    pub fn from_fn(grid: FrequencyGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.points().map(f).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Multiplies every value by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) {
            return Err(CoherenceError::invalid("factor", "must be positive"));
        }
        Ok(Spectrum {
            grid: self.grid,
            values: self.values.iter().map(|v| v * factor).collect(),
        })
    }

    pub fn total_power(&self) -> f64 {
        trapezoid(&self.values, self.grid.step())
    }
}

/// Complex samples on a frequency or time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSamples {
    grid: UniformGrid,
    values: Vec<Complex64>,
}

impl ComplexSamples {
    pub fn new(grid: UniformGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(CoherenceError::GridMismatch(format!(
                "{} values for a {}-point grid",
                values.len(),
                grid.len()
            )));
        }
        Ok(ComplexSamples { grid, values })
    }

    pub fn from_fn(grid: UniformGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.points().map(f).collect();
        ComplexSamples { grid, values }
    }

    pub fn constant(grid: UniformGrid, value: Complex64) -> Self {
        ComplexSamples {
            grid,
            values: vec![value; grid.len()],
        }
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// Composite trapezoid rule for uniformly spaced samples.
pub fn trapezoid(values: &[f64], step: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => {
            let interior: f64 = values[1..n - 1].iter().sum();
            step * (interior + 0.5 * (values[0] + values[n - 1]))
        }
    }
}

/// Composite trapezoid rule applied to `f` on `grid`.
pub fn trapezoid_fn(grid: &UniformGrid, f: impl Fn(f64) -> f64) -> f64 {
    let values: Vec<f64> = grid.points().map(f).collect();
    trapezoid(&values, grid.step())
}

/// Normalized Lorentzian line `(gamma/pi) / ((omega - omega0)^2 + gamma^2)`.
pub fn lorentzian(omega: f64, omega0: f64, gamma: f64) -> f64 {
    let d = omega - omega0;
    (gamma / PI) / (d * d + gamma * gamma)
}

/// Lorentzian emission line of half-width `gamma` centred at `omega0`.
pub fn lorentzian_spectrum(omega0: f64, gamma: f64, grid: FrequencyGrid) -> Result<Spectrum> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(CoherenceError::invalid("gamma", "half-width must be positive"));
    }
    Spectrum::from_fn(grid, |w| lorentzian(w, omega0, gamma))
}

/// Real Gaussian `exp(-(omega - center)^2 / (2 sigma^2))` stored as complex samples.
pub fn gaussian_profile(center: f64, sigma: f64, grid: FrequencyGrid) -> Result<ComplexSamples> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(CoherenceError::invalid("sigma", "width must be positive"));
    }
    Ok(ComplexSamples::from_fn(grid, |w| {
        let x = (w - center) / sigma;
        Complex64::new((-0.5 * x * x).exp(), 0.0)
    }))
}

/// Location of the spectral maximum, refined by a parabola through the three
/// samples bracketing the discrete argmax.
pub fn peak_frequency(s: &Spectrum) -> Result<f64> {
    let v = s.values();
    let (mut k, mut best) = (0usize, v[0]);
    for (i, &x) in v.iter().enumerate().skip(1) {
        if x > best {
            best = x;
            k = i;
        }
    }
    if v.iter().all(|&x| x == best) {
        return Err(CoherenceError::NoStrictMaximum);
    }
    if k == 0 || k + 1 == v.len() {
        return Err(CoherenceError::BoundaryPeak { index: k });
    }
    let (y0, y1, y2) = (v[k - 1], v[k], v[k + 1]);
    // k is the first maximal index, so y1 > y0 already; a tie on the right is a plateau.
    if y2 == y1 {
        return Err(CoherenceError::NoStrictMaximum);
    }
    let curvature = y0 - 2.0 * y1 + y2;
    let offset = 0.5 * (y0 - y2) / curvature;
    let g = s.grid();
    Ok(g.point(k) + offset * g.step())
}

/// Power-weighted mean frequency by trapezoid quadrature.
pub fn centroid_frequency(s: &Spectrum) -> Result<f64> {
    let g = s.grid();
    let power = s.total_power();
    if !(power > 0.0) {
        return Err(CoherenceError::DegenerateSpectrum(
            "total power is zero".to_string(),
        ));
    }
    let weighted: Vec<f64> = g
        .points()
        .zip(s.values())
        .map(|(w, v)| w * v)
        .collect();
    Ok(trapezoid(&weighted, g.step()) / power)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn grid_rejects_bad_shapes() {
        assert!(UniformGrid::new(0.0, 1.0, 2).is_err());
        assert!(UniformGrid::new(1.0, 1.0, 10).is_err());
        assert!(UniformGrid::new(0.0, f64::INFINITY, 10).is_err());
        let g = UniformGrid::new(-1.0, 1.0, 5).unwrap();
        assert_eq!(g.step(), 0.5);
        assert_eq!(g.point(4), 1.0);
        assert_eq!(g.nearest_index(0.26), Some(3));
        assert_eq!(g.nearest_index(1.5), None);
    }

    #[test]
    fn lorentzian_peak_and_half_width() {
        let g = UniformGrid::new(-3.0, 3.0, 7).unwrap();
        let s = lorentzian_spectrum(0.0, 1.0, g).unwrap();
        assert_abs_diff_eq!(s.values()[3], 1.0 / PI, epsilon = 1e-15);
        assert_abs_diff_eq!(s.values()[2], 0.5 / PI, epsilon = 1e-15);
        assert_abs_diff_eq!(s.values()[4], 0.5 / PI, epsilon = 1e-15);
        assert!(lorentzian_spectrum(0.0, 0.0, g).is_err());
        assert!(lorentzian_spectrum(0.0, -1.0, g).is_err());
    }

    #[test]
    fn lorentzian_integrates_to_one_up_to_tails() {
        let g = UniformGrid::new(-200.0, 200.0, 100_000).unwrap();
        let s = lorentzian_spectrum(0.0, 1.0, g).unwrap();
        let total = s.total_power();
        // Closed-form truncated mass: (2/pi) atan(200).
        assert_abs_diff_eq!(total, 2.0 / PI * 200f64.atan(), epsilon = 1e-6);
        assert!((total - 1.0).abs() < 1e-2);
    }

    #[test]
    fn gaussian_profile_values() {
        let g = UniformGrid::new(-4.0, 4.0, 9).unwrap();
        let p = gaussian_profile(0.0, 1.0, g).unwrap();
        assert_eq!(p.values()[4], Complex64::new(1.0, 0.0));
        assert_abs_diff_eq!(p.values()[5].re, (-0.5f64).exp(), epsilon = 1e-15);
        for i in 0..9 {
            assert_eq!(p.values()[i], p.values()[8 - i]);
            assert_eq!(p.values()[i].im, 0.0);
        }
        assert!(gaussian_profile(0.0, 0.0, g).is_err());
    }

    #[test]
    fn peak_of_lorentzian() {
        let g = UniformGrid::new(0.0, 10.0, 2001).unwrap();
        let s = lorentzian_spectrum(5.0, 0.5, g).unwrap();
        let p = peak_frequency(&s).unwrap();
        assert!((p - 5.0).abs() < 0.5 * g.step());
    }

    #[test]
    fn flat_and_boundary_spectra_are_rejected() {
        let g = UniformGrid::new(0.0, 1.0, 11).unwrap();
        let flat = Spectrum::new(g, vec![2.0; 11]).unwrap();
        assert_eq!(peak_frequency(&flat), Err(CoherenceError::NoStrictMaximum));
        let ramp = Spectrum::from_fn(g, |w| w).unwrap();
        assert_eq!(
            peak_frequency(&ramp),
            Err(CoherenceError::BoundaryPeak { index: 10 })
        );
        let zero = Spectrum::new(g, vec![0.0; 11]).unwrap();
        assert!(matches!(
            centroid_frequency(&zero),
            Err(CoherenceError::DegenerateSpectrum(_))
        ));
    }

    #[test]
    fn peak_of_tilted_lorentzian_matches_dense_argmax() {
        let tilted = |w: f64| lorentzian(w, 5.0, 0.5) * (1.0 + 0.01 * w);
        // Oracle: plain argmax on 10^6 points.
        let dense = UniformGrid::new(0.0, 10.0, 1_000_000).unwrap();
        let (mut best, mut at) = (f64::MIN, 0.0);
        for w in dense.points() {
            let v = tilted(w);
            if v > best {
                best = v;
                at = w;
            }
        }
        assert!(at > 5.0);
        let g = UniformGrid::new(0.0, 10.0, 2001).unwrap();
        let p = peak_frequency(&Spectrum::from_fn(g, tilted).unwrap()).unwrap();
        assert!(p > 5.0);
        assert!((p - at).abs() < 2.0 * dense.step(), "{p} vs {at}");
    }

    #[test]
    fn centroid_of_symmetric_and_delta_spectra() {
        let g = UniformGrid::new(90.0, 110.0, 4001).unwrap();
        let s = lorentzian_spectrum(100.0, 1.0, g).unwrap();
        assert!((centroid_frequency(&s).unwrap() - 100.0).abs() < 1e-10 * 100.0);

        let mut v = vec![0.0; 4001];
        v[1234] = 3.0;
        let delta = Spectrum::new(g, v).unwrap();
        assert_abs_diff_eq!(centroid_frequency(&delta).unwrap(), g.point(1234), epsilon = 1e-9);
    }

    #[test]
    fn centroid_of_truncated_lorentzian_matches_refined_quadrature() {
        let line = |w: f64| lorentzian(w, 0.0, 1.0);
        let fine = UniformGrid::new(-5.0, 20.0, 1_000_000).unwrap();
        let oracle =
            trapezoid_fn(&fine, |w| w * line(w)) / trapezoid_fn(&fine, line);
        let g = UniformGrid::new(-5.0, 20.0, 25_001).unwrap();
        let c = centroid_frequency(&Spectrum::from_fn(g, line).unwrap()).unwrap();
        assert!(c > 0.1);
        assert!((c - oracle).abs() < 1e-6, "{c} vs {oracle}");
    }

    #[test]
    fn negative_values_are_rejected() {
        let g = UniformGrid::new(0.0, 1.0, 3).unwrap();
        assert!(Spectrum::new(g, vec![0.0, -1e-3, 1.0]).is_err());
        assert!(Spectrum::new(g, vec![0.0, 1.0]).is_err());
    }

    proptest! {
        #[test]
        fn peak_is_scale_invariant(scale in 1e-6f64..1e6, w0 in 3.0f64..7.0, gamma in 0.2f64..1.5) {
            let g = UniformGrid::new(0.0, 10.0, 1001).unwrap();
            let s = lorentzian_spectrum(w0, gamma, g).unwrap();
            let a = peak_frequency(&s).unwrap();
            let b = peak_frequency(&s.scaled(scale).unwrap()).unwrap();
            prop_assert!((a - b).abs() < 1e-9);
        }

        #[test]
        fn centroid_is_shift_covariant(shift in -50.0f64..50.0, w0 in -2.0f64..2.0) {
            let g = UniformGrid::new(-10.0, 10.0, 2001).unwrap();
            let gs = UniformGrid::new(-10.0 + shift, 10.0 + shift, 2001).unwrap();
            let a = centroid_frequency(&lorentzian_spectrum(w0, 1.0, g).unwrap()).unwrap();
            let b = centroid_frequency(&lorentzian_spectrum(w0 + shift, 1.0, gs).unwrap()).unwrap();
            prop_assert!((b - a - shift).abs() < 1e-9);
        }

        #[test]
        fn lorentzian_is_positive_and_peaks_near_center(w0 in 1.0f64..9.0, gamma in 0.05f64..2.0) {
            let g = UniformGrid::new(0.0, 10.0, 501).unwrap();
            let s2 = lorentzian_spectrum(w0, gamma, g).unwrap();
            prop_assert!(s2.values().iter().all(|v| *v > 0.0));
            let argmax = s2.values().iter().enumerate()
                .max_by(|a, b| a.1.partial_cmp(b.1).unwrap()).unwrap().0;
            prop_assert_eq!(Some(argmax), g.nearest_index(w0));
        }
    }
}
