//! Independent reference computations shared by the oracle and acceptance tests.
//! None of these call into the library's numerical kernels.

#![allow(dead_code)]

use std::f64::consts::PI;

use coherence_core::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn scalar_green(a: [f64; 3], b: [f64; 3], omega: f64) -> Complex64 {
    let r = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt();
    Complex64::from_polar(1.0 / r, omega * r)
}

/// `omega^2 delta_ij f - d/dA_i d/dB_j f` for `f = exp(i omega r) / r`, with
/// the mixed derivatives taken by central differences of step `h`.
pub fn finite_difference_chi(a: [f64; 3], b: [f64; 3], omega: f64, h: f64) -> [[Complex64; 3]; 3] {
    let f0 = scalar_green(a, b, omega);
    let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let shifted = |sa: f64, sb: f64| {
                let mut pa = a;
                let mut pb = b;
                pa[i] += sa * h;
                pb[j] += sb * h;
                scalar_green(pa, pb, omega)
            };
            let mixed = (shifted(1.0, 1.0) - shifted(1.0, -1.0) - shifted(-1.0, 1.0)
                + shifted(-1.0, -1.0))
                / (4.0 * h * h);
            let diag = if i == j { f0 * omega * omega } else { Complex64::new(0.0, 0.0) };
            out[i][j] = diag - mixed;
        }
    }
    out
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Decay rate relative to free space of dipole `d` at height `b` above a
/// perfect mirror, from the far-zone power of the dipole and its image
/// `d_image` at `-b`. The pair radiates symmetrically, so the physical
/// half-space power is half the full-sphere power of the pair.
pub fn image_dipole_rate(b: f64, d: [f64; 3], d_image: [f64; 3], omega: f64) -> f64 {
    let (nu, nphi) = (8000usize, 64usize);
    let mut total = 0.0;
    for iu in 0..nu {
        let u = -1.0 + (iu as f64 + 0.5) * 2.0 / nu as f64;
        let s = (1.0 - u * u).sqrt();
        // relative phase exp(-i k n.(r1 - r2)), r1 - r2 = 2b z
        let phase = Complex64::from_polar(1.0, -2.0 * omega * b * u);
        for ip in 0..nphi {
            let phi = (ip as f64 + 0.5) * 2.0 * PI / nphi as f64;
            let n = [s * phi.cos(), s * phi.sin(), u];
            let p1 = cross(n, d);
            let p2 = cross(n, d_image);
            let mut sq = 0.0;
            for k in 0..3 {
                sq += (p2[k] + phase * p1[k]).norm_sqr();
            }
            total += sq;
        }
    }
    let solid_angle = total * (2.0 / nu as f64) * (2.0 * PI / nphi as f64);
    0.5 * solid_angle / (8.0 * PI / 3.0)
}

/// Six-dimensional Monte Carlo estimate of
/// `int_V int_V 2 I^2 exp(-|r'-r''|^2/l^2) cos(Q.(r'-r'')) d^3r' d^3r''`.
/// Returns the estimate and its standard error.
pub fn shg_monte_carlo(
    sides: [f64; 3],
    intensity: f64,
    coherence_length: f64,
    q: [f64; 3],
    samples: usize,
    seed: u64,
) -> (f64, f64) {
    let mut rng = StdRng::seed_from_u64(seed);
    let v: f64 = sides.iter().product();
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..samples {
        let mut r2 = 0.0;
        let mut phase = 0.0;
        for d in 0..3 {
            let s = (rng.random::<f64>() - rng.random::<f64>()) * sides[d];
            r2 += s * s;
            phase += q[d] * s;
        }
        let x = 2.0 * intensity * intensity * (-r2 / (coherence_length * coherence_length)).exp()
            * phase.cos();
        sum += x;
        sum_sq += x * x;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean) * n / (n - 1.0);
    (v * v * mean, v * v * (var / n).sqrt())
}

/// Peak displacement of `S_Q (2 + 2 mu)` for a unit Lorentzian at 100 and a
/// Gaussian coherence of width 3, by argmax over a million points on [80, 120].
pub fn dense_wolf_peak_shift(mu_center: f64) -> (f64, f64) {
    let n = 1_000_000usize;
    let step = 40.0 / (n - 1) as f64;
    let mut best = (f64::MIN, 0.0);
    for i in 0..n {
        let w = 80.0 + i as f64 * step;
        let line = 1.0 / PI / ((w - 100.0).powi(2) + 1.0);
        let mu = (-(w - mu_center).powi(2) / 18.0).exp();
        let v = line * (2.0 + 2.0 * mu);
        if v > best.0 {
            best = (v, w);
        }
    }
    (best.1 - 100.0, step)
}

/// Intensity RMS width of the dispersed Gaussian field `exp(-t^2 / (2 T0^2))`
/// after accumulated dispersion `a`, from the closed-form Gaussian integral.
pub fn coherent_gaussian_width(t0: f64, a: f64) -> f64 {
    t0 / 2f64.sqrt() * (1.0 + (a / (t0 * t0)).powi(2)).sqrt()
}

/// Intensity RMS width of a dispersed Gaussian Schell-model pulse with input
/// intensity RMS `t0` and coherence time `tc`.
pub fn gaussian_schell_width(t0: f64, tc: f64, a: f64) -> f64 {
    (t0 * t0 + a * a * (1.0 / (4.0 * t0 * t0) + 1.0 / (tc * tc))).sqrt()
}
