mod support;

use coherence_core::atoms::{mirror_modified_rates, DipoleOrientation};
use coherence_core::green::chi_tensor;
use coherence_core::shg::{shg_intensity, CrystalVolume, MismatchVector, PumpCoherence};
use coherence_core::wolf::{wolf_shift, CoherenceModel, SourcePairConfig};
use coherence_core::{spectral, Position3};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn closed_form_chi_matches_finite_differences() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..20 {
        let omega = rng.random_range(0.5..3.0);
        let x = rng.random_range(0.5..20.0);
        let dir = loop {
            let v: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if n > 0.1 {
                break v.map(|c| c / n);
            }
        };
        let a: [f64; 3] = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
        let b = [0, 1, 2].map(|k| a[k] + dir[k] * x / omega);
        let chi = chi_tensor(Position3::from_array(a), Position3::from_array(b), omega).unwrap();
        let fd = support::finite_difference_chi(a, b, omega, 1e-4 / omega);
        let scale = chi.entries.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
        for i in 0..3 {
            for j in 0..3 {
                let err = (chi.entries[i][j] - fd[i][j]).norm() / scale;
                assert!(err < 1e-5, "omega r = {x}: entry ({i},{j}) off by {err:e}");
            }
        }
    }
}

#[test]
fn mirror_rates_match_image_dipole_radiation() {
    for o in [DipoleOrientation::Parallel, DipoleOrientation::Perpendicular] {
        for b in [1e-3, 0.3, 1.0, 2.5, 7.0, 100.0] {
            let lib = mirror_modified_rates(b, o, 1.0, 1.0).unwrap().rate;
            let oracle = support::image_dipole_rate(b, o.dipole(), o.image_dipole(), 1.0);
            assert!((lib - oracle).abs() < 1e-3, "{o:?} b = {b}: {lib} vs {oracle}");
        }
    }
}

#[test]
fn gaussian_schell_reduction_matches_monte_carlo() {
    let vol = CrystalVolume::cube(1.0).unwrap();
    for (l, q) in [(0.5, [0.0; 3]), (0.3, [4.0, -2.0, 1.0]), (2.0, [6.0, 0.0, 3.0])] {
        let pc = PumpCoherence::GaussianSchell {
            intensity: 0.8,
            coherence_length: l,
        };
        let lib = shg_intensity(&vol, &pc, MismatchVector(q)).unwrap();
        let (mc, se) = support::shg_monte_carlo([1.0; 3], 0.8, l, q, 1_000_000, 5);
        assert!((lib - mc).abs() < 3.0 * se, "l = {l}: {lib} vs {mc} +- {se}");
    }
}

#[test]
fn wolf_shift_matches_dense_oracle() {
    let g = spectral::UniformGrid::new(80.0, 120.0, 4001).unwrap();
    let sq = spectral::lorentzian_spectrum(100.0, 1.0, g).unwrap();
    for center in [102.0, 98.0] {
        let mu = CoherenceModel::Gaussian { center, sigma: 3.0 }.sample(g).unwrap();
        let cfg = SourcePairConfig::new(1.0, 1.0, sq.clone(), mu).unwrap();
        let shift = wolf_shift(&cfg).unwrap().peak_shift;
        let (oracle, step) = support::dense_wolf_peak_shift(center);
        assert!((shift - oracle).abs() < step, "{shift} vs {oracle}");
    }
}
