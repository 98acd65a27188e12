//! Dispatch from a validated configuration to the physics modules.

use std::path::{Path, PathBuf};

use coherence_core::atoms::{
    collective_params, excitation_scan, mirror_modified_rates, AtomPairConfig, CollectiveParams,
    DipoleOrientation, DrivenConfig,
};
use coherence_core::green::normalized_vacuum_coherence;
use coherence_core::pulse::{
    gaussian_schell_correlation, propagate_coherent, propagate_intensity, DispersionConfig,
    PulseEnvelope, TimeGrid,
};
use coherence_core::shg::{
    emission_pattern, scaling_exponent, shg_intensity, CrystalVolume, MismatchVector, PumpCoherence,
};
use coherence_core::spectral::{lorentzian_spectrum, UniformGrid};
use coherence_core::wolf::{field_spectrum, wolf_shift, CoherenceModel, SourcePairConfig};
use coherence_core::{Complex64, Position3};

use crate::config::{Scenario, ScenarioConfig};
use crate::error::CliError;

/// Named table of real-valued rows, ordered by the first column.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub name: String,
    pub column_names: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl ResultTable {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        ResultTable {
            name: name.to_string(),
            column_names: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.column_names.len(), "row arity must match the header");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_names.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

/// Runs one scenario, resolving relative table paths against the working directory.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<Vec<ResultTable>, CliError> {
    run_scenario_in(cfg, Path::new("."))
}

/// Runs one scenario. Relative paths inside the configuration (tabulated
/// coherence) are resolved against `base_dir`.
pub fn run_scenario_in(cfg: &ScenarioConfig, base_dir: &Path) -> Result<Vec<ResultTable>, CliError> {
    match cfg.scenario {
        Scenario::Wolf => run_wolf(cfg, base_dir),
        Scenario::Vacuum => run_vacuum(cfg),
        Scenario::Atoms => run_atoms(cfg),
        Scenario::Mirror => run_mirror(cfg),
        Scenario::Shg => run_shg(cfg),
        Scenario::Pulse => run_pulse(cfg),
    }
}

/// `n` evenly spaced values on `[lo, hi]`, endpoint exact.
fn linspace(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, CliError> {
    if n < 2 || !(hi > lo) {
        return Err(CliError::Validation(vec![format!(
            "sweep needs at least 2 points and an increasing range, got [{lo}, {hi}] x {n}"
        )]));
    }
    Ok((0..n)
        .map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
        .collect())
}

fn run_wolf(cfg: &ScenarioConfig, base_dir: &Path) -> Result<Vec<ResultTable>, CliError> {
    let go = || -> Body<_> {
        let grid = UniformGrid::new(cfg.number("grid_min")?, cfg.number("grid_max")?, cfg.count("grid_n")?)?;
        let sq = lorentzian_spectrum(cfg.number("omega0")?, cfg.number("gamma")?, grid)?;
        let model = match cfg.text("mu_model")? {
            "constant" => CoherenceModel::Constant(cfg.number("mu_value")?),
            "complex" => CoherenceModel::ComplexConstant(Complex64::new(cfg.number("mu_re")?, cfg.number("mu_im")?)),
            "gaussian" => CoherenceModel::Gaussian {
                center: cfg.number("mu_center")?,
                sigma: cfg.number("mu_sigma")?,
            },
            _ => {
                let path = PathBuf::from(cfg.text("mu_table")?);
                let path = if path.is_relative() { base_dir.join(path) } else { path };
                CoherenceModel::load_table(&path)?
            }
        };
        let mu = model.sample(grid)?;
        let pair = SourcePairConfig::new(cfg.number("R1")?, cfg.number("R2")?, sq.clone(), mu)?;
        let su = field_spectrum(&pair)?;
        let shift = wolf_shift(&pair)?;
        Ok((grid, sq, su, shift))
    };
    let (grid, sq, su, shift) = go().map_err(|e| lift(e, CliError::model("wolf")))?;
    let mut spectra = ResultTable::new("spectra", &["omega", "S_Q", "S_U"]);
    for ((w, a), b) in grid.points().zip(sq.values()).zip(su.values()) {
        spectra.push(vec![w, *a, *b]);
    }
    let mut shifts = ResultTable::new("shifts", &["peak_shift", "centroid_shift"]);
    shifts.push(vec![shift.peak_shift, shift.centroid_shift]);
    Ok(vec![spectra, shifts])
}

/// Config accessors fail only with validation errors; physics failures carry
/// the scenario name.
fn lift(e: Wrapped, model_err: impl FnOnce(coherence_core::CoherenceError) -> CliError) -> CliError {
    match e {
        Wrapped::Cli(c) => c,
        Wrapped::Core(c) => model_err(c),
    }
}

/// Either failure kind inside a scenario body.
pub(crate) enum Wrapped {
    Cli(CliError),
    Core(coherence_core::CoherenceError),
}

impl From<CliError> for Wrapped {
    fn from(e: CliError) -> Self {
        Wrapped::Cli(e)
    }
}

impl From<coherence_core::CoherenceError> for Wrapped {
    fn from(e: coherence_core::CoherenceError) -> Self {
        Wrapped::Core(e)
    }
}

type Body<T> = std::result::Result<T, Wrapped>;

fn run_vacuum(cfg: &ScenarioConfig) -> Result<Vec<ResultTable>, CliError> {
    let go = || -> Body<ResultTable> {
        let omega = cfg.number("omega")?;
        let rs = linspace(cfg.number("r_min")?, cfg.number("r_max")?, cfg.count("n_points")?)?;
        let mut table = ResultTable::new("coherence", &["omega_r", "transverse", "longitudinal"]);
        for r in rs {
            // Separation along z: xx is transverse, zz longitudinal.
            let c = normalized_vacuum_coherence(Position3::ORIGIN, Position3::new(0.0, 0.0, r), omega)?;
            table.push(vec![omega * r, c[0][0], c[2][2]]);
        }
        Ok(table)
    };
    go().map(|t| vec![t]).map_err(|e| lift(e, CliError::model("vacuum")))
}

fn run_atoms(cfg: &ScenarioConfig) -> Result<Vec<ResultTable>, CliError> {
    let go = || -> Body<Vec<ResultTable>> {
        let pair = AtomPairConfig::parallel_pair(
            cfg.number("separation")?,
            cfg.number("dipole_angle")?,
            cfg.number("omega_a")?,
            cfg.number("omega_b")?,
            cfg.number("gamma")?,
        )?;
        let grid = UniformGrid::new(cfg.number("scan_min")?, cfg.number("scan_max")?, cfg.count("scan_n")?)?;
        let coupling = match (cfg.optional_number("omega_dd")?, cfg.optional_number("gamma_cross")?) {
            (Some(omega_dd), Some(gamma_cross)) => CollectiveParams { gamma_cross, omega_dd },
            _ => collective_params(&pair)?,
        };
        let driven = DrivenConfig::with_coupling(pair, cfg.number("rabi")?, grid, coupling)?;
        let on = excitation_scan(&driven, true)?;
        let off = excitation_scan(&driven, false)?;
        let mut scan = ResultTable::new(
            "scan",
            &["omega_l", "p_ee_coupled", "p_ee_uncoupled", "intensity_coupled", "intensity_uncoupled"],
        );
        for (a, b) in on.iter().zip(&off) {
            scan.push(vec![a.omega_l, a.p_ee, b.p_ee, a.total_intensity, b.total_intensity]);
        }
        let mut params = ResultTable::new("collective", &["gamma_cross", "omega_dd"]);
        params.push(vec![coupling.gamma_cross, coupling.omega_dd]);
        Ok(vec![scan, params])
    };
    go().map_err(|e| lift(e, CliError::model("atoms")))
}

fn run_mirror(cfg: &ScenarioConfig) -> Result<Vec<ResultTable>, CliError> {
    let go = || -> Body<ResultTable> {
        let omega = cfg.number("omega")?;
        let gamma = cfg.number("gamma")?;
        let bs = linspace(cfg.number("b_min")?, cfg.number("b_max")?, cfg.count("n_points")?)?;
        let mut table = ResultTable::new(
            "rates",
            &["omega_b", "rate_parallel", "shift_parallel", "rate_perpendicular", "shift_perpendicular"],
        );
        for b in bs {
            let par = mirror_modified_rates(b, DipoleOrientation::Parallel, omega, gamma)?;
            let perp = mirror_modified_rates(b, DipoleOrientation::Perpendicular, omega, gamma)?;
            table.push(vec![
                omega * b,
                par.rate / gamma,
                par.shift / gamma,
                perp.rate / gamma,
                perp.shift / gamma,
            ]);
        }
        Ok(table)
    };
    go().map(|t| vec![t]).map_err(|e| lift(e, CliError::model("mirror")))
}

fn run_shg(cfg: &ScenarioConfig) -> Result<Vec<ResultTable>, CliError> {
    let go = || -> Body<Vec<ResultTable>> {
        let vol = CrystalVolume::new(cfg.number("Lx")?, cfg.number("Ly")?, cfg.number("Lz")?)?;
        let pc = match cfg.text("kind")? {
            "coherent" => PumpCoherence::Coherent,
            "incoherent" => PumpCoherence::Incoherent {
                strength: cfg.number("incoherent_strength")?,
            },
            _ => PumpCoherence::GaussianSchell {
                intensity: cfg.number("intensity")?,
                coherence_length: cfg.number("coherence_length")?,
            },
        };
        let q_max = cfg.number("q_max")?;
        let qs: Vec<MismatchVector> = linspace(-q_max, q_max, cfg.count("q_n")?)?
            .into_iter()
            .map(|q| MismatchVector([q, 0.0, 0.0]))
            .collect();
        let mut pattern = ResultTable::new("pattern", &["Q_x", "normalized_intensity"]);
        for (q, v) in emission_pattern(&vol, &pc, &qs)? {
            pattern.push(vec![q.0[0], v]);
        }
        let mut scaling = ResultTable::new("scaling", &["scaling_exponent", "phase_matched_intensity"]);
        scaling.push(vec![
            scaling_exponent(&pc, &vol)?,
            shg_intensity(&vol, &pc, MismatchVector::ZERO)?,
        ]);
        Ok(vec![pattern, scaling])
    };
    go().map_err(|e| lift(e, CliError::model("shg")))
}

fn run_pulse(cfg: &ScenarioConfig) -> Result<Vec<ResultTable>, CliError> {
    let go = || -> Body<Vec<ResultTable>> {
        let t0 = cfg.number("T0")?;
        let tc = cfg.number("tc")?;
        let grid = TimeGrid::symmetric(cfg.number("grid_half_span")?, cfg.count("grid_n")?)?;
        let disp = DispersionConfig::new(cfg.number("k2")?, cfg.number("z")?)?;
        let corr = gaussian_schell_correlation(t0, tc, grid)?;
        let input = corr.diagonal();
        let output = propagate_intensity(&corr, &disp)?;

        let mut input_table = ResultTable::new("input", &["t", "intensity"]);
        for (t, v) in input.grid().points().zip(input.values()) {
            input_table.push(vec![t, *v]);
        }
        let mut output_table = ResultTable::new("output", &["t", "intensity"]);
        for (t, v) in output.grid().points().zip(output.values()) {
            output_table.push(vec![t, *v]);
        }
        let mut columns = vec!["input_width", "output_width", "input_energy", "output_energy"];
        let mut summary_row = vec![
            input.rms_width()?,
            output.rms_width()?,
            input.energy(),
            output.energy(),
        ];
        if cfg.flag("factorization_check")? {
            // Coherent field with the same mean intensity as the input.
            let field = PulseEnvelope::from_fn(grid, |t| Complex64::new((-t * t / (4.0 * t0 * t0)).exp(), 0.0))?;
            let coherent = propagate_coherent(&field, &disp)?.intensity();
            let peak = coherent.values().iter().cloned().fold(0.0, f64::max);
            let deviation = coherent
                .values()
                .iter()
                .zip(output.values())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            columns.push("consistency");
            summary_row.push(deviation / peak);
        }
        let mut summary = ResultTable::new("summary", &columns);
        summary.push(summary_row);
        Ok(vec![input_table, output_table, summary])
    };
    go().map_err(|e| lift(e, CliError::model("pulse")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    fn run(text: &str) -> Vec<ResultTable> {
        run_scenario(&parse_config(text).unwrap()).unwrap()
    }

    #[test]
    fn wolf_peak_shift_is_positive() {
        let tables = run("scenario = wolf\nR1 = 1.0\nR2 = 1.0\nomega0 = 100\ngamma = 1\nmu_model = gaussian\nmu_center = 102\nmu_sigma = 3\ngrid_min = 80\ngrid_max = 120\ngrid_n = 4001");
        assert_eq!(tables[0].rows.len(), 4001);
        assert!(tables[1].column("peak_shift").unwrap()[0] > 0.0);
    }

    #[test]
    fn coherent_shg_exponent_is_two() {
        let tables = run("scenario = shg\nkind = coherent\nLx = 1\nLy = 1\nLz = 2\nq_max = 20\nq_n = 41");
        let e = tables[1].column("scaling_exponent").unwrap()[0];
        assert!((e - 2.0).abs() < 1e-9);
        let pattern = tables[0].column("normalized_intensity").unwrap();
        assert_eq!(pattern[20], 1.0);
    }

    #[test]
    fn pulse_consistency_in_coherent_limit() {
        let tables = run("scenario = pulse\nT0 = 1\ntc = 1e6\nk2 = 1\nz = 2\ngrid_half_span = 16\ngrid_n = 256\nfactorization_check = true");
        let summary = &tables[2];
        assert!(summary.column("consistency").unwrap()[0] < 1e-8);
        let e = summary.rows[0][2..4].to_vec();
        assert!((e[1] / e[0] - 1.0).abs() < 1e-4);
    }

    #[test]
    fn mirror_and_vacuum_tables() {
        let m = run("scenario = mirror\nomega = 1\ngamma = 1\nb_min = 0.001\nb_max = 100\nn_points = 50");
        let par = m[0].column("rate_parallel").unwrap();
        assert!(par[0] < 1e-2);
        let v = run("scenario = vacuum\nomega = 2\nr_min = 0.0005\nr_max = 25\nn_points = 20");
        assert!((v[0].rows[0][1] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn atoms_override_and_geometry() {
        let base = "scenario = atoms\nomega_a = 1010\nomega_b = 990\ngamma = 1\nrabi = 0.5\nseparation = 0.7\ndipole_angle = 0\nscan_min = 980\nscan_max = 1020\nscan_n = 81";
        let geo = run(base);
        let forced = run(&format!("{base}\nomega_dd = 5\ngamma_cross = 0.9"));
        assert_eq!(forced[1].rows[0], vec![0.9, 5.0]);
        assert_ne!(geo[1].rows[0], forced[1].rows[0]);
        assert_eq!(geo[0].rows.len(), 81);
    }

    #[test]
    fn physics_errors_carry_exit_codes() {
        let cfg = parse_config("scenario = pulse\nT0 = 1\ntc = -1\nk2 = 1\nz = 1\ngrid_half_span = 8\ngrid_n = 64").unwrap();
        let err = run_scenario(&cfg).unwrap_err();
        assert_eq!(err.exit_code(), 2, "{err}");
        let cfg = parse_config("scenario = pulse\nT0 = 0.1\ntc = 1e6\nk2 = 60\nz = 1\ngrid_half_span = 8\ngrid_n = 64\nfactorization_check = true").unwrap();
        assert_eq!(run_scenario(&cfg).unwrap_err().exit_code(), 3);
    }
}
