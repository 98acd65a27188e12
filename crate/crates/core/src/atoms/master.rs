//! Driven two-atom master equation and its steady state.
//!
//! Basis ordering is `|g_A g_B>, |e_A g_B>, |g_A e_B>, |e_A e_B>`. In the frame
//! rotating at the laser frequency the Hamiltonian is
//!
//! ```text
//! H = -D_A s+_A s-_A - D_B s+_B s-_B + Omega_AB (s+_A s-_B + h.c.) + (Omega_l/2)(s+_A + s+_B + h.c.)
//! ```
//!
//! with `D_X = w_l - w_X`. Each atom decays at `2 gamma`; the pair shares a
//! cross-dissipator at `2 Gamma_AB`.

use nalgebra::{Matrix4, SMatrix, SVector, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use super::{collective_params, AtomPairConfig, CollectiveParams};
use crate::error::{CoherenceError, Result};
use crate::spectral::FrequencyGrid;

type Op = Matrix4<Complex64>;

const HERMITIAN_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;
const EIGEN_FLOOR: f64 = -1e-9;
const DEGENERACY_TOL: f64 = 1e-12;

const GG: usize = 0;
const EG: usize = 1;
const GE: usize = 2;
const EE: usize = 3;

/// Validated two-atom density operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix4 {
    entries: Op,
}

impl DensityMatrix4 {
    pub fn new(entries: [[Complex64; 4]; 4]) -> Result<Self> {
        Self::from_matrix(Op::from_fn(|i, j| entries[i][j]))
    }

    fn from_matrix(entries: Op) -> Result<Self> {
        let herm_err = (entries - entries.adjoint()).camax();
        if herm_err > HERMITIAN_TOL {
            return Err(CoherenceError::InvalidState(format!(
                "not Hermitian (deviation {herm_err:e})"
            )));
        }
        let trace = entries.trace();
        if (trace - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(CoherenceError::InvalidState(format!("trace is {trace}")));
        }
        let hermitian = (entries + entries.adjoint()).scale(0.5);
        let min_eig = SymmetricEigen::new(hermitian)
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if min_eig < EIGEN_FLOOR {
            return Err(CoherenceError::InvalidState(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(DensityMatrix4 { entries })
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn to_array(&self) -> [[Complex64; 4]; 4] {
        let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.entries[(i, j)];
            }
        }
        out
    }

    /// Population of `|e_A e_B>`.
    pub fn doubly_excited(&self) -> f64 {
        self.entries[(EE, EE)].re
    }

    /// `<s+_A s-_A>`.
    pub fn excitation_a(&self) -> f64 {
        self.entries[(EG, EG)].re + self.entries[(EE, EE)].re
    }

    /// `<s+_B s-_B>`.
    pub fn excitation_b(&self) -> f64 {
        self.entries[(GE, GE)].re + self.entries[(EE, EE)].re
    }

    /// `<s+_A s-_B> = <g_A e_B| rho |e_A g_B>`.
    pub fn cross_coherence(&self) -> Complex64 {
        self.entries[(GE, EG)]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let hermitian = (self.entries + self.entries.adjoint()).scale(0.5);
        SymmetricEigen::new(hermitian)
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    }
}

/// Laser-driven atom pair and the laser frequencies to scan.
#[derive(Debug, Clone, Copy)]
pub struct DrivenConfig {
    pair: AtomPairConfig,
    rabi: f64,
    laser_grid: FrequencyGrid,
    coupling: CollectiveParams,
}

impl DrivenConfig {
    /// Collective parameters are derived from the pair geometry.
    pub fn new(pair: AtomPairConfig, rabi: f64, laser_grid: FrequencyGrid) -> Result<Self> {
        let coupling = collective_params(&pair)?;
        Self::with_coupling(pair, rabi, laser_grid, coupling)
    }

    /// Uses externally supplied collective parameters instead of the geometry.
    pub fn with_coupling(
        pair: AtomPairConfig,
        rabi: f64,
        laser_grid: FrequencyGrid,
        coupling: CollectiveParams,
    ) -> Result<Self> {
        if !(rabi > 0.0) || !rabi.is_finite() {
            return Err(CoherenceError::invalid("rabi", "must be positive"));
        }
        if !(coupling.gamma_cross.abs() <= pair.gamma()) {
            return Err(CoherenceError::invalid(
                "gamma_cross",
                "cross-damping magnitude cannot exceed gamma",
            ));
        }
        if !coupling.omega_dd.is_finite() {
            return Err(CoherenceError::invalid("omega_dd", "must be finite"));
        }
        Ok(DrivenConfig {
            pair,
            rabi,
            laser_grid,
            coupling,
        })
    }

    pub fn pair(&self) -> &AtomPairConfig {
        &self.pair
    }

    pub fn rabi(&self) -> f64 {
        self.rabi
    }

    pub fn laser_grid(&self) -> &FrequencyGrid {
        &self.laser_grid
    }

    pub fn coupling(&self) -> CollectiveParams {
        self.coupling
    }
}

fn lowering_a() -> Op {
    let mut m = Op::zeros();
    m[(GG, EG)] = Complex64::new(1.0, 0.0);
    m[(GE, EE)] = Complex64::new(1.0, 0.0);
    m
}

fn lowering_b() -> Op {
    let mut m = Op::zeros();
    m[(GG, GE)] = Complex64::new(1.0, 0.0);
    m[(EG, EE)] = Complex64::new(1.0, 0.0);
    m
}

struct Generator {
    hamiltonian: Op,
    lowering: [Op; 2],
    rates: [[f64; 2]; 2],
}

impl Generator {
    fn new(d: &DrivenConfig, omega_l: f64, include_coupling: bool) -> Self {
        let (sa, sb) = (lowering_a(), lowering_b());
        let (ra, rb) = (sa.adjoint(), sb.adjoint());
        let c = if include_coupling {
            d.coupling
        } else {
            CollectiveParams::NONE
        };
        let delta_a = omega_l - d.pair.omega_a();
        let delta_b = omega_l - d.pair.omega_b();
        let cplx = |v: f64| Complex64::new(v, 0.0);
        let hamiltonian = (ra * sa) * cplx(-delta_a)
            + (rb * sb) * cplx(-delta_b)
            + (ra * sb + rb * sa) * cplx(c.omega_dd)
            + (ra + sa + rb + sb) * cplx(0.5 * d.rabi);
        let g = d.pair.gamma();
        Generator {
            hamiltonian,
            lowering: [sa, sb],
            rates: [
                [2.0 * g, 2.0 * c.gamma_cross],
                [2.0 * c.gamma_cross, 2.0 * g],
            ],
        }
    }

    fn apply(&self, rho: &Op) -> Op {
        let i = Complex64::new(0.0, 1.0);
        let h = &self.hamiltonian;
        let mut out = (h * rho - rho * h) * (-i);
        for (a, sa) in self.lowering.iter().enumerate() {
            for (b, sb) in self.lowering.iter().enumerate() {
                let rate = self.rates[a][b];
                if rate == 0.0 {
                    continue;
                }
                let jump = sa.adjoint() * sb;
                let term = sb * rho * sa.adjoint() - (jump * rho + rho * jump) * Complex64::new(0.5, 0.0);
                out += term * Complex64::new(rate, 0.0);
            }
        }
        out
    }

    /// Liouvillian as a 16x16 matrix acting on row-major `vec(rho)`.
    fn superoperator(&self) -> SMatrix<Complex64, 16, 16> {
        let mut l = SMatrix::<Complex64, 16, 16>::zeros();
        for col in 0..16 {
            let mut basis = Op::zeros();
            basis[(col / 4, col % 4)] = Complex64::new(1.0, 0.0);
            let image = self.apply(&basis);
            for row in 0..16 {
                l[(row, col)] = image[(row / 4, row % 4)];
            }
        }
        l
    }
}

/// Steady state of the driven pair at laser frequency `omega_l`.
pub fn steady_state(
    d: &DrivenConfig,
    omega_l: f64,
    include_coupling: bool,
) -> Result<DensityMatrix4> {
    let mut system = Generator::new(d, omega_l, include_coupling).superoperator();
    // Population equation of |gg> is redundant with the others; swap it for the trace.
    for col in 0..16 {
        system[(0, col)] = if col % 5 == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    let mut rhs = SVector::<Complex64, 16>::zeros();
    rhs[0] = Complex64::new(1.0, 0.0);
    // A second stationary state (a decoupled dark state) leaves the bordered
    // system singular up to rounding, which LU alone does not flag.
    let sv = system.singular_values();
    if sv.min() <= DEGENERACY_TOL * sv.max() {
        return Err(CoherenceError::NumericalDegeneracy(format!(
            "Liouvillian has more than one stationary state at omega_l = {omega_l}"
        )));
    }
    let solution = system.lu().solve(&rhs).ok_or_else(|| {
        CoherenceError::NumericalDegeneracy(format!(
            "Liouvillian has more than one stationary state at omega_l = {omega_l}"
        ))
    })?;
    if solution.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(CoherenceError::NumericalDegeneracy(
            "steady-state solve produced non-finite entries".into(),
        ));
    }
    DensityMatrix4::from_matrix(Op::from_fn(|i, j| solution[4 * i + j]))
}

/// One laser frequency of an excitation scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint {
    pub omega_l: f64,
    /// Doubly excited population.
    pub p_ee: f64,
    /// Total emitted intensity, `2 gamma (<s+_A s-_A> + <s+_B s-_B>)` plus the
    /// interference term `2 Gamma_AB 2 Re<s+_A s-_B>` when coupling is on.
    pub total_intensity: f64,
}

/// Steady-state populations and emitted intensity across the laser grid.
pub fn excitation_scan(d: &DrivenConfig, include_coupling: bool) -> Result<Vec<ScanPoint>> {
    let grid = d.laser_grid;
    let pair = &d.pair;
    let g = pair.gamma();
    let lo = pair.omega_a().min(pair.omega_b()) - 10.0 * g;
    let hi = pair.omega_a().max(pair.omega_b()) + 10.0 * g;
    let slack = 1e-9 * grid.step();
    if grid.min() > lo + slack || grid.max() < hi - slack {
        return Err(CoherenceError::invalid(
            "laser_grid",
            format!("must span [{lo}, {hi}]"),
        ));
    }
    let mean = pair.mean_frequency();
    let includes_mean = grid
        .nearest_index(mean)
        .map(|i| (grid.point(i) - mean).abs() <= 1e-6 * grid.step())
        .unwrap_or(false);
    if !includes_mean {
        return Err(CoherenceError::invalid(
            "laser_grid",
            format!("must contain the mean transition frequency {mean}"),
        ));
    }
    let cross = if include_coupling {
        d.coupling.gamma_cross
    } else {
        0.0
    };
    (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let omega_l = grid.point(i);
            let rho = steady_state(d, omega_l, include_coupling)?;
            let total_intensity = 2.0 * g * (rho.excitation_a() + rho.excitation_b())
                + 2.0 * cross * 2.0 * rho.cross_coherence().re;
            Ok(ScanPoint {
                omega_l,
                p_ee: rho.doubly_excited(),
                total_intensity,
            })
        })
        .collect()
}
