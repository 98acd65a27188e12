//! Flat `key = value` scenario files and their per-scenario schemas.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Scenario {
    Wolf,
    Vacuum,
    Atoms,
    Mirror,
    Shg,
    Pulse,
}

impl Scenario {
    pub const ALL: [Scenario; 6] = [
        Scenario::Wolf,
        Scenario::Vacuum,
        Scenario::Atoms,
        Scenario::Mirror,
        Scenario::Shg,
        Scenario::Pulse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Wolf => "wolf",
            Scenario::Vacuum => "vacuum",
            Scenario::Atoms => "atoms",
            Scenario::Mirror => "mirror",
            Scenario::Shg => "shg",
            Scenario::Pulse => "pulse",
        }
    }

    pub fn schema(self) -> &'static [KeySpec] {
        match self {
            Scenario::Wolf => WOLF,
            Scenario::Vacuum => VACUUM,
            Scenario::Atoms => ATOMS,
            Scenario::Mirror => MIRROR,
            Scenario::Shg => SHG,
            Scenario::Pulse => PULSE,
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Scenario::ALL.iter().map(|s| s.name()).collect();
                format!("unknown scenario `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueKind {
    Number,
    /// Nonnegative whole number.
    Count,
    Choice(&'static [&'static str]),
    Flag,
    Path,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Requirement {
    Always,
    Optional,
    /// Required exactly when the named key has one of the listed values.
    When(&'static str, &'static [&'static str]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeySpec {
    pub name: &'static str,
    pub kind: ValueKind,
    pub requirement: Requirement,
    pub doc: &'static str,
}

const fn key(name: &'static str, kind: ValueKind, requirement: Requirement, doc: &'static str) -> KeySpec {
    KeySpec {
        name,
        kind,
        requirement,
        doc,
    }
}

use Requirement::{Always, Optional, When};
use ValueKind::{Choice, Count, Flag, Number, Path};

const MU_MODELS: &[&str] = &["constant", "complex", "gaussian", "table"];
const PUMP_KINDS: &[&str] = &["coherent", "incoherent", "gaussian_schell"];

const WOLF: &[KeySpec] = &[
    key("R1", Number, Always, "distance from source 1 to the observation point"),
    key("R2", Number, Always, "distance from source 2 to the observation point"),
    key("omega0", Number, Always, "centre of the Lorentzian source line"),
    key("gamma", Number, Always, "half-width of the source line"),
    key("mu_model", Choice(MU_MODELS), Always, "spectral degree of coherence model"),
    key("mu_value", Number, When("mu_model", &["constant"]), "real constant coherence"),
    key("mu_re", Number, When("mu_model", &["complex"]), "real part of a complex constant"),
    key("mu_im", Number, When("mu_model", &["complex"]), "imaginary part of a complex constant"),
    key("mu_center", Number, When("mu_model", &["gaussian"]), "centre of the Gaussian coherence"),
    key("mu_sigma", Number, When("mu_model", &["gaussian"]), "width of the Gaussian coherence"),
    key("mu_table", Path, When("mu_model", &["table"]), "CSV of (real, imag) rows, one per grid point"),
    key("grid_min", Number, Always, "lowest frequency"),
    key("grid_max", Number, Always, "highest frequency"),
    key("grid_n", Count, Always, "number of frequency samples"),
];

const VACUUM: &[KeySpec] = &[
    key("omega", Number, Always, "field frequency"),
    key("r_min", Number, Always, "smallest separation"),
    key("r_max", Number, Always, "largest separation"),
    key("n_points", Count, Always, "number of separations"),
];

const ATOMS: &[KeySpec] = &[
    key("omega_a", Number, Always, "transition frequency of atom A"),
    key("omega_b", Number, Always, "transition frequency of atom B"),
    key("gamma", Number, Always, "single-atom half-width"),
    key("rabi", Number, Always, "laser Rabi frequency"),
    key("separation", Number, Always, "distance between the atoms, along x"),
    key("dipole_angle", Number, Always, "angle of both dipoles from the separation axis, radians"),
    key("scan_min", Number, Always, "lowest laser frequency"),
    key("scan_max", Number, Always, "highest laser frequency"),
    key("scan_n", Count, Always, "number of laser frequencies"),
    key("omega_dd", Number, Optional, "override of the dipole-dipole shift (with gamma_cross)"),
    key("gamma_cross", Number, Optional, "override of the cross-damping rate (with omega_dd)"),
];

const MIRROR: &[KeySpec] = &[
    key("omega", Number, Always, "transition frequency"),
    key("gamma", Number, Always, "free-space half-width"),
    key("b_min", Number, Always, "smallest atom-mirror distance"),
    key("b_max", Number, Always, "largest atom-mirror distance"),
    key("n_points", Count, Always, "number of distances"),
];

const SHG: &[KeySpec] = &[
    key("kind", Choice(PUMP_KINDS), Always, "pump statistics"),
    key("Lx", Number, Always, "crystal side along x"),
    key("Ly", Number, Always, "crystal side along y"),
    key("Lz", Number, Always, "crystal side along z"),
    key("intensity", Number, When("kind", &["gaussian_schell"]), "pump intensity"),
    key("coherence_length", Number, When("kind", &["gaussian_schell"]), "pump coherence length"),
    key("incoherent_strength", Number, When("kind", &["incoherent"]), "delta-correlation weight"),
    key("q_max", Number, Always, "largest |Q_x| of the emission pattern"),
    key("q_n", Count, Always, "number of Q_x samples"),
];

const PULSE: &[KeySpec] = &[
    key("T0", Number, Always, "input intensity RMS duration"),
    key("tc", Number, Always, "coherence time of the Gaussian Schell-model input"),
    key("k2", Number, Always, "group-velocity dispersion"),
    key("z", Number, Always, "propagation distance"),
    key("grid_half_span", Number, Always, "input time window is [-half_span, half_span]"),
    key("grid_n", Count, Always, "number of input time samples (at most 2048)"),
    key("factorization_check", Flag, Optional, "compare against the coherent field of equal intensity"),
];

/// Parsed and schema-checked scenario file.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub params: BTreeMap<String, String>,
    pub output_dir: Option<PathBuf>,
}

impl ScenarioConfig {
    /// Numeric parameter; present by schema validation when required.
    pub fn number(&self, name: &str) -> Result<f64, CliError> {
        let raw = self.raw(name)?;
        raw.parse::<f64>()
            .map_err(|_| CliError::Validation(vec![format!("`{name}`: `{raw}` is not a number")]))
    }

    pub fn optional_number(&self, name: &str) -> Result<Option<f64>, CliError> {
        match self.params.get(name) {
            Some(_) => self.number(name).map(Some),
            None => Ok(None),
        }
    }

    pub fn count(&self, name: &str) -> Result<usize, CliError> {
        let raw = self.raw(name)?;
        parse_count(raw).map_err(|e| CliError::Validation(vec![format!("`{name}`: {e}")]))
    }

    pub fn flag(&self, name: &str) -> Result<bool, CliError> {
        match self.params.get(name) {
            None => Ok(false),
            Some(raw) => parse_flag(raw).map_err(|e| CliError::Validation(vec![format!("`{name}`: {e}")])),
        }
    }

    pub fn text(&self, name: &str) -> Result<&str, CliError> {
        self.raw(name)
    }

    fn raw(&self, name: &str) -> Result<&str, CliError> {
        self.params
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| CliError::Validation(vec![format!("missing key `{name}`")]))
    }
}

fn parse_count(raw: &str) -> Result<usize, String> {
    let v: f64 = raw.parse().map_err(|_| format!("`{raw}` is not a number"))?;
    if v < 0.0 || v.fract() != 0.0 || v > u32::MAX as f64 {
        return Err(format!("`{raw}` is not a whole number"));
    }
    Ok(v as usize)
}

fn parse_flag(raw: &str) -> Result<bool, String> {
    match raw {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(format!("`{raw}` is not a boolean (true/false)")),
    }
}

fn check_value(key_spec: &KeySpec, raw: &str) -> Result<(), String> {
    match key_spec.kind {
        Number => raw
            .parse::<f64>()
            .map(|_| ())
            .map_err(|_| format!("`{raw}` is not a number")),
        Count => parse_count(raw).map(|_| ()),
        Choice(options) => {
            if options.contains(&raw) {
                Ok(())
            } else {
                Err(format!("`{raw}` is not one of {}", options.join(", ")))
            }
        }
        Flag => parse_flag(raw).map(|_| ()),
        Path => {
            if raw.is_empty() {
                Err("empty path".into())
            } else {
                Ok(())
            }
        }
    }
}

/// Parses `key = value` lines. `#` starts a comment; keys are case-sensitive.
/// Every problem found is reported in one aggregated validation error.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, CliError> {
    let mut problems = Vec::new();
    let mut entries: BTreeMap<String, String> = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((k, v)) = content.split_once('=') else {
            problems.push(format!("line {}: expected `key = value`", lineno + 1));
            continue;
        };
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            problems.push(format!("line {}: empty key", lineno + 1));
            continue;
        }
        if entries.insert(k.to_string(), v.to_string()).is_some() {
            problems.push(format!("line {}: duplicate key `{k}`", lineno + 1));
        }
    }

    let scenario = match entries.remove("scenario") {
        None => {
            problems.push("missing key `scenario`".into());
            None
        }
        Some(name) => match name.parse::<Scenario>() {
            Ok(s) => Some(s),
            Err(e) => {
                problems.push(e);
                None
            }
        },
    };
    let output_dir = entries.remove("output_dir").map(PathBuf::from);

    let Some(scenario) = scenario else {
        return Err(CliError::Validation(problems));
    };
    let schema = scenario.schema();
    for name in entries.keys() {
        if !schema.iter().any(|s| s.name == name) {
            problems.push(format!("unknown key `{name}` for scenario {scenario}"));
        }
    }
    for key_spec in schema {
        let required = match key_spec.requirement {
            Always => true,
            Optional => false,
            When(other, values) => entries.get(other).is_some_and(|v| values.contains(&v.as_str())),
        };
        match entries.get(key_spec.name) {
            Some(raw) => {
                if let Err(e) = check_value(key_spec, raw) {
                    problems.push(format!("`{}`: {e}", key_spec.name));
                }
            }
            None if required => problems.push(format!("missing key `{}`", key_spec.name)),
            None => {}
        }
    }
    if scenario == Scenario::Atoms
        && entries.contains_key("omega_dd") != entries.contains_key("gamma_cross")
    {
        problems.push("`omega_dd` and `gamma_cross` must be given together".into());
    }
    if !problems.is_empty() {
        return Err(CliError::Validation(problems));
    }
    Ok(ScenarioConfig {
        scenario,
        params: entries,
        output_dir,
    })
}

/// Human-readable key listing for one scenario.
pub fn describe_schema(scenario: Scenario) -> String {
    let mut out = format!("scenario = {scenario}\n");
    for key_spec in scenario.schema() {
        let kind = match key_spec.kind {
            Number => "number".to_string(),
            Count => "count".to_string(),
            Choice(options) => options.join("|"),
            Flag => "true|false".to_string(),
            Path => "path".to_string(),
        };
        let req = match key_spec.requirement {
            Always => "required".to_string(),
            Optional => "optional".to_string(),
            When(k, v) => format!("required when {k} = {}", v.join("|")),
        };
        out.push_str(&format!("{:<20} {:<28} {:<38} {}\n", key_spec.name, kind, req, key_spec.doc));
    }
    out.push_str(&format!("{:<20} {:<28} {:<38} {}\n", "output_dir", "path", "optional", "where tables are written"));
    out
}
