//! Scenario configuration files for `mag run`.
//!
//! Every struct rejects unknown keys; quantities are plain numbers in CGS units or
//! `{"value": x, "unit": "..."}` objects converted at load time.

use serde::{Deserialize, Serialize};

use mag_core::observatory::constants::{C, DAY, G, MINUTE, M_EARTH, M_SUN, YEAR};

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub spacetime: Spacetime,
    pub operation: Operation,
    #[serde(default)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, Serialize, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Human,
    #[default]
    Json,
    Csv,
}

/// A number with an optional unit.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Quantity {
    Cgs(f64),
    WithUnit { value: f64, unit: String },
}

#[derive(Clone, Copy, Debug)]
pub enum Dimension {
    Mass,
    Length,
    Time,
    Wavelength,
}

impl Quantity {
    /// Converts to CGS (wavelengths to μm).
    pub fn to_cgs(&self, dim: Dimension) -> Result<f64, String> {
        let (value, unit) = match self {
            Quantity::Cgs(v) => return Ok(*v),
            Quantity::WithUnit { value, unit } => (*value, unit.as_str()),
        };
        let factor = match (dim, unit) {
            (Dimension::Mass, "g") => 1.0,
            (Dimension::Mass, "kg") => 1e3,
            (Dimension::Mass, "solar") => M_SUN,
            (Dimension::Mass, "earth") => M_EARTH,
            (Dimension::Length, "cm") => 1.0,
            (Dimension::Length, "m") => 1e2,
            (Dimension::Length, "km") => 1e5,
            (Dimension::Time, "s") => 1.0,
            (Dimension::Time, "min") => MINUTE,
            (Dimension::Time, "h") => 3600.0,
            (Dimension::Time, "day") => DAY,
            (Dimension::Time, "year") => YEAR,
            (Dimension::Wavelength, "um") => 1.0,
            (Dimension::Wavelength, "nm") => 1e-3,
            (Dimension::Wavelength, "angstrom") => 1e-4,
            (d, u) => return Err(format!("unit '{u}' is not a {d:?} unit").to_lowercase()),
        };
        Ok(value * factor)
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Spacetime {
    /// Give exactly one of `mass` or `rg`.
    Schwarzschild {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mass: Option<Quantity>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rg: Option<Quantity>,
    },
    Friedmann {
        model: FriedmannModelConfig,
        scale: ScaleConfig,
    },
    Minkowski,
    ConstantTorsion {
        /// Diagonal of the flat metric.
        diag: Vec<f64>,
        torsion: Vec<TorsionEntry>,
    },
    /// Seeded random metric-affine space with quadratic metric and connection.
    Random {
        seed: u64,
        dim: usize,
        #[serde(default = "yes")]
        torsion: bool,
        #[serde(default = "yes")]
        nonmetric: bool,
        #[serde(default)]
        lorentzian: bool,
    },
}

fn yes() -> bool {
    true
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FriedmannModelConfig {
    Closed,
    Open,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ScaleConfig {
    Cosh,
    Sinh,
    Power { a0: f64, t0: f64, k: f64 },
}

/// `T^k_mn = κ = −T^k_nm`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TorsionEntry {
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub kappa: f64,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum RadiusSourceConfig {
    Given,
    Kepler,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Operation {
    /// Clock delay of a circular orbit against a static observer at the same radius.
    Delay {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radius: Option<Quantity>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        period: Option<Quantity>,
        /// Defaults to `kepler` when a period is given.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radius_source: Option<RadiusSourceConfig>,
    },
    /// Doppler shift at pericentre and apocentre of a Keplerian orbit.
    Doppler {
        r_peri: Quantity,
        r_apo: Quantity,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lambda_emit: Option<Quantity>,
    },
    /// Radial photon (Schwarzschild) or comoving (Friedmann) frequency shift.
    Redshift {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        r_emit: Option<Quantity>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        r_obs: Option<Quantity>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t_emit: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t_obs: Option<f64>,
        #[serde(default = "one")]
        omega: f64,
    },
    /// Orbital observer frames and the time dilation accumulated over one revolution.
    Boost {
        radius: Quantity,
        period: Quantity,
        #[serde(default = "default_segments")]
        segments: usize,
    },
    /// Tidal-equation deviation against the difference of two integrated trajectories.
    Tidal {
        x0: Vec<f64>,
        v0: Vec<f64>,
        dx0: Vec<f64>,
        rate0: Vec<f64>,
        s_end: f64,
    },
    /// Parallelogram closure gap of two geodesic legs.
    Closure {
        point: Vec<f64>,
        a: Vec<f64>,
        b: Vec<f64>,
        #[serde(default = "default_rho")]
        rho: f64,
    },
    ExtremalVsAutoparallel {
        x0: Vec<f64>,
        u0: Vec<f64>,
        s_end: f64,
        #[serde(default = "default_steps")]
        steps: usize,
    },
}

fn one() -> f64 {
    1.0
}

fn default_segments() -> usize {
    512
}

fn default_rho() -> f64 {
    0.05
}

fn default_steps() -> usize {
    10_000
}

impl Operation {
    pub fn name(&self) -> &'static str {
        match self {
            Operation::Delay { .. } => "delay",
            Operation::Doppler { .. } => "doppler",
            Operation::Redshift { .. } => "redshift",
            Operation::Boost { .. } => "boost",
            Operation::Tidal { .. } => "tidal",
            Operation::Closure { .. } => "closure",
            Operation::ExtremalVsAutoparallel { .. } => "extremal-vs-autoparallel",
        }
    }
}

/// Physical constants echoed into every result document.
pub fn constants() -> [(&'static str, f64, &'static str); 3] {
    [("G", G, "cm^3 g^-1 s^-2"), ("c", C, "cm/s"), ("M_sun", M_SUN, "g")]
}

/// Parses a config, reporting the path of the offending key on failure.
pub fn parse(text: &str) -> Result<ScenarioConfig, String> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        format!("config error at '{path}': {}", e.inner())
    })
}
