//! Scenario documents: a TOML key/value configuration with one section per
//! subsystem, strict unknown-key rejection, and defaults filled from the
//! medium preset. The exact grammar is documented in the repository README.

use std::path::PathBuf;

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::medium::{derive_coefficients, MediumParams};

const TAU: f64 = std::f64::consts::TAU;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Params,
    Spectrum,
    Propagate,
    Revival,
    Cat,
    Pair,
    Sweep,
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Params => "params",
            Experiment::Spectrum => "spectrum",
            Experiment::Propagate => "propagate",
            Experiment::Revival => "revival",
            Experiment::Cat => "cat",
            Experiment::Pair => "pair",
            Experiment::Sweep => "sweep",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "params" => Experiment::Params,
            "spectrum" => Experiment::Spectrum,
            "propagate" => Experiment::Propagate,
            "revival" => Experiment::Revival,
            "cat" => Experiment::Cat,
            "pair" => Experiment::Pair,
            "sweep" => Experiment::Sweep,
            other => {
                return Err(Error::Config(format!(
                    "unknown experiment `{other}`; expected one of \
                     params|spectrum|propagate|revival|cat|pair|sweep"
                )))
            }
        })
    }
}

/// Medium parameter swept by the `sweep` experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    GammaAb,
    GammaBc,
    GammaCd,
    Delta,
    OmegaDrive,
    NAtoms,
    SigmaOverArea,
    Length,
    Bandwidth,
}

impl SweepParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::GammaAb => "gamma_ab",
            SweepParameter::GammaBc => "gamma_bc",
            SweepParameter::GammaCd => "gamma_cd",
            SweepParameter::Delta => "delta",
            SweepParameter::OmegaDrive => "omega_drive",
            SweepParameter::NAtoms => "n_atoms",
            SweepParameter::SigmaOverArea => "sigma_over_area",
            SweepParameter::Length => "length",
            SweepParameter::Bandwidth => "bandwidth",
        }
    }

    fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "gamma_ab" => SweepParameter::GammaAb,
            "gamma_bc" => SweepParameter::GammaBc,
            "gamma_cd" => SweepParameter::GammaCd,
            "delta" => SweepParameter::Delta,
            "omega_drive" => SweepParameter::OmegaDrive,
            "n_atoms" => SweepParameter::NAtoms,
            "sigma_over_area" => SweepParameter::SigmaOverArea,
            "length" => SweepParameter::Length,
            "bandwidth" => SweepParameter::Bandwidth,
            other => {
                return Err(Error::Config(format!(
                    "sweep.parameter `{other}` is not a sweepable parameter"
                )))
            }
        })
    }

    /// Apply the swept value, returning the params/bandwidth pair to run.
    pub fn apply(&self, base: &MediumParams, bandwidth: f64, value: f64) -> (MediumParams, f64) {
        let mut p = base.clone();
        match self {
            SweepParameter::GammaAb => p.gamma_ab = value,
            SweepParameter::GammaBc => p.gamma_bc = value,
            SweepParameter::GammaCd => p.gamma_cd = value,
            SweepParameter::Delta => p.delta = value,
            SweepParameter::OmegaDrive => p.omega_drive = value,
            SweepParameter::NAtoms => p.n_atoms = value,
            SweepParameter::SigmaOverArea => p.sigma_over_area = value,
            SweepParameter::Length => p.length = value,
            SweepParameter::Bandwidth => return (p, value),
        }
        (p, bandwidth)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PulseSpec {
    pub photon_number: f64,
    pub duration: f64,
    pub center: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub n_points: usize,
    pub t_min: f64,
    pub t_max: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct PropagateSpec {
    pub z: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct SpectrumSpec {
    pub points: usize,
    pub omega_max: f64,
    pub z: f64,
    pub probe_intensity: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct RevivalSpec {
    pub n_bar: f64,
    pub phi_min: f64,
    pub phi_max: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct CatSpec {
    pub alpha1: Complex64,
    pub alpha2: Complex64,
    pub phi: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct PairSpec {
    pub points: usize,
    pub t_span: f64,
    pub phi: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

/// A fully resolved scenario: every default filled, every value validated.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub experiment: Experiment,
    pub label: String,
    pub out: Option<PathBuf>,
    pub force: bool,
    pub oracle: bool,
    pub medium: MediumParams,
    pub bandwidth: f64,
    pub pulse: PulseSpec,
    pub pulse2: PulseSpec,
    pub grid: GridSpec,
    pub propagate: PropagateSpec,
    pub spectrum: SpectrumSpec,
    pub revival: Option<RevivalSpec>,
    pub cat: Option<CatSpec>,
    pub pair: PairSpec,
    pub sweep: Option<SweepSpec>,
}

// --- raw document --------------------------------------------------------

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    run: Option<RawRun>,
    medium: Option<RawMedium>,
    grid: Option<RawGrid>,
    pulse: Option<RawPulse>,
    pulse2: Option<RawPulse>,
    propagate: Option<RawPropagate>,
    spectrum: Option<RawSpectrum>,
    revival: Option<RawRevival>,
    cat: Option<RawCat>,
    pair: Option<RawPair>,
    sweep: Option<RawSweep>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRun {
    experiment: Option<String>,
    label: Option<String>,
    out: Option<String>,
    force: Option<bool>,
    oracle: Option<bool>,
    bandwidth: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMedium {
    preset: Option<String>,
    gamma_ab: Option<f64>,
    gamma_bc: Option<f64>,
    gamma_cd: Option<f64>,
    delta: Option<f64>,
    omega_drive: Option<f64>,
    n_atoms: Option<f64>,
    n_group: Option<f64>,
    sigma_over_area: Option<f64>,
    length: Option<f64>,
    c_light: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    n_points: Option<usize>,
    t_min: Option<f64>,
    t_max: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPulse {
    photon_number: Option<f64>,
    duration: Option<f64>,
    center: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPropagate {
    z: Option<f64>,
    steps: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpectrum {
    points: Option<usize>,
    omega_max: Option<f64>,
    z: Option<f64>,
    probe_intensity: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRevival {
    n_bar: Option<f64>,
    phi_min: Option<f64>,
    phi_max: Option<f64>,
    points: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCat {
    alpha1: Option<f64>,
    alpha1_im: Option<f64>,
    alpha2: Option<f64>,
    alpha2_im: Option<f64>,
    phi: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    points: Option<usize>,
    t_span: Option<f64>,
    phi: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    parameter: Option<String>,
    start: Option<f64>,
    stop: Option<f64>,
    points: Option<usize>,
}

fn require<T>(value: Option<T>, key: &str) -> Result<T> {
    value.ok_or_else(|| Error::Config(format!("missing required key `{key}`")))
}

fn check_positive(value: f64, key: &str) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Config(format!(
            "key `{key}` must be > 0 (got {value})"
        )))
    }
}

/// Parse and fully resolve a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let doc: RawDoc = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    resolve(doc, None)
}

/// Parse with the experiment fixed by the caller (the CLI subcommand). A
/// conflicting `run.experiment` key in the document is an error.
pub fn parse_scenario_for(text: &str, experiment: Experiment) -> Result<Scenario> {
    let doc: RawDoc = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    resolve(doc, Some(experiment))
}

fn resolve(doc: RawDoc, fixed: Option<Experiment>) -> Result<Scenario> {
    let run = doc.run.unwrap_or_default();
    let from_doc = run
        .experiment
        .as_deref()
        .map(Experiment::from_name)
        .transpose()?;
    let experiment = match (fixed, from_doc) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::Config(format!(
                "config sets experiment `{}` but the `{}` subcommand was invoked",
                b.name(),
                a.name()
            )))
        }
        (Some(a), _) => a,
        (None, Some(b)) => b,
        (None, None) => Experiment::Params,
    };

    // medium: preset base, field overrides, optional n_group redefinition
    let raw_medium = doc.medium.unwrap_or_default();
    let mut medium =
        MediumParams::preset(raw_medium.preset.as_deref().unwrap_or("rubidium-mixture"))?;
    if let Some(v) = raw_medium.gamma_ab {
        medium.gamma_ab = check_positive(v, "medium.gamma_ab")?;
    }
    if let Some(v) = raw_medium.gamma_bc {
        medium.gamma_bc = check_positive(v, "medium.gamma_bc")?;
    }
    if let Some(v) = raw_medium.gamma_cd {
        medium.gamma_cd = check_positive(v, "medium.gamma_cd")?;
    }
    if let Some(v) = raw_medium.delta {
        if v == 0.0 || !v.is_finite() {
            return Err(Error::Config(format!(
                "key `medium.delta` must be nonzero (got {v})"
            )));
        }
        medium.delta = v;
    }
    if let Some(v) = raw_medium.omega_drive {
        medium.omega_drive = check_positive(v, "medium.omega_drive")?;
    }
    if let Some(v) = raw_medium.sigma_over_area {
        medium.sigma_over_area = check_positive(v, "medium.sigma_over_area")?;
    }
    if let Some(v) = raw_medium.length {
        medium.length = check_positive(v, "medium.length")?;
    }
    if let Some(v) = raw_medium.c_light {
        medium.c_light = check_positive(v, "medium.c_light")?;
    }
    match (raw_medium.n_atoms, raw_medium.n_group) {
        (Some(_), Some(_)) => {
            return Err(Error::Config(
                "keys `medium.n_atoms` and `medium.n_group` are mutually exclusive".into(),
            ))
        }
        (Some(v), None) => medium.n_atoms = check_positive(v, "medium.n_atoms")?,
        (None, Some(v)) => {
            medium = medium.with_group_index(check_positive(v, "medium.n_group")?)?;
        }
        (None, None) => {}
    }
    medium.validate()?;
    let coeffs = derive_coefficients(&medium)?;

    let bandwidth = match run.bandwidth {
        Some(v) => check_positive(v, "run.bandwidth")?,
        None => coeffs.delta_omega_max / 2.0,
    };

    // pulses: pulse2 inherits pulse values
    let raw_pulse = doc.pulse.unwrap_or_default();
    let pulse = PulseSpec {
        photon_number: match raw_pulse.photon_number {
            Some(v) if v >= 0.0 && v.is_finite() => v,
            Some(v) => {
                return Err(Error::Config(format!(
                    "key `pulse.photon_number` must be >= 0 (got {v})"
                )))
            }
            None => 1.0,
        },
        duration: check_positive(raw_pulse.duration.unwrap_or(200.0), "pulse.duration")?,
        center: raw_pulse.center.unwrap_or(0.0),
    };
    let raw_pulse2 = doc.pulse2.unwrap_or_default();
    let pulse2 = PulseSpec {
        photon_number: raw_pulse2.photon_number.unwrap_or(pulse.photon_number),
        duration: check_positive(
            raw_pulse2.duration.unwrap_or(pulse.duration),
            "pulse2.duration",
        )?,
        center: raw_pulse2.center.unwrap_or(pulse.center),
    };

    // grid: default 1024 points spanning +-8 T around the pulse pair
    let raw_grid = doc.grid.unwrap_or_default();
    let t_scale = pulse.duration.max(pulse2.duration);
    let lo = pulse.center.min(pulse2.center) - 8.0 * t_scale;
    let hi = pulse.center.max(pulse2.center) + 8.0 * t_scale;
    let grid = GridSpec {
        n_points: raw_grid.n_points.unwrap_or(1024),
        t_min: raw_grid.t_min.unwrap_or(lo),
        t_max: raw_grid.t_max.unwrap_or(hi),
    };
    if !grid.n_points.is_power_of_two() || grid.n_points < 8 {
        return Err(Error::Config(format!(
            "key `grid.n_points` must be a power of two >= 8 (got {})",
            grid.n_points
        )));
    }

    let raw_prop = doc.propagate.unwrap_or_default();
    let propagate = PropagateSpec {
        z: check_positive(raw_prop.z.unwrap_or(medium.length), "propagate.z")?,
        steps: raw_prop.steps.unwrap_or(256).max(1),
    };
    if propagate.z > medium.length {
        return Err(Error::Config(format!(
            "key `propagate.z` must not exceed medium.length (got {})",
            propagate.z
        )));
    }

    let raw_spec = doc.spectrum.unwrap_or_default();
    let spectrum = SpectrumSpec {
        points: raw_spec.points.unwrap_or(401).max(2),
        omega_max: check_positive(
            raw_spec.omega_max.unwrap_or(3.0 * coeffs.delta_omega_max),
            "spectrum.omega_max",
        )?,
        z: check_positive(raw_spec.z.unwrap_or(medium.length), "spectrum.z")?,
        probe_intensity: raw_spec.probe_intensity,
    };

    let revival = match doc.revival {
        Some(raw) => Some(RevivalSpec {
            n_bar: check_positive(require(raw.n_bar, "revival.n_bar")?, "revival.n_bar")?,
            phi_min: raw.phi_min.unwrap_or(0.0),
            phi_max: raw.phi_max.unwrap_or(TAU),
            points: raw.points.unwrap_or(401).max(2),
        }),
        None => None,
    };
    if experiment == Experiment::Revival && revival.is_none() {
        return Err(Error::Config(
            "experiment `revival` requires a [revival] section with `n_bar`".into(),
        ));
    }

    let cat = match doc.cat {
        Some(raw) => Some(CatSpec {
            alpha1: Complex64::new(
                require(raw.alpha1, "cat.alpha1")?,
                raw.alpha1_im.unwrap_or(0.0),
            ),
            alpha2: Complex64::new(
                require(raw.alpha2, "cat.alpha2")?,
                raw.alpha2_im.unwrap_or(0.0),
            ),
            phi: raw.phi.unwrap_or(std::f64::consts::PI),
        }),
        None => None,
    };
    if experiment == Experiment::Cat && cat.is_none() {
        return Err(Error::Config(
            "experiment `cat` requires a [cat] section with `alpha1` and `alpha2`".into(),
        ));
    }

    let raw_pair = doc.pair.unwrap_or_default();
    let pair = PairSpec {
        points: raw_pair.points.unwrap_or(41).max(2),
        t_span: check_positive(
            raw_pair.t_span.unwrap_or(1.5 * pulse.duration),
            "pair.t_span",
        )?,
        phi: raw_pair.phi,
    };

    let sweep = match doc.sweep {
        Some(raw) => {
            let parameter = SweepParameter::from_name(&require(raw.parameter, "sweep.parameter")?)?;
            let points = require(raw.points, "sweep.points")?;
            if points < 2 {
                return Err(Error::Config(format!(
                    "key `sweep.points` must be >= 2 (got {points})"
                )));
            }
            Some(SweepSpec {
                parameter,
                start: require(raw.start, "sweep.start")?,
                stop: require(raw.stop, "sweep.stop")?,
                points,
            })
        }
        None => None,
    };
    if experiment == Experiment::Sweep && sweep.is_none() {
        return Err(Error::Config(
            "experiment `sweep` requires a [sweep] section".into(),
        ));
    }

    Ok(Scenario {
        label: run.label.unwrap_or_else(|| experiment.name().to_string()),
        out: run.out.map(PathBuf::from),
        force: run.force.unwrap_or(false),
        oracle: run.oracle.unwrap_or(false),
        experiment,
        medium,
        bandwidth,
        pulse,
        pulse2,
        grid,
        propagate,
        spectrum,
        revival,
        cat,
        pair,
        sweep,
    })
}
