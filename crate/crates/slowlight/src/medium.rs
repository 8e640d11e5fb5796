//! Propagation coefficients and figure-of-merit formulas for a pair of weak
//! pulses sharing one slow group velocity in a coherently driven medium.
//!
//! Everything here is plain algebra on the raw atomic/drive parameters: the
//! group index and group velocity, the residual loss rate, the spectral
//! spreading coefficient, the complex cross-coupling rate, the transparency
//! bandwidth, and the delay-bandwidth identity that ties them to the optical
//! depth. Rates are expressed in units of a reference linewidth (the default
//! presets use `gamma_ab = 1`) and the speed of light is fixed to 1, so every
//! derived quantity is a pure number.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Raw atomic, drive and geometry parameters.
///
/// All rates share one unit system; lengths are in units of `c * time`.
#[derive(Debug, Clone, PartialEq)]
pub struct MediumParams {
    /// Linewidth of the optical transition carrying the probe.
    pub gamma_ab: f64,
    /// Ground-state (dark-state) decoherence rate.
    pub gamma_bc: f64,
    /// Linewidth of the cross-coupled transition.
    pub gamma_cd: f64,
    /// Single-photon detuning of the partner field from the cross transition.
    pub delta: f64,
    /// Rabi frequency of the classical drives (equal for both species).
    pub omega_drive: f64,
    /// Number of atoms per species (equal for both).
    pub n_atoms: f64,
    /// Resonant cross-section over beam area, dimensionless.
    pub sigma_over_area: f64,
    /// Length of the interaction region.
    pub length: f64,
    /// Speed of light; 1 in the internal unit system.
    pub c_light: f64,
}

impl MediumParams {
    /// Illustrative alkali-mixture preset. The numbers are chosen for a
    /// round optical depth of 900 in natural units (`gamma_ab = c = 1`);
    /// they are demonstration values, not measured ones.
    pub fn rubidium_mixture() -> Self {
        MediumParams {
            gamma_ab: 1.0,
            gamma_bc: 1e-4,
            gamma_cd: 1.0,
            delta: 20.0,
            omega_drive: 2.0,
            n_atoms: 1800.0,
            sigma_over_area: 1.0,
            length: 1.0,
            c_light: 1.0,
        }
    }

    /// Resolve a named preset.
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "rubidium-mixture" => Ok(Self::rubidium_mixture()),
            other => Err(Error::Config(format!(
                "unknown preset `{other}`; available: rubidium-mixture"
            ))),
        }
    }

    /// Replace `n_atoms` so that the medium has the requested group index
    /// `n_g = g^2 N / omega^2` with the other parameters unchanged.
    pub fn with_group_index(mut self, n_group: f64) -> Result<Self> {
        if n_group <= 0.0 || n_group.is_nan() {
            return Err(Error::invalid("n_group", "must be > 0", n_group));
        }
        self.validate()?;
        let g_sq = self.coupling_sq();
        self.n_atoms = n_group * self.omega_drive.powi(2) / g_sq;
        Ok(self)
    }

    /// `g^2 = gamma_ab (sigma/A) c / (2 l)`.
    fn coupling_sq(&self) -> f64 {
        self.gamma_ab * self.sigma_over_area * self.c_light / (2.0 * self.length)
    }

    pub fn validate(&self) -> Result<()> {
        let positive: [(&str, f64); 7] = [
            ("gamma_ab", self.gamma_ab),
            ("gamma_bc", self.gamma_bc),
            ("gamma_cd", self.gamma_cd),
            ("omega_drive", self.omega_drive),
            ("n_atoms", self.n_atoms),
            ("sigma_over_area", self.sigma_over_area),
            ("length", self.length),
        ];
        for (name, value) in positive {
            if value <= 0.0 || !value.is_finite() {
                return Err(Error::invalid(name, "must be > 0", value));
            }
        }
        if self.c_light <= 0.0 || !self.c_light.is_finite() {
            return Err(Error::invalid("c_light", "must be > 0", self.c_light));
        }
        if self.delta == 0.0 || !self.delta.is_finite() {
            return Err(Error::invalid("delta", "must be nonzero", self.delta));
        }
        Ok(())
    }
}

/// Coefficients of the envelope evolution equations, plus the derived
/// figures of merit. Constructed by [`derive_coefficients`].
#[derive(Debug, Clone)]
pub struct DerivedCoefficients {
    pub params: MediumParams,
    /// Normalized atom-field coupling `g = sqrt(gamma_ab sigma c / (2 A l))`.
    pub g_coupling: f64,
    /// Group index `n_g = g^2 N / omega^2`.
    pub n_group: f64,
    /// Group velocity `v_g = c / (1 + n_g)`.
    pub v_group: f64,
    /// Residual single-photon loss rate `kappa = n_g gamma_bc / c`.
    pub kappa: f64,
    /// Spectral spreading coefficient `beta = n_g gamma_ab / (omega^2 c)`.
    pub beta: f64,
    /// Complex cross-coupling rate
    /// `eta = [n_g g^2 / (i gamma_cd + delta)] l / (2 pi c^2)`.
    pub eta: Complex64,
    /// Group delay over the full cell, `tau_g = n_g l / c`.
    pub tau_g: f64,
    /// Optical depth `D = sigma N / (2 A)`.
    pub optical_depth: f64,
    /// Transparency bandwidth at the cell exit, `(beta l)^(-1/2)`.
    pub delta_omega_max: f64,
}

impl DerivedCoefficients {
    /// Transparency bandwidth after propagating to `z`: `(beta z)^(-1/2)`.
    pub fn delta_omega_max_at(&self, z: f64) -> f64 {
        1.0 / (self.beta * z).sqrt()
    }

    /// Group delay at depth `z`: `n_g z / c`.
    pub fn tau_g_at(&self, z: f64) -> f64 {
        self.n_group * z / self.params.c_light
    }

    /// Spreading time for a pulse of duration `t_pulse`:
    /// `tau_s = omega^2 T^2 / gamma_ab`.
    pub fn tau_spread(&self, t_pulse: f64) -> f64 {
        self.params.omega_drive.powi(2) * t_pulse.powi(2) / self.params.gamma_ab
    }

    /// Delay-bandwidth product `tau_g * delta_omega_max`, equal to the
    /// square root of the optical depth.
    pub fn delay_bandwidth(&self) -> f64 {
        self.tau_g * self.delta_omega_max
    }
}

/// Compute every propagation coefficient from the raw parameters.
pub fn derive_coefficients(params: &MediumParams) -> Result<DerivedCoefficients> {
    params.validate()?;
    let c = params.c_light;
    let g_sq = params.coupling_sq();
    let omega_sq = params.omega_drive * params.omega_drive;
    let n_group = g_sq * params.n_atoms / omega_sq;
    let v_group = c / (1.0 + n_group);
    let kappa = n_group * params.gamma_bc / c;
    let beta = n_group * params.gamma_ab / (omega_sq * c);
    let eta = Complex64::new(n_group * g_sq, 0.0) / Complex64::new(params.delta, params.gamma_cd)
        * (params.length / (2.0 * std::f64::consts::PI * c * c));
    let tau_g = n_group * params.length / c;
    let optical_depth = params.sigma_over_area * params.n_atoms / 2.0;
    let delta_omega_max = 1.0 / (beta * params.length).sqrt();
    Ok(DerivedCoefficients {
        params: params.clone(),
        g_coupling: g_sq.sqrt(),
        n_group,
        v_group,
        kappa,
        beta,
        eta,
        tau_g,
        optical_depth,
        delta_omega_max,
    })
}

/// Nonlinear phase shift at the peak of a Gaussian pulse of energy
/// `photon_energy_units` (in units of one photon) and intensity-FWHM
/// `duration`:
///
/// `sqrt(ln 2 / 4 pi) * (gamma_cd / delta) * (sigma/A) * (E/hv) * (tau_g / T)`
///
/// The sign follows the sign of the detuning.
pub fn classical_phase_shift(
    params: &MediumParams,
    photon_energy_units: f64,
    duration: f64,
) -> Result<f64> {
    params.validate()?;
    if duration <= 0.0 || duration.is_nan() {
        return Err(Error::invalid("duration", "must be > 0", duration));
    }
    let coeffs = derive_coefficients(params)?;
    let prefactor = (std::f64::consts::LN_2 / (4.0 * std::f64::consts::PI)).sqrt();
    Ok(prefactor
        * (params.gamma_cd / params.delta)
        * params.sigma_over_area
        * photon_energy_units
        * (coeffs.tau_g / duration))
}

/// Conditional phase per photon pair over the full cell for a detection
/// bandwidth `bandwidth`:
///
/// `Phi = [1/(4 pi)] * (sigma/A) * (gamma_cd / delta) * d_omega * tau_g`
///
/// A zero bandwidth gives a zero phase.
pub fn quantum_phase_shift(params: &MediumParams, bandwidth: f64) -> Result<f64> {
    params.validate()?;
    if bandwidth < 0.0 || !bandwidth.is_finite() {
        return Err(Error::invalid("bandwidth", "must be >= 0", bandwidth));
    }
    let coeffs = derive_coefficients(params)?;
    Ok((1.0 / (4.0 * std::f64::consts::PI))
        * params.sigma_over_area
        * (params.gamma_cd / params.delta)
        * bandwidth
        * coeffs.tau_g)
}

/// One sample of the linearized transmission window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint {
    pub omega: f64,
    /// Intensity transmission `exp[-2 (kappa + beta w^2) z]`.
    pub transmission: f64,
    /// Accumulated envelope phase `w z / v_g`.
    pub phase: f64,
}

/// Transmission and phase of the transparency window at depth `z`, sampled
/// on `omega_grid` (detuning from line center).
///
/// With `probe_intensity = Some(I)`, the window is translated by the Stark
/// shift of the resonance center, `w0 = c * Re(eta) * I`; both curves are
/// evaluated at `w - w0`. This is the quadratic expansion of the
/// susceptibility, valid inside the transparency window only.
pub fn transparency_spectrum(
    coeffs: &DerivedCoefficients,
    z: f64,
    omega_grid: &[f64],
    probe_intensity: Option<f64>,
) -> Result<Vec<SpectrumPoint>> {
    if omega_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if z.is_nan() || z <= 0.0 || z > coeffs.params.length {
        return Err(Error::invalid("z", "must lie in (0, length]", z));
    }
    let shift = probe_intensity
        .map(|i| coeffs.params.c_light * coeffs.eta.re * i)
        .unwrap_or(0.0);
    Ok(omega_grid
        .iter()
        .map(|&omega| {
            let w = omega - shift;
            SpectrumPoint {
                omega,
                transmission: (-2.0 * (coeffs.kappa + coeffs.beta * w * w) * z).exp(),
                phase: w * z / coeffs.v_group,
            }
        })
        .collect())
}

/// Outcome of the operating-regime inequalities. A failing regime is a
/// report, not an error.
#[derive(Debug, Clone)]
pub struct RegimeReport {
    /// `[omega^2/(gamma_ab gamma_bc)] / (N sigma / A)`; saturated when >= 1.
    pub saturation_ratio: f64,
    /// Interaction time shorter than the dark-state lifetime:
    /// `tau_g * gamma_bc < 1`.
    pub dark_state_ok: bool,
    /// Configured detection bandwidth inside the transparency window:
    /// `bandwidth < delta_omega_max(l)`.
    pub bandwidth_ok: bool,
    pub messages: Vec<String>,
}

impl RegimeReport {
    /// All inequalities satisfied.
    pub fn all_ok(&self) -> bool {
        self.saturation_ratio >= 1.0 && self.dark_state_ok && self.bandwidth_ok
    }
}

impl std::fmt::Display for RegimeReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for m in &self.messages {
            writeln!(f, "  {m}")?;
        }
        Ok(())
    }
}

/// Evaluate the operating-regime inequalities for the given detection
/// bandwidth.
pub fn validate_regime(params: &MediumParams, bandwidth: f64) -> Result<RegimeReport> {
    let coeffs = derive_coefficients(params)?;
    let drive_sat = params.omega_drive.powi(2) / (params.gamma_ab * params.gamma_bc);
    let depth_sat = params.n_atoms * params.sigma_over_area;
    let saturation_ratio = drive_sat / depth_sat;
    let dark_product = coeffs.tau_g * params.gamma_bc;
    let dark_state_ok = dark_product < 1.0;
    let bandwidth_ok = bandwidth > 0.0 && bandwidth < coeffs.delta_omega_max;

    let mut messages = Vec::new();
    messages.push(format!(
        "saturation: omega^2/(gamma_ab gamma_bc) = {drive_sat:.6e} vs N sigma/A = {depth_sat:.6e} \
         (ratio {saturation_ratio:.6e}, {})",
        if saturation_ratio >= 1.0 {
            "ok"
        } else {
            "NOT saturated"
        }
    ));
    messages.push(format!(
        "dark state: tau_g * gamma_bc = {dark_product:.6e} {}",
        if dark_state_ok {
            "< 1, ok"
        } else {
            ">= 1, interaction time too long"
        }
    ));
    messages.push(format!(
        "bandwidth: d_omega = {bandwidth:.6e} vs delta_omega_max(l) = {:.6e} {}",
        coeffs.delta_omega_max,
        if bandwidth_ok {
            "(ok)"
        } else {
            "(outside transparency window)"
        }
    ));
    Ok(RegimeReport {
        saturation_ratio,
        dark_state_ok,
        bandwidth_ok,
        messages,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec_case() -> MediumParams {
        // gamma_ab=1, gamma_bc=1e-4, gamma_cd=1, delta=20, omega=2,
        // g^2 N = 400 (so N = 1600 at sigma/A = 0.5, l = 1), c = 1
        MediumParams {
            gamma_ab: 1.0,
            gamma_bc: 1e-4,
            gamma_cd: 1.0,
            delta: 20.0,
            omega_drive: 2.0,
            n_atoms: 1600.0,
            sigma_over_area: 0.5,
            length: 1.0,
            c_light: 1.0,
        }
    }

    #[test]
    fn unit_group_index_halves_group_velocity() {
        // g^2 N = omega^2  =>  n_g = 1, v_g = c/2
        let mut p = spec_case();
        p.omega_drive = 20.0; // g^2 N = 400 = omega^2
        let c = derive_coefficients(&p).unwrap();
        assert!((c.n_group - 1.0).abs() < 1e-15);
        assert!((c.v_group - 0.5).abs() < 1e-15);
    }

    #[test]
    fn delay_bandwidth_is_sqrt_optical_depth() {
        // sigma N / (2A) = 2  =>  tau_g * dw_max = sqrt(2)
        let mut p = spec_case();
        p.n_atoms = 8.0; // 0.5 * 8 / 2 = 2
        let c = derive_coefficients(&p).unwrap();
        assert!((c.optical_depth - 2.0).abs() < 1e-15);
        assert!((c.delay_bandwidth() - 2.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn coefficient_set_matches_hand_evaluation() {
        // Expected values from an independent arithmetic evaluation of each
        // formula, frozen here.
        let c = derive_coefficients(&spec_case()).unwrap();
        assert!((c.g_coupling - 0.5).abs() < 1e-15);
        assert!((c.n_group - 100.0).abs() < 1e-12);
        assert!((c.v_group - 0.009900990099009901).abs() < 1e-15);
        assert!((c.kappa - 0.01).abs() < 1e-15);
        assert!((c.beta - 25.0).abs() < 1e-12);
        assert!((c.eta.re - 0.1984475599649568).abs() < 1e-15);
        assert!((c.eta.im - (-0.009922377998247838)).abs() < 1e-15);
        assert!((c.tau_g - 100.0).abs() < 1e-12);
        assert!((c.optical_depth - 400.0).abs() < 1e-12);
        assert!((c.delta_omega_max - 0.2).abs() < 1e-15);
    }

    #[test]
    fn eta_signs_follow_detuning() {
        let c = derive_coefficients(&spec_case()).unwrap();
        assert!(c.eta.re > 0.0);
        assert!(c.eta.im < 0.0);
        let mut p = spec_case();
        p.delta = -20.0;
        let c = derive_coefficients(&p).unwrap();
        assert!(c.eta.re < 0.0);
        assert!(c.eta.im < 0.0);
    }

    #[test]
    fn rejects_zero_detuning_and_drive() {
        let mut p = spec_case();
        p.delta = 0.0;
        assert!(matches!(
            derive_coefficients(&p),
            Err(Error::InvalidParameter { .. })
        ));
        let mut p = spec_case();
        p.omega_drive = 0.0;
        assert!(derive_coefficients(&p).is_err());
    }

    #[test]
    fn group_index_override_round_trips() {
        let p = spec_case().with_group_index(64.0).unwrap();
        let c = derive_coefficients(&p).unwrap();
        assert!((c.n_group - 64.0).abs() < 1e-10);
    }

    #[test]
    fn doubling_drive_quarters_group_index() {
        let base = derive_coefficients(&spec_case()).unwrap();
        let mut p = spec_case();
        p.omega_drive *= 2.0;
        p.n_atoms *= 4.0; // keep g^2 N fixed per omega^2 scaling comparison
        let c = derive_coefficients(&p).unwrap();
        // with g^2 N restored, n_g scales as 1/omega^2
        assert!((c.n_group - base.n_group).abs() < 1e-12);
        let mut p = spec_case();
        p.omega_drive *= 2.0;
        let c = derive_coefficients(&p).unwrap();
        assert_eq!(c.n_group, base.n_group / 4.0);
    }

    #[test]
    fn classical_phase_zero_energy() {
        assert_eq!(classical_phase_shift(&spec_case(), 0.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn classical_phase_unit_by_construction() {
        // gamma_cd/delta = 1, sigma/A = 1, E/hv = 1, tau_g/T = sqrt(4 pi / ln 2)
        let mut p = spec_case();
        p.gamma_cd = 1.0;
        p.delta = 1.0;
        p.sigma_over_area = 1.0;
        let coeffs = derive_coefficients(&p).unwrap();
        let duration = coeffs.tau_g / (4.0 * std::f64::consts::PI / std::f64::consts::LN_2).sqrt();
        let phase = classical_phase_shift(&p, 1.0, duration).unwrap();
        assert!((phase - 1.0).abs() < 1e-12);
    }

    #[test]
    fn classical_phase_matches_hand_evaluation() {
        // tau_g/T = 30, sigma/A = 1, gamma_cd/delta = 0.05, E/hv = 1
        // => 0.35228897951236926 by independent arithmetic
        let p = MediumParams {
            sigma_over_area: 1.0,
            n_atoms: 1800.0, // n_g = 225, tau_g = 225
            ..spec_case()
        };
        let coeffs = derive_coefficients(&p).unwrap();
        assert!((coeffs.tau_g - 225.0).abs() < 1e-12);
        let phase = classical_phase_shift(&p, 1.0, 225.0 / 30.0).unwrap();
        assert!((phase - 0.35228897951236926).abs() < 1e-14);
    }

    #[test]
    fn classical_phase_linear_in_energy_and_inverse_duration() {
        let p = spec_case();
        let base = classical_phase_shift(&p, 1.0, 10.0).unwrap();
        let doubled = classical_phase_shift(&p, 2.0, 10.0).unwrap();
        let halved_t = classical_phase_shift(&p, 1.0, 5.0).unwrap();
        assert!((doubled - 2.0 * base).abs() < 1e-15 * base.abs().max(1.0));
        assert!((halved_t - 2.0 * base).abs() < 1e-14 * base.abs().max(1.0));
    }

    #[test]
    fn quantum_phase_zero_bandwidth_and_linearity() {
        let p = spec_case();
        assert_eq!(quantum_phase_shift(&p, 0.0).unwrap(), 0.0);
        assert!(quantum_phase_shift(&p, -0.1).is_err());
        // linear in bandwidth
        let a = quantum_phase_shift(&p, 0.01).unwrap();
        let b = quantum_phase_shift(&p, 0.02).unwrap();
        assert!((b - 2.0 * a).abs() < 1e-15);
    }

    #[test]
    fn quantum_phase_unit_by_construction() {
        // sigma/A = 1, gamma_cd/delta = 1, dw * tau_g = 4 pi => Phi = 1
        let mut p = spec_case();
        p.gamma_cd = 1.0;
        p.delta = 1.0;
        p.sigma_over_area = 1.0;
        let coeffs = derive_coefficients(&p).unwrap();
        let bw = 4.0 * std::f64::consts::PI / coeffs.tau_g;
        let phi = quantum_phase_shift(&p, bw).unwrap();
        assert!((phi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quantum_phase_matches_hand_evaluation() {
        // sigma/A = 1, gamma_cd/delta = 0.05, dw = 0.1, tau_g = 225
        // => 0.08952465548919114
        let p = MediumParams {
            sigma_over_area: 1.0,
            n_atoms: 1800.0,
            ..spec_case()
        };
        let phi = quantum_phase_shift(&p, 0.1).unwrap();
        assert!((phi - 0.08952465548919114).abs() < 1e-15);
    }

    #[test]
    fn spectrum_line_center_and_efold() {
        let mut p = spec_case();
        p.gamma_bc = 1e-300; // kappa ~ 0
        let c = derive_coefficients(&p).unwrap();
        let w_max = c.delta_omega_max_at(1.0);
        let pts = transparency_spectrum(&c, 1.0, &[0.0, w_max], None).unwrap();
        assert!((pts[0].transmission - 1.0).abs() < 1e-12);
        // amplitude transmission e^-1 at the bandwidth edge => intensity e^-2
        assert!((pts[1].transmission - (-2.0_f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn spectrum_matches_pointwise_formula() {
        let c = derive_coefficients(&spec_case()).unwrap();
        let grid: Vec<f64> = (-20..=20).map(|k| k as f64 * 0.01).collect();
        let pts = transparency_spectrum(&c, 0.7, &grid, None).unwrap();
        for pt in &pts {
            let expect = (-2.0 * (c.kappa + c.beta * pt.omega * pt.omega) * 0.7).exp();
            assert!((pt.transmission - expect).abs() < 1e-15);
            assert!((pt.phase - pt.omega * 0.7 / c.v_group).abs() < 1e-10);
        }
        // even in omega and strictly decreasing in |omega|
        let n = pts.len();
        for k in 0..n / 2 {
            assert_eq!(pts[k].transmission, pts[n - 1 - k].transmission);
        }
        for k in n / 2..n - 1 {
            assert!(pts[k].transmission > pts[k + 1].transmission);
        }
    }

    #[test]
    fn spectrum_stark_shift_translates_window() {
        let c = derive_coefficients(&spec_case()).unwrap();
        let intensity = 2.0;
        let shift = c.params.c_light * c.eta.re * intensity;
        let grid = [0.0, 0.05, 0.1];
        let shifted = transparency_spectrum(&c, 1.0, &grid, Some(intensity)).unwrap();
        let reference: Vec<f64> = grid.iter().map(|w| w - shift).collect();
        let plain = transparency_spectrum(&c, 1.0, &reference, None).unwrap();
        for (s, p) in shifted.iter().zip(&plain) {
            assert_eq!(s.transmission, p.transmission);
            assert_eq!(s.phase, p.phase);
        }
    }

    #[test]
    fn spectrum_rejects_empty_grid_and_bad_z() {
        let c = derive_coefficients(&spec_case()).unwrap();
        assert!(matches!(
            transparency_spectrum(&c, 1.0, &[], None),
            Err(Error::EmptyGrid)
        ));
        assert!(transparency_spectrum(&c, 0.0, &[0.0], None).is_err());
        assert!(transparency_spectrum(&c, 1.5, &[0.0], None).is_err());
    }

    #[test]
    fn regime_saturation_boundary() {
        // omega^2 = gamma_ab gamma_bc (N sigma/A)  =>  ratio exactly 1
        let mut p = spec_case();
        p.n_atoms = 1000.0;
        p.sigma_over_area = 1.0;
        p.gamma_bc = 1e-3;
        p.omega_drive = (p.gamma_ab * p.gamma_bc * p.n_atoms * p.sigma_over_area).sqrt();
        let r = validate_regime(&p, 1e-3).unwrap();
        assert!((r.saturation_ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn regime_dark_state_limit() {
        // vanishing ground-state decoherence with finite tau_g
        let mut p = spec_case();
        p.gamma_bc = 1e-12;
        let r = validate_regime(&p, 0.01).unwrap();
        assert!(r.dark_state_ok);

        // tau_g gamma_bc = 2 => not ok
        let mut p = spec_case();
        p.gamma_bc = 0.02; // tau_g = 100
        let r = validate_regime(&p, 0.01).unwrap();
        assert!(!r.dark_state_ok);
    }

    #[test]
    fn regime_bandwidth_gate() {
        let p = spec_case(); // dw_max = 0.2
        assert!(validate_regime(&p, 0.1).unwrap().bandwidth_ok);
        assert!(!validate_regime(&p, 0.3).unwrap().bandwidth_ok);
    }

    #[test]
    fn preset_numbers() {
        let c = derive_coefficients(&MediumParams::rubidium_mixture()).unwrap();
        assert!((c.n_group - 225.0).abs() < 1e-12);
        assert!((c.optical_depth - 900.0).abs() < 1e-12);
        assert!((c.delay_bandwidth() - 30.0).abs() < 1e-12);
        assert!((c.eta.re - 0.8930140198423056).abs() < 1e-15);
        let r = validate_regime(&MediumParams::rubidium_mixture(), 0.1).unwrap();
        assert!(r.all_ok());
    }
}
