//! Experiment dispatch: resolves a scenario into output tables, gated by the
//! operating-regime check.

use std::path::PathBuf;

use num_complex::Complex64;

use crate::envelope::{make_gaussian_pulse, TimeGrid};
use crate::error::{Error, Result};
use crate::medium::{
    classical_phase_shift, derive_coefficients, quantum_phase_shift, transparency_spectrum,
    validate_regime, DerivedCoefficients, RegimeReport,
};
use crate::propagation::{analytic_xpm, propagate_pair};
use crate::quantum::{
    apply_cross_kerr, cat_fidelity, collapse_revival_scan, entanglement_entropy, fock_dim,
    kerr_oracle_mean, photon_pair_correlation, SinglePhotonPacket, TwoModeState,
};
use crate::scenario::{Experiment, Scenario};
use crate::table::{Table, Value};

/// What a run produced.
#[derive(Debug)]
pub struct ExitReport {
    pub outputs: Vec<PathBuf>,
    pub warnings: Vec<String>,
    pub regime: RegimeReport,
    pub forced: bool,
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let h = (hi - lo) / (n - 1) as f64;
    (0..n).map(|k| lo + k as f64 * h).collect()
}

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn base_meta(table: &mut Table, s: &Scenario, regime: &RegimeReport, forced: bool) {
    table.set_meta("experiment", s.experiment.name());
    table.set_meta("label", &s.label);
    table.set_meta(
        "units",
        "rates in reference-linewidth units; lengths in c*time",
    );
    table.set_meta("medium.gamma_ab", fmt(s.medium.gamma_ab));
    table.set_meta("medium.gamma_bc", fmt(s.medium.gamma_bc));
    table.set_meta("medium.gamma_cd", fmt(s.medium.gamma_cd));
    table.set_meta("medium.delta", fmt(s.medium.delta));
    table.set_meta("medium.omega_drive", fmt(s.medium.omega_drive));
    table.set_meta("medium.n_atoms", fmt(s.medium.n_atoms));
    table.set_meta("medium.sigma_over_area", fmt(s.medium.sigma_over_area));
    table.set_meta("medium.length", fmt(s.medium.length));
    table.set_meta("medium.c_light", fmt(s.medium.c_light));
    table.set_meta("run.bandwidth", fmt(s.bandwidth));
    table.set_meta("regime.saturation_ratio", fmt(regime.saturation_ratio));
    table.set_meta("regime.dark_state_ok", regime.dark_state_ok);
    table.set_meta("regime.bandwidth_ok", regime.bandwidth_ok);
    if forced {
        table.set_meta("forced", "true");
    }
}

fn pulse_meta(table: &mut Table, s: &Scenario) {
    table.set_meta("pulse.photon_number", fmt(s.pulse.photon_number));
    table.set_meta("pulse.duration", fmt(s.pulse.duration));
    table.set_meta("pulse.center", fmt(s.pulse.center));
    table.set_meta("pulse2.photon_number", fmt(s.pulse2.photon_number));
    table.set_meta("pulse2.duration", fmt(s.pulse2.duration));
    table.set_meta("pulse2.center", fmt(s.pulse2.center));
}

fn out_path(s: &Scenario) -> PathBuf {
    s.out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.dat", s.experiment.name())))
}

fn ctx(op: &'static str) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Config(msg) => Error::Config(format!("{op}: {msg}")),
        other => Error::Config(format!("{op}: {other}")),
    }
}

/// Run one scenario and write its tables. Deterministic for a fixed
/// scenario: identical inputs produce byte-identical files.
pub fn run_scenario(s: &Scenario) -> Result<ExitReport> {
    let regime = validate_regime(&s.medium, s.bandwidth)?;
    let forced = s.force && !regime.all_ok();
    if !regime.all_ok() && !s.force {
        return Err(Error::RegimeRejected {
            report: regime.to_string(),
        });
    }
    let coeffs = derive_coefficients(&s.medium)?;
    let mut warnings: Vec<String> = Vec::new();
    if forced {
        warnings.push("regime check failed; run forced".to_string());
    }

    let outputs = match s.experiment {
        Experiment::Params => run_params(s, &coeffs, &regime, forced)?,
        Experiment::Spectrum => run_spectrum(s, &coeffs, &regime, forced)?,
        Experiment::Propagate => run_propagate(s, &coeffs, &regime, forced, &mut warnings)?,
        Experiment::Revival => run_revival(s, &regime, forced, &mut warnings)?,
        Experiment::Cat => run_cat(s, &regime, forced, &mut warnings)?,
        Experiment::Pair => run_pair(s, &coeffs, &regime, forced)?,
        Experiment::Sweep => run_sweep(s, &regime, forced)?,
    };

    Ok(ExitReport {
        outputs,
        warnings,
        regime,
        forced,
    })
}

fn run_params(
    s: &Scenario,
    coeffs: &DerivedCoefficients,
    regime: &RegimeReport,
    forced: bool,
) -> Result<Vec<PathBuf>> {
    let mut table = Table::new(&[
        ("g_coupling", "rate", false),
        ("n_group", "-", false),
        ("v_group", "L/t", false),
        ("kappa", "1/L", false),
        ("beta", "t2/L", false),
        ("eta", "1/(L*I)", true),
        ("tau_g", "t", false),
        ("optical_depth", "-", false),
        ("delta_omega_max", "rate", false),
        ("delay_bandwidth", "-", false),
        ("omega_sq_tau_g_over_gamma_ab", "-", false),
        ("tau_spread", "t", false),
        ("phase_classical", "rad", false),
        ("phi_quantum", "rad", false),
    ]);
    base_meta(&mut table, s, regime, forced);
    pulse_meta(&mut table, s);
    let phase = classical_phase_shift(&s.medium, s.pulse.photon_number, s.pulse.duration)?;
    let phi = quantum_phase_shift(&s.medium, s.bandwidth)?;
    let chain = s.medium.omega_drive.powi(2) * coeffs.tau_g / s.medium.gamma_ab;
    table.push_row(&[
        coeffs.g_coupling.into(),
        coeffs.n_group.into(),
        coeffs.v_group.into(),
        coeffs.kappa.into(),
        coeffs.beta.into(),
        coeffs.eta.into(),
        coeffs.tau_g.into(),
        coeffs.optical_depth.into(),
        coeffs.delta_omega_max.into(),
        coeffs.delay_bandwidth().into(),
        chain.into(),
        coeffs.tau_spread(s.pulse.duration).into(),
        phase.into(),
        phi.into(),
    ])?;
    let path = out_path(s);
    table.write_to_path(&path)?;
    Ok(vec![path])
}

fn run_spectrum(
    s: &Scenario,
    coeffs: &DerivedCoefficients,
    regime: &RegimeReport,
    forced: bool,
) -> Result<Vec<PathBuf>> {
    let grid = linspace(
        -s.spectrum.omega_max,
        s.spectrum.omega_max,
        s.spectrum.points,
    );
    let plain =
        transparency_spectrum(coeffs, s.spectrum.z, &grid, None).map_err(ctx("spectrum"))?;
    let shifted = match s.spectrum.probe_intensity {
        Some(i) => Some(
            transparency_spectrum(coeffs, s.spectrum.z, &grid, Some(i)).map_err(ctx("spectrum"))?,
        ),
        None => None,
    };
    let mut spec: Vec<(&str, &str, bool)> = vec![
        ("omega", "rate", false),
        ("transmission", "-", false),
        ("phase", "rad", false),
    ];
    if shifted.is_some() {
        spec.push(("transmission_shifted", "-", false));
        spec.push(("phase_shifted", "rad", false));
    }
    let mut table = Table::new(&spec);
    base_meta(&mut table, s, regime, forced);
    table.set_meta("spectrum.z", fmt(s.spectrum.z));
    table.set_meta("spectrum.omega_max", fmt(s.spectrum.omega_max));
    table.set_meta("spectrum.points", s.spectrum.points);
    if let Some(i) = s.spectrum.probe_intensity {
        table.set_meta("spectrum.probe_intensity", fmt(i));
    }
    for (k, pt) in plain.iter().enumerate() {
        let mut row: Vec<Value> = vec![pt.omega.into(), pt.transmission.into(), pt.phase.into()];
        if let Some(sh) = &shifted {
            row.push(sh[k].transmission.into());
            row.push(sh[k].phase.into());
        }
        table.push_row(&row)?;
    }
    let path = out_path(s);
    table.write_to_path(&path)?;
    Ok(vec![path])
}

fn run_propagate(
    s: &Scenario,
    coeffs: &DerivedCoefficients,
    regime: &RegimeReport,
    forced: bool,
    warnings: &mut Vec<String>,
) -> Result<Vec<PathBuf>> {
    let grid = TimeGrid::new(s.grid.n_points, s.grid.t_min, s.grid.t_max)
        .map_err(ctx("propagate grid"))?;
    let env1 = make_gaussian_pulse(
        grid,
        s.pulse.photon_number,
        s.pulse.duration,
        s.pulse.center,
        s.bandwidth,
    )
    .map_err(ctx("pulse"))?;
    let env2 = make_gaussian_pulse(
        grid,
        s.pulse2.photon_number,
        s.pulse2.duration,
        s.pulse2.center,
        s.bandwidth,
    )
    .map_err(ctx("pulse2"))?;
    for (name, env) in [("pulse", &env1), ("pulse2", &env2)] {
        let frac = env.out_of_band_fraction();
        if frac > 1e-6 {
            warnings.push(format!(
                "{name}: {frac:.3e} of the spectral power lies outside +-bandwidth/2; \
                 the quantum-state interpretation is degraded"
            ));
        }
    }
    let result = propagate_pair(&env1, &env2, coeffs, s.propagate.z, s.propagate.steps)
        .map_err(ctx("propagate"))?;

    let columns: [(&str, &str, bool); 3] = [
        ("t", "t", false),
        ("e1", "field", true),
        ("e2", "field", true),
    ];
    let mut table = Table::new(&columns);
    base_meta(&mut table, s, regime, forced);
    pulse_meta(&mut table, s);
    table.set_meta("grid.n_points", s.grid.n_points);
    table.set_meta("grid.t_min", fmt(s.grid.t_min));
    table.set_meta("grid.t_max", fmt(s.grid.t_max));
    table.set_meta("propagate.z", fmt(s.propagate.z));
    table.set_meta("propagate.steps", s.propagate.steps);
    table.set_meta("photons1_in", fmt(result.photons1_in));
    table.set_meta("photons1_out", fmt(result.photons1_out));
    table.set_meta("photons2_in", fmt(result.photons2_in));
    table.set_meta("photons2_out", fmt(result.photons2_out));
    for k in 0..grid.n_points() {
        table.push_row(&[
            grid.time(k).into(),
            result.env1_out.samples[k].into(),
            result.env2_out.samples[k].into(),
        ])?;
    }
    let path = out_path(s);
    table.write_to_path(&path)?;
    let mut outputs = vec![path.clone()];

    if s.oracle {
        let (a1, a2) =
            analytic_xpm(&env1, &env2, coeffs.eta.re, s.propagate.z).map_err(ctx("oracle"))?;
        let mut oracle = Table::new(&columns);
        base_meta(&mut oracle, s, regime, forced);
        pulse_meta(&mut oracle, s);
        oracle.set_meta("oracle", "closed-form cross-phase solution, lossless limit");
        oracle.set_meta("propagate.z", fmt(s.propagate.z));
        for k in 0..grid.n_points() {
            oracle.push_row(&[
                grid.time(k).into(),
                a1.samples[k].into(),
                a2.samples[k].into(),
            ])?;
        }
        let oracle_path = path.with_extension("oracle.dat");
        oracle.write_to_path(&oracle_path)?;
        outputs.push(oracle_path);
    }
    Ok(outputs)
}

fn run_revival(
    s: &Scenario,
    regime: &RegimeReport,
    forced: bool,
    warnings: &mut Vec<String>,
) -> Result<Vec<PathBuf>> {
    let spec = s.revival.expect("validated by parse");
    let phis = linspace(spec.phi_min, spec.phi_max, spec.points);
    let scan = collapse_revival_scan(spec.n_bar, &phis);
    let mut table = Table::new(&[
        ("phi", "rad", false),
        ("modulus", "-", false),
        ("arg", "rad", false),
    ]);
    base_meta(&mut table, s, regime, forced);
    table.set_meta("revival.n_bar", fmt(spec.n_bar));
    table.set_meta("revival.phi_min", fmt(spec.phi_min));
    table.set_meta("revival.phi_max", fmt(spec.phi_max));
    table.set_meta("revival.points", spec.points);
    for (&phi, &(modulus, arg)) in phis.iter().zip(&scan) {
        table.push_row(&[phi.into(), modulus.into(), arg.into()])?;
    }
    let path = out_path(s);
    table.write_to_path(&path)?;
    let mut outputs = vec![path.clone()];

    if s.oracle {
        if spec.n_bar > 16.0 {
            warnings.push(
                "revival oracle needs |alpha| <= 4 (n_bar <= 16); oracle table skipped".into(),
            );
        } else {
            let alpha1 = Complex64::new(1.0, 0.0);
            let alpha2 = Complex64::new(spec.n_bar.sqrt(), 0.0);
            let trunc = fock_dim(alpha1).max(fock_dim(alpha2));
            let mut oracle = Table::new(&[
                ("phi", "rad", false),
                ("modulus", "-", false),
                ("arg", "rad", false),
            ]);
            base_meta(&mut oracle, s, regime, forced);
            oracle.set_meta("oracle", "truncated Fock-space evolution");
            oracle.set_meta("revival.n_bar", fmt(spec.n_bar));
            oracle.set_meta("oracle.truncation", trunc);
            for &phi in &phis {
                let mean = kerr_oracle_mean(alpha1, alpha2, phi, trunc).map_err(ctx("oracle"))?;
                oracle.push_row(&[phi.into(), mean.norm().into(), mean.arg().into()])?;
            }
            let oracle_path = path.with_extension("oracle.dat");
            oracle.write_to_path(&oracle_path)?;
            outputs.push(oracle_path);
        }
    }
    Ok(outputs)
}

fn run_cat(
    s: &Scenario,
    regime: &RegimeReport,
    forced: bool,
    warnings: &mut Vec<String>,
) -> Result<Vec<PathBuf>> {
    let spec = s.cat.expect("validated by parse");
    let state =
        TwoModeState::coherent_product_auto(spec.alpha1, spec.alpha2).map_err(ctx("cat"))?;
    let evolved = apply_cross_kerr(&state, spec.phi);
    let fidelity = cat_fidelity(&evolved, spec.alpha1, spec.alpha2).map_err(ctx("cat"))?;
    let entropy = entanglement_entropy(&evolved).map_err(ctx("cat"))?;

    let at_pi = (spec.phi - std::f64::consts::PI).abs() < 1e-12;
    let with_oracle = s.oracle && at_pi;
    if s.oracle && !at_pi {
        warnings.push("cat oracle is defined at phi = pi only; oracle column skipped".into());
    }

    let mut spec_cols: Vec<(&str, &str, bool)> = vec![
        ("alpha1", "-", true),
        ("alpha2", "-", true),
        ("phi", "rad", false),
        ("fidelity", "-", false),
        ("entropy", "nat", false),
        ("norm_deficit", "-", false),
    ];
    if with_oracle {
        spec_cols.push(("entropy_oracle", "nat", false));
    }
    let mut table = Table::new(&spec_cols);
    base_meta(&mut table, s, regime, forced);
    table.set_meta("cat.dim1", state.dim1());
    table.set_meta("cat.dim2", state.dim2());
    let mut row: Vec<Value> = vec![
        spec.alpha1.into(),
        spec.alpha2.into(),
        spec.phi.into(),
        fidelity.into(),
        entropy.into(),
        evolved.norm_deficit().into(),
    ];
    if with_oracle {
        // two-branch reduced state: eigenvalues from the analytic Gram
        // matrix of the +-alpha components
        let x1 = (-2.0 * spec.alpha1.norm_sqr()).exp();
        let x2 = (-2.0 * spec.alpha2.norm_sqr()).exp();
        let lam_p = 0.5 * (1.0 + (1.0 - (1.0 - x1 * x1) * (1.0 - x2 * x2)).sqrt());
        let lam_m = 1.0 - lam_p;
        let mut oracle_entropy = 0.0;
        for lam in [lam_p, lam_m] {
            if lam > 0.0 {
                oracle_entropy -= lam * lam.ln();
            }
        }
        row.push(oracle_entropy.into());
    }
    table.push_row(&row)?;
    let path = out_path(s);
    table.write_to_path(&path)?;
    Ok(vec![path])
}

fn run_pair(
    s: &Scenario,
    coeffs: &DerivedCoefficients,
    regime: &RegimeReport,
    forced: bool,
) -> Result<Vec<PathBuf>> {
    let _ = coeffs;
    let phi = match s.pair.phi {
        Some(phi) => phi,
        None => quantum_phase_shift(&s.medium, s.bandwidth)?,
    };
    let p1 = SinglePhotonPacket::gaussian(s.pulse.center, s.pulse.duration, s.bandwidth)
        .map_err(ctx("pair"))?;
    let p2 = SinglePhotonPacket::gaussian(s.pulse2.center, s.pulse2.duration, s.bandwidth)
        .map_err(ctx("pair"))?;
    let times1 = linspace(
        s.pulse.center - s.pair.t_span,
        s.pulse.center + s.pair.t_span,
        s.pair.points,
    );
    let times2 = linspace(
        s.pulse2.center - s.pair.t_span,
        s.pulse2.center + s.pair.t_span,
        s.pair.points,
    );
    let grid = photon_pair_correlation(&p1, &p2, phi, s.bandwidth, &times1, &times2);

    let mut table = Table::new(&[("t1", "t", false), ("t2", "t", false), ("psi12", "-", true)]);
    base_meta(&mut table, s, regime, forced);
    pulse_meta(&mut table, s);
    table.set_meta("pair.phi", fmt(phi));
    table.set_meta("pair.points", s.pair.points);
    table.set_meta("pair.t_span", fmt(s.pair.t_span));
    table.set_meta("pair.norm_diagnostic", fmt(grid.norm_diagnostic()));
    for (i, &t1) in times1.iter().enumerate() {
        for (j, &t2) in times2.iter().enumerate() {
            table.push_row(&[t1.into(), t2.into(), grid.value(i, j).into()])?;
        }
    }
    let path = out_path(s);
    table.write_to_path(&path)?;
    Ok(vec![path])
}

fn run_sweep(s: &Scenario, regime: &RegimeReport, forced: bool) -> Result<Vec<PathBuf>> {
    let spec = s.sweep.expect("validated by parse");
    let values = linspace(spec.start, spec.stop, spec.points);
    let mut table = Table::new(&[
        (spec.parameter.name(), "-", false),
        ("n_group", "-", false),
        ("v_group", "L/t", false),
        ("kappa", "1/L", false),
        ("beta", "t2/L", false),
        ("eta", "1/(L*I)", true),
        ("tau_g", "t", false),
        ("optical_depth", "-", false),
        ("delta_omega_max", "rate", false),
        ("delay_bandwidth", "-", false),
        ("phase_classical", "rad", false),
        ("phi_quantum", "rad", false),
        ("regime_ok", "-", false),
    ]);
    base_meta(&mut table, s, regime, forced);
    pulse_meta(&mut table, s);
    table.set_meta("sweep.parameter", spec.parameter.name());
    table.set_meta("sweep.start", fmt(spec.start));
    table.set_meta("sweep.stop", fmt(spec.stop));
    table.set_meta("sweep.points", spec.points);
    for &value in &values {
        let (params, bandwidth) = spec.parameter.apply(&s.medium, s.bandwidth, value);
        let coeffs = derive_coefficients(&params).map_err(ctx("sweep point"))?;
        let phase = classical_phase_shift(&params, s.pulse.photon_number, s.pulse.duration)?;
        let phi = quantum_phase_shift(&params, bandwidth)?;
        let point_regime = validate_regime(&params, bandwidth)?;
        table.push_row(&[
            value.into(),
            coeffs.n_group.into(),
            coeffs.v_group.into(),
            coeffs.kappa.into(),
            coeffs.beta.into(),
            coeffs.eta.into(),
            coeffs.tau_g.into(),
            coeffs.optical_depth.into(),
            coeffs.delta_omega_max.into(),
            coeffs.delay_bandwidth().into(),
            phase.into(),
            phi.into(),
            (if point_regime.all_ok() { 1.0 } else { 0.0 }).into(),
        ])?;
    }
    let path = out_path(s);
    table.write_to_path(&path)?;
    Ok(vec![path])
}
