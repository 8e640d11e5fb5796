//! Simulation toolkit for two weak light pulses that share one ultra-slow
//! group velocity in a coherently driven atomic medium.
//!
//! The crate covers four layers:
//!
//! * [`medium`]: propagation coefficients, phase-shift formulas, the
//!   transparency window, and the operating-regime inequalities.
//! * [`envelope`] / [`propagation`]: complex envelopes on a retarded-time
//!   grid and a split-step spectral solver for the coupled mean-field
//!   equations, with the closed-form cross-phase solution as a reference.
//! * [`quantum`]: closed-form coherent-state collapse/revival and
//!   photon-pair correlations, validated against a truncated two-mode
//!   Fock-space evolution, plus cat-state fidelity and entanglement entropy.
//! * [`scenario`] / [`runner`] / [`table`]: a configuration-driven front
//!   end that writes deterministic, plot-ready tables.
//!
//! Everything works in natural units: rates in units of a reference
//! linewidth, the speed of light fixed to 1 by the presets.

pub mod envelope;
pub mod error;
pub mod medium;
pub mod propagation;
pub mod quantum;
pub mod runner;
pub mod scenario;
pub mod table;

pub use envelope::{make_gaussian_pulse, pulse_metrics, Envelope, PulseMetrics, TimeGrid};
pub use error::{Error, Result};
pub use medium::{
    classical_phase_shift, derive_coefficients, quantum_phase_shift, transparency_spectrum,
    validate_regime, DerivedCoefficients, MediumParams, RegimeReport,
};
pub use propagation::{
    analytic_xpm, propagate_custom, propagate_pair, PropagationResult, StepOptions,
};
pub use quantum::{
    apply_cross_kerr, cat_fidelity, coherent_mean_field, collapse_revival_scan, correlation_factor,
    entanglement_entropy, fock_dim, kerr_oracle_mean, mean_field_factor, photon_pair_correlation,
    sinc, CoherentInput, CorrelationGrid, SinglePhotonPacket, TwoModeState,
};
pub use runner::{run_scenario, ExitReport};
pub use scenario::{parse_scenario, Experiment, Scenario};
pub use table::{Table, Value};
