//! Quantum dynamics of the cross-coupled pulse pair: closed-form mean-field
//! results for coherent inputs, the conditional phase on photon pairs, and a
//! truncated two-mode Fock-space evolution that serves as an independent
//! cross-check of the closed forms.

mod closed_form;
mod correlation;
mod fock;

pub use closed_form::{
    coherent_mean_field, collapse_revival_scan, mean_field_factor, CoherentInput,
};
pub use correlation::{
    correlation_factor, photon_pair_correlation, sinc, CorrelationGrid, SinglePhotonPacket,
};
pub use fock::{
    apply_cross_kerr, cat_fidelity, entanglement_entropy, fock_dim, kerr_oracle_mean, TwoModeState,
};
