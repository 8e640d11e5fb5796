//! Mean-field expectation of a coherent input after the cross-Kerr
//! interaction, and the collapse/revival scan derived from it.

use num_complex::Complex64;

const TAU: f64 = std::f64::consts::TAU;

/// A multi-mode coherent input described by its eigenvalue profile and the
/// commutator bandwidth.
pub struct CoherentInput {
    pub alpha_fn: Box<dyn Fn(f64) -> Complex64 + Send + Sync>,
    pub bandwidth: f64,
}

impl CoherentInput {
    pub fn constant(alpha: Complex64, bandwidth: f64) -> Self {
        CoherentInput {
            alpha_fn: Box::new(move |_| alpha),
            bandwidth,
        }
    }

    /// Mean photon number per mode at time `t`: `|alpha(t)|^2 / bandwidth`.
    pub fn n_bar_at(&self, t: f64) -> f64 {
        (self.alpha_fn)(t).norm_sqr() / self.bandwidth
    }
}

/// Attenuation-and-rotation factor applied to a mean field by a partner of
/// mean photon number `n_bar` at conditional phase `phi`:
///
/// `exp{[-2 sin^2(phi/2) + i sin(phi)] n_bar}`
///
/// The bracket equals `e^(i phi) - 1`; the trigonometric form is used so the
/// factor is exactly 2-pi-periodic (the phase is reduced modulo 2 pi first).
pub fn mean_field_factor(phi: f64, n_bar: f64) -> Complex64 {
    let p = phi.rem_euclid(TAU);
    let half = (p / 2.0).sin();
    Complex64::new(-2.0 * half * half * n_bar, p.sin() * n_bar).exp()
}

/// Measured mean field of one output at time `t`: the input amplitude
/// `alpha_self` times the factor set by the partner's photon number
/// `|alpha_other(t)|^2 / bandwidth`.
pub fn coherent_mean_field(
    input_other: &CoherentInput,
    alpha_self: Complex64,
    t: f64,
    phi: f64,
) -> Complex64 {
    alpha_self * mean_field_factor(phi, input_other.n_bar_at(t))
}

/// Relative modulus and argument of the mean field over a grid of
/// conditional phases, for a partner of mean photon number `n_bar`.
///
/// `modulus = exp(-2 sin^2(phi/2) n_bar)`, `arg = sin(phi) n_bar`; both are
/// exactly periodic in `phi` with period 2 pi.
pub fn collapse_revival_scan(n_bar: f64, phi_grid: &[f64]) -> Vec<(f64, f64)> {
    phi_grid
        .iter()
        .map(|&phi| {
            let f = mean_field_factor(phi, n_bar);
            (f.norm(), f.arg())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_between_trig_and_exponential_forms() {
        // -2 sin^2(phi/2) + i sin(phi) = e^(i phi) - 1
        for k in 0..=1000 {
            let phi = k as f64 * 0.013;
            let p = phi.rem_euclid(TAU);
            let half = (p / 2.0).sin();
            let trig = Complex64::new(-2.0 * half * half, p.sin());
            let expo = Complex64::from_polar(1.0, p) - 1.0;
            assert!((trig - expo).norm() < 1e-15);
        }
    }

    #[test]
    fn zero_phase_is_classical_limit() {
        let other = CoherentInput::constant(Complex64::new(1.3, -0.4), 0.5);
        let a = Complex64::new(0.7, 0.2);
        assert_eq!(coherent_mean_field(&other, a, 0.0, 0.0), a);
    }

    #[test]
    fn full_revival_at_two_pi() {
        let other = CoherentInput::constant(Complex64::new(2.0, 0.0), 0.25);
        let a = Complex64::new(0.7, 0.2);
        let out = coherent_mean_field(&other, a, 0.0, TAU);
        assert_eq!(out, a); // phase reduction makes the revival exact
    }

    #[test]
    fn pure_collapse_at_pi() {
        // phi = pi: factor = e^(-2 n_bar), no rotation
        let n_bar: f64 = 1.7;
        let other = CoherentInput::constant(Complex64::new(n_bar.sqrt(), 0.0), 1.0);
        let a = Complex64::new(1.0, 0.0);
        let out = coherent_mean_field(&other, a, 0.0, std::f64::consts::PI);
        assert!((out.re - (-2.0 * n_bar).exp()).abs() < 1e-15);
        assert!(out.im.abs() < 1e-15);
    }

    #[test]
    fn scan_endpoints_and_known_value() {
        let grid = [0.0, std::f64::consts::PI, TAU, 2.0 * TAU];
        let scan = collapse_revival_scan(3.0, &grid);
        assert_eq!(scan[0], (1.0, 0.0));
        assert_eq!(scan[2], (1.0, 0.0));
        assert_eq!(scan[3], (1.0, 0.0));
        assert!((scan[1].0 - (-6.0_f64).exp()).abs() < 1e-15);
        assert!(scan[1].1.abs() < 1e-15);
    }

    #[test]
    fn scan_is_exactly_periodic_on_dyadic_grids() {
        // Grid points that are multiples of 2^-6 make phi + 2 pi exact in
        // f64, so reduction modulo 2 pi returns bit-identical results.
        let n_bar = 2.25;
        let base: Vec<f64> = (0..403).map(|k| k as f64 * 0.015625).collect();
        let shifted: Vec<f64> = base.iter().map(|p| p + TAU).collect();
        let a = collapse_revival_scan(n_bar, &base);
        let b = collapse_revival_scan(n_bar, &shifted);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.0.to_bits(), y.0.to_bits());
            assert_eq!(x.1.to_bits(), y.1.to_bits());
        }
    }

    #[test]
    fn time_dependent_partner_profile() {
        let other = CoherentInput {
            alpha_fn: Box::new(|t: f64| Complex64::new((-t * t).exp(), 0.0)),
            bandwidth: 0.5,
        };
        assert!((other.n_bar_at(0.0) - 2.0).abs() < 1e-15);
        let a = Complex64::new(1.0, 0.0);
        let phi = 0.3;
        let out = coherent_mean_field(&other, a, 1.0, phi);
        let n_bar = (-2.0_f64).exp() / 0.5;
        assert!((out - mean_field_factor(phi, n_bar)).norm() < 1e-15);
    }
}
